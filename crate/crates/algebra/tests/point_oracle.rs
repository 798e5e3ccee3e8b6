//! Zero-dimensional invariants checked against exhaustive evaluation over F_7.

use std::collections::BTreeSet;
use std::sync::Arc;

use cy_algebra::field::Field;
use cy_algebra::parse::parse_polynomial_list;
use cy_algebra::{Ideal, Polynomial, PrimeField, Ring};
use proptest::prelude::*;

type P = Polynomial<PrimeField>;
const Q: u32 = 7;

fn affine_plane() -> Arc<Ring<PrimeField>> {
    Ring::standard(&["x", "y"], PrimeField::new(Q).unwrap())
}

fn point_ideal(r: &Arc<Ring<PrimeField>>, pts: &BTreeSet<(u32, u32)>) -> Ideal<PrimeField> {
    let f = *r.field();
    let mut acc: Option<Ideal<PrimeField>> = None;
    for &(a, b) in pts {
        let m = Ideal::new(
            r,
            vec![
                &P::var(r, 0) - &P::constant(r, a),
                &P::var(r, 1) - &P::constant(r, f.from_i64(b as i64)),
            ],
        )
        .unwrap();
        acc = Some(match acc {
            None => m,
            Some(i) => i.intersect(&m).unwrap(),
        });
    }
    acc.unwrap()
}

fn affine_zeros(i: &Ideal<PrimeField>) -> BTreeSet<(u32, u32)> {
    let mut out = BTreeSet::new();
    for a in 0..Q {
        for b in 0..Q {
            if i.generators().iter().all(|g| g.evaluate(&[a, b]) == 0) {
                out.insert((a, b));
            }
        }
    }
    out
}

/// Points of P^n(F_7) as normalized representatives.
fn projective_points(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let total = Q.pow(n as u32 + 1);
    for code in 1..total {
        let v: Vec<u32> = (0..=n).map(|i| code / Q.pow(i as u32) % Q).collect();
        if v.iter().find(|&&c| c != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

fn projective_zeros(i: &Ideal<PrimeField>) -> Vec<Vec<u32>> {
    let n = i.ring().nvars() - 1;
    projective_points(n)
        .into_iter()
        .filter(|p| i.generators().iter().all(|g| g.evaluate(p) == 0))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn point_sets_have_matching_length(pts in prop::collection::btree_set((0u32..Q, 0u32..Q), 1..6)) {
        let r = affine_plane();
        let i = point_ideal(&r, &pts);
        prop_assert_eq!(affine_zeros(&i), pts.clone());
        prop_assert_eq!(i.zero_dim_length().unwrap(), pts.len());
        prop_assert!(i.is_radical_zero_dim().unwrap());
    }

    #[test]
    fn fattened_point_is_not_radical(a in 0u32..Q, b in 0u32..Q) {
        let r = affine_plane();
        let f = *r.field();
        let xa = &P::var(&r, 0) - &P::constant(&r, a);
        let yb = &P::var(&r, 1) - &P::constant(&r, f.from_i64(b as i64));
        let i = Ideal::new(&r, vec![&xa * &xa, yb]).unwrap();
        prop_assert_eq!(affine_zeros(&i).len(), 1);
        prop_assert_eq!(i.zero_dim_length().unwrap(), 2);
        prop_assert!(!i.is_radical_zero_dim().unwrap());
        prop_assert_eq!(i.radical_zero_dim().unwrap().zero_dim_length().unwrap(), 1);
    }
}

#[test]
fn twisted_cubic() {
    let r = Ring::standard(&["a", "b", "c", "d"], PrimeField::new(Q).unwrap());
    let gens = parse_polynomial_list(&r, "a*c - b^2, b*d - c^2, a*d - b*c").unwrap();
    let c = Ideal::new(&r, gens.clone()).unwrap();
    assert_eq!(c.degree().unwrap(), 3);
    assert_eq!(c.projective_dimension(), Some(1));
    // a rational normal curve has q + 1 points
    assert_eq!(projective_zeros(&c).len(), Q as usize + 1);
    // the plane through three of its rational points cuts exactly those
    let pts: Vec<Vec<u32>> = [1u32, 2, 3].iter().map(|&t| vec![1, t, t * t % Q, t * t * t % Q]).collect();
    let plane = parse_polynomial_list(&r, "a - b + c - d").unwrap();
    let f = *r.field();
    // solve for the plane a0 a + a1 b + a2 c + a3 d through the three points
    // via the Vandermonde kernel: (t-1)(t-2)(t-3) = t^3 - 6t^2 + 11t - 6
    let h = &(&(&P::var(&r, 3) - &P::var(&r, 2).scale(&f.from_i64(6))) + &P::var(&r, 1).scale(&f.from_i64(11)))
        - &P::var(&r, 0).scale(&f.from_i64(6));
    for p in &pts {
        assert_eq!(h.evaluate(p), 0);
    }
    let sec = c.add_generators(&[h]).unwrap();
    assert_eq!(sec.zero_dim_length().unwrap(), 3);
    assert!(sec.is_radical_zero_dim().unwrap());
    let zs = projective_zeros(&sec);
    assert_eq!(zs.len(), 3);
    assert!(zs.iter().all(|z| pts.contains(z)));
    // a different plane is fine as long as nothing is tangent
    let other = c.add_generators(&plane).unwrap();
    assert_eq!(other.degree().unwrap(), 3);
}

#[test]
fn reducible_plane_curve() {
    // nodal cubic plus the line x = 0 through its node; the singular points
    // are (0:0:1) and (0:1:0), both rational
    let r = Ring::standard(&["x", "y", "z"], PrimeField::new(Q).unwrap());
    let f = parse_polynomial_list(&r, "x*(y^2*z - x^3 - x^2*z)").unwrap().remove(0);
    let jac: Vec<P> = (0..3).map(|i| f.partial_derivative(i)).collect();
    let mut gens = vec![f.clone()];
    gens.extend(jac);
    let sing = Ideal::new(&r, gens).unwrap().saturate_irrelevant().unwrap();
    let enumerated = projective_zeros(&sing);
    assert_eq!(sing.projective_dimension(), Some(0));
    let rad = sing.radical_zero_dim().unwrap();
    assert_eq!(rad.degree().unwrap() as usize, enumerated.len());
}
