//! Small nodal instances over F_7 where the singular points can be listed by
//! brute force.

use cy_algebra::parse::parse_polynomial_list;
use cy_algebra::random::rng_from_seed;
use cy_algebra::{Ideal, Polynomial, PrimeField, Ring};
use cy_core::chow::{predicted_nodes, AmbientChern, SurfaceInvariants};
use cy_core::nodal::{node_count, singular_locus};

type P = Polynomial<PrimeField>;
const Q: u32 = 7;

fn points(n: usize) -> Vec<Vec<u32>> {
    let total = Q.pow(n as u32 + 1);
    (1..total)
        .map(|code| (0..=n).map(|i| code / Q.pow(i as u32) % Q).collect::<Vec<u32>>())
        .filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
        .collect()
}

/// Rational points where the hypersurface and all its partials vanish.
fn enumerate_singular(f: &P, n: usize) -> Vec<Vec<u32>> {
    let parts: Vec<P> = (0..=n).map(|i| f.partial_derivative(i)).collect();
    points(n)
        .into_iter()
        .filter(|p| f.evaluate(p) == 0 && parts.iter().all(|g| g.evaluate(p) == 0))
        .collect()
}

/// The F_7-rational part of a zero-dimensional scheme: add `x_i^q x_j - x_i x_j^q`.
/// The result is reduced because it is a quotient of the reduced scheme of
/// all rational points, so its length counts them.
fn rational_part(i: &Ideal<PrimeField>) -> Ideal<PrimeField> {
    let r = i.ring();
    let n = r.nvars();
    let mut extra = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let xa = P::var(r, a);
            let xb = P::var(r, b);
            extra.push(&(&xa.pow(Q).unwrap() * &xb) - &(&xa * &xb.pow(Q).unwrap()));
        }
    }
    i.add_generators(&extra).unwrap()
}

fn hypersurface(names: &[&str], s: &str) -> (Ideal<PrimeField>, P) {
    let r = Ring::standard(names, PrimeField::new(Q).unwrap());
    let f = parse_polynomial_list(&r, s).unwrap().remove(0);
    (Ideal::new(&r, vec![f.clone()]).unwrap(), f)
}

#[test]
fn cayley_cubic_has_four_rational_nodes() {
    let (x, f) = hypersurface(&["a", "b", "c", "d"], "bcd + acd + abd + abc");
    let (sing, ps) = node_count(&x, 1).unwrap();
    assert_eq!((ps.dim, ps.degree, ps.reduced), (Some(0), 4, Some(true)));
    let found = enumerate_singular(&f, 3);
    assert_eq!(found.len(), 4);
    assert_eq!(rational_part(&sing).degree().unwrap(), 4);
}

#[test]
fn quartic_with_two_prescribed_nodes() {
    let r = Ring::standard(&["a", "b", "c", "d"], PrimeField::new(Q).unwrap());
    let m1 = Ideal::new(&r, parse_polynomial_list(&r, "b, c, d").unwrap()).unwrap();
    let m2 = Ideal::new(&r, parse_polynomial_list(&r, "a - b, c, d").unwrap()).unwrap();
    let sys = m1.product(&m1).unwrap().intersect(&m2.product(&m2).unwrap()).unwrap();
    let mut checked = 0;
    for seed in 0..20 {
        let f = sys.generic_member(4, &mut rng_from_seed(seed)).unwrap();
        let x = Ideal::new(&r, vec![f.clone()]).unwrap();
        let Ok((sing, ps)) = node_count(&x, 1) else { continue };
        let found = enumerate_singular(&f, 3);
        assert!(found.contains(&vec![1, 0, 0, 0]) && found.contains(&vec![1, 1, 0, 0]));
        // every rational point of the Jacobian scheme is found by enumeration
        let rat = rational_part(&sing).degree().unwrap();
        assert_eq!(rat as usize, found.len(), "seed {seed}");
        if ps.degree == 2 && ps.reduced == Some(true) {
            assert_eq!(found.len(), 2);
            checked += 1;
        }
    }
    assert!(checked > 0, "no seed gave a 2-nodal quartic over F_7");
}

#[test]
fn quartic_threefold_through_a_plane() {
    // x0 A + x1 B vanishes doubly where A = B = 0 on the plane: 9 nodes
    let r = Ring::standard(&["x0", "x1", "x2", "x3", "x4"], PrimeField::new(Q).unwrap());
    let plane = Ideal::new(&r, parse_polynomial_list(&r, "x0, x1").unwrap()).unwrap();
    let expected = predicted_nodes(
        &SurfaceInvariants { m: 3, k2: 9, chi_top: 3 },
        &AmbientChern::Projective(4),
        &[4],
    )
    .unwrap()
    .nodes;
    assert_eq!(expected, 9);
    let mut matched = 0;
    for seed in 0..10 {
        let f = plane.generic_member(4, &mut rng_from_seed(100 + seed)).unwrap();
        let x = Ideal::new(&r, vec![f.clone()]).unwrap();
        let Ok(sing) = singular_locus(&x, 1) else { continue };
        if sing.projective_dimension() != Some(0) {
            continue;
        }
        let found = enumerate_singular(&f, 4);
        assert_eq!(rational_part(&sing).degree().unwrap() as usize, found.len());
        // small-field members may pick up extra singularities off the plane;
        // nine points exceed what Seidenberg can certify at p = 7, so only
        // the length is compared
        if sing.degree().unwrap() == expected {
            assert!(found.iter().all(|p| p[0] == 0 && p[1] == 0));
            matched += 1;
        }
    }
    assert!(matched > 0);
}
