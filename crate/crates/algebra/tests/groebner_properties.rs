use std::sync::Arc;

use cy_algebra::field::Field;
use cy_algebra::{GroebnerBasis, Ideal, Monomial, MonomialOrder, Polynomial, PrimeField, Ring};
use proptest::prelude::*;

type P = Polynomial<PrimeField>;

fn ring(order: MonomialOrder) -> Arc<Ring<PrimeField>> {
    let names = ["x", "y", "z"].map(String::from).to_vec();
    Ring::new(names, vec![1, 1, 1], PrimeField::new(7).unwrap(), order).unwrap()
}

fn poly(r: &Arc<Ring<PrimeField>>, terms: &[([u32; 3], i64)]) -> P {
    let f = r.field();
    terms.iter().fold(P::zero(r), |acc, (e, c)| {
        let m = Monomial::from_exponents(e, r.weights()).unwrap();
        &acc + &P::term(r, m, f.from_i64(*c))
    })
}

fn term() -> impl Strategy<Value = ([u32; 3], i64)> {
    ([0u32..3, 0u32..3, 0u32..3], 1i64..7)
}

fn polys() -> impl Strategy<Value = Vec<Vec<([u32; 3], i64)>>> {
    prop::collection::vec(prop::collection::vec(term(), 1..4), 1..4)
}

fn order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::Grevlex),
        Just(MonomialOrder::Lex),
        Just(MonomialOrder::Elimination(1))
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduced_basis_is_canonical(spec in polys(), o in order()) {
        let r = ring(o);
        let gens: Vec<P> = spec.iter().map(|t| poly(&r, t)).collect();
        let gb = GroebnerBasis::compute(&r, &gens);
        prop_assert!(gb.certify());
        for g in &gens {
            prop_assert!(gb.normal_form(g).is_zero());
        }
        let again = GroebnerBasis::compute(&r, &gb.to_vec());
        prop_assert_eq!(again.to_vec(), gb.to_vec());
        let mut rev = gens.clone();
        rev.reverse();
        prop_assert_eq!(GroebnerBasis::compute(&r, &rev).to_vec(), gb.to_vec());
    }

    #[test]
    fn redundant_generators_change_nothing(spec in polys(), k in 0usize..3) {
        let r = ring(MonomialOrder::Grevlex);
        let gens: Vec<P> = spec.iter().map(|t| poly(&r, t)).collect();
        let gb = GroebnerBasis::compute(&r, &gens);
        let mut more = gens.clone();
        let extra = &(&gens[k % gens.len()] * &P::var(&r, k)) + &gens[0];
        more.push(extra);
        prop_assert_eq!(GroebnerBasis::compute(&r, &more).to_vec(), gb.to_vec());
    }

    #[test]
    fn ring_arithmetic(a in prop::collection::vec(term(), 1..4), b in prop::collection::vec(term(), 1..4),
                       c in prop::collection::vec(term(), 1..4), pt in [0u32..7, 0u32..7, 0u32..7]) {
        let r = ring(MonomialOrder::Grevlex);
        let (a, b, c) = (poly(&r, &a), poly(&r, &b), poly(&r, &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        let f = r.field();
        prop_assert_eq!((&a * &b).evaluate(&pt), f.mul(&a.evaluate(&pt), &b.evaluate(&pt)));
        prop_assert_eq!((&a + &c).evaluate(&pt), f.add(&a.evaluate(&pt), &c.evaluate(&pt)));
    }
}

#[test]
fn membership_agrees_with_basis() {
    let r = ring(MonomialOrder::Grevlex);
    let x = P::var(&r, 0);
    let y = P::var(&r, 1);
    let z = P::var(&r, 2);
    let i = Ideal::new(&r, vec![&(&x * &x) - &(&y * &z), &(&y * &y) - &(&x * &z)]).unwrap();
    assert!(i.contains(&(&(&x * &x) - &(&y * &z))));
    assert!(!i.contains(&x));
    assert!(i.groebner().certify());
}
