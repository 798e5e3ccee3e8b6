//! Seeded random forms. Every "generic" choice flows through here.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::monomial::monomials_of_degree;
use crate::poly::Polynomial;
use crate::ring::Ring;

pub type Rng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A form of the given weighted degree with every monomial present and
/// nonzero random coefficients. Degree 0 gives a nonzero constant.
pub fn random_form<F: Field>(ring: &Arc<Ring<F>>, degree: u32, seed: u64) -> Polynomial<F> {
    random_form_with(ring, degree, &mut rng_from_seed(seed))
}

pub fn random_form_with<F: Field>(ring: &Arc<Ring<F>>, degree: u32, rng: &mut Rng) -> Polynomial<F> {
    let mut monos = monomials_of_degree(ring.weights(), degree);
    monos.sort_unstable_by(|a, b| ring.cmp(b, a));
    let terms = monos
        .into_iter()
        .map(|m| (m, ring.field().random_nonzero(rng)))
        .collect();
    Polynomial::from_sorted(ring, terms)
}

/// Random linear combination of the given polynomials with nonzero coefficients.
pub fn random_combination<F: Field>(ring: &Arc<Ring<F>>, polys: &[Polynomial<F>], rng: &mut Rng) -> Polynomial<F> {
    let mut acc = Polynomial::zero(ring);
    for p in polys {
        acc = &acc + &p.scale(&ring.field().random_nonzero(rng));
    }
    acc
}

/// Images of the variables under a random change of coordinates respecting
/// the grading (each variable goes to a random form of its own weight).
/// Invertible with overwhelming probability.
pub fn random_graded_change<F: Field>(ring: &Arc<Ring<F>>, rng: &mut Rng) -> Vec<Polynomial<F>> {
    (0..ring.nvars())
        .map(|i| random_form_with(ring, ring.weights()[i], rng))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::monomial::MonomialOrder;

    #[test]
    fn term_counts() {
        let f = PrimeField::new(32003).unwrap();
        let p7 = Ring::projective(8, f);
        assert_eq!(random_form(&p7, 2, 1).len(), 36);
        let c = random_form(&p7, 0, 5);
        assert!(c.is_constant() && !c.is_zero());
        let w = Ring::new(
            ["x", "y", "z", "t", "u", "v"].iter().map(|s| s.to_string()).collect(),
            vec![1, 1, 1, 1, 2, 3],
            f,
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let s = random_form(&w, 6, 3);
        assert_eq!(s.len(), monomials_of_degree(w.weights(), 6).len());
        assert!(s.is_homogeneous());
    }

    #[test]
    fn determinism() {
        let f = PrimeField::new(32003).unwrap();
        let r = Ring::projective(4, f);
        assert_eq!(random_form(&r, 3, 9), random_form(&r, 3, 9));
        assert_ne!(random_form(&r, 3, 9), random_form(&r, 3, 10));
    }
}
