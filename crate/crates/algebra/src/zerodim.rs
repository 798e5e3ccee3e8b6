//! Zero-dimensional ideals: normal sets, eliminants, Seidenberg radicals.
//!
//! Projective ideals of dimension zero are handled in the affine chart
//! `l = 1` for a random linear form `l`, read off a graded basis of
//! `I + ⟨z - l⟩` with `z` last (divide out powers of `z`, then set `z = 1`).

use std::collections::VecDeque;
use std::sync::Arc;

use log::debug;
use rustc_hash::FxHashMap;

use crate::field::Field;
use crate::groebner::{GroebnerBasis, Ideal};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::random::rng_from_seed;
use crate::ring::Ring;
use crate::univariate::{self, UPoly};
use crate::{AlgebraError, Result};

const NORMAL_SET_LIMIT: usize = 200_000;
const CHART_SEED: u64 = 0xC4A7_0000;

/// The finite-dimensional algebra `R/I` of a zero-dimensional affine ideal.
pub struct ZeroDimAlgebra<F: Field> {
    ring: Arc<Ring<F>>,
    basis: Arc<GroebnerBasis<F>>,
    normal_set: Vec<Monomial>,
    index: FxHashMap<Monomial, usize>,
    /// Chart form for projective inputs.
    chart: Option<Polynomial<F>>,
}

impl<F: Field> ZeroDimAlgebra<F> {
    /// From an affine ideal of Krull dimension 0 (any order).
    pub fn affine(ideal: &Ideal<F>) -> Result<Self> {
        let basis = ideal.groebner().clone();
        Self::from_basis(ideal.ring(), basis, None)
    }

    fn from_basis(ring: &Arc<Ring<F>>, basis: Arc<GroebnerBasis<F>>, chart: Option<Polynomial<F>>) -> Result<Self> {
        if basis.is_unit() {
            return Ok(ZeroDimAlgebra {
                ring: ring.clone(),
                basis,
                normal_set: Vec::new(),
                index: FxHashMap::default(),
                chart,
            });
        }
        let n = ring.nvars();
        let mut normal_set = Vec::new();
        let mut index = FxHashMap::default();
        let mut queue = VecDeque::from([Monomial::ONE]);
        index.insert(Monomial::ONE, 0usize);
        while let Some(m) = queue.pop_front() {
            normal_set.push(m);
            if normal_set.len() > NORMAL_SET_LIMIT {
                let k = crate::groebner::max_independent_set(&basis.leads(), n).len();
                return Err(AlgebraError::NotZeroDimensional(k));
            }
            for i in 0..n {
                let Some(next) = m.checked_mul(&ring.var_monomial(i)) else {
                    return Err(AlgebraError::ExponentOverflow);
                };
                if index.contains_key(&next) || basis.lead_divides(&next) {
                    continue;
                }
                index.insert(next, usize::MAX);
                queue.push_back(next);
            }
        }
        normal_set.sort_by(|a, b| ring.cmp(a, b));
        let index = normal_set.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Ok(ZeroDimAlgebra {
            ring: ring.clone(),
            basis,
            normal_set,
            index,
            chart,
        })
    }

    /// Affine chart `l = 1` of a homogeneous ideal of projective dimension 0.
    /// Fails if some point lies on `l = 0` for every tried `l`.
    pub fn projective(ideal: &Ideal<F>) -> Result<Self> {
        if !ideal.is_homogeneous() {
            return Err(AlgebraError::Inhomogeneous);
        }
        let ring = ideal.ring();
        let n = ring.nvars();
        let linear: Vec<usize> = (0..n).filter(|&i| ring.weights()[i] == 1).collect();
        if linear.is_empty() {
            return Err(AlgebraError::Other("no weight-one variable for an affine chart".into()));
        }
        let expected = ideal.projective_degree();
        let affine_ring = ring.with_order(MonomialOrder::Grevlex)?;
        for attempt in 0..4u64 {
            let mut rng = rng_from_seed(CHART_SEED + attempt);
            let mut l = Polynomial::zero(ring);
            for &i in &linear {
                l = &l + &Polynomial::var(ring, i).scale(&ring.field().random_nonzero(&mut rng));
            }
            let z = ring.fresh_name("z");
            let er = ring.extend(&[z.as_str()], &[1], MonomialOrder::Grevlex)?;
            let id: Vec<usize> = (0..n).collect();
            let mut g: Vec<Polynomial<F>> = ideal.generators().iter().map(|p| p.map_vars(&er, &id)).collect();
            g.push(&Polynomial::var(&er, n) - &l.map_vars(&er, &id));
            let gb = GroebnerBasis::compute(&er, &g);
            let dehom: Vec<Polynomial<F>> = gb.polys().map(|p| set_last_var_one(p, &affine_ring)).collect();
            let basis = Arc::new(GroebnerBasis::from_basis(&affine_ring, dehom));
            let alg = Self::from_basis(&affine_ring, basis, Some(l.reorder(&affine_ring)))?;
            if num::rational::Ratio::from_integer(alg.length() as i64) == expected {
                return Ok(alg);
            }
            debug!(
                "chart attempt {attempt}: length {} but projective degree {expected}",
                alg.length()
            );
        }
        Err(AlgebraError::Other("points at infinity in every tried chart".into()))
    }

    /// Chooses the affine or projective path from the ideal's shape.
    pub fn of_ideal(ideal: &Ideal<F>) -> Result<Self> {
        let k = ideal.krull_dimension();
        match k {
            None | Some(0) => Self::affine(ideal),
            Some(1) if ideal.is_homogeneous() => Self::projective(ideal),
            Some(k) => Err(AlgebraError::NotZeroDimensional(k)),
        }
    }

    pub fn length(&self) -> usize {
        self.normal_set.len()
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn normal_set(&self) -> &[Monomial] {
        &self.normal_set
    }

    fn coords(&self, p: &Polynomial<F>) -> Vec<F::Elem> {
        let field = self.ring.field();
        let mut v = vec![field.zero(); self.length()];
        for (m, c) in self.basis.normal_form(p).terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// Minimal polynomial of multiplication by variable `var` (the
    /// eliminant generating `I ∩ k[x_var]`), ascending coefficients, monic.
    pub fn eliminant(&self, var: usize) -> UPoly<F> {
        let field = self.ring.field();
        let len = self.length();
        if len == 0 {
            return vec![field.one()];
        }
        let x = Polynomial::var(&self.ring, var);
        // echelon rows: (pivot, vector, combination of powers)
        let mut rows: Vec<(usize, Vec<F::Elem>, Vec<F::Elem>)> = Vec::new();
        let mut power = Polynomial::one(&self.ring);
        for k in 0..=len {
            let mut v = self.coords(&power);
            let mut combo = vec![field.zero(); len + 1];
            combo[k] = field.one();
            for (p, row, rc) in &rows {
                if field.is_zero(&v[*p]) {
                    continue;
                }
                let f = field.mul(&v[*p], &field.inv(&row[*p]));
                for (a, b) in v.iter_mut().zip(row.iter()) {
                    *a = field.sub(a, &field.mul(&f, b));
                }
                for (a, b) in combo.iter_mut().zip(rc.iter()) {
                    *a = field.sub(a, &field.mul(&f, b));
                }
            }
            match v.iter().position(|c| !field.is_zero(c)) {
                None => return univariate::monic(field, &univariate::trim(field, combo)),
                Some(p) => rows.push((p, v, combo)),
            }
            power = self.basis.normal_form(&(&power * &x));
        }
        unreachable!("a dependency exists among len + 1 vectors")
    }

    /// Eliminant turned into a polynomial of the ambient ring; in the
    /// projective case it is homogenized with the chart form.
    fn eliminant_polynomial(&self, target: &Arc<Ring<F>>, var: usize, u: &UPoly<F>) -> Polynomial<F> {
        let field = target.field();
        let x = Polynomial::var(target, var);
        let w = target.weights()[var];
        let d = univariate::degree::<F>(u).unwrap_or(0);
        let chart = self.chart.as_ref().map(|l| l.reorder(target));
        let mut acc = Polynomial::zero(target);
        for (k, c) in u.iter().enumerate() {
            if field.is_zero(c) {
                continue;
            }
            let mut t = x.pow(k as u32).unwrap().scale(c);
            if let Some(l) = &chart {
                t = &t * &l.pow((d - k) as u32 * w).unwrap();
            }
            acc = &acc + &t;
        }
        acc
    }
}

fn set_last_var_one<F: Field>(p: &Polynomial<F>, target: &Arc<Ring<F>>) -> Polynomial<F> {
    let n = target.nvars();
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let exps: Vec<u32> = (0..n).map(|i| m.exp(i)).collect();
            (Monomial::from_exponents(&exps, target.weights()).unwrap(), c.clone())
        })
        .collect();
    Polynomial::from_terms(target, terms)
}

fn check_characteristic<F: Field>(field: &F, eliminants: &[UPoly<F>]) -> Result<()> {
    let p = field.characteristic();
    let max = eliminants.iter().map(|u| u.len() as u64).max().unwrap_or(0);
    if p != 0 && max >= p {
        return Err(AlgebraError::Other(format!(
            "eliminant degree {} not below the characteristic {p}",
            max.saturating_sub(1)
        )));
    }
    Ok(())
}

impl<F: Field> Ideal<F> {
    /// Seidenberg test: radical iff every variable's eliminant is squarefree.
    pub fn is_radical_zero_dim(&self) -> Result<bool> {
        let alg = ZeroDimAlgebra::of_ideal(self)?;
        let field = self.ring().field();
        let elims: Vec<UPoly<F>> = (0..self.ring().nvars()).map(|i| alg.eliminant(i)).collect();
        check_characteristic(field, &elims)?;
        Ok(elims.iter().all(|u| univariate::is_squarefree(field, u)))
    }

    /// `I` plus the squarefree parts of all eliminants (homogenized and
    /// saturated by the chart form in the projective case).
    pub fn radical_zero_dim(&self) -> Result<Ideal<F>> {
        let alg = ZeroDimAlgebra::of_ideal(self)?;
        let field = self.ring().field();
        let elims: Vec<UPoly<F>> = (0..self.ring().nvars()).map(|i| alg.eliminant(i)).collect();
        check_characteristic(field, &elims)?;
        let extra: Vec<Polynomial<F>> = elims
            .iter()
            .enumerate()
            .map(|(i, u)| alg.eliminant_polynomial(self.ring(), i, &univariate::squarefree_part(field, u)))
            .collect();
        let sum = self.add_generators(&extra)?;
        match &alg.chart {
            Some(l) => sum.saturate_by(&l.reorder(self.ring())),
            None => Ok(sum),
        }
    }

    /// Length of `R/I` for zero-dimensional affine ideals, or the number of
    /// points with multiplicity for projective ideals of dimension zero.
    pub fn zero_dim_length(&self) -> Result<usize> {
        Ok(ZeroDimAlgebra::of_ideal(self)?.length())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_polynomial_list;

    fn ideal(ring: &Arc<Ring<PrimeField>>, s: &str) -> Ideal<PrimeField> {
        Ideal::from_gens(ring, parse_polynomial_list(ring, s).unwrap())
    }

    #[test]
    fn affine_examples() {
        let r = Ring::standard(&["x"], PrimeField::new(32003).unwrap());
        let i = ideal(&r, "x^2");
        assert!(!i.is_radical_zero_dim().unwrap());
        assert!(i.radical_zero_dim().unwrap().same_ideal(&ideal(&r, "x")));
        assert!(ideal(&r, "x^2-1").is_radical_zero_dim().unwrap());
    }

    #[test]
    fn projective_points() {
        let r = Ring::standard(&["x", "y", "z"], PrimeField::new(32003).unwrap());
        // two reduced points and one double point
        let reduced = ideal(&r, "z, x*y");
        assert_eq!(reduced.zero_dim_length().unwrap(), 2);
        assert!(reduced.is_radical_zero_dim().unwrap());
        let double = ideal(&r, "z, x^2");
        assert!(!double.is_radical_zero_dim().unwrap());
        let rad = double.radical_zero_dim().unwrap();
        assert_eq!(rad.degree().unwrap(), 1);
        assert!(rad.same_ideal(&ideal(&r, "z, x")));
    }

    #[test]
    fn positive_dimension_is_rejected() {
        let r = Ring::standard(&["x", "y", "z"], PrimeField::new(32003).unwrap());
        assert_eq!(ideal(&r, "x").is_radical_zero_dim(), Err(AlgebraError::NotZeroDimensional(2)));
    }
}
