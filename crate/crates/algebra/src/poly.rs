//! Sparse polynomials in canonical form: terms strictly descending in the
//! ring's order, no zero coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::field::Field;
use crate::monomial::{Exp, Monomial, MAX_VARS};
use crate::ring::Ring;
use crate::{AlgebraError, Result};

pub type Term<F> = (Monomial, <F as Field>::Elem);

#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<Ring<F>>,
    terms: Vec<Term<F>>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_ring(&self.ring, &other.ring)
    }
}
impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> std::hash::Hash for Polynomial<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

#[inline]
pub(crate) fn same_ring<F: Field>(a: &Arc<Ring<F>>, b: &Arc<Ring<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<Ring<F>>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring<F>>, c: F::Elem) -> Self {
        Self::term(ring, Monomial::ONE, c)
    }

    pub fn one(ring: &Arc<Ring<F>>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn from_i64(ring: &Arc<Ring<F>>, v: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(v))
    }

    pub fn var(ring: &Arc<Ring<F>>, i: usize) -> Self {
        Self::term(ring, ring.var_monomial(i), ring.field().one())
    }

    pub fn term(ring: &Arc<Ring<F>>, m: Monomial, c: F::Elem) -> Self {
        let terms = if ring.field().is_zero(&c) { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a canonical polynomial from arbitrary terms (duplicates are summed).
    pub fn from_terms(ring: &Arc<Ring<F>>, terms: Vec<Term<F>>) -> Self {
        let field = ring.field();
        let mut acc: FxHashMap<Monomial, F::Elem> = FxHashMap::default();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert_with(|| field.zero());
            *e = field.add(e, &c);
        }
        Self::from_map(ring, acc)
    }

    pub(crate) fn from_map(ring: &Arc<Ring<F>>, acc: FxHashMap<Monomial, F::Elem>) -> Self {
        let field = ring.field();
        let mut terms: Vec<Term<F>> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Caller guarantees canonical form.
    pub(crate) fn from_sorted(ring: &Arc<Ring<F>>, terms: Vec<Term<F>>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<F>> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Maximal weighted degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    /// Largest exponent of each variable.
    pub fn max_exponents(&self) -> [u32; MAX_VARS] {
        let mut out = [0u32; MAX_VARS];
        for (m, _) in &self.terms {
            for (i, o) in out.iter_mut().enumerate() {
                *o = (*o).max(m.exp(i));
            }
        }
        out
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(i) > 0)
    }

    pub fn homogeneous_component(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect();
        Self::from_sorted(&self.ring, terms)
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Self, subtract: bool) -> Self {
        let field = self.ring.field();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let lift = |c: &F::Elem| if subtract { field.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match self.ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, lift(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract { field.sub(&a[i].1, &b[j].1) } else { field.add(&a[i].1, &b[j].1) };
                    if !field.is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, c)| (*m, lift(c))));
        Self::from_sorted(&self.ring, out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let (ea, eb) = (self.max_exponents(), other.max_exponents());
        if ea.iter().zip(eb.iter()).any(|(a, b)| a + b > Exp::MAX as u32) {
            return Err(AlgebraError::ExponentOverflow);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        if self.terms.len() == 1 {
            return Ok(other.mul_term(&self.terms[0].0, &self.terms[0].1));
        }
        if other.terms.len() == 1 {
            return Ok(self.mul_term(&other.terms[0].0, &other.terms[0].1));
        }
        let field = self.ring.field();
        let mut acc: FxHashMap<Monomial, F::Elem> =
            FxHashMap::with_capacity_and_hasher(self.len() * other.len(), Default::default());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = field.mul(ca, cb);
                let e = acc.entry(ma.mul(mb)).or_insert_with(|| field.zero());
                *e = field.add(e, &c);
            }
        }
        Ok(Self::from_map(&self.ring, acc))
    }

    /// Multiplication by a single term; order is preserved so no sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let field = self.ring.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(tm, tc)| (tm.mul(m), field.mul(tc, c)))
            .collect();
        Self::from_sorted(&self.ring, terms)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.mul_term(&Monomial::ONE, c)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Scales so that the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.lead_coeff() {
            None => self.clone(),
            Some(c) if self.field().is_one(c) => self.clone(),
            Some(c) => self.scale(&self.field().inv(c)),
        }
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        let field = self.ring.field();
        let w = self.ring.weights();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) > 0)
            .filter_map(|(m, c)| {
                let e = m.exp(var);
                let nc = field.mul(c, &field.from_i64(e as i64));
                if field.is_zero(&nc) {
                    None
                } else {
                    Some((m.with_exp(var, e - 1, w), nc))
                }
            })
            .collect();
        // dividing every term by the same variable preserves the order
        Self::from_sorted(&self.ring, terms)
    }

    /// Ring homomorphism sending variable `i` to `images[i]` (all in one target ring).
    pub fn substitute(&self, target: &Arc<Ring<F>>, images: &[Polynomial<F>]) -> Result<Self> {
        if images.len() != self.ring.nvars() {
            return Err(AlgebraError::Shape(format!(
                "substitution needs {} images, got {}",
                self.ring.nvars(),
                images.len()
            )));
        }
        if images.iter().any(|g| !same_ring(g.ring(), target)) {
            return Err(AlgebraError::RingMismatch);
        }
        if self.ring.field() != target.field() {
            return Err(AlgebraError::RingMismatch);
        }
        let mut powers: Vec<Vec<Polynomial<F>>> = vec![vec![Polynomial::one(target)]; images.len()];
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, img) in images.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().try_mul(img)?;
                    powers[i].push(next);
                }
                t = t.try_mul(&powers[i][e])?;
            }
            acc = acc.merge(&t, false);
        }
        Ok(acc)
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        let field = self.ring.field();
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    v = field.mul(&v, &field.pow(x, e as u64));
                }
            }
            acc = field.add(&acc, &v);
        }
        acc
    }

    /// Moves variable `i` to variable `var_map[i]` of `target` (same field) and
    /// re-sorts under the target's order.
    pub fn map_vars(&self, target: &Arc<Ring<F>>, var_map: &[usize]) -> Self {
        assert_eq!(var_map.len(), self.ring.nvars());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.remap(var_map, target.weights()), c.clone()))
            .collect();
        Self::from_terms(target, terms)
    }

    /// Same polynomial viewed in a ring with identical variables but another order.
    pub fn reorder(&self, target: &Arc<Ring<F>>) -> Self {
        if Arc::ptr_eq(&self.ring, target) {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_unstable_by(|a, b| target.cmp(&b.0, &a.0));
        Self::from_sorted(target, terms)
    }

    /// Exact division; `None` if `g` does not divide `self`.
    pub fn div_exact(&self, g: &Self) -> Option<Self> {
        let field = self.ring.field();
        let (gm, gc) = g.terms.first()?;
        let ginv = field.inv(gc);
        let mut rem = self.clone();
        let mut q = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !gm.divides(&m) {
                return None;
            }
            let qm = gm.quotient_of(&m);
            let qc = field.mul(&c, &ginv);
            rem = rem.merge(&g.mul_term(&qm, &qc), true);
            q.push((qm, qc));
        }
        Some(Self::from_sorted(&self.ring, q))
    }

    /// Exponent of the largest power of variable `i` dividing every term.
    pub fn var_valuation(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(i)).min().unwrap_or(0)
    }

    /// Divides by `x_i^e`, assuming every term is divisible.
    pub fn divide_by_var_power(&self, i: usize, e: u32) -> Self {
        if e == 0 {
            return self.clone();
        }
        let w = self.ring.weights();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.with_exp(i, m.exp(i) - e, w), c.clone()))
            .collect();
        Self::from_sorted(&self.ring, terms)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field = self.ring.field();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = field.is_negative(c);
            let abs = if neg { field.neg(c) } else { c.clone() };
            if neg {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            let mono = self.ring.format_monomial(m);
            if m.is_one() {
                f.write_str(&field.fmt_elem(&abs))?;
            } else if field.is_one(&abs) {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", field.fmt_elem(&abs), mono)?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a, F: Field> Add for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.try_add(rhs).expect("ring mismatch in addition")
    }
}

impl<'a, F: Field> Sub for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.try_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl<'a, F: Field> Mul for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.try_mul(rhs).expect("polynomial multiplication failed")
    }
}

impl<'a, F: Field> Neg for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        let field = self.ring.field();
        let terms = self.terms.iter().map(|(m, c)| (*m, field.neg(c))).collect();
        Polynomial::from_sorted(&self.ring, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_polynomial;

    fn ring7() -> Arc<Ring<PrimeField>> {
        Ring::standard(&["x", "y", "z"], PrimeField::new(7).unwrap())
    }

    #[test]
    fn trivial_identities() {
        let r = ring7();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        assert!((&x * &Polynomial::zero(&r)).is_zero());
        let lhs = &(&x + &y) * &(&x - &y);
        assert_eq!(lhs, parse_polynomial(&r, "x^2-y^2").unwrap());
        let five_x = Polynomial::from_i64(&r, 5).try_mul(&x).unwrap();
        let four_x = Polynomial::from_i64(&r, 4).try_mul(&x).unwrap();
        assert_eq!(&five_x + &four_x, Polynomial::from_i64(&r, 2).try_mul(&x).unwrap());
    }

    #[test]
    fn derivative_examples() {
        let r = ring7();
        let f = parse_polynomial(&r, "x^2*y").unwrap();
        assert_eq!(f.partial_derivative(0), parse_polynomial(&r, "2*x*y").unwrap());
        let g = parse_polynomial(&r, "x^7").unwrap();
        assert!(g.partial_derivative(0).is_zero());
    }

    #[test]
    fn substitution_examples() {
        let r = ring7();
        let f = parse_polynomial(&r, "x*y^2 + z^3 - 2").unwrap();
        let id: Vec<_> = (0..3).map(|i| Polynomial::var(&r, i)).collect();
        assert_eq!(f.substitute(&r, &id).unwrap(), f);
        let mut kill_x = id.clone();
        kill_x[0] = Polynomial::zero(&r);
        assert_eq!(f.substitute(&r, &kill_x).unwrap(), parse_polynomial(&r, "z^3-2").unwrap());
    }

    #[test]
    fn exact_division() {
        let r = ring7();
        let a = parse_polynomial(&r, "x^2+y*z").unwrap();
        let b = parse_polynomial(&r, "x-3*z").unwrap();
        let p = &a * &b;
        assert_eq!(p.div_exact(&b).unwrap(), a);
        assert!(a.div_exact(&b).is_none());
    }

    #[test]
    fn overflow_is_an_error() {
        let r = ring7();
        let big = parse_polynomial(&r, "x^40000").unwrap();
        assert_eq!(big.try_mul(&big), Err(AlgebraError::ExponentOverflow));
    }
}
