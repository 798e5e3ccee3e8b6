//! Ring descriptors: variable names, weights, coefficient field, order.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder, OrderKey, MAX_VARS};
use crate::poly::Polynomial;
use crate::{AlgebraError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring<F: Field> {
    names: Vec<String>,
    weights: Vec<u32>,
    field: F,
    order: MonomialOrder,
}

impl<F: Field> Ring<F> {
    pub fn new(names: Vec<String>, weights: Vec<u32>, field: F, order: MonomialOrder) -> Result<Arc<Self>> {
        if names.is_empty() || names.len() > MAX_VARS {
            return Err(AlgebraError::InvalidRing(format!(
                "need between 1 and {MAX_VARS} variables, got {}",
                names.len()
            )));
        }
        if weights.len() != names.len() {
            return Err(AlgebraError::InvalidRing("one weight per variable required".into()));
        }
        if weights.iter().any(|&w| w == 0 || w > 64) {
            return Err(AlgebraError::InvalidRing("weights must lie in 1..=64".into()));
        }
        let mut seen = HashSet::new();
        for n in &names {
            let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(AlgebraError::InvalidRing(format!("bad variable name {n:?}")));
            }
            if !seen.insert(n.as_str()) {
                return Err(AlgebraError::InvalidRing(format!("duplicate variable {n}")));
            }
        }
        if let MonomialOrder::Elimination(k) = order {
            if k == 0 || k >= names.len() {
                return Err(AlgebraError::InvalidRing(format!("elimination split {k} out of range")));
            }
        }
        Ok(Arc::new(Ring {
            names,
            weights,
            field,
            order,
        }))
    }

    /// Standard-graded ring with the given variable names.
    pub fn standard(names: &[&str], field: F) -> Arc<Self> {
        Self::new(
            names.iter().map(|s| s.to_string()).collect(),
            vec![1; names.len()],
            field,
            MonomialOrder::Grevlex,
        )
        .expect("valid standard ring")
    }

    /// Standard-graded ring in `x0..x{n-1}`.
    pub fn projective(n_vars: usize, field: F) -> Arc<Self> {
        let names: Vec<String> = (0..n_vars).map(|i| format!("x{i}")).collect();
        Self::new(names, vec![1; n_vars], field, MonomialOrder::Grevlex).expect("valid ring")
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_standard_graded(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b, &self.weights)
    }

    #[inline]
    pub fn key(&self, a: &Monomial) -> OrderKey {
        self.order.key(a, &self.weights)
    }

    pub fn monomial(&self, exps: &[u32]) -> Result<Monomial> {
        if exps.len() != self.nvars() {
            return Err(AlgebraError::Shape("exponent vector arity".into()));
        }
        Monomial::from_exponents(exps, &self.weights).ok_or(AlgebraError::ExponentOverflow)
    }

    pub fn var_monomial(&self, i: usize) -> Monomial {
        Monomial::var(i, self.weights[i])
    }

    /// Same variables and field under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        Self::new(self.names.clone(), self.weights.clone(), self.field.clone(), order)
    }

    /// Appends fresh variables with the given names and weights.
    pub fn extend(&self, names: &[&str], weights: &[u32], order: MonomialOrder) -> Result<Arc<Self>> {
        let mut n = self.names.clone();
        n.extend(names.iter().map(|s| s.to_string()));
        let mut w = self.weights.clone();
        w.extend_from_slice(weights);
        Self::new(n, w, self.field.clone(), order)
    }

    /// A name not already used by the ring.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut k = 0;
        loop {
            let cand = if k == 0 { stem.to_string() } else { format!("{stem}{k}") };
            if self.var_index(&cand).is_none() {
                return cand;
            }
            k += 1;
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for i in 0..self.nvars() {
            match m.exp(i) {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                e => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn header(&self) -> String {
        let weights: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        format!(
            "ring p={} vars={} weights={} order={}",
            self.field.characteristic(),
            self.names.join(","),
            weights.join(","),
            self.order.tag()
        )
    }
}

impl<F: Field> fmt::Display for Ring<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.header())
    }
}

/// Convenience: the variables of a ring as polynomials.
pub fn variables<F: Field>(ring: &Arc<Ring<F>>) -> Vec<Polynomial<F>> {
    (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn rejects_bad_rings() {
        let f = PrimeField::new(7).unwrap();
        assert!(Ring::new(vec!["x".into(), "x".into()], vec![1, 1], f, MonomialOrder::Grevlex).is_err());
        assert!(Ring::new(vec!["x".into()], vec![0], f, MonomialOrder::Grevlex).is_err());
        assert!(Ring::new(vec!["1x".into()], vec![1], f, MonomialOrder::Grevlex).is_err());
        assert!(Ring::new(vec!["x".into(), "y".into()], vec![1, 1], f, MonomialOrder::Elimination(2)).is_err());
    }

    #[test]
    fn header_roundtrip_text() {
        let f = PrimeField::new(32003).unwrap();
        let r = Ring::new(
            vec!["x".into(), "y".into(), "u".into()],
            vec![1, 1, 2],
            f,
            MonomialOrder::Grevlex,
        )
        .unwrap();
        assert_eq!(r.header(), "ring p=32003 vars=x,y,u weights=1,1,2 order=grevlex");
    }
}
