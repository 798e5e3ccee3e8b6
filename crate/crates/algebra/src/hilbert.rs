//! Hilbert series of graded quotients by monomial ideals, with weighted
//! denominators `∏(1 - t^{w_i})`.

use std::fmt;

use num::rational::Ratio;

use crate::monomial::{Monomial, MAX_VARS};

/// `numerator(t) / ∏(1 - t^{w_i})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    /// Coefficients of `t^0, t^1, ...`, trailing zeros trimmed.
    pub numerator: Vec<i64>,
    pub weights: Vec<u32>,
}

type TPoly = Vec<i64>;

fn trim(mut p: TPoly) -> TPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn tp_add(a: &TPoly, b: &TPoly) -> TPoly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i] += v;
    }
    trim(out)
}

fn tp_mul(a: &TPoly, b: &TPoly) -> TPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn one_minus_t_pow(d: u32) -> TPoly {
    let mut p = vec![0; d as usize + 1];
    p[0] = 1;
    p[d as usize] -= 1;
    trim(p)
}

/// Product of `(1 - t^{d})` over the given exponents.
pub fn product_one_minus(degrees: &[u32]) -> Vec<i64> {
    degrees.iter().fold(vec![1], |acc, &d| tp_mul(&acc, &one_minus_t_pow(d)))
}

/// Divides by `1 - t` if possible (exact synthetic division).
fn div_one_minus_t(p: &TPoly) -> Option<TPoly> {
    if p.is_empty() || p.iter().sum::<i64>() != 0 {
        return None;
    }
    // p = (1 - t) q  =>  q_k = Σ_{i<=k} p_i
    let mut q = Vec::with_capacity(p.len() - 1);
    let mut run = 0;
    for v in &p[..p.len() - 1] {
        run += v;
        q.push(run);
    }
    Some(trim(q))
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.total_degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator of the Hilbert series of `R / ⟨gens⟩` by pivot recursion:
/// `N(I) = N(I + ⟨p⟩) + t^{deg p} N(I : p)` with `p` a variable power.
fn numerator(gens: Vec<Monomial>, weights: &[u32]) -> TPoly {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return Vec::new();
    }
    let n = weights.len();
    let pairwise_coprime = {
        let mut seen = 0u32;
        let mut ok = true;
        for g in &gens {
            let s = g.divmask() & 0xFFFF;
            if s & seen != 0 {
                ok = false;
                break;
            }
            seen |= s;
        }
        ok
    };
    if pairwise_coprime {
        return gens.iter().fold(vec![1], |acc, g| tp_mul(&acc, &one_minus_t_pow(g.degree())));
    }
    // Pivot x_i^e with x_i in the support of a generator m that is not a pure
    // power and e <= exp_i(m): then x_i^e is not in I and I : x_i^e grows.
    let mut counts = [0usize; MAX_VARS];
    for g in &gens {
        for (i, c) in counts.iter_mut().enumerate().take(n) {
            if g.exp(i) > 0 {
                *c += 1;
            }
        }
    }
    let is_pure_power = |g: &Monomial| (g.divmask() & 0xFFFF).count_ones() == 1;
    let (var, cap) = gens
        .iter()
        .filter(|g| !is_pure_power(g))
        .flat_map(|g| (0..n).filter(move |&i| g.exp(i) > 0).map(move |i| (i, g.exp(i))))
        .max_by_key(|&(i, e)| (counts[i], e, std::cmp::Reverse(i)))
        .expect("a non-pure-power generator exists when generators are not coprime");
    let mut exps: Vec<u32> = gens.iter().map(|g| g.exp(var)).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2].clamp(1, cap);
    let pivot = Monomial::ONE.with_exp(var, e, weights);
    let mut with_pivot = gens.clone();
    with_pivot.push(pivot);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let k = g.exp(var).saturating_sub(e);
            g.with_exp(var, k, weights)
        })
        .collect();
    let a = numerator(with_pivot, weights);
    let b = numerator(colon, weights);
    let mut shifted = vec![0; pivot.degree() as usize];
    shifted.extend(b);
    tp_add(&a, &trim(shifted))
}

impl HilbertSeries {
    pub fn of_monomial_ideal(gens: &[Monomial], weights: &[u32]) -> Self {
        HilbertSeries {
            numerator: numerator(gens.to_vec(), weights),
            weights: weights.to_vec(),
        }
    }

    /// Series `numerator / ∏(1 - t^{w})` for an explicit numerator.
    pub fn new(numerator: Vec<i64>, weights: Vec<u32>) -> Self {
        HilbertSeries {
            numerator: trim(numerator),
            weights,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Order of vanishing of the numerator at `t = 1`, and the cofactor.
    fn split_at_one(&self) -> (usize, TPoly) {
        let mut q = self.numerator.clone();
        let mut k = 0;
        while let Some(next) = div_one_minus_t(&q) {
            q = next;
            k += 1;
        }
        (k, q)
    }

    /// Krull dimension of the quotient ring; `None` for the zero series.
    pub fn krull_dimension(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let (k, _) = self.split_at_one();
        Some(self.weights.len() - k)
    }

    /// Leading coefficient normalization: `Q(1) / ∏ w_i` where
    /// `numerator = (1 - t)^k Q`.
    pub fn degree(&self) -> Ratio<i64> {
        if self.is_zero() {
            return Ratio::from_integer(0);
        }
        let (_, q) = self.split_at_one();
        let prod: i64 = self.weights.iter().map(|&w| w as i64).product();
        Ratio::new(q.iter().sum(), prod)
    }

    /// Coefficient of `t^d` in the power-series expansion.
    pub fn coefficient(&self, d: u32) -> i64 {
        self.expand(d)[d as usize]
    }

    /// Coefficients of `t^0..=t^d`.
    pub fn expand(&self, d: u32) -> Vec<i64> {
        let len = d as usize + 1;
        let mut s = vec![0i64; len];
        for (i, v) in self.numerator.iter().enumerate().take(len) {
            s[i] = *v;
        }
        // multiply by 1/(1 - t^w) = running sums with stride w
        for &w in &self.weights {
            let w = w as usize;
            for i in w..len {
                s[i] += s[i - w];
            }
        }
        s
    }

    /// Equality of rational functions `N/∏(1-t^w) == num/∏(1-t^e) · 1/∏(1-t^f)`
    /// given explicit numerator and denominator exponent lists.
    pub fn equals_rational(&self, num_factors: &[u32], den_factors: &[u32]) -> bool {
        let lhs = tp_mul(&self.numerator, &product_one_minus(den_factors));
        let rhs = tp_mul(&product_one_minus(num_factors), &product_one_minus(&self.weights));
        lhs == rhs
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = if self.numerator.is_empty() {
            "0".to_string()
        } else {
            let mut parts = Vec::new();
            for (i, c) in self.numerator.iter().enumerate() {
                if *c == 0 {
                    continue;
                }
                let sign = if *c < 0 { "-" } else { "+" };
                let mag = c.abs();
                let body = match (i, mag) {
                    (0, m) => m.to_string(),
                    (1, 1) => "t".to_string(),
                    (1, m) => format!("{m}t"),
                    (e, 1) => format!("t^{e}"),
                    (e, m) => format!("{m}t^{e}"),
                };
                parts.push(format!("{sign}{body}"));
            }
            let s = parts.concat();
            s.strip_prefix('+').unwrap_or(&s).to_string()
        };
        let den: Vec<String> = self
            .weights
            .iter()
            .map(|w| if *w == 1 { "(1-t)".to_string() } else { format!("(1-t^{w})") })
            .collect();
        write!(f, "({num})/({})", den.join(""))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e, &vec![1; e.len()]).unwrap()
    }

    #[test]
    fn polynomial_ring() {
        let h = HilbertSeries::of_monomial_ideal(&[], &[1, 1, 1]);
        assert_eq!(h.numerator, vec![1]);
        assert_eq!(h.krull_dimension(), Some(3));
        assert_eq!(h.expand(3), vec![1, 3, 6, 10]);
    }

    #[test]
    fn hypersurface_and_lines() {
        // x^2 in k[x,y,z]: (1 - t^2)/(1-t)^3, degree 2
        let h = HilbertSeries::of_monomial_ideal(&[m(&[2, 0, 0])], &[1, 1, 1]);
        assert_eq!(h.numerator, vec![1, 0, -1]);
        assert_eq!(h.degree(), Ratio::from_integer(2));
        // <xy, xz> : a line plus a plane
        let h = HilbertSeries::of_monomial_ideal(&[m(&[1, 1, 0]), m(&[1, 0, 1])], &[1, 1, 1]);
        assert_eq!(h.krull_dimension(), Some(2));
        assert_eq!(h.degree(), Ratio::from_integer(1));
    }

    #[test]
    fn weighted_degree_is_rational() {
        let w = [1, 1, 2];
        let h = HilbertSeries::of_monomial_ideal(&[], &w);
        assert_eq!(h.degree(), Ratio::new(1, 2));
        assert!(h.equals_rational(&[], &[1, 1, 2]));
    }
}
