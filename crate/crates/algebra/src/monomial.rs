//! Packed exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

/// Maximum number of ring variables supported by the packed representation.
pub const MAX_VARS: usize = 16;

/// Exponent type. Lex bases of inhomogeneous ideals pass through intermediate
/// exponents well above 255, so a byte is not enough.
pub type Exp = u16;

/// An exponent vector with its cached weighted degree. Products that would
/// overflow are rejected by [`Monomial::checked_mul`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Monomial {
    exps: [Exp; MAX_VARS],
    deg: u32,
}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        const K: u64 = 0x9e37_79b9_7f4a_7c15;
        let e = &self.exps;
        let w = |i: usize| {
            e[i] as u64 | (e[i + 1] as u64) << 16 | (e[i + 2] as u64) << 32 | (e[i + 3] as u64) << 48
        };
        let h = ((w(0).wrapping_mul(K) ^ w(4)).wrapping_mul(K) ^ w(8)).wrapping_mul(K) ^ w(12);
        state.write_u64(h);
    }
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        exps: [0; MAX_VARS],
        deg: 0,
    };

    pub fn from_exponents(exps: &[u32], weights: &[u32]) -> Option<Monomial> {
        assert_eq!(exps.len(), weights.len());
        let mut m = Monomial::ONE;
        let mut deg = 0u32;
        for (i, (&e, &w)) in exps.iter().zip(weights).enumerate() {
            m.exps[i] = Exp::try_from(e).ok()?;
            deg += e * w;
        }
        m.deg = deg;
        Some(m)
    }

    pub fn var(i: usize, weight: u32) -> Monomial {
        let mut m = Monomial::ONE;
        m.exps[i] = 1;
        m.deg = weight;
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub fn exps(&self) -> &[Exp; MAX_VARS] {
        &self.exps
    }

    /// Weighted degree.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps == [0; MAX_VARS]
    }

    /// Product. Panics on exponent overflow rather than wrapping.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0; MAX_VARS];
        let mut wrapped = false;
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].wrapping_add(other.exps[i]);
            wrapped |= exps[i] < self.exps[i];
        }
        assert!(!wrapped, "monomial exponent overflow");
        Monomial {
            exps,
            deg: self.deg + other.deg,
        }
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = [0; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].checked_add(other.exps[i])?;
        }
        Some(Monomial {
            exps,
            deg: self.deg.checked_add(other.deg)?,
        })
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.deg > other.deg {
            return false;
        }
        // no short circuit, so the loop vectorizes
        let mut ok = true;
        for i in 0..MAX_VARS {
            ok &= self.exps[i] <= other.exps[i];
        }
        ok
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut exps = [0; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = other.exps[i] - self.exps[i];
        }
        Monomial {
            exps,
            deg: other.deg - self.deg,
        }
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let mut exps = [0; MAX_VARS];
        let mut deg = 0u32;
        for i in 0..weights.len() {
            exps[i] = self.exps[i].max(other.exps[i]);
            deg += exps[i] as u32 * weights[i];
        }
        Monomial {
            exps,
            deg,
        }
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Coarse divisibility filter: bit `i` set iff variable `i` occurs,
    /// bit `16+i` iff its exponent is at least 2.
    #[inline]
    pub fn divmask(&self) -> u32 {
        let mut m = 0u32;
        for i in 0..MAX_VARS {
            if self.exps[i] > 0 {
                m |= 1 << i;
                if self.exps[i] > 1 {
                    m |= 1 << (16 + i);
                }
            }
        }
        m
    }

    /// Sets exponent `i`; weights are needed to keep the degree cache honest.
    pub fn with_exp(&self, i: usize, e: u32, weights: &[u32]) -> Monomial {
        let mut m = *self;
        let old = m.exps[i] as i64;
        m.exps[i] = Exp::try_from(e).expect("monomial exponent overflow");
        m.deg = (m.deg as i64 + (e as i64 - old) * weights[i] as i64) as u32;
        m
    }

    /// Remaps variables: exponent of variable `i` moves to `target[i]`.
    pub fn remap(&self, target: &[usize], new_weights: &[u32]) -> Monomial {
        let mut exps = [0; MAX_VARS];
        for (i, &t) in target.iter().enumerate() {
            exps[t] = self.exps[i];
        }
        let deg: u32 = (0..new_weights.len())
            .map(|i| exps[i] as u32 * new_weights[i])
            .sum();
        Monomial {
            exps,
            deg,
        }
    }
}

/// Supported monomial orders. All are refined by the ring's variable weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Weighted degree, ties broken reverse-lexicographically from the last variable.
    Grevlex,
    /// Pure lexicographic, first variable largest.
    Lex,
    /// Block order: variables `0..k` form the eliminated block, compared first
    /// by weighted grevlex; the remaining block is weighted grevlex.
    Elimination(usize),
}

impl MonomialOrder {
    pub fn tag(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".to_string(),
            MonomialOrder::Lex => "lex".to_string(),
            MonomialOrder::Elimination(k) => format!("elim:{k}"),
        }
    }

    pub fn parse(tag: &str) -> Option<MonomialOrder> {
        match tag {
            "grevlex" | "dp" | "wp" => Some(MonomialOrder::Grevlex),
            "lex" | "lp" => Some(MonomialOrder::Lex),
            t => t
                .strip_prefix("elim:")
                .and_then(|k| k.parse().ok())
                .map(MonomialOrder::Elimination),
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        let n = weights.len();
        match *self {
            MonomialOrder::Grevlex => a.deg.cmp(&b.deg).then_with(|| revlex(a, b, 0, n)),
            MonomialOrder::Lex => a.exps[..n].cmp(&b.exps[..n]),
            MonomialOrder::Elimination(k) => {
                let da = block_degree(a, weights, k);
                let db = block_degree(b, weights, k);
                da.cmp(&db)
                    .then_with(|| revlex(a, b, 0, k))
                    .then_with(|| (a.deg as u32 - da).cmp(&(b.deg as u32 - db)))
                    .then_with(|| revlex(a, b, k, n))
            }
        }
    }

    /// A key whose lexicographic order agrees with `cmp`.
    pub fn key(&self, a: &Monomial, weights: &[u32]) -> OrderKey {
        let n = weights.len();
        let mut key = [0u16; MAX_VARS + 2];
        match *self {
            MonomialOrder::Grevlex => {
                key[0] = key_degree(a.deg);
                for (slot, i) in (0..n).rev().enumerate() {
                    key[1 + slot] = Exp::MAX - a.exps[i];
                }
            }
            MonomialOrder::Lex => {
                for i in 0..n {
                    key[i] = a.exps[i];
                }
            }
            MonomialOrder::Elimination(k) => {
                let d1 = block_degree(a, weights, k);
                key[0] = key_degree(d1);
                let mut slot = 1;
                for i in (0..k).rev() {
                    key[slot] = Exp::MAX - a.exps[i];
                    slot += 1;
                }
                key[slot] = key_degree(a.deg - d1);
                slot += 1;
                for i in (k..n).rev() {
                    key[slot] = Exp::MAX - a.exps[i];
                    slot += 1;
                }
            }
        }
        OrderKey(key)
    }
}

/// Sort key produced by [`MonomialOrder::key`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderKey(pub [u16; MAX_VARS + 2]);

#[inline]
fn key_degree(d: u32) -> u16 {
    u16::try_from(d).expect("weighted degree too large for an order key")
}

#[inline]
fn block_degree(a: &Monomial, weights: &[u32], k: usize) -> u32 {
    (0..k).map(|i| a.exps[i] as u32 * weights[i]).sum()
}

#[inline]
fn revlex(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    for i in (lo..hi).rev() {
        if a.exps[i] != b.exps[i] {
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

/// All exponent vectors of the given weighted degree, in no particular order.
pub fn monomials_of_degree(weights: &[u32], degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; weights.len()];
    fn rec(i: usize, left: u32, weights: &[u32], exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                if let Some(m) = Monomial::from_exponents(exps, weights) {
                    out.push(m);
                }
            }
            return;
        }
        let w = weights[i];
        let mut e = 0;
        while e * w <= left {
            exps[i] = e;
            rec(i + 1, left - e * w, weights, exps, out);
            e += 1;
        }
        exps[i] = 0;
    }
    rec(0, degree, weights, &mut exps, &mut out);
    out
}
