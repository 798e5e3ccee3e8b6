//! Matrices of polynomials: determinants, minors, Pfaffians, Jacobians.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::field::Field;
use crate::poly::{same_ring, Polynomial};
use crate::ring::Ring;
use crate::{AlgebraError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<F: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<F>>,
}

impl<F: Field> PolyMatrix<F> {
    /// Row-major entries, all in `ring`.
    pub fn new(ring: &Arc<Ring<F>>, rows: usize, cols: usize, entries: Vec<Polynomial<F>>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(AlgebraError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| !same_ring(e.ring(), ring)) {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Polynomial<F>) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, entries }
    }

    /// Jacobian matrix: one row per polynomial, one column per variable.
    pub fn jacobian(ring: &Arc<Ring<F>>, polys: &[Polynomial<F>]) -> Self {
        Self::from_fn(polys.len(), ring.nvars(), |i, j| polys[i].partial_derivative(j))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(AlgebraError::Shape("inner dimensions differ".into()));
        }
        let ring = self.entries.first().map(|e| e.ring().clone());
        let Some(ring) = ring else {
            return Ok(Self::from_fn(self.rows, other.cols, |_, _| unreachable!()));
        };
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&ring);
                for k in 0..self.cols {
                    acc = acc.try_add(&self.get(i, k).try_mul(other.get(k, j))?)?;
                }
                out.push(acc);
            }
        }
        Ok(PolyMatrix {
            rows: self.rows,
            cols: other.cols,
            entries: out,
        })
    }

    /// Determinant by Laplace expansion along rows, memoized on column sets.
    pub fn det(&self) -> Result<Polynomial<F>> {
        if self.rows != self.cols {
            return Err(AlgebraError::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Err(AlgebraError::Shape("empty matrix".into()));
        }
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (0..n).collect();
        let mut memo = FxHashMap::default();
        self.laplace(&rows, &cols, 0, &mut memo)
    }

    fn laplace(
        &self,
        rows: &[usize],
        cols: &[usize],
        depth: usize,
        memo: &mut FxHashMap<Vec<usize>, Polynomial<F>>,
    ) -> Result<Polynomial<F>> {
        let r = rows[depth];
        if depth + 1 == rows.len() {
            return Ok(self.get(r, cols[0]).clone());
        }
        if let Some(v) = memo.get(cols) {
            return Ok(v.clone());
        }
        let ring = self.entries[0].ring().clone();
        let mut acc = Polynomial::zero(&ring);
        for (k, &c) in cols.iter().enumerate() {
            let e = self.get(r, c);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &c)| c).collect();
            let sub = self.laplace(rows, &rest, depth + 1, memo)?;
            let t = e.try_mul(&sub)?;
            acc = if k % 2 == 0 { acc.try_add(&t)? } else { acc.try_sub(&t)? };
        }
        memo.insert(cols.to_vec(), acc.clone());
        Ok(acc)
    }

    /// All `k x k` minors, row subsets outer, column subsets inner, both lexicographic.
    pub fn minors(&self, k: usize) -> Result<Vec<Polynomial<F>>> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(AlgebraError::Shape(format!("minor size {k} out of range")));
        }
        let mut out = Vec::new();
        let col_sets = subsets(self.cols, k);
        for rs in subsets(self.rows, k) {
            // Share the Laplace memo across column choices for a fixed row set.
            let mut memo = FxHashMap::default();
            for cs in &col_sets {
                out.push(self.laplace(&rs, cs, 0, &mut memo)?);
            }
        }
        Ok(out)
    }

    pub fn is_skew(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        (0..self.rows).all(|i| {
            self.get(i, i).is_zero() && (0..i).all(|j| (self.get(i, j) + self.get(j, i)).is_zero())
        })
    }

    /// Pfaffian of a skew matrix, expanding along the first row;
    /// `pf([[0, a], [-a, 0]]) = a`.
    pub fn pfaffian(&self) -> Result<Polynomial<F>> {
        if !self.is_skew() {
            return Err(AlgebraError::NotSkew);
        }
        if self.rows % 2 == 1 {
            let ring = self.entries.first().map(|e| e.ring().clone()).ok_or(AlgebraError::NotSkew)?;
            return Ok(Polynomial::zero(&ring));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        self.pf_rec(&idx)
    }

    fn pf_rec(&self, idx: &[usize]) -> Result<Polynomial<F>> {
        if idx.len() == 2 {
            return Ok(self.get(idx[0], idx[1]).clone());
        }
        let ring = self.entries[0].ring().clone();
        let mut acc = Polynomial::zero(&ring);
        let first = idx[0];
        for k in 1..idx.len() {
            let e = self.get(first, idx[k]);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..].iter().copied().filter(|&j| j != idx[k]).collect();
            let t = e.try_mul(&self.pf_rec(&rest)?)?;
            acc = if k % 2 == 1 { acc.try_add(&t)? } else { acc.try_sub(&t)? };
        }
        Ok(acc)
    }

    /// Pfaffians of all principal `k x k` submatrices, index sets lexicographic.
    pub fn pfaffians(&self, k: usize) -> Result<Vec<Polynomial<F>>> {
        if !self.is_skew() {
            return Err(AlgebraError::NotSkew);
        }
        if k == 0 || k % 2 == 1 || k > self.rows {
            return Err(AlgebraError::Shape(format!("Pfaffian size {k} must be even and at most {}", self.rows)));
        }
        subsets(self.rows, k)
            .into_iter()
            .map(|s| self.submatrix(&s, &s).pf_rec(&(0..k).collect::<Vec<_>>()))
            .collect()
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
