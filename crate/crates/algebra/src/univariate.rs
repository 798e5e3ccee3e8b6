//! Dense univariate polynomials (ascending coefficients) for eliminants.

use crate::field::Field;

pub type UPoly<F> = Vec<<F as Field>::Elem>;

pub fn trim<F: Field>(f: &F, mut p: UPoly<F>) -> UPoly<F> {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
    p
}

/// Degree; `None` for zero.
pub fn degree<F: Field>(p: &UPoly<F>) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn derivative<F: Field>(f: &F, p: &UPoly<F>) -> UPoly<F> {
    let d = p.iter().enumerate().skip(1).map(|(i, c)| f.mul(c, &f.from_i64(i as i64))).collect();
    trim(f, d)
}

pub fn monic<F: Field>(f: &F, p: &UPoly<F>) -> UPoly<F> {
    match p.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = f.inv(lc);
            p.iter().map(|c| f.mul(c, &inv)).collect()
        }
    }
}

/// Quotient and remainder.
pub fn divmod<F: Field>(f: &F, a: &UPoly<F>, b: &UPoly<F>) -> (UPoly<F>, UPoly<F>) {
    let b = trim(f, b.clone());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = trim(f, a.clone());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = f.inv(b.last().unwrap());
    let mut q = vec![f.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = f.mul(r.last().unwrap(), &inv);
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = f.sub(&r[shift + i], &f.mul(&c, bc));
        }
        q[shift] = c;
        r = trim(f, r);
    }
    (trim(f, q), r)
}

/// Monic gcd.
pub fn gcd<F: Field>(f: &F, a: &UPoly<F>, b: &UPoly<F>) -> UPoly<F> {
    let (mut a, mut b) = (trim(f, a.clone()), trim(f, b.clone()));
    while !b.is_empty() {
        let (_, r) = divmod(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

/// `p / gcd(p, p')`, monic. Valid when the characteristic exceeds `deg p`.
pub fn squarefree_part<F: Field>(f: &F, p: &UPoly<F>) -> UPoly<F> {
    let g = gcd(f, p, &derivative(f, p));
    monic(f, &divmod(f, p, &g).0)
}

pub fn is_squarefree<F: Field>(f: &F, p: &UPoly<F>) -> bool {
    gcd(f, p, &derivative(f, p)).len() <= 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn squarefree_examples() {
        let f = PrimeField::new(32003).unwrap();
        let x2: Vec<u32> = vec![0, 0, 1];
        assert!(!is_squarefree(&f, &x2));
        assert_eq!(squarefree_part(&f, &x2), vec![0, 1]);
        let x2m1 = vec![f.from_i64(-1), 0, 1];
        assert!(is_squarefree(&f, &x2m1));
        // (x-1)^2 (x+2)
        let p = vec![2, f.from_i64(-3), 0, 1];
        assert_eq!(squarefree_part(&f, &p), vec![f.from_i64(-2), 1, 1]);
    }
}
