//! Exact intersection numbers: truncated Chow rings of surfaces, Schubert
//! calculus on G(2,n), and Euler numbers of complete intersections.
//!
//! Surface classes live in `Q[h]/(h^3)` with `h^2 = deg * pt`; the degree-2
//! component is stored directly in point units.

use std::collections::BTreeMap;
use std::fmt;

use num::rational::Ratio;
use num::Zero;
use serde::Serialize;

use crate::CoreError;

pub type Q = Ratio<i64>;

fn q(v: i64) -> Q {
    Q::from_integer(v)
}

/// `c0 + c1 h + c2 pt` on a surface whose hyperplane class has `h^2 = deg pt`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceClass {
    pub deg: Q,
    pub c: [Q; 3],
}

impl SurfaceClass {
    pub fn new(deg: Q, c0: Q, c1: Q, c2: Q) -> Self {
        SurfaceClass { deg, c: [c0, c1, c2] }
    }

    pub fn one(deg: Q) -> Self {
        Self::new(deg, q(1), q(0), q(0))
    }

    /// `1 + k h`.
    pub fn linear(deg: Q, k: Q) -> Self {
        Self::new(deg, q(1), k, q(0))
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.deg, o.deg);
        let [a0, a1, a2] = self.c;
        let [b0, b1, b2] = o.c;
        Self::new(self.deg, a0 * b0, a0 * b1 + a1 * b0, a0 * b2 + a2 * b0 + a1 * b1 * self.deg)
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Option<Self> {
        let [a0, a1, a2] = self.c;
        if a0.is_zero() {
            return None;
        }
        // a0 (1 + x), x nilpotent: inverse (1 - x + x^2) / a0
        let x1 = a1 / a0;
        let x2 = a2 / a0;
        let inv = Self::new(self.deg, q(1), -x1, -x2 + x1 * x1 * self.deg);
        Some(inv.scale(a0.recip()))
    }

    pub fn scale(&self, k: Q) -> Self {
        Self::new(self.deg, self.c[0] * k, self.c[1] * k, self.c[2] * k)
    }

    /// Chern classes of the dual bundle: `c_i -> (-1)^i c_i`.
    pub fn dual(&self) -> Self {
        Self::new(self.deg, self.c[0], -self.c[1], self.c[2])
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inverse()? } else { *self };
        let mut acc = Self::one(self.deg);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    /// Point coefficient.
    pub fn top(&self) -> Q {
        self.c[2]
    }

    /// Twist of a rank-`r` bundle with these Chern classes by `O(d h)`.
    pub fn twist(&self, rank: i64, d: Q) -> Self {
        let [c0, c1, c2] = self.c;
        let r = q(rank);
        let c1t = c1 + r * d;
        let c2t = c2 + (r - q(1)) * d * c1 * self.deg + r * (r - q(1)) / q(2) * d * d * self.deg;
        Self::new(self.deg, c0, c1t, c2t)
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}h + {}pt", self.c[0], self.c[1], self.c[2])
    }
}

/// The ambient in which a surface sits, as far as `c(T_A)|_D` is concerned.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AmbientChern {
    /// `P^n`.
    Projective(usize),
    /// Weighted projective space; only valid away from its singular points.
    Weighted(Vec<u32>),
    /// `G(2,n)` cut by `hyperplanes` hyperplanes, with `∫_D σ11` supplied.
    Grassmannian { n: usize, hyperplanes: usize, sigma11: i64 },
}

impl AmbientChern {
    pub fn dimension(&self) -> usize {
        match self {
            AmbientChern::Projective(n) => *n,
            AmbientChern::Weighted(w) => w.len() - 1,
            AmbientChern::Grassmannian { n, hyperplanes, .. } => 2 * (n - 2) - hyperplanes,
        }
    }

    /// `c(T_A)` restricted to a surface of degree `deg`.
    pub fn tangent_on(&self, deg: Q) -> SurfaceClass {
        match self {
            AmbientChern::Projective(n) => SurfaceClass::linear(deg, q(1)).pow(*n as i64 + 1).unwrap(),
            AmbientChern::Weighted(w) => w
                .iter()
                .fold(SurfaceClass::one(deg), |acc, &wi| acc.mul(&SurfaceClass::linear(deg, q(wi as i64)))),
            AmbientChern::Grassmannian { n, hyperplanes, sigma11 } => {
                // c(T_G) = (1+σ1+σ11)^n / (1 - σ1^2 + 4σ11); c2 = (n²-n+2)/2 σ1² + (n-4) σ11
                let n = *n as i64;
                let c2 = Ratio::new(n * n - n + 2, 2) * deg + q((n - 4) * sigma11);
                let tg = SurfaceClass::new(deg, q(1), q(n), c2);
                tg.mul(&SurfaceClass::linear(deg, q(1)).pow(-(*hyperplanes as i64)).unwrap())
            }
        }
    }
}

/// Invariants of an embedded surface needed by the node oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    /// `m` with `m H|_D = -K_D`.
    pub m: i64,
    pub k2: i64,
    pub chi_top: i64,
}

impl SurfaceInvariants {
    /// Embedding degree `H^2 = K^2 / m^2`.
    pub fn degree(&self) -> Q {
        Ratio::new(self.k2, self.m * self.m)
    }
}

/// `c(T_D) = 1 + m h + χ pt`, the anticanonical sign convention.
pub fn surface_tangent_chern(s: &SurfaceInvariants) -> SurfaceClass {
    SurfaceClass::new(s.degree(), q(1), q(s.m), q(s.chi_top))
}

/// `c(N_{D/A})` by Whitney.
pub fn normal_chern(s: &SurfaceInvariants, ambient: &AmbientChern) -> SurfaceClass {
    let deg = s.degree();
    ambient.tangent_on(deg).mul(&surface_tangent_chern(s).inverse().unwrap())
}

/// `c(N^∨(d))` for the twisted conormal bundle.
pub fn conormal_twist_chern(s: &SurfaceInvariants, ambient: &AmbientChern, d: i64) -> SurfaceClass {
    let rank = ambient.dimension() as i64 - 2;
    normal_chern(s, ambient).dual().twist(rank, q(d))
}

/// Every intermediate class of the node prediction, for display.
#[derive(Clone, Debug, Serialize)]
pub struct ChernLedger {
    pub ambient: AmbientChern,
    pub invariants: SurfaceInvariants,
    pub degrees: Vec<u32>,
    pub tangent_surface: String,
    pub tangent_ambient: String,
    pub normal: String,
    pub conormal: String,
    pub twisted: String,
    pub nodes: i64,
    pub sign_convention: &'static str,
}

pub const SIGN_CONVENTION: &str = "c1(T_D) = +m h (anticanonical); the opposite sign does not reproduce the tabulated node counts";

/// Node count of a generic complete intersection of the given degrees
/// through `D`: the point coefficient of `c(N^∨) / ∏(1 - e_j h)`, which for
/// equal degrees `d` is `c2(N^∨(d))`.
pub fn predicted_nodes(s: &SurfaceInvariants, ambient: &AmbientChern, degrees: &[u32]) -> Result<ChernLedger, CoreError> {
    let codim = ambient.dimension() as i64 - 2;
    if degrees.len() as i64 != codim - 1 {
        return Err(CoreError::Invalid(format!(
            "{} hypersurfaces for a surface of codimension {codim}",
            degrees.len()
        )));
    }
    let deg = s.degree();
    let tangent = surface_tangent_chern(s);
    let amb = ambient.tangent_on(deg);
    let normal = normal_chern(s, ambient);
    let conormal = normal.dual();
    let mut twisted = conormal;
    for &e in degrees {
        twisted = twisted.mul(&SurfaceClass::linear(deg, q(-(e as i64))).inverse().unwrap());
    }
    let top = twisted.top();
    if !top.is_integer() {
        return Err(CoreError::NonIntegral(format!("node prediction {top}")));
    }
    Ok(ChernLedger {
        ambient: ambient.clone(),
        invariants: *s,
        degrees: degrees.to_vec(),
        tangent_surface: tangent.to_string(),
        tangent_ambient: amb.to_string(),
        normal: normal.to_string(),
        conormal: conormal.to_string(),
        twisted: twisted.to_string(),
        nodes: top.to_integer(),
        sign_convention: SIGN_CONVENTION,
    })
}

/// Truncated power series in `h` up to `h^3`.
fn series_mul(a: &[Q; 4], b: &[Q; 4]) -> [Q; 4] {
    let mut out = [q(0); 4];
    for i in 0..4 {
        for j in 0..4 - i {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

fn one_plus(k: i64) -> [Q; 4] {
    [q(1), q(k), q(0), q(0)]
}

fn series_inv(a: &[Q; 4]) -> [Q; 4] {
    let mut out = [q(0); 4];
    out[0] = a[0].recip();
    for k in 1..4 {
        let mut s = q(0);
        for i in 1..=k {
            s += a[i] * out[k - i];
        }
        out[k] = -s * out[0];
    }
    out
}

/// Does a generic complete intersection of `degrees` in `P(weights)` meet the
/// ambient singular locus? For each `g > 1` the stratum where only variables
/// of weight divisible by `g` survive has dimension `#{g | w} - 1`; forms whose
/// degree `g` does not divide vanish on it identically.
pub fn meets_ambient_singularities(weights: &[u32], degrees: &[u32]) -> bool {
    let maxw = weights.iter().copied().max().unwrap_or(1);
    (2..=maxw).any(|g| {
        let vars = weights.iter().filter(|&&w| w % g == 0).count() as i64;
        if vars == 0 {
            return false;
        }
        let cuts = degrees.iter().filter(|&&d| d % g == 0).count() as i64;
        vars - 1 - cuts >= 0
    })
}

/// Topological Euler number of a quasi-smooth threefold complete intersection
/// of the given degrees in `P(weights)`.
pub fn euler_ci(weights: &[u32], degrees: &[u32]) -> Result<i64, CoreError> {
    if weights.len() < degrees.len() + 4 || weights.len() - 1 - degrees.len() != 3 {
        return Err(CoreError::Invalid(format!(
            "{} weights and {} degrees do not give a threefold",
            weights.len(),
            degrees.len()
        )));
    }
    if weights.iter().any(|&w| w == 0) || degrees.iter().any(|&d| d == 0) {
        return Err(CoreError::Invalid("weights and degrees must be positive".into()));
    }
    if meets_ambient_singularities(weights, degrees) {
        return Err(CoreError::AmbientSingularities);
    }
    let mut s = [q(1), q(0), q(0), q(0)];
    for &w in weights {
        s = series_mul(&s, &one_plus(w as i64));
    }
    for &d in degrees {
        s = series_mul(&s, &series_inv(&one_plus(d as i64)));
    }
    let num: i64 = degrees.iter().map(|&d| d as i64).product();
    let den: i64 = weights.iter().map(|&w| w as i64).product();
    let chi = s[3] * Ratio::new(num, den);
    if !chi.is_integer() {
        return Err(CoreError::NonIntegral(format!("Euler number {chi}")));
    }
    Ok(chi.to_integer())
}

/// Integral cohomology class on `G(2,n)` in the Schubert basis `σ_{a,b}`,
/// `n-2 >= a >= b >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertClass {
    n: usize,
    coeffs: BTreeMap<(usize, usize), i64>,
}

impl SchubertClass {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 2, "G(2,n) needs n >= 2");
        SchubertClass { n, coeffs: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::sigma(n, 0, 0)
    }

    pub fn sigma(n: usize, a: usize, b: usize) -> Self {
        let mut s = Self::zero(n);
        assert!(a <= n - 2 && b <= a, "σ_({a},{b}) outside the box for G(2,{n})");
        s.coeffs.insert((a, b), 1);
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, a: usize, b: usize) -> i64 {
        self.coeffs.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.coeffs.iter().map(|(k, v)| (*k, *v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Basis of the cohomology ring; its size is `χ_top(G(2,n)) = C(n,2)`.
    pub fn basis(n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..=n - 2 {
            for b in 0..=a {
                out.push((a, b));
            }
        }
        out
    }

    fn add_term(&mut self, key: (usize, usize), c: i64) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(key).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&key);
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, CoreError> {
        self.check(o)?;
        let mut out = self.clone();
        for (k, v) in o.terms() {
            out.add_term(k, v);
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero(self.n);
        for (key, v) in self.terms() {
            out.add_term(key, v * k);
        }
        out
    }

    fn check(&self, o: &Self) -> Result<(), CoreError> {
        if self.n != o.n {
            return Err(CoreError::Invalid(format!("G(2,{}) vs G(2,{})", self.n, o.n)));
        }
        Ok(())
    }

    /// Pieri: `σ_k · σ_{a,b} = Σ σ_{a',b'}` over `a' + b' = a + b + k`,
    /// `b <= b' <= a <= a' <= n-2`.
    pub fn pieri(&self, k: usize) -> Self {
        let top = self.n - 2;
        let mut out = Self::zero(self.n);
        if k > top {
            return out;
        }
        for ((a, b), c) in self.terms() {
            let total = a + b + k;
            for a2 in a..=top {
                if total < a2 {
                    break;
                }
                let b2 = total - a2;
                if b2 >= b && b2 <= a {
                    out.add_term((a2, b2), c);
                }
            }
        }
        out
    }

    /// Product via Giambelli: `σ_{a,b} = σ_a σ_b - σ_{a+1} σ_{b-1}`.
    pub fn mul(&self, o: &Self) -> Result<Self, CoreError> {
        self.check(o)?;
        let mut out = Self::zero(self.n);
        for ((a, b), c) in o.terms() {
            let mut part = self.pieri(b).pieri(a);
            if b > 0 {
                part = part.add(&self.pieri(b - 1).pieri(a + 1).scale(-1))?;
            }
            out = out.add(&part.scale(c))?;
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Result<Self, CoreError> {
        let mut acc = Self::one(self.n);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Component of codimension `k`.
    pub fn graded(&self, k: usize) -> Self {
        let mut out = Self::zero(self.n);
        for ((a, b), c) in self.terms() {
            if a + b == k {
                out.add_term((a, b), c);
            }
        }
        out
    }

    /// Degree of the top class `σ_{n-2,n-2}`.
    pub fn integrate(&self) -> i64 {
        self.coeff(self.n - 2, self.n - 2)
    }
}

impl fmt::Display for SchubertClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|((a, b), c)| format!("{c}σ{a}{b}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Total Chern class of `T_{G(2,n)}`:
/// `c(S^∨)^n / c(S^∨ ⊗ S) = (1 + σ1 + σ11)^n / (1 - σ1^2 + 4σ11)`.
pub fn grassmannian_tangent_chern(n: usize) -> SchubertClass {
    let base = SchubertClass::one(n)
        .add(&SchubertClass::sigma(n, 1, 0))
        .and_then(|s| s.add(&SchubertClass::sigma(n, 1, 1)))
        .unwrap();
    let num = base.pow(n).unwrap();
    // u = σ1^2 - 4σ11 = σ2 - 3σ11; 1/(1-u) = Σ u^k (nilpotent)
    let s1 = SchubertClass::sigma(n, 1, 0);
    let u = s1.mul(&s1).unwrap().add(&SchubertClass::sigma(n, 1, 1).scale(-4)).unwrap();
    let dim = 2 * (n - 2);
    let mut inv = SchubertClass::one(n);
    let mut power = SchubertClass::one(n);
    for _ in 0..dim / 2 {
        power = power.mul(&u).unwrap();
        inv = inv.add(&power).unwrap();
    }
    num.mul(&inv).unwrap()
}

/// Euler number of a threefold complete intersection of hypersurfaces of the
/// given degrees (hyperplanes included as 1s) in `G(2,n)`.
pub fn euler_ci_grassmannian(n: usize, degrees: &[u32]) -> Result<i64, CoreError> {
    if !(4..=8).contains(&n) {
        return Err(CoreError::Invalid(format!("unsupported Grassmannian G(2,{n})")));
    }
    let dim = 2 * (n - 2);
    if dim < degrees.len() || dim - degrees.len() != 3 {
        return Err(CoreError::Invalid(format!("{} hypersurfaces in G(2,{n}) do not give a threefold", degrees.len())));
    }
    let s1 = SchubertClass::sigma(n, 1, 0);
    let mut c = grassmannian_tangent_chern(n);
    let mut fundamental = SchubertClass::one(n);
    for &d in degrees {
        // divide by (1 + d σ1): multiply by Σ (-d σ1)^k
        let x = s1.scale(-(d as i64));
        let mut inv = SchubertClass::one(n);
        let mut power = SchubertClass::one(n);
        for _ in 0..dim {
            power = power.mul(&x)?;
            inv = inv.add(&power)?;
        }
        c = c.mul(&inv)?;
        fundamental = fundamental.mul(&s1.scale(d as i64))?;
    }
    Ok(c.graded(3).mul(&fundamental)?.integrate())
}

/// `∫ σ1^a σ11^b` over `G(2,n)` (zero unless `a + 2b = 2(n-2)`).
pub fn schubert_monomial_integral(n: usize, a: usize, b: usize) -> i64 {
    let s1 = SchubertClass::sigma(n, 1, 0);
    let s11 = SchubertClass::sigma(n, 1, 1);
    s1.pow(a).unwrap().mul(&s11.pow(b).unwrap()).unwrap().integrate()
}
