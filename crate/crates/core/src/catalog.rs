//! Surface models, the construction rows, and the generic complete
//! intersections through them.

use std::fmt;
use std::str::FromStr;

use cy_algebra::parse::parse_polynomial_list;
use cy_algebra::random::{random_form_with, random_graded_change, rng_from_seed, Rng};
use cy_algebra::{Field, MonomialOrder, PolyMatrix, PrimeField, Ring};
use log::debug;
use num::rational::Ratio;
use serde::{Serialize, Serializer};

use crate::chow::{AmbientChern, SurfaceInvariants};
use crate::{CoreError, Ideal, Poly, Result, RingRef};

/// Generators of the degree-7 non-normal surface `F32` in `x,z,t,u,v,w,p,q`.
pub const F32_IDEAL: &str = "p^2-wq ,wp-vq ,vp-uq ,up-tq ,w^2-uq ,vw-tq ,uw-tp ,zw-xq ,v^2-tp ,uv-tw ,zv-xp ,u^2-tv ,zu-xw ,zt-xv";

/// Generators of `F51` as printed. The term `2yp` names a variable that does
/// not exist in the coordinate list; see [`F51_STRAY_VARIABLE`].
pub const F51_IDEAL_PRINTED: &str = "p^2-wq ,wp-vq ,vp-uq ,up-tq ,w^2-uq ,vw-tq ,uw-tp ,tw-2xp+2zp-tp-2zq ,v^2-tp ,uv-tw ,tv-2xw+2zw-2xp-tp-2zq, u^2-tv ,tu-2xv+2zv-2xw-2yp-tp-2zq ,t^2-2xu+2zu-2xv-2xw-2xp-tp-2zq";

/// Reading of the stray `y`. Substituting `x` is the only choice among the
/// coordinates (and zero) that yields a degree-7 surface; every other choice
/// gives a curve of degree 15.
pub const F51_STRAY_VARIABLE: &str = "x";

pub const NON_NORMAL_VARS: [&str; 8] = ["x", "z", "t", "u", "v", "w", "p", "q"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceKind {
    DelPezzo(u8),
    QuadricP3,
    CubicDuVal,
    NonNormalF32,
    NonNormalF51,
}

impl SurfaceKind {
    pub fn k2(self) -> i64 {
        match self {
            SurfaceKind::DelPezzo(d) => d as i64,
            SurfaceKind::QuadricP3 => 8,
            SurfaceKind::CubicDuVal => 3,
            SurfaceKind::NonNormalF32 | SurfaceKind::NonNormalF51 => 7,
        }
    }

    /// `m` with `m H|_D = -K_D`.
    pub fn m(self) -> u32 {
        match self {
            SurfaceKind::QuadricP3 => 2,
            _ => 1,
        }
    }

    /// Topological Euler number, where it is a plain number: one `A1` point
    /// removes one from the smooth cubic. Unknown for the non-normal surfaces.
    pub fn chi_top(self) -> Option<i64> {
        match self {
            SurfaceKind::DelPezzo(d) => Some(12 - d as i64),
            SurfaceKind::QuadricP3 => Some(4),
            SurfaceKind::CubicDuVal => Some(8),
            SurfaceKind::NonNormalF32 | SurfaceKind::NonNormalF51 => None,
        }
    }

    /// Euler number of a smoothing, `12 - K^2`. The node oracle works with
    /// this value: nodes avoid the surface singularities, and the count is
    /// constant in a flat family of surfaces.
    pub fn chi_smoothing(self) -> i64 {
        12 - self.k2()
    }

    pub fn invariants(self) -> SurfaceInvariants {
        SurfaceInvariants {
            m: self.m() as i64,
            k2: self.k2(),
            chi_top: self.chi_smoothing(),
        }
    }

    pub fn is_singular(self) -> bool {
        matches!(self, SurfaceKind::CubicDuVal | SurfaceKind::NonNormalF32 | SurfaceKind::NonNormalF51)
    }

    pub fn label(self) -> String {
        match self {
            SurfaceKind::DelPezzo(d) => format!("dP{d}"),
            SurfaceKind::QuadricP3 => "quadric".into(),
            SurfaceKind::CubicDuVal => "duval".into(),
            SurfaceKind::NonNormalF32 => "F32".into(),
            SurfaceKind::NonNormalF51 => "F51".into(),
        }
    }

    /// Dimension of the projective space spanned by the native model; `None`
    /// for the weighted models.
    pub fn native_span(self) -> Option<usize> {
        match self {
            SurfaceKind::DelPezzo(d) if d >= 3 => Some(d as usize),
            SurfaceKind::DelPezzo(_) => None,
            SurfaceKind::QuadricP3 | SurfaceKind::CubicDuVal => Some(3),
            SurfaceKind::NonNormalF32 | SurfaceKind::NonNormalF51 => Some(7),
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for SurfaceKind {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        let l = s.to_ascii_lowercase();
        match l.as_str() {
            "quadric" | "quadricp3" => Ok(SurfaceKind::QuadricP3),
            "duval" | "cubicduval" => Ok(SurfaceKind::CubicDuVal),
            "f32" => Ok(SurfaceKind::NonNormalF32),
            "f51" => Ok(SurfaceKind::NonNormalF51),
            _ => match l.strip_prefix("dp").and_then(|d| d.parse::<u8>().ok()) {
                Some(d) if (1..=7).contains(&d) => Ok(SurfaceKind::DelPezzo(d)),
                _ => Err(CoreError::Invalid(format!("unknown surface {s:?}"))),
            },
        }
    }
}

impl Serialize for SurfaceKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

/// A surface together with its ideal in some ambient ring.
#[derive(Clone, Debug)]
pub struct SurfaceModel {
    pub kind: SurfaceKind,
    pub ideal: Ideal,
    /// Ideal of the singular locus of the surface, when it has one.
    pub singular: Option<Ideal>,
}

impl SurfaceModel {
    pub fn ring(&self) -> &RingRef {
        self.ideal.ring()
    }

    pub fn k2(&self) -> i64 {
        self.kind.k2()
    }

    pub fn m(&self) -> u32 {
        self.kind.m()
    }

    pub fn chi_top(&self) -> Option<i64> {
        self.kind.chi_top()
    }

    /// Expected embedding degree `K^2 / m^2`.
    pub fn expected_degree(&self) -> Ratio<i64> {
        Ratio::new(self.k2(), (self.m() * self.m()) as i64)
    }

    /// Degree and dimension against the expected values.
    pub fn validate(&self) -> Result<()> {
        let dim = self.ideal.projective_dimension();
        let deg = self.ideal.projective_degree();
        if dim != Some(2) || deg != self.expected_degree() {
            return Err(CoreError::Degenerate(format!(
                "{} model has dimension {dim:?} and degree {deg}",
                self.kind
            )));
        }
        Ok(())
    }
}

fn field(prime: u32) -> Result<PrimeField> {
    PrimeField::new(prime).ok_or_else(|| CoreError::Invalid(format!("{prime} is not a prime below 2^31")))
}

fn named_ring(names: &[&str], weights: &[u32], f: PrimeField) -> RingRef {
    Ring::new(names.iter().map(|s| s.to_string()).collect(), weights.to_vec(), f, MonomialOrder::Grevlex)
        .expect("valid ring")
}

/// Random linear form in the listed variables.
fn linear_in(ring: &RingRef, vars: &[usize], rng: &mut Rng) -> Poly {
    let f = ring.field();
    let mut acc = Poly::zero(ring);
    for &i in vars {
        acc = &acc + &Poly::var(ring, i).scale(&f.random_nonzero(rng));
    }
    acc
}

fn skew_from(n: usize, mut entry: impl FnMut(usize, usize) -> Poly) -> PolyMatrix<PrimeField> {
    let mut upper = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            upper[i][j] = Some(entry(i, j));
        }
    }
    let zero = upper[0][1].as_ref().map(|p: &Poly| Poly::zero(p.ring())).expect("n >= 2");
    PolyMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => upper[i][j].clone().unwrap(),
        std::cmp::Ordering::Greater => -&upper[j][i].clone().unwrap(),
        std::cmp::Ordering::Equal => zero.clone(),
    })
}

/// Orbit index of the pair `(i, j)`, `i < j`, under `(i, j) ~ (5-j, 5-i)`.
fn extra_symmetric_orbit(i: usize, j: usize) -> usize {
    let (a, b) = (5 - j, 5 - i);
    let key = (i, j).min((a, b));
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for p in 0..6 {
        for q in p + 1..6 {
            let r = (p, q).min((5 - q, 5 - p));
            if !reps.contains(&r) {
                reps.push(r);
            }
        }
    }
    reps.iter().position(|&r| r == key).unwrap()
}

/// 6×6 skew matrix whose upper entries satisfy `M[i][j] = M[5-j][5-i]`,
/// with one random linear form in `span` per orbit (nine orbits) plus a
/// per-entry random form in `extra`.
pub fn extra_symmetric_matrix(ring: &RingRef, span: &[usize], extra: &[usize], rng: &mut Rng) -> PolyMatrix<PrimeField> {
    let orbit: Vec<Poly> = (0..9).map(|_| linear_in(ring, span, rng)).collect();
    skew_from(6, |i, j| {
        let base = orbit[extra_symmetric_orbit(i, j)].clone();
        if extra.is_empty() {
            base
        } else {
            &base + &linear_in(ring, extra, rng)
        }
    })
}

/// Generic skew matrix of linear forms in the listed variables.
pub fn generic_skew_matrix(ring: &RingRef, n: usize, vars: &[usize], rng: &mut Rng) -> PolyMatrix<PrimeField> {
    skew_from(n, |_, _| linear_in(ring, vars, rng))
}

fn pfaffian_ideal(ring: &RingRef, m: &PolyMatrix<PrimeField>) -> Result<Ideal> {
    Ok(Ideal::new(ring, m.pfaffians(4)?)?)
}

/// Plücker ideal of `G(2, n)`: the 4×4 Pfaffians of the generic skew matrix
/// in variables `p_ij`.
pub fn grassmannian_ideal(n: usize, prime: u32) -> Result<Ideal> {
    if !(5..=6).contains(&n) {
        return Err(CoreError::Invalid(format!("G(2,{n}) is not supported")));
    }
    let f = field(prime)?;
    let mut names = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            names.push(format!("p{i}{j}"));
        }
    }
    let k = names.len();
    let ring = Ring::new(names, vec![1; k], f, MonomialOrder::Grevlex)?;
    let mut idx = 0;
    let mut var_of = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            var_of[i][j] = idx;
            idx += 1;
        }
    }
    let m = skew_from(n, |i, j| Poly::var(&ring, var_of[i][j]));
    pfaffian_ideal(&ring, &m)
}

/// The non-normal surface ideals, verbatim apart from the stray variable.
pub fn non_normal_ideal(kind: SurfaceKind, prime: u32) -> Result<Ideal> {
    let ring = named_ring(&NON_NORMAL_VARS, &[1; 8], field(prime)?);
    let text = match kind {
        SurfaceKind::NonNormalF32 => F32_IDEAL.to_string(),
        SurfaceKind::NonNormalF51 => F51_IDEAL_PRINTED.replace("2yp", &format!("2{F51_STRAY_VARIABLE}p")),
        _ => return Err(CoreError::Invalid(format!("{kind} is not a non-normal model"))),
    };
    Ok(Ideal::new(&ring, parse_polynomial_list(&ring, &text)?)?)
}

/// The line `t = u = v = w = p = q = 0`, along which both non-normal
/// surfaces fail to be normal.
pub fn non_normal_line(ring: &RingRef) -> Result<Ideal> {
    Ok(Ideal::new(ring, parse_polynomial_list(ring, "t,u,v,w,p,q")?)?)
}

/// Weighted models `⟨x_0, …, x_{c-1}, s⟩` with `s` a random form of degree
/// 6 (`dP1`) or 4 (`dP2`), where `c = #vars - 4`.
pub fn weighted_del_pezzo(degree: u8, weights: &[u32], prime: u32, rng: &mut Rng) -> Result<SurfaceModel> {
    let names: &[&str] = match weights {
        [1, 1, 1, 1, 2, 3] => &["x", "y", "z", "t", "u", "v"],
        [1, 1, 1, 1, 1, 2] => &["x", "y", "z", "t", "w", "u"],
        [1, 1, 1, 1, 2] => &["x", "y", "z", "t", "u"],
        [1, 1, 2, 3] => &["z", "t", "u", "v"],
        [1, 1, 1, 2] => &["z", "t", "w", "u"],
        _ => return Err(CoreError::Invalid(format!("no weighted model in P{weights:?}"))),
    };
    let s_deg = match degree {
        1 => 6,
        2 => 4,
        _ => return Err(CoreError::Invalid(format!("weighted models exist for dP1, dP2 only, not dP{degree}"))),
    };
    let ring = named_ring(names, weights, field(prime)?);
    let c = ring.nvars() - 4;
    let mut g: Vec<Poly> = (0..c).map(|i| Poly::var(&ring, i)).collect();
    g.push(random_form_with(&ring, s_deg, rng));
    let model = SurfaceModel {
        kind: SurfaceKind::DelPezzo(degree),
        ideal: Ideal::new(&ring, g)?,
        singular: None,
    };
    model.validate()?;
    Ok(model)
}

/// A surface in its native ambient (`P^d` for `dP_d`, `d ≥ 3`; `P^3` for the
/// quadric and the du Val cubic; `P^7` for the non-normal surfaces; the
/// weighted spaces `P(1,1,1,1,2,3)` and `P(1,1,1,1,1,2)` for `dP1`, `dP2`).
pub fn native_model(kind: SurfaceKind, prime: u32, rng: &mut Rng) -> Result<SurfaceModel> {
    let f = field(prime)?;
    let model = match kind {
        SurfaceKind::DelPezzo(1) => return weighted_del_pezzo(1, &[1, 1, 1, 1, 2, 3], prime, rng),
        SurfaceKind::DelPezzo(2) => return weighted_del_pezzo(2, &[1, 1, 1, 1, 1, 2], prime, rng),
        SurfaceKind::DelPezzo(3) => {
            let r = Ring::projective(4, f);
            SurfaceModel {
                kind,
                ideal: Ideal::new(&r, vec![random_form_with(&r, 3, rng)])?,
                singular: None,
            }
        }
        SurfaceKind::DelPezzo(4) => {
            let r = Ring::projective(5, f);
            SurfaceModel {
                kind,
                ideal: Ideal::new(&r, vec![random_form_with(&r, 2, rng), random_form_with(&r, 2, rng)])?,
                singular: None,
            }
        }
        SurfaceKind::DelPezzo(5) => {
            let r = Ring::projective(6, f);
            let all: Vec<usize> = (0..6).collect();
            let m = generic_skew_matrix(&r, 5, &all, rng);
            SurfaceModel {
                kind,
                ideal: pfaffian_ideal(&r, &m)?,
                singular: None,
            }
        }
        SurfaceKind::DelPezzo(6) => {
            let r = Ring::projective(7, f);
            let all: Vec<usize> = (0..7).collect();
            let m = extra_symmetric_matrix(&r, &all, &[], rng);
            SurfaceModel {
                kind,
                ideal: pfaffian_ideal(&r, &m)?,
                singular: None,
            }
        }
        SurfaceKind::DelPezzo(7) => {
            let r = Ring::projective(8, f);
            let m = del_pezzo7_matrix(&r, rng);
            SurfaceModel {
                kind,
                ideal: Ideal::new(&r, m.minors(2)?)?,
                singular: None,
            }
        }
        SurfaceKind::DelPezzo(d) => return Err(CoreError::Invalid(format!("no model for dP{d}"))),
        SurfaceKind::QuadricP3 => {
            let r = Ring::projective(4, f);
            SurfaceModel {
                kind,
                ideal: Ideal::new(&r, vec![random_form_with(&r, 2, rng)])?,
                singular: None,
            }
        }
        SurfaceKind::CubicDuVal => {
            // x0·q(x1,x2,x3) + k(x1,x2,x3): an A1 point at (1:0:0:0)
            let r = Ring::projective(4, f);
            let sub = Ring::projective(3, f);
            let shift = [1, 2, 3];
            let q = random_form_with(&sub, 2, rng).map_vars(&r, &shift);
            let k = random_form_with(&sub, 3, rng).map_vars(&r, &shift);
            let c = &Poly::var(&r, 0).try_mul(&q)? + &k;
            let point = Ideal::new(&r, (1..4).map(|i| Poly::var(&r, i)).collect())?;
            SurfaceModel {
                kind,
                ideal: Ideal::new(&r, vec![c])?,
                singular: Some(point),
            }
        }
        SurfaceKind::NonNormalF32 | SurfaceKind::NonNormalF51 => {
            let ideal = non_normal_ideal(kind, prime)?;
            let line = non_normal_line(ideal.ring())?;
            SurfaceModel {
                kind,
                ideal,
                singular: Some(line),
            }
        }
    };
    model.validate()?;
    Ok(model)
}

/// The 3×4 matrix `[[t,x,y,s],[x,l,z,r],[y,z,u,v]]` with its nine symbols
/// replaced by random linear forms; its 2×2 minors cut out `dP7`.
pub fn del_pezzo7_matrix(ring: &RingRef, rng: &mut Rng) -> PolyMatrix<PrimeField> {
    let all: Vec<usize> = (0..ring.nvars()).collect();
    let sym: Vec<Poly> = (0..9).map(|_| linear_in(ring, &all, rng)).collect();
    let [t, x, y, s, l, z, r, u, v] = [0, 1, 2, 3, 4, 5, 6, 7, 8].map(|i| sym[i].clone());
    let rows = [[t, x.clone(), y.clone(), s], [x, l, z.clone(), r], [y, z, u, v]];
    PolyMatrix::from_fn(3, 4, |i, j| rows[i][j].clone())
}

/// Seeded entry point for the native models.
pub fn del_pezzo_ideal(kind: SurfaceKind, prime: u32, seed: u64) -> Result<SurfaceModel> {
    native_model(kind, prime, &mut rng_from_seed(seed))
}

/// Places a standard-graded model in the first coordinates of `P^n` after a
/// random change of coordinates, and adds the remaining coordinates.
pub fn embed_linear(s: &SurfaceModel, n: usize, rng: &mut Rng) -> Result<SurfaceModel> {
    let src = s.ring();
    if !src.is_standard_graded() {
        return Err(CoreError::Invalid("embed_linear needs a standard-graded model".into()));
    }
    let k = src.nvars();
    if n + 1 < k {
        return Err(CoreError::Invalid(format!("cannot embed a model spanning P^{} into P^{n}", k - 1)));
    }
    let change = random_graded_change(src, rng);
    let target = Ring::projective(n + 1, *src.field());
    let first: Vec<usize> = (0..k).collect();
    let move_ideal = |i: &Ideal| -> Result<Ideal> {
        let mut g: Vec<Poly> = i
            .generators()
            .iter()
            .map(|p| Ok(p.substitute(src, &change)?.map_vars(&target, &first)))
            .collect::<Result<_>>()?;
        g.extend((k..=n).map(|j| Poly::var(&target, j)));
        Ok(Ideal::new(&target, g)?)
    };
    Ok(SurfaceModel {
        kind: s.kind,
        ideal: move_ideal(&s.ideal)?,
        singular: s.singular.as_ref().map(move_ideal).transpose()?,
    })
}

/// Random member of `I` in degree `d`.
pub fn generic_member(i: &Ideal, d: u32, rng: &mut Rng) -> Result<Poly> {
    Ok(i.generic_member(d, rng)?)
}

// -- rows ---------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Ambient {
    Projective(usize),
    Weighted(Vec<u32>),
    /// `G(2, n)` cut by a linear space `P^span` of its Plücker space.
    Grassmannian { n: usize, span: usize },
}

impl Ambient {
    pub fn hyperplanes(&self) -> usize {
        match self {
            Ambient::Grassmannian { n, span } => n * (n - 1) / 2 - 1 - span,
            _ => 0,
        }
    }

    /// Dimension of the variety in which the complete intersection is taken.
    pub fn dimension(&self) -> usize {
        match self {
            Ambient::Projective(n) => *n,
            Ambient::Weighted(w) => w.len() - 1,
            Ambient::Grassmannian { n, .. } => 2 * (n - 2) - self.hyperplanes(),
        }
    }

    /// Sum of the weights, or the index of `G(2,n)` minus the hyperplanes:
    /// the degree sum making the complete intersection Calabi–Yau.
    pub fn index(&self) -> u32 {
        match self {
            Ambient::Projective(n) => *n as u32 + 1,
            Ambient::Weighted(w) => w.iter().sum(),
            Ambient::Grassmannian { n, .. } => *n as u32 - self.hyperplanes() as u32,
        }
    }

    /// Degree of the ambient in its polarization.
    pub fn degree(&self) -> Ratio<i64> {
        match self {
            Ambient::Projective(_) => Ratio::from_integer(1),
            Ambient::Weighted(w) => Ratio::new(1, w.iter().map(|&x| x as i64).product()),
            Ambient::Grassmannian { n: 5, .. } => Ratio::from_integer(5),
            Ambient::Grassmannian { .. } => Ratio::from_integer(14),
        }
    }

    pub fn chern(&self, sigma11: Option<i64>) -> AmbientChern {
        match self {
            Ambient::Projective(n) => AmbientChern::Projective(*n),
            Ambient::Weighted(w) => AmbientChern::Weighted(w.clone()),
            Ambient::Grassmannian { n, .. } => AmbientChern::Grassmannian {
                n: *n,
                hyperplanes: self.hyperplanes(),
                sigma11: sigma11.unwrap_or(0),
            },
        }
    }

    pub fn label(&self) -> String {
        match self {
            Ambient::Projective(n) => format!("P{n}"),
            Ambient::Weighted(w) => format!(
                "P({})",
                w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            ),
            Ambient::Grassmannian { n, .. } => format!("G(2,{n})∩H^{}", self.hyperplanes()),
        }
    }
}

/// Values printed in the construction table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub nodes: Option<i64>,
    /// `χ(Y_t)` options.
    pub chi_yt: Vec<i64>,
    /// Options for the degree of the contracted threefold.
    pub h3: Vec<i64>,
    pub h0: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionRow {
    pub id: &'static str,
    pub kind: SurfaceKind,
    pub ambient: Ambient,
    /// Degrees of the non-linear hypersurfaces cutting the threefold.
    pub degrees: Vec<u32>,
    pub expected: Expected,
    /// Degree of the ambient forms computing `h^0(H)` from the residual.
    pub section_degree: u32,
    pub recipe: &'static str,
}

impl ConstructionRow {
    pub fn label(&self) -> String {
        let d = self.degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
        format!("X'_{{{d}}} ⊂ {}", self.ambient.label())
    }

    pub fn is_weighted(&self) -> bool {
        matches!(self.ambient, Ambient::Weighted(_))
    }

    pub fn is_grassmannian(&self) -> bool {
        matches!(self.ambient, Ambient::Grassmannian { .. })
    }

    /// Rows whose Jacobian route is mandatory: small projective ambients and
    /// weighted rows. `P^7` and Grassmannian rows are stretch.
    pub fn jacobian_mandatory(&self) -> bool {
        match &self.ambient {
            Ambient::Projective(n) => *n <= 6,
            Ambient::Weighted(_) => true,
            Ambient::Grassmannian { .. } => false,
        }
    }

    pub fn calabi_yau(&self) -> bool {
        self.degrees.iter().sum::<u32>() == self.ambient.index()
            && self.degrees.len() + 3 == self.ambient.dimension()
    }
}

#[allow(clippy::too_many_arguments)]
fn row(
    id: &'static str,
    kind: SurfaceKind,
    ambient: Ambient,
    degrees: &[u32],
    nodes: Option<i64>,
    chi_yt: &[i64],
    h3: &[i64],
    h0: Option<i64>,
    recipe: &'static str,
) -> ConstructionRow {
    ConstructionRow {
        id,
        kind,
        section_degree: kind.m(),
        ambient,
        degrees: degrees.to_vec(),
        expected: Expected {
            nodes,
            chi_yt: chi_yt.to_vec(),
            h3: h3.to_vec(),
            h0,
        },
        recipe,
    }
}

/// All construction rows: the twenty table rows followed by the du Val
/// quintic and the two non-normal rows.
pub fn rows() -> Vec<ConstructionRow> {
    use Ambient::*;
    use SurfaceKind::*;
    let g5 = |span| Grassmannian { n: 5, span };
    vec![
        row("1", DelPezzo(4), Projective(7), &[2, 2, 2, 2], Some(12), &[-120], &[20], Some(9), "four quadrics through dP4 spanning P4"),
        row("2", DelPezzo(5), Projective(7), &[2, 2, 2, 2], Some(18), &[-102], &[21], Some(9), "four quadrics through dP5 spanning P5"),
        row("3", DelPezzo(6), Projective(7), &[2, 2, 2, 2], Some(24), &[-84], &[22], Some(9), "four quadrics through dP6 spanning P6, first smoothing"),
        row("4", DelPezzo(6), Projective(7), &[2, 2, 2, 2], Some(24), &[-86], &[22], Some(9), "four quadrics through dP6 spanning P6, second smoothing"),
        row("5", DelPezzo(7), Projective(7), &[2, 2, 2, 2], Some(30), &[-72], &[23], Some(9), "four quadrics through the 2x2 minors model of dP7"),
        row("6", DelPezzo(4), Projective(6), &[2, 2, 3], Some(16), &[-128], &[2, 16], Some(8), "two quadrics and a cubic through dP4"),
        row("7", DelPezzo(5), Projective(6), &[2, 2, 3], Some(23), &[-108], &[17], Some(8), "two quadrics and a cubic through dP5"),
        row("8", DelPezzo(6), Projective(6), &[2, 2, 3], Some(30), &[-88], &[18], Some(8), "two quadrics and a cubic through dP6, first smoothing"),
        row("9", DelPezzo(6), Projective(6), &[2, 2, 3], Some(30), &[-90], &[18], Some(8), "two quadrics and a cubic through dP6, second smoothing"),
        row("10", DelPezzo(5), g5(8), &[2, 2], Some(15), &[-100], &[25], Some(10), "G(2,5), a hyperplane and two quadrics"),
        row("11", DelPezzo(5), g5(7), &[3], Some(20), &[-120], &[20], Some(9), "G(2,5), two hyperplanes and a cubic"),
        row("12", DelPezzo(6), Grassmannian { n: 6, span: 10 }, &[2], Some(12), &[-96], &[34], Some(12), "G(2,6), four hyperplanes and a quadric, extra-symmetric dP6, first smoothing"),
        row("13", DelPezzo(6), Grassmannian { n: 6, span: 10 }, &[2], Some(12), &[-98], &[34], Some(12), "G(2,6), four hyperplanes and a quadric, extra-symmetric dP6, second smoothing"),
        row("14", QuadricP3, Projective(4), &[5], Some(24), &[-156], &[6, 48], Some(16), "quintic through a quadric surface"),
        row("15", QuadricP3, Projective(5), &[3, 3], Some(16), &[-116], &[10, 80], Some(22), "two cubics through a quadric surface"),
        row("16", QuadricP3, Projective(6), &[2, 2, 3], Some(14), &[-120], &[13, 104], Some(27), "two quadrics and a cubic through a quadric surface"),
        row("17", QuadricP3, Projective(7), &[2, 2, 2, 2], Some(13), &[-106], &[17, 136], Some(33), "four quadrics through a quadric surface"),
        row("18", DelPezzo(1), Weighted(vec![1, 1, 1, 1, 2, 3]), &[3, 6], Some(4), &[-256], &[], None, "s = xf + yg = 0 through x = y = s = 0"),
        row("19", DelPezzo(2), Weighted(vec![1, 1, 1, 1, 1, 2]), &[3, 4], Some(8), &[-176], &[], None, "s = xf + yg = 0 through x = y = s = 0"),
        row("20", DelPezzo(2), Weighted(vec![1, 1, 1, 1, 2]), &[6], Some(20), &[-200], &[], None, "x a + s b = 0 through x = s = 0"),
        row("duval", CubicDuVal, Projective(4), &[5], Some(24), &[], &[], None, "r = cq + lp through l = c = 0, c with an A1 point"),
        row("f32", NonNormalF32, Projective(7), &[2, 2, 2, 2], Some(30), &[], &[], None, "four quadrics through the non-normal F32"),
        row("f51", NonNormalF51, Projective(7), &[2, 2, 2, 2], None, &[], &[], None, "four quadrics through the non-normal F51"),
    ]
}

pub fn find_row(id: &str) -> Result<ConstructionRow> {
    rows()
        .into_iter()
        .find(|r| r.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| CoreError::UnknownRow(id.to_string()))
}

/// Stable per-row seed mixing, so rows with the same base seed differ.
pub fn row_seed(id: &str, seed: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Pieces of the quintic `r = cq + lp`.
#[derive(Clone, Debug)]
pub struct QuinticParts {
    pub c: Poly,
    pub l: Poly,
    pub p: Poly,
    pub q: Poly,
}

#[derive(Clone, Debug)]
pub struct ThreefoldInstance {
    pub row: ConstructionRow,
    pub prime: u32,
    pub seed: u64,
    pub ring: RingRef,
    pub surface: SurfaceModel,
    /// Ideal of the ambient inside its projective space: zero except for the
    /// Grassmannian rows, where it holds the pulled-back Plücker relations.
    pub ambient: Ideal,
    /// The hypersurfaces through the surface, of the row's degrees.
    pub forms: Vec<Poly>,
    pub x: Ideal,
    /// Skew matrix of linear forms defining the Grassmannian section.
    pub skew: Option<PolyMatrix<PrimeField>>,
    /// `∫_D σ11` for Grassmannian rows.
    pub sigma11: Option<i64>,
    pub quintic: Option<QuinticParts>,
}

impl ThreefoldInstance {
    pub fn chern_ambient(&self) -> AmbientChern {
        self.row.ambient.chern(self.sigma11)
    }

    /// Codimension of the threefold in its projective space.
    pub fn codim(&self) -> usize {
        self.ring.nvars() - 4
    }
}

/// Builds the surface, the ambient and the complete intersection for a row.
pub fn build_row(row: &ConstructionRow, prime: u32, seed: u64) -> Result<ThreefoldInstance> {
    if !row.calabi_yau() {
        return Err(CoreError::Invalid(format!("row {} violates the Calabi–Yau degree condition", row.id)));
    }
    let mut rng = rng_from_seed(row_seed(row.id, seed));
    debug!("row {}: building with seed {seed}", row.id);
    let mut skew = None;
    let mut sigma11 = None;
    let mut quintic = None;
    let (surface, ambient) = match &row.ambient {
        Ambient::Projective(n) => {
            let native = native_model(row.kind, prime, &mut rng)?;
            let span = row.kind.native_span().expect("projective rows use standard models");
            let s = if span == *n { native } else { embed_linear(&native, *n, &mut rng)? };
            let ambient = Ideal::zero(s.ring());
            (s, ambient)
        }
        Ambient::Weighted(w) => {
            let s = weighted_del_pezzo(row.kind.k2() as u8, w, prime, &mut rng)?;
            let ambient = Ideal::zero(s.ring());
            (s, ambient)
        }
        Ambient::Grassmannian { n, span } => {
            let d = row.kind.k2() as usize;
            let ring = Ring::projective(span + 1, field(prime)?);
            let inner: Vec<usize> = (0..=d).collect();
            let outer: Vec<usize> = (d + 1..=*span).collect();
            let m = match n {
                5 => {
                    let all: Vec<usize> = (0..=*span).collect();
                    generic_skew_matrix(&ring, 5, &all, &mut rng)
                }
                6 => extra_symmetric_matrix(&ring, &inner, &outer, &mut rng),
                _ => return Err(CoreError::Invalid(format!("G(2,{n}) is not supported"))),
            };
            let amb = pfaffian_ideal(&ring, &m)?;
            let lin: Vec<Poly> = outer.iter().map(|&i| Poly::var(&ring, i)).collect();
            let s = SurfaceModel {
                kind: row.kind,
                ideal: amb.add_generators(&lin)?,
                singular: None,
            };
            sigma11 = Some(sigma11_degree(&s.ideal, &m, &mut rng)?);
            skew = Some(m);
            (s, amb)
        }
    };
    surface.validate()?;
    let ring = surface.ring().clone();
    let forms = if row.kind == SurfaceKind::CubicDuVal {
        let l = Poly::var(&ring, 4);
        let c = surface
            .ideal
            .generators()
            .iter()
            .find(|g| g.degree() == Some(3))
            .cloned()
            .ok_or_else(|| CoreError::Degenerate("du Val model lost its cubic".into()))?;
        let q = random_form_with(&ring, 2, &mut rng);
        let p = random_form_with(&ring, 4, &mut rng);
        let r = &c.try_mul(&q)? + &l.try_mul(&p)?;
        quintic = Some(QuinticParts { c, l, p, q });
        vec![r]
    } else if let (Ambient::Weighted(_), true) = (&row.ambient, row.degrees.len() == 2) {
        // the surface's own form s, and q = xf + yg
        let s = surface.ideal.generators().last().unwrap().clone();
        let sd = s.degree().unwrap();
        row.degrees
            .iter()
            .map(|&d| {
                if d == sd {
                    Ok(s.clone())
                } else {
                    let f = random_form_with(&ring, d - 1, &mut rng);
                    let g = random_form_with(&ring, d - 1, &mut rng);
                    Ok(&Poly::var(&ring, 0).try_mul(&f)? + &Poly::var(&ring, 1).try_mul(&g)?)
                }
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        row.degrees
            .iter()
            .map(|&d| generic_member(&surface.ideal, d, &mut rng))
            .collect::<Result<Vec<_>>>()?
    };
    for f in &forms {
        if !surface.ideal.contains(f) {
            return Err(CoreError::Degenerate(format!("row {}: a form misses the surface", row.id)));
        }
    }
    let x = ambient.add_generators(&forms)?;
    let dim = x.projective_dimension();
    let deg = x.projective_degree();
    let want = row.ambient.degree() * Ratio::from_integer(row.degrees.iter().map(|&d| d as i64).product::<i64>());
    if dim != Some(3) || deg != want {
        return Err(CoreError::Degenerate(format!(
            "row {}: threefold has dimension {dim:?} and degree {deg}, expected 3 and {want}",
            row.id
        )));
    }
    Ok(ThreefoldInstance {
        row: row.clone(),
        prime,
        seed,
        ring,
        surface,
        ambient,
        forms,
        x,
        skew,
        sigma11,
        quintic,
    })
}

/// `∫_D σ11` as the number of points of `D` whose plane lies in a random
/// hyperplane: `D` plus the entries of `M a` for a random vector `a`.
pub fn sigma11_degree(d: &Ideal, m: &PolyMatrix<PrimeField>, rng: &mut Rng) -> Result<i64> {
    let ring = d.ring();
    let f = ring.field();
    let a: Vec<_> = (0..m.cols()).map(|_| f.random_nonzero(rng)).collect();
    let mut extra = Vec::new();
    for i in 0..m.rows() {
        let mut acc = Poly::zero(ring);
        for (j, aj) in a.iter().enumerate() {
            acc = &acc + &m.get(i, j).scale(aj);
        }
        extra.push(acc);
    }
    let cut = d.add_generators(&extra)?;
    match cut.projective_dimension() {
        None => Ok(0),
        Some(0) => Ok(cut.degree()?),
        Some(k) => Err(CoreError::Degenerate(format!("σ11 locus of dimension {k}"))),
    }
}

// -- linkage ------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct LinkageDegrees {
    pub cut: String,
    pub surface: String,
    pub residual: String,
    pub linked: String,
}

/// The residual surface `S` of `D` in `X' ∩ F` and the surface `G'` linked to
/// `S` by a member of `I_S` of degree `deg F + m` not containing `D`.
#[derive(Clone, Debug)]
pub struct Linkage {
    pub f: Poly,
    pub s: Ideal,
    pub member: Poly,
    pub g: Ideal,
    pub degrees: LinkageDegrees,
}

/// Lowest-degree member of `I_D` outside `I_X'`.
pub fn cutting_form(x: &Ideal, d: &Ideal, rng: &mut Rng) -> Result<Poly> {
    let low = d.groebner().polys().filter_map(|p| p.degree()).min().unwrap_or(1);
    for deg in low..low + 6 {
        if let Ok(f) = d.generic_member(deg, rng) {
            if !x.contains(&f) {
                return Ok(f);
            }
        }
    }
    Err(CoreError::Degenerate("no member of the surface ideal cuts the threefold properly".into()))
}

/// `S = (X' + F) : h^∞` for a generic `h ∈ I_D`, then `G' = (X' + g) : F^∞`
/// for a generic `g ∈ (I_S)_{deg F + m}` outside `I_D`.
pub fn residual_surface(x: &Ideal, f: &Poly, d: &Ideal, m: u32, rng: &mut Rng) -> Result<Linkage> {
    let fdeg = f.degree().ok_or_else(|| CoreError::Invalid("zero cutting form".into()))?;
    let top = d.groebner().polys().filter_map(|p| p.degree()).max().unwrap_or(1).max(fdeg);
    let h = d.generic_member(top, rng)?;
    let cut = x.add_generators(&[f.clone()])?;
    let s = cut.saturate_by(&h)?;
    let (dc, dd, ds) = (cut.projective_degree(), d.projective_degree(), s.projective_degree());
    if cut.projective_dimension() != Some(2) || s.projective_dimension() != Some(2) || dc != dd + ds {
        return Err(CoreError::Degenerate(format!(
            "linkage degrees do not add up: deg(X'∩F) = {dc}, deg D = {dd}, deg S = {ds}"
        )));
    }
    let mdeg = fdeg + m;
    let mut member = None;
    for _ in 0..3 {
        let g = s.generic_member(mdeg, rng)?;
        if !d.contains(&g) {
            member = Some(g);
            break;
        }
    }
    let member = member.ok_or_else(|| CoreError::Degenerate(format!("every degree-{mdeg} form through S contains D")))?;
    let g = x.add_generators(&[member.clone()])?.saturate_by(f)?;
    if g.projective_dimension() != Some(2) {
        return Err(CoreError::Degenerate(format!("linked surface has dimension {:?}", g.projective_dimension())));
    }
    let degrees = LinkageDegrees {
        cut: dc.to_string(),
        surface: dd.to_string(),
        residual: ds.to_string(),
        linked: g.projective_degree().to_string(),
    };
    Ok(Linkage {
        f: f.clone(),
        s,
        member,
        g,
        degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use cy_algebra::DEFAULT_PRIME;

    #[test]
    fn extra_symmetric_orbits() {
        let mut seen = std::collections::BTreeSet::new();
        for i in 0..6 {
            for j in i + 1..6 {
                let o = extra_symmetric_orbit(i, j);
                assert_eq!(o, extra_symmetric_orbit(5 - j, 5 - i));
                seen.insert(o);
            }
        }
        assert_eq!(seen.len(), 9);
    }

    #[test]
    fn native_models_have_expected_invariants() {
        for kind in [
            SurfaceKind::DelPezzo(3),
            SurfaceKind::DelPezzo(4),
            SurfaceKind::DelPezzo(5),
            SurfaceKind::DelPezzo(6),
            SurfaceKind::DelPezzo(7),
            SurfaceKind::QuadricP3,
            SurfaceKind::CubicDuVal,
        ] {
            let s = del_pezzo_ideal(kind, DEFAULT_PRIME, 11).unwrap();
            assert_eq!(s.ideal.projective_dimension(), Some(2), "{kind}");
            assert_eq!(s.ideal.projective_degree(), s.expected_degree(), "{kind}");
            if kind.m() == 1 {
                // anticanonical sections: h^0(-K) = K^2 + 1
                assert_eq!(s.ideal.hilbert_function(1), kind.k2() + 1, "{kind}");
            }
        }
    }

    #[test]
    fn del_pezzo7_is_cut_by_fourteen_quadrics() {
        let s = del_pezzo_ideal(SurfaceKind::DelPezzo(7), DEFAULT_PRIME, 3).unwrap();
        assert_eq!(s.ideal.generators().len(), 18);
        // 36 quadrics in P^7, 22 independent ones modulo the ideal
        assert_eq!(36 - s.ideal.hilbert_function(2), 14);
        assert_eq!(s.ideal.hilbert_function(2), 22);
    }

    #[test]
    fn non_normal_models() {
        for kind in [SurfaceKind::NonNormalF32, SurfaceKind::NonNormalF51] {
            let s = del_pezzo_ideal(kind, DEFAULT_PRIME, 0).unwrap();
            assert_eq!(s.ideal.generators().len(), 14);
            assert_eq!(s.ideal.degree().unwrap(), 7);
            let line = s.singular.as_ref().unwrap();
            assert!(line.contains_ideal(&s.ideal), "{kind} contains the line");
        }
    }

    #[test]
    fn stray_variable_alternatives_give_curves() {
        let ring = named_ring(&NON_NORMAL_VARS, &[1; 8], PrimeField::new(DEFAULT_PRIME).unwrap());
        for sub in ["0", "z", "t"] {
            let text = F51_IDEAL_PRINTED.replace("2yp", &format!("2({sub})p"));
            let i = Ideal::new(&ring, parse_polynomial_list(&ring, &text).unwrap()).unwrap();
            assert_eq!(i.projective_dimension(), Some(1), "y -> {sub}");
        }
    }

    #[test]
    fn grassmannians() {
        let g5 = grassmannian_ideal(5, DEFAULT_PRIME).unwrap();
        assert_eq!(g5.generators().len(), 5);
        assert_eq!(g5.degree().unwrap(), 5);
        assert_eq!(g5.projective_dimension(), Some(6));
        let g6 = grassmannian_ideal(6, DEFAULT_PRIME).unwrap();
        assert_eq!(g6.generators().len(), 15);
        assert_eq!(g6.degree().unwrap(), 14);
        assert_eq!(g6.projective_dimension(), Some(8));
        assert!(grassmannian_ideal(7, DEFAULT_PRIME).is_err());
    }

    #[test]
    fn embedding_adds_linear_forms() {
        let mut rng = rng_from_seed(5);
        let s = native_model(SurfaceKind::DelPezzo(4), DEFAULT_PRIME, &mut rng).unwrap();
        let e = embed_linear(&s, 7, &mut rng).unwrap();
        let lin = e.ideal.generators().iter().filter(|g| g.degree() == Some(1)).count();
        let quad = e.ideal.generators().iter().filter(|g| g.degree() == Some(2)).count();
        assert_eq!((lin, quad), (3, 2));
        assert_eq!(e.ideal.degree().unwrap(), 4);
        let same = embed_linear(&s, 4, &mut rng).unwrap();
        assert_eq!(same.ideal.degree().unwrap(), 4);
    }

    #[test]
    fn rows_satisfy_calabi_yau_condition() {
        let all = rows();
        assert_eq!(all.len(), 23);
        for r in &all {
            assert!(r.calabi_yau(), "row {}", r.id);
        }
        assert!(find_row("f32").is_ok());
        assert!(matches!(find_row("99"), Err(CoreError::UnknownRow(_))));
    }

    #[test]
    fn surface_kind_round_trip() {
        for k in ["dP1", "dp7", "quadric", "duval", "F32", "f51"] {
            let kind: SurfaceKind = k.parse().unwrap();
            assert_eq!(kind.label().to_ascii_lowercase(), k.to_ascii_lowercase());
        }
        assert!("dp9".parse::<SurfaceKind>().is_err());
    }

    #[test]
    fn build_is_deterministic() {
        let r = find_row("6").unwrap();
        let a = build_row(&r, DEFAULT_PRIME, 42).unwrap();
        let b = build_row(&r, DEFAULT_PRIME, 42).unwrap();
        assert_eq!(a.forms, b.forms);
        assert_eq!(a.surface.ideal.generators(), b.surface.ideal.generators());
    }

    #[test]
    fn weighted_row_uses_the_surface_form() {
        let r = find_row("18").unwrap();
        let t = build_row(&r, DEFAULT_PRIME, 1).unwrap();
        assert_eq!(t.forms.len(), 2);
        assert_eq!(t.forms[1], *t.surface.ideal.generators().last().unwrap());
        assert_eq!(t.forms[0].degree(), Some(3));
    }
}
