//! Singularity verification: base-locus hypothesis, Jacobian singular loci,
//! node counts by three routes, location checks and the weighted covers.

use std::time::Instant;

use cy_algebra::monomial::monomials_of_degree;
use cy_algebra::random::{rng_from_seed, Rng};
use cy_algebra::{Field, MonomialOrder, PolyMatrix, PrimeField, Ring};
use log::{debug, info};
use serde::Serialize;

use crate::catalog::{cutting_form, residual_surface, LinkageDegrees, ThreefoldInstance};
use crate::chow::{meets_ambient_singularities, predicted_nodes, ChernLedger};
use crate::{CoreError, Ideal, Poly, Result, RingRef};

/// What the artifact accepts as evidence that the singular points are
/// ordinary double points.
pub const ODP_CERTIFICATE: &str =
    "zero-dimensional reduced singular locus and equal node counts from every route that ran; Hessian ranks are not evaluated";

/// `true` iff the degree-`d` forms of `I_D`, together with the ambient
/// ideal, cut out `D` scheme-theoretically (after saturation).
pub fn base_locus_check(d: &Ideal, deg: u32, ambient: Option<&Ideal>) -> Result<bool> {
    let ring = d.ring();
    let mut gens = Vec::new();
    for g in d.groebner().polys() {
        let gd = g.degree().ok_or(CoreError::Invalid("zero generator".into()))?;
        if gd > deg {
            continue;
        }
        for m in monomials_of_degree(ring.weights(), deg - gd) {
            gens.push(g.mul_term(&m, &ring.field().one()));
        }
    }
    if let Some(a) = ambient {
        gens.extend(a.generators().iter().cloned());
    }
    let sys = Ideal::new(ring, gens)?.saturate_irrelevant()?;
    let target = d.saturate_irrelevant()?;
    Ok(sys.same_ideal(&target))
}

/// Saturated singular locus of a threefold of codimension `c`: the ideal
/// plus the `c × c` minors of the Jacobian of all its generators.
pub fn singular_locus(x: &Ideal, c: usize) -> Result<Ideal> {
    let ring = x.ring();
    let gens = x.generators().to_vec();
    if gens.len() < c {
        return Err(CoreError::Invalid(format!("{} generators for codimension {c}", gens.len())));
    }
    let j = PolyMatrix::jacobian(ring, &gens);
    let mut all = j.minors(c)?;
    all.retain(|p| !p.is_zero());
    all.extend(gens);
    debug!("singular locus: {} generators", all.len());
    Ok(Ideal::new(ring, all)?.saturate_irrelevant()?)
}

/// Zero-dimensional singular locus summary.
#[derive(Clone, Debug, Serialize)]
pub struct PointSet {
    /// Projective dimension; `None` when empty.
    pub dim: Option<usize>,
    pub degree: i64,
    pub reduced: Option<bool>,
}

impl PointSet {
    pub fn of(i: &Ideal) -> Result<PointSet> {
        let dim = i.projective_dimension();
        match dim {
            None => Ok(PointSet {
                dim,
                degree: 0,
                reduced: Some(true),
            }),
            Some(0) => Ok(PointSet {
                dim,
                degree: i.degree()?,
                reduced: Some(i.is_radical_zero_dim()?),
            }),
            Some(_) => Ok(PointSet {
                dim,
                degree: i.projective_degree().to_integer(),
                reduced: None,
            }),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.dim, None | Some(0))
    }

    pub fn is_nodal_candidate(&self) -> bool {
        self.is_finite() && self.reduced == Some(true)
    }
}

/// Jacobian route: degree of the singular locus.
pub fn node_count(x: &Ideal, c: usize) -> Result<(Ideal, PointSet)> {
    let sing = singular_locus(x, c)?;
    let ps = PointSet::of(&sing)?;
    if !ps.is_finite() {
        return Err(CoreError::Degenerate(format!("singular locus of dimension {:?}", ps.dim)));
    }
    Ok((sing, ps))
}

/// Linkage route: `deg(D ∩ G')`, finite and reduced when the intersection is
/// transversal.
pub fn node_count_linkage(d: &Ideal, g: &Ideal) -> Result<(Ideal, PointSet)> {
    let meet = d.sum(g)?;
    let ps = PointSet::of(&meet)?;
    if !ps.is_finite() {
        return Err(CoreError::Degenerate(format!("D ∩ G' is not finite (dimension {:?})", ps.dim)));
    }
    Ok((meet, ps))
}

/// `(on_surface, avoids_surface_sing)` for a finite scheme `sing`.
pub fn location_checks(sing: &Ideal, d: &Ideal, sing_d: Option<&Ideal>) -> Result<(bool, bool)> {
    let total = sing.projective_degree();
    let on = sing.sum(d)?.projective_degree() == total;
    let avoids = match sing_d {
        None => true,
        Some(s) => sing.sum(s)?.projective_dimension().is_none(),
    };
    Ok((on, avoids))
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct RouteCounts {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jacobian: Option<i64>,
    pub linkage: Option<i64>,
    pub chern: Option<i64>,
}

impl RouteCounts {
    pub fn values(&self) -> Vec<i64> {
        [self.jacobian, self.linkage, self.chern].into_iter().flatten().collect()
    }

    /// All computed routes equal; vacuous with fewer than two.
    pub fn agree(&self) -> bool {
        let v = self.values();
        v.windows(2).all(|w| w[0] == w[1])
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub cover_degree: u32,
    pub upstairs: PointSet,
    pub downstairs: PointSet,
    /// `upstairs = cover_degree · downstairs`; reported, not asserted.
    pub proportional: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuinticCheck {
    /// Degree of `p = q = l = c = 0`.
    pub base_points: i64,
    /// Every singular point satisfies `p = q = l = c = 0`.
    pub all_on_base_points: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularityReport {
    pub row: String,
    pub seed: u64,
    pub prime: u32,
    pub counts: RouteCounts,
    pub dim: Option<usize>,
    pub reduced: Option<bool>,
    pub on_surface: Option<bool>,
    pub avoids_surface_sing: Option<bool>,
    pub agreement: bool,
    pub expected: Option<i64>,
    #[serde(rename = "match")]
    pub matches: bool,
    pub base_locus: bool,
    pub meets_ambient_singularities: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linkage: Option<LinkageDegrees>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linked_hilbert: Option<[i64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quintic: Option<QuinticCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma11: Option<i64>,
    pub chern: Option<ChernLedger>,
    pub certificate: &'static str,
    pub notes: Vec<String>,
    /// Wall-clock seconds per route; excluded from determinism checks.
    #[serde(skip)]
    pub timings: Vec<(String, f64)>,
}

impl SingularityReport {
    /// The nodal certificate: finite, reduced, all routes equal.
    pub fn certified(&self) -> bool {
        self.agreement && self.reduced == Some(true) && matches!(self.dim, None | Some(0))
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Also run the Jacobian route where it is only a stretch check.
    pub full_jacobian: bool,
    /// Skip the Jacobian route entirely.
    pub skip_jacobian: bool,
}

/// Runs every applicable route on a built instance.
pub fn verify(inst: &ThreefoldInstance, opts: VerifyOptions) -> Result<(SingularityReport, LinkedData)> {
    let row = &inst.row;
    let mut notes = Vec::new();
    let mut timings = Vec::new();
    let mut counts = RouteCounts::default();
    let d = &inst.surface.ideal;
    let sing_d = inst.surface.singular.as_ref();
    let mut rng = rng_from_seed(crate::catalog::row_seed(row.id, inst.seed) ^ 0x5eed);

    let t = Instant::now();
    let max_deg = *row.degrees.iter().max().unwrap();
    let amb = (!inst.ambient.generators().is_empty()).then_some(&inst.ambient);
    let base_locus = base_locus_check(d, max_deg, amb)?;
    timings.push(("base_locus".into(), t.elapsed().as_secs_f64()));
    if !base_locus {
        notes.push(format!("surface is not the base locus of its degree-{max_deg} forms"));
    }

    let meets = match &row.ambient {
        crate::catalog::Ambient::Weighted(w) => meets_ambient_singularities(w, &row.degrees),
        _ => false,
    };

    // Chern route
    let ledger = predicted_nodes(&row.kind.invariants(), &inst.chern_ambient(), &row.degrees)?;
    counts.chern = Some(ledger.nodes);
    if row.kind.is_singular() {
        notes.push(format!(
            "Chern route uses the smoothing invariants K^2 = {}, χ = {}",
            row.kind.k2(),
            row.kind.chi_smoothing()
        ));
    }

    // linkage route
    let t = Instant::now();
    let f = cutting_form(&inst.x, d, &mut rng)?;
    let link = residual_surface(&inst.x, &f, d, row.kind.m(), &mut rng)?;
    let (meet, link_points) = node_count_linkage(d, &link.g)?;
    counts.linkage = Some(link_points.degree);
    timings.push(("linkage".into(), t.elapsed().as_secs_f64()));
    info!("row {}: linkage route {} ({:.2}s)", row.id, link_points.degree, t.elapsed().as_secs_f64());
    let linked_hilbert = [0, 1, 2].map(|k| link.g.hilbert_function(k));

    // Jacobian route
    let mut sing_ideal = None;
    let mut jac_points = None;
    let mut cover = None;
    let run_jacobian = !opts.skip_jacobian && (row.jacobian_mandatory() || opts.full_jacobian);
    if run_jacobian {
        let t = Instant::now();
        if row.is_weighted() {
            let (c, downstairs) = weighted_pipeline(inst)?;
            counts.jacobian = Some(c.downstairs.degree);
            jac_points = Some(c.downstairs.clone());
            sing_ideal = Some(downstairs);
            cover = Some(c);
        } else if row.is_grassmannian() {
            let ps = grassmannian_chart_singular_points(inst)?;
            counts.jacobian = Some(ps.degree);
            jac_points = Some(ps);
            notes.push("Jacobian route computed in the affine chart p01 = 1 of the Grassmannian".into());
        } else {
            let (s, ps) = node_count(&inst.x, inst.codim())?;
            counts.jacobian = Some(ps.degree);
            sing_ideal = Some(s);
            jac_points = Some(ps);
        }
        timings.push(("jacobian".into(), t.elapsed().as_secs_f64()));
        info!("row {}: Jacobian route {:?} ({:.2}s)", row.id, counts.jacobian, t.elapsed().as_secs_f64());
    } else {
        notes.push("Jacobian route skipped (stretch check)".into());
    }

    // location checks on the best available description of the nodes
    let nodes = sing_ideal.as_ref().unwrap_or(&meet);
    let (on_surface, avoids) = location_checks(nodes, d, sing_d)?;
    let quintic = match &inst.quintic {
        Some(q) => {
            let base = Ideal::new(&inst.ring, vec![q.p.clone(), q.q.clone(), q.l.clone(), q.c.clone()])?;
            let base_points = base.degree()?;
            let all_on = nodes.sum(&base)?.projective_degree() == nodes.projective_degree();
            Some(QuinticCheck {
                base_points,
                all_on_base_points: all_on,
            })
        }
        None => None,
    };

    let points = jac_points.as_ref().unwrap_or(&link_points);
    let reduced = match (jac_points.as_ref(), link_points.reduced) {
        (Some(j), Some(l)) => j.reduced.map(|r| r && l),
        (None, l) => l,
        (Some(j), None) => j.reduced,
    };
    let agreement = counts.agree();
    let expected = row.expected.nodes;
    let matches = expected.is_some_and(|e| counts.values().iter().all(|&v| v == e));
    let report = SingularityReport {
        row: row.id.to_string(),
        seed: inst.seed,
        prime: inst.prime,
        counts,
        dim: points.dim,
        reduced,
        on_surface: Some(on_surface),
        avoids_surface_sing: Some(avoids),
        agreement,
        expected,
        matches,
        base_locus,
        meets_ambient_singularities: meets,
        linkage: Some(link.degrees.clone()),
        linked_hilbert: Some(linked_hilbert),
        cover,
        quintic,
        sigma11: inst.sigma11,
        chern: Some(ledger),
        certificate: ODP_CERTIFICATE,
        notes,
        timings,
    };
    Ok((report, LinkedData { g: link.g, meet }))
}

/// Ideals produced by the linkage route, kept for section counts and dumps.
#[derive(Clone, Debug)]
pub struct LinkedData {
    pub g: Ideal,
    pub meet: Ideal,
}

/// Standard-graded cover of a weighted ring: a variable of weight `w`
/// becomes `y^w` for a fresh weight-one `y`.
pub fn cover_ring(ring: &RingRef) -> Result<(RingRef, Vec<Poly>, u32)> {
    let names: Vec<String> = ring
        .names()
        .iter()
        .zip(ring.weights())
        .map(|(n, &w)| if w == 1 { n.clone() } else { format!("{n}1") })
        .collect();
    let n = names.len();
    let up = Ring::new(names, vec![1; n], *ring.field(), MonomialOrder::Grevlex)?;
    let images = (0..n)
        .map(|i| Poly::var(&up, i).pow(ring.weights()[i]))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let deg = ring.weights().iter().product();
    Ok((up, images, deg))
}

/// Singular points upstairs on the cover and downstairs in the weighted
/// space. Returns the report and the downstairs singular-locus ideal.
pub fn weighted_pipeline(inst: &ThreefoldInstance) -> Result<(CoverReport, Ideal)> {
    let c = inst.forms.len();
    let (up, images, deg) = cover_ring(&inst.ring)?;
    let lifted = inst
        .forms
        .iter()
        .map(|f| f.substitute(&up, &images))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let x_up = Ideal::new(&up, lifted)?;
    let upstairs = PointSet::of(&singular_locus(&x_up, c)?)?;
    let down = singular_locus(&inst.x, c)?;
    let downstairs = PointSet::of(&down)?;
    let proportional = upstairs.degree == deg as i64 * downstairs.degree;
    Ok((
        CoverReport {
            cover_degree: deg,
            upstairs,
            downstairs,
            proportional,
        },
        down,
    ))
}

// -- Grassmannian chart ---------------------------------------------------------

/// Row reduction over the field; returns the rank and the reduced rows.
fn rref(f: &PrimeField, mut rows: Vec<Vec<u32>>) -> (usize, Vec<Vec<u32>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][col]);
        for v in rows[r].iter_mut() {
            *v = f.mul(v, &inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let k = rows[i][col];
                for j in 0..ncols {
                    let t = f.mul(&k, &rows[r][j]);
                    rows[i][j] = f.sub(&rows[i][j], &t);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (r, rows, pivots)
}

/// Left kernel and a left inverse of the `N × k` matrix `p` (`N > k`, full
/// column rank): rows `κ` with `κ p = 0`, and `A` with `A p = I`.
fn left_kernel_and_inverse(f: &PrimeField, p: &[Vec<u32>]) -> Result<(Vec<Vec<u32>>, Vec<Vec<u32>>)> {
    let n = p.len();
    let k = p[0].len();
    // reduce [p^T | I_k]: solutions of A p = I are rows of the right block
    // once the left block is the identity
    let mut aug: Vec<Vec<u32>> = (0..k)
        .map(|i| {
            let mut row: Vec<u32> = (0..n).map(|j| p[j][i]).collect();
            row.extend((0..k).map(|j| u32::from(i == j)));
            row
        })
        .collect();
    let (rank, red, pivots) = rref(f, std::mem::take(&mut aug));
    if rank < k || pivots.iter().any(|&c| c >= n) {
        return Err(CoreError::Degenerate("linear section has dependent coordinates".into()));
    }
    // kernel of p^T: free columns of the reduced left block
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut kernel = Vec::new();
    for &fc in &free {
        let mut v = vec![0u32; n];
        v[fc] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(&red[r][fc]);
        }
        kernel.push(v);
    }
    // A p = I: A = B (p^T reduced) with the pivot columns; pick A supported on
    // pivot coordinates: A[:, pivots] = (p[pivots, :])^{-1}
    let sub: Vec<Vec<u32>> = pivots.iter().map(|&r| p[r].clone()).collect();
    let mut aug2: Vec<Vec<u32>> = (0..k)
        .map(|i| {
            let mut row = sub[i].clone();
            row.extend((0..k).map(|j| u32::from(i == j)));
            row
        })
        .collect();
    let (r2, red2, _) = rref(f, std::mem::take(&mut aug2));
    if r2 < k {
        return Err(CoreError::Degenerate("singular coordinate block".into()));
    }
    // red2 right block = sub^{-1}; A p = I needs A[:,pivots] = sub^{-1}
    let mut a = vec![vec![0u32; n]; k];
    for i in 0..k {
        for (jj, &pc) in pivots.iter().enumerate() {
            a[i][pc] = red2[i][k + jj];
        }
    }
    Ok((kernel, a))
}

/// Singular points of a Grassmannian section, computed in the affine chart
/// where the plane is the row space of `[[1, 0, a], [0, 1, b]]`. Points with
/// `p01 = 0` are not seen; with random sections there are none among the
/// finitely many nodes.
pub fn grassmannian_chart_singular_points(inst: &ThreefoldInstance) -> Result<PointSet> {
    let m = inst.skew.as_ref().ok_or_else(|| CoreError::Invalid("not a Grassmannian row".into()))?;
    let n = m.rows();
    let ring = &inst.ring;
    let f = *ring.field();
    let k = ring.nvars();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    // coefficient matrix of the linear entries
    let coeff: Vec<Vec<u32>> = pairs
        .iter()
        .map(|&(i, j)| {
            (0..k)
                .map(|v| {
                    let mut e = vec![0u32; k];
                    e[v] = 1;
                    m.get(i, j).evaluate(&e)
                })
                .collect()
        })
        .collect();
    let (kernel, a) = left_kernel_and_inverse(&f, &coeff)?;
    let nb = 2 * (n - 2);
    let names: Vec<String> = (0..nb).map(|i| format!("b{i}")).collect();
    let chart = Ring::new(names, vec![1; nb], f, MonomialOrder::Grevlex)?;
    // rows of the 2 × n matrix
    let one = Poly::one(&chart);
    let zero = Poly::zero(&chart);
    let col = |c: usize| -> (Poly, Poly) {
        match c {
            0 => (one.clone(), zero.clone()),
            1 => (zero.clone(), one.clone()),
            _ => (Poly::var(&chart, c - 2), Poly::var(&chart, n - 2 + c - 2)),
        }
    };
    let plucker: Vec<Poly> = pairs
        .iter()
        .map(|&(i, j)| {
            let (a0, a1) = col(i);
            let (b0, b1) = col(j);
            a0.try_mul(&b1)?.try_sub(&a1.try_mul(&b0)?)
        })
        .collect::<std::result::Result<_, _>>()?;
    let combo = |w: &[u32]| -> Poly {
        let mut acc = Poly::zero(&chart);
        for (c, p) in w.iter().zip(&plucker) {
            if *c != 0 {
                acc = &acc + &p.scale(c);
            }
        }
        acc
    };
    let mut eqs: Vec<Poly> = kernel.iter().map(|w| combo(w)).collect();
    let y: Vec<Poly> = a.iter().map(|w| combo(w)).collect();
    for form in &inst.forms {
        eqs.push(form.substitute(&chart, &y)?);
    }
    let c = nb - 3;
    if eqs.len() != c {
        return Err(CoreError::Invalid(format!("{} chart equations for codimension {c}", eqs.len())));
    }
    let j = PolyMatrix::jacobian(&chart, &eqs);
    let mut all = j.minors(c)?;
    all.retain(|p| !p.is_zero());
    all.extend(eqs);
    let sing = Ideal::new(&chart, all)?;
    match sing.krull_dimension() {
        None => Ok(PointSet {
            dim: None,
            degree: 0,
            reduced: Some(true),
        }),
        Some(0) => Ok(PointSet {
            dim: Some(0),
            degree: sing.zero_dim_length()? as i64,
            reduced: Some(sing.is_radical_zero_dim()?),
        }),
        Some(d) => Err(CoreError::Degenerate(format!("chart singular locus of dimension {d}"))),
    }
}

/// Random change of coordinates applied to an ideal, for invariance checks.
pub fn random_coordinate_change(i: &Ideal, rng: &mut Rng) -> Result<Ideal> {
    let images = cy_algebra::random::random_graded_change(i.ring(), rng);
    Ok(i.substitute(&images)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cy_algebra::parse::parse_polynomial_list;
    use cy_algebra::DEFAULT_PRIME;

    fn ideal(names: &[&str], s: &str) -> Ideal {
        let r = Ring::standard(names, PrimeField::new(DEFAULT_PRIME).unwrap());
        Ideal::new(&r, parse_polynomial_list(&r, s).unwrap()).unwrap()
    }

    #[test]
    fn smooth_quadric_has_no_singular_points() {
        let q = ideal(&["x", "y", "z", "w"], "xy - zw + x^2 + w^2");
        let s = singular_locus(&q, 1).unwrap();
        assert!(s.is_unit() || s.projective_dimension().is_none());
    }

    #[test]
    fn cone_has_one_node() {
        let q = ideal(&["x", "y", "z", "w"], "xy - z^2");
        let (_, ps) = node_count(&q, 1).unwrap();
        assert_eq!((ps.dim, ps.degree, ps.reduced), (Some(0), 1, Some(true)));
    }

    #[test]
    fn base_locus_examples() {
        let p = ideal(&["x", "y", "z"], "x, y");
        assert!(base_locus_check(&p, 1, None).unwrap());
        let line = ideal(&["x", "y", "z"], "x^2, xy").saturate_irrelevant().unwrap();
        assert!(base_locus_check(&line, 2, None).unwrap());
        // a conic is not cut out by its (absent) linear forms
        let conic = ideal(&["x", "y", "z"], "xy - z^2");
        assert!(!base_locus_check(&conic, 1, None).is_ok_and(|b| b));
    }

    #[test]
    fn location_detects_points_on_and_off() {
        let pts = ideal(&["x", "y", "z"], "x, y");
        let line = ideal(&["x", "y", "z"], "x");
        let other = ideal(&["x", "y", "z"], "y, z");
        assert_eq!(location_checks(&pts, &line, Some(&other)).unwrap(), (true, true));
        let same = ideal(&["x", "y", "z"], "x, y");
        assert_eq!(location_checks(&pts, &line, Some(&same)).unwrap(), (true, false));
    }

    #[test]
    fn route_agreement() {
        let mut c = RouteCounts {
            jacobian: None,
            linkage: Some(12),
            chern: Some(12),
        };
        assert!(c.agree());
        c.jacobian = Some(13);
        assert!(!c.agree());
        assert!(RouteCounts::default().agree());
    }

    #[test]
    fn left_inverse_and_kernel() {
        let f = PrimeField::new(101).unwrap();
        let p = vec![vec![1, 2], vec![3, 4], vec![5, 6], vec![0, 1]];
        let (ker, a) = left_kernel_and_inverse(&f, &p).unwrap();
        assert_eq!(ker.len(), 2);
        for w in &ker {
            for c in 0..2 {
                let s = (0..4).fold(0u32, |acc, r| f.add(&acc, &f.mul(&w[r], &p[r][c])));
                assert_eq!(s, 0);
            }
        }
        for i in 0..2 {
            for c in 0..2 {
                let s = (0..4).fold(0u32, |acc, r| f.add(&acc, &f.mul(&a[i][r], &p[r][c])));
                assert_eq!(s, u32::from(i == c));
            }
        }
    }

    #[test]
    fn cover_ring_substitution() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let w = Ring::new(
            ["x", "u", "v"].iter().map(|s| s.to_string()).collect(),
            vec![1, 2, 3],
            f,
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let (up, images, deg) = cover_ring(&w).unwrap();
        assert_eq!(deg, 6);
        assert_eq!(up.names(), &["x", "u1", "v1"]);
        let s = parse_polynomial_list(&w, "x^6 + u^3 + v^2").unwrap().remove(0);
        let s1 = s.substitute(&up, &images).unwrap();
        assert!(s1.is_homogeneous());
        assert_eq!(s1.degree(), Some(6));
    }
}
