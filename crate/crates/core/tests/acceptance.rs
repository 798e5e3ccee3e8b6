//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria that fail because a printed value cannot be reproduced are listed
//! in `KNOWN_DIVERGENCES` with the reason. They still print FAIL. The process
//! exits nonzero on any other failure, and also when a known divergence stops
//! reproducing, so the list cannot go stale silently.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use cy_algebra::parse::parse_polynomial_list;
use cy_algebra::random::{random_form, rng_from_seed};
use cy_algebra::{Ideal as AlgIdeal, MonomialOrder, Polynomial, PrimeField, Ring, DEFAULT_PRIME};
use cy_core::catalog::{build_row, rows, ConstructionRow};
use cy_core::chow::{euler_ci, euler_ci_grassmannian, normal_chern, surface_tangent_chern};
use cy_core::nodal::node_count;
use cy_core::numerics::{printed_tables, ChiColumn};
use cy_core::runner::{row_numerics, run, RunConfig, RunReport};

const KNOWN_DIVERGENCES: &[(u8, &str)] = &[
    (
        1,
        "rows 12 and 13 give 16 nodes by linkage, Chern (∫σ11 = 2) and the chart Jacobian; row 17 gives 12 by every route",
    ),
    (
        10,
        "the printed tables give dP6 deltas {+1, -1} everywhere, so only dP7 is flagged; \
         feeding in the recomputed 16 nodes for row 12 flags exactly dP6 and dP7",
    ),
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn numbered(r: &ConstructionRow) -> bool {
    r.id.parse::<u32>().is_ok()
}

fn c1_cheap_routes(rep: &RunReport) -> Outcome {
    let mut bad = Vec::new();
    let mut slow = Vec::new();
    for row in rows().iter().filter(|r| numbered(r) || r.id == "duval" || r.id == "f32") {
        let Some(s) = rep.row(row.id).and_then(|r| r.singularity.as_ref()) else {
            bad.push(format!("{}: no report", row.id));
            continue;
        };
        let (l, c) = (s.counts.linkage, s.counts.chern);
        if l != row.expected.nodes || c != row.expected.nodes {
            bad.push(format!("{}: linkage {l:?}, chern {c:?}, printed {:?}", row.id, row.expected.nodes));
        }
        if s.timings.iter().any(|(k, t)| k == "linkage" && *t > 300.0) {
            slow.push(row.id);
        }
    }
    outcome(
        bad.is_empty() && slow.is_empty(),
        if bad.is_empty() && slow.is_empty() {
            "all rows equal the printed counts within budget".to_string()
        } else {
            format!("{} ; over budget: {slow:?}", bad.join("; "))
        },
    )
}

fn c2_jacobian(rep: &RunReport) -> Outcome {
    let mut bad = Vec::new();
    let mut ran = 0;
    for row in rows().iter().filter(|r| r.jacobian_mandatory()) {
        let s = rep.row(row.id).and_then(|r| r.singularity.as_ref());
        let Some(s) = s else {
            bad.push(format!("{}: no report", row.id));
            continue;
        };
        ran += 1;
        let secs = s.timings.iter().find(|(k, _)| k == "jacobian").map_or(0.0, |t| t.1);
        let ok = s.counts.jacobian.is_some()
            && s.counts.jacobian == s.counts.linkage
            && s.dim == Some(0)
            && s.reduced == Some(true)
            && secs <= 1800.0;
        if !ok {
            bad.push(format!(
                "{}: jacobian {:?}, dim {:?}, reduced {:?}, {secs:.0}s",
                row.id, s.counts.jacobian, s.dim, s.reduced
            ));
        }
    }
    outcome(bad.is_empty() && ran > 0, if bad.is_empty() { format!("{ran} rows") } else { bad.join("; ") })
}

fn c3_agreement(rep: &RunReport) -> Outcome {
    let bad: Vec<String> = rep
        .rows
        .iter()
        .filter_map(|r| r.singularity.as_ref())
        .filter(|s| s.counts.values().len() >= 2 && !s.agreement)
        .map(|s| format!("{}: {:?}", s.row, s.counts.values()))
        .collect();
    outcome(bad.is_empty(), if bad.is_empty() { "every row".into() } else { bad.join("; ") })
}

fn c4_quintic(rep: &RunReport) -> Outcome {
    let Some(s) = rep.row("duval").and_then(|r| r.singularity.as_ref()) else {
        return outcome(false, "no report");
    };
    let on = s.quintic.as_ref().is_some_and(|q| q.all_on_base_points);
    let pass = s.counts.jacobian == Some(24) && s.reduced == Some(true) && on && s.avoids_surface_sing == Some(true);
    outcome(
        pass,
        format!(
            "{:?} points, on p=q=l=c=0: {on}, avoids the du Val point: {:?}",
            s.counts.jacobian, s.avoids_surface_sing
        ),
    )
}

fn c5_non_normal(rep: &RunReport) -> Outcome {
    let f32 = rep.row("f32").and_then(|r| r.singularity.as_ref());
    let f51 = rep.row("f51").and_then(|r| r.singularity.as_ref());
    let ok32 = f32.is_some_and(|s| {
        s.dim == Some(0) && s.reduced == Some(true) && s.counts.linkage == Some(30) && s.avoids_surface_sing == Some(true)
    });
    let n51 = f51.and_then(|s| s.counts.linkage);
    outcome(
        ok32 && n51.is_some(),
        format!(
            "F32 {:?} nodes off the non-normal line: {ok32}; F51 recorded {n51:?}",
            f32.and_then(|s| s.counts.linkage)
        ),
    )
}

fn c6_hilbert() -> Outcome {
    let field = PrimeField::new(DEFAULT_PRIME).unwrap();
    let names: Vec<String> = (0..6).map(|i| format!("x{i}")).collect();
    let r = Ring::new(names, vec![1, 1, 1, 1, 1, 3], field, MonomialOrder::Grevlex).unwrap();
    let ci = AlgIdeal::new(&r, vec![random_form(&r, 2, 7), random_form(&r, 6, 8)]).unwrap();
    let weighted = ci.hilbert_series().equals_rational(&[2, 6], &[1, 1, 1, 1, 1, 3]);
    let p3 = Ring::projective(4, field);
    let ring_ok = AlgIdeal::zero(&p3).hilbert_series().equals_rational(&[], &[1, 1, 1, 1]);
    let cubic = AlgIdeal::new(&p3, vec![random_form(&p3, 3, 9)]).unwrap();
    let hyp_ok = cubic.hilbert_series().equals_rational(&[3], &[1, 1, 1, 1]);
    outcome(
        weighted && ring_ok && hyp_ok,
        format!("(2,6) in P(1,1,1,1,1,3): {weighted}; polynomial ring: {ring_ok}; cubic surface: {hyp_ok}"),
    )
}

fn c7_euler() -> Outcome {
    let w = |n| vec![1u32; n];
    let got = [
        euler_ci(&w(5), &[5]),
        euler_ci(&w(6), &[3, 3]),
        euler_ci(&w(7), &[2, 2, 3]),
        euler_ci(&w(8), &[2, 2, 2, 2]),
        euler_ci(&[1, 1, 1, 1, 2], &[6]),
        euler_ci_grassmannian(5, &[1, 2, 2]),
        euler_ci_grassmannian(5, &[1, 1, 3]),
        euler_ci_grassmannian(6, &[1, 1, 1, 1, 2]),
    ]
    .map(|r| r.ok());
    let want = [-200, -144, -144, -128, -204, -120, -150, -116].map(Some);
    // printed Table 4 values are nodal; Tables 3 and 5 must fit the chain
    let mut bad = Vec::new();
    for e in printed_tables() {
        let row = rows().into_iter().find(|r| r.id == e.row).unwrap();
        let smooth = cy_core::numerics::smooth_euler(&row).unwrap();
        let computed = match e.chi_column {
            ChiColumn::Smooth => smooth,
            ChiColumn::Nodal => smooth + e.nodes,
            ChiColumn::SmallResolution => smooth + 2 * e.nodes,
        };
        if matches!(e.table, 3..=5) && computed != e.chi_x {
            bad.push(format!("table {} row {}: printed {}, chain {computed}", e.table, e.row, e.chi_x));
        }
    }
    outcome(
        got == want && bad.is_empty(),
        if bad.is_empty() { format!("{got:?}") } else { bad.join("; ") },
    )
}

fn c8_degrees() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for row in rows().iter().filter(|r| !r.expected.h3.is_empty()) {
        let nodes = row.expected.nodes.unwrap_or(0);
        let (_, degree, _) = row_numerics(row, nodes);
        let mut want = row.expected.h3.clone();
        want.sort_unstable();
        let got = degree.map(|d| d.options).unwrap_or_default();
        checked += 1;
        if got != want {
            bad.push(format!("{}: {got:?} vs {want:?}", row.id));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { format!("{checked} rows") } else { bad.join("; ") })
}

fn c9_sections(rep: &RunReport) -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for row in rows().iter().filter(|r| r.expected.h0.is_some()) {
        let got = rep.row(row.id).and_then(|r| r.section_count);
        checked += 1;
        if got != row.expected.h0 {
            bad.push(format!("{}: {got:?} vs {:?}", row.id, row.expected.h0));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { format!("{checked} rows") } else { bad.join("; ") })
}

fn c10_audit(rep: &RunReport) -> Outcome {
    let printed = rep.audit.iter().find(|a| a.pass.contains("printed"));
    let both = rep.audit.len() == 2;
    let flagged = printed.map(|a| a.flagged.clone()).unwrap_or_default();
    let want = vec!["dP6".to_string(), "dP7".to_string()];
    outcome(
        both && flagged == want,
        format!(
            "printed pass flags {flagged:?}, expected {want:?}; recomputed pass flags {:?}",
            rep.audit.iter().find(|a| !a.pass.contains("printed")).map(|a| a.flagged.clone())
        ),
    )
}

fn enumerate_singular(f: &Polynomial<PrimeField>, n: usize) -> usize {
    let q = 7u32;
    let parts: Vec<_> = (0..=n).map(|i| f.partial_derivative(i)).collect();
    (1..q.pow(n as u32 + 1))
        .map(|code| (0..=n).map(|i| code / q.pow(i as u32) % q).collect::<Vec<u32>>())
        .filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
        .filter(|p| f.evaluate(p) == 0 && parts.iter().all(|g| g.evaluate(p) == 0))
        .count()
}

fn c11_properties() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut bases = 0;
    for row in rows() {
        let inst = match build_row(&row, DEFAULT_PRIME, 42) {
            Ok(i) => i,
            Err(e) => {
                bad.push(format!("{}: {e}", row.id));
                continue;
            }
        };
        for i in [&inst.x, &inst.surface.ideal, &inst.ambient] {
            bases += 1;
            if !i.groebner().certify() {
                bad.push(format!("{}: uncertified basis", row.id));
            }
        }
        let s = row.kind.invariants();
        let amb = inst.chern_ambient();
        if surface_tangent_chern(&s).mul(&normal_chern(&s, &amb)) != amb.tangent_on(s.degree()) {
            bad.push(format!("{}: Whitney", row.id));
        }
    }
    // toy instances over F_7 against exhaustive enumeration
    let r = Ring::standard(&["a", "b", "c", "d"], PrimeField::new(7).unwrap());
    let cayley = parse_polynomial_list(&r, "bcd + acd + abd + abc").unwrap().remove(0);
    let x = AlgIdeal::new(&r, vec![cayley.clone()]).unwrap();
    let jac = node_count(&x, 1).map(|(_, ps)| ps.degree).ok();
    let enumerated = enumerate_singular(&cayley, 3);
    if jac != Some(4) || enumerated != 4 {
        bad.push(format!("Cayley cubic: Jacobian {jac:?}, enumeration {enumerated}"));
    }
    let m1 = AlgIdeal::new(&r, parse_polynomial_list(&r, "b, c, d").unwrap()).unwrap();
    let m2 = AlgIdeal::new(&r, parse_polynomial_list(&r, "a - b, c, d").unwrap()).unwrap();
    let sys = m1.product(&m1).unwrap().intersect(&m2.product(&m2).unwrap()).unwrap();
    let two_nodal = (0..20).find_map(|seed| {
        let f = sys.generic_member(4, &mut rng_from_seed(seed)).ok()?;
        let x = AlgIdeal::new(&r, vec![f.clone()]).ok()?;
        let (_, ps) = node_count(&x, 1).ok()?;
        (ps.degree == 2 && ps.reduced == Some(true)).then_some(f)
    });
    match two_nodal {
        Some(f) if enumerate_singular(&f, 3) == 2 => {}
        _ => bad.push("two-nodal quartic: no agreeing instance".into()),
    }
    let secs = t.elapsed().as_secs_f64();
    if secs > 300.0 {
        bad.push(format!("took {secs:.0}s"));
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{bases} bases certified, Whitney on every row, F_7 toys agree ({secs:.1}s)")
        } else {
            bad.join("; ")
        },
    )
}

fn main() -> ExitCode {
    // cargo passes harness flags such as --test-threads; nothing to parse
    let cfg = RunConfig {
        rows: rows().iter().map(|r| r.id.to_string()).collect(),
        ..RunConfig::default()
    };
    let t = Instant::now();
    let rep = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            println!("FAIL  run: {e}");
            return ExitCode::FAILURE;
        }
    };
    println!("acceptance: {} rows in {:.0}s", rep.rows.len(), t.elapsed().as_secs_f64());

    let results: Vec<(u8, &str, Outcome)> = vec![
        (1, "node counts by linkage and Chern", c1_cheap_routes(&rep)),
        (2, "Jacobian route on small ambients", c2_jacobian(&rep)),
        (3, "route agreement", c3_agreement(&rep)),
        (4, "cubic surface quintic", c4_quintic(&rep)),
        (5, "non-normal surfaces", c5_non_normal(&rep)),
        (6, "Hilbert series", c6_hilbert()),
        (7, "Euler characteristics", c7_euler()),
        (8, "contraction degrees", c8_degrees()),
        (9, "section counts", c9_sections(&rep)),
        (10, "audit flags", c10_audit(&rep)),
        (11, "property suites", c11_properties()),
    ];

    let known: BTreeMap<u8, &str> = KNOWN_DIVERGENCES.iter().copied().collect();
    let mut unexpected = Vec::new();
    for (id, name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag}  {id:>2}  {name}: {}", o.detail);
        match (o.pass, known.get(id)) {
            (false, Some(why)) => println!("          known divergence: {why}"),
            (false, None) => unexpected.push(format!("criterion {id} failed")),
            (true, Some(_)) => unexpected.push(format!("criterion {id} passes but is listed as a known divergence")),
            (true, None) => {}
        }
    }
    let passed = results.iter().filter(|r| r.2.pass).count();
    println!("acceptance: {passed}/{} passed", results.len());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected: {}", unexpected.join(", "));
        ExitCode::FAILURE
    }
}
