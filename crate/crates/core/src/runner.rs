//! Batch runs over construction rows, report assembly and emission.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use cy_algebra::parse::format_ideal_file;
use cy_algebra::DEFAULT_PRIME;
use log::{info, warn};
use serde::Serialize;

use crate::catalog::{build_row, find_row, rows, ConstructionRow, Expected, ThreefoldInstance};
use crate::chow::predicted_nodes;
use crate::nodal::{verify, LinkedData, SingularityReport, VerifyOptions};
use crate::numerics::{
    adopted_deltas, audit_tables, chi_chain, contraction_degree, hodge_from_euler, printed_tables, section_count,
    smooth_euler, surface_euler, table5_degree, threefold_degree, AuditReport, ChiColumn, DegreeRecord,
    InvariantChain,
};
use crate::{CoreError, Result};

pub const SCHEMA_VERSION: &str = "cynodal-report/1";

/// Environment variable bounding the worker pool.
pub const WORKERS_ENV: &str = "CYNODAL_WORKERS";

pub const MAX_RETRIES: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Format {
    Json,
    Tsv,
}

impl std::str::FromStr for Format {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            _ => Err(CoreError::Invalid(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub rows: Vec<String>,
    pub prime: u32,
    pub seed: u64,
    pub full_jacobian: bool,
    pub skip_jacobian: bool,
    /// Attempts per row, at most [`MAX_RETRIES`].
    pub retries: u32,
    /// Directory for ideal dumps of failed rows.
    pub dump_dir: Option<PathBuf>,
    pub workers: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            rows: Vec::new(),
            prime: DEFAULT_PRIME,
            seed: 42,
            full_jacobian: false,
            skip_jacobian: false,
            retries: MAX_RETRIES,
            dump_dir: None,
            workers: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if cy_algebra::PrimeField::new(self.prime).is_none() {
            return Err(CoreError::Invalid(format!("{} is not a prime below 2^31", self.prime)));
        }
        if self.retries == 0 || self.retries > MAX_RETRIES {
            return Err(CoreError::Invalid(format!("retries must lie in 1..={MAX_RETRIES}")));
        }
        for r in &self.rows {
            find_row(r)?;
        }
        Ok(())
    }

    fn worker_count(&self) -> usize {
        self.workers
            .or_else(|| std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse().ok()))
            .or_else(|| std::thread::available_parallelism().ok().map(|n| n.get()))
            .unwrap_or(1)
            .max(1)
    }
}

/// Match flags against the printed values; `None` where nothing is printed.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RowMatches {
    pub nodes: Option<bool>,
    pub chi_yt: Option<bool>,
    pub h3: Option<bool>,
    pub h0: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub row: String,
    pub label: String,
    pub surface: String,
    pub status: String,
    pub attempts: u32,
    pub seed: u64,
    pub singularity: Option<SingularityReport>,
    pub chain: Option<InvariantChain>,
    pub degree: Option<DegreeRecord>,
    pub section_count: Option<i64>,
    pub hodge: Vec<(i64, i64)>,
    pub expected: Expected,
    pub matches: RowMatches,
    pub errors: Vec<String>,
    pub dumped: Vec<String>,
    #[serde(skip)]
    pub seconds: f64,
}

impl RowReport {
    /// Best available node count: the agreed route value, else Chern.
    pub fn nodes(&self) -> Option<i64> {
        let s = self.singularity.as_ref()?;
        s.counts.linkage.or(s.counts.jacobian).or(s.counts.chern)
    }

    pub fn routes_agree(&self) -> bool {
        self.singularity.as_ref().is_none_or(|s| s.agreement)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub prime: u32,
    pub seed: u64,
    pub full_jacobian: bool,
    pub rows: Vec<RowReport>,
    pub audit: Vec<AuditReport>,
}

impl RunReport {
    /// Nonzero exit status for the CLI: some row's routes disagree.
    pub fn has_route_disagreement(&self) -> bool {
        self.rows.iter().any(|r| !r.routes_agree())
    }

    pub fn row(&self, id: &str) -> Option<&RowReport> {
        self.rows.iter().find(|r| r.row == id)
    }
}

/// Arithmetic part of a row: chain, degree record, Hodge numbers, given the
/// node count.
pub fn row_numerics(row: &ConstructionRow, nodes: i64) -> (Option<InvariantChain>, Option<DegreeRecord>, Vec<(i64, i64)>) {
    let chain = match (smooth_euler(row), surface_euler(row.kind)) {
        (Ok(s), Ok(d)) if !row.expected.chi_yt.is_empty() => Some(chi_chain(s, nodes, d, &adopted_deltas(row.kind))),
        _ => None,
    };
    let degree = if row.expected.chi_yt.is_empty() {
        None
    } else {
        threefold_degree(row)
            .ok()
            .and_then(|d| contraction_degree(row.kind.m() as i64, d, row.kind.k2()).ok())
    };
    let hodge = chain
        .as_ref()
        .map(|c| c.predictions.iter().filter_map(|&x| hodge_from_euler(x).ok()).collect())
        .unwrap_or_default();
    (chain, degree, hodge)
}

fn matches_for(row: &ConstructionRow, s: Option<&SingularityReport>, chain: Option<&InvariantChain>, degree: Option<&DegreeRecord>, h0: Option<i64>) -> RowMatches {
    let e = &row.expected;
    RowMatches {
        nodes: e.nodes.zip(s).map(|(n, s)| s.counts.values().iter().all(|&v| v == n) && !s.counts.values().is_empty()),
        chi_yt: chain
            .filter(|_| !e.chi_yt.is_empty())
            .map(|c| e.chi_yt.iter().all(|y| c.predictions.contains(y))),
        h3: degree.filter(|_| !e.h3.is_empty()).map(|d| {
            let mut a = d.options.clone();
            let mut b = e.h3.clone();
            a.sort_unstable();
            b.sort_unstable();
            a == b
        }),
        h0: e.h0.zip(h0).map(|(a, b)| a == b),
    }
}

fn attempt(row: &ConstructionRow, cfg: &RunConfig, seed: u64) -> Result<(ThreefoldInstance, SingularityReport, LinkedData)> {
    let inst = build_row(row, cfg.prime, seed)?;
    let opts = VerifyOptions {
        full_jacobian: cfg.full_jacobian,
        skip_jacobian: cfg.skip_jacobian,
    };
    let (rep, linked) = verify(&inst, opts)?;
    Ok((inst, rep, linked))
}

fn dump(dir: &std::path::Path, row: &str, inst: Option<&ThreefoldInstance>) -> Vec<String> {
    let Some(inst) = inst else { return Vec::new() };
    let mut out = Vec::new();
    if std::fs::create_dir_all(dir).is_err() {
        return out;
    }
    for (name, ideal) in [("surface", &inst.surface.ideal), ("threefold", &inst.x)] {
        let p = dir.join(format!("row-{row}-{name}.ideal"));
        if std::fs::write(&p, format_ideal_file(ideal.ring(), ideal.generators())).is_ok() {
            out.push(p.display().to_string());
        }
    }
    out
}

/// Builds and verifies one row, reseeding on degeneracy.
pub fn run_row(row: &ConstructionRow, cfg: &RunConfig) -> RowReport {
    let start = Instant::now();
    let mut errors = Vec::new();
    let mut last_inst = None;
    let mut found = None;
    let mut attempts = 0;
    for k in 0..cfg.retries {
        attempts = k + 1;
        let seed = cfg.seed.wrapping_add(k as u64);
        match attempt(row, cfg, seed) {
            Ok((inst, rep, linked)) => {
                let degenerate = !rep.agreement || rep.reduced != Some(true);
                if degenerate && k + 1 < cfg.retries {
                    warn!("row {}: seed {seed} gave counts {:?}, reseeding", row.id, rep.counts);
                    errors.push(format!("seed {seed}: counts {:?} reduced {:?}", rep.counts, rep.reduced));
                    last_inst = Some(inst);
                    continue;
                }
                found = Some((inst, rep, linked, seed));
                break;
            }
            Err(e) => {
                warn!("row {}: seed {seed} failed: {e}", row.id);
                errors.push(format!("seed {seed}: {e}"));
            }
        }
    }
    let label = row.label();
    match found {
        Some((inst, rep, linked, seed)) => {
            let nodes = rep.counts.linkage.or(rep.counts.jacobian).or(rep.counts.chern).unwrap_or(0);
            let (chain, degree, hodge) = row_numerics(row, nodes);
            let h0 = row.expected.h0.map(|_| section_count(&linked.g, row.section_degree));
            let matches = matches_for(row, Some(&rep), chain.as_ref(), degree.as_ref(), h0);
            let status = if rep.certified() { "ok" } else { "uncertified" };
            let dumped = match (&cfg.dump_dir, rep.certified()) {
                (Some(d), false) => dump(d, row.id, Some(&inst)),
                _ => Vec::new(),
            };
            info!("row {} done in {:.1}s", row.id, start.elapsed().as_secs_f64());
            RowReport {
                row: row.id.to_string(),
                label,
                surface: row.kind.label(),
                status: status.into(),
                attempts,
                seed,
                singularity: Some(rep),
                chain,
                degree,
                section_count: h0,
                hodge,
                expected: row.expected.clone(),
                matches,
                errors,
                dumped,
                seconds: start.elapsed().as_secs_f64(),
            }
        }
        None => {
            let dumped = cfg.dump_dir.as_ref().map(|d| dump(d, row.id, last_inst.as_ref())).unwrap_or_default();
            RowReport {
                row: row.id.to_string(),
                label,
                surface: row.kind.label(),
                status: "failed".into(),
                attempts,
                seed: cfg.seed,
                singularity: None,
                chain: None,
                degree: None,
                section_count: None,
                hodge: Vec::new(),
                expected: row.expected.clone(),
                matches: RowMatches::default(),
                errors,
                dumped,
                seconds: start.elapsed().as_secs_f64(),
            }
        }
    }
}

/// Runs the configured rows on a bounded worker pool and appends the audit
/// for the printed values and for the recomputed node counts.
pub fn run(cfg: &RunConfig) -> Result<RunReport> {
    cfg.validate()?;
    let selected: Vec<ConstructionRow> = cfg.rows.iter().map(|r| find_row(r)).collect::<Result<_>>()?;
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<RowReport>>> = Mutex::new(vec![None; selected.len()]);
    let workers = cfg.worker_count().min(selected.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= selected.len() {
                    break;
                }
                let rep = run_row(&selected[i], cfg);
                results.lock().unwrap()[i] = Some(rep);
            });
        }
    });
    let rows: Vec<RowReport> = results.into_inner().unwrap().into_iter().flatten().collect();
    let mut recomputed = BTreeMap::new();
    for r in &rows {
        if let Some(n) = r.nodes() {
            recomputed.insert(r.row.clone(), n);
        }
    }
    let mut audit = vec![audit_tables("printed node counts", &BTreeMap::new())?];
    if !recomputed.is_empty() {
        audit.push(audit_tables("recomputed node counts", &recomputed)?);
    }
    Ok(RunReport {
        schema: SCHEMA_VERSION,
        prime: cfg.prime,
        seed: cfg.seed,
        full_jacobian: cfg.full_jacobian,
        rows,
        audit,
    })
}

pub fn emit_json(report: &RunReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn list(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("|")
}

fn flag(v: Option<bool>) -> String {
    match v {
        Some(true) => "yes".into(),
        Some(false) => "NO".into(),
        None => String::new(),
    }
}

/// Construction table with recomputed columns; rows of `report` fill the
/// Gröbner columns, the rest comes from Chern and chain arithmetic.
pub fn table1_tsv(report: Option<&RunReport>) -> Result<String> {
    let mut s = String::from(
        "No\tdeg D'\tX'\tsing X'\tchi(Y_t)\tH^3\th0(H)\tjacobian\tlinkage\tchern\tchi(Y_t) recomputed\tH^3 recomputed\th0 recomputed\tmatch\n",
    );
    // the auxiliary constructions are not part of the numbered table
    for row in rows().into_iter().filter(|r| r.id.parse::<u32>().is_ok()) {
        let r = report.and_then(|rep| rep.row(row.id));
        let chern = predicted_nodes(&row.kind.invariants(), &row.ambient.chern(sigma_default(&row, r)), &row.degrees)
            .map(|l| l.nodes)
            .ok();
        let counts = r.and_then(|r| r.singularity.as_ref()).map(|s| s.counts.clone()).unwrap_or_default();
        let nodes = counts.linkage.or(counts.jacobian).or(chern).unwrap_or(0);
        let (chain, degree, _) = row_numerics(&row, nodes);
        let h0 = r.and_then(|r| r.section_count);
        let m = match r {
            Some(r) => r.matches.clone(),
            None => matches_for(&row, None, chain.as_ref(), degree.as_ref(), None),
        };
        let all = [m.nodes, m.chi_yt, m.h3, m.h0].into_iter().flatten().all(|b| b);
        let e = &row.expected;
        writeln!(
            s,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            row.id,
            row.kind.label(),
            row.label(),
            opt(e.nodes),
            list(&e.chi_yt),
            list(&e.h3),
            opt(e.h0),
            opt(counts.jacobian),
            opt(counts.linkage),
            opt(counts.chern.or(chern)),
            chain.map(|c| list(&c.predictions)).unwrap_or_default(),
            degree.map(|d| list(&d.options)).unwrap_or_default(),
            opt(h0),
            if all { "yes" } else { "NO" }
        )
        .unwrap();
    }
    Ok(s)
}

/// `∫σ11` for rows without a run: the value the Gröbner computation gives
/// for these models (two for a del Pezzo section of `G(2,n)` spanning its
/// linear space).
fn sigma_default(row: &ConstructionRow, r: Option<&RowReport>) -> Option<i64> {
    r.and_then(|r| r.singularity.as_ref()).and_then(|s| s.sigma11).or(row.is_grassmannian().then_some(2))
}

/// Tables 2–6 with the chain recomputed from the printed node counts and the
/// independently computed smooth Euler numbers.
pub fn printed_table_tsv(which: u8) -> Result<String> {
    if !(2..=6).contains(&which) {
        return Err(CoreError::Invalid(format!("no printed table {which}; use 1..=6")));
    }
    let chi_label = |c: ChiColumn| match c {
        ChiColumn::Smooth => "chi_smooth",
        ChiColumn::Nodal => "chi_nodal",
        ChiColumn::SmallResolution => "chi_small",
    };
    let mut s = String::new();
    let entries: Vec<_> = printed_tables().into_iter().filter(|e| e.table == which).collect();
    let col = entries.first().map(|e| chi_label(e.chi_column)).unwrap_or("chi");
    writeln!(
        s,
        "entry\tnodes\t{col} (printed)\tchi(Y_t)\tH^3{}\t{col} recomputed\tchi(Y_t) recomputed\tH^3 recomputed\tmatch",
        if which == 5 { "\th0(H)" } else { "" }
    )
    .unwrap();
    for e in entries {
        let row = find_row(e.row)?;
        let chain = chi_chain(smooth_euler(&row)?, e.nodes, surface_euler(row.kind)?, &adopted_deltas(row.kind));
        let chi = match e.chi_column {
            ChiColumn::Smooth => chain.chi_smooth,
            ChiColumn::Nodal => chain.chi_nodal,
            ChiColumn::SmallResolution => chain.chi_small,
        };
        let deg = table5_degree(e.row).map(Ok).unwrap_or_else(|| threefold_degree(&row))?;
        let rec = contraction_degree(row.kind.m() as i64, deg, row.kind.k2())?;
        let ok = chi == e.chi_x
            && e.chi_yt.iter().all(|y| chain.predictions.contains(y))
            && e.h3.iter().all(|h| rec.options.contains(h));
        writeln!(
            s,
            "{}\t{}\t{}\t{}\t{}{}\t{}\t{}\t{}\t{}",
            e.label,
            e.nodes,
            e.chi_x,
            list(&e.chi_yt),
            list(&e.h3),
            e.h0.map(|h| format!("\t{h}")).unwrap_or_default(),
            chi,
            list(&chain.predictions),
            list(&rec.options),
            if ok { "yes" } else { "NO" }
        )
        .unwrap();
    }
    Ok(s)
}

/// TSV of a run: one line per row with the route counts and match flags.
pub fn emit_tsv(report: &RunReport) -> String {
    let mut s = String::from(
        "row\tsurface\tstatus\tseed\tjacobian\tlinkage\tchern\texpected\tdim\treduced\ton_surface\tavoids_surface_sing\tagreement\tmatch_nodes\tmatch_chi\tmatch_h3\tmatch_h0\th0\n",
    );
    for r in &report.rows {
        let sg = r.singularity.as_ref();
        let c = sg.map(|s| s.counts.clone()).unwrap_or_default();
        writeln!(
            s,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.row,
            r.surface,
            r.status,
            r.seed,
            opt(c.jacobian),
            opt(c.linkage),
            opt(c.chern),
            opt(r.expected.nodes),
            sg.map(|s| s.dim.map_or("empty".to_string(), |d| d.to_string())).unwrap_or_default(),
            flag(sg.and_then(|s| s.reduced)),
            flag(sg.and_then(|s| s.on_surface)),
            flag(sg.and_then(|s| s.avoids_surface_sing)),
            flag(sg.map(|s| s.agreement)),
            flag(r.matches.nodes),
            flag(r.matches.chi_yt),
            flag(r.matches.h3),
            flag(r.matches.h0),
            opt(r.section_count),
        )
        .unwrap();
    }
    s
}

pub fn emit(report: &RunReport, format: Format) -> String {
    match format {
        Format::Json => emit_json(report),
        Format::Tsv => emit_tsv(report),
    }
}

/// Human-readable audit summary.
pub fn audit_text(a: &AuditReport) -> String {
    let mut s = format!("audit ({})\n", a.pass);
    for o in &a.observations {
        writeln!(s, "  {:8} {:28} delta {:?}", o.surface, o.source, o.deltas).unwrap();
    }
    for f in &a.findings {
        writeln!(s, "  FLAG {}: {}", f.surface, f.detail).unwrap();
    }
    writeln!(s, "  flagged: {:?}", a.flagged).unwrap();
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_run_has_audit_only() {
        let cfg = RunConfig::default();
        let rep = run(&cfg).unwrap();
        assert!(rep.rows.is_empty());
        assert_eq!(rep.audit.len(), 1);
        let tsv = emit_tsv(&rep);
        assert_eq!(tsv.lines().count(), 1);
    }

    #[test]
    fn json_round_trip_of_values() {
        let rep = run(&RunConfig::default()).unwrap();
        let text = emit_json(&rep);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v, serde_json::to_value(&rep).unwrap());
        assert_eq!(v["schema"], SCHEMA_VERSION);
    }

    #[test]
    fn config_validation() {
        let mut cfg = RunConfig::default();
        cfg.prime = 32004;
        assert!(cfg.validate().is_err());
        let mut cfg = RunConfig::default();
        cfg.retries = 4;
        assert!(cfg.validate().is_err());
        let mut cfg = RunConfig::default();
        cfg.rows = vec!["nope".into()];
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn table1_has_printed_and_recomputed_columns() {
        let t = table1_tsv(None).unwrap();
        let header: Vec<&str> = t.lines().next().unwrap().split('\t').collect();
        assert_eq!(&header[..7], ["No", "deg D'", "X'", "sing X'", "chi(Y_t)", "H^3", "h0(H)"]);
        assert_eq!(t.lines().count(), 1 + 20);
    }

    #[test]
    fn printed_tables_render() {
        for w in 2..=6 {
            let t = printed_table_tsv(w).unwrap();
            assert!(t.lines().count() >= 4, "table {w}");
        }
        assert!(printed_table_tsv(7).is_err());
    }
}
