use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cy_algebra::parse::{format_ideal_file, parse_generators, split_ideal_file};
use cy_algebra::{GroebnerBasis, MonomialOrder, DEFAULT_PRIME};
use cy_core::catalog::{build_row, find_row, rows, SurfaceKind};
use cy_core::chow::{predicted_nodes, AmbientChern};
use cy_core::numerics::audit_tables;
use cy_core::runner::{
    audit_text, emit, printed_table_tsv, run, table1_tsv, Format, RunConfig, MAX_RETRIES,
};

#[derive(Parser)]
#[command(name = "cynodal", version, about = "Nodal Calabi-Yau threefolds through del Pezzo surfaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build and verify rows, then audit the tables.
    Run {
        /// Comma-separated row ids; `all` for every row.
        #[arg(long, default_value = "all")]
        rows: String,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Run the Jacobian route on P^7 and Grassmannian rows too.
        #[arg(long)]
        full_jacobian: bool,
        #[arg(long)]
        skip_jacobian: bool,
        #[arg(long, default_value_t = MAX_RETRIES)]
        retries: u32,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write ideals of rows that fail.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Singularity report for one row.
    Verify {
        #[arg(long)]
        row: String,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        full_jacobian: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-emit a printed table with recomputed columns.
    Tables {
        #[arg(long, default_value_t = 1)]
        which: u8,
        #[arg(long, default_value = "tsv")]
        format: String,
        /// Fill the Gröbner columns of table 1 by running every row.
        #[arg(long)]
        compute: bool,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Cross-table consistency audit of the printed values.
    Audit {
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Reduced Gröbner basis of an ideal file.
    Gb {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        order: Option<String>,
    },
    /// Construction rows and their ideals.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Chern-class ledger for a surface in P^N cut by hypersurfaces.
    Chern {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        ambient: usize,
        /// Equal degree of the N - 3 hypersurfaces.
        #[arg(long)]
        twist: Option<u32>,
        /// Explicit comma-separated degrees instead of `--twist`.
        #[arg(long)]
        degrees: Option<String>,
        #[arg(long, default_value = "text")]
        format: String,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Rows with their printed values, as TSV.
    List,
    /// Surface and threefold ideals of a row in the ideal file format.
    Dump {
        #[arg(long)]
        row: String,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn row_list(spec: &str) -> Vec<String> {
    if spec == "all" {
        rows().iter().map(|r| r.id.to_string()).collect()
    } else {
        spec.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
    }
}

fn tsv_to_json(tsv: &str) -> String {
    let mut lines = tsv.lines();
    let header: Vec<&str> = lines.next().unwrap_or_default().split('\t').collect();
    let rows: Vec<serde_json::Value> = lines
        .map(|l| {
            let obj = header
                .iter()
                .zip(l.split('\t'))
                .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.to_string())))
                .collect();
            serde_json::Value::Object(obj)
        })
        .collect();
    serde_json::to_string_pretty(&rows).unwrap()
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match real_main(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn real_main(cli: Cli) -> Result<ExitCode, String> {
    let err = |e: cy_core::CoreError| e.to_string();
    match cli.cmd {
        Cmd::Run {
            rows,
            prime,
            seed,
            full_jacobian,
            skip_jacobian,
            retries,
            format,
            out,
            dump_dir,
            workers,
        } => {
            let fmt: Format = format.parse().map_err(err)?;
            let cfg = RunConfig {
                rows: row_list(&rows),
                prime,
                seed,
                full_jacobian,
                skip_jacobian,
                retries,
                dump_dir,
                workers,
            };
            let rep = run(&cfg).map_err(err)?;
            write_out(&out, &emit(&rep, fmt))?;
            for r in &rep.rows {
                if r.matches.nodes == Some(false) {
                    log::warn!("row {}: node count differs from the printed value", r.row);
                }
            }
            Ok(if rep.has_route_disagreement() { ExitCode::FAILURE } else { ExitCode::SUCCESS })
        }
        Cmd::Verify {
            row,
            prime,
            seed,
            full_jacobian,
            out,
        } => {
            let cfg = RunConfig {
                rows: vec![row.clone()],
                prime,
                seed,
                full_jacobian,
                ..RunConfig::default()
            };
            let rep = run(&cfg).map_err(err)?;
            let r = rep.row(&row).ok_or("row missing from report")?;
            let text = match &r.singularity {
                Some(s) => serde_json::to_string_pretty(s).unwrap(),
                None => return Err(format!("row {row} failed: {}", r.errors.join("; "))),
            };
            write_out(&out, &text)?;
            Ok(if r.routes_agree() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Cmd::Tables {
            which,
            format,
            compute,
            seed,
        } => {
            let tsv = if which == 1 {
                let rep = if compute {
                    Some(
                        run(&RunConfig {
                            rows: row_list("all"),
                            seed,
                            ..RunConfig::default()
                        })
                        .map_err(err)?,
                    )
                } else {
                    None
                };
                table1_tsv(rep.as_ref()).map_err(err)?
            } else {
                printed_table_tsv(which).map_err(err)?
            };
            let text = match format.as_str() {
                "tsv" => tsv,
                "json" => tsv_to_json(&tsv),
                f => return Err(format!("unknown format {f:?}")),
            };
            write_out(&None, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Audit { format } => {
            let a = audit_tables("printed node counts", &Default::default()).map_err(err)?;
            let text = match format.as_str() {
                "text" => audit_text(&a),
                "json" => serde_json::to_string_pretty(&a).unwrap(),
                f => return Err(format!("unknown format {f:?}")),
            };
            write_out(&None, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Gb { input, order } => {
            let text = std::fs::read_to_string(&input).map_err(|e| format!("{}: {e}", input.display()))?;
            let (header, lines) = split_ideal_file(&text).map_err(|e| e.to_string())?;
            let mut ring = header.prime_ring().map_err(|e| e.to_string())?;
            if let Some(tag) = order {
                let o = MonomialOrder::parse(&tag).ok_or(format!("unknown order {tag:?}"))?;
                ring = ring.with_order(o).map_err(|e| e.to_string())?;
            }
            let gens = parse_generators(&ring, &lines).map_err(|e| e.to_string())?;
            let gb = GroebnerBasis::compute(&ring, &gens);
            write_out(&None, &format_ideal_file(&ring, &gb.to_vec()))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Catalog { cmd } => match cmd {
            CatalogCmd::List => {
                let mut s = String::from("row\tsurface\tambient\tdegrees\tnodes\tchi(Y_t)\tH^3\th0(H)\trecipe\n");
                let j = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("|");
                for r in rows() {
                    let e = &r.expected;
                    s.push_str(&format!(
                        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                        r.id,
                        r.kind,
                        r.ambient.label(),
                        r.degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","),
                        e.nodes.map(|n| n.to_string()).unwrap_or_default(),
                        j(&e.chi_yt),
                        j(&e.h3),
                        e.h0.map(|n| n.to_string()).unwrap_or_default(),
                        r.recipe
                    ));
                }
                write_out(&None, &s)?;
                Ok(ExitCode::SUCCESS)
            }
            CatalogCmd::Dump { row, prime, seed } => {
                let r = find_row(&row).map_err(err)?;
                let inst = build_row(&r, prime, seed).map_err(err)?;
                let mut s = format!("# surface {} for row {}\n", r.kind, r.id);
                s.push_str(&format_ideal_file(inst.ring.as_ref(), inst.surface.ideal.generators()));
                s.push_str(&format!("# threefold {}\n", r.label()));
                s.push_str(&format_ideal_file(inst.ring.as_ref(), inst.x.generators()));
                write_out(&None, &s)?;
                Ok(ExitCode::SUCCESS)
            }
        },
        Cmd::Chern {
            surface,
            ambient,
            twist,
            degrees,
            format,
        } => {
            let kind: SurfaceKind = surface.parse().map_err(err)?;
            let degs: Vec<u32> = match (degrees, twist) {
                (Some(d), _) => d
                    .split(',')
                    .map(|x| x.trim().parse().map_err(|_| format!("bad degree {x:?}")))
                    .collect::<Result<_, _>>()?,
                (None, Some(t)) => vec![t; ambient.saturating_sub(3)],
                (None, None) => return Err("give --twist or --degrees".into()),
            };
            let ledger = predicted_nodes(&kind.invariants(), &AmbientChern::Projective(ambient), &degs).map_err(err)?;
            let text = match format.as_str() {
                "json" => serde_json::to_string_pretty(&ledger).unwrap(),
                "text" => format!(
                    "surface        {}\nambient        P{}\ndegrees        {:?}\nc(T_D)         {}\nc(T_A)|_D      {}\nc(N)           {}\nc(N^v)         {}\nc(N^v)/prod    {}\nnodes          {}\nconvention     {}\n",
                    kind,
                    ambient,
                    degs,
                    ledger.tangent_surface,
                    ledger.tangent_ambient,
                    ledger.normal,
                    ledger.conormal,
                    ledger.twisted,
                    ledger.nodes,
                    ledger.sign_convention
                ),
                f => return Err(format!("unknown format {f:?}")),
            };
            write_out(&None, &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
