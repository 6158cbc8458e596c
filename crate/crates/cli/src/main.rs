//! Batch front-end: parse potential configs, run bound evaluations,
//! eigencounts, comparisons and construction verifications; emit
//! deterministic reports.

mod config;
mod output;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use speclab::bounds::{self, EstimateId, EvalParams};
use speclab::constructions::{self, ClaimOutcome, VerifyBudget};
use speclab::report::Verdict;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Parser)]
#[command(name = "speclab", version, about = "eigenvalue-counting bound laboratory")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Worker threads (env SPECLAB_JOBS overrides).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Oscillation/quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-11)]
    tol: f64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate bound functionals on a potential.
    Bounds {
        #[arg(long)]
        potential: String,
        /// Comma-separated estimate keys, or `all`.
        #[arg(long, default_value = "all")]
        estimates: String,
        /// Exponent for the L_p ingredients.
        #[arg(long, default_value_t = 1.5)]
        p: f64,
        /// Threshold for the Orlicz-term sums.
        #[arg(long, default_value_t = 0.046)]
        c: f64,
        /// Profile window override `lo..hi`.
        #[arg(long)]
        range: Option<String>,
    },
    /// Direct negative-eigenvalue count for a radial potential.
    Eigencount {
        #[arg(long)]
        potential: String,
        /// Coupling constant multiplying the potential.
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Builtin parameter N (for staircase builtins).
        #[arg(long, value_name = "N")]
        n: Option<f64>,
    },
    /// Evaluate estimates and check the implication diagram.
    Compare {
        #[arg(long)]
        potential: String,
        #[arg(long, default_value = "all")]
        estimates: String,
        #[arg(long, default_value_t = 1.5)]
        p: f64,
        #[arg(long, default_value_t = 0.046)]
        c: f64,
    },
    /// Build a named construction and emit its config plus claims.
    Construct {
        #[arg(long)]
        id: String,
        /// Construction parameters `key=value`.
        #[arg(long = "param")]
        params: Vec<String>,
    },
    /// Build a named construction and verify every attached claim.
    Verify {
        #[arg(long)]
        id: String,
        #[arg(long = "param")]
        params: Vec<String>,
    },
    /// Sharp Sobolev-type constants for a κ (and interval).
    SharpConstants {
        #[arg(long)]
        kappa: f64,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 2.0)]
        b: f64,
    },
    /// Maximize the ring-threshold function Φ.
    PhiMax,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = std::env::var("SPECLAB_JOBS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .or(cli.jobs);
    if let Some(j) = jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn parse_params(params: &[String]) -> Result<Vec<(String, f64)>> {
    params
        .iter()
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| anyhow!("parameter `{kv}` must be key=value"))?;
            Ok((k.trim().to_string(), v.trim().parse::<f64>()?))
        })
        .collect()
}

fn parse_estimates(s: &str) -> Result<Vec<EstimateId>> {
    if s == "all" {
        return Ok(EstimateId::ALL.to_vec());
    }
    s.split(',')
        .map(|k| {
            EstimateId::from_key(k.trim())
                .ok_or_else(|| anyhow!("unknown estimate `{}`", k.trim()))
        })
        .collect()
}

fn config_hash(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
        h.update([0u8]);
    }
    hex::encode(&h.finalize()[..8])
}

fn emit(cli: &Cli, text: String) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {path:?}"))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.cmd {
        Cmd::Bounds { potential, estimates, p, c, range } => {
            let (pot, text) = config::resolve_potential(potential, &[])?;
            let ids = parse_estimates(estimates)?;
            let mut params = EvalParams { p: *p, c_orl: *c, ..EvalParams::default() };
            if let Some(r) = range {
                let (lo, hi) = r
                    .split_once("..")
                    .ok_or_else(|| anyhow!("--range must be lo..hi"))?;
                params.range = Some((lo.parse()?, hi.parse()?));
            }
            let cmp = bounds::compare(&pot, &ids, &params);
            let hash = config_hash(&[&text, estimates, &format!("{p} {c}")]);
            let rendered = match cli.format {
                Format::Json => {
                    let reports: Vec<Value> =
                        cmp.reports.iter().map(output::bound_report_json).collect();
                    serde_json::to_string_pretty(&output::envelope(
                        "bounds",
                        &hash,
                        json!({"estimates": reports}),
                    ))? + "\n"
                }
                Format::Csv => {
                    let mut s = String::from("estimate,status,value,reason\n");
                    for r in &cmp.reports {
                        let (status, value, reason) = quantity_csv(&r.value);
                        s.push_str(&format!(
                            "{},{},{},{}\n",
                            r.id.key(),
                            status,
                            value,
                            output::csv_escape(&reason)
                        ));
                    }
                    s
                }
                Format::Table => {
                    let rows: Vec<Vec<String>> = cmp
                        .reports
                        .iter()
                        .map(|r| {
                            vec![
                                r.id.key().to_string(),
                                output::quantity_cell(&r.value),
                                r.value.note.clone().unwrap_or_default(),
                            ]
                        })
                        .collect();
                    output::render_table(&["estimate", "value", "note"], &rows)
                }
            };
            emit(cli, rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Eigencount { potential, alpha, n } => {
            let extra: Vec<(String, f64)> = n.map(|v| ("N".to_string(), v)).into_iter().collect();
            let (pot, text) = config::resolve_potential(potential, &extra)?;
            let red = pot
                .radial_reduction(*alpha)
                .map_err(|e| anyhow!("radial reduction: {e}"))?;
            let res = speclab::spectral1d::radial_eigencount(&red, *alpha, cli.tol);
            let hash = config_hash(&[&text, &format!("{alpha}")]);
            let rendered = match cli.format {
                Format::Json => {
                    serde_json::to_string_pretty(&output::envelope(
                        "eigencount",
                        &hash,
                        output::eigencount_json(&res),
                    ))? + "\n"
                }
                _ => {
                    let rows = vec![vec![format!("{:?}", res.count), format!("{:?}", res.method)]];
                    output::render_table(&["count", "method"], &rows)
                }
            };
            emit(cli, rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Compare { potential, estimates, p, c } => {
            let (pot, text) = config::resolve_potential(potential, &[])?;
            let ids = parse_estimates(estimates)?;
            let params = EvalParams { p: *p, c_orl: *c, ..EvalParams::default() };
            let cmp = bounds::compare(&pot, &ids, &params);
            let consistency = cmp.check_consistency();
            let hash = config_hash(&[&text, estimates]);
            let verdict_str = |v: Verdict| match v {
                Verdict::Finite => "finite",
                Verdict::Infinite => "inf",
                Verdict::Unknown => "unknown",
            };
            let rendered = match cli.format {
                Format::Json => {
                    let verdicts: Vec<Value> = cmp
                        .reports
                        .iter()
                        .map(|r| {
                            json!({
                                "estimate": r.id.key(),
                                "verdict": verdict_str(r.verdict()),
                                "value": output::quantity_json(&r.value),
                            })
                        })
                        .collect();
                    serde_json::to_string_pretty(&output::envelope(
                        "compare",
                        &hash,
                        json!({
                            "verdicts": verdicts,
                            "diagram_consistent": consistency.is_ok(),
                        }),
                    ))? + "\n"
                }
                _ => {
                    let rows: Vec<Vec<String>> = cmp
                        .reports
                        .iter()
                        .map(|r| {
                            vec![r.id.key().to_string(), verdict_str(r.verdict()).to_string()]
                        })
                        .collect();
                    output::render_table(&["estimate", "verdict"], &rows)
                }
            };
            emit(cli, rendered)?;
            if consistency.is_err() {
                eprintln!("error: {}", consistency.unwrap_err());
                return Ok(ExitCode::from(3));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Construct { id, params } => {
            let params = parse_params(params)?;
            let c = constructions::build(id, &params).map_err(|e| anyhow!("{e}"))?;
            let text = config::potential_to_text(&c.potential);
            let hash = config_hash(&[id, &text]);
            let claims: Vec<String> = c.claims.iter().map(|cl| format!("{cl:?}")).collect();
            let rendered = match cli.format {
                Format::Json => {
                    serde_json::to_string_pretty(&output::envelope(
                        "construct",
                        &hash,
                        json!({"id": c.id, "config": text, "claims": claims}),
                    ))? + "\n"
                }
                _ => format!("# {}\n{}# claims\n# {}\n", c.id, text, claims.join("\n# ")),
            };
            emit(cli, rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { id, params } => {
            let params = parse_params(params)?;
            let c = constructions::build(id, &params).map_err(|e| anyhow!("{e}"))?;
            let budget = VerifyBudget { tol: cli.tol, ..VerifyBudget::default() };
            let rep = constructions::verify_claims(&c, &budget);
            let hash = config_hash(&[id, &config::potential_to_text(&c.potential)]);
            let outcomes: Vec<Value> = rep
                .outcomes
                .iter()
                .map(|(name, out)| {
                    let (status, detail) = match out {
                        ClaimOutcome::Pass => ("pass", String::new()),
                        ClaimOutcome::Fail(d) => ("fail", d.clone()),
                        ClaimOutcome::Inconclusive(d) => ("inconclusive", d.clone()),
                    };
                    json!({"claim": name, "status": status, "detail": detail})
                })
                .collect();
            let rendered = match cli.format {
                Format::Json => {
                    serde_json::to_string_pretty(&output::envelope(
                        "verify",
                        &hash,
                        json!({"id": c.id, "outcomes": outcomes, "all_passed": rep.all_passed()}),
                    ))? + "\n"
                }
                _ => {
                    let rows: Vec<Vec<String>> = rep
                        .outcomes
                        .iter()
                        .map(|(name, out)| vec![name.clone(), format!("{out:?}")])
                        .collect();
                    output::render_table(&["claim", "outcome"], &rows)
                }
            };
            emit(cli, rendered)?;
            if rep.all_passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
        Cmd::SharpConstants { kappa, a, b } => {
            if !(*kappa > 0.0 && *a > 0.0 && *b > *a) {
                return Err(anyhow!("need κ > 0 and 0 < a < b"));
            }
            let phi = bounds::phi_kappa(*kappa);
            let ck = speclab::spectral1d::c_kappa(*kappa, *a, *b);
            let c0 = speclab::spectral1d::c0_kappa(*kappa);
            let lim = speclab::spectral1d::c_kappa_origin_limit(*kappa);
            let hash = config_hash(&[&format!("{kappa} {a} {b}")]);
            let rendered = match cli.format {
                Format::Json => {
                    serde_json::to_string_pretty(&output::envelope(
                        "sharp-constants",
                        &hash,
                        json!({
                            "kappa": output::fnum(*kappa),
                            "phi": output::fnum(phi),
                            "c_kappa": output::fnum(ck),
                            "c_kappa_origin_limit": output::fnum(lim),
                            "c0_kappa": output::fnum(c0),
                            "interval": [output::fnum(*a), output::fnum(*b)],
                        }),
                    ))? + "\n"
                }
                _ => output::render_table(
                    &["kappa", "phi", "C(kappa)", "C0(kappa)"],
                    &[vec![
                        format!("{kappa:.6}"),
                        format!("{phi:.6}"),
                        format!("{ck:.6e}"),
                        format!("{c0:.6e}"),
                    ]],
                ),
            };
            emit(cli, rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::PhiMax => {
            let (k, v) = bounds::maximize_phi::<f64>();
            let spread = (2.0 * (4.0 * k + 1.0) * v).sqrt();
            let hash = config_hash(&["phi-max"]);
            let rendered = match cli.format {
                Format::Json => {
                    serde_json::to_string_pretty(&output::envelope(
                        "phi-max",
                        &hash,
                        json!({
                            "kappa_star": output::fnum(k),
                            "phi_star": output::fnum(v),
                            "sqrt_2_4k1_phi": output::fnum(spread),
                        }),
                    ))? + "\n"
                }
                _ => output::render_table(
                    &["kappa*", "phi*", "sqrt(2(4k+1)phi)"],
                    &[vec![format!("{k:.6}"), format!("{v:.6}"), format!("{spread:.6}")]],
                ),
            };
            emit(cli, rendered)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn quantity_csv(q: &speclab::report::Quantity) -> (String, String, String) {
    match q.verdict {
        Verdict::Finite => (
            "finite".into(),
            format!("{:.12e}", q.value.unwrap()),
            String::new(),
        ),
        Verdict::Infinite => ("inf".into(), String::new(), q.note.clone().unwrap_or_default()),
        Verdict::Unknown => (
            "unknown".into(),
            q.value.map(|v| format!("{v:.12e}")).unwrap_or_default(),
            q.note.clone().unwrap_or_default(),
        ),
    }
}
