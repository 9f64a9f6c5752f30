//! `nsic` — command-line driver for the irreducible-cyclic-code toolkit.
//!
//! Every subcommand is deterministic for a fixed set of arguments: repeated
//! runs produce byte-identical output (wall-clock timings are never
//! serialized).  Exit codes: 0 success, 1 feasible disagreement found,
//! 2 invalid input, 3 infeasible under the given budgets.

use std::path::PathBuf;
use std::process::exit;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nsic_core::agree::agree_sweep;
use nsic_core::classifier::{classify, classify_exhaustive};
use nsic_core::cycliccode::irreducible_code_of_pair;
use nsic_core::density::density_table;
use nsic_core::numtheory::{factor, FieldDesc};
use nsic_core::oracle::{degenerate_order_check, linear_stabilizer, lrs_witness};
use nsic_core::schmidtwhite::sw_audit;
use nsic_core::{Budgets, Error};

const SCHEMA: &str = "nsic/1";

#[derive(Parser)]
#[command(name = "nsic", version, about = "Irreducible cyclic code standardness toolkit")]
struct Cli {
    /// Worker thread count (also settable via NSIC_THREADS; flag wins).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutOpts {
    /// Output format (default: json for single-pair commands, csv for sweeps).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the artifact to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BudgetOpts {
    /// Backtracking-search node budget for the stabilizer oracle.
    #[arg(long, default_value_t = Budgets::default().oracle_nodes)]
    budget_nodes: u64,
    /// Largest finite field the run may realize.
    #[arg(long, default_value_t = Budgets::default().field_size)]
    budget_field: u64,
    /// Step budget for the recurrence witness scan.
    #[arg(long, default_value_t = Budgets::default().lrs_steps)]
    budget_steps: u64,
    /// Enumeration budget (codeword sweeps).
    #[arg(long, default_value_t = Budgets::default().enum_size)]
    budget_enum: u64,
}

impl BudgetOpts {
    fn budgets(&self) -> Budgets {
        Budgets {
            field_size: self.budget_field,
            enum_size: self.budget_enum,
            oracle_nodes: self.budget_nodes,
            lrs_steps: self.budget_steps,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether the pair (n, p^e) is standard or non-standard.
    Classify {
        n: u64,
        p: u64,
        e: u64,
        /// List every minimal derivation instead of the first found.
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Exact order of the linear stabilizer L(n, q) by backtracking search.
    Oracle {
        n: u64,
        p: u64,
        e: u64,
        /// Include the generator matrices in JSON output.
        #[arg(long)]
        generators: bool,
        #[command(flatten)]
        budget: BudgetOpts,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Search for a non-cyclic recurrence arrangement witnessing the pair.
    Lrs {
        n: u64,
        p: u64,
        e: u64,
        #[command(flatten)]
        budget: BudgetOpts,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Weight distribution of the irreducible cyclic code of the pair.
    Weights {
        n: u64,
        p: u64,
        e: u64,
        #[command(flatten)]
        budget: BudgetOpts,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Audit one-/two-weight predicates over non-standard pairs.
    #[command(name = "sw-audit")]
    SwAudit {
        /// Base field sizes, as prime powers (e.g. 2,3,4,9).
        #[arg(long, value_delimiter = ',', required = true)]
        qs: Vec<u64>,
        /// Include pairs with q^m up to this bound.
        #[arg(long)]
        qm_limit: u64,
        #[command(flatten)]
        budget: BudgetOpts,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Non-standard pair density table over F_{p^i}.
    Density {
        /// Characteristic.
        #[arg(long)]
        p: u64,
        /// Field exponents, as a list or range (e.g. 1-6 or 1,2,4).
        #[arg(long)]
        exps: String,
        /// Length bounds N (density counts pairs with n <= N).
        #[arg(long = "N", value_delimiter = ',', required = true)]
        n_bounds: Vec<u64>,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Wreath-order formula for degenerate pairs n = n' * k.
    #[command(name = "deg-check")]
    DegCheck {
        nprime: u64,
        k: u64,
        p: u64,
        e: u64,
        #[command(flatten)]
        budget: BudgetOpts,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Three-way classifier/oracle/witness agreement sweep.
    Agree {
        /// Base field sizes, as prime powers.
        #[arg(long, value_delimiter = ',', required = true)]
        qs: Vec<u64>,
        /// Include pairs with q^m up to this bound.
        #[arg(long)]
        qm_limit: u64,
        /// Keep only lengths n <= this bound.
        #[arg(long)]
        n_max: Option<u64>,
        #[command(flatten)]
        budget: BudgetOpts,
        #[command(flatten)]
        out: OutOpts,
    },
}

fn main() {
    let cli = Cli::parse();
    init_threads(cli.threads);
    match run(cli.cmd) {
        Ok(code) => exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            exit(match e {
                Error::Infeasible(_) => 3,
                _ => 2,
            });
        }
    }
}

fn init_threads(flag: Option<usize>) {
    let n = flag.or_else(|| {
        std::env::var("NSIC_THREADS").ok().and_then(|s| s.parse().ok())
    });
    if let Some(n) = n {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Interpret a plain integer as a prime power p^e.
fn parse_prime_power(v: u64) -> Result<FieldDesc, Error> {
    let f = factor(v);
    match f.factors.as_slice() {
        [(p, e)] => FieldDesc::new(*p, *e as u64),
        _ => Err(Error::InvalidInput(format!("{v} is not a prime power"))),
    }
}

/// Parse "1-6", "2", or "1,3,5" (mixes allowed) into an exponent list.
fn parse_exps(s: &str) -> Result<Vec<u64>, Error> {
    let bad = |what: &str| Error::InvalidInput(format!("bad exponent list {what:?}"));
    let mut out = Vec::new();
    for part in s.split(',') {
        if let Some((a, b)) = part.split_once('-') {
            let a: u64 = a.trim().parse().map_err(|_| bad(part))?;
            let b: u64 = b.trim().parse().map_err(|_| bad(part))?;
            if a == 0 || b < a {
                return Err(bad(part));
            }
            out.extend(a..=b);
        } else {
            let v: u64 = part.trim().parse().map_err(|_| bad(part))?;
            if v == 0 {
                return Err(bad(part));
            }
            out.push(v);
        }
    }
    Ok(out)
}

fn write_artifact(out: &OutOpts, text: String) -> Result<(), Error> {
    match &out.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_text(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn run(cmd: Cmd) -> Result<i32, Error> {
    match cmd {
        Cmd::Classify { n, p, e, exhaustive, out } => {
            let q = FieldDesc::new(p, e)?;
            let class = classify(n, q)?;
            let fmt = out.format.unwrap_or(Format::Json);
            let text = match fmt {
                Format::Csv => {
                    format!("n,p,e,m,verdict,depth\n{}\n", class.csv_row())
                }
                Format::Json => {
                    let mut v = serde_json::json!({
                        "schema": SCHEMA,
                        "kind": "classify",
                    });
                    merge(&mut v, class.to_json());
                    if exhaustive {
                        let all = classify_exhaustive(n, q)?;
                        v["derivations"] = serde_json::Value::Array(
                            all.iter()
                                .map(|d| {
                                    serde_json::from_str(&d.to_json()).expect("derivation json")
                                })
                                .collect(),
                        );
                    }
                    json_text(v)
                }
            };
            write_artifact(&out, text)?;
            Ok(0)
        }
        Cmd::Oracle { n, p, e, generators, budget, out } => {
            let q = FieldDesc::new(p, e)?;
            let res = linear_stabilizer(n, q, &budget.budgets())?;
            let fmt = out.format.unwrap_or(Format::Json);
            let text = match fmt {
                Format::Csv => format!(
                    "n,p,e,m,order,standard_order,verdict,nodes\n{},{},{},{},{},{},{},{}\n",
                    res.n,
                    res.q.p,
                    res.q.e,
                    res.m,
                    res.order,
                    res.standard_order,
                    if res.is_nonstandard() { "nonstandard" } else { "standard" },
                    res.nodes_explored
                ),
                Format::Json => {
                    let mut v = serde_json::json!({ "schema": SCHEMA, "kind": "oracle" });
                    let body = if generators {
                        res.to_json_with_generators()
                    } else {
                        res.to_json()
                    };
                    merge(&mut v, body);
                    json_text(v)
                }
            };
            write_artifact(&out, text)?;
            Ok(0)
        }
        Cmd::Lrs { n, p, e, budget, out } => {
            let q = FieldDesc::new(p, e)?;
            let wit = lrs_witness(n, q, &budget.budgets())?;
            let fmt = out.format.unwrap_or(Format::Json);
            let text = match fmt {
                Format::Csv => {
                    let mut s = String::from("n,p,e,witness,f,arrangement\n");
                    match &wit {
                        Some(w) => s.push_str(&format!(
                            "{},{},{},nonstandard,\"{}\",\"{}\"\n",
                            w.n,
                            w.q.p,
                            w.q.e,
                            w.f.to_csv(),
                            w.arrangement
                                .iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join(",")
                        )),
                        None => s.push_str(&format!("{n},{p},{e},standard,,\n")),
                    }
                    s
                }
                Format::Json => {
                    let v = serde_json::json!({
                        "schema": SCHEMA,
                        "kind": "lrs",
                        "pair": [n, p, e],
                        "verdict": if wit.is_some() { "nonstandard" } else { "standard" },
                        "witness": wit.as_ref().map(|w| serde_json::json!({
                            "f": w.f.coeffs,
                            "arrangement": w.arrangement,
                            "is_cyclic": w.is_cyclic,
                        })),
                    });
                    json_text(v)
                }
            };
            write_artifact(&out, text)?;
            Ok(0)
        }
        Cmd::Weights { n, p, e, budget, out } => {
            let q = FieldDesc::new(p, e)?;
            let code = irreducible_code_of_pair(n, q, &budget.budgets())?;
            let dist = code.weight_distribution(&budget.budgets())?;
            let fmt = out.format.unwrap_or(Format::Json);
            let text = match fmt {
                Format::Csv => dist.to_csv(),
                Format::Json => {
                    let counts: serde_json::Map<String, serde_json::Value> = dist
                        .counts
                        .iter()
                        .map(|(w, c)| (w.to_string(), serde_json::json!(c)))
                        .collect();
                    json_text(serde_json::json!({
                        "schema": SCHEMA,
                        "kind": "weights",
                        "pair": [n, p, e],
                        "n": dist.n,
                        "dim": dist.dim,
                        "total": dist.total(),
                        "counts": counts,
                    }))
                }
            };
            write_artifact(&out, text)?;
            Ok(0)
        }
        Cmd::SwAudit { qs, qm_limit, budget, out } => {
            let fields = qs
                .iter()
                .map(|&v| parse_prime_power(v))
                .collect::<Result<Vec<_>, _>>()?;
            let report = sw_audit(&fields, qm_limit, &budget.budgets())?;
            let fmt = out.format.unwrap_or(Format::Csv);
            let text = match fmt {
                Format::Csv => report.to_csv(),
                Format::Json => {
                    let rows: Vec<serde_json::Value> = report
                        .rows
                        .iter()
                        .map(|r| {
                            serde_json::json!({
                                "n": r.n,
                                "p": r.q.p,
                                "e": r.q.e,
                                "m": r.m,
                                "u": r.u,
                                "weights": r.weights,
                                "semiprimitive": r.semiprimitive,
                                "subfield": r.subfield,
                                "exception": r.exception,
                                "status": format!("{:?}", r.status).to_lowercase(),
                            })
                        })
                        .collect();
                    json_text(serde_json::json!({
                        "schema": SCHEMA,
                        "kind": "sw-audit",
                        "qm_limit": qm_limit,
                        "violations": report.violations.len(),
                        "skipped": report.skipped,
                        "rows": rows,
                    }))
                }
            };
            write_artifact(&out, text)?;
            Ok(if report.violations.is_empty() { 0 } else { 1 })
        }
        Cmd::Density { p, exps, n_bounds, out } => {
            let exps = parse_exps(&exps)?;
            let table = density_table(p, &exps, &n_bounds)?;
            let fmt = out.format.unwrap_or(Format::Csv);
            let text = match fmt {
                Format::Csv => table.to_csv(),
                Format::Json => {
                    let rows: Vec<serde_json::Value> = table
                        .rows
                        .iter()
                        .flatten()
                        .map(|c| {
                            serde_json::json!({
                                "p": c.p,
                                "i": c.i,
                                "N": c.n_max,
                                "numerator": c.numerator,
                                "denominator": c.denominator,
                                "ratio": c.ratio_decimal(c.default_precision()),
                            })
                        })
                        .collect();
                    json_text(serde_json::json!({
                        "schema": SCHEMA,
                        "kind": "density",
                        "rows": rows,
                    }))
                }
            };
            write_artifact(&out, text)?;
            Ok(0)
        }
        Cmd::DegCheck { nprime, k, p, e, budget, out } => {
            let q = FieldDesc::new(p, e)?;
            let check = degenerate_order_check(nprime, k, q, &budget.budgets())?;
            let fmt = out.format.unwrap_or(Format::Csv);
            let text = match fmt {
                Format::Csv => check.to_csv(),
                Format::Json => {
                    let rows: Vec<serde_json::Value> = check
                        .rows
                        .iter()
                        .map(|r| {
                            serde_json::json!({
                                "h": r.h,
                                "n": r.n,
                                "order": r.order,
                                "formula_holds": r.formula_holds,
                                "in_affine": r.in_affine,
                                "is_exception": r.is_exception,
                            })
                        })
                        .collect();
                    json_text(serde_json::json!({
                        "schema": SCHEMA,
                        "kind": "deg-check",
                        "nprime": nprime,
                        "k": k,
                        "p": p,
                        "e": e,
                        "rows": rows,
                    }))
                }
            };
            write_artifact(&out, text)?;
            Ok(0)
        }
        Cmd::Agree { qs, qm_limit, n_max, budget, out } => {
            let fields = qs
                .iter()
                .map(|&v| parse_prime_power(v))
                .collect::<Result<Vec<_>, _>>()?;
            let mut report = agree_sweep(&fields, qm_limit, &budget.budgets())?;
            if let Some(cap) = n_max {
                report.outcomes.retain(|o| o.n <= cap);
            }
            let disagreements = report.disagreements().len();
            let fmt = out.format.unwrap_or(Format::Csv);
            let text = match fmt {
                Format::Csv => report.to_csv(),
                Format::Json => {
                    let rows: Vec<serde_json::Value> = report
                        .outcomes
                        .iter()
                        .map(|o| {
                            serde_json::json!({
                                "n": o.n,
                                "p": o.q.p,
                                "e": o.q.e,
                                "m": o.m,
                                "classifier": verdict_str(Some(o.classifier_ns)),
                                "oracle": verdict_str(o.oracle_ns),
                                "lrs": verdict_str(o.lrs_ns),
                                "feasible": o.feasible(),
                                "agree": o.agrees(),
                            })
                        })
                        .collect();
                    json_text(serde_json::json!({
                        "schema": SCHEMA,
                        "kind": "agree",
                        "qm_limit": qm_limit,
                        "summary": report.summary(),
                        "rows": rows,
                    }))
                }
            };
            write_artifact(&out, text)?;
            eprintln!("{}", report.summary());
            Ok(if disagreements == 0 { 0 } else { 1 })
        }
    }
}

fn verdict_str(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "nonstandard",
        Some(false) => "standard",
        None => "infeasible",
    }
}

/// Merge the fields of `src` (an object) into `dst` (an object).
fn merge(dst: &mut serde_json::Value, src: serde_json::Value) {
    if let (Some(d), serde_json::Value::Object(s)) = (dst.as_object_mut(), src) {
        for (k, v) in s {
            d.insert(k, v);
        }
    }
}
