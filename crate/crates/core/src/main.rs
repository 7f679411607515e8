use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use cu_lattice::axioms::{self, SampleConfig};
use cu_lattice::cone::{self, FunctionalCone};
use cu_lattice::error::Error;
use cu_lattice::grid::{self, refinement_witness, verify_refinement};
use cu_lattice::halving;
use cu_lattice::lattice;
use cu_lattice::real::{NamedCheck, RealContext};
use cu_lattice::report::RunReport;
use cu_lattice::{fixtures, selftest, term, CuModel, Element};

/// Exact computation with ordered Cu-semigroups.
#[derive(Parser)]
#[command(name = "cu-lattice", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sampled trials per axiom.
    #[arg(long, global = true, default_value_t = 1000)]
    trials: usize,
    /// Largest denominator in witness grids.
    #[arg(long, global = true, default_value_t = grid::DEFAULT_DENOMINATOR_BOUND)]
    denominator_bound: u32,
    /// Allow exhaustive work on large tables.
    #[arg(long, global = true)]
    force: bool,
    /// Print the full JSON run report.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check O1–O6.
    Validate { model: String },
    /// Ideals, extreme rays, and representative functionals.
    Cone { model: String },
    /// Decide ŝ <= t̂ with both oracles.
    Compare {
        model: String,
        s: String,
        t: String,
        #[arg(long, default_value_t = 8)]
        depth: u32,
    },
    /// Join/meet tables of the representatives and the identity checks.
    Lattice {
        model: String,
        #[arg(long)]
        rays: bool,
    },
    /// Evaluate a term of the realification on the representatives.
    Realify {
        model: String,
        #[arg(long)]
        expr: String,
    },
    /// Search a refinement witness for an instance file.
    Refine { model: String, instance: PathBuf },
    /// Halving witness for a nonzero element of a simple model.
    Glimm { model: String, element: String },
    /// Run the acceptance suite on the built-in models.
    Selftest,
}

/// Refinement instance: terms for `f'_i`, `f_i`, `g_j`.
#[derive(Deserialize)]
struct Instance {
    f_prime: Vec<String>,
    f: Vec<String>,
    g: Vec<String>,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvariantViolation(_) | Error::ElementModelMismatch { .. } | Error::Term(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Check(e.to_string()),
        }
    }
}

/// A model file, or `builtin:<name>` for a fixture.
fn load_model(spec: &str) -> Result<CuModel, Failure> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return fixtures::by_name(name).ok_or_else(|| Failure::Usage(format!("unknown built-in model {name:?}")));
    }
    let bytes = std::fs::read(spec).map_err(|e| Failure::Usage(format!("{spec}: {e}")))?;
    Ok(CuModel::load(&bytes)?)
}

fn element(m: &CuModel, s: &str) -> Result<Element, Failure> {
    Ok(m.coerce(Element::parse(s)?)?)
}

fn common_params(r: RunReport, c: &Common) -> RunReport {
    r.param("trials", c.trials).param("denominator_bound", c.denominator_bound).param("force", c.force)
}

fn run(cli: &Cli) -> Result<RunReport, Failure> {
    let c = &cli.common;
    Ok(match &cli.command {
        Command::Validate { model } => {
            let m = load_model(model)?;
            let cfg = SampleConfig { trials: c.trials, seed: c.seed, ..SampleConfig::default() };
            let reports = axioms::check_all(&m, &cfg, c.force)?;
            let mut r = common_params(RunReport::new("validate", Some(&m), c.seed), c);
            r.checks = reports
                .iter()
                .map(|a| {
                    NamedCheck::new(
                        format!("{:?}", a.axiom),
                        a.passed(),
                        format!("{:?} {:?}", a.status, a.counterexample),
                    )
                })
                .collect();
            r.witnesses = serde_json::to_value(&reports).unwrap();
            r
        }
        Command::Cone { model } => {
            let m = load_model(model)?;
            let cone = FunctionalCone::compute(&m, c.force)?;
            let mut r = common_params(RunReport::new("cone", Some(&m), c.seed), c);
            r.checks.push(NamedCheck::new(
                "representatives",
                true,
                format!("{} ideals, {} representatives", cone.ideals.len(), cone.len()),
            ));
            r.witnesses = json!({
                "ideals": cone.ideals,
                "representatives": cone.representatives.iter().map(|rep| json!({
                    "ideal": rep.ideal,
                    "ray": rep.ray,
                    "functional": rep.functional.to_string_short(),
                })).collect::<Vec<_>>(),
            });
            r
        }
        Command::Compare { model, s, t, depth } => {
            let m = load_model(model)?;
            let (s, t) = (element(&m, s)?, element(&m, t)?);
            let cone = FunctionalCone::compute(&m, c.force)?;
            let lp = cone.compare_hat_lp(&s, &t);
            let mn = cone::compare_hat_mn(&m, &s, &t, *depth)?;
            let mut r = common_params(RunReport::new("compare", Some(&m), c.seed), c).param("depth", depth);
            r.checks.push(NamedCheck::new("oracles_agree", lp == mn.holds, format!("lp {lp}, mn {}", mn.holds)));
            r.witnesses = json!({
                "s": s, "t": t,
                "verdict": lp,
                "lp": { "holds": lp, "separating": cone.separating(&s, &t).map(|i| cone.representatives[i].functional.to_string_short()) },
                "mn": mn,
            });
            r
        }
        Command::Lattice { model, rays } => {
            let m = load_model(model)?;
            let cone = FunctionalCone::compute(&m, c.force)?;
            let fs: Vec<_> = if *rays {
                cone.functionals().cloned().collect()
            } else {
                cone.ideals.iter().map(|i| cone::Functional::of_ideal(&m, i)).collect()
            };
            let mut joins = Vec::new();
            let mut meets = Vec::new();
            for a in &fs {
                let mut jr = Vec::new();
                let mut mr = Vec::new();
                for b in &fs {
                    jr.push(lattice::join(&m, a, b)?.to_string_short());
                    mr.push(lattice::meet(&m, a, b)?.to_string_short());
                }
                joins.push(jr);
                meets.push(mr);
            }
            let mut r = common_params(RunReport::new("lattice", Some(&m), c.seed), c).param("rays", rays);
            let mut failures = std::collections::BTreeMap::<&str, (usize, Option<String>)>::new();
            let mut triples = 0;
            for a in &fs {
                for b in &fs {
                    for d in &fs {
                        triples += 1;
                        for id in lattice::check_lattice_identities(&m, a, b, d)? {
                            let e = failures.entry(id.name).or_insert((0, None));
                            if !id.pass {
                                e.0 += 1;
                                e.1.get_or_insert_with(|| {
                                    format!("{} {} {}", a.to_string_short(), b.to_string_short(), d.to_string_short())
                                });
                            }
                        }
                    }
                }
            }
            r.checks = failures
                .into_iter()
                .map(|(name, (n, w))| {
                    NamedCheck::new(name, n == 0, format!("{n} of {triples} triples fail {}", w.unwrap_or_default()))
                })
                .collect();
            r.witnesses = json!({
                "functionals": fs.iter().map(|f| f.to_string_short()).collect::<Vec<_>>(),
                "join": joins,
                "meet": meets,
            });
            r
        }
        Command::Realify { model, expr } => {
            let m = load_model(model)?;
            let ctx = RealContext::new(m, c.force)?;
            let t = term::parse(expr)?;
            let v = term::evaluate(&ctx, &t)?;
            let mut r = common_params(RunReport::new("realify", Some(&ctx.model), c.seed), c).param("expr", expr);
            r.checks.push(NamedCheck::new("evaluated", true, t.to_string()));
            r.witnesses = json!({
                "term": t,
                "values": ctx.cone.representatives.iter().zip(&v.values).map(|(rep, x)| json!({
                    "functional": rep.functional.to_string_short(),
                    "value": x,
                })).collect::<Vec<_>>(),
            });
            r
        }
        Command::Refine { model, instance } => {
            let m = load_model(model)?;
            let text = std::fs::read_to_string(instance)
                .map_err(|e| Failure::Usage(format!("{}: {e}", instance.display())))?;
            let inst: Instance =
                serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", instance.display())))?;
            let ctx = RealContext::new(m, c.force)?;
            let ev = |ts: &[String]| {
                ts.iter().map(|s| term::eval_str(&ctx, s)).collect::<cu_lattice::error::Result<Vec<_>>>()
            };
            let (f1, f, g) = (ev(&inst.f_prime)?, ev(&inst.f)?, ev(&inst.g)?);
            let mut r = common_params(RunReport::new("refine", Some(&ctx.model), c.seed), c);
            match refinement_witness(&ctx, &f1, &f, &g, c.denominator_bound) {
                Ok(w) => {
                    r.checks = verify_refinement(&f1, &f, &g, &w.h, &ctx.zero());
                    r.witnesses = json!({ "status": "found", "nodes": w.nodes, "h": w.h });
                }
                Err(e @ (Error::GridExhausted(_) | Error::SearchBoundExceeded(_))) => {
                    let status =
                        if matches!(e, Error::GridExhausted(_)) { "grid_exhausted" } else { "search_bound_exceeded" };
                    r.checks.push(NamedCheck::new("witness_found", false, e.to_string()));
                    r.witnesses = json!({ "status": status });
                }
                Err(e) => return Err(e.into()),
            }
            r
        }
        Command::Glimm { model, element: x } => {
            let m = load_model(model)?;
            let x = element(&m, x)?;
            let h = halving::halving(&m, &x)?;
            let mut r = common_params(RunReport::new("glimm", Some(&m), c.seed), c);
            r.checks.push(NamedCheck::new("halving", true, format!("x = {x}")));
            r.witnesses = serde_json::to_value(&h).unwrap();
            r
        }
        Command::Selftest => {
            let cfg = selftest::Config {
                seed: c.seed,
                trials: c.trials,
                denominator_bound: c.denominator_bound,
                force: c.force,
                ..selftest::Config::default()
            };
            let criteria = selftest::run(&cfg);
            if !c.json {
                print!("{}", selftest::summary(&criteria));
            }
            selftest::report(&cfg, &criteria)
        }
    })
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("CU_LATTICE_THREADS") {
        let n: usize = v.parse().map_err(|_| Failure::Usage(format!("CU_LATTICE_THREADS={v:?} is not a number")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = configure_threads().and_then(|_| run(&cli));
    match result {
        Ok(mut report) => {
            report.elapsed_ms = start.elapsed().as_millis() as u64;
            if cli.common.json {
                println!("{}", report.to_json());
            } else if !matches!(cli.command, Command::Selftest) {
                println!("{}", serde_json::to_string_pretty(&report.witnesses).unwrap());
                for c in &report.checks {
                    eprintln!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
                }
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
    }
}
