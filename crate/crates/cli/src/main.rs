//! `twistknot`: invariants, obstruction checks and casework sweeps for the
//! twist families 7_6, 10_58 and 8_12.
//!
//! Exit codes: 0 when every check passes, 1 when a verification fails,
//! 2 on usage or configuration errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use twistknot::casework::{
    classify_exceptions, render_text, sweep, verify_paper_case, CaseContext, CheckStatus, Registry, SweepConfig,
};
use twistknot::error::Error;
use twistknot::family::{FamilySpec, SignCase, TwistVector};
use twistknot::oracle::{jones_from_pd, DiagramTemplate, PdCode};
use twistknot::{family, oracle};

#[derive(Parser, Debug)]
#[command(
    name = "twistknot",
    version,
    about = "Jones/Alexander invariants and cosmetic-surgery casework for twist families"
)]
struct Cli {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true, env = "TWISTKNOT_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jones polynomial and its derivatives at t = 1.
    Jones {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Compute from a PD code file by the bracket state sum instead.
        #[arg(long, conflicts_with_all = ["family", "signs", "twists"])]
        pd: Option<PathBuf>,
        #[arg(long, default_value_t = oracle::DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        json: bool,
    },
    /// Alexander and Conway polynomials.
    Alexander {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        json: bool,
    },
    /// Obstruction verdict for one instance.
    Check {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Also evaluate V at a primitive fifth root of unity.
        #[arg(long)]
        root5: bool,
        #[arg(long)]
        json: bool,
    },
    /// Sweep every sign case of a family over the box [1..range]^k.
    Sweep {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 4)]
        range: u32,
        #[arg(long)]
        root5: bool,
        /// Oracle spot checks per sign case.
        #[arg(long, default_value_t = 2)]
        oracle_samples: usize,
        #[arg(long, default_value_t = 16)]
        budget: usize,
        /// Write the JSON report here; the table goes to stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare the registered case formulas with the symbolic engine.
    VerifyPaper {
        #[arg(long, required_unless_present = "registry")]
        family: Option<String>,
        /// Check a registry file instead of the built-in one.
        #[arg(long, conflicts_with = "family")]
        registry: Option<PathBuf>,
        /// Restrict to one sign case.
        #[arg(long, allow_hyphen_values = true)]
        signs: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Bracket state sum on the expanded diagram against the family engine.
    Crosscheck {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value_t = oracle::DEFAULT_BUDGET)]
        budget: usize,
        /// Print the expanded PD code.
        #[arg(long)]
        show_pd: bool,
    },
}

#[derive(Args, Debug)]
struct InstanceArgs {
    #[arg(long)]
    family: Option<String>,
    /// One of `+`/`-` per band, e.g. `++-+-`.
    #[arg(long, allow_hyphen_values = true)]
    signs: Option<String>,
    /// Positive twist counts, e.g. `1,2,1,1,1`.
    #[arg(long)]
    twists: Option<String>,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Verification(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

impl InstanceArgs {
    fn resolve(&self) -> Result<(FamilySpec, TwistVector), Failure> {
        let (Some(family), Some(signs), Some(twists)) = (&self.family, &self.signs, &self.twists) else {
            return Err(usage("--family, --signs and --twists are required"));
        };
        let spec = FamilySpec::builtin(family, signs).map_err(usage)?;
        let n: TwistVector = twists.parse().map_err(usage)?;
        spec.check_twists(&n).map_err(usage)?;
        Ok((spec, n))
    }
}

fn write_output(path: &Option<PathBuf>, value: &serde_json::Value) -> Result<(), Failure> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(value).expect("report serializes");
        fs::write(p, text + "\n").map_err(|e| usage(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

fn run(cli: Cli) -> Outcome {
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err(usage("worker count must be positive"));
        }
        // fails only if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
    }
    match cli.command {
        Command::Jones { inst, pd, budget, json } => {
            let v = match pd {
                Some(path) => {
                    let pd = PdCode::load(&path).map_err(usage)?;
                    jones_from_pd(&pd, budget)?
                }
                None => {
                    let (spec, n) = inst.resolve()?;
                    family::assemble_jones(&spec, &n)?
                }
            };
            let derivs = v.derivs_at_one(4);
            if json {
                print_json(&json!({
                    "jones": v.to_string(),
                    "derivs": derivs.iter().map(ToString::to_string).collect::<Vec<_>>(),
                }));
            } else {
                println!("{v}");
                for (k, d) in derivs.iter().enumerate() {
                    println!("V{}(1) = {d}", "'".repeat(k));
                }
            }
            Ok(true)
        }
        Command::Alexander { inst, json } => {
            let (spec, n) = inst.resolve()?;
            let ctx = CaseContext::new(spec)?;
            let delta = twistknot::seifert::alexander_poly(&ctx.seifert, &n)?;
            let conway = twistknot::seifert::conway_poly(&ctx.seifert, &n)?;
            let a: Vec<String> = (1..=3).map(|i| conway.a(i).to_string()).collect();
            if json {
                print_json(&json!({
                    "alexander": delta.to_string(),
                    "conway": conway.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "a2": a[0], "a4": a[1], "a6": a[2],
                }));
            } else {
                println!("alexander {delta}");
                println!("conway    {}", conway_text(conway.coeffs()));
                println!("a2 = {}  a4 = {}  a6 = {}", a[0], a[1], a[2]);
            }
            Ok(true)
        }
        Command::Check { inst, root5, json } => {
            let (spec, n) = inst.resolve()?;
            let ctx = CaseContext::new(spec)?;
            let verdict = ctx.evaluate(&n, root5)?.verdict;
            if json {
                print_json(&serde_json::to_value(&verdict).expect("verdict serializes"));
            } else {
                println!("{}  {}", verdict.instance, verdict.classification);
            }
            Ok(true)
        }
        Command::Sweep {
            family,
            range,
            root5,
            oracle_samples,
            budget,
            output,
        } => {
            twistknot::family::builtin(&family).map_err(usage)?;
            if range == 0 {
                return Err(usage("--range must be at least 1"));
            }
            let cfg = SweepConfig {
                family,
                range,
                use_root5: root5,
                oracle_samples,
                oracle_budget: budget,
            };
            let reports = sweep(&cfg)?;
            print!("{}", render_text(&reports));
            let (exceptions, unmatched) = match classify_exceptions(&reports) {
                Ok(ex) => (ex, None),
                Err(e) => (Vec::new(), Some(e.to_string())),
            };
            for e in &exceptions {
                println!(
                    "exception {} {} {}: {} instances, jones trivial {}, conway trivial {}",
                    e.family,
                    e.case,
                    e.pattern,
                    e.instances.len(),
                    e.jones_trivial,
                    e.conway_trivial
                );
            }
            if let Some(msg) = &unmatched {
                eprintln!("error: {msg}");
            }
            write_output(
                &output,
                &json!({ "config": cfg, "reports": reports, "exceptions": exceptions, "unmatched": unmatched }),
            )?;
            let ok = unmatched.is_none()
                && reports
                    .iter()
                    .all(|r| r.is_consistent() && r.properties_hold() && r.formulas_pass() && r.oracle.failed == 0)
                && exceptions.iter().all(|e| e.jones_trivial && e.conway_trivial);
            Ok(ok)
        }
        Command::VerifyPaper {
            family,
            registry,
            signs,
            output,
        } => {
            let reg = match (&family, &registry) {
                (_, Some(path)) => Registry::load(path).map_err(usage)?,
                (Some(f), None) => Registry::builtin(f).map_err(usage)?.clone(),
                (None, None) => return Err(usage("--family or --registry is required")),
            };
            let checks = match signs {
                Some(s) => {
                    let case: SignCase = s.parse().map_err(usage)?;
                    if reg.block_for(&case).is_none() {
                        return Err(usage(format!("no formulas registered for {} {case}", reg.family)));
                    }
                    match registry {
                        Some(_) => reg
                            .verify()?
                            .into_iter()
                            .filter(|c| c.case == case.to_string())
                            .collect(),
                        None => verify_paper_case(&reg.family, &case)?,
                    }
                }
                None => reg.verify()?,
            };
            for c in &checks {
                let tag = match c.status {
                    CheckStatus::Pass => "PASS",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::Erratum => "ERRATUM",
                };
                println!(
                    "{tag:<7} {} {} line {:<4} {}  [{}]",
                    c.family, c.case, c.line, c.statement, c.detail
                );
            }
            let failed = checks.iter().filter(|c| !c.status.is_ok()).count();
            println!("{} checks, {} failed", checks.len(), failed);
            write_output(&output, &serde_json::to_value(&checks).expect("checks serialize"))?;
            Ok(failed == 0)
        }
        Command::Crosscheck { inst, budget, show_pd } => {
            let (spec, n) = inst.resolve()?;
            let tpl = DiagramTemplate::builtin(spec.name()).map_err(usage)?;
            let pd = oracle::expand_twists(tpl, &spec, &n)?;
            if show_pd {
                print!("{pd}");
            }
            let from_pd = jones_from_pd(&pd, budget).map_err(|e| match e {
                Error::CrossingBudget { .. } => usage(e),
                e => e.into(),
            })?;
            let engine = family::assemble_jones(&spec, &n)?;
            println!("crossings {}", pd.len());
            println!("oracle {from_pd}");
            println!("engine {engine}");
            let ok = from_pd == engine;
            println!("{}", if ok { "agree" } else { "DISAGREE" });
            Ok(ok)
        }
    }
}

fn conway_text<C: std::fmt::Display>(coeffs: &[C]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        let c = c.to_string();
        if c == "0" {
            continue;
        }
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, c),
        };
        if out.is_empty() {
            out.push_str(if neg { "-" } else { "" });
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match (i, mag.as_str()) {
            (0, _) => out.push_str(&mag),
            (_, "1") => out.push_str(&format!("z^{}", 2 * i)),
            _ => out.push_str(&format!("{mag}z^{}", 2 * i)),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
