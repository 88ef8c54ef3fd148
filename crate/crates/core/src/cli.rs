//! Command-line front end.
//!
//! Exit codes: 0 verdict true, 1 verdict false, 2 input error, 3 a counterexample
//! (a suite violation, or hypotheses that hold with a failing conclusion).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::Tolerance;
use crate::douglas::{douglas_factorize, kframe_sum, sum_range_sqrt_check, two_term_douglas};
use crate::error::{Error, Result};
use crate::frames::{
    atomic_coefficients, atomic_system_check, bessel_check, canonical_dual, frame_check, kframe_bound_bisection_oracle,
    kframe_check, kframe_via_synthesis, reconstruct,
};
use crate::harness::generate::{generate_instance, InstanceSpec, Scenario};
use crate::harness::json::Document;
use crate::harness::suites::{run_all, run_suite, suites, RunOptions, SuiteReport};
use crate::transforms::{
    bessel_image, coisometry_image, invertibility_consequence, mframe_from_kframe, restricted_kframe,
    surjectivity_consequence, surjectivity_equivalence, TransformReport,
};
use crate::unitary::{cyclic_shift_system, generator_from_vector, is_wandering, vector_from_generator, UnitarySystem};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "kframe", version, about = "K-frames over matrix-algebra Hilbert modules")]
pub struct Cli {
    /// Relative tolerance for order and residual decisions.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Relative singular-value cutoff for rank decisions.
    #[arg(long = "rank-tol", global = true, default_value_t = 1e-10)]
    pub rank_tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Trial count, overriding suite defaults.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Input document (JSON); standard input when absent.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bessel, frame or K-frame check of `family` (with `K`).
    Check {
        #[arg(value_enum)]
        what: CheckKind,
    },
    /// All optimal bounds of `family`, with the bisection estimate when `K` is given.
    Bounds,
    /// Canonical dual of `family`.
    Dual,
    /// Reconstruction of `x` from `family` and its canonical dual.
    Reconstruct,
    /// Atomic-system conditions for `family` and `K`, with coefficients for `x` if given.
    Atomic,
    /// Douglas factorization of `t_prime` through `T`.
    Douglas,
    /// R(A) + R(B) against R((AA* + BB*)^1/2).
    SumRange,
    /// Solve A = B1 X + B2 Y.
    Douglas2,
    /// Sum of `family` and `second_family` as K-frames.
    KframeSum,
    /// An operator applied to a K-frame.
    Transform {
        #[arg(value_enum)]
        name: TransformName,
    },
    /// Unitary-system checks; `unitary_system` defaults to cyclic shifts on A^module_n.
    Unitary {
        #[arg(value_enum)]
        what: UnitaryKind,
    },
    /// Run a verification suite, or `all`.
    Suite {
        id: Option<String>,
        /// Replay every positive-order verdict against the sampling oracle.
        #[arg(long)]
        psd_audit: bool,
        /// List suite ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// Emit a generated instance document.
    Generate {
        #[arg(long, value_parser = parse_scenario)]
        scenario: Scenario,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long = "J", default_value_t = 3)]
        j: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Bessel,
    Frame,
    Kframe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TransformName {
    BesselImage,
    Mframe,
    Surjectivity,
    Restricted,
    Coisometry,
    SurjectivityEquivalence,
    Invertibility,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum UnitaryKind {
    Wandering,
    Generator,
    Vector,
}

fn parse_scenario(s: &str) -> std::result::Result<Scenario, String> {
    Scenario::parse(s).ok_or_else(|| {
        let names: Vec<&str> = Scenario::ALL.iter().map(|s| s.name()).collect();
        format!("unknown scenario `{s}`; expected one of {}", names.join(", "))
    })
}

/// What a command produced.
struct Outcome {
    report: Value,
    summary: String,
    exit: i32,
}

impl Outcome {
    fn new(report: impl Serialize, verdict: bool, summary: String) -> Self {
        Outcome {
            report: serde_json::to_value(report).expect("serializable report"),
            summary,
            exit: if verdict { EXIT_TRUE } else { EXIT_FALSE },
        }
    }
}

/// Exit code for an error: failed mathematical preconditions are verdicts, the rest are
/// input problems.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::NotAFrame | Error::NotAtomicSystem { .. } | Error::NotWandering { .. } | Error::Precondition { .. } => {
            EXIT_FALSE
        }
        _ => EXIT_INPUT,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_TRUE };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => match emit(&cli, &outcome) {
            Ok(()) => outcome.exit,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_INPUT
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            if cli.format == Format::Json {
                println!("{}", json!({ "error": e.to_string() }));
            }
            error_exit_code(&e)
        }
    }
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<()> {
    let text = serde_json::to_string_pretty(&outcome.report).expect("serializable");
    if let Some(path) = &cli.output {
        fs::write(path, format!("{text}\n")).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    let body = match cli.format {
        Format::Json if cli.output.is_none() => &text,
        _ => &outcome.summary,
    };
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{body}").and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::Io(format!("stdout: {e}"))),
        _ => Ok(()),
    }
}

fn tolerance(cli: &Cli) -> Result<Tolerance> {
    Tolerance::new(cli.tol, cli.rank_tol)
}

fn read_document(cli: &Cli) -> Result<Document> {
    let text = match &cli.input {
        Some(path) => fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
        None => std::io::read_to_string(std::io::stdin()).map_err(|e| Error::Io(format!("stdin: {e}")))?,
    };
    Document::parse_str(&text)
}

fn bounds_text(b: &Option<crate::frames::FrameBounds>) -> String {
    match b {
        Some(b) => match b.lower {
            Some(c) => format!("C = {c:.6e}, D = {:.6e}", b.upper),
            None => format!("no lower bound (K K* = 0), D = {:.6e}", b.upper),
        },
        None => "absent".to_string(),
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let tol = tolerance(cli)?;
    match &cli.command {
        Command::Suite { id, psd_audit, list } => return suite_command(cli, id.as_deref(), *psd_audit, *list, &tol),
        Command::Generate { scenario, k, n, j } => {
            let spec = InstanceSpec {
                seed: cli.seed,
                k: *k,
                n: *n,
                j: *j,
                scenario: *scenario,
            };
            let doc = generate_instance(&spec, &tol)?.to_document(&spec);
            let report = doc.to_value();
            let summary = serde_json::to_string_pretty(&report).expect("serializable");
            return Ok(Outcome {
                report,
                summary,
                exit: EXIT_TRUE,
            });
        }
        _ => {}
    }

    let doc = read_document(cli)?;
    match &cli.command {
        Command::Check { what } => {
            let f = doc.family("family")?;
            let (bounds, label) = match what {
                CheckKind::Bessel => (Some(bessel_check(&f, &tol)?), "Bessel"),
                CheckKind::Frame => (frame_check(&f, &tol)?, "frame"),
                CheckKind::Kframe => (kframe_check(&f, &doc.operator("K")?, &tol)?, "K-frame"),
            };
            let verdict = bounds.is_some();
            let summary = format!("{label}: {} ({})", verdict, bounds_text(&bounds));
            Ok(Outcome::new(json!({ "verdict": verdict, "bounds": bounds }), verdict, summary))
        }
        Command::Bounds => {
            let f = doc.family("family")?;
            let bessel = bessel_check(&f, &tol)?;
            let frame = frame_check(&f, &tol)?;
            let mut report = json!({ "bessel": bessel, "frame": frame });
            let mut summary = format!("D_opt = {:.6e}; frame: {}", bessel.upper, bounds_text(&frame));
            if let Some(k) = doc.optional_operator("K")? {
                let kb = kframe_check(&f, &k, &tol)?;
                let oracle = match kb {
                    Some(b) if b.lower.is_some() => Some(kframe_bound_bisection_oracle(&f, &k, &tol)?),
                    _ => None,
                };
                report["kframe"] = json!(kb);
                report["bisection_lower"] = json!(oracle);
                summary.push_str(&format!("; K-frame: {}", bounds_text(&kb)));
                if let Some(o) = oracle {
                    summary.push_str(&format!(" (bisection {o:.6e})"));
                }
            }
            Ok(Outcome::new(report, true, summary))
        }
        Command::Dual => {
            let f = doc.family("family")?;
            let dual = canonical_dual(&f, &tol)?;
            let summary = format!("canonical dual with {} elements; bounds {}", dual.len(), bounds_text(&frame_check(&dual, &tol)?));
            let mut out = Document::new(f.space());
            out.insert("family", &dual);
            Ok(Outcome::new(out.to_value(), true, summary))
        }
        Command::Reconstruct => {
            let f = doc.family("family")?;
            let x = doc.element("x")?;
            let r = reconstruct(&f, &x, &tol)?;
            let ok = r.relative_error <= tol.rel_tol && r.dual_side_relative_error <= tol.rel_tol;
            let summary = format!(
                "relative error {:.3e} (dual side {:.3e})",
                r.relative_error, r.dual_side_relative_error
            );
            Ok(Outcome::new(&r, ok, summary))
        }
        Command::Atomic => {
            let f = doc.family("family")?;
            let k = doc.operator("K")?;
            let report = atomic_system_check(&f, &k, &tol)?;
            let via_l = kframe_via_synthesis(&f, &k, &tol)?;
            let mut value = json!({ "conditions": report, "synthesis_characterization": via_l });
            let mut summary = format!(
                "atomic {} / norm inequality {} / factorization {}",
                report.atomic, report.norm_inequality, report.factorization
            );
            if report.atomic && doc.has("x") {
                let dec = atomic_coefficients(&f, &k, &doc.element("x")?, &tol)?;
                summary.push_str(&format!("; coefficients with C = {:.6e}", dec.bound));
                value["decomposition"] = json!(dec);
            }
            Ok(Outcome::new(value, report.atomic, summary))
        }
        Command::Douglas => {
            let r = douglas_factorize(&doc.operator("t_prime")?, &doc.operator("T")?, &tol)?;
            let summary = format!(
                "R(T′) ⊆ R(T): {}; verdicts {:?}; λ_min = {}",
                r.inclusion_holds,
                r.condition_verdicts,
                r.lambda_min.map_or("-".into(), |l| format!("{l:.6e}"))
            );
            Ok(Outcome::new(&r, r.inclusion_holds, summary))
        }
        Command::SumRange => {
            let r = sum_range_sqrt_check(&doc.operator("A")?, &doc.operator("B")?, &tol)?;
            let summary = format!("identity holds: {} (projector distance {:.3e})", r.holds, r.projector_distance);
            Ok(Outcome::new(r, r.holds, summary))
        }
        Command::Douglas2 => {
            let r = two_term_douglas(&doc.operator("A")?, &doc.operator("B1")?, &doc.operator("B2")?, &tol)?;
            let summary = format!("solvable: {}; verdicts {:?}; residual {:.3e}", r.verdicts[0], r.verdicts, r.residual);
            Ok(Outcome::new(&r, r.verdicts[0], summary))
        }
        Command::KframeSum => {
            let r = kframe_sum(&doc.family("family")?, &doc.family("second_family")?, &doc.operator("K")?, &tol)?;
            let summary = format!(
                "hypotheses {}; sum is a K-frame with bound ≥ 1/λ: {} ({})",
                crate::hypothesis::all_hold(&r.hypotheses),
                r.conclusion,
                bounds_text(&r.bounds)
            );
            Ok(Outcome::new(&r, r.conclusion, summary))
        }
        Command::Transform { name } => transform_command(&doc, *name, &tol),
        Command::Unitary { what } => unitary_command(&doc, *what, &tol),
        Command::Suite { .. } | Command::Generate { .. } => unreachable!("handled above"),
    }
}

fn transform_outcome(r: TransformReport) -> Outcome {
    let exit = if r.is_violation() {
        EXIT_VIOLATION
    } else if r.verdict {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    };
    let failed: Vec<&str> = r.hypothesis_log.iter().filter(|h| !h.holds).map(|h| h.name.as_str()).collect();
    let mut summary = if r.hypotheses_hold {
        format!("hypotheses hold; conclusion {}", r.conclusion_holds)
    } else {
        format!("hypotheses fail: {}", failed.join(", "))
    };
    if let Some(b) = r.theorem_bound {
        summary.push_str(&format!("; argument bound {b:.6e}"));
    }
    if let Some(alt) = &r.alternative {
        summary.push_str(&format!("; under reading `{}`: {}", alt.reading, alt.holds));
    }
    Outcome {
        report: serde_json::to_value(&r).expect("serializable"),
        summary,
        exit,
    }
}

fn transform_command(doc: &Document, name: TransformName, tol: &Tolerance) -> Result<Outcome> {
    let f = doc.family("family")?;
    if name == TransformName::BesselImage {
        let r = bessel_image(&f, &doc.operator("M")?, tol)?;
        let summary = format!("optimal bound {:.6e} ≤ D‖M‖² = {:.6e}: {}", r.bounds.upper, r.certified_bound, r.holds);
        return Ok(Outcome {
            exit: if r.holds { EXIT_TRUE } else { EXIT_VIOLATION },
            report: serde_json::to_value(&r).expect("serializable"),
            summary,
        });
    }
    let k = doc.operator("K")?;
    let r = match name {
        TransformName::Mframe => mframe_from_kframe(&f, &k, &doc.operator("M")?, tol)?,
        TransformName::Surjectivity => surjectivity_consequence(&f, &k, &doc.operator("T")?, tol)?,
        TransformName::Restricted => restricted_kframe(&f, &k, &doc.operator("T")?, tol)?,
        TransformName::Coisometry => coisometry_image(&f, &k, &doc.operator("T")?, tol)?,
        TransformName::SurjectivityEquivalence => surjectivity_equivalence(&f, &k, &doc.operator("T")?, tol)?,
        TransformName::Invertibility => invertibility_consequence(&f, &k, &doc.operator("T")?, tol)?,
        TransformName::BesselImage => unreachable!("handled above"),
    };
    Ok(transform_outcome(r))
}

fn system(doc: &Document, tol: &Tolerance) -> Result<UnitarySystem> {
    if doc.has("unitary_system") {
        doc.unitary_system("unitary_system", tol)
    } else {
        cyclic_shift_system(doc.space().n(), doc.space().k())
    }
}

fn unitary_command(doc: &Document, what: UnitaryKind, tol: &Tolerance) -> Result<Outcome> {
    let u = system(doc, tol)?;
    let psi = doc.element("psi")?;
    match what {
        UnitaryKind::Wandering => {
            let r = is_wandering(&u, &psi, tol)?;
            let summary = format!("wandering: {} (Gram residual {:.3e})", r.holds, r.gram_residual);
            Ok(Outcome::new(r, r.holds, summary))
        }
        UnitaryKind::Generator => {
            let r = generator_from_vector(&u, &psi, &doc.element("eta")?, &doc.operator("K")?, tol)?;
            let verdict = r.eta_bounds.is_some();
            let summary = format!(
                "K-frame vector: {verdict}; ‖Aψ - η‖ = {:.3e}; commutant residual {:.3e}; R(K) ⊆ R(A): {}",
                r.vector_residual, r.commutant_residual, r.range_inclusion_holds
            );
            Ok(Outcome::new(&r, verdict, summary))
        }
        UnitaryKind::Vector => {
            let (eta, bounds) = vector_from_generator(&u, &psi, &doc.operator("A")?, &doc.operator("K")?, tol)?;
            let verdict = bounds.is_some();
            let summary = format!("η = Aψ is a K-frame vector: {verdict} ({})", bounds_text(&bounds));
            Ok(Outcome::new(json!({ "eta": eta, "bounds": bounds }), verdict, summary))
        }
    }
}

fn suite_line(r: &SuiteReport) -> String {
    format!(
        "{:<26} {:>5} trials  {:>5} satisfying  {:>3} violations  max residual {:.2e}  {:>7.2}s  {}",
        r.suite,
        r.trials,
        r.satisfying,
        r.violations,
        r.max_residual,
        r.wall_time.as_secs_f64(),
        if r.passed { "PASS" } else { "FAIL" }
    )
}

fn suite_command(cli: &Cli, id: Option<&str>, psd_audit: bool, list: bool, tol: &Tolerance) -> Result<Outcome> {
    if list {
        let ids: Vec<Value> = suites()
            .iter()
            .map(|s| json!({ "id": s.id, "kind": s.kind, "statement": s.statement }))
            .collect();
        let summary = suites().iter().map(|s| format!("{:<26} {}", s.id, s.statement)).collect::<Vec<_>>().join("\n");
        return Ok(Outcome {
            report: Value::Array(ids),
            summary,
            exit: EXIT_TRUE,
        });
    }
    let id = id.ok_or_else(|| Error::UnknownSuite("(none given; use --list)".into()))?;
    let opts = RunOptions {
        seed: cli.seed,
        trials: cli.trials,
        psd_audit,
    };
    if id == "all" {
        let summary = run_all(&opts, tol);
        let mut lines: Vec<String> = summary.suites.iter().map(suite_line).collect();
        let total: f64 = summary.suites.iter().map(|r| r.wall_time.as_secs_f64()).sum();
        lines.push(format!("total violations {}  wall time {total:.2}s", summary.violations));
        for r in summary.suites.iter().filter(|r| r.first_violation.is_some()) {
            let v = r.first_violation.as_ref().expect("filtered");
            lines.push(format!("{} first violation (trial {}): {}", r.suite, v.trial, v.message));
        }
        return Ok(Outcome {
            exit: if summary.passed { EXIT_TRUE } else { EXIT_VIOLATION },
            report: serde_json::to_value(&summary).expect("serializable"),
            summary: lines.join("\n"),
        });
    }
    let r = run_suite(id, &opts, tol)?;
    let mut text = suite_line(&r);
    if let Some(v) = &r.first_violation {
        text.push_str(&format!("\nfirst violation (trial {}): {}", v.trial, v.message));
    }
    if let Some(a) = &r.psd_audit {
        text.push_str(&format!("\npsd audit: {} decisions, {} disagreements", a.decisions, a.disagreements));
    }
    Ok(Outcome {
        exit: if r.passed { EXIT_TRUE } else { EXIT_VIOLATION },
        report: serde_json::to_value(&r).expect("serializable"),
        summary: text,
    })
}
