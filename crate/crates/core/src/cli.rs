//! The `lcl` command line.
//!
//! Exit codes: 0 positive verdict, 1 definitive negative, 2 undecided within
//! the bounds, 3 bad input.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::Error;
use crate::kernel::{normalize, Normalization, Term, TriBool};
use crate::logic::{
    check_proof, entails, Entailment, Formula, HilbertProof, LineStatus, ProofVerdict,
};
use crate::semantics::{parse_model_file, satisfies, Environment};
use crate::types::{infer_type, Basis};
use crate::Bounds;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "lcl", version, about = "Typed combinatory logic toolkit")]
pub struct Cli {
    /// Contraction steps allowed per normalisation.
    #[arg(long, global = true, env = "LCL_FUEL")]
    pub fuel: Option<u64>,
    /// Fresh arguments tried when comparing terms extensionally.
    #[arg(long, global = true, env = "LCL_ARITY")]
    pub arity: Option<usize>,
    /// Saturation rounds for `entail`.
    #[arg(long, global = true, env = "LCL_DEPTH")]
    pub depth: Option<usize>,
    #[arg(long, global = true, env = "LCL_FORMAT", value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce a term to weak normal form.
    Normalize { term: String },
    /// Principal type of a term under a basis such as "x : a, y : a -> b".
    Infer { basis: String, term: String },
    /// Check a proof file (`-` reads stdin).
    CheckProof { file: PathBuf },
    /// Search for a proof of a goal from a theory file (one formula per line).
    Entail {
        theory: PathBuf,
        goal: String,
        /// Write the proof here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Evaluate a formula in the term model described by a model file.
    ModelSat { model: PathBuf, formula: String },
}

impl Cli {
    /// Bounds from flags and environment, falling back to `base`.
    pub fn bounds_over(&self, base: Bounds) -> Bounds {
        Bounds {
            fuel: self.fuel.unwrap_or(base.fuel),
            arity: self.arity.unwrap_or(base.arity),
            depth: self.depth.unwrap_or(base.depth),
        }
    }
}

/// Parses `args` (program name first) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INPUT
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

/// Formulas of a theory file, one per non-blank line; `#` starts a comment.
pub fn parse_theory(src: &str) -> Result<Vec<Formula>, Error> {
    let mut theory = Vec::new();
    for (n, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        theory.push(Formula::parse(line).map_err(|e| Error::Format {
            line: n + 1,
            message: e.to_string(),
        })?);
    }
    Ok(theory)
}

fn tri_code(v: &TriBool) -> i32 {
    match v {
        TriBool::True => EXIT_OK,
        TriBool::False => EXIT_NEGATIVE,
        TriBool::Unknown(_) => EXIT_UNKNOWN,
    }
}

fn emit_json(out: &mut dyn Write, v: serde_json::Value) -> Result<(), Error> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&v).expect("json values serialize")
    )?;
    Ok(())
}

/// Runs a parsed command.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Error> {
    let bounds = cli.bounds_over(Bounds::default());
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Normalize { term } => {
            let m = Term::parse(term)?;
            let r = normalize(&m, bounds.fuel);
            let (verdict, t, steps, code) = match &r {
                Normalization::NormalForm { term, steps } => ("NormalForm", term, *steps, EXIT_OK),
                Normalization::FuelExhausted { term, steps } => {
                    ("FuelExhausted", term, *steps, EXIT_UNKNOWN)
                }
            };
            if json {
                emit_json(
                    out,
                    json!({"verdict": verdict, "term": t, "steps": steps, "fuel": bounds.fuel}),
                )?;
            } else if code == EXIT_OK {
                writeln!(out, "{t} ({steps} steps)")?;
            } else {
                writeln!(out, "fuel exhausted after {steps} steps: {t}")?;
            }
            Ok(code)
        }
        Command::Infer { basis, term } => {
            let gamma = Basis::parse(basis)?;
            let m = Term::parse(term)?;
            match infer_type(&gamma, &m) {
                Ok(t) => {
                    if json {
                        emit_json(out, json!({"verdict": "Typable", "type": t}))?;
                    } else {
                        writeln!(out, "{t}")?;
                    }
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    if json {
                        emit_json(
                            out,
                            json!({"verdict": "Untypable", "reason": e.to_string()}),
                        )?;
                    } else {
                        writeln!(out, "Untypable: {e}")?;
                    }
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::CheckProof { file } => {
            let p = HilbertProof::parse(&read(file)?)?;
            let report = check_proof(&p, &bounds);
            let code = match report.verdict {
                ProofVerdict::Accepted => EXIT_OK,
                ProofVerdict::Rejected { .. } => EXIT_NEGATIVE,
                ProofVerdict::Inconclusive { .. } => EXIT_UNKNOWN,
            };
            if json {
                emit_json(
                    out,
                    json!({
                        "verdict": report.verdict.label(),
                        "summary": report.verdict.to_string(),
                        "bounds": bounds,
                        "lines": report.lines,
                    }),
                )?;
                return Ok(code);
            }
            writeln!(out, "{}", report.verdict)?;
            for l in &report.lines {
                let status = match &l.status {
                    LineStatus::Ok => "ok".to_string(),
                    LineStatus::Rejected(r) => format!("rejected: {r}"),
                    LineStatus::Unknown(r) => format!("unknown: {r}"),
                };
                write!(out, "  {}. {status}", l.line + 1)?;
                if let Some(eq) = l.side_conditions.as_ref().and_then(|s| s.equality.as_ref()) {
                    write!(out, " [{} = {} : {}]", eq.left, eq.right, eq.verdict)?;
                }
                writeln!(out)?;
            }
            Ok(code)
        }
        Command::Entail {
            theory,
            goal,
            output,
        } => {
            let theory = parse_theory(&read(theory)?)?;
            let goal = Formula::parse(goal)?;
            let result = entails(&theory, &goal, &bounds)?;
            let code = match result {
                Entailment::Proved(_) => EXIT_OK,
                Entailment::Refuted(_) => EXIT_NEGATIVE,
                Entailment::Unknown(_) => EXIT_UNKNOWN,
            };
            if let (Some(path), Entailment::Proved(p)) = (output, &result) {
                std::fs::write(path, p.to_string())?;
            }
            if json {
                let mut v = json!({"verdict": result.label(), "bounds": bounds});
                match &result {
                    Entailment::Proved(p) if output.is_none() => v["proof"] = json!(p.to_string()),
                    Entailment::Proved(_) => {}
                    Entailment::Refuted(c) => v["countervaluation"] = json!(c),
                    Entailment::Unknown(r) => v["reason"] = json!(r),
                }
                emit_json(out, v)?;
                return Ok(code);
            }
            match &result {
                Entailment::Proved(p) => match output {
                    Some(path) => {
                        writeln!(out, "Proved ({} lines) -> {}", p.len(), path.display())?
                    }
                    None => write!(out, "# proved\n{p}")?,
                },
                Entailment::Refuted(c) => writeln!(out, "Refuted {c}")?,
                Entailment::Unknown(r) => writeln!(out, "Unknown ({r})")?,
            }
            Ok(code)
        }
        Command::ModelSat { model, formula } => {
            let file = parse_model_file(&read(model)?, Bounds::default())?;
            let bounds = cli.bounds_over(file.bounds);
            let f = Formula::parse(formula)?;
            let m = crate::semantics::term_model(file.basis, bounds);
            let v = satisfies(&m, &Environment::standard(), &f, &bounds);
            if json {
                emit_json(
                    out,
                    json!({
                        "verdict": v.verdict.label(),
                        "value": v.verdict,
                        "atoms": v.atoms,
                        "bounds": bounds,
                    }),
                )?;
            } else {
                writeln!(out, "{v}")?;
            }
            Ok(tri_code(&v.verdict))
        }
    }
}
