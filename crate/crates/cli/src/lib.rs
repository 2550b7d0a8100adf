//! Front end for `monogen-core`: argument parsing, input files, rendering
//! and the fixture corpus runner.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use monogen_core::artin::{decompose, fiber_monogenic, FpAlgebra};
use monogen_core::algebra::COEFFICIENT_WARN_BITS;
use monogen_core::config::OutputMode;
use monogen_core::indexform::index_form;
use monogen_core::localmono::classify;
use monogen_core::search::search_monogenerators;
use monogen_core::twisted::{base_z_twisted_note, curve_twisted_constraint};
use monogen_core::{BaseRing, Config, Error, StructureAlgebra};
use serde::Serialize;
use serde_json::json;

pub mod corpus;
pub mod input;
mod render;

pub use input::parse_input;

#[derive(Debug, Parser)]
#[command(name = "monogen", version, about = "Index forms and monogenicity of finite free ring extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate an algebra file.
    Validate {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the sign-normalized index form.
    IndexForm {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Global, Zariski-local and geometric monogenicity over Z.
    Classify {
        path: PathBuf,
        #[arg(long)]
        height: Option<u64>,
        #[arg(long)]
        artin_bound: Option<u64>,
        #[arg(long)]
        json: bool,
        /// Record an externally established non-monogenicity result.
        #[arg(long)]
        cited_not_monogenic: bool,
    },
    /// Decompose the fiber over a prime into local Artinian factors.
    Artin {
        path: PathBuf,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        json: bool,
    },
    /// Search for monogenerators with coordinates bounded by the height.
    Search {
        path: PathBuf,
        #[arg(long)]
        height: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Divisibility constraint for twisted monogenic covers of curves.
    TwistedCurve {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        genus_source: u32,
        #[arg(long)]
        genus_target: u32,
        #[arg(long)]
        json: bool,
    },
    /// Run every fixture in the corpus directory against its expected values.
    Corpus {
        #[arg(long, default_value = "corpus")]
        dir: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

impl Command {
    fn mode(&self) -> OutputMode {
        let json = match self {
            Command::Validate { json, .. }
            | Command::IndexForm { json, .. }
            | Command::Classify { json, .. }
            | Command::Artin { json, .. }
            | Command::Search { json, .. }
            | Command::TwistedCurve { json, .. }
            | Command::Corpus { json, .. } => *json,
        };
        if json {
            OutputMode::Json
        } else {
            OutputMode::Human
        }
    }
}

/// Short machine-readable name of an error variant.
pub fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Parses an algebra file, warning on stderr about very large coefficients.
fn load(path: &std::path::Path, err: &mut dyn Write) -> Result<StructureAlgebra, Error> {
    let alg = parse_input(path)?;
    let bits = alg.max_coefficient_bits();
    if bits > COEFFICIENT_WARN_BITS {
        let _ = writeln!(err, "warning: coefficients of {bits} bits exceed {COEFFICIENT_WARN_BITS}; expect slow arithmetic");
    }
    Ok(alg)
}

fn require_z(alg: &StructureAlgebra) -> Result<(), Error> {
    if alg.base() == BaseRing::Z {
        Ok(())
    } else {
        Err(Error::NotIntegerBase(alg.base().to_string()))
    }
}

fn execute(cmd: &Command, cfg: &Config, err: &mut dyn Write) -> Result<(String, i32), Error> {
    let json = cfg.output == OutputMode::Json;
    match cmd {
        Command::Validate { path, .. } => {
            let alg = load(path, err)?;
            Ok((
                if json {
                    pretty(&json!({"valid": true, "label": alg.label(), "base": alg.base(), "rank": alg.rank()}))
                } else {
                    format!("valid: {} (rank {} over {})\n", alg.label(), alg.rank(), alg.base())
                },
                0,
            ))
        }
        Command::IndexForm { path, .. } => {
            let alg = load(path, err)?;
            let form = index_form(&alg)?;
            let j = form.to_json();
            Ok((
                if json {
                    pretty(&j)
                } else {
                    format!("i = {}\n{}\n", j.text, serde_json::to_string(&j.form).expect("serializable"))
                },
                0,
            ))
        }
        Command::Classify { path, cited_not_monogenic, .. } => {
            let alg = load(path, err)?;
            require_z(&alg)?;
            let mut report = classify(&alg, cfg)?;
            base_z_twisted_note(&mut report, *cited_not_monogenic);
            Ok((if json { pretty(&report) } else { render::report(&report) }, 0))
        }
        Command::Artin { path, prime, .. } => {
            let alg = load(path, err)?;
            let fp = match alg.base() {
                BaseRing::Fp { p } if p == *prime => FpAlgebra::new(&alg)?,
                BaseRing::Z => FpAlgebra::reduce(&alg, *prime)?,
                other => return Err(Error::NotIntegerBase(other.to_string())),
            };
            let dec = decompose(&fp)?;
            Ok((
                if json {
                    let factors: Vec<_> = dec
                        .factors
                        .iter()
                        .map(|f| json!({"dim": f.dim, "f": f.f, "t": f.t, "nilpotency_index": f.nilpotency_index}))
                        .collect();
                    pretty(&json!({"p": dec.p, "factors": factors, "fiber_monogenic": fiber_monogenic(&dec)}))
                } else {
                    render::artin(alg.label(), &dec)
                },
                0,
            ))
        }
        Command::Search { path, .. } => {
            let alg = load(path, err)?;
            let r = search_monogenerators(&alg, cfg.height, cfg)?;
            Ok((if json { pretty(&r) } else { render::search(alg.label(), &r) }, 0))
        }
        Command::TwistedCurve { degree, genus_source, genus_target, .. } => {
            let v = curve_twisted_constraint(*degree, *genus_source, *genus_target)?;
            Ok((if json { pretty(&v) } else { render::twisted(&v) }, 0))
        }
        Command::Corpus { dir, .. } => {
            let results = corpus::run_corpus(dir, cfg)?;
            let code = if results.iter().all(|r| r.passed) { 0 } else { 1 };
            Ok((if json { pretty(&results) } else { corpus::table(&results) }, code))
        }
    }
}

/// Runs the command line `argv` (including the program name), writing to
/// `out` and `err`. Returns the process exit code: 0 on success, 1 on a
/// computation error or failing corpus, 2 on a usage error.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let mut cfg = Config::from_env();
    cfg.output = cli.command.mode();
    match &cli.command {
        Command::Classify { height, artin_bound, .. } => {
            if let Some(h) = height {
                cfg.height = *h;
            }
            if let Some(b) = artin_bound {
                cfg.artin_bound = *b;
            }
        }
        Command::Search { height: Some(h), .. } => cfg.height = *h,
        _ => {}
    }
    match execute(&cli.command, &cfg, err) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            if cfg.output == OutputMode::Json {
                let body = json!({"error": {"kind": error_kind(&e), "message": e.to_string()}});
                let _ = writeln!(err, "{body}");
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            1
        }
    }
}
