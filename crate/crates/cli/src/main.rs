use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use replica_core::algebraicity::{
    algebraic_hull, check_algebraic, nilpotent_decomposition, SampleConfig, VerdictKind, DEFAULT_MAX_ROUNDS,
};
use replica_core::catalog::{filiform_rep, heisenberg_h, hull_m, model_ln, nilradical_n1, torus_a1, x4};
use replica_core::jordan::jordan_decompose;
use replica_core::liealg::LieSubalgebra;
use replica_core::ratlinalg::rational;
use replica_core::replica::replica;
use replica_core::reproduce::verify_all;
use replica_core::{Error, QMatrix, Rational};

/// Exact Jordan decompositions, replicas and algebraicity checks for matrix
/// Lie algebras over Q. Reads and writes JSON; rationals are strings.
#[derive(Parser)]
#[command(name = "replica", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split a matrix into commuting semisimple and nilpotent parts.
    Jordan {
        /// Matrix JSON file, `-` for stdin.
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Replica algebra g(X) of a matrix.
    Replica {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Refute algebraicity by witness or report closure on samples.
    Check {
        /// Basis JSON file (`{"dim", "basis"}` or a bare list of matrices), `-` for stdin.
        #[arg(long)]
        basis: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Candidate algebraic hull by fixed-point adjunction.
    Hull {
        #[arg(long)]
        basis: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
        max_rounds: usize,
    },
    /// Split a nilpotent algebra into nilpotent and semisimple parts.
    Decompose {
        #[arg(long)]
        basis: PathBuf,
    },
    /// Print one of the built-in examples.
    Catalog {
        name: CatalogName,
        #[command(flatten)]
        params: Params,
    },
    /// Run the reproduction suite and print one outcome per claim.
    VerifyPaper {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct Sampling {
    #[arg(long, default_value_t = SampleConfig::default().samples)]
    samples: usize,
    #[arg(long, default_value_t = SampleConfig::default().bound, allow_hyphen_values = true)]
    bound: i64,
    #[arg(long, default_value_t = SampleConfig::default().seed)]
    seed: u64,
}

impl Sampling {
    fn config(&self) -> Result<SampleConfig, Failure> {
        if self.bound < 0 {
            return Err(Failure::Usage(format!("--bound must be non-negative, got {}", self.bound)));
        }
        Ok(SampleConfig { samples: self.samples, bound: self.bound, seed: self.seed })
    }
}

#[derive(Args)]
struct Params {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    alpha: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    beta: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    a: Option<Rational>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CatalogName {
    #[value(name = "heisenberg4")]
    Heisenberg4,
    #[value(name = "hull-m")]
    HullM,
    #[value(name = "x4")]
    X4,
    #[value(name = "n1")]
    N1,
    #[value(name = "a1")]
    A1,
    #[value(name = "filiform")]
    Filiform,
    #[value(name = "model-ln")]
    ModelLn,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

enum Failure {
    /// Malformed flags or input; exit 2.
    Usage(String),
    /// Well-formed input outside a domain; exit 1 with a JSON error object.
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// Serialized result and whether it counts as success.
struct Outcome {
    json: String,
    ok: bool,
}

fn emit<T: Serialize>(value: &T, ok: bool) -> Result<Outcome, Failure> {
    let json = serde_json::to_string_pretty(value).expect("output types serialize");
    Ok(Outcome { json, ok })
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Usage(format!("invalid {what} JSON: {e}")))
}

fn read_matrix(path: &Path) -> Result<QMatrix, Failure> {
    parse_json(&read_input(path)?, "matrix")
}

/// Accepts a bare list of matrices, or an object with a `basis` list and an
/// optional `dim` / `ambient_dim`.
fn read_algebra(path: &Path) -> Result<LieSubalgebra, Failure> {
    let value: Value = parse_json(&read_input(path)?, "basis")?;
    let (declared, list) = match value {
        Value::Array(_) => (None, value),
        Value::Object(mut map) => {
            let list = map.remove("basis").ok_or_else(|| Failure::Usage("basis JSON has no \"basis\" field".into()))?;
            let dim = map.get("dim").or_else(|| map.get("ambient_dim")).and_then(Value::as_u64);
            (dim.map(|d| d as usize), list)
        }
        _ => return Err(Failure::Usage("basis JSON must be a list or an object".into())),
    };
    let basis: Vec<QMatrix> =
        serde_json::from_value(list).map_err(|e| Failure::Usage(format!("invalid basis matrices: {e}")))?;
    let n = declared
        .or_else(|| basis.first().map(QMatrix::dim))
        .ok_or_else(|| Failure::Usage("an empty basis needs a \"dim\" field".into()))?;
    Ok(LieSubalgebra::from_basis(n, basis)?)
}

fn require<'a>(v: &'a Option<Rational>, flag: &str, name: &str) -> Result<&'a Rational, Failure> {
    v.as_ref().ok_or_else(|| Failure::Usage(format!("catalog {name} needs --{flag}")))
}

fn catalog(name: CatalogName, p: &Params) -> Result<Outcome, Failure> {
    let label = name.to_possible_value().expect("no skipped variants").get_name().to_string();
    let alpha_beta = || -> Result<(&Rational, &Rational), Failure> {
        Ok((require(&p.alpha, "alpha", &label)?, require(&p.beta, "beta", &label)?))
    };
    match name {
        CatalogName::Heisenberg4 => {
            let (al, be) = alpha_beta()?;
            emit(&heisenberg_h(al, be)?, true)
        }
        CatalogName::HullM => {
            let (al, be) = alpha_beta()?;
            emit(&hull_m(al, be)?, true)
        }
        CatalogName::X4 => {
            let (al, be) = alpha_beta()?;
            emit(&x4(al, be)?, true)
        }
        CatalogName::N1 => {
            let (al, be) = alpha_beta()?;
            emit(&nilradical_n1(al, be)?, true)
        }
        CatalogName::A1 => {
            let (al, be) = alpha_beta()?;
            emit(&torus_a1(al, be)?, true)
        }
        CatalogName::Filiform => {
            let (al, be) = alpha_beta()?;
            let a = require(&p.a, "a", &label)?;
            let n = p.n.ok_or_else(|| Failure::Usage("catalog filiform needs --n".into()))?;
            emit(&filiform_rep(n, a, al, be)?, true)
        }
        CatalogName::ModelLn => {
            let n = p.n.ok_or_else(|| Failure::Usage("catalog model-ln needs --n".into()))?;
            emit(&model_ln(n)?, true)
        }
    }
}

fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Jordan { matrix } => emit(&jordan_decompose(&read_matrix(&matrix)?), true),
        Command::Replica { matrix } => emit(&replica(&read_matrix(&matrix)?)?, true),
        Command::Check { basis, sampling } => {
            let verdict = check_algebraic(&read_algebra(&basis)?, &sampling.config()?);
            let ok = verdict.kind != VerdictKind::NotAlgebraic;
            emit(&verdict, ok)
        }
        Command::Hull { basis, sampling, max_rounds } => {
            let report = algebraic_hull(&read_algebra(&basis)?, &sampling.config()?, max_rounds);
            let ok = report.is_valid();
            emit(&report, ok)
        }
        Command::Decompose { basis } => {
            let d = nilpotent_decomposition(&read_algebra(&basis)?)?;
            let ok = d.valid;
            emit(&d, ok)
        }
        Command::Catalog { name, params } => catalog(name, &params),
        Command::VerifyPaper { seed } => {
            let report = verify_all(seed);
            let ok = report.all_passed();
            emit(&report, ok)
        }
    }
}

/// A closed downstream pipe is not an error worth a panic.
fn print_out(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print_out(&out.json);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain(e)) => {
            let obj = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            print_out(&serde_json::to_string_pretty(&obj).expect("plain JSON"));
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
