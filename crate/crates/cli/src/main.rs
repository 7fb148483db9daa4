use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orehopf::action::{certificate_search, inner_faithful_radical, DEFAULT_MAX_DEGREE};
use orehopf::charp::{central_tower, verify_freeness_rank, DEFAULT_K_MAX};
use orehopf::hopf::{find_dual_integral, find_left_integral};
use orehopf::pipeline::{emit_report, run_pipeline, PipelineConfig, ReportFormat};
use orehopf::reduce::{check_transport, reduce_mod_p, structure_constant_ring, PrimeSite};
use orehopf::{parse_spec, ActionSpec, Error, ScalarDomain};

#[derive(Parser)]
#[command(name = "orehopf", version, about = "Hopf actions on Ore towers, reduced modulo primes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an action file and run every validator.
    Validate { file: PathBuf },
    /// Left integrals of the Hopf algebra and of its dual.
    Integral { file: PathBuf },
    /// Central polynomial subring of the tower over F_p.
    Center {
        file: PathBuf,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        kmax: u32,
    },
    /// Reduce the action modulo a prime and re-validate.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        prime: u64,
    },
    /// Inner-faithful radical and a faithfulness certificate.
    Faithful {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        degree: u32,
    },
    /// Full reduction pipeline with a verdict.
    Pipeline {
        file: PathBuf,
        #[arg(long, default_value_t = 5)]
        primes: usize,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value_t = 6)]
        degree: u32,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        kmax: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Inconclusive(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::Syntax { .. }
            | Error::Validation { .. }
            | Error::InvalidDomain(_)
            | Error::NotPrime(_)
            | Error::DenominatorVanishes(_)
            | Error::VariableOutOfLevel { .. }
            | Error::DomainMismatch(..)
            | Error::Unsupported(_) => Failure::Input(e.to_string()),
            other => Failure::Inconclusive(other.to_string()),
        }
    }
}

fn load(file: &PathBuf) -> Result<ActionSpec, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    Ok(parse_spec(&text)?)
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

/// The action over `F_p`: reduced from Q, or taken as is when already over `F_p`.
fn over_prime(spec: &ActionSpec, p: u64) -> Result<ActionSpec, Failure> {
    match **spec.domain() {
        ScalarDomain::Rational => {
            let ring = structure_constant_ring(spec)?;
            Ok(reduce_mod_p(spec, &PrimeSite::new(&ring, p)?)?)
        }
        ScalarDomain::PrimeField(q) if q == p => Ok(spec.clone()),
        _ => Err(Failure::Input(format!("data over {} cannot be taken modulo {p}", spec.domain()))),
    }
}

fn vector_json(v: &[orehopf::Scalar]) -> Value {
    json!(v.iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Validate { file } => {
            let spec = load(&file)?;
            print(&json!({
                "valid": true,
                "hopf_dim": spec.hopf().dim(),
                "vars": spec.tower().vars(),
                "field": spec.domain().to_string(),
            }));
        }
        Command::Integral { file } => {
            let spec = load(&file)?;
            let left = find_left_integral(spec.hopf())?;
            let dual = find_dual_integral(spec.hopf())?;
            print(&json!({
                "integral": left.normalized.as_deref().map(vector_json),
                "integral_space_dim": left.space_basis.len(),
                "semisimple": left.semisimple,
                "dual_integral": dual.normalized.as_deref().map(vector_json),
                "cosemisimple": dual.semisimple,
            }));
        }
        Command::Center { file, prime, kmax } => {
            let spec = over_prime(&load(&file)?, prime)?;
            let centre = central_tower(spec.tower(), kmax)?;
            let verified = verify_freeness_rank(&centre, 6)?;
            let mut v = centre.to_json();
            v["verified_degree_bound"] = json!(verified.degree_bound);
            print(&v);
        }
        Command::Reduce { file, prime } => {
            let spec = over_prime(&load(&file)?, prime)?;
            let transport = check_transport(&spec, orehopf::pipeline::VALIDATION_DEGREE)?;
            print(&json!({
                "prime": prime,
                "action": spec.to_json(),
                "transport": serde_json::to_value(&transport).expect("json"),
            }));
            if !transport.all_passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Faithful { file, degree } => {
            let spec = load(&file)?;
            let radical = inner_faithful_radical(&spec, 1)?;
            let quotient = if radical.is_inner_faithful() {
                spec.clone()
            } else {
                spec.quotient(&radical.ideal)?
            };
            let cert = certificate_search(&quotient, radical.chain.stabilization_index, degree)?;
            print(&json!({
                "radical": radical.ideal.basis().iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
                "tensor_power": radical.chain.stabilization_index,
                "certificate": cert.to_json(spec.tower().vars()),
            }));
        }
        Command::Pipeline { file, primes, q, degree, kmax, format, output } => {
            let spec = load(&file)?;
            let format = match format {
                Format::Json => ReportFormat::Json,
                Format::Text => ReportFormat::Text,
            };
            let cfg = PipelineConfig {
                prime_count: primes,
                q_override: q,
                degree_bound: degree,
                k_max: kmax,
                format,
            };
            let report = run_pipeline(&spec, &cfg)?;
            let text = emit_report(&report, format);
            match output {
                Some(path) => std::fs::write(&path, &text)
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            if !report.verdict.is_conclusive() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Inconclusive(m)) => {
            eprintln!("inconclusive: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
