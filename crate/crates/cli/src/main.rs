//! Command-line surface: weight gating over CSV tables, image
//! certification over generator-set files, and generation of test groups.
//!
//! Exit codes:
//! - `classify-weights`: 0 full parse, 2 row errors, 1 unreadable input
//! - `certify-image`: 0 containment verdict, 3 other definite verdict,
//!   4 indeterminate, 1 malformed input
//! - everything else: 0 on success, 1 on error

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use omega_core::classify::{classify_image, closure_enumerate, ClassifyConfig, Target, Verdict};
use omega_core::formats::{GeneratorSetFile, MatrixLiteral};
use omega_core::octonion::g2_sample_generators;
use omega_core::quadspace::{
    is_isometry, omega_membership, random_omega_generators, spinor_norm, QuadraticSpace,
    SquareClass,
};
use omega_core::sympower::sym_power_matrix;
use omega_core::weights::{ingest_weight_table, theorem_gate};
use omega_core::{Error, FieldCtx};

#[derive(Parser)]
#[command(name = "omega", version, about = "finite-field orthogonal and octonion group toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Omega,
    G2,
}

#[derive(Subcommand)]
enum Command {
    /// Gate the applicable theorems for each row of a CSV weight table.
    ClassifyWeights {
        table: PathBuf,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the group generated by a generator-set file.
    CertifyImage {
        genset: PathBuf,
        #[arg(long, value_enum)]
        target: TargetArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 8)]
        word_cap: usize,
        #[arg(long, default_value_t = 1_000_000)]
        closure_cap: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate verified kernel-subgroup (spinor-trivial) sample generators.
    GenOmega {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        ell: u64,
        #[arg(long, default_value_t = 6)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate verified octonion-automorphism sample generators (dim 7).
    GenG2 {
        #[arg(long)]
        ell: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report isometry/determinant/spinor data for a matrix literal.
    SpinorNorm {
        matrix: PathBuf,
        /// Gram matrix literal; identity form when omitted.
        #[arg(long)]
        gram: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply the symmetric power functor to a 2x2 matrix literal.
    SymPower {
        matrix: PathBuf,
        #[arg(long)]
        power: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact order of the generated group by closure enumeration.
    ClosureOrder {
        genset: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        cap: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_output(out: &Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => println!("{content}"),
    }
    Ok(())
}

fn read_generator_set(path: &PathBuf) -> Result<omega_core::quadspace::GeneratorSet, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(e.to_string()))?;
    omega_core::formats::parse_generator_set(&text)
}

fn read_matrix(path: &PathBuf) -> Result<omega_core::SquareMatrix, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(e.to_string()))?;
    omega_core::formats::parse_matrix(&text)
}

fn cmd_classify_weights(table: PathBuf, out: Option<PathBuf>) -> anyhow::Result<ExitCode> {
    let outcome = match ingest_weight_table(&table) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(1));
        }
    };
    let mut reports = Vec::new();
    let mut gate_errors = 0usize;
    for rec in &outcome.records {
        match theorem_gate(rec) {
            Ok(report) => reports.push(report),
            Err(e) => {
                gate_errors += 1;
                eprintln!("record of dimension {}: {e}", rec.dim);
            }
        }
    }
    let json = serde_json::to_string_pretty(&reports)?;
    write_output(&out, &json)?;
    for err in &outcome.row_errors {
        eprintln!("row {}: {}", err.row, err.message);
    }
    if outcome.row_errors.is_empty() && gate_errors == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(2))
    }
}

fn cmd_certify_image(
    genset: PathBuf,
    target: TargetArg,
    cfg: ClassifyConfig,
    out: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let gens = match read_generator_set(&genset) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(1));
        }
    };
    let target = match target {
        TargetArg::Omega => Target::OmegaP,
        TargetArg::G2 => Target::GTwo,
    };
    let report = match classify_image(&gens, target, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(1));
        }
    };
    let json = serde_json::to_string_pretty(&report)?;
    write_output(&out, &json)?;
    eprintln!("verdict: {:?}", report.verdict);
    let code = match report.verdict {
        Verdict::ContainsOmega | Verdict::ContainsGTwo => 0,
        Verdict::Indeterminate => 4,
        _ => 3,
    };
    Ok(ExitCode::from(code))
}

fn run() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::ClassifyWeights { table, out } => cmd_classify_weights(table, out),
        Command::CertifyImage {
            genset,
            target,
            seed,
            trials,
            word_cap,
            closure_cap,
            out,
        } => {
            let cfg = ClassifyConfig {
                seed,
                trials,
                word_cap,
                closure_cap,
                ..Default::default()
            };
            cmd_certify_image(genset, target, cfg, out)
        }
        Command::GenOmega {
            dim,
            ell,
            count,
            seed,
            out,
        } => {
            let ctx = FieldCtx::prime(ell)?;
            let gens = random_omega_generators(dim, &ctx, count, seed)?;
            let file = GeneratorSetFile::from_generator_set(&gens);
            write_output(&out, &serde_json::to_string_pretty(&file)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::GenG2 { ell, seed, out } => {
            let ctx = FieldCtx::prime(ell)?;
            let gens = g2_sample_generators(&ctx, seed)?;
            let file = GeneratorSetFile::from_generator_set(&gens);
            write_output(&out, &serde_json::to_string_pretty(&file)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::SpinorNorm { matrix, gram, out } => {
            let m = read_matrix(&matrix)?;
            let qs = match gram {
                Some(path) => QuadraticSpace::new(read_matrix(&path)?)?,
                None => QuadraticSpace::standard(m.ctx(), m.dim()),
            };
            let report = is_isometry(&qs, &m);
            let norm = if report.isometry && report.special {
                Some(match spinor_norm(&qs, &m)? {
                    SquareClass::Trivial => "trivial",
                    SquareClass::NonTrivial => "nontrivial",
                })
            } else {
                None
            };
            let json = serde_json::json!({
                "isometry": report.isometry,
                "det": report.det.coeffs(),
                "special": report.special,
                "spinor_norm": norm,
                "omega_member": omega_membership(&qs, &m),
            });
            write_output(&out, &serde_json::to_string_pretty(&json)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::SymPower { matrix, power, out } => {
            let m = read_matrix(&matrix)?;
            let s = sym_power_matrix(&m, power)?;
            let lit = MatrixLiteral::from_matrix(&s);
            write_output(&out, &serde_json::to_string_pretty(&lit)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ClosureOrder { genset, cap, out } => {
            let gens = read_generator_set(&genset)?;
            let json = match closure_enumerate(&gens, cap) {
                Ok(order) => serde_json::json!({ "order": order }),
                Err(Error::ClosureOverflow(c)) => serde_json::json!({ "overflow": c }),
                Err(e) => return Err(e.into()),
            };
            write_output(&out, &serde_json::to_string_pretty(&json)?)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
