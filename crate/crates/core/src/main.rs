use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use galois_core::census::commands::{self, Outcome, EXIT_USAGE};
use galois_core::census::{read_spec, CensusError, SpecFile};
use galois_core::probe::{NormOptions, Policy};

/// Galois points of plane curves g1(x)^l + lambda g2(y)^l + mu = 0.
#[derive(Parser)]
#[command(name = "galpt", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args)]
struct Common {
    /// Curve specification (TOML).
    spec: PathBuf,
    /// Write the JSON document here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct Decide {
    /// Stages: `full` or names joined by `+`, e.g. `screens+deck`.
    #[arg(long, default_value = "full")]
    policy: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest number of local factors recombined exhaustively.
    #[arg(long, default_value_t = 12)]
    budget: usize,
    /// Skip running the norm test against deck certificates.
    #[arg(long)]
    no_cross_check: bool,
}

impl Decide {
    fn policy(&self) -> Result<Policy, String> {
        Ok(Policy {
            stages: Policy::parse_stages(&self.policy)?,
            seed: self.seed,
            norm: NormOptions {
                budget: self.budget,
                ..NormOptions::default()
            },
            cross_check: !self.no_cross_check,
        })
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Degree, singular locus, genus, family constants and predictions.
    Info {
        #[command(flatten)]
        common: Common,
    },
    /// Decide every point of P^2(K_m) off the curve.
    Census {
        #[command(flatten)]
        common: Common,
        /// Extension degrees m over the coefficient field K.
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        fields: Vec<usize>,
        #[command(flatten)]
        decide: Decide,
        /// Include wall-clock timings (the report is otherwise reproducible byte for byte).
        #[arg(long)]
        timings: bool,
    },
    /// Check one case (a-e) of the classification.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = ["a", "b", "c", "d", "e"])]
        case: String,
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        fields: Vec<usize>,
        #[command(flatten)]
        decide: Decide,
    },
    /// Analyze the projection from one point.
    Project {
        #[command(flatten)]
        common: Common,
        /// `a:b:c`; a coordinate is an integer or `[c0,c1,...]`.
        #[arg(long)]
        point: String,
        /// Absolute degree of the field the coordinates live in.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value = "galois", value_parser = ["ram", "galois", "fibers"])]
        report: String,
        #[command(flatten)]
        decide: Decide,
    },
    /// Re-decide every verdict of a saved census report.
    Recheck {
        #[command(flatten)]
        common: Common,
        report: PathBuf,
    },
}

fn emit(out: &Outcome, path: Option<&Path>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(&out.json).map_err(|e| e.to_string())? + "\n";
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display()))?
        }
        None => print!("{text}"),
    }
    eprintln!("{}", out.summary);
    Ok(())
}

fn load(c: &Common) -> Result<SpecFile, String> {
    read_spec(&c.spec).map_err(|e| format!("{}: {e}", c.spec.display()))
}

fn run(cli: Cli) -> Result<(Outcome, Option<PathBuf>), String> {
    let err = |e: CensusError| e.to_string();
    Ok(match cli.cmd {
        Cmd::Info { common } => (commands::info(&load(&common)?).map_err(err)?, common.out),
        Cmd::Census {
            common,
            fields,
            decide,
            timings,
        } => {
            let o = commands::census(&load(&common)?, &fields, &decide.policy()?, timings)
                .map_err(err)?;
            (o, common.out)
        }
        Cmd::Verify {
            common,
            case,
            fields,
            decide,
        } => {
            let c = case.chars().next().expect("validated by clap");
            let o =
                commands::verify(&load(&common)?, c, &fields, &decide.policy()?).map_err(err)?;
            (o, common.out)
        }
        Cmd::Project {
            common,
            point,
            degree,
            report,
            decide,
        } => {
            let o = commands::project(&load(&common)?, &point, degree, &report, &decide.policy()?)
                .map_err(err)?;
            (o, common.out)
        }
        Cmd::Recheck { common, report } => {
            let text = std::fs::read_to_string(&report)
                .map_err(|e| format!("cannot read {}: {e}", report.display()))?;
            (
                commands::recheck(&load(&common)?, &text).map_err(err)?,
                common.out,
            )
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok((out, path)) => match emit(&out, path.as_deref()) {
            Ok(()) => ExitCode::from(out.exit as u8),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_USAGE as u8)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
