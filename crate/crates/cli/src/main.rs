mod render;

use std::process::ExitCode;

use bicoeff_core::classbounds::presets::preset_table;
use bicoeff_core::{
    bound_for, verify_class, ClassSpec, Complex64, Error, Feasibility, MaMindaPhi, PowerSeries,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use render::{Format, Output};

const EXIT_USAGE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_FAIL: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "bicoeff",
    version,
    about = "Coefficient bounds for bi-univalent function classes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form bounds on |a2| and |a3| for a class and φ.
    Bounds {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Search each coefficient identity for its maximum and compare it with
    /// the closed-form bound it supports.
    Verify {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = ModeArg::Box)]
        mode: ModeArg,
        /// Random samples per search.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, env = "BICOEFF_SEED", default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Reference values for the standard families, recomputed generically.
    Table {
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Coefficients of the inverse of z + a2 z^2 + a3 z^3 + ...
    Revert {
        /// Comma-separated a2,a3,... (complex values as `re+imi`).
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Truncation degree.
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct Target {
    /// One of r-sigma, sstar-sigma, k-sigma, mixed-k-r, mixed-sstar-r, mixed-sstar-k.
    #[arg(long)]
    class: String,
    /// Parameter of r-sigma.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    lambda: f64,
    /// janowski:A,B | beta:x | alpha:x | custom:B1,B2[,...]
    #[arg(long, default_value = "beta:0", allow_hyphen_values = true)]
    phi: String,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Box,
    Tight,
}

impl From<ModeArg> for Feasibility {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Box => Feasibility::Box,
            ModeArg::Tight => Feasibility::Tight,
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parameter(_) => EXIT_USAGE,
            _ => EXIT_VALIDATION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: String) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message,
    }
}

fn resolve(target: &Target) -> Result<(ClassSpec, MaMindaPhi), Failure> {
    let class = ClassSpec::parse_with_lambda(&target.class, target.lambda)?;
    let phi: MaMindaPhi = target.phi.parse()?;
    Ok((class, phi))
}

fn parse_coeffs(s: &str) -> Result<Vec<Complex64>, Failure> {
    if s.trim().is_empty() {
        return Err(usage("--coeffs needs at least one value".into()));
    }
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<Complex64>()
                .ok()
                .filter(|z| z.re.is_finite() && z.im.is_finite())
                .ok_or_else(|| usage(format!("bad coefficient `{t}`")))
        })
        .collect()
}

fn run(cli: Cli) -> Result<(Output, bool), Failure> {
    match cli.command {
        Command::Bounds { target, out } => {
            let (class, phi) = resolve(&target)?;
            let report = bound_for(class, phi.b1, phi.b2)?;
            Ok((render::bounds(&report, &phi, out.format), true))
        }
        Command::Verify {
            target,
            mode,
            samples,
            seed,
            out,
        } => {
            let (class, phi) = resolve(&target)?;
            let report = verify_class(class, phi.b1, phi.b2, mode.into(), samples, seed)?;
            let ok = report.passed();
            Ok((render::verify(&report, &phi, out.format), ok))
        }
        Command::Table { out } => Ok((render::table(&preset_table()?, out.format), true)),
        Command::Revert { coeffs, order, out } => {
            let tail = parse_coeffs(&coeffs)?;
            if order < 1 {
                return Err(usage("--order must be at least 1".into()));
            }
            let f = PowerSeries::normalized(&tail, order)?;
            let inv = f.revert()?;
            Ok((render::revert(&tail, &inv, out.format), true))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok((out, ok)) => {
            print!("{}", out.text);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
