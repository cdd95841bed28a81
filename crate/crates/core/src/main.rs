use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fprect::cli::{self, CaseId, CliError, Command, Format, Report, RunConfig, RunOutcome, EXIT_INPUT};
use fprect::rational::parse_rational;
use fprect::spaces::ScanOptions;
use fprect::Rational;

/// Exact checks for b-rectangular metric spaces and C-class contractions.
#[derive(Debug, Parser)]
#[command(name = "fprect", version)]
struct Args {
    #[command(subcommand)]
    command: Sub,

    /// Sampling step for intervals, or grid step for function checks.
    #[arg(long, global = true)]
    step: Option<String>,

    /// Comparison tolerance (rational literal such as 1/1000 or 1e-12).
    #[arg(long, global = true)]
    tol: Option<String>,

    /// Output format: text or json.
    #[arg(long, global = true, default_value = "text")]
    format: String,

    /// Keep every violating tuple instead of the first few.
    #[arg(long, global = true)]
    all_witnesses: bool,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Check triangle-type axioms on a finite space.
    VerifySpace {
        #[arg(long)]
        space: PathBuf,
        /// triangle, b-triangle, rectangular or b-rectangular; all when omitted.
        #[arg(long)]
        axiom: Option<String>,
        /// Coefficient for the b-axioms; defaults to the space's claimed value.
        #[arg(long)]
        s: Option<String>,
    },
    /// Smallest coefficient for which the b-rectangular inequality holds.
    MinimalS {
        #[arg(long)]
        space: PathBuf,
    },
    /// Check altering, phi-u, C-class, semicontinuity or tripled monotonicity.
    CheckFunctions {
        #[arg(long, conflicts_with = "tripled")]
        function: Option<PathBuf>,
        #[arg(long)]
        tripled: Option<PathBuf>,
        #[arg(long)]
        property: Option<String>,
        /// Upper end of the sample grid.
        #[arg(long)]
        max: Option<String>,
    },
    /// Check the contractive inequality on every pair.
    CheckContraction {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Picard iteration with diagnostics.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        /// Start label; every point when omitted.
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        max_iter: Option<usize>,
    },
    /// Re-run built-in cases against embedded expected values.
    Replicate { case: Option<String> },
}

fn rational(flag: &str, v: Option<String>) -> Result<Option<Rational>, CliError> {
    v.map(|s| parse_rational(&s).map_err(|e| CliError::Usage(format!("--{flag}: {e}"))))
        .transpose()
}

fn config(args: Args) -> Result<RunConfig, CliError> {
    let command = match args.command {
        Sub::VerifySpace { space, axiom, s } => Command::VerifySpace {
            space,
            axiom: axiom.as_deref().map(cli::parse_axiom).transpose()?,
            s: rational("s", s)?,
        },
        Sub::MinimalS { space } => Command::MinimalS { space },
        Sub::CheckFunctions {
            function,
            tripled,
            property,
            max,
        } => Command::CheckFunctions {
            function,
            tripled,
            property: property.as_deref().map(cli::parse_property).transpose()?,
            max: rational("max", max)?,
        },
        Sub::CheckContraction { instance } => Command::CheckContraction { instance },
        Sub::Solve {
            instance,
            from,
            max_iter,
        } => Command::Solve {
            instance,
            from,
            max_iter,
        },
        Sub::Replicate { case } => Command::Replicate {
            case: case.as_deref().map(str::parse::<CaseId>).transpose()?,
        },
    };
    Ok(RunConfig {
        command,
        step: rational("step", args.step)?,
        tol: rational("tol", args.tol)?,
        format: args.format.parse()?,
        scan: if args.all_witnesses {
            ScanOptions::all_witnesses()
        } else {
            ScanOptions::default()
        },
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let format = if args.format == "json" {
        Format::Json
    } else {
        Format::Text
    };
    let outcome = match config(args) {
        Ok(c) => cli::run(&c),
        Err(e) => RunOutcome {
            exit: EXIT_INPUT,
            report: Report::Error { message: e.to_string() },
        },
    };
    let text = cli::render(&outcome.report, format);
    if outcome.exit == EXIT_INPUT {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    ExitCode::from(outcome.exit as u8)
}
