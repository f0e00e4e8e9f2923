use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use graded_poisson::geometry::{library, ChartGeometry};
use graded_poisson::graded::{theta, theta_ks, GradedSpace, ThetaVariant};
use graded_poisson::hamiltonian::{bracket_fastpath, fastpath_arguments, FastpathKind, Hamiltonians};
use graded_poisson::harness::{parse_form_expr, parse_manifest, run_suite, Suite};
use graded_poisson::{Error, Result};

#[derive(Parser)]
#[command(name = "gpoisson", version, about = "Exact graded symplectic calculus on coordinate charts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Ff,
    FDh,
    DfDh,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite on a chart.
    Check {
        /// A manifest path or builtin:NAME.
        chart: String,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        max_form_degree: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compute a bracket of two forms.
    Bracket {
        /// A manifest path or builtin:NAME.
        chart: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        /// Use the Koszul-Schouten bracket instead of the even bracket.
        #[arg(long, conflicts_with = "fastpath")]
        odd: bool,
        /// Evaluate the closed-form bracket of functions f = alpha, h = beta
        /// and compare it with the solver.
        #[arg(long)]
        fastpath: bool,
        /// Which closed form to use with --fastpath.
        #[arg(long, value_enum, default_value = "ff", requires = "fastpath")]
        kind: Kind,
    },
    /// List the built-in charts.
    Charts,
}

fn load_chart(spec: &str) -> Result<ChartGeometry> {
    match spec.strip_prefix("builtin:") {
        Some(name) => library::builtin(name),
        None => {
            let text = std::fs::read_to_string(spec).map_err(|e| Error::Usage(format!("cannot read '{spec}': {e}")))?;
            parse_manifest(&text)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Charts => {
            for (name, description) in library::BUILTIN_CHARTS {
                println!("{name:<10} {description}");
            }
            Ok(true)
        }
        Command::Check {
            chart,
            suite,
            seed,
            samples,
            max_form_degree,
            format,
        } => {
            let chart = load_chart(&chart)?;
            let report = run_suite(&chart, Suite::parse(&suite)?, seed, samples, max_form_degree)?;
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            Ok(report.all_passed())
        }
        Command::Bracket {
            chart,
            alpha,
            beta,
            odd,
            fastpath,
            kind,
        } => {
            let chart = load_chart(&chart)?;
            let a = parse_form_expr(&alpha, chart.coords())?;
            let b = parse_form_expr(&beta, chart.coords())?;
            let space = GradedSpace::new(chart.clone());
            if fastpath {
                let (f, h) = (a.function_part(), b.function_part());
                if a.max_degree() > Some(0) || b.max_degree() > Some(0) {
                    return Err(Error::Usage("--fastpath expects two functions f and h".into()));
                }
                let kind = match kind {
                    Kind::Ff => FastpathKind::FunctionFunction,
                    Kind::FDh => FastpathKind::FunctionDifferential,
                    Kind::DfDh => FastpathKind::DifferentialDifferential,
                };
                let fast = bracket_fastpath(kind, &f, &h, &chart);
                let (x, y) = fastpath_arguments(kind, &f, &h, &chart);
                let solver = Hamiltonians::new(&theta(&space, ThetaVariant::OmegaG)?).bracket(&x, &y)?;
                println!("fastpath: {}", chart.display(&fast));
                println!("solver:   {}", chart.display(&solver));
                let agree = fast == solver;
                println!("agree:    {agree}");
                return Ok(agree);
            }
            let form = if odd { theta_ks(&space) } else { theta(&space, ThetaVariant::OmegaG)? };
            println!("{}", chart.display(&Hamiltonians::new(&form).bracket(&a, &b)?));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
