use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sfdd_cli::{run_command, Settings, EXIT_CONFIG};

#[derive(Parser)]
#[command(name = "sfdd", version, about = "Schwarz-Fourier domain decomposition experiments on two overlapping discs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand)]
enum Command {
    /// Intersection angles, (m, R), C1 and optional grid snapping.
    Geometry,
    /// Table of epsilon(r_N*) and its bound.
    EpsilonTable,
    /// Numeric against theoretical positivity distance of K_N.
    KernelScan,
    /// Dirichlet-to-Dirichlet profile (or interpolation bound) along Gamma2.
    DtdProfile,
    /// Interpolation contraction bound C(N, theta1*) over a theta1* grid.
    ContractionSweep,
    /// Schwarz iteration with a manufactured solution.
    SchwarzRun,
    /// Invariant suites; exit 1 on any failure.
    Verify {
        /// Defaults to all.
        #[arg(value_enum)]
        suite: Option<SuiteArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Kernels,
    Fourier,
    Dtd,
    Schwarz,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Exact,
    Projection,
    Interpolation,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Additive,
    Multiplicative,
}

#[derive(Args, Default)]
struct Opts {
    /// Centre of B2 on the x-axis.
    #[arg(long, global = true, allow_hyphen_values = true)]
    m: Option<f64>,
    /// Radius of B2.
    #[arg(long = "R", global = true)]
    r: Option<f64>,
    #[arg(long, global = true)]
    theta1: Option<f64>,
    #[arg(long, global = true)]
    theta2: Option<f64>,
    /// Order(s): a number, a comma list or a range a-b.
    #[arg(long = "N", global = true)]
    n: Option<String>,
    #[arg(long, global = true)]
    n1: Option<usize>,
    #[arg(long, global = true)]
    n2: Option<usize>,
    /// n2 = nearest even of factor * R * n1.
    #[arg(long = "n2-factor", global = true)]
    n2_factor: Option<f64>,
    #[arg(long, value_enum, global = true)]
    variant: Option<VariantArg>,
    #[arg(long, value_enum, global = true)]
    mode: Option<ModeArg>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long = "grid-only", global = true)]
    grid_only: bool,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long = "max-sweeps", global = true)]
    max_sweeps: Option<usize>,
    /// Number of theta1* values in a contraction sweep.
    #[arg(long = "theta1-count", global = true)]
    theta1_count: Option<usize>,
    /// Boundary data: log, log:x0,y0 or poly:k.
    #[arg(long, global = true)]
    data: Option<String>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, hide = true)]
    fault: Option<String>,
}

fn name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn flag_settings(cli: &Cli) -> Result<Settings, sfdd_cli::CliError> {
    let o = &cli.opts;
    let mut s = Settings::new();
    let mut put = |k: &str, v: Option<String>| -> Result<(), sfdd_cli::CliError> {
        match v {
            Some(v) => s.set(k, v),
            None => Ok(()),
        }
    };
    put("m", o.m.map(|x| x.to_string()))?;
    put("R", o.r.map(|x| x.to_string()))?;
    put("theta1", o.theta1.map(|x| x.to_string()))?;
    put("theta2", o.theta2.map(|x| x.to_string()))?;
    put("N", o.n.clone())?;
    put("n1", o.n1.map(|x| x.to_string()))?;
    put("n2", o.n2.map(|x| x.to_string()))?;
    put("n2-factor", o.n2_factor.map(|x| x.to_string()))?;
    put("variant", o.variant.as_ref().map(name))?;
    put("mode", o.mode.as_ref().map(name))?;
    put("samples", o.samples.map(|x| x.to_string()))?;
    put("grid-only", o.grid_only.then(|| "true".to_string()))?;
    put("tol", o.tol.map(|x| x.to_string()))?;
    put("max-sweeps", o.max_sweeps.map(|x| x.to_string()))?;
    put("theta1-count", o.theta1_count.map(|x| x.to_string()))?;
    put("data", o.data.clone())?;
    put("out", o.out.as_ref().map(|p| p.display().to_string()))?;
    put("seed", o.seed.map(|x| x.to_string()))?;
    put("fault", o.fault.clone())?;
    if let Command::Verify { suite } = &cli.command {
        put("suite", suite.as_ref().map(name))?;
    }
    Ok(s)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Geometry => "geometry",
        Command::EpsilonTable => "epsilon-table",
        Command::KernelScan => "kernel-scan",
        Command::DtdProfile => "dtd-profile",
        Command::ContractionSweep => "contraction-sweep",
        Command::SchwarzRun => "schwarz-run",
        Command::Verify { .. } => "verify",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = (|| {
        let mut s = match &cli.opts.config {
            Some(p) => Settings::from_file(p)?,
            None => Settings::new(),
        };
        s.merge(&flag_settings(&cli)?);
        Ok::<_, sfdd_cli::CliError>(s)
    })();
    let settings = match settings {
        Ok(s) => s,
        Err(e) => {
            eprintln!("sfdd: {e}");
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    let outcome = match run_command(command_name(&cli.command), &settings) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("sfdd: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = match &outcome.table {
        Some(t) => t.render(),
        None => outcome.lines.iter().map(|l| format!("{l}\n")).collect(),
    };
    match settings.get("out") {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("sfdd: cannot write {path}: {e}");
                return ExitCode::from(EXIT_CONFIG as u8);
            }
        }
        None => print!("{text}"),
    }
    if outcome.exit == sfdd_cli::EXIT_NONCONVERGED {
        eprintln!("sfdd: iteration did not converge within max-sweeps");
    }
    ExitCode::from(outcome.exit as u8)
}
