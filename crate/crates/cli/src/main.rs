use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ris_esc_cli::config::{load_config, ExperimentConfig, MethodName};
use ris_esc_cli::run::{validate, RunOptions};
use ris_esc_cli::table::parse_table;
use ris_esc_cli::{esc_table, fit_table, plot, CliError, Result};

#[derive(Parser)]
#[command(
    name = "ris-esc",
    version,
    about = "Ergodic secrecy capacity of RIS-aided links"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the sweep and write the result table.
    Esc(EscArgs),
    /// Cross-check closed form, quadrature and Monte Carlo on the sweep.
    Validate(ValidateArgs),
    /// Monte Carlo estimates only.
    Mc(EscArgs),
    /// Print cascade moments and KG fits for the sweep's element counts.
    Fit(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Config file, or the name of a built-in preset (fig2, fig3).
    #[arg(long)]
    config: PathBuf,
    /// Output file (stdout when absent and the config names none).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct McArgs {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
}

#[derive(Args)]
struct EscArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    mc: McArgs,
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    /// SVG chart path; defaults to the config's when --out is not given.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    config: PathBuf,
    #[command(flatten)]
    mc: McArgs,
    /// Multiply the closed form's Xi by this factor.
    #[arg(long, hide = true)]
    corrupt_xi: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Cf,
    Quad,
    Mc,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<MethodName> {
        match self {
            MethodArg::Cf => vec![MethodName::Cf],
            MethodArg::Quad => vec![MethodName::Quad],
            MethodArg::Mc => vec![MethodName::Mc],
            MethodArg::All => MethodName::ALL.to_vec(),
        }
    }
}

fn options(cfg: &ExperimentConfig, mc: &McArgs) -> RunOptions {
    let mut opts = RunOptions::from_config(cfg);
    if let Some(seed) = mc.seed {
        opts.mc.seed = seed;
    }
    if let Some(trials) = mc.trials {
        opts.mc.trials = trials;
    }
    opts
}

fn write(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_esc(args: &EscArgs, force: Option<Vec<MethodName>>) -> Result<()> {
    let cfg = load_config(&args.common.config)?;
    let mut opts = options(&cfg, &args.mc);
    if let Some(m) = args.method {
        opts.methods = m.methods();
    }
    if let Some(m) = force {
        opts.methods = m;
    }
    if opts.mc.trials == 0 {
        return Err(CliError::Config("--trials must be >= 1".into()));
    }
    let table = esc_table(&cfg, &opts)?;
    let out = args.common.out.as_deref().or(cfg.output.csv.as_deref());
    write(out, &table)?;
    let plot_path = match (&args.plot, &args.common.out) {
        (Some(p), _) => Some(p.as_path()),
        (None, None) => cfg.output.plot.as_deref(),
        (None, Some(_)) => None,
    };
    if let Some(p) = plot_path {
        let title = cfg.name.as_deref().unwrap_or("ergodic secrecy capacity");
        let svg = plot::render(&parse_table(&table)?, cfg.chart()?, title)?;
        std::fs::write(p, svg).map_err(|e| CliError::io(p, e))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Esc(args) => run_esc(&args, None)?,
        Command::Mc(args) => run_esc(&args, Some(vec![MethodName::Mc]))?,
        Command::Fit(args) => {
            let cfg = load_config(&args.config)?;
            write(args.out.as_deref(), &fit_table(&cfg)?)?;
        }
        Command::Validate(args) => {
            let cfg = load_config(&args.config)?;
            let mut opts = options(&cfg, &args.mc);
            opts.corrupt_xi = args.corrupt_xi;
            let report = validate(&cfg, &opts)?;
            print!("{}", report.render());
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let mut src = std::error::Error::source(&e);
            while let Some(s) = src {
                eprintln!("  caused by: {s}");
                src = s.source();
            }
            ExitCode::from(2)
        }
    }
}
