use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bernstein_dg::experiment::{parse_bounds, run_experiment, sweep, ExperimentConfig};
use bernstein_dg::problems::default_kappa;
use bernstein_dg::{ApplyPoint, Error, FilterKind, ProblemId, ReferenceChoice};

/// DG solver for scalar 1D conservation laws with Bernstein shock capturing.
#[derive(Parser)]
#[command(name = "bernstein-dg", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single experiment and write its CSV outputs.
    Run(RunArgs),
    /// Run every combination of the given kappa/degree/element lists.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Problem: linear | burgers | concave | buckley-leverett
    #[arg(long)]
    problem: String,
    /// Polynomial degree N
    #[arg(long)]
    degree: usize,
    /// Number of elements I
    #[arg(long)]
    elements: usize,
    /// Ramp parameter kappa in (0, 1); defaults to the problem's tuned value
    #[arg(long)]
    kappa: Option<f64>,
    /// Final time
    #[arg(long)]
    tmax: f64,
    /// CFL constant C
    #[arg(long, default_value_t = 0.1)]
    cfl: f64,
    /// Filter: none | bernstein | mean
    #[arg(long, default_value = "bernstein")]
    filter: String,
    /// Enforced solution bounds "m,M" (Bernstein filter only)
    #[arg(long)]
    bounds: Option<String>,
    /// Capture timing: stage | step
    #[arg(long, default_value = "stage")]
    timing: String,
    /// Reference solution: auto | closed-form | characteristics | fv-oracle
    #[arg(long, default_value = "auto")]
    reference: String,
    /// Output directory (relative paths resolve under $BERNSTEIN_DG_OUT)
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated kappa values (defaults to the single --kappa)
    #[arg(long)]
    kappa_list: Option<String>,
    /// Comma-separated degrees (defaults to the single --degree)
    #[arg(long)]
    degree_list: Option<String>,
    /// Comma-separated element counts (defaults to the single --elements)
    #[arg(long)]
    elements_list: Option<String>,
}

fn build_config(args: &CommonArgs) -> Result<ExperimentConfig, Error> {
    let problem: ProblemId = args.problem.parse()?;
    let filter: FilterKind = args.filter.parse()?;
    let reference: ReferenceChoice = args.reference.parse()?;
    let timing = match args.timing.as_str() {
        "stage" => ApplyPoint::PerStage,
        "step" => ApplyPoint::PerStep,
        other => return Err(Error::Config(format!("unknown timing '{other}'"))),
    };
    let bounds = args.bounds.as_deref().map(parse_bounds).transpose()?;
    let cfg = ExperimentConfig {
        problem,
        degree: args.degree,
        elements: args.elements,
        kappa: args.kappa.unwrap_or_else(|| default_kappa(problem)),
        t_final: args.tmax,
        cfl: args.cfl,
        filter,
        bounds,
        timing,
        reference,
        out_dir: args.out.clone(),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, Error> {
    s.split(',')
        .map(|item| {
            item.trim()
                .parse::<T>()
                .map_err(|_| Error::Config(format!("bad {what} entry '{item}'")))
        })
        .collect()
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => run_command(args),
        Command::Sweep(args) => sweep_command(args),
    };
    match result {
        Ok(code) => code,
        Err(Error::Config(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run_command(args: &RunArgs) -> Result<ExitCode, Error> {
    let cfg = build_config(&args.common)?;
    match run_experiment(&cfg) {
        Ok(summary) => {
            println!("{}", summary.summary_line());
            println!("outputs in {}", summary.out_dir.display());
            Ok(ExitCode::SUCCESS)
        }
        Err(Error::BlowUp { time, element }) => {
            eprintln!(
                "solver blew up at t = {time:.6e} in element {element}; \
                 last good state dumped to last_good_state.csv"
            );
            Ok(ExitCode::FAILURE)
        }
        Err(e) => Err(e),
    }
}

fn sweep_command(args: &SweepArgs) -> Result<ExitCode, Error> {
    let base = build_config(&args.common)?;
    let kappas = match &args.kappa_list {
        Some(s) => parse_list::<f64>(s, "kappa")?,
        None => vec![base.kappa],
    };
    let degrees = match &args.degree_list {
        Some(s) => parse_list::<usize>(s, "degree")?,
        None => vec![base.degree],
    };
    let elements = match &args.elements_list {
        Some(s) => parse_list::<usize>(s, "elements")?,
        None => vec![base.elements],
    };
    let rows = sweep(&base, &kappas, &degrees, &elements)?;
    let failures = rows.iter().filter(|r| r.outcome.is_err()).count();
    for row in &rows {
        match &row.outcome {
            Ok(s) => println!(
                "kappa={} N={} I={}: {}",
                row.kappa,
                row.degree,
                row.elements,
                s.summary_line()
            ),
            Err(msg) => println!(
                "kappa={} N={} I={}: FAILED ({msg})",
                row.kappa, row.degree, row.elements
            ),
        }
    }
    println!("{} runs, {} failed; manifest at index.csv", rows.len(), failures);
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
