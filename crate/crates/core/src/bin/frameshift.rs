use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use frameshift::harness::runs::{ALL_KINDS, DEFAULT_BAS_SAMPLES};
use frameshift::harness::{
    default_jobs, load_scenarios, run_bas_sweep, run_classical_suite, run_covariance, run_jobs,
    run_momentum_consistency, Job, Report, Scenario, Status,
};
use rayon::prelude::*;

#[derive(Parser)]
#[command(
    name = "frameshift",
    version,
    about = "Frame-transformation checks for 1D quantum and classical dynamics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Scenario file, or a directory of `*.toml` scenario files
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for report files
    #[arg(long, global = true, default_value = "reports")]
    out: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Overrides scenario seeds and the sweep seed
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Identity checks that need no wavefunctions
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// One check over the configured scenarios
    Run {
        #[command(subcommand)]
        what: Run,
    },
    /// Every check of every scenario, plus the sweeps and the classical suite
    Report,
}

#[derive(Subcommand)]
enum Verify {
    Bas {
        #[arg(long, default_value_t = DEFAULT_BAS_SAMPLES)]
        samples: usize,
    },
    Classical,
}

#[derive(Subcommand)]
enum Run {
    Covariance,
    Momentum,
}

fn scenarios(cli: &Cli) -> frameshift::Result<Vec<Scenario>> {
    let mut list = match &cli.config {
        Some(path) => load_scenarios(path)?,
        None => frameshift::harness::runs::builtin_scenarios(),
    };
    if let Some(seed) = cli.seed {
        list.iter_mut().for_each(|s| s.seed = seed);
    }
    Ok(list)
}

fn write_report(cli: &Cli, report: &Report) -> frameshift::Result<()> {
    let (ext, body) = match cli.format {
        Format::Json => ("json", report.to_json(true)),
        Format::Csv => ("csv", report.to_csv()),
    };
    std::fs::create_dir_all(&cli.out)?;
    let path = cli.out.join(format!("{}.{ext}", report.name));
    std::fs::write(&path, body)?;
    if !cli.quiet {
        for c in &report.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Flagged => "FLAG",
            };
            println!("{tag} {}/{} ({:.3} s)", report.name, c.name, c.wall_time_s);
            if c.status == Status::Fail {
                println!("     anchor: {}", c.anchor);
            }
        }
        println!("     -> {}", path.display());
    }
    Ok(())
}

fn execute(cli: &Cli) -> frameshift::Result<Vec<Report>> {
    let seed = cli.seed.unwrap_or(0);
    match &cli.command {
        Command::Verify {
            what: Verify::Bas { samples },
        } => Ok(ALL_KINDS
            .par_iter()
            .map(|k| run_bas_sweep(*k, *samples, seed))
            .collect()),
        Command::Verify {
            what: Verify::Classical,
        } => Ok(vec![run_classical_suite(seed)?]),
        Command::Run { what } => {
            let list = scenarios(cli)?;
            list.par_iter()
                .map(|sc| match what {
                    Run::Covariance => run_covariance(sc),
                    Run::Momentum => run_momentum_consistency(sc),
                })
                .collect()
        }
        Command::Report => {
            let jobs = match &cli.config {
                None => default_jobs(cli.seed),
                Some(_) => scenarios(cli)?
                    .into_iter()
                    .map(|sc| Job::Scenario(Box::new(sc)))
                    .collect(),
            };
            run_jobs(&jobs)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let reports = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    for r in &reports {
        if let Err(e) = write_report(&cli, r) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if reports.iter().all(Report::all_pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
