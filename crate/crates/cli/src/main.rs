use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cli::config::GridField;
use cli::report::format_bars;
use cli::{acceptance, run_job, CliError, ConfigFile, JobConfig, ReportDoc};

#[derive(Parser)]
#[command(name = "ct", version, about = "Equivariant persistence invariants of disk bundles over graph models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one job and write its report.
    Compute(JobArgs),
    /// Run the acceptance suite, one line per criterion.
    Check {
        /// Criteria to run, e.g. `1,2,11`; all by default.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
    /// Pretty-print the bars of a report.
    Barcode {
        report: PathBuf,
    },
}

#[derive(Args)]
struct JobArgs {
    /// Flat JSON configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// point, circle, torus or edge-list.
    #[arg(long)]
    model: Option<String>,
    /// Vertices of the (first) cycle.
    #[arg(long)]
    m: Option<usize>,
    /// Length of the (first) cycle.
    #[arg(long = "L")]
    length: Option<String>,
    /// Vertices of the second torus factor.
    #[arg(long)]
    m2: Option<usize>,
    /// Length of the second torus factor.
    #[arg(long = "L2")]
    length2: Option<String>,
    /// Edge-list file for the edge-list model.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Points per segment.
    #[arg(long = "N")]
    n_points: Option<usize>,
    /// Number of levels.
    #[arg(long)]
    ncap: Option<usize>,
    /// s1, zl or noneq.
    #[arg(long)]
    theory: Option<String>,
    /// Order of the cyclic group for zl.
    #[arg(long)]
    ell: Option<usize>,
    /// rational, integer or prime:p.
    #[arg(long)]
    coeff: Option<String>,
    /// Ascending comma-separated values of T.
    #[arg(long)]
    grid: Option<String>,
    /// Modules are computed modulo u^(uorder+1).
    #[arg(long)]
    uorder: Option<usize>,
    /// Capacities c̄_1..c̄_kmax.
    #[arg(long)]
    kmax: Option<usize>,
    /// Report path; the CSV table is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Tuples allowed per level.
    #[arg(long = "state-cap")]
    state_cap: Option<usize>,
    /// Simplices allowed per dimension and level.
    #[arg(long = "simplex-cap")]
    simplex_cap: Option<usize>,
    /// Worker threads across grid points.
    #[arg(long)]
    jobs: Option<usize>,
}

impl JobArgs {
    fn into_config(self) -> Result<ConfigFile, CliError> {
        let file = match &self.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let flags = ConfigFile {
            model: self.model,
            m: self.m,
            length: self.length,
            m2: self.m2,
            length2: self.length2,
            edges: self.edges,
            n_points: self.n_points,
            ncap: self.ncap,
            theory: self.theory,
            ell: self.ell,
            coeff: self.coeff,
            grid: self.grid.map(GridField::Text),
            uorder: self.uorder,
            kmax: self.kmax,
            out: self.out,
            state_cap: self.state_cap,
            simplex_cap: self.simplex_cap,
            jobs: self.jobs,
        };
        Ok(file.overlay(flags))
    }
}

fn compute(args: JobArgs) -> Result<bool, CliError> {
    let cfg = JobConfig::resolve(&args.into_config()?)?;
    let report = run_job(&cfg)?;
    match &cfg.out {
        Some(path) => {
            report.write(path)?;
            print!("{}", report.summary());
        }
        None => {
            print!("{}", report.to_json());
            eprint!("{}", report.summary());
        }
    }
    Ok(report.passed())
}

fn barcode(path: PathBuf) -> Result<bool, CliError> {
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
    let report = ReportDoc::from_json(&text)?;
    for p in &report.per_t {
        match (&p.barcode, &p.failure) {
            (_, Some(f)) => println!("T = {}: {}", p.t, f.kind),
            (Some(b), None) => println!("T = {}: {}", p.t, format_bars(b)),
            (None, None) => println!("T = {}: ranks only", p.t),
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let outcome = match Cli::parse().command {
        Command::Compute(a) => compute(a),
        Command::Check { only } => Ok(acceptance::run_suite(&only, &mut std::io::stdout())),
        Command::Barcode { report } => barcode(report),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("ct: {e}");
            ExitCode::from(2)
        }
    }
}
