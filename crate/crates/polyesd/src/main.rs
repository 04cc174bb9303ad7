//! Command-line entry point: tabulate theoretical laws, sample eigenvalue
//! clouds, run experiment configs, build potential tables, and run the
//! built-in validation suite.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};


use polyesd::harness::{
    self, emit, parse_config_file, ExperimentConfig, GridSpec, OutputFormat,
};
use polyesd::matpoly::{MatrixPolynomial, WeightScheme};
use polyesd::measure::potential_convergence_check;
use polyesd::randgen::{CoefficientDistribution, SeedSpec};
use polyesd::theory::LimitDensity;
use polyesd::validate::run_validation;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "polyesd",
    version,
    about = "Monte Carlo laboratory for spectral distributions of random matrix polynomials"
)]
struct Cli {
    /// Master seed override.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker thread count (default: all cores, or POLYESD_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output directory (or file for table subcommands; "-" = stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format where applicable.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Clone)]
struct SchemeArgs {
    /// Weight scheme: kac, elliptic, weyl, hyperbolic, custom.
    #[arg(long)]
    scheme: String,
    /// Scale parameter c.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Hyperbolic parameter d.
    #[arg(long)]
    d: Option<f64>,
    /// Comma-separated custom weights (custom scheme only).
    #[arg(long)]
    weights: Option<String>,
}

impl SchemeArgs {
    fn build(&self) -> Result<WeightScheme, String> {
        match self.scheme.as_str() {
            "kac" => Ok(WeightScheme::Kac { c: self.c }),
            "elliptic" => Ok(WeightScheme::Elliptic { c: self.c }),
            "weyl" => Ok(WeightScheme::Weyl { c: self.c }),
            "hyperbolic" => Ok(WeightScheme::Hyperbolic {
                c: self.c,
                d: self.d.ok_or("hyperbolic scheme requires --d")?,
            }),
            "custom" => {
                let raw = self
                    .weights
                    .as_ref()
                    .ok_or("custom scheme requires --weights")?;
                let weights = raw
                    .split(',')
                    .map(|w| {
                        w.trim()
                            .parse::<f64>()
                            .map_err(|_| format!("bad weight {w:?}"))
                    })
                    .collect::<Result<Vec<f64>, String>>()?;
                Ok(WeightScheme::Custom { weights })
            }
            other => Err(format!(
                "unknown scheme {other:?}; expected kac, elliptic, weyl, hyperbolic or custom"
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a theoretical limit density and its radial CDF.
    Density {
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Polynomial degree.
        #[arg(long)]
        k: usize,
        /// Largest radius tabulated.
        #[arg(long, default_value_t = 4.0)]
        r_max: f64,
        /// Number of table rows.
        #[arg(long, default_value_t = 101)]
        points: usize,
    },
    /// Sample one random matrix polynomial and write its eigenvalues.
    Sample {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Entry distribution for every coefficient.
        #[arg(long, default_value = "complex_gaussian")]
        dist: CoefficientDistribution,
        /// Trial index within the seed's stream space.
        #[arg(long, default_value_t = 0)]
        trial: u64,
    },
    /// Run every experiment in a config file.
    Experiment {
        /// Path to the flat key-value config.
        #[arg(long)]
        config: PathBuf,
    },
    /// Empirical vs theoretical logarithmic potential on a radial grid.
    Potential {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value = "complex_gaussian")]
        dist: CoefficientDistribution,
        /// Radial grid as R_MIN:R_MAX:COUNT.
        #[arg(long, default_value = "1.5:4.0:10")]
        grid: String,
    },
    /// Run the built-in invariant suite; exits 1 if any check fails.
    Validate,
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let threads = cli.threads.or_else(|| {
        std::env::var("POLYESD_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(t) = threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .is_err()
        {
            eprintln!("warning: thread pool already initialized, --threads ignored");
        }
    }

    match run_command(&cli) {
        Ok(code) => code,
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(AppError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

enum AppError {
    /// Bad arguments or configuration: exit 2.
    Usage(String),
    /// Runtime failure (I/O, solver): exit 1.
    Failure(String),
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Failure(e.to_string())
    }
}

fn run_command(cli: &Cli) -> Result<ExitCode, AppError> {
    match &cli.command {
        Command::Density {
            scheme,
            k,
            r_max,
            points,
        } => density_table(cli, scheme, *k, *r_max, *points),
        Command::Sample {
            scheme,
            n,
            k,
            dist,
            trial,
        } => sample_eigenvalues(cli, scheme, *n, *k, *dist, *trial),
        Command::Experiment { config } => run_experiments(cli, config),
        Command::Potential {
            scheme,
            n,
            k,
            trials,
            dist,
            grid,
        } => potential_table(cli, scheme, *n, *k, *trials, *dist, grid),
        Command::Validate => validate(cli),
    }
}

/// Write a table either to stdout or to the --out path.
fn write_table(cli: &Cli, default_name: &str, contents: &str) -> Result<(), AppError> {
    match &cli.out {
        None => {
            print!("{contents}");
            Ok(())
        }
        Some(path) if path.as_os_str() == "-" => {
            print!("{contents}");
            Ok(())
        }
        Some(path) => {
            let target = if path.extension().is_some() {
                path.clone()
            } else {
                std::fs::create_dir_all(path)?;
                path.join(default_name)
            };
            if let Some(parent) = target.parent() {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&target, contents)?;
            eprintln!("wrote {}", target.display());
            Ok(())
        }
    }
}

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn density_table(
    cli: &Cli,
    scheme_args: &SchemeArgs,
    k: usize,
    r_max: f64,
    points: usize,
) -> Result<ExitCode, AppError> {
    let scheme = scheme_args.build().map_err(AppError::Usage)?;
    if points < 2 || r_max <= 0.0 {
        return Err(AppError::Usage(
            "need --points >= 2 and --r-max > 0".into(),
        ));
    }
    let law =
        LimitDensity::from_scheme(&scheme, k).map_err(|e| AppError::Usage(e.to_string()))?;
    let mut out = String::from("r,density,radial_cdf\n");
    for i in 0..points {
        let r = r_max * i as f64 / (points - 1) as f64;
        out.push_str(&format!(
            "{},{},{}\n",
            fmt(r),
            fmt(law.density_radial(r)),
            fmt(law.cdf(r))
        ));
    }
    write_table(cli, "density.csv", &out)?;
    Ok(ExitCode::SUCCESS)
}

fn sample_eigenvalues(
    cli: &Cli,
    scheme_args: &SchemeArgs,
    n: usize,
    k: usize,
    dist: CoefficientDistribution,
    trial: u64,
) -> Result<ExitCode, AppError> {
    let scheme = scheme_args.build().map_err(AppError::Usage)?;
    let seed = SeedSpec::new(cli.seed.unwrap_or(0));
    let dists = vec![dist; k + 1];
    let poly = MatrixPolynomial::build(&scheme, &dists, n, k, &seed, trial)
        .map_err(|e| AppError::Usage(e.to_string()))?;
    let eig = poly
        .eigenvalues_of()
        .map_err(|e| AppError::Failure(e.to_string()))?;
    let mut out = String::from("re,im\n");
    for lambda in eig {
        out.push_str(&format!("{},{}\n", fmt(lambda.re), fmt(lambda.im)));
    }
    write_table(cli, "eigenvalues.csv", &out)?;
    Ok(ExitCode::SUCCESS)
}

fn run_experiments(cli: &Cli, config_path: &PathBuf) -> Result<ExitCode, AppError> {
    let mut configs: Vec<ExperimentConfig> = parse_config_file(config_path).map_err(|e| {
        AppError::Usage(format!("{}: {e}", config_path.display()))
    })?;
    let out_base = cli
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("polyesd-out"));
    let format = match cli.format {
        Some(FormatArg::Csv) => OutputFormat::Csv,
        Some(FormatArg::Json) | None => OutputFormat::Json,
    };
    for config in &mut configs {
        if let Some(seed) = cli.seed {
            config.master_seed = seed;
        }
        let result = harness::run(config).map_err(|e| AppError::Usage(e.to_string()))?;
        let dir = out_base.join(&config.name);
        let files = emit(&result, format, &dir)?;
        for cell in &result.cells {
            let status = match (&cell.solver_error, &cell.fit) {
                (Some(err), _) => format!("ABORTED: {err}"),
                (None, Some(fit)) => format!(
                    "ks_radial={:.4} angular_ks={:.4} atoms={} discarded={}",
                    fit.ks_radial, fit.angular_ks, fit.sample_count, cell.discarded_trials
                ),
                (None, None) => "no fit".to_string(),
            };
            eprintln!(
                "[{}] n={} k={} {} (solve {:.2}s, fit {:.2}s)",
                config.name,
                cell.n,
                cell.k,
                status,
                cell.timing.solve_seconds,
                cell.timing.fit_seconds
            );
        }
        for file in files {
            eprintln!("wrote {}", file.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn potential_table(
    cli: &Cli,
    scheme_args: &SchemeArgs,
    n: usize,
    k: usize,
    trials: usize,
    dist: CoefficientDistribution,
    grid: &str,
) -> Result<ExitCode, AppError> {
    let scheme = scheme_args.build().map_err(AppError::Usage)?;
    let parts: Vec<&str> = grid.split(':').collect();
    if parts.len() != 3 {
        return Err(AppError::Usage("--grid must be R_MIN:R_MAX:COUNT".into()));
    }
    let grid_spec = GridSpec {
        r_min: parts[0]
            .parse()
            .map_err(|_| AppError::Usage("bad grid r_min".into()))?,
        r_max: parts[1]
            .parse()
            .map_err(|_| AppError::Usage("bad grid r_max".into()))?,
        count: parts[2]
            .parse()
            .map_err(|_| AppError::Usage("bad grid count".into()))?,
    };
    let seed = SeedSpec::new(cli.seed.unwrap_or(0));
    let dists = vec![dist; k + 1];
    let mut ensemble = Vec::with_capacity(trials);
    for trial in 0..trials {
        match MatrixPolynomial::build(&scheme, &dists, n, k, &seed, trial as u64) {
            Ok(poly) => ensemble.push(poly),
            Err(e) => return Err(AppError::Usage(e.to_string())),
        }
    }
    let rows = potential_convergence_check(&ensemble, &grid_spec.points())
        .map_err(|e| AppError::Failure(e.to_string()))?;
    let mut out = String::from("z_re,z_im,empirical,theoretical,gap\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt(row.z.0),
            fmt(row.z.1),
            fmt(row.empirical),
            fmt(row.theoretical),
            fmt(row.gap)
        ));
    }
    write_table(cli, "potential.csv", &out)?;
    Ok(ExitCode::SUCCESS)
}

fn validate(cli: &Cli) -> Result<ExitCode, AppError> {
    let seed = cli.seed.unwrap_or(0);
    let results = run_validation(seed);
    let mut failures = 0;
    let stdout = std::io::stdout();
    let mut handle = stdout.lock();
    for result in &results {
        let tag = if result.passed { "PASS" } else { "FAIL" };
        writeln!(handle, "[{tag}] {}: {}", result.name, result.detail)?;
        if !result.passed {
            failures += 1;
        }
    }
    writeln!(
        handle,
        "{} checks, {} failed (seed {seed})",
        results.len(),
        failures
    )?;
    if failures == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(EXIT_FAILURE))
    }
}
