//! Experiment orchestration: configuration, deterministic parallel Monte
//! Carlo over trials, aggregation, and CSV/JSON emission.

pub mod config;
mod emit;

pub use config::{parse_config_file, parse_config_str, ConfigError};
pub use emit::emit;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

use crate::matpoly::{MatPolyError, MatrixPolynomial, WeightScheme};
use crate::measure::{
    fit_radial_law, potential_rows_from_atoms, EmpiricalMeasure, FitReport, PotentialRow,
};
use crate::randgen::{CoefficientDistribution, SeedSpec};
use crate::theory::{limit_measure, LimitDensity, LimitMeasure};

/// The two asymptotic regimes: growing size at fixed degree, or growing
/// degree with small (or slowly growing) size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    FixedKGrowingN,
    FixedOrSlowNGrowingK,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Radial grid for potential tables; angles are spread deterministically by
/// the golden angle so no single direction dominates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn points(&self) -> Vec<Complex64> {
        const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;
        (0..self.count)
            .map(|i| {
                let t = if self.count <= 1 {
                    0.0
                } else {
                    i as f64 / (self.count - 1) as f64
                };
                let r = self.r_min + t * (self.r_max - self.r_min);
                Complex64::from_polar(r, GOLDEN_ANGLE * i as f64)
            })
            .collect()
    }
}

/// Eigenvalue dumps above this many pooled atoms are suppressed.
pub const DUMP_ATOM_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub name: String,
    pub regime: Regime,
    pub scheme: WeightScheme,
    /// One kind for every coefficient, or exactly k+1 kinds.
    pub distributions: Vec<CoefficientDistribution>,
    /// (n, k) pairs, one simulation cell each.
    pub sizes: Vec<(usize, usize)>,
    pub trials: usize,
    pub master_seed: u64,
    pub potential_grid: Option<GridSpec>,
    pub dump_eigenvalues: bool,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.sizes.is_empty() {
            return Err(ConfigError::Invalid("sizes must be nonempty".into()));
        }
        if self.trials < 1 {
            return Err(ConfigError::Invalid("trials must be at least 1".into()));
        }
        for &(n, k) in &self.sizes {
            if n < 1 || k < 1 {
                return Err(ConfigError::Invalid(format!(
                    "sizes must have n, k ≥ 1, got {n}x{k}"
                )));
            }
        }
        if self.distributions.is_empty() {
            return Err(ConfigError::Invalid(
                "at least one distribution kind is required".into(),
            ));
        }
        if self.distributions.len() > 1 {
            for &(_, k) in &self.sizes {
                if self.distributions.len() != k + 1 {
                    return Err(ConfigError::Invalid(format!(
                        "{} per-coefficient distributions cannot serve degree k={k} (need k+1)",
                        self.distributions.len()
                    )));
                }
            }
        }
        if self.regime == Regime::FixedOrSlowNGrowingK {
            if let Some(discrete) = self.distributions.iter().find(|d| !d.is_continuous()) {
                return Err(ConfigError::Invalid(format!(
                    "regime fixed_or_slow_n_growing_k requires continuous distributions with \
                     bounded densities; {discrete} is discrete and only eligible for \
                     fixed_k_growing_n"
                )));
            }
            if limit_measure(&self.scheme).is_none() {
                return Err(ConfigError::Invalid(
                    "regime fixed_or_slow_n_growing_k needs a named scheme with a known \
                     limit measure (kac, elliptic, weyl, hyperbolic)"
                        .into(),
                ));
            }
        }
        if let WeightScheme::Custom { weights } = &self.scheme {
            for &(_, k) in &self.sizes {
                if weights.len() != k + 1 {
                    return Err(ConfigError::Invalid(format!(
                        "custom scheme has {} weights but a cell of degree {k} needs {}",
                        weights.len(),
                        k + 1
                    )));
                }
            }
        }
        Ok(())
    }

    fn distributions_for_degree(&self, k: usize) -> Vec<CoefficientDistribution> {
        if self.distributions.len() == 1 {
            vec![self.distributions[0]; k + 1]
        } else {
            self.distributions.clone()
        }
    }
}

/// The exact theoretical law a cell was fitted against.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TheoreticalLaw {
    FixedDegreeDensity(LimitDensity),
    GrowingDegreeMeasure(LimitMeasure),
}

/// Wall-clock per phase, kept out of the serialized result so emitted files
/// stay byte-identical across thread counts.
#[derive(Debug, Clone, Copy, Default)]
pub struct CellTiming {
    pub solve_seconds: f64,
    pub fit_seconds: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellResult {
    pub n: usize,
    pub k: usize,
    pub trials: usize,
    /// Trials discarded for a numerically singular leading block; never
    /// silently resampled.
    pub discarded_trials: usize,
    pub fit: Option<FitReport>,
    pub law: Option<TheoreticalLaw>,
    pub potential: Option<Vec<PotentialRow>>,
    /// Diagnostic for an aborted cell (solver failure); other cells proceed.
    pub solver_error: Option<String>,
    #[serde(skip)]
    pub timing: CellTiming,
    /// Pooled eigenvalues for file dumps; not part of the JSON result.
    #[serde(skip)]
    pub pooled_atoms: Vec<Complex64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub code_version: String,
    pub cells: Vec<CellResult>,
}

enum TrialOutcome {
    Eigenvalues(Vec<Complex64>),
    Discarded,
    Failed(String),
}

/// Run every (n, k) cell of the experiment.
///
/// Trials are one parallel task each, reduced in trial order, and each cell
/// draws from its own derived seed, so output is deterministic for a fixed
/// master seed regardless of thread count.
pub fn run(config: &ExperimentConfig) -> Result<ExperimentResult, ConfigError> {
    config.validate()?;
    let master = SeedSpec::new(config.master_seed);
    let cells = config
        .sizes
        .iter()
        .enumerate()
        .map(|(cell_index, &(n, k))| run_cell(config, master.child(cell_index as u64), n, k))
        .collect();
    Ok(ExperimentResult {
        config: config.clone(),
        code_version: env!("CARGO_PKG_VERSION").to_string(),
        cells,
    })
}

fn run_cell(config: &ExperimentConfig, cell_seed: SeedSpec, n: usize, k: usize) -> CellResult {
    let dists = config.distributions_for_degree(k);
    let solve_start = Instant::now();
    let outcomes: Vec<TrialOutcome> = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            match MatrixPolynomial::build(&config.scheme, &dists, n, k, &cell_seed, trial as u64)
            {
                Err(e) => TrialOutcome::Failed(format!("build failed: {e}")),
                Ok(poly) => match poly.eigenvalues_of() {
                    Ok(eig) => TrialOutcome::Eigenvalues(eig),
                    Err(MatPolyError::SingularLeadingCoefficient { .. }) => {
                        TrialOutcome::Discarded
                    }
                    Err(e) => TrialOutcome::Failed(format!("trial {trial}: {e}")),
                },
            }
        })
        .collect();
    let solve_seconds = solve_start.elapsed().as_secs_f64();

    let mut result = CellResult {
        n,
        k,
        trials: config.trials,
        discarded_trials: 0,
        fit: None,
        law: None,
        potential: None,
        solver_error: None,
        timing: CellTiming {
            solve_seconds,
            fit_seconds: 0.0,
        },
        pooled_atoms: Vec::new(),
    };

    let mut pooled = Vec::with_capacity(config.trials * n * k);
    for outcome in outcomes {
        match outcome {
            TrialOutcome::Eigenvalues(eig) => pooled.extend(eig),
            TrialOutcome::Discarded => result.discarded_trials += 1,
            TrialOutcome::Failed(msg) => {
                result.solver_error = Some(msg);
                return result;
            }
        }
    }
    if pooled.is_empty() {
        result.solver_error = Some("all trials discarded (singular leading blocks)".into());
        return result;
    }

    let fit_start = Instant::now();
    let measure = EmpiricalMeasure::new(pooled.clone()).expect("nonempty pool");
    let (law, report) = match config.regime {
        Regime::FixedKGrowingN => {
            let density = LimitDensity::from_scheme(&config.scheme, k)
                .expect("scheme validated against cell degree");
            let report = fit_radial_law(&measure, &density);
            (TheoreticalLaw::FixedDegreeDensity(density), report)
        }
        Regime::FixedOrSlowNGrowingK => {
            let target = limit_measure(&config.scheme).expect("validated named scheme");
            let report = fit_radial_law(&measure, &target);
            (TheoreticalLaw::GrowingDegreeMeasure(target), report)
        }
    };
    result.fit = Some(report);
    result.law = Some(law);

    if let Some(grid) = &config.potential_grid {
        let weights = config
            .scheme
            .weights(k)
            .expect("scheme validated against cell degree");
        result.potential = Some(potential_rows_from_atoms(
            &pooled,
            &weights,
            k,
            &grid.points(),
        ));
    }
    result.timing.fit_seconds = fit_start.elapsed().as_secs_f64();

    if config.dump_eigenvalues && pooled.len() <= DUMP_ATOM_LIMIT {
        result.pooled_atoms = pooled;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> ExperimentConfig {
        ExperimentConfig {
            name: "unit".into(),
            regime: Regime::FixedKGrowingN,
            scheme: WeightScheme::Kac { c: 1.0 },
            distributions: vec![CoefficientDistribution::ComplexGaussian],
            sizes: vec![(3, 2)],
            trials: 4,
            master_seed: 5,
            potential_grid: None,
            dump_eigenvalues: false,
        }
    }

    #[test]
    fn run_produces_expected_atom_counts() {
        let result = run(&small_config()).unwrap();
        assert_eq!(result.cells.len(), 1);
        let cell = &result.cells[0];
        assert!(cell.solver_error.is_none());
        let fit = cell.fit.as_ref().unwrap();
        assert_eq!(fit.sample_count, 4 * 3 * 2);
    }

    #[test]
    fn discrete_distribution_rejected_in_growing_degree_regime() {
        let mut config = small_config();
        config.regime = Regime::FixedOrSlowNGrowingK;
        config.distributions = vec![CoefficientDistribution::TwoPointReal];
        let err = run(&config).unwrap_err();
        assert!(err.to_string().contains("continuous"));
    }

    #[test]
    fn zero_trials_rejected() {
        let mut config = small_config();
        config.trials = 0;
        assert!(run(&config).is_err());
    }

    #[test]
    fn custom_scheme_degree_mismatch_rejected() {
        let mut config = small_config();
        config.scheme = WeightScheme::Custom {
            weights: vec![1.0, 1.0],
        };
        config.sizes = vec![(2, 3)];
        assert!(run(&config).is_err());
    }

    #[test]
    fn per_coefficient_distributions_must_match_degree() {
        let mut config = small_config();
        config.distributions = vec![CoefficientDistribution::ComplexGaussian; 4];
        assert!(run(&config).is_err());
    }

    #[test]
    fn grid_points_lie_on_requested_radii() {
        let grid = GridSpec {
            r_min: 1.0,
            r_max: 2.0,
            count: 5,
        };
        let pts = grid.points();
        assert_eq!(pts.len(), 5);
        assert!((pts[0].norm() - 1.0).abs() < 1e-12);
        assert!((pts[4].norm() - 2.0).abs() < 1e-12);
    }
}
