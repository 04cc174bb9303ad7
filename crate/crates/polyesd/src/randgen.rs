//! Zero-mean, unit-variance complex coefficient distributions and
//! deterministic counter-based substreams for parallel Monte Carlo.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::linalg::ComplexMatrix;

const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Entry distributions, all pre-normalized to E[X] = 0 and E[|X|²] = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientDistribution {
    ComplexGaussian,
    UniformDisk,
    UniformSquare,
    RademacherPair,
    TwoPointReal,
}

impl CoefficientDistribution {
    pub const ALL: [CoefficientDistribution; 5] = [
        CoefficientDistribution::ComplexGaussian,
        CoefficientDistribution::UniformDisk,
        CoefficientDistribution::UniformSquare,
        CoefficientDistribution::RademacherPair,
        CoefficientDistribution::TwoPointReal,
    ];

    /// Continuous bounded-density kinds are the ones eligible for the
    /// growing-degree regime; the discrete kinds serve the fixed-degree one.
    pub fn is_continuous(self) -> bool {
        matches!(
            self,
            CoefficientDistribution::ComplexGaussian
                | CoefficientDistribution::UniformDisk
                | CoefficientDistribution::UniformSquare
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            CoefficientDistribution::ComplexGaussian => "complex_gaussian",
            CoefficientDistribution::UniformDisk => "uniform_disk",
            CoefficientDistribution::UniformSquare => "uniform_square",
            CoefficientDistribution::RademacherPair => "rademacher_pair",
            CoefficientDistribution::TwoPointReal => "two_point_real",
        }
    }
}

impl std::str::FromStr for CoefficientDistribution {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "complex_gaussian" => Ok(CoefficientDistribution::ComplexGaussian),
            "uniform_disk" => Ok(CoefficientDistribution::UniformDisk),
            "uniform_square" => Ok(CoefficientDistribution::UniformSquare),
            "rademacher_pair" => Ok(CoefficientDistribution::RademacherPair),
            "two_point_real" => Ok(CoefficientDistribution::TwoPointReal),
            other => Err(format!(
                "unknown distribution {other:?}; expected one of complex_gaussian, \
                 uniform_disk, uniform_square, rademacher_pair, two_point_real"
            )),
        }
    }
}

impl std::fmt::Display for CoefficientDistribution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Master seed plus the (trial, coefficient) substream labels.
///
/// Substreams key a ChaCha8 generator with the full label, so any
/// (master_seed, trial, coefficient) triple reproduces the identical stream
/// regardless of thread scheduling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSpec {
    pub master_seed: u64,
}

/// Domain separator so differently-purposed streams never collide.
const STREAM_DOMAIN: u64 = 0x706f6c79_65736431; // "polyesd1"

impl SeedSpec {
    pub fn new(master_seed: u64) -> Self {
        Self { master_seed }
    }

    /// The generator for one (trial, coefficient) label.
    pub fn stream(&self, trial: u64, coefficient: u64) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        key[0..8].copy_from_slice(&self.master_seed.to_le_bytes());
        key[8..16].copy_from_slice(&trial.to_le_bytes());
        key[16..24].copy_from_slice(&coefficient.to_le_bytes());
        key[24..32].copy_from_slice(&STREAM_DOMAIN.to_le_bytes());
        ChaCha8Rng::from_seed(key)
    }

    /// A derived SeedSpec for an independent sub-experiment (e.g. one grid
    /// cell), so sibling cells do not share (trial, coefficient) streams.
    pub fn child(&self, index: u64) -> SeedSpec {
        SeedSpec {
            master_seed: splitmix64(
                self.master_seed ^ splitmix64(index.wrapping_add(0x9E37_79B9)),
            ),
        }
    }
}

fn splitmix64(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One draw from the given kind.
pub fn sample_scalar<R: Rng>(dist: CoefficientDistribution, rng: &mut R) -> Complex64 {
    match dist {
        CoefficientDistribution::ComplexGaussian => {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re * SQRT_HALF, im * SQRT_HALF)
        }
        CoefficientDistribution::UniformDisk => {
            // Radius √2 makes E[|X|²] = 1.
            let u: f64 = rng.random();
            let theta: f64 = rng.random::<f64>() * std::f64::consts::TAU;
            let r = (2.0 * u).sqrt();
            Complex64::from_polar(r, theta)
        }
        CoefficientDistribution::UniformSquare => {
            let half = (1.5f64).sqrt();
            let re = (2.0 * rng.random::<f64>() - 1.0) * half;
            let im = (2.0 * rng.random::<f64>() - 1.0) * half;
            Complex64::new(re, im)
        }
        CoefficientDistribution::RademacherPair => {
            let re = if rng.random::<bool>() { SQRT_HALF } else { -SQRT_HALF };
            let im = if rng.random::<bool>() { SQRT_HALF } else { -SQRT_HALF };
            Complex64::new(re, im)
        }
        CoefficientDistribution::TwoPointReal => {
            Complex64::new(if rng.random::<bool>() { 1.0 } else { -1.0 }, 0.0)
        }
    }
}

/// n×n matrix of i.i.d. draws.
pub fn sample_matrix<R: Rng>(
    dist: CoefficientDistribution,
    n: usize,
    rng: &mut R,
) -> ComplexMatrix {
    assert!(n >= 1, "matrix size must be positive");
    ComplexMatrix::from_fn(n, n, |_, _| sample_scalar(dist, rng))
}
