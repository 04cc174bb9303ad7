//! Empirical measures from simulation output, empirical logarithmic
//! potentials, and statistics comparing empirical against theoretical laws.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{log_abs_det, lu_factor};
use crate::matpoly::{MatPolyError, MatrixPolynomial};
use crate::theory::{approx_potential, LimitDensity, LimitMeasure};

/// Atoms with modulus below this are counted as exact zeros (the p > 0
/// constructions insert exact zeros).
pub const ZERO_ATOM_THRESHOLD: f64 = 1e-10;

/// Grid points closer than this to a pooled eigenvalue are dropped from
/// potential tables.
pub const EIGENVALUE_EXCLUSION_RADIUS: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("an empirical measure needs at least one atom")]
    Empty,
    #[error("ensemble is empty")]
    EmptyEnsemble,
    #[error("ensemble polynomials disagree in size or weights")]
    MixedEnsemble,
    #[error(transparent)]
    MatPoly(#[from] MatPolyError),
}

/// Finite multiset of complex atoms, each carrying weight 1/|atoms|.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmpiricalMeasure {
    atoms: Vec<Complex64>,
}

/// Uniform atomic measure on a list of eigenvalues; pooling several trials
/// means concatenating their atom lists.
pub fn esd(eigenvalues: &[Complex64]) -> Result<EmpiricalMeasure, MeasureError> {
    EmpiricalMeasure::new(eigenvalues.to_vec())
}

impl EmpiricalMeasure {
    pub fn new(atoms: Vec<Complex64>) -> Result<Self, MeasureError> {
        if atoms.is_empty() {
            return Err(MeasureError::Empty);
        }
        Ok(Self { atoms })
    }

    pub fn atoms(&self) -> &[Complex64] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn extend(&mut self, more: &[Complex64]) {
        self.atoms.extend_from_slice(more);
    }

    /// Fraction of atoms counted as exact zeros.
    pub fn zero_fraction(&self) -> f64 {
        let zeros = self
            .atoms
            .iter()
            .filter(|a| a.norm() < ZERO_ATOM_THRESHOLD)
            .count();
        zeros as f64 / self.atoms.len() as f64
    }

    /// Empirical mass in the closed annulus r_lo ≤ |z| ≤ r_hi.
    pub fn mass_in_annulus(&self, r_lo: f64, r_hi: f64) -> f64 {
        let hits = self
            .atoms
            .iter()
            .filter(|a| {
                let r = a.norm();
                r >= r_lo && r <= r_hi
            })
            .count();
        hits as f64 / self.atoms.len() as f64
    }

    /// Sorted atom radii, zeros first.
    pub fn sorted_radii(&self) -> Vec<f64> {
        let mut radii: Vec<f64> = self
            .atoms
            .iter()
            .map(|a| {
                let r = a.norm();
                if r < ZERO_ATOM_THRESHOLD {
                    0.0
                } else {
                    r
                }
            })
            .collect();
        radii.sort_by(|a, b| a.partial_cmp(b).expect("finite radii"));
        radii
    }

    /// Measure keeping only the nonzero atoms, if any remain.
    pub fn nonzero_part(&self) -> Option<EmpiricalMeasure> {
        let kept: Vec<Complex64> = self
            .atoms
            .iter()
            .copied()
            .filter(|a| a.norm() >= ZERO_ATOM_THRESHOLD)
            .collect();
        if kept.is_empty() {
            None
        } else {
            Some(EmpiricalMeasure { atoms: kept })
        }
    }
}

/// Anything exposing a radial CDF can be fitted against.
pub trait RadialLaw {
    fn cdf(&self, r: f64) -> f64;
    fn quantile(&self, q: f64) -> f64;
}

impl RadialLaw for LimitDensity {
    fn cdf(&self, r: f64) -> f64 {
        LimitDensity::cdf(self, r)
    }
    fn quantile(&self, q: f64) -> f64 {
        LimitDensity::quantile(self, q)
    }
}

impl RadialLaw for LimitMeasure {
    fn cdf(&self, r: f64) -> f64 {
        self.radial_cdf(r)
    }
    fn quantile(&self, q: f64) -> f64 {
        LimitMeasure::quantile(self, q)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnnulusRow {
    pub r_lo: f64,
    /// None marks the unbounded tail annulus.
    pub r_hi: Option<f64>,
    pub empirical_mass: f64,
    pub theoretical_mass: f64,
}

/// Quantitative proxy for weak convergence of radially symmetric laws.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitReport {
    /// Sup distance between the empirical and (atom-adjusted) theoretical
    /// radial CDFs.
    pub ks_radial: f64,
    /// KS distance of the nonzero atoms' arguments against uniform [0, 2π).
    pub angular_ks: f64,
    /// Decile annuli of the theoretical law with both masses.
    pub annulus_table: Vec<AnnulusRow>,
    pub sample_count: usize,
}

/// One-sample KS distance of sorted data against a CDF.
fn ks_distance<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> f64 {
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max((f - i as f64 / n).abs());
        d = d.max(((i + 1) as f64 / n - f).abs());
    }
    d
}

/// Compare an empirical measure against a radially symmetric theoretical law.
pub fn fit_radial_law(measure: &EmpiricalMeasure, law: &dyn RadialLaw) -> FitReport {
    let radii = measure.sorted_radii();
    let ks_radial = ks_distance(&radii, |r| law.cdf(r)).min(1.0);

    let mut args: Vec<f64> = measure
        .atoms
        .iter()
        .filter(|a| a.norm() >= ZERO_ATOM_THRESHOLD)
        .map(|a| {
            let t = a.arg();
            if t < 0.0 {
                t + std::f64::consts::TAU
            } else {
                t
            }
        })
        .collect();
    args.sort_by(|a, b| a.partial_cmp(b).expect("finite arguments"));
    let angular_ks = if args.is_empty() {
        1.0
    } else {
        ks_distance(&args, |t| t / std::f64::consts::TAU).min(1.0)
    };

    // Annuli between consecutive decile radii of the theoretical law; a final
    // unbounded annulus collects the tail.
    let mut edges = vec![0.0];
    for decile in 1..10 {
        let r = law.quantile(decile as f64 / 10.0);
        if r.is_finite() && r > edges.last().copied().unwrap_or(0.0) {
            edges.push(r);
        }
    }
    let mut annulus_table = Vec::with_capacity(edges.len());
    for (i, &lo) in edges.iter().enumerate() {
        let hi = edges.get(i + 1).copied();
        let empirical = radii
            .iter()
            .filter(|r| **r >= lo && hi.map_or(true, |h| **r < h))
            .count() as f64
            / radii.len() as f64;
        let theoretical = match hi {
            Some(h) => law.cdf(h) - law.cdf(lo),
            None => 1.0 - law.cdf(lo),
        } + if i == 0 { law.cdf(0.0) } else { 0.0 };
        annulus_table.push(AnnulusRow {
            r_lo: lo,
            r_hi: hi,
            empirical_mass: empirical,
            theoretical_mass: theoretical,
        });
    }

    FitReport {
        ks_radial,
        angular_ks,
        annulus_table,
        sample_count: measure.len(),
    }
}

/// Fit against a fixed-degree limit density (atom at zero included).
pub fn fit(measure: &EmpiricalMeasure, density: &LimitDensity) -> FitReport {
    fit_radial_law(measure, density)
}

/// Fit against a growing-degree limit measure descriptor.
pub fn fit_measure(measure: &EmpiricalMeasure, law: &LimitMeasure) -> FitReport {
    fit_radial_law(measure, law)
}

/// Quarter-circle (Marchenko–Pastur, in this scaling) CDF on [0, 2]:
/// ∫₀ˣ √(4−t²)/π dt.
pub fn marchenko_pastur_cdf(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 2.0 {
        return 1.0;
    }
    (0.5 * x * (4.0 - x * x).sqrt() + 2.0 * (0.5 * x).asin()) / std::f64::consts::PI
}

/// KS distance between the empirical CDF of values/scale and the
/// quarter-circle law.
pub fn mp_fit(singular_values: &[f64], scale: f64) -> f64 {
    assert!(scale > 0.0, "scale must be positive");
    assert!(
        singular_values.iter().all(|v| *v >= 0.0),
        "singular values must be nonnegative"
    );
    if singular_values.is_empty() {
        return 1.0;
    }
    let mut scaled: Vec<f64> = singular_values.iter().map(|v| v / scale).collect();
    scaled.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    ks_distance(&scaled, marchenko_pastur_cdf).min(1.0)
}

/// Empirical logarithmic potential (1/(nk))·ln|det P(z)|; −∞ if z is an
/// eigenvalue (the determinant vanishes there).
pub fn empirical_log_potential(poly: &MatrixPolynomial, z: Complex64) -> f64 {
    let factors = lu_factor(&poly.evaluate(z)).expect("P(z) is square by construction");
    log_abs_det(&factors) / poly.nk() as f64
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PotentialRow {
    pub z: (f64, f64),
    pub empirical: f64,
    pub theoretical: f64,
    pub gap: f64,
}

/// Potential table from already-pooled atoms: the empirical column is the
/// mean of ln|z−λ| over the pool (the (1/(nk))ln|det C_k| term cancels by the
/// determinant factorization), the theoretical column is (1/(2k))·ln σ²(z)
/// with σ² = Σ|αᵢ|²|z|²ⁱ. Grid points inside the exclusion radius of any
/// pooled atom are dropped.
pub fn potential_rows_from_atoms(
    atoms: &[Complex64],
    weights: &[f64],
    k: usize,
    grid: &[Complex64],
) -> Vec<PotentialRow> {
    let mut rows = Vec::with_capacity(grid.len());
    'grid: for &z in grid {
        let mut acc = 0.0;
        for lambda in atoms {
            let d = (z - lambda).norm();
            if d < EIGENVALUE_EXCLUSION_RADIUS {
                continue 'grid;
            }
            acc += d.ln();
        }
        let empirical = acc / atoms.len() as f64;
        let theoretical = approx_potential(weights, k, z);
        rows.push(PotentialRow {
            z: (z.re, z.im),
            empirical,
            theoretical,
            gap: (empirical - theoretical).abs(),
        });
    }
    rows
}

/// Solve every ensemble member for its eigenvalues, pool, and tabulate
/// empirical vs theoretical potentials on the grid.
pub fn potential_convergence_check(
    ensemble: &[MatrixPolynomial],
    grid: &[Complex64],
) -> Result<Vec<PotentialRow>, MeasureError> {
    let first = ensemble.first().ok_or(MeasureError::EmptyEnsemble)?;
    let (n, k) = (first.n(), first.degree());
    if ensemble
        .iter()
        .any(|p| p.n() != n || p.degree() != k || p.weights() != first.weights())
    {
        return Err(MeasureError::MixedEnsemble);
    }
    let mut atoms = Vec::with_capacity(ensemble.len() * n * k);
    for poly in ensemble {
        atoms.extend(poly.eigenvalues_of()?);
    }
    Ok(potential_rows_from_atoms(
        &atoms,
        first.weights(),
        k,
        grid,
    ))
}
