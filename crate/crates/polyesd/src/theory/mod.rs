//! Closed-form theoretical objects: the fixed-degree limit density with its
//! atom at zero, radial CDFs, scheme-specific closed forms, and the
//! growing-degree limit measures and potentials.

pub mod closed;
pub mod gamma;
pub mod potential;
mod quadrature;

pub use closed::{density_elliptic, density_kac, density_weyl};
pub use potential::{approx_potential, limit_measure, limit_potential, LimitMeasure};
pub use quadrature::integrate_radial;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::matpoly::{MatPolyError, WeightScheme};

/// Tag enabling closed-form shortcuts for the named schemes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityKind {
    Generic,
    Kac { c: f64 },
    Elliptic { c: f64 },
    Weyl { c: f64 },
}

/// Mean and variance of the index J with P(J = j) ∝ wⱼ²·r²ʲ, evaluated in log
/// space (largest term factored out) so degree-hundreds weight sequences do
/// not overflow.
fn index_moments(weights: &[f64], r: f64) -> (f64, f64) {
    debug_assert!(r > 0.0);
    let ln_r2 = 2.0 * r.ln();
    let mut max_log = f64::NEG_INFINITY;
    let logs: Vec<f64> = weights
        .iter()
        .enumerate()
        .map(|(j, w)| {
            if *w == 0.0 {
                f64::NEG_INFINITY
            } else {
                let t = 2.0 * w.ln() + j as f64 * ln_r2;
                if t > max_log {
                    max_log = t;
                }
                t
            }
        })
        .collect();
    let mut total = 0.0;
    let mut mean_acc = 0.0;
    let mut terms = Vec::with_capacity(logs.len());
    for (j, t) in logs.iter().enumerate() {
        let q = if t.is_finite() { (t - max_log).exp() } else { 0.0 };
        terms.push(q);
        total += q;
        mean_acc += j as f64 * q;
    }
    let mean = mean_acc / total;
    let mut var_acc = 0.0;
    for (j, q) in terms.iter().enumerate() {
        let d = j as f64 - mean;
        var_acc += d * d * q;
    }
    (mean, var_acc / total)
}

/// The fixed-degree limit density at z for a weight sequence |α₀..α_k|.
///
/// The sequence is shifted past its leading zeros (indices p..k re-indexed
/// from 0) and the Laplacian bracket is evaluated as the index variance:
/// f(z) = Var(J)/(πk·|z|²) with P(J = j) ∝ |α_{p+j}|²|z|²ʲ, which equals the
/// explicit two-ratio expression but stays cancellation-free. The result
/// integrates to (k−p)/k; the remaining mass p/k sits in the atom at zero.
pub fn density_general(weights: &[f64], k: usize, z: Complex64) -> f64 {
    assert_eq!(weights.len(), k + 1, "need k+1 weights");
    let p = first_nonzero(weights);
    let shifted = &weights[p..];
    if shifted.len() < 2 {
        return 0.0;
    }
    let r = z.norm();
    if r == 0.0 {
        let w0 = shifted[0];
        let w1 = shifted[1];
        return (w1 * w1) / (std::f64::consts::PI * k as f64 * w0 * w0);
    }
    let (_, var) = index_moments(shifted, r);
    var / (std::f64::consts::PI * k as f64 * r * r)
}

/// Mass of the continuous part within the closed disk of radius r:
/// (1/k)·Σⱼ j|αⱼ|²r²ʲ / Σⱼ |αⱼ|²r²ʲ over the shifted sequence. Tends to
/// (k−p)/k as r → ∞; the full law's CDF adds the atom mass p/k.
pub fn radial_cdf(weights: &[f64], k: usize, r: f64) -> f64 {
    assert_eq!(weights.len(), k + 1, "need k+1 weights");
    assert!(r >= 0.0, "radius must be nonnegative, got {r}");
    let p = first_nonzero(weights);
    let shifted = &weights[p..];
    if shifted.len() < 2 || r == 0.0 {
        return 0.0;
    }
    let (mean, _) = index_moments(shifted, r);
    mean / k as f64
}

fn first_nonzero(weights: &[f64]) -> usize {
    weights
        .iter()
        .position(|w| *w != 0.0)
        .expect("weight sequence has a nonzero entry")
}

/// Radially symmetric theoretical law: continuous density plus a possible
/// atom at zero of mass p/k.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LimitDensity {
    weights: Vec<f64>,
    k: usize,
    p: usize,
    kind: DensityKind,
}

impl LimitDensity {
    pub fn from_weights(weights: Vec<f64>, k: usize) -> Result<Self, MatPolyError> {
        if weights.len() != k + 1 {
            return Err(MatPolyError::LengthMismatch {
                expected: k + 1,
                got: weights.len(),
            });
        }
        let last = *weights.last().expect("k+1 >= 2");
        if last <= 0.0 || weights.iter().any(|w| *w < 0.0 || !w.is_finite()) {
            return Err(MatPolyError::InvalidScheme(
                "weights must be nonnegative with a positive leading entry".into(),
            ));
        }
        let p = first_nonzero(&weights);
        Ok(Self {
            weights,
            k,
            p,
            kind: DensityKind::Generic,
        })
    }

    pub fn from_scheme(scheme: &WeightScheme, k: usize) -> Result<Self, MatPolyError> {
        let mut law = Self::from_weights(scheme.weights(k)?, k)?;
        law.kind = match scheme {
            WeightScheme::Kac { c } => DensityKind::Kac { c: *c },
            WeightScheme::Elliptic { c } => DensityKind::Elliptic { c: *c },
            WeightScheme::Weyl { c } => DensityKind::Weyl { c: *c },
            _ => DensityKind::Generic,
        };
        Ok(law)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn kind(&self) -> DensityKind {
        self.kind
    }

    /// Mass of the δ₀ atom, p/k.
    pub fn atom_mass(&self) -> f64 {
        self.p as f64 / self.k as f64
    }

    /// Pointwise density of the continuous part (radially symmetric).
    pub fn density(&self, z: Complex64) -> f64 {
        match self.kind {
            DensityKind::Kac { c } => density_kac(c, self.k, z),
            DensityKind::Elliptic { c } => density_elliptic(c, z),
            DensityKind::Weyl { c } => density_weyl(c, self.k, z),
            DensityKind::Generic => density_general(&self.weights, self.k, z),
        }
    }

    pub fn density_radial(&self, r: f64) -> f64 {
        self.density(Complex64::new(r, 0.0))
    }

    /// CDF of the continuous part only.
    pub fn radial_cdf_continuous(&self, r: f64) -> f64 {
        radial_cdf(&self.weights, self.k, r)
    }

    /// Full radial CDF including the atom at zero.
    pub fn cdf(&self, r: f64) -> f64 {
        self.atom_mass() + self.radial_cdf_continuous(r)
    }

    /// Smallest radius with cdf(r) ≥ q, by bisection.
    pub fn quantile(&self, q: f64) -> f64 {
        assert!((0.0..=1.0).contains(&q));
        if q <= self.cdf(0.0) {
            return 0.0;
        }
        let mut hi = 1.0;
        while self.cdf(hi) < q && hi < 1e12 {
            hi *= 2.0;
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.cdf(mid) < q {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Radius beyond which less than `tail` mass remains.
    pub fn tail_radius(&self, tail: f64) -> f64 {
        self.quantile(1.0 - tail)
    }

    /// atom_mass + 2π·∫₀ᴿ f(r)·r dr with R at the 1e-9 tail; should be 1.
    pub fn total_mass_by_quadrature(&self, tol: f64) -> f64 {
        let radius = self.tail_radius(1e-9);
        let integral = integrate_radial(|r| self.density_radial(r) * r, 0.0, radius, tol);
        self.atom_mass() + 2.0 * std::f64::consts::PI * integral
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn elliptic_density_at_zero_is_one_over_pi() {
        for k in [2usize, 5, 9] {
            let law =
                LimitDensity::from_scheme(&WeightScheme::Elliptic { c: 1.0 }, k).unwrap();
            let f0 = density_general(law.weights(), k, Complex64::ZERO);
            assert!(
                (f0 - 1.0 / PI).abs() < 1e-12,
                "k={k}: f(0) = {f0}, want {}",
                1.0 / PI
            );
        }
    }

    #[test]
    fn kac_degree_one_is_riemann_sphere_density() {
        let w = WeightScheme::Kac { c: 1.0 }.weights(1).unwrap();
        for r in [0.0, 0.4, 1.0, 2.3] {
            let got = density_general(&w, 1, Complex64::new(r, 0.0));
            let want = 1.0 / (PI * (1.0 + r * r).powi(2));
            assert!((got - want).abs() < 1e-12 * want.max(1e-3));
        }
    }

    #[test]
    fn generic_density_decays_with_unit_mass() {
        let law = LimitDensity::from_weights(vec![1.0, 1.0, 1.0], 2).unwrap();
        assert!(law.density(Complex64::new(1e4, 0.0)) < 1e-10);
        let mass = law.total_mass_by_quadrature(1e-9);
        assert!((mass - 1.0).abs() < 1e-6, "mass = {mass}");
    }

    #[test]
    fn frozen_generic_values() {
        // Independently computed with 40-digit arithmetic.
        let law = LimitDensity::from_weights(vec![1.0, 1.0, 1.0], 2).unwrap();
        let f = law.density(Complex64::new(1.5, 0.0));
        assert!((f - 0.034693960119981254719).abs() < 1e-15);
        let m = law.radial_cdf_continuous(1.5);
        assert!((m - 0.74436090225563909774).abs() < 1e-14);
    }

    #[test]
    fn radial_cdf_endpoints_and_hand_value() {
        let w = WeightScheme::Kac { c: 1.0 }.weights(2).unwrap();
        assert_eq!(radial_cdf(&w, 2, 0.0), 0.0);
        assert!((radial_cdf(&w, 2, 1e9) - 1.0).abs() < 1e-9);
        // (1/k)·Σ j·r²ʲ / Σ r²ʲ at r = 1: (1/2)·(0+1+2)/3 = 1/2.
        assert!((radial_cdf(&w, 2, 1.0) - 0.5).abs() < 1e-14);
    }

    #[test]
    #[should_panic(expected = "nonnegative")]
    fn negative_radius_panics() {
        let w = vec![1.0, 1.0];
        radial_cdf(&w, 1, -0.5);
    }

    #[test]
    fn atom_mass_and_shifted_density() {
        let law = LimitDensity::from_weights(vec![0.0, 1.0, 1.0], 2).unwrap();
        assert_eq!(law.atom_mass(), 0.5);
        assert_eq!(law.cdf(0.0), 0.5);
        // Continuous part carries mass (k−p)/k = 1/2.
        let mass = law.total_mass_by_quadrature(1e-9);
        assert!((mass - 1.0).abs() < 1e-6);
        // The shifted sequence (1,1) with degree 1 has the same shape scaled by k ratio.
        let shifted = LimitDensity::from_weights(vec![1.0, 1.0], 1).unwrap();
        let z = Complex64::new(0.7, 0.3);
        assert!((law.density(z) - 0.5 * shifted.density(z)).abs() < 1e-14);
    }

    #[test]
    fn quantile_inverts_cdf() {
        let law = LimitDensity::from_scheme(&WeightScheme::Elliptic { c: 1.0 }, 4).unwrap();
        for q in [0.1, 0.35, 0.62, 0.9] {
            let r = law.quantile(q);
            assert!((law.cdf(r) - q).abs() < 1e-9);
        }
    }
}
