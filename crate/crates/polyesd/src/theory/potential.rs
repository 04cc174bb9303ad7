//! Growing-degree limit measures and logarithmic potentials for the named
//! weight schemes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::matpoly::WeightScheme;

/// Limit measure descriptors for the k → ∞ regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum LimitMeasure {
    /// Uniform measure on the circle of the given radius.
    UniformCircle { radius: f64 },
    /// Uniform measure on the disk of the given radius.
    UniformDisk { radius: f64 },
    /// Uniform measure on the Riemann sphere after stereographic projection
    /// with respect to the circle of radius 1/c.
    RiemannSphere { c: f64 },
}

impl LimitMeasure {
    /// Mass within the closed disk of radius r.
    pub fn radial_cdf(&self, r: f64) -> f64 {
        assert!(r >= 0.0);
        match *self {
            LimitMeasure::UniformCircle { radius } => {
                if r >= radius {
                    1.0
                } else {
                    0.0
                }
            }
            LimitMeasure::UniformDisk { radius } => {
                let ratio = (r / radius).min(1.0);
                ratio * ratio
            }
            LimitMeasure::RiemannSphere { c } => {
                let y = (c * r) * (c * r);
                y / (1.0 + y)
            }
        }
    }

    /// Smallest radius with cdf(r) ≥ q.
    pub fn quantile(&self, q: f64) -> f64 {
        assert!((0.0..=1.0).contains(&q));
        match *self {
            LimitMeasure::UniformCircle { radius } => {
                if q == 0.0 {
                    0.0
                } else {
                    radius
                }
            }
            LimitMeasure::UniformDisk { radius } => radius * q.sqrt(),
            LimitMeasure::RiemannSphere { c } => {
                if q >= 1.0 {
                    f64::INFINITY
                } else {
                    (q / (1.0 - q)).sqrt() / c
                }
            }
        }
    }
}

/// The k → ∞ limit measure for a named scheme; custom weight sequences have
/// no closed-form limit here.
pub fn limit_measure(scheme: &WeightScheme) -> Option<LimitMeasure> {
    match scheme {
        WeightScheme::Kac { c } => Some(LimitMeasure::UniformCircle { radius: 1.0 / c }),
        WeightScheme::Hyperbolic { c, .. } => {
            Some(LimitMeasure::UniformCircle { radius: 1.0 / c })
        }
        WeightScheme::Weyl { c } => Some(LimitMeasure::UniformDisk { radius: 1.0 / c }),
        WeightScheme::Elliptic { c } => Some(LimitMeasure::RiemannSphere { c: *c }),
        WeightScheme::Custom { .. } => None,
    }
}

/// Closed-form limit potential U(z), constants as printed (including the
/// additive −c terms, which do not affect ΔU; comparisons elsewhere are
/// modulo additive constants).
pub fn limit_potential(scheme: &WeightScheme, z: Complex64) -> Option<f64> {
    let potential = match scheme {
        WeightScheme::Kac { c } | WeightScheme::Hyperbolic { c, .. } => {
            let r = (z * *c).norm();
            if r > 1.0 {
                -c + r.ln()
            } else {
                -c
            }
        }
        WeightScheme::Weyl { c } => {
            let r = (z * *c).norm();
            if r < 1.0 {
                -c + 0.5 * (r * r - 1.0)
            } else {
                -c + r.ln()
            }
        }
        WeightScheme::Elliptic { c } => {
            let y = (z * *c).norm_sqr();
            -c + 0.5 * (y + 1.0).ln()
        }
        WeightScheme::Custom { .. } => return None,
    };
    Some(potential)
}

/// Numerical stand-in for the limit potential of an arbitrary weight
/// sequence at finite degree: (1/2k)·ln Σ |αᵢ|²|z|²ⁱ, evaluated in log space.
/// Approximate by construction; the named schemes have exact forms above.
pub fn approx_potential(weights: &[f64], k: usize, z: Complex64) -> f64 {
    assert_eq!(weights.len(), k + 1);
    let r = z.norm();
    if r == 0.0 {
        let w0 = weights[0];
        return if w0 == 0.0 {
            f64::NEG_INFINITY
        } else {
            w0.ln() / k as f64
        };
    }
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
    let sum: f64 = logs
        .iter()
        .filter(|t| t.is_finite())
        .map(|t| (t - max_log).exp())
        .sum();
    (max_log + sum.ln()) / (2.0 * k as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kac_potential_at_e_is_zero() {
        // c = 1 at |z| = e: U = −1 + ln(e) = 0.
        let u = limit_potential(
            &WeightScheme::Kac { c: 1.0 },
            Complex64::new(std::f64::consts::E, 0.0),
        )
        .unwrap();
        assert!(u.abs() < 1e-14);
    }

    #[test]
    fn kac_potential_constant_inside() {
        let scheme = WeightScheme::Kac { c: 2.0 };
        let u1 = limit_potential(&scheme, Complex64::new(0.1, 0.0)).unwrap();
        let u2 = limit_potential(&scheme, Complex64::new(0.0, 0.4)).unwrap();
        assert_eq!(u1, u2);
        assert_eq!(u1, -2.0);
    }

    #[test]
    fn weyl_disk_cdf_is_area_ratio() {
        let m = limit_measure(&WeightScheme::Weyl { c: 2.0 }).unwrap();
        // radius 1/c = 0.5; at r ≤ 1/c the mass is (cr)².
        assert!((m.radial_cdf(0.25) - 0.25).abs() < 1e-15);
        assert_eq!(m.radial_cdf(0.5), 1.0);
        assert_eq!(m.radial_cdf(2.0), 1.0);
    }

    #[test]
    fn weyl_potential_is_continuous_at_the_edge() {
        let scheme = WeightScheme::Weyl { c: 1.5 };
        let r = 1.0 / 1.5;
        let inside = limit_potential(&scheme, Complex64::new(r - 1e-9, 0.0)).unwrap();
        let outside = limit_potential(&scheme, Complex64::new(r + 1e-9, 0.0)).unwrap();
        assert!((inside - outside).abs() < 1e-8);
    }

    #[test]
    fn hyperbolic_matches_kac_potential_and_measure() {
        let h = WeightScheme::Hyperbolic { c: 1.0, d: 2.0 };
        let k = WeightScheme::Kac { c: 1.0 };
        let z = Complex64::new(1.7, -0.4);
        assert_eq!(limit_potential(&h, z), limit_potential(&k, z));
        assert_eq!(limit_measure(&h), limit_measure(&k));
    }

    #[test]
    fn riemann_sphere_cdf_integrates_elliptic_density() {
        let m = LimitMeasure::RiemannSphere { c: 1.0 };
        // d/dr [r²/(1+r²)] = 2r/(1+r²)² = 2πr·f(r) with f = 1/(π(1+r²)²).
        for r in [0.3, 1.0, 2.5] {
            let h = 1e-6;
            let deriv = (m.radial_cdf(r + h) - m.radial_cdf(r - h)) / (2.0 * h);
            let density = 1.0 / (std::f64::consts::PI * (1.0 + r * r).powi(2));
            let want = 2.0 * std::f64::consts::PI * r * density;
            assert!((deriv - want).abs() < 1e-6);
        }
    }

    #[test]
    fn approx_potential_matches_direct_formula() {
        // kac(1), k = 2 at |z| = 3: (1/4)·ln(1 + 9 + 81).
        let w = vec![1.0, 1.0, 1.0];
        let u = approx_potential(&w, 2, Complex64::new(3.0, 0.0));
        assert!((u - 91f64.ln() / 4.0).abs() < 1e-14);
    }

    #[test]
    fn custom_scheme_has_no_closed_form() {
        let s = WeightScheme::Custom {
            weights: vec![1.0, 1.0],
        };
        assert!(limit_potential(&s, Complex64::ONE).is_none());
        assert!(limit_measure(&s).is_none());
    }
}
