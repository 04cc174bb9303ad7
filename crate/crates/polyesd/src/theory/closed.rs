//! Closed-form limit densities for the named weight schemes.

use num_complex::Complex64;

use super::gamma::ln_upper_incomplete_gamma;
use super::density_general;
use crate::matpoly::WeightScheme;

const PI: f64 = std::f64::consts::PI;

/// Half-width of the |cz| ≈ 1 band where the Kac closed form loses digits to
/// cancellation and the generic evaluation takes over.
pub const KAC_FALLBACK_BAND: f64 = 1e-3;

/// Kac limit density: f = c²/(πk)·[1/(y−1)² − (k+1)²·yᵏ/(y^{k+1}−1)²] with
/// y = |cz|².
pub fn density_kac(c: f64, k: usize, z: Complex64) -> f64 {
    assert!(c > 0.0 && k >= 1);
    let r = (z * c).norm();
    if (r - 1.0).abs() < KAC_FALLBACK_BAND {
        let weights = WeightScheme::Kac { c }
            .weights(k)
            .expect("validated parameters");
        return density_general(&weights, k, z);
    }
    let y = r * r;
    let kf = k as f64;
    let first = 1.0 / ((y - 1.0) * (y - 1.0));
    // For y > 1 rewrite y^k/(y^{k+1}−1)² = 1/(y^{k+2}·(1−y^{−(k+1)})²) so
    // large powers stay bounded.
    let second = if y > 1.0 {
        let damp = 1.0 - y.powi(-(k as i32 + 1));
        (kf + 1.0) * (kf + 1.0) / (y.powi(k as i32 + 2) * damp * damp)
    } else {
        let yk = y.powi(k as i32);
        let denom = y.powi(k as i32 + 1) - 1.0;
        (kf + 1.0) * (kf + 1.0) * yk / (denom * denom)
    };
    (c * c / (PI * kf) * (first - second)).max(0.0)
}

/// Elliptic (binomial) limit density, independent of the degree:
/// f = c²/(π(|cz|²+1)²).
pub fn density_elliptic(c: f64, z: Complex64) -> f64 {
    assert!(c > 0.0);
    let y = (z * c).norm_sqr();
    c * c / (PI * (y + 1.0) * (y + 1.0))
}

/// Weyl (flat) limit density. With x = k|cz|² and u = xᵏe⁻ˣ/Γ(k+1, x):
/// f = c²·[1 − (k+1−x)·u − x·u²]/π.
///
/// Equivalently, in terms of the Γ = e^{k|cz|²}∫_{|cz|²}^∞ (e⁻ˢs)ᵏ ds
/// normalization, the subtracted terms are |cz|^{2k}/(kΓ) and
/// |cz|^{4k+2}/(kΓ²).
pub fn density_weyl(c: f64, k: usize, z: Complex64) -> f64 {
    assert!(c > 0.0 && k >= 1);
    let kf = k as f64;
    let x = kf * (z * c).norm_sqr();
    if x == 0.0 {
        return c * c / PI;
    }
    // Deep in the tail u → 1 and the bracket cancels x-sized terms down to
    // O(k/x); evaluate through the generic form there instead.
    if x > 8.0 * (kf + 1.0) {
        let weights = WeightScheme::Weyl { c }
            .weights(k)
            .expect("validated parameters");
        return density_general(&weights, k, z);
    }
    let ln_u = kf * x.ln() - x - ln_upper_incomplete_gamma(kf + 1.0, x);
    let u = ln_u.exp();
    (c * c * (1.0 - (kf + 1.0 - x) * u - x * u * u) / PI).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kac_unit_parameters_at_zero() {
        let f = density_kac(1.0, 1, Complex64::ZERO);
        assert!((f - 1.0 / PI).abs() < 1e-14);
    }

    #[test]
    fn kac_degree_one_is_riemann_sphere() {
        for r in [0.2, 0.7, 1.4, 3.0] {
            let f = density_kac(1.0, 1, Complex64::new(r, 0.0));
            let want = 1.0 / (PI * (1.0 + r * r).powi(2));
            assert!((f - want).abs() < 1e-12 * want);
        }
    }

    #[test]
    fn kac_scaling_covariance() {
        // c = 2 at z equals 4× the c = 1 density at 2z.
        for k in [1usize, 3, 7] {
            for r in [0.1, 0.3, 0.8, 1.9] {
                let z = Complex64::new(r, -0.5 * r);
                let lhs = density_kac(2.0, k, z);
                let rhs = 4.0 * density_kac(1.0, k, z * 2.0);
                assert!((lhs - rhs).abs() < 1e-12 * rhs.max(1e-12));
            }
        }
    }

    #[test]
    fn kac_fallback_band_is_continuous() {
        // Values just inside and outside the band should agree closely.
        let k = 5;
        for sign in [-1.0, 1.0] {
            let r_in = 1.0 + sign * (KAC_FALLBACK_BAND * 0.99);
            let r_out = 1.0 + sign * (KAC_FALLBACK_BAND * 1.01);
            let f_in = density_kac(1.0, k, Complex64::new(r_in, 0.0));
            let f_out = density_kac(1.0, k, Complex64::new(r_out, 0.0));
            assert!(
                (f_in - f_out).abs() < 1e-3 * f_in,
                "band edge jump: {f_in} vs {f_out}"
            );
        }
    }

    #[test]
    fn weyl_at_zero() {
        for c in [0.5, 1.0, 2.0] {
            let f = density_weyl(c, 4, Complex64::ZERO);
            assert!((f - c * c / PI).abs() < 1e-14);
        }
    }

    #[test]
    fn elliptic_mass_is_one() {
        let mass = super::super::integrate_radial(
            |r| density_elliptic(1.3, Complex64::new(r, 0.0)) * r,
            0.0,
            1e4,
            1e-9,
        ) * 2.0
            * PI;
        assert!((mass - 1.0).abs() < 1e-5, "mass = {mass}");
    }
}
