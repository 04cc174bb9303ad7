//! Shared test oracles: an Aberth–Ehrlich scalar root finder, cofactor
//! determinant expansion, multiset matching, and random-matrix helpers.
//! These stay independent of the library's solver paths on purpose.

#![allow(dead_code)]

use num_complex::Complex64;
use polyesd::linalg::ComplexMatrix;
use polyesd::randgen::{sample_scalar, CoefficientDistribution, SeedSpec};
use rand::Rng;

/// All complex roots of a₀ + a₁z + … + a_d z^d by the Aberth–Ehrlich
/// simultaneous iteration. Coefficients low-to-high, leading nonzero.
pub fn aberth_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    assert!(d >= 1 && coeffs[d].norm() > 0.0);
    let deriv: Vec<Complex64> = (1..=d)
        .map(|j| coeffs[j] * Complex64::new(j as f64, 0.0))
        .collect();

    // Cauchy-style inclusion radius plus angular offsets avoids symmetric stalls.
    let radius = 1.0
        + coeffs[..d]
            .iter()
            .map(|c| (c / coeffs[d]).norm())
            .fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|i| {
            Complex64::from_polar(
                radius * (0.5 + 0.5 * (i as f64 + 1.0) / d as f64),
                std::f64::consts::TAU * i as f64 / d as f64 + 0.4,
            )
        })
        .collect();

    let eval = |poly: &[Complex64], x: Complex64| -> Complex64 {
        let mut acc = Complex64::ZERO;
        for c in poly.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };

    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for i in 0..d {
            let p = eval(coeffs, z[i]);
            let dp = eval(&deriv, z[i]);
            if dp == Complex64::ZERO {
                continue;
            }
            let newton = p / dp;
            let mut repulsion = Complex64::ZERO;
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    repulsion += (z[i] - zj).inv();
                }
            }
            let denom = Complex64::ONE - newton * repulsion;
            let step = if denom == Complex64::ZERO {
                newton
            } else {
                newton / denom
            };
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < 1e-14 {
            break;
        }
    }
    z
}

/// Determinant by cofactor expansion along the first row; O(n!) so keep n ≤ 9.
pub fn cofactor_det(a: &ComplexMatrix) -> Complex64 {
    let n = a.rows();
    assert!(a.is_square() && n <= 9);
    fn det_rec(a: &ComplexMatrix, rows: &[usize], cols: &[usize]) -> Complex64 {
        if rows.len() == 1 {
            return a[(rows[0], cols[0])];
        }
        let mut acc = Complex64::ZERO;
        let mut sign = 1.0;
        let sub_rows = &rows[1..];
        for (i, &c) in cols.iter().enumerate() {
            let pivot = a[(rows[0], c)];
            if pivot != Complex64::ZERO {
                let sub_cols: Vec<usize> = cols
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, &cc)| cc)
                    .collect();
                acc += pivot * det_rec(a, sub_rows, &sub_cols) * Complex64::new(sign, 0.0);
            }
            sign = -sign;
        }
        acc
    }
    let idx: Vec<usize> = (0..n).collect();
    det_rec(a, &idx, &idx)
}

/// Greedy globally-nearest matching between two equally-sized multisets;
/// returns the largest matched distance.
pub fn multiset_match_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let n = a.len();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n);
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            pairs.push(((x - y).norm(), i, j));
        }
    }
    pairs.sort_by(|p, q| p.0.partial_cmp(&q.0).expect("finite distances"));
    let mut used_a = vec![false; n];
    let mut used_b = vec![false; n];
    let mut matched = 0;
    let mut max_d = 0.0f64;
    for (d, i, j) in pairs {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            max_d = max_d.max(d);
            matched += 1;
            if matched == n {
                break;
            }
        }
    }
    max_d
}

/// Random matrix with i.i.d. standard complex Gaussian entries from a
/// deterministic stream.
pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
    let spec = SeedSpec::new(seed);
    let mut rng = spec.stream(0, 0);
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        sample_scalar(CoefficientDistribution::ComplexGaussian, &mut rng)
    })
}

/// Random scalar polynomial coefficients with leading coefficient of unit
/// modulus, degree d.
pub fn random_scalar_coeffs(d: usize, seed: u64) -> Vec<Complex64> {
    let spec = SeedSpec::new(seed);
    let mut rng = spec.stream(1, 0);
    let mut coeffs: Vec<Complex64> = (0..=d)
        .map(|_| sample_scalar(CoefficientDistribution::ComplexGaussian, &mut rng))
        .collect();
    let lead = coeffs[d];
    if lead.norm() < 0.2 {
        coeffs[d] = lead + Complex64::ONE;
    }
    coeffs
}

/// Sharp estimate of the smallest singular value by power iteration on
/// (M·Mᴴ)⁻¹ through LU solves; avoids the Gram-matrix precision floor.
pub fn sigma_min_estimate(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let f = match polyesd::linalg::lu_factor(m) {
        Ok(f) => f,
        Err(_) => return 0.0,
    };
    if f.log_abs_det() == f64::NEG_INFINITY {
        return 0.0;
    }
    let f_adj = polyesd::linalg::lu_factor(&m.adjoint()).expect("square");
    let mut v = ComplexMatrix::from_fn(n, 1, |r, _| {
        Complex64::new(1.0 / (n as f64).sqrt(), (r as f64 + 1.0) * 1e-3)
    });
    let mut growth = 0.0;
    for _ in 0..40 {
        let y = match f.solve_matrix(&v) {
            Ok(y) => y,
            Err(_) => return 0.0,
        };
        let z = match f_adj.solve_matrix(&y) {
            Ok(z) => z,
            Err(_) => return 0.0,
        };
        growth = z.frobenius_norm();
        if !growth.is_finite() {
            return 0.0;
        }
        if growth == 0.0 {
            return 0.0;
        }
        v = z.scaled(Complex64::new(1.0 / growth, 0.0));
    }
    1.0 / growth.sqrt()
}

/// Inverse-CDF sampler against an arbitrary radial CDF, uniform in angle.
pub fn sample_radial_law<F: Fn(f64) -> f64, R: Rng>(
    cdf: F,
    count: usize,
    rng: &mut R,
) -> Vec<Complex64> {
    (0..count)
        .map(|_| {
            let u: f64 = rng.random();
            let mut hi = 1.0;
            while cdf(hi) < u && hi < 1e9 {
                hi *= 2.0;
            }
            let mut lo = 0.0;
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if cdf(mid) < u {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let theta: f64 = rng.random::<f64>() * std::f64::consts::TAU;
            Complex64::from_polar(0.5 * (lo + hi), theta)
        })
        .collect()
}
