//! Random matrix polynomials under coefficient weight schemes, their block
//! companion linearizations, and eigenvalue extraction.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, ComplexMatrix, LinalgError};
use crate::randgen::{sample_matrix, CoefficientDistribution, SeedSpec};
use crate::theory::gamma::ln_gamma;

/// Relative invertibility threshold for the leading block: σ_min ≥ τ·σ_max.
pub const LEADING_BLOCK_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum MatPolyError {
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid weight scheme: {0}")]
    InvalidScheme(String),
    #[error("leading coefficient numerically singular (σ_min/σ_max = {ratio:.3e})")]
    SingularLeadingCoefficient { ratio: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Rule producing the |αⱼ| sequence that modulates coefficient variances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightScheme {
    /// |αⱼ| = cʲ
    Kac { c: f64 },
    /// |αⱼ|² = C(k,j)·c²ʲ
    Elliptic { c: f64 },
    /// |αⱼ|² = kʲ·c²ʲ/j!
    Weyl { c: f64 },
    /// |αⱼ|² = Γ(d+j)/(Γ(d)·j!)·c²ʲ
    Hyperbolic { c: f64, d: f64 },
    Custom { weights: Vec<f64> },
}

impl WeightScheme {
    pub fn name(&self) -> &'static str {
        match self {
            WeightScheme::Kac { .. } => "kac",
            WeightScheme::Elliptic { .. } => "elliptic",
            WeightScheme::Weyl { .. } => "weyl",
            WeightScheme::Hyperbolic { .. } => "hyperbolic",
            WeightScheme::Custom { .. } => "custom",
        }
    }

    /// The |α₀|,…,|α_k| sequence, rescaled so |α_k| = 1.
    ///
    /// Scheme formulas are evaluated in log space and exponentiated relative
    /// to the leading weight, so factorial-growth schemes survive large k.
    pub fn weights(&self, k: usize) -> Result<Vec<f64>, MatPolyError> {
        if k < 1 {
            return Err(MatPolyError::InvalidScheme(
                "degree k must be at least 1".into(),
            ));
        }
        let check_scale = |c: f64| -> Result<(), MatPolyError> {
            if c > 0.0 && c.is_finite() {
                Ok(())
            } else {
                Err(MatPolyError::InvalidScheme(format!(
                    "scale parameter must be positive and finite, got {c}"
                )))
            }
        };
        let from_log = |ln_w: Vec<f64>| -> Vec<f64> {
            let last = ln_w[k];
            ln_w.into_iter().map(|lw| (lw - last).exp()).collect()
        };
        match self {
            WeightScheme::Kac { c } => {
                check_scale(*c)?;
                Ok(from_log((0..=k).map(|j| j as f64 * c.ln()).collect()))
            }
            WeightScheme::Elliptic { c } => {
                check_scale(*c)?;
                let ln_binom = |j: usize| {
                    ln_gamma(k as f64 + 1.0)
                        - ln_gamma(j as f64 + 1.0)
                        - ln_gamma((k - j) as f64 + 1.0)
                };
                Ok(from_log(
                    (0..=k)
                        .map(|j| 0.5 * ln_binom(j) + j as f64 * c.ln())
                        .collect(),
                ))
            }
            WeightScheme::Weyl { c } => {
                check_scale(*c)?;
                let kf = k as f64;
                Ok(from_log(
                    (0..=k)
                        .map(|j| {
                            0.5 * (j as f64 * kf.ln() - ln_gamma(j as f64 + 1.0))
                                + j as f64 * c.ln()
                        })
                        .collect(),
                ))
            }
            WeightScheme::Hyperbolic { c, d } => {
                check_scale(*c)?;
                if !(*d > 0.0 && d.is_finite()) {
                    return Err(MatPolyError::InvalidScheme(format!(
                        "hyperbolic parameter d must be positive, got {d}"
                    )));
                }
                Ok(from_log(
                    (0..=k)
                        .map(|j| {
                            0.5 * (ln_gamma(d + j as f64) - ln_gamma(*d)
                                - ln_gamma(j as f64 + 1.0))
                                + j as f64 * c.ln()
                        })
                        .collect(),
                ))
            }
            WeightScheme::Custom { weights } => {
                if weights.len() != k + 1 {
                    return Err(MatPolyError::LengthMismatch {
                        expected: k + 1,
                        got: weights.len(),
                    });
                }
                let last = *weights.last().expect("k+1 >= 2 entries");
                if last <= 0.0 || !last.is_finite() {
                    return Err(MatPolyError::InvalidScheme(
                        "custom weights must end with a positive entry".into(),
                    ));
                }
                if weights.iter().any(|w| *w < 0.0 || !w.is_finite()) {
                    return Err(MatPolyError::InvalidScheme(
                        "custom weights must be nonnegative and finite".into(),
                    ));
                }
                Ok(weights.iter().map(|w| w / last).collect())
            }
        }
    }
}

/// Degree-k polynomial with weighted n×n coefficient matrices αⱼ·Cⱼ stored
/// pre-multiplied; the raw |αⱼ| sequence is kept for theory-side formulas.
#[derive(Debug, Clone)]
pub struct MatrixPolynomial {
    n: usize,
    k: usize,
    weighted_coeffs: Vec<ComplexMatrix>,
    weights: Vec<f64>,
    p: usize,
}

impl MatrixPolynomial {
    /// Sample a random polynomial: weighted_coeffs[j] = αⱼ·C(distⱼ, n), with
    /// each coefficient drawn from its own (trial, coefficient) substream.
    pub fn build(
        scheme: &WeightScheme,
        dists: &[CoefficientDistribution],
        n: usize,
        k: usize,
        seed: &SeedSpec,
        trial: u64,
    ) -> Result<Self, MatPolyError> {
        if dists.len() != k + 1 {
            return Err(MatPolyError::LengthMismatch {
                expected: k + 1,
                got: dists.len(),
            });
        }
        let weights = scheme.weights(k)?;
        let mut coeffs = Vec::with_capacity(k + 1);
        for (j, dist) in dists.iter().enumerate() {
            let mut rng = seed.stream(trial, j as u64);
            let raw = sample_matrix(*dist, n, &mut rng);
            coeffs.push(raw.scaled(Complex64::new(weights[j], 0.0)));
        }
        Self::from_weighted_coefficients(coeffs, weights)
    }

    /// Assemble from explicit weighted coefficients (the αⱼCⱼ products) plus
    /// the |αⱼ| metadata.
    pub fn from_weighted_coefficients(
        weighted_coeffs: Vec<ComplexMatrix>,
        weights: Vec<f64>,
    ) -> Result<Self, MatPolyError> {
        if weighted_coeffs.len() < 2 {
            return Err(MatPolyError::InvalidScheme(
                "a matrix polynomial needs degree at least 1".into(),
            ));
        }
        if weights.len() != weighted_coeffs.len() {
            return Err(MatPolyError::LengthMismatch {
                expected: weighted_coeffs.len(),
                got: weights.len(),
            });
        }
        let k = weighted_coeffs.len() - 1;
        let n = weighted_coeffs[0].rows();
        for c in &weighted_coeffs {
            if c.rows() != n || c.cols() != n {
                return Err(MatPolyError::InvalidScheme(
                    "all coefficients must be square matrices of one size".into(),
                ));
            }
        }
        if weights[k] <= 0.0 {
            return Err(MatPolyError::InvalidScheme(
                "leading weight must be positive".into(),
            ));
        }
        if weighted_coeffs[k].max_abs() == 0.0 {
            return Err(MatPolyError::InvalidScheme(
                "leading weighted coefficient is the zero matrix".into(),
            ));
        }
        let p = weights
            .iter()
            .position(|w| *w != 0.0)
            .expect("leading weight is positive");
        Ok(Self {
            n,
            k,
            weighted_coeffs,
            weights,
            p,
        })
    }

    /// Scalar (n = 1) polynomial from its coefficients a₀ + a₁z + … + a_k zᵏ.
    pub fn from_scalar_coefficients(coeffs: &[Complex64]) -> Result<Self, MatPolyError> {
        let weights: Vec<f64> = coeffs.iter().map(|c| c.norm()).collect();
        let mats = coeffs.iter().map(|&c| ComplexMatrix::scalar(c)).collect();
        Self::from_weighted_coefficients(mats, weights)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Total eigenvalue count n·k.
    pub fn nk(&self) -> usize {
        self.n * self.k
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Smallest index with a nonzero weight.
    pub fn trailing_zero_index(&self) -> usize {
        self.p
    }

    pub fn coefficient(&self, j: usize) -> &ComplexMatrix {
        &self.weighted_coeffs[j]
    }

    /// All weighted coefficients scaled by a nonzero constant; the spectrum
    /// is unchanged.
    pub fn scaled_by(&self, factor: Complex64) -> Self {
        Self {
            n: self.n,
            k: self.k,
            weighted_coeffs: self
                .weighted_coeffs
                .iter()
                .map(|c| c.scaled(factor))
                .collect(),
            weights: self.weights.iter().map(|w| w * factor.norm()).collect(),
            p: self.p,
        }
    }

    /// Horner evaluation Σ weighted_coeffs[j]·zʲ.
    pub fn evaluate(&self, z: Complex64) -> ComplexMatrix {
        let mut acc = self.weighted_coeffs[self.k].clone();
        for j in (0..self.k).rev() {
            let next = &self.weighted_coeffs[j];
            acc = ComplexMatrix::from_raw(
                self.n,
                self.n,
                acc.data()
                    .iter()
                    .zip(next.data())
                    .map(|(a, c)| a * z + c)
                    .collect(),
            );
        }
        acc
    }

    fn check_leading_block(&self) -> Result<(), MatPolyError> {
        let sv = linalg::singular_values(&self.weighted_coeffs[self.k]);
        let sigma_max = sv[0];
        let sigma_min = *sv.last().expect("nonempty");
        if sigma_max == 0.0 || sigma_min < LEADING_BLOCK_TOLERANCE * sigma_max {
            return Err(MatPolyError::SingularLeadingCoefficient {
                ratio: if sigma_max == 0.0 {
                    0.0
                } else {
                    sigma_min / sigma_max
                },
            });
        }
        Ok(())
    }

    /// The nk×nk block companion matrix: first block row −C_k⁻¹C_{k−1},…,
    /// −C_k⁻¹C₀, identity blocks on the subdiagonal, zeros elsewhere.
    pub fn companion_matrix(&self) -> Result<ComplexMatrix, MatPolyError> {
        self.check_leading_block()?;
        let n = self.n;
        let k = self.k;
        let m = n * k;
        let lu = linalg::lu_factor(&self.weighted_coeffs[k])?;
        let mut out = ComplexMatrix::zeros(m, m);
        for block in 0..k {
            // Block column `block` of the first block row holds −C_k⁻¹C_{k−1−block}.
            let x = lu.solve_matrix(&self.weighted_coeffs[k - 1 - block])?;
            for r in 0..n {
                for c in 0..n {
                    out[(r, block * n + c)] = -x[(r, c)];
                }
            }
        }
        for block in 1..k {
            for i in 0..n {
                out[(block * n + i, (block - 1) * n + i)] = Complex64::ONE;
            }
        }
        Ok(out)
    }

    /// The companion pencil (A, B) with A = diag(C_k, I, …, I) and B carrying
    /// −C_{k−1},…,−C₀ in its first block row and identities below.
    pub fn companion_pencil(&self) -> (ComplexMatrix, ComplexMatrix) {
        let n = self.n;
        let k = self.k;
        let m = n * k;
        let mut a = ComplexMatrix::zeros(m, m);
        for r in 0..n {
            for c in 0..n {
                a[(r, c)] = self.weighted_coeffs[k][(r, c)];
            }
        }
        for i in n..m {
            a[(i, i)] = Complex64::ONE;
        }
        let mut b = ComplexMatrix::zeros(m, m);
        for block in 0..k {
            let coeff = &self.weighted_coeffs[k - 1 - block];
            for r in 0..n {
                for c in 0..n {
                    b[(r, block * n + c)] = -coeff[(r, c)];
                }
            }
        }
        for block in 1..k {
            for i in 0..n {
                b[(block * n + i, (block - 1) * n + i)] = Complex64::ONE;
            }
        }
        (a, b)
    }

    /// All nk finite eigenvalues with multiplicity.
    ///
    /// When the p leading weights vanish, the polynomial factors as zᵖ·Q(z),
    /// so n·p exact zeros are appended to the eigenvalues of the degree-(k−p)
    /// shifted polynomial Q.
    pub fn eigenvalues_of(&self) -> Result<Vec<Complex64>, MatPolyError> {
        if self.p == self.k {
            // Only the leading coefficient survives: P(z) = α_k·C_k·zᵏ.
            self.check_leading_block()?;
            return Ok(vec![Complex64::ZERO; self.n * self.k]);
        }
        let eigen_part = if self.p > 0 {
            let shifted = Self::from_weighted_coefficients(
                self.weighted_coeffs[self.p..].to_vec(),
                self.weights[self.p..].to_vec(),
            )?;
            shifted.eigenvalues_unshifted()?
        } else {
            self.eigenvalues_unshifted()?
        };
        let mut eig = eigen_part;
        eig.extend(std::iter::repeat(Complex64::ZERO).take(self.n * self.p));
        Ok(eig)
    }

    fn eigenvalues_unshifted(&self) -> Result<Vec<Complex64>, MatPolyError> {
        let m = self.companion_matrix()?;
        Ok(linalg::eigenvalues(&m)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kac_unit_scale_weights_are_all_ones() {
        let w = WeightScheme::Kac { c: 1.0 }.weights(3).unwrap();
        assert_eq!(w, vec![1.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn elliptic_weights_match_binomials() {
        let w = WeightScheme::Elliptic { c: 1.0 }.weights(2).unwrap();
        let squared: Vec<f64> = w.iter().map(|x| x * x).collect();
        assert!((squared[0] - 1.0).abs() < 1e-12);
        assert!((squared[1] - 2.0).abs() < 1e-12);
        assert!((squared[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hyperbolic_with_d_one_is_kac() {
        // Γ(1+j)/(Γ(1)·j!) = 1.
        let h = WeightScheme::Hyperbolic { c: 1.0, d: 1.0 }.weights(4).unwrap();
        let k = WeightScheme::Kac { c: 1.0 }.weights(4).unwrap();
        for (a, b) in h.iter().zip(&k) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn custom_weights_normalize_and_validate() {
        let w = WeightScheme::Custom {
            weights: vec![0.0, 0.0, 2.0, 4.0],
        }
        .weights(3)
        .unwrap();
        assert_eq!(w, vec![0.0, 0.0, 0.5, 1.0]);
        assert!(WeightScheme::Custom {
            weights: vec![1.0, 0.0]
        }
        .weights(1)
        .is_err());
        assert!(WeightScheme::Custom {
            weights: vec![1.0, 1.0]
        }
        .weights(3)
        .is_err());
    }

    #[test]
    fn trailing_zero_detection() {
        let spec = SeedSpec::new(9);
        let poly = MatrixPolynomial::build(
            &WeightScheme::Custom {
                weights: vec![0.0, 0.0, 1.0, 1.0],
            },
            &[CoefficientDistribution::ComplexGaussian; 4],
            2,
            3,
            &spec,
            0,
        )
        .unwrap();
        assert_eq!(poly.trailing_zero_index(), 2);
    }

    #[test]
    fn build_is_deterministic() {
        let spec = SeedSpec::new(1234);
        let dists = [CoefficientDistribution::UniformDisk; 3];
        let scheme = WeightScheme::Kac { c: 1.0 };
        let a = MatrixPolynomial::build(&scheme, &dists, 4, 2, &spec, 7).unwrap();
        let b = MatrixPolynomial::build(&scheme, &dists, 4, 2, &spec, 7).unwrap();
        for j in 0..=2 {
            assert_eq!(a.coefficient(j).data(), b.coefficient(j).data());
        }
    }

    #[test]
    fn build_rejects_distribution_length_mismatch() {
        let spec = SeedSpec::new(1);
        let err = MatrixPolynomial::build(
            &WeightScheme::Kac { c: 1.0 },
            &[CoefficientDistribution::ComplexGaussian; 2],
            2,
            2,
            &spec,
            0,
        );
        assert!(matches!(err, Err(MatPolyError::LengthMismatch { .. })));
    }

    #[test]
    fn evaluate_at_zero_returns_constant_coefficient() {
        let spec = SeedSpec::new(5);
        let poly = MatrixPolynomial::build(
            &WeightScheme::Kac { c: 1.0 },
            &[CoefficientDistribution::ComplexGaussian; 3],
            3,
            2,
            &spec,
            0,
        )
        .unwrap();
        let at_zero = poly.evaluate(Complex64::ZERO);
        assert_eq!(at_zero.data(), poly.coefficient(0).data());
    }

    #[test]
    fn evaluate_scalar_one_plus_z_squared() {
        let poly =
            MatrixPolynomial::from_scalar_coefficients(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
                .unwrap();
        let v = poly.evaluate(c(0.0, 2.0));
        assert!((v[(0, 0)] - c(-3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn companion_of_monic_quadratic() {
        // z² − 1 has companion [[0, 1], [1, 0]] and eigenvalues ±1.
        let poly =
            MatrixPolynomial::from_scalar_coefficients(&[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
                .unwrap();
        let m = poly.companion_matrix().unwrap();
        assert_eq!(m[(0, 0)], Complex64::ZERO);
        assert_eq!(m[(0, 1)], Complex64::ONE);
        assert_eq!(m[(1, 0)], Complex64::ONE);
        assert_eq!(m[(1, 1)], Complex64::ZERO);
        let mut eig = poly.eigenvalues_of().unwrap();
        eig.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((eig[0] - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((eig[1] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn degree_one_with_identity_leading_is_minus_constant() {
        let c0 = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(2.0, 1.0), c(0.0, -1.0), c(3.0, 0.0)])
            .unwrap();
        let poly = MatrixPolynomial::from_weighted_coefficients(
            vec![c0.clone(), ComplexMatrix::identity(2)],
            vec![1.0, 1.0],
        )
        .unwrap();
        let m = poly.companion_matrix().unwrap();
        for r in 0..2 {
            for col in 0..2 {
                assert!((m[(r, col)] + c0[(r, col)]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn pencil_structure_smallest_case() {
        let poly =
            MatrixPolynomial::from_scalar_coefficients(&[c(2.0, 0.0), c(1.0, 0.0)]).unwrap();
        let (a, b) = poly.companion_pencil();
        assert_eq!(a.rows(), 1);
        assert_eq!(a[(0, 0)], c(1.0, 0.0));
        assert_eq!(b[(0, 0)], c(-2.0, 0.0));
    }

    #[test]
    fn pencil_a_is_block_diagonal() {
        let spec = SeedSpec::new(3);
        let poly = MatrixPolynomial::build(
            &WeightScheme::Kac { c: 1.0 },
            &[CoefficientDistribution::ComplexGaussian; 4],
            2,
            3,
            &spec,
            0,
        )
        .unwrap();
        let (a, _) = poly.companion_pencil();
        let n = 2;
        for r in 0..a.rows() {
            for col in 0..a.cols() {
                let in_leading = r < n && col < n;
                if in_leading {
                    assert_eq!(a[(r, col)], poly.coefficient(3)[(r, col)]);
                } else if r == col {
                    assert_eq!(a[(r, col)], Complex64::ONE);
                } else {
                    assert_eq!(a[(r, col)], Complex64::ZERO);
                }
            }
        }
    }

    #[test]
    fn cubic_roots_scaled_by_two() {
        // z³ − 8 has roots 2, 2ω, 2ω².
        let poly = MatrixPolynomial::from_scalar_coefficients(&[
            c(-8.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(1.0, 0.0),
        ])
        .unwrap();
        let eig = poly.eigenvalues_of().unwrap();
        assert_eq!(eig.len(), 3);
        for lambda in &eig {
            assert!((lambda.norm() - 2.0).abs() < 1e-10);
            let cubed = lambda * lambda * lambda;
            assert!((cubed - c(8.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn zero_weights_insert_exact_zeros() {
        let spec = SeedSpec::new(21);
        let poly = MatrixPolynomial::build(
            &WeightScheme::Custom {
                weights: vec![0.0, 1.0, 1.0],
            },
            &[CoefficientDistribution::ComplexGaussian; 3],
            2,
            2,
            &spec,
            0,
        )
        .unwrap();
        let eig = poly.eigenvalues_of().unwrap();
        assert_eq!(eig.len(), 4);
        let zeros = eig.iter().filter(|l| **l == Complex64::ZERO).count();
        assert_eq!(zeros, 2);
    }

    #[test]
    fn eigenvalue_count_is_nk() {
        let spec = SeedSpec::new(77);
        for (n, k) in [(1, 4), (3, 2), (2, 3)] {
            let poly = MatrixPolynomial::build(
                &WeightScheme::Elliptic { c: 0.5 },
                &vec![CoefficientDistribution::UniformSquare; k + 1],
                n,
                k,
                &spec,
                0,
            )
            .unwrap();
            assert_eq!(poly.eigenvalues_of().unwrap().len(), n * k);
        }
    }
}
