//! Self-contained dense complex linear algebra: LU with determinant, balanced
//! Hessenberg reduction with a single-shift QR eigensolver, and singular values
//! through the Hermitian Gram matrix.

mod eigen;
mod hermitian;
mod lu;

pub use eigen::eigenvalues;
pub use hermitian::{hermitian_eigenvalues, singular_values};
pub use lu::{log_abs_det, lu_factor, LuFactors};

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix dimensions must be positive")]
    EmptyDimension,
    #[error("entry buffer has length {got}, expected {expected}")]
    BadEntryCount { got: usize, expected: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix: zero pivot at column {col}")]
    SingularMatrix { col: usize },
    #[error(
        "QR iteration exceeded {max_sweeps} sweeps with {deflated} of {size} eigenvalues deflated"
    )]
    EigenConvergence {
        max_sweeps: usize,
        deflated: usize,
        size: usize,
    },
}

/// Dense complex matrix, row-major storage.
///
/// Entries are validated to be finite on construction; all operations treat
/// the matrix as immutable afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::EmptyDimension);
        }
        if entries.len() != rows * cols {
            return Err(LinalgError::BadEntryCount {
                got: entries.len(),
                expected: rows * cols,
            });
        }
        for (idx, e) in entries.iter().enumerate() {
            if !e.re.is_finite() || !e.im.is_finite() {
                return Err(LinalgError::NonFiniteEntry {
                    row: idx / cols,
                    col: idx % cols,
                });
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "dimensions must be positive");
        Self {
            rows,
            cols,
            entries: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Complex64::ONE;
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(rows: usize, cols: usize, mut f: F) -> Self {
        assert!(rows > 0 && cols > 0, "dimensions must be positive");
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// 1x1 matrix holding a single scalar.
    pub fn scalar(z: Complex64) -> Self {
        Self {
            rows: 1,
            cols: 1,
            entries: vec![z],
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn data(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.entries[c * self.cols + r].conj())
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in sub"
        );
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let (m, k, n) = (self.rows, self.cols, other.cols);
        let mut out = vec![Complex64::ZERO; m * n];
        for i in 0..m {
            let arow = &self.entries[i * k..(i + 1) * k];
            let orow = &mut out[i * n..(i + 1) * n];
            for (l, &a) in arow.iter().enumerate() {
                if a == Complex64::ZERO {
                    continue;
                }
                let brow = &other.entries[l * n..(l + 1) * n];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Self {
            rows: m,
            cols: n,
            entries: out,
        }
    }

    /// Contiguous submatrix copy (for e.g. interlacing experiments).
    pub fn submatrix(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        assert!(row0 + rows <= self.rows && col0 + cols <= self.cols);
        Self::from_fn(rows, cols, |r, c| self.entries[(row0 + r) * self.cols + col0 + c])
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        Self {
            rows,
            cols,
            entries,
        }
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[r * self.cols + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_validates_shape_and_finiteness() {
        assert!(matches!(
            ComplexMatrix::new(0, 3, vec![]),
            Err(LinalgError::EmptyDimension)
        ));
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![Complex64::ZERO; 3]),
            Err(LinalgError::BadEntryCount { got: 3, expected: 4 })
        ));
        let mut bad = vec![Complex64::ZERO; 4];
        bad[2] = Complex64::new(f64::NAN, 0.0);
        assert!(matches!(
            ComplexMatrix::new(2, 2, bad),
            Err(LinalgError::NonFiniteEntry { row: 1, col: 0 })
        ));
    }

    #[test]
    fn identity_and_indexing() {
        let id = ComplexMatrix::identity(3);
        assert_eq!(id[(1, 1)], Complex64::ONE);
        assert_eq!(id[(0, 2)], Complex64::ZERO);
        assert!((id.frobenius_norm() - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn mul_against_hand_computed_product() {
        let a = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(1.0, 1.0),
                Complex64::new(0.0, 2.0),
                Complex64::new(3.0, 0.0),
                Complex64::new(-1.0, 0.0),
            ],
        )
        .unwrap();
        let b = ComplexMatrix::identity(2).scaled(Complex64::new(0.0, 1.0));
        let p = a.mul(&b);
        assert_eq!(p[(0, 0)], Complex64::new(-1.0, 1.0));
        assert_eq!(p[(1, 1)], Complex64::new(0.0, -1.0));
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let a = ComplexMatrix::new(
            1,
            2,
            vec![Complex64::new(1.0, 2.0), Complex64::new(3.0, -4.0)],
        )
        .unwrap();
        let ah = a.adjoint();
        assert_eq!(ah.rows(), 2);
        assert_eq!(ah[(0, 0)], Complex64::new(1.0, -2.0));
        assert_eq!(ah[(1, 0)], Complex64::new(3.0, 4.0));
    }
}
