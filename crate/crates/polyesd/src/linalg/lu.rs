//! Partial-pivoted LU factorization with determinant accessors.

use num_complex::Complex64;

use super::{ComplexMatrix, LinalgError};

/// Packed LU factors of a square matrix: P·A = L·U with unit-diagonal L stored
/// below the diagonal of `lu` and U on and above it.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: ComplexMatrix,
    pivots: Vec<usize>,
    sign: i32,
}

/// Factor a square matrix with partial pivoting.
///
/// An exactly singular input yields a zero pivot in U rather than an error;
/// only attempting to solve with such factors fails.
pub fn lu_factor(a: &ComplexMatrix) -> Result<LuFactors, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut lu = a.clone();
    let mut pivots: Vec<usize> = (0..n).collect();
    let mut sign = 1;

    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = lu[(col, col)].norm_sqr();
        for r in col + 1..n {
            let mag = lu[(r, col)].norm_sqr();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if pivot_row != col {
            for c in 0..n {
                let tmp = lu[(col, c)];
                lu[(col, c)] = lu[(pivot_row, c)];
                lu[(pivot_row, c)] = tmp;
            }
            pivots.swap(col, pivot_row);
            sign = -sign;
        }
        let pivot = lu[(col, col)];
        if pivot == Complex64::ZERO {
            // Column is exactly zero below the diagonal; leave the zero pivot in U.
            continue;
        }
        for r in col + 1..n {
            let factor = lu[(r, col)] / pivot;
            lu[(r, col)] = factor;
            if factor == Complex64::ZERO {
                continue;
            }
            for c in col + 1..n {
                let sub = factor * lu[(col, c)];
                lu[(r, c)] -= sub;
            }
        }
    }

    Ok(LuFactors { lu, pivots, sign })
}

/// ln|det A| from the factors; −∞ for exactly singular input (the logarithmic
/// potential legitimately takes −∞ at eigenvalues).
pub fn log_abs_det(f: &LuFactors) -> f64 {
    f.log_abs_det()
}

impl LuFactors {
    pub fn size(&self) -> usize {
        self.lu.rows()
    }

    /// Packed L\U storage.
    pub fn packed(&self) -> &ComplexMatrix {
        &self.lu
    }

    /// Row permutation: row `i` of P·A is row `pivots()[i]` of A.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Parity of the permutation, ±1.
    pub fn sign(&self) -> i32 {
        self.sign
    }

    pub fn log_abs_det(&self) -> f64 {
        let n = self.size();
        let mut acc = 0.0;
        for i in 0..n {
            let u = self.lu[(i, i)].norm();
            if u == 0.0 {
                return f64::NEG_INFINITY;
            }
            acc += u.ln();
        }
        acc
    }

    pub fn det(&self) -> Complex64 {
        let n = self.size();
        let mut d = Complex64::new(self.sign as f64, 0.0);
        for i in 0..n {
            d *= self.lu[(i, i)];
        }
        d
    }

    /// Solve A·X = B column by column through the factors.
    pub fn solve_matrix(&self, b: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
        let n = self.size();
        if b.rows() != n {
            return Err(LinalgError::DimensionMismatch(format!(
                "rhs has {} rows, expected {}",
                b.rows(),
                n
            )));
        }
        for i in 0..n {
            if self.lu[(i, i)] == Complex64::ZERO {
                return Err(LinalgError::SingularMatrix { col: i });
            }
        }
        let ncols = b.cols();
        let mut x = ComplexMatrix::zeros(n, ncols);
        // Apply P to B.
        for i in 0..n {
            let src = self.pivots[i];
            for c in 0..ncols {
                x[(i, c)] = b[(src, c)];
            }
        }
        // Forward substitution with unit-diagonal L.
        for i in 1..n {
            for j in 0..i {
                let l = self.lu[(i, j)];
                if l == Complex64::ZERO {
                    continue;
                }
                for c in 0..ncols {
                    let sub = l * x[(j, c)];
                    x[(i, c)] -= sub;
                }
            }
        }
        // Back substitution with U.
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu[(i, j)];
                if u == Complex64::ZERO {
                    continue;
                }
                for c in 0..ncols {
                    let sub = u * x[(j, c)];
                    x[(i, c)] -= sub;
                }
            }
            let d = self.lu[(i, i)];
            for c in 0..ncols {
                x[(i, c)] /= d;
            }
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_case() {
        let a = ComplexMatrix::scalar(Complex64::new(5.0, 0.0));
        let f = lu_factor(&a).unwrap();
        assert_eq!(f.packed()[(0, 0)], Complex64::new(5.0, 0.0));
        assert_eq!(f.sign(), 1);
        assert!((f.log_abs_det() - 5f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn identity_has_trivial_pivots_and_unit_det() {
        let f = lu_factor(&ComplexMatrix::identity(3)).unwrap();
        assert_eq!(f.pivots(), &[0, 1, 2]);
        assert_eq!(f.det(), Complex64::ONE);
        assert_eq!(log_abs_det(&f), 0.0);
    }

    #[test]
    fn diagonal_log_det() {
        let a = ComplexMatrix::from_fn(3, 3, |r, c| {
            if r == c {
                Complex64::new(2.0, 0.0)
            } else {
                Complex64::ZERO
            }
        });
        let f = lu_factor(&a).unwrap();
        assert!((f.log_abs_det() - 3.0 * 2f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn non_square_is_rejected() {
        let a = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            lu_factor(&a),
            Err(LinalgError::NonSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn singular_input_gives_zero_pivot_not_error() {
        // Second row is a multiple of the first.
        let a = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(2.0, 0.0),
                Complex64::new(2.0, 0.0),
                Complex64::new(4.0, 0.0),
            ],
        )
        .unwrap();
        let f = lu_factor(&a).unwrap();
        assert_eq!(f.log_abs_det(), f64::NEG_INFINITY);
        assert_eq!(f.det(), Complex64::ZERO);
        assert!(matches!(
            f.solve_matrix(&ComplexMatrix::identity(2)),
            Err(LinalgError::SingularMatrix { .. })
        ));
    }

    #[test]
    fn solve_recovers_inverse_action() {
        let a = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(2.0, 0.0),
                Complex64::new(1.0, 1.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(3.0, 0.0),
            ],
        )
        .unwrap();
        let f = lu_factor(&a).unwrap();
        let x = f.solve_matrix(&ComplexMatrix::identity(2)).unwrap();
        let prod = a.mul(&x);
        let err = prod.sub(&ComplexMatrix::identity(2)).frobenius_norm();
        assert!(err < 1e-14, "A·A⁻¹ deviates from I by {err}");
    }
}
