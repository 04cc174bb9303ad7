//! Dense nonsymmetric complex eigensolver: two-sided diagonal balancing,
//! Householder reduction to upper Hessenberg form, then single-shift
//! (Wilkinson) QR with deflation. Eigenvalues only, no Schur vectors.

use num_complex::Complex64;

use super::{ComplexMatrix, LinalgError};

const RADIX: f64 = 2.0;

/// Eigenvalues of a square complex matrix, with multiplicity, in deflation order.
///
/// The sweep budget is 100·m; exceeding it reports how many eigenvalues were
/// already deflated instead of returning a silent partial result.
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<Complex64>, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut h = a.data().to_vec();
    if n == 1 {
        return Ok(h);
    }
    balance(&mut h, n);
    hessenberg_in_place(&mut h, n);
    hessenberg_eigenvalues(&mut h, n, 100 * n)
}

/// Osborne/Parlett–Reinsch balancing: diagonal similarity by powers of the
/// radix so that row and column norms roughly match.
fn balance(h: &mut [Complex64], n: usize) {
    for _pass in 0..100 {
        let mut converged = true;
        for i in 0..n {
            let mut col = 0.0;
            let mut row = 0.0;
            for j in 0..n {
                if j != i {
                    col += h[j * n + i].norm();
                    row += h[i * n + j].norm();
                }
            }
            if col == 0.0 || row == 0.0 {
                continue;
            }
            let total = col + row;
            let mut f = 1.0;
            let mut c = col;
            let mut r = row;
            while c < r / RADIX && f < 1e100 {
                c *= RADIX;
                r /= RADIX;
                f *= RADIX;
            }
            while c >= r * RADIX && f > 1e-100 {
                c /= RADIX;
                r *= RADIX;
                f /= RADIX;
            }
            if f != 1.0 && c + r < 0.95 * total {
                converged = false;
                let inv = 1.0 / f;
                for j in 0..n {
                    h[i * n + j] *= inv;
                    h[j * n + i] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// Householder reduction to upper Hessenberg form, in place, without
/// accumulating the transformation.
fn hessenberg_in_place(h: &mut [Complex64], n: usize) {
    if n < 3 {
        return;
    }
    let mut v = vec![Complex64::ZERO; n];
    let mut w = vec![Complex64::ZERO; n];
    for j in 0..n - 2 {
        let len = n - j - 1;
        let mut scale = 0.0;
        for i in 0..len {
            scale += h[(j + 1 + i) * n + j].norm();
        }
        if scale == 0.0 {
            continue;
        }
        let mut norm_sqr = 0.0;
        for i in 0..len {
            let x = h[(j + 1 + i) * n + j] / scale;
            v[i] = x;
            norm_sqr += x.norm_sqr();
        }
        let norm = norm_sqr.sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = v[0];
        let x0_abs = x0.norm();
        let phase = if x0_abs == 0.0 {
            Complex64::ONE
        } else {
            x0 / x0_abs
        };
        let alpha = -phase * norm;
        v[0] -= alpha;
        let vnorm_sqr = 2.0 * norm * (norm + x0_abs);
        if vnorm_sqr == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm_sqr;

        // Left: rows j+1..n, columns j+1..n get (I − τ v vᴴ)·A.
        // (Column j is handled analytically below.)
        let wlen = n - j - 1;
        for wc in w[..wlen].iter_mut() {
            *wc = Complex64::ZERO;
        }
        for i in 0..len {
            let vb = v[i].conj();
            if vb == Complex64::ZERO {
                continue;
            }
            let row = &h[(j + 1 + i) * n + j + 1..(j + 1 + i) * n + n];
            for (wc, &a) in w[..wlen].iter_mut().zip(row) {
                *wc += vb * a;
            }
        }
        for i in 0..len {
            let f = tau * v[i];
            if f == Complex64::ZERO {
                continue;
            }
            let row = &mut h[(j + 1 + i) * n + j + 1..(j + 1 + i) * n + n];
            for (a, &wc) in row.iter_mut().zip(&w[..wlen]) {
                *a -= f * wc;
            }
        }

        // Right: all rows, columns j+1..n get A·(I − τ v vᴴ).
        for r in 0..n {
            let row = &mut h[r * n + j + 1..r * n + n];
            let mut dot = Complex64::ZERO;
            for (a, &vi) in row.iter().zip(&v[..len]) {
                dot += a * vi;
            }
            if dot == Complex64::ZERO {
                continue;
            }
            let f = tau * dot;
            for (a, &vi) in row.iter_mut().zip(&v[..len]) {
                *a -= f * vi.conj();
            }
        }

        // The eliminated column is known analytically.
        h[(j + 1) * n + j] = alpha * scale;
        for i in j + 2..n {
            h[i * n + j] = Complex64::ZERO;
        }
    }
}

/// Complex Givens rotation: returns (c, s) with c real so that
/// [c s; −s̄ c]·[a; b] = [r; 0].
#[inline]
fn rotg(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let bnorm = b.norm();
    if bnorm == 0.0 {
        return (1.0, Complex64::ZERO);
    }
    let anorm = a.norm();
    if anorm == 0.0 {
        return (0.0, Complex64::ONE);
    }
    let scale = anorm + bnorm;
    let rho = scale * ((anorm / scale).powi(2) + (bnorm / scale).powi(2)).sqrt();
    let alpha = a / anorm;
    (anorm / rho, alpha * b.conj() / rho)
}

/// Eigenvalues of a 2x2 block via the quadratic formula.
#[inline]
fn eig_2x2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let mid = (a + d) * 0.5;
    let p = (a - d) * 0.5;
    let disc = (p * p + b * c).sqrt();
    (mid + disc, mid - disc)
}

/// Wilkinson shift: eigenvalue of the trailing 2x2 closest to its (2,2) entry.
#[inline]
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let p = (a - d) * 0.5;
    let q = (p * p + b * c).sqrt();
    let plus = p + q;
    let minus = p - q;
    let shift = if plus.norm() <= minus.norm() {
        d + plus
    } else {
        d + minus
    };
    if shift.re.is_finite() && shift.im.is_finite() {
        shift
    } else {
        d
    }
}

/// Shifted QR with deflation on an upper Hessenberg matrix.
///
/// `max_sweeps` bounds the total number of QR sweeps over all eigenvalues.
fn hessenberg_eigenvalues(
    h: &mut [Complex64],
    n: usize,
    max_sweeps: usize,
) -> Result<Vec<Complex64>, LinalgError> {
    let mut eig = vec![Complex64::ZERO; n];
    let mut hi = n;
    let mut sweeps = 0usize;
    let mut stall = 0usize;

    while hi > 0 {
        if hi == 1 {
            eig[0] = h[0];
            break;
        }
        // Smallest active block [lo, hi): scan up for a negligible subdiagonal.
        let mut lo = hi - 1;
        while lo > 0 {
            let sub = h[lo * n + lo - 1].norm();
            let diag_scale = h[(lo - 1) * n + lo - 1].norm() + h[lo * n + lo].norm();
            if sub <= f64::EPSILON * diag_scale {
                h[lo * n + lo - 1] = Complex64::ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 {
            eig[hi - 1] = h[(hi - 1) * n + hi - 1];
            hi -= 1;
            stall = 0;
            continue;
        }
        if lo == hi - 2 {
            let (l1, l2) = eig_2x2(
                h[lo * n + lo],
                h[lo * n + lo + 1],
                h[(lo + 1) * n + lo],
                h[(lo + 1) * n + lo + 1],
            );
            eig[hi - 2] = l1;
            eig[hi - 1] = l2;
            hi -= 2;
            stall = 0;
            continue;
        }

        sweeps += 1;
        stall += 1;
        if sweeps > max_sweeps {
            return Err(LinalgError::EigenConvergence {
                max_sweeps,
                deflated: n - hi,
                size: n,
            });
        }

        let shift = if stall > 0 && stall % 10 == 0 {
            // Exceptional shift to break symmetric limit cycles.
            h[(hi - 1) * n + hi - 1]
                + Complex64::new(0.75 * h[(hi - 1) * n + hi - 2].norm(), 0.0)
        } else {
            wilkinson_shift(
                h[(hi - 2) * n + hi - 2],
                h[(hi - 2) * n + hi - 1],
                h[(hi - 1) * n + hi - 2],
                h[(hi - 1) * n + hi - 1],
            )
        };

        qr_sweep(h, n, lo, hi, shift);
    }
    Ok(eig)
}

/// One explicit-shift QR sweep on the active block [lo, hi).
///
/// Updates are confined to the block: couplings to already-deflated rows and
/// columns cannot influence the remaining eigenvalues (block triangularity),
/// so they are left stale.
fn qr_sweep(h: &mut [Complex64], n: usize, lo: usize, hi: usize, shift: Complex64) {
    for i in lo..hi {
        h[i * n + i] -= shift;
    }
    let mut rots = Vec::with_capacity(hi - lo - 1);
    // Forward pass: H − σI = Q·R via rotations on row pairs.
    for i in lo..hi - 1 {
        let (c, s) = rotg(h[i * n + i], h[(i + 1) * n + i]);
        rots.push((c, s));
        let sbar = s.conj();
        let (top, bottom) = h.split_at_mut((i + 1) * n);
        let row0 = &mut top[i * n + i..i * n + hi];
        let row1 = &mut bottom[i..hi];
        for (x, y) in row0.iter_mut().zip(row1.iter_mut()) {
            let a = *x;
            let b = *y;
            *x = c * a + s * b;
            *y = c * b - sbar * a;
        }
    }
    // Backward pass: R·Qᴴ, regenerating the subdiagonal.
    for (idx, &(c, s)) in rots.iter().enumerate() {
        let i = lo + idx;
        let sbar = s.conj();
        for row in lo..=i + 1 {
            let base = row * n;
            let a = h[base + i];
            let b = h[base + i + 1];
            h[base + i] = c * a + sbar * b;
            h[base + i + 1] = c * b - s * a;
        }
    }
    for i in lo..hi {
        h[i * n + i] += shift;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_multiset_close(got: &[Complex64], want: &[Complex64], tol: f64) {
        assert_eq!(got.len(), want.len());
        let mut used = vec![false; want.len()];
        for g in got {
            let mut best = None;
            let mut best_d = f64::INFINITY;
            for (i, w) in want.iter().enumerate() {
                if used[i] {
                    continue;
                }
                let d = (g - w).norm();
                if d < best_d {
                    best_d = d;
                    best = Some(i);
                }
            }
            let i = best.expect("counts match");
            assert!(best_d < tol, "eigenvalue {g} is {best_d} from nearest expected");
            used[i] = true;
        }
    }

    #[test]
    fn diagonal_matrix_eigenvalues() {
        let a = ComplexMatrix::from_fn(3, 3, |r, c| {
            if r != c {
                return Complex64::ZERO;
            }
            match r {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 2.0),
                _ => Complex64::new(-3.0, 0.0),
            }
        });
        let eig = eigenvalues(&a).unwrap();
        assert_multiset_close(
            &eig,
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 2.0),
                Complex64::new(-3.0, 0.0),
            ],
            1e-12,
        );
    }

    #[test]
    fn rotation_block_gives_plus_minus_i() {
        // [[0, 1], [-1, 0]] has characteristic polynomial λ² + 1.
        let a = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::ZERO,
                Complex64::ONE,
                -Complex64::ONE,
                Complex64::ZERO,
            ],
        )
        .unwrap();
        let eig = eigenvalues(&a).unwrap();
        assert_multiset_close(
            &eig,
            &[Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)],
            1e-12,
        );
    }

    #[test]
    fn companion_of_cubic_reproduces_roots_of_unity() {
        // Companion of z³ − 1.
        let mut a = ComplexMatrix::zeros(3, 3);
        a[(0, 2)] = Complex64::ONE;
        a[(1, 0)] = Complex64::ONE;
        a[(2, 1)] = Complex64::ONE;
        let eig = eigenvalues(&a).unwrap();
        let expected: Vec<Complex64> = (0..3)
            .map(|j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / 3.0))
            .collect();
        assert_multiset_close(&eig, &expected, 1e-10);
    }

    #[test]
    fn single_entry() {
        let a = ComplexMatrix::scalar(Complex64::new(2.5, -1.0));
        assert_eq!(eigenvalues(&a).unwrap(), vec![Complex64::new(2.5, -1.0)]);
    }

    #[test]
    fn upper_triangular_keeps_diagonal() {
        let a = ComplexMatrix::from_fn(4, 4, |r, c| {
            if r <= c {
                Complex64::new((r + 2 * c) as f64, (c as f64) - 1.0)
            } else {
                Complex64::ZERO
            }
        });
        let want: Vec<Complex64> = (0..4).map(|i| a[(i, i)]).collect();
        let eig = eigenvalues(&a).unwrap();
        assert_multiset_close(&eig, &want, 1e-10);
    }
}
