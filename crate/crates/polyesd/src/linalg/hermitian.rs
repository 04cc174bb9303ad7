//! Hermitian eigensolver (Householder tridiagonalization + implicit-shift QL)
//! and singular values through the Gram matrix.

use num_complex::Complex64;

use super::ComplexMatrix;

/// Eigenvalues of a Hermitian matrix, ascending. Only the Hermitian part of
/// the input is referenced in exact arithmetic; callers pass Gram matrices.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Vec<f64> {
    assert!(a.is_square(), "hermitian_eigenvalues requires a square matrix");
    let n = a.rows();
    let mut g = a.data().to_vec();
    let (mut d, mut e) = tridiagonalize(&mut g, n);
    tridiagonal_eigenvalues(&mut d, &mut e);
    d.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    d
}

/// Singular values in descending order, for any rectangular matrix.
///
/// Computed as square roots of the eigenvalues of the Hermitian Gram matrix
/// (the smaller of AᴴA and AAᴴ), with tiny negative eigenvalues clamped to 0.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let gram = if a.rows() >= a.cols() {
        a.adjoint().mul(a)
    } else {
        a.mul(&a.adjoint())
    };
    let mut sv: Vec<f64> = hermitian_eigenvalues(&gram)
        .into_iter()
        .map(|ev| ev.max(0.0).sqrt())
        .collect();
    sv.sort_by(|x, y| y.partial_cmp(x).expect("finite singular values"));
    sv
}

/// Reduce a Hermitian matrix (flat row-major, size n) to real symmetric
/// tridiagonal form by Householder similarity. The complex phases of the
/// off-diagonals are dropped; a diagonal unitary similarity makes this exact.
fn tridiagonalize(g: &mut [Complex64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n.saturating_sub(1)];
    if n == 1 {
        d[0] = g[0].re;
        return (d, e);
    }
    let mut v = vec![Complex64::ZERO; n];
    let mut p = vec![Complex64::ZERO; n];
    for j in 0..n.saturating_sub(2) {
        let len = n - j - 1;
        let mut scale = 0.0;
        for i in 0..len {
            scale += g[(j + 1 + i) * n + j].norm();
        }
        if scale == 0.0 {
            e[j] = 0.0;
            continue;
        }
        let mut norm_sqr = 0.0;
        for i in 0..len {
            let x = g[(j + 1 + i) * n + j] / scale;
            v[i] = x;
            norm_sqr += x.norm_sqr();
        }
        let norm = norm_sqr.sqrt();
        if norm == 0.0 {
            e[j] = 0.0;
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
        e[j] = norm * scale;
        if vnorm_sqr == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm_sqr;

        // Rank-2 update of the trailing block B = g[j+1.., j+1..]:
        // p = τ·B·v, K = (τ/2)·vᴴp, B ← B − (p − Kv)vᴴ − v(p − Kv)ᴴ.
        for pi in p[..len].iter_mut() {
            *pi = Complex64::ZERO;
        }
        for r in 0..len {
            let row = &g[(j + 1 + r) * n + j + 1..(j + 1 + r) * n + n];
            let mut acc = Complex64::ZERO;
            for (a, &vi) in row.iter().zip(&v[..len]) {
                acc += a * vi;
            }
            p[r] = tau * acc;
        }
        let mut vhp = Complex64::ZERO;
        for i in 0..len {
            vhp += v[i].conj() * p[i];
        }
        let kappa = 0.5 * tau * vhp.re;
        for i in 0..len {
            p[i] -= kappa * v[i];
        }
        for r in 0..len {
            let qr = p[r];
            let vr = v[r];
            let row = &mut g[(j + 1 + r) * n + j + 1..(j + 1 + r) * n + n];
            for ((a, &vi), &pi) in row.iter_mut().zip(&v[..len]).zip(&p[..len]) {
                *a -= qr * vi.conj() + vr * pi.conj();
            }
        }
    }
    if n >= 2 {
        e[n - 2] = g[(n - 1) * n + n - 2].norm();
    }
    for i in 0..n {
        d[i] = g[i * n + i].re;
    }
    (d, e)
}

/// Implicit-shift QL on a real symmetric tridiagonal matrix, eigenvalues only.
fn tridiagonal_eigenvalues(d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    if n <= 1 {
        return;
    }
    // Shift the off-diagonal convention to e[i] between d[i] and d[i+1],
    // with a zero sentinel at the end.
    let mut off = vec![0.0; n];
    off[..n - 1].copy_from_slice(e);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(
                iter <= 50,
                "tridiagonal QL failed to converge after 50 iterations"
            );
            let mut g = (d[l + 1] - d[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + off[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    off[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    e.copy_from_slice(&off[..n - 1]);
}
