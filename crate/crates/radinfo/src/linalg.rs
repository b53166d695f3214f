//! Dense linear-algebra primitives shared by the recovery modules: Gaussian
//! matrices, kernel bases with a deterministic sign convention, null vectors
//! of almost-square systems, and a Lanczos solver for the largest eigenvalue
//! of symmetric projected operators.

use crate::error::{Error, Result};
use crate::rng::RngStream;
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

/// `n x m` matrix with i.i.d. standard normal entries, filled column-major
/// from the stream.
pub fn gaussian_matrix(n: usize, m: usize, rng: RngStream) -> DMatrix<f64> {
    let mut r = rng.rng();
    DMatrix::from_iterator(n, m, (0..n * m).map(|_| r.sample::<f64, _>(StandardNormal)))
}

/// Flip column signs so the first entry of magnitude above `1e-9` is
/// positive. Makes orthonormal factors reproducible across factorizations.
fn canonicalize_signs(b: &mut DMatrix<f64>) {
    for j in 0..b.ncols() {
        let mut col = b.column_mut(j);
        if let Some(lead) = col.iter().find(|v| v.abs() > 1e-9) {
            if *lead < 0.0 {
                col.neg_mut();
            }
        }
    }
}

/// Thin orthonormal basis of the range of `a` (full column rank required).
pub fn orthonormal_range(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let qr = a.clone().qr();
    let r = qr.r();
    let scale = r.diagonal().amax();
    if scale == 0.0 || r.diagonal().iter().any(|d| d.abs() < 1e-12 * scale) {
        return Err(Error::RankDeficient(format!(
            "matrix of shape {}x{} is not full column rank",
            a.nrows(),
            a.ncols()
        )));
    }
    let mut q = qr.q();
    canonicalize_signs(&mut q);
    Ok(q)
}

/// Orthonormal basis of the kernel of `g` (`n x m` with full row rank):
/// an `m x (m-n)` matrix `B` with `G B = 0` and a deterministic sign
/// convention.
pub fn kernel_basis(g: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let (n, m) = (g.nrows(), g.ncols());
    if n > m {
        return Err(Error::InvalidParam(format!(
            "kernel basis needs n <= m, got {n} x {m}"
        )));
    }
    if n == 0 {
        return Ok(DMatrix::identity(m, m));
    }
    if n == m {
        // still verify invertibility so rank deficiency fails loudly
        let qr = g.transpose().qr();
        let r = qr.r();
        let scale = r.diagonal().amax();
        if scale == 0.0 || r.diagonal().iter().any(|d| d.abs() < 1e-12 * scale) {
            return Err(Error::RankDeficient("information matrix is singular".into()));
        }
        return Ok(DMatrix::zeros(m, 0));
    }
    let qr = g.transpose().qr();
    let r = qr.r();
    let scale = r.diagonal().amax();
    if scale == 0.0 || r.diagonal().iter().any(|d| d.abs() < 1e-12 * scale) {
        return Err(Error::RankDeficient(format!(
            "information matrix of shape {n}x{m} is rank deficient"
        )));
    }
    // full Q^T applied to the identity; its last m-n rows span the kernel
    let mut qt = DMatrix::identity(m, m);
    qr.q_tr_mul(&mut qt);
    let mut b = qt.rows(n, m - n).transpose();
    canonicalize_signs(&mut b);

    let residual = (g * &b).amax();
    let gscale = g.amax().max(1.0);
    if residual > 1e-10 * gscale {
        return Err(Error::NonConvergence(format!(
            "kernel basis residual {residual} exceeds tolerance"
        )));
    }
    Ok(b)
}

/// Orthonormal basis of the orthogonal complement of the column span of `b`
/// (`m x k` orthonormal), of dimension `m - k`. Built by projecting
/// coordinate vectors, so the result is deterministic.
pub fn orthonormal_complement(b: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let m = b.nrows();
    let want = m - b.ncols();
    let mut cols: Vec<DVector<f64>> = Vec::with_capacity(want);
    for i in 0..m {
        if cols.len() == want {
            break;
        }
        let mut v = DVector::zeros(m);
        v[i] = 1.0;
        for _ in 0..2 {
            let coeff = b.tr_mul(&v);
            v -= b * coeff;
            for c in &cols {
                let t = c.dot(&v);
                v.axpy(-t, c, 1.0);
            }
        }
        let norm = v.norm();
        if norm > 1e-6 {
            cols.push(v / norm);
        }
    }
    if cols.len() != want {
        return Err(Error::RankDeficient(
            "failed to complete an orthonormal complement".into(),
        ));
    }
    Ok(DMatrix::from_columns(&cols))
}

/// The (essentially unique) unit null vector of an `r x (r+1)` matrix.
/// Returns `None` when the matrix is rank deficient, i.e. the null space is
/// not one-dimensional.
pub fn null_vector(a: &DMatrix<f64>) -> Option<DVector<f64>> {
    let (r, c) = (a.nrows(), a.ncols());
    debug_assert_eq!(c, r + 1);
    if r == 0 {
        return Some(DVector::from_element(1, 1.0));
    }
    let qr = a.transpose().qr();
    let rr = qr.r();
    let scale = rr.diagonal().amax();
    if scale == 0.0 || rr.diagonal().iter().any(|d| d.abs() < 1e-10 * scale) {
        return None; // degenerate subset
    }
    let q1 = qr.q(); // c x r
    // coordinate vector with the largest component outside range(a^T)
    let mut best_i = 0;
    let mut best = -1.0;
    for i in 0..c {
        let resid = 1.0 - q1.row(i).norm_squared();
        if resid > best {
            best = resid;
            best_i = i;
        }
    }
    let mut v = DVector::zeros(c);
    v[best_i] = 1.0;
    for _ in 0..2 {
        let coeff = q1.tr_mul(&v);
        v -= &q1 * coeff;
    }
    let norm = v.norm();
    if norm < 1e-8 {
        return None;
    }
    Some(v / norm)
}

/// Largest eigenvalue of a symmetric positive semidefinite operator given by
/// `apply`, via Lanczos with full reorthogonalization.
///
/// The start vector is a fixed hash-generated vector passed once through
/// `apply`, so the result is deterministic. Convergence is declared when the
/// top Ritz value stagnates to relative `tol` across check intervals; an
/// invariant-subspace breakdown terminates exactly.
pub fn lanczos_max_eig<F>(dim: usize, mut apply: F, tol: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(&DVector<f64>) -> DVector<f64>,
{
    if dim == 0 {
        return Ok(0.0);
    }
    let seed_vec = DVector::from_fn(dim, |i, _| {
        // splitmix-style hash of the index, mapped to (-1, 1)
        let mut z = (i as u64).wrapping_add(0x9E3779B97F4A7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^= z >> 31;
        (z >> 11) as f64 / (1u64 << 52) as f64 - 1.0
    });
    // one application folds the start into the operator's range
    let mut v = apply(&seed_vec);
    let n0 = v.norm();
    if n0 < 1e-300 {
        return Ok(0.0); // the operator annihilates the probe: treat as zero
    }
    v /= n0;

    let mut basis: Vec<DVector<f64>> = vec![v.clone()];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut last_check = f64::NEG_INFINITY;
    let mut stagnant = 0;
    let cap = max_iter.min(dim);

    for j in 0..cap {
        let mut w = apply(&basis[j]);
        let alpha = basis[j].dot(&w);
        alphas.push(alpha);
        w.axpy(-alpha, &basis[j], 1.0);
        if j > 0 {
            w.axpy(-betas[j - 1], &basis[j - 1], 1.0);
        }
        // full reorthogonalization, two passes
        for _ in 0..2 {
            for b in &basis {
                let t = b.dot(&w);
                w.axpy(-t, b, 1.0);
            }
        }
        let beta = w.norm();
        let scale = alphas.iter().fold(0.0f64, |a, &x| a.max(x.abs())).max(beta);
        if beta <= 1e-14 * scale.max(1e-300) {
            // exact invariant subspace
            return Ok(tridiag_max_eig(&alphas, &betas));
        }
        if (j + 1) % 8 == 0 || j + 1 == cap {
            let lam = tridiag_max_eig(&alphas, &betas);
            if (lam - last_check).abs() <= tol * lam.abs().max(1e-300) {
                stagnant += 1;
                if stagnant >= 2 {
                    return Ok(lam);
                }
            } else {
                stagnant = 0;
            }
            last_check = lam;
        }
        betas.push(beta);
        basis.push(w / beta);
    }
    if cap == dim {
        // the Krylov space is the whole space: the tridiagonal is exact
        return Ok(tridiag_max_eig(&alphas, &betas));
    }
    Err(Error::NonConvergence(format!(
        "Lanczos did not converge in {cap} iterations"
    )))
}

/// Largest eigenvalue of a symmetric tridiagonal matrix by Sturm bisection.
fn tridiag_max_eig(alpha: &[f64], beta: &[f64]) -> f64 {
    let k = alpha.len();
    assert!(k >= 1);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..k {
        let left = if i > 0 { beta[i - 1].abs() } else { 0.0 };
        let right = if i < beta.len() { beta[i].abs() } else { 0.0 };
        lo = lo.min(alpha[i] - left - right);
        hi = hi.max(alpha[i] + left + right);
    }
    if lo == hi {
        return lo;
    }
    // count of eigenvalues strictly below x
    let count_below = |x: f64| -> usize {
        let mut cnt = 0;
        let mut d = alpha[0] - x;
        if d < 0.0 {
            cnt += 1;
        }
        for i in 1..k {
            let b2 = beta[i - 1] * beta[i - 1];
            let denom = if d.abs() < 1e-300 {
                1e-300_f64.copysign(if d == 0.0 { 1.0 } else { d })
            } else {
                d
            };
            d = alpha[i] - x - b2 / denom;
            if d < 0.0 {
                cnt += 1;
            }
        }
        cnt
    };
    let (mut lo, mut hi) = (lo, hi + (hi - lo) * 1e-12 + 1e-300);
    for _ in 0..120 {
        let mid = 0.5 * (lo + hi);
        if count_below(mid) == k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}
