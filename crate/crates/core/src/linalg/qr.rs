//! Householder QR factorizations: thin orthonormalization and the
//! column-pivoted variant used internally for rank decisions and solves.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Householder reflector annihilating x[1..] below x[0].
/// Returns (v, beta) with H = I - beta v v*, H x = alpha e1, and alpha.
fn householder_vector(x: &[Complex64]) -> (Vec<Complex64>, f64, Complex64) {
    let norm_x = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm_x == 0.0 {
        return (vec![czero(); x.len()], 0.0, czero());
    }
    // alpha = -phase(x0) * ||x|| avoids cancellation in v = x - alpha e1
    let phase = if x[0].norm() > 0.0 {
        x[0] / x[0].norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let alpha = -phase * norm_x;
    let mut v = x.to_vec();
    v[0] -= alpha;
    let vnorm_sqr = v.iter().map(|z| z.norm_sqr()).sum::<f64>();
    if vnorm_sqr == 0.0 {
        return (vec![czero(); x.len()], 0.0, alpha);
    }
    (v, 2.0 / vnorm_sqr, alpha)
}

/// Apply H = I - beta v v* to rows r0.. of columns c0.. of m (left multiplication).
fn apply_reflector_left(m: &mut ComplexMatrix, v: &[Complex64], beta: f64, r0: usize, c0: usize) {
    if beta == 0.0 {
        return;
    }
    for j in c0..m.cols() {
        let mut dot = czero();
        for (k, vk) in v.iter().enumerate() {
            dot += vk.conj() * m[(r0 + k, j)];
        }
        let scale = dot * beta;
        for (k, vk) in v.iter().enumerate() {
            let delta = vk * scale;
            m[(r0 + k, j)] -= delta;
        }
    }
}

/// Column-pivoted QR factorization A P = Q R.
///
/// Q is stored as an n-row orthonormal-column matrix, R is upper
/// triangular (k x cols with k = min(rows, cols)), and `perm[j]` is the
/// original index of the j-th factored column.
pub struct ColPivQr {
    pub q: ComplexMatrix,
    pub r: ComplexMatrix,
    pub perm: Vec<usize>,
    /// Number of reflections actually applied (for determinant sign).
    reflections: usize,
}

impl ColPivQr {
    pub fn new(a: &ComplexMatrix) -> Self {
        let rows = a.rows();
        let cols = a.cols();
        let k = rows.min(cols);
        let mut work = a.clone();
        let mut perm: Vec<usize> = (0..cols).collect();
        let mut q = ComplexMatrix::identity(rows);
        let mut reflections = 0usize;

        for step in 0..k {
            // pivot on the largest remaining column norm
            let mut best = step;
            let mut best_norm = -1.0;
            for j in step..cols {
                let norm: f64 = (step..rows).map(|i| work[(i, j)].norm_sqr()).sum();
                if norm > best_norm {
                    best_norm = norm;
                    best = j;
                }
            }
            if best != step {
                work.swap_columns(step, best);
                perm.swap(step, best);
            }
            if best_norm == 0.0 {
                break;
            }
            let x: Vec<Complex64> = (step..rows).map(|i| work[(i, step)]).collect();
            let (v, beta, _) = householder_vector(&x);
            if beta != 0.0 {
                apply_reflector_left(&mut work, &v, beta, step, step);
                // accumulate Q: Q <- Q H, i.e. apply reflector to Q's columns from the right;
                // equivalently apply to rows of Q* from the left. Use Q <- Q (I - beta v v*).
                for i in 0..rows {
                    let mut dot = czero();
                    for (t, vt) in v.iter().enumerate() {
                        dot += q[(i, step + t)] * vt;
                    }
                    let scale = dot * beta;
                    for (t, vt) in v.iter().enumerate() {
                        let delta = scale * vt.conj();
                        q[(i, step + t)] -= delta;
                    }
                }
                reflections += 1;
            }
            // clean below-diagonal entries of the factored column
            for i in step + 1..rows {
                work[(i, step)] = czero();
            }
        }

        let r = work.block(0, 0, k, cols);
        Self { q, r, perm, reflections }
    }

    /// Numerical rank: count of |r_jj| above `tol_abs`.
    pub fn rank(&self, tol_abs: f64) -> usize {
        let k = self.r.rows().min(self.r.cols());
        (0..k).filter(|&j| self.r[(j, j)].norm() > tol_abs).count()
    }

    /// Magnitudes of the R diagonal (descending by construction of the pivoting).
    pub fn diag_magnitudes(&self) -> Vec<f64> {
        let k = self.r.rows().min(self.r.cols());
        (0..k).map(|j| self.r[(j, j)].norm()).collect()
    }

    /// Determinant of the (square) factored matrix.
    pub fn det(&self) -> Complex64 {
        assert!(self.q.rows() == self.r.cols(), "det requires a square matrix");
        let n = self.r.cols();
        let mut d = Complex64::new(1.0, 0.0);
        for j in 0..n.min(self.r.rows()) {
            d *= self.r[(j, j)];
        }
        if self.reflections % 2 == 1 {
            d = -d;
        }
        // permutation sign
        let mut seen = vec![false; n];
        let mut transpositions = 0usize;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.perm[cur];
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 1 {
            d = -d;
        }
        d
    }

    /// Least-squares / basic solution of A X = B with rank truncation at `tol_abs`.
    pub fn solve_with_rank(&self, b: &ComplexMatrix, tol_abs: f64) -> ComplexMatrix {
        let rank = self.rank(tol_abs).max(0);
        let cols = self.r.cols();
        let qtb = self.q.adjoint().matmul(b);
        let mut x = ComplexMatrix::zeros(cols, b.cols());
        // back substitution on the leading rank x rank triangle
        for col in 0..b.cols() {
            for i in (0..rank).rev() {
                let mut sum = qtb[(i, col)];
                for j in i + 1..rank {
                    sum -= self.r[(i, j)] * x[(j, col)];
                }
                x[(i, col)] = sum / self.r[(i, i)];
            }
        }
        // undo the permutation
        let mut out = ComplexMatrix::zeros(cols, b.cols());
        for j in 0..cols {
            for col in 0..b.cols() {
                out[(self.perm[j], col)] = x[(j, col)];
            }
        }
        out
    }
}

/// Solve the square system A X = B. Errors if A is numerically singular
/// relative to `tol` (scaled by the largest R diagonal).
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    assert!(a.is_square(), "solve requires a square matrix");
    assert_eq!(a.rows(), b.rows(), "solve shape mismatch");
    let qr = ColPivQr::new(a);
    let diag = qr.diag_magnitudes();
    let scale = diag.first().copied().unwrap_or(0.0);
    let tol_abs = tol * scale.max(f64::MIN_POSITIVE);
    if diag.len() < a.rows() || diag.iter().any(|&d| d <= tol_abs) {
        return Err(Error::DimensionMismatch(format!(
            "singular system: smallest pivot {:.3e} at tolerance {:.3e}",
            diag.last().copied().unwrap_or(0.0),
            tol_abs
        )));
    }
    Ok(qr.solve_with_rank(b, 0.0))
}

/// Inverse of a square matrix via column-pivoted QR.
pub fn inverse(a: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    solve(a, &ComplexMatrix::identity(a.rows()), tol)
}

/// Orthonormal basis for the column span (thin Q of an unpivoted QR).
pub fn orthonormal_columns(a: &ComplexMatrix) -> ComplexMatrix {
    let qr = ColPivQr::new(a);
    let k = a.rows().min(a.cols());
    qr.q.block(0, 0, a.rows(), k)
}

/// Condition number estimate from the pivoted R diagonal: |r_00| / |r_kk|.
pub fn cond_estimate(a: &ComplexMatrix) -> f64 {
    let qr = ColPivQr::new(a);
    let diag = qr.diag_magnitudes();
    match (diag.first(), diag.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 && diag.len() == a.rows().min(a.cols()) => hi / lo,
        _ => f64::INFINITY,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
        // xorshift, deterministic; test-only
        let mut state = seed.wrapping_mul(2685821657736338717).max(1);
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        ComplexMatrix::from_fn(rows, cols, |_, _| c(next() * 4.0, next() * 4.0))
    }

    #[test]
    fn qr_reconstructs() {
        let a = random_matrix(5, 5, 42);
        let qr = ColPivQr::new(&a);
        let ap = a.select_columns(&qr.perm);
        let rec = qr.q.matmul(&qr.r);
        assert!(rec.approx_eq(&ap, 1e-12), "QR reconstruction failed");
        // unitarity
        let qtq = qr.q.adjoint().matmul(&qr.q);
        assert!(qtq.approx_eq(&ComplexMatrix::identity(5), 1e-12));
    }

    #[test]
    fn solve_recovers_solution() {
        let a = random_matrix(6, 6, 7);
        let x_true = random_matrix(6, 2, 9);
        let b = a.matmul(&x_true);
        let x = solve(&a, &b, 1e-12).unwrap();
        assert!(x.approx_eq(&x_true, 1e-9));
    }

    #[test]
    fn solve_rejects_singular() {
        let a = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(solve(&a, &ComplexMatrix::identity(2), 1e-12).is_err());
    }

    #[test]
    fn rank_detects_deficiency() {
        let mut a = random_matrix(5, 3, 3);
        // third column = sum of the first two
        for i in 0..5 {
            a[(i, 2)] = a[(i, 0)] + a[(i, 1)];
        }
        let qr = ColPivQr::new(&a);
        let scale = qr.diag_magnitudes()[0];
        assert_eq!(qr.rank(1e-10 * scale), 2);
    }

    #[test]
    fn det_matches_closed_form() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(1.0, 1.0), c(2.0, 0.0)],
            vec![c(0.0, -1.0), c(1.0, 2.0)],
        ])
        .unwrap();
        // det = (1+i)(1+2i) - 2(-i) = (1+3i-2) + 2i = -1 + 5i
        let d = ColPivQr::new(&a).det();
        assert!((d - c(-1.0, 5.0)).norm() < 1e-12, "det = {d}");
    }

    #[test]
    fn least_squares_minimizes_residual() {
        let a = random_matrix(6, 3, 11);
        let b = random_matrix(6, 1, 13);
        let qr = ColPivQr::new(&a);
        let x = qr.solve_with_rank(&b, 1e-12);
        // residual must be orthogonal to the column span
        let resid = a.matmul(&x).sub(&b);
        let proj = a.adjoint().matmul(&resid);
        assert!(proj.norm_fro() < 1e-10, "normal equations violated: {}", proj.norm_fro());
    }
}
