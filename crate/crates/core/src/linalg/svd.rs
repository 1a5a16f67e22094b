//! Singular values and right singular vectors via one-sided Jacobi.
//!
//! Small singular values come out with absolute accuracy near machine
//! precision times the matrix norm, which is what the rank staircase
//! needs; a full U factor is never required in this crate.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;

const MAX_SWEEPS: usize = 60;

/// Singular values (descending) and right singular vectors: a = u diag(s) v*.
pub fn svd_right(a: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let cols = a.cols();
    let mut g = a.clone();
    let mut v = ComplexMatrix::identity(cols);
    let scale = a.norm_fro().max(f64::MIN_POSITIVE);
    let tol = f64::EPSILON * scale * scale;

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = Complex64::new(0.0, 0.0);
                for i in 0..g.rows() {
                    let gp = g[(i, p)];
                    let gq = g[(i, q)];
                    app += gp.norm_sqr();
                    aqq += gq.norm_sqr();
                    apq += gp.conj() * gq;
                }
                if apq.norm() <= f64::EPSILON * (app * aqq).sqrt() + tol * f64::EPSILON {
                    continue;
                }
                // diagonalize the 2x2 Gram block [[app, apq], [conj(apq), aqq]]
                let phase = apq / apq.norm();
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let t = if tau == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for target in [&mut g, &mut v] {
                    for i in 0..target.rows() {
                        let gp = target[(i, p)];
                        let gq = target[(i, q)];
                        target[(i, p)] = cs * gp - sn * phase.conj() * gq;
                        target[(i, q)] = sn * phase * gp + cs * gq;
                    }
                }
                rotated = true;
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sv: Vec<(f64, usize)> = (0..cols)
        .map(|j| {
            let norm = (0..g.rows()).map(|i| g[(i, j)].norm_sqr()).sum::<f64>().sqrt();
            (norm, j)
        })
        .collect();
    sv.sort_by(|a, b| b.0.total_cmp(&a.0));
    let order: Vec<usize> = sv.iter().map(|&(_, j)| j).collect();
    let sigmas: Vec<f64> = sv.iter().map(|&(s, _)| s).collect();
    (sigmas, v.select_columns(&order))
}

/// Singular values only, descending.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    svd_right(a).0
}

/// Orthonormal basis of the numerical null space at the given absolute
/// threshold on singular values.
pub fn null_space(a: &ComplexMatrix, tol_abs: f64) -> ComplexMatrix {
    let (sigmas, v) = svd_right(a);
    let keep: Vec<usize> = sigmas
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s <= tol_abs)
        .map(|(j, _)| j)
        .collect();
    v.select_columns(&keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
        let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15).max(1);
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        ComplexMatrix::from_fn(rows, cols, |_, _| c(next() * 4.0, next() * 4.0))
    }

    #[test]
    fn diagonal_singular_values() {
        let m = ComplexMatrix::diag_real(&[-3.0, 2.0, 0.5]);
        let sv = singular_values(&m);
        assert!((sv[0] - 3.0).abs() < 1e-12);
        assert!((sv[1] - 2.0).abs() < 1e-12);
        assert!((sv[2] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn right_vectors_diagonalize_gram() {
        let m = random_matrix(5, 4, 77);
        let (sv, v) = svd_right(&m);
        // V must be unitary
        let vtv = v.adjoint().matmul(&v);
        assert!(vtv.approx_eq(&ComplexMatrix::identity(4), 1e-11));
        // A* A = V diag(s^2) V*
        let gram = m.adjoint().matmul(&m);
        let d = ComplexMatrix::diag_real(&sv.iter().map(|s| s * s).collect::<Vec<_>>());
        let rec = v.matmul(&d).matmul(&v.adjoint());
        assert!(rec.approx_eq(&gram, 1e-9 * gram.norm_fro().max(1.0)));
    }

    #[test]
    fn null_space_of_rank_deficient() {
        let mut m = random_matrix(4, 3, 5);
        for i in 0..4 {
            m[(i, 2)] = m[(i, 0)] + m[(i, 1)];
        }
        let sv = singular_values(&m);
        assert!(sv[2] < 1e-12 * sv[0], "smallest sv {:e}", sv[2]);
        let ns = null_space(&m, 1e-10 * sv[0]);
        assert_eq!(ns.cols(), 1);
        assert!(m.matmul(&ns).norm_fro() < 1e-10 * sv[0]);
    }

    #[test]
    fn nilpotent_shift_singular_values() {
        // the size-3 nilpotent shift has singular values {1, 1, 0}
        let mut m = ComplexMatrix::zeros(3, 3);
        m[(0, 1)] = c(1.0, 0.0);
        m[(1, 2)] = c(1.0, 0.0);
        let sv = singular_values(&m);
        assert!((sv[0] - 1.0).abs() < 1e-13);
        assert!((sv[1] - 1.0).abs() < 1e-13);
        assert!(sv[2] < 1e-13);
    }
}
