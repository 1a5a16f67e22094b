//! Hermitian eigendecomposition and inertia counts.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::schur::schur;
use crate::error::{Error, Result};

/// Signature of a Hermitian matrix: eigenvalue counts by sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
}

impl Inertia {
    pub fn dimension(&self) -> usize {
        self.positive + self.zero + self.negative
    }

    /// Signature difference n+ - n-.
    pub fn signature(&self) -> isize {
        self.positive as isize - self.negative as isize
    }
}

fn check_hermitian(m: &ComplexMatrix, tol: f64) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "Hermitian check requires a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let deviation = m.hermitian_deviation();
    let tolerance = tol * m.norm_fro().max(1.0);
    if deviation > tolerance {
        return Err(Error::NotHermitian { deviation, tolerance });
    }
    Ok(())
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues sorted
/// ascending plus the matching unitary eigenvector matrix.
///
/// The input is symmetrized before reduction, so the tiny skew part
/// allowed by the tolerance never pollutes the eigenvalues.
pub fn eigen_hermitian(m: &ComplexMatrix, tol: f64) -> Result<(Vec<f64>, ComplexMatrix)> {
    check_hermitian(m, tol)?;
    let sym = m.hermitian_part();
    let form = schur(&sym, tol)?;
    // T is diagonal up to roundoff for a normal input; sort by real part.
    let n = m.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| form.eigenvalues[a].re.total_cmp(&form.eigenvalues[b].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| form.eigenvalues[i].re).collect();
    let vectors = form.unitary.select_columns(&order);
    Ok((eigenvalues, vectors))
}

/// Counts of eigenvalues above, inside, and below the band `tol * ||m||`.
pub fn inertia_of(m: &ComplexMatrix, tol: f64) -> Result<Inertia> {
    let (eigenvalues, _) = eigen_hermitian(m, tol)?;
    let band = tol * m.norm_fro();
    let mut inertia = Inertia { positive: 0, zero: 0, negative: 0 };
    for lambda in eigenvalues {
        if lambda > band {
            inertia.positive += 1;
        } else if lambda < -band {
            inertia.negative += 1;
        } else {
            inertia.zero += 1;
        }
    }
    Ok(inertia)
}

/// Largest eigenvalue of a Hermitian matrix.
pub fn max_eigenvalue(m: &ComplexMatrix, tol: f64) -> Result<f64> {
    let (eigenvalues, _) = eigen_hermitian(m, tol)?;
    Ok(eigenvalues.last().copied().unwrap_or(0.0))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &ComplexMatrix, tol: f64) -> Result<f64> {
    let (eigenvalues, _) = eigen_hermitian(m, tol)?;
    Ok(eigenvalues.first().copied().unwrap_or(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_matrix_all_zero() {
        let (eig, _) = eigen_hermitian(&ComplexMatrix::zeros(4, 4), 1e-9).unwrap();
        assert!(eig.iter().all(|&l| l == 0.0));
    }

    #[test]
    fn diagonal_case() {
        // the indefinite Gamma diag(-10, 0.1)
        let m = ComplexMatrix::diag_real(&[-10.0, 0.1]);
        let (eig, _) = eigen_hermitian(&m, 1e-9).unwrap();
        assert!((eig[0] + 10.0).abs() < 1e-12);
        assert!((eig[1] - 0.1).abs() < 1e-12);
    }

    #[test]
    fn positive_definite_perturbation_matrix() {
        // eigenvalues of [[4,2,2],[2,4,2],[2,2,4]] are {2, 2, 8}
        let m = ComplexMatrix::from_real_rows(&[
            vec![4.0, 2.0, 2.0],
            vec![2.0, 4.0, 2.0],
            vec![2.0, 2.0, 4.0],
        ])
        .unwrap();
        let (eig, v) = eigen_hermitian(&m, 1e-9).unwrap();
        assert!((eig[0] - 2.0).abs() < 1e-9);
        assert!((eig[1] - 2.0).abs() < 1e-9);
        assert!((eig[2] - 8.0).abs() < 1e-9);
        // reconstruction
        let d = ComplexMatrix::diag_real(&eig);
        let rec = v.matmul(&d).matmul(&v.adjoint());
        assert!(rec.approx_eq(&m, 1e-9));
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap();
        assert!(matches!(eigen_hermitian(&m, 1e-9), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn inertia_diag() {
        let m = ComplexMatrix::diag_real(&[3.0, 0.0, -5.0]);
        let inertia = inertia_of(&m, 1e-9).unwrap();
        assert_eq!(inertia, Inertia { positive: 1, zero: 1, negative: 1 });
        assert_eq!(inertia.dimension(), 3);
    }

    #[test]
    fn inertia_of_i_j() {
        // iJ for n=1 is [[0,-i],[i,0]], eigenvalues +-1
        let m = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, -1.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let inertia = inertia_of(&m, 1e-9).unwrap();
        assert_eq!(inertia, Inertia { positive: 1, zero: 0, negative: 1 });
    }

    #[test]
    fn inertia_positive_definite() {
        let m = ComplexMatrix::diag_real(&[10.0, 1.0, 0.1]);
        let inertia = inertia_of(&m, 1e-9).unwrap();
        assert_eq!(inertia, Inertia { positive: 3, zero: 0, negative: 0 });
    }
}
