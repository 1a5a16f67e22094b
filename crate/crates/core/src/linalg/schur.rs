//! Complex Schur decomposition: Hessenberg reduction, implicitly shifted
//! QR iteration, and invariant-subspace extraction via eigenvalue
//! reordering of the triangular factor.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Which open half-plane an invariant subspace is requested for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfPlane {
    Left,
    Right,
}

/// Unitary Schur decomposition m = U T U*.
#[derive(Debug, Clone)]
pub struct SchurForm {
    /// Unitary factor U.
    pub unitary: ComplexMatrix,
    /// Upper triangular factor T.
    pub triangular: ComplexMatrix,
    /// Diagonal of T, in factorization order.
    pub eigenvalues: Vec<Complex64>,
}

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Complex Givens rotation G = [[c, s], [-conj(s), c]] with c real,
/// such that G * (a, b)^T = (r, 0)^T.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let na = a.norm();
    let nb = b.norm();
    if nb == 0.0 {
        return (1.0, czero());
    }
    let t = (na * na + nb * nb).sqrt();
    if na == 0.0 {
        // rotate b into the first slot with unit phase
        return (0.0, b.conj() / nb);
    }
    let c = na / t;
    let s = (a / na) * b.conj() / t;
    (c, s)
}

/// Apply G to rows (i, j) over columns [c0, c1).
fn rot_rows(m: &mut ComplexMatrix, i: usize, j: usize, c: f64, s: Complex64, c0: usize, c1: usize) {
    for k in c0..c1 {
        let x = m[(i, k)];
        let y = m[(j, k)];
        m[(i, k)] = c * x + s * y;
        m[(j, k)] = -s.conj() * x + c * y;
    }
}

/// Apply G* to columns (i, j) over rows [r0, r1).
fn rot_cols(m: &mut ComplexMatrix, i: usize, j: usize, c: f64, s: Complex64, r0: usize, r1: usize) {
    for k in r0..r1 {
        let x = m[(k, i)];
        let y = m[(k, j)];
        m[(k, i)] = c * x + s.conj() * y;
        m[(k, j)] = -s * x + c * y;
    }
}

/// Householder similarity reduction to upper Hessenberg form.
/// Returns (U, H) with m = U H U*.
pub fn hessenberg(m: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = m.rows();
    let mut h = m.clone();
    let mut u = ComplexMatrix::identity(n);
    if n < 3 {
        return (u, h);
    }
    for k in 0..n - 2 {
        let x: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let norm_x = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { Complex64::new(1.0, 0.0) };
        let alpha = -phase * norm_x;
        let mut v = x;
        v[0] -= alpha;
        let vnorm_sqr = v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if vnorm_sqr == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm_sqr;
        // H <- P H with P = I - beta v v* embedded at rows k+1..
        for j in 0..n {
            let mut dot = czero();
            for (t, vt) in v.iter().enumerate() {
                dot += vt.conj() * h[(k + 1 + t, j)];
            }
            let scale = dot * beta;
            for (t, vt) in v.iter().enumerate() {
                let delta = vt * scale;
                h[(k + 1 + t, j)] -= delta;
            }
        }
        // H <- H P, U <- U P
        for target in [&mut h, &mut u] {
            for i in 0..n {
                let mut dot = czero();
                for (t, vt) in v.iter().enumerate() {
                    dot += target[(i, k + 1 + t)] * vt;
                }
                let scale = dot * beta;
                for (t, vt) in v.iter().enumerate() {
                    let delta = scale * vt.conj();
                    target[(i, k + 1 + t)] -= delta;
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = czero();
        }
    }
    (u, h)
}

/// Eigenvalues of a 2x2 complex matrix.
fn eig_2x2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - det * 4.0).sqrt();
    ((tr + disc) * 0.5, (tr - disc) * 0.5)
}

/// Wilkinson shift: the eigenvalue of the trailing 2x2 closer to d.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let (l1, l2) = eig_2x2(a, b, c, d);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Complex Schur decomposition via implicitly shifted QR iteration with
/// a sweep budget of `50 * n`.
pub fn schur(m: &ComplexMatrix, _tol: f64) -> Result<SchurForm> {
    assert!(m.is_square(), "schur requires a square matrix");
    let n = m.rows();
    if n == 0 {
        return Ok(SchurForm {
            unitary: ComplexMatrix::zeros(0, 0),
            triangular: ComplexMatrix::zeros(0, 0),
            eigenvalues: vec![],
        });
    }
    let (mut u, mut h) = hessenberg(m);
    let budget = 50 * n;
    let mut sweeps = 0usize;
    let eps = f64::EPSILON;
    let norm_scale = m.norm_fro().max(f64::MIN_POSITIVE);

    let mut hi = n - 1;
    let mut stagnation = 0usize;
    loop {
        // deflate converged subdiagonals
        while hi > 0 {
            let sub = h[(hi, hi - 1)].norm();
            let local = h[(hi - 1, hi - 1)].norm() + h[(hi, hi)].norm();
            let thresh = eps * if local > 0.0 { local } else { norm_scale };
            if sub <= thresh {
                h[(hi, hi - 1)] = czero();
                hi -= 1;
                stagnation = 0;
            } else {
                break;
            }
        }
        if hi == 0 {
            break;
        }
        // find the start of the active unreduced block
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let local = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            let thresh = eps * if local > 0.0 { local } else { norm_scale };
            if sub <= thresh {
                h[(lo, lo - 1)] = czero();
                break;
            }
            lo -= 1;
        }

        if sweeps >= budget {
            return Err(Error::NonConvergence { sweeps });
        }
        sweeps += 1;
        stagnation += 1;

        let shift = if stagnation % 12 == 0 {
            // exceptional shift breaks rare symmetric stalls
            h[(hi, hi)] + h[(hi, hi - 1)].norm() * 0.75
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        // implicit single-shift sweep over the active block [lo, hi]
        let mut gx = h[(lo, lo)] - shift;
        let mut gy = h[(lo + 1, lo)];
        for k in lo..hi {
            let (c, s) = givens(gx, gy);
            rot_rows(&mut h, k, k + 1, c, s, k.saturating_sub(1), n);
            rot_cols(&mut h, k, k + 1, c, s, 0, n.min(k + 3));
            rot_cols(&mut u, k, k + 1, c, s, 0, n);
            if k > lo {
                // this rotation annihilated the bulge chased from the previous step
                h[(k + 1, k - 1)] = czero();
            }
            if k + 1 < hi {
                gx = h[(k + 1, k)];
                gy = h[(k + 2, k)];
            }
        }
    }

    // clean the strictly lower triangle
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = czero();
        }
    }
    let eigenvalues = (0..n).map(|i| h[(i, i)]).collect();
    Ok(SchurForm { unitary: u, triangular: h, eigenvalues })
}

/// Swap the adjacent diagonal entries k and k+1 of the triangular factor
/// by a unitary similarity, updating the unitary factor accordingly.
fn swap_adjacent(t: &mut ComplexMatrix, u: &mut ComplexMatrix, k: usize) {
    let n = t.rows();
    let l1 = t[(k, k)];
    let l2 = t[(k + 1, k + 1)];
    let t12 = t[(k, k + 1)];
    // eigenvector of [[l1, t12],[0, l2]] for l2
    let v = [t12, l2 - l1];
    let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    if norm == 0.0 {
        return; // equal eigenvalues with zero coupling: nothing to move
    }
    let u1 = [v[0] / norm, v[1] / norm];
    let u2 = [-u1[1].conj(), u1[0].conj()];
    // G = [u1 u2]; apply T <- G* T G, U <- U G
    // rows k, k+1 of T: [rk; rk1] <- G* [rk; rk1]
    for j in 0..n {
        let x = t[(k, j)];
        let y = t[(k + 1, j)];
        t[(k, j)] = u1[0].conj() * x + u1[1].conj() * y;
        t[(k + 1, j)] = u2[0].conj() * x + u2[1].conj() * y;
    }
    for target in [&mut *t, u] {
        for i in 0..n {
            let x = target[(i, k)];
            let y = target[(i, k + 1)];
            target[(i, k)] = x * u1[0] + y * u1[1];
            target[(i, k + 1)] = x * u2[0] + y * u2[1];
        }
    }
    t[(k + 1, k)] = czero();
    t[(k, k)] = l2;
    t[(k + 1, k + 1)] = l1;
}

/// Reorder the Schur form so that eigenvalues satisfying `select` occupy
/// the leading diagonal positions. Returns the number selected.
pub fn reorder_schur<F: Fn(Complex64) -> bool>(form: &mut SchurForm, select: F) -> usize {
    let n = form.triangular.rows();
    let mut slot = 0usize;
    for i in 0..n {
        if select(form.triangular[(i, i)]) {
            let mut k = i;
            while k > slot {
                swap_adjacent(&mut form.triangular, &mut form.unitary, k - 1);
                k -= 1;
            }
            slot += 1;
        }
    }
    form.eigenvalues = (0..n).map(|i| form.triangular[(i, i)]).collect();
    slot
}

/// General complex eigendecomposition via Schur reduction.
pub fn eigen_general(m: &ComplexMatrix, tol: f64) -> Result<SchurForm> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigen_general requires a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    assert!(tol > 0.0, "tolerance must be positive");
    schur(m, tol)
}

/// Orthonormal basis of the invariant subspace for all eigenvalues in the
/// requested open half-plane. Errors with [`Error::AxisEigenvalue`] when
/// any eigenvalue sits inside the axis band `tol * ||m||`.
pub fn stable_invariant_basis(
    m: &ComplexMatrix,
    half: HalfPlane,
    tol: f64,
) -> Result<ComplexMatrix> {
    let mut form = eigen_general(m, tol)?;
    let band = tol * m.norm_fro();
    if let Some(bad) = form.eigenvalues.iter().find(|l| l.re.abs() <= band) {
        return Err(Error::AxisEigenvalue { re: bad.re, im: bad.im, band });
    }
    let k = reorder_schur(&mut form, |l| match half {
        HalfPlane::Left => l.re < 0.0,
        HalfPlane::Right => l.re > 0.0,
    });
    Ok(form.unitary.block(0, 0, m.rows(), k))
}
