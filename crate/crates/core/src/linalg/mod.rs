//! Dense complex linear-algebra kernels: general eigendecomposition via
//! Schur reduction, Hermitian eigendecomposition, ordered invariant
//! subspaces, inertia, and the internal QR / SVD helpers behind them.

mod hermitian;
mod matrix;
pub(crate) mod qr;
mod schur;
pub(crate) mod svd;

pub use hermitian::{eigen_hermitian, inertia_of, max_eigenvalue, min_eigenvalue, Inertia};
pub use matrix::ComplexMatrix;
pub use schur::{eigen_general, reorder_schur, stable_invariant_basis, HalfPlane, SchurForm};

/// Default relative tolerance for every operation that accepts one.
pub const DEFAULT_TOL: f64 = 1e-9;
