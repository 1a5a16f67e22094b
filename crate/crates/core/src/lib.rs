//! Solvability analysis and verified solutions for matrix Riccati
//! inequalities with a sign-indefinite quadratic term.
//!
//! The classical Kalman-Yakubovich frequency condition settles the
//! sign-definite case; when the quadratic weight is indefinite it stops
//! being necessary. This crate decides solvability by classifying the
//! pure-imaginary spectrum of the associated Hamiltonian matrix (Jordan
//! block sizes and Krein indices), evaluates the counting function s(w)
//! whose nonnegativity at every axis frequency is equivalent to
//! solvability, and then produces stabilizing or anti-stabilizing
//! Hermitian solutions through invariant-subspace Riccati solves on a
//! perturbed problem, verified against the original inequality.
//!
//! Modules:
//! - [`linalg`]: dense complex eigensolvers and invariant subspaces.
//! - [`problem`]: problem data model, validation, ingestion, frequency
//!   response, and the classical grid check.
//! - [`hamiltonian`]: Hamiltonian assembly and spectrum reports.
//! - [`krein`]: axis-spectrum classification and the solvability verdict.
//! - [`riccati`]: equation/inequality solvers with certificates.
//! - [`migration`]: rank-one Hamiltonian updates and eigenvalue
//!   trajectory tracing under the probe homotopy.
//! - [`gallery`]: constructors for Hamiltonian test matrices with
//!   prescribed axis structure.

pub mod error;
pub mod gallery;
pub mod hamiltonian;
pub mod krein;
pub mod linalg;
pub mod migration;
pub mod problem;
pub mod riccati;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DEFAULT_TOL};
