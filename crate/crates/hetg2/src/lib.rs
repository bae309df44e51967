//! Exact symbolic verification engine and numeric regime explorer for an
//! approximate heterotic G2 system on contact Calabi-Yau 7-manifolds.
//!
//! Everything lives in a fixed local orthonormal coframe: forms are elements
//! of a free graded-commutative algebra over exact rationals in the four real
//! parameters eps, k, delta, m. The crate reconstructs the torsion, flux,
//! connection and curvature families of that geometry, checks every local
//! identity exactly (either in the free algebra or modulo the relation ideal
//! generated by d² on the coframe), and explores the asymptotic parameter
//! regimes of the anomaly-free condition numerically.

pub mod anomaly;
pub mod checks;
pub mod cli;
pub mod connections;
pub mod exterior;
pub mod g2;
pub mod matrix;
pub mod regimes;
pub mod report;
pub mod scalars;
pub mod verifier;

pub use exterior::{Form, Generator, Monomial};
pub use scalars::{ParamPoly, Rational};
