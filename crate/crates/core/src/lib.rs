//! Border bases and minimal generating sets for the homogeneous ideal of a
//! projective curve known only through finitely many points.
//!
//! The crate has two backends sharing one set of combinatorial types:
//!
//! - an exact backend over `BigRational`, driven by completely reduced row
//!   echelon forms;
//! - an approximate backend over `Complex64`, driven by an SVD null-space and
//!   QR with column pivoting, where the pivoting (not a term order) chooses the
//!   complement monomials.
//!
//! A typical approximate run samples a parametrized curve at roots of unity,
//! builds a border basis degree by degree with [`border::border_basis_approx`],
//! discards redundant generators with [`minimize::minimal_basis_approx`] and
//! recovers exact coefficients with [`recovery::rationalize_generators`].

pub mod algebra;
pub mod approx;
pub mod border;
pub mod bounds;
pub mod error;
pub mod eval;
pub mod exact;
pub mod io;
pub mod matrix;
pub mod minimize;
pub mod recovery;
pub mod sampler;
pub mod scalar;

pub use algebra::{
    Complement, GeneratorKind, GeneratorSet, HomogeneousPolynomial, Monomial, MonomialSet,
};
pub use approx::{RankDecision, RankMode};
pub use border::{BorderRun, DegreeDiagnostics, IdealOracle, Provenance, RunDiagnostics};
pub use bounds::{CurveClass, CurveProfile, DegreeBound};
pub use error::{Error, Result};
pub use eval::{Point, PointSet};
pub use matrix::{ApproxMatrix, ExactMatrix, Matrix};
pub use minimize::MinimizationReport;
pub use recovery::RationalizationPolicy;
pub use sampler::{BivariatePolynomial, Parametrization};
pub use scalar::{FieldKind, Scalar};

pub use num_complex::Complex64;
pub use num_rational::BigRational;

/// Default relative threshold for numerical rank decisions.
pub const DEFAULT_TOL: f64 = 1e-8;
