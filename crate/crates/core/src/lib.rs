//! Matroids given by their circuits, Tutte and characteristic polynomials,
//! Orlik-Solomon algebras, and hyperplane arrangements over the rationals.
//!
//! The crate builds the direct-sum and parallel-connection families
//! `M_n = C_n ⊕ M₀` and `M′_n = P(C_n, M₀) ⊕ S`, and certifies with exact
//! arithmetic that their Orlik-Solomon algebras are isomorphic while their
//! Tutte polynomials differ.
//!
//! Data-parallel work (deletion-contraction subtrees, per-degree linear
//! algebra, sweeps over parameter grids) goes through [`Execution`]. With the
//! `parallel` feature disabled every strategy runs sequentially.

pub mod arrangement;
pub mod certify;
pub mod constructions;
pub mod error;
pub mod exec;
pub mod exterior;
pub mod flats;
pub mod io;
pub mod isomorphism;
pub mod linalg;
pub mod matroid;
pub mod os_algebra;
pub mod poly;
pub mod subset;
pub mod tutte;

pub use error::{Error, Result};
pub use exec::Execution;
pub use exterior::{ExteriorElement, Rational};
pub use matroid::{Element, Matroid, ValidationReport};
pub use os_algebra::OsAlgebra;
pub use poly::{BivariatePolynomial, UnivariatePolynomial};
pub use subset::Subset;

/// Version string written into every certificate and JSON artifact.
pub const TOOL_VERSION: &str = concat!("osforge ", env!("CARGO_PKG_VERSION"));

/// Schema version carried by every JSON document this crate emits.
pub const SCHEMA_VERSION: u32 = 1;
