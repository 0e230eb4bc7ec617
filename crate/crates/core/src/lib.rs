//! Chainlink polytopes, fence and chainlink posets, and the oriented-poset
//! transfer calculus for rank polynomials, all in exact arithmetic.
//!
//! The numeric core is generic: polynomial code over a [`Ring`] of
//! coefficients, polyhedral code over an exact [`Field`]. The aliases below
//! fix the arbitrary-precision choices used by the CLI.

pub mod analysis;
pub mod composition;
pub mod ehrhart;
pub mod error;
pub mod geometry;
pub mod poset;
pub mod qpoly;
pub mod scalar;
pub mod transfer;

pub use composition::Composition;
pub use ehrhart::QuasiPolynomial;
pub use error::{Error, Result};
pub use geometry::{HPolytope, VertexSet};
pub use poset::{FinitePoset, OrientedPoset};
pub use qpoly::{ModalityReport, QPolynomial, SymmetryReport};
pub use scalar::{Field, Ring};
pub use transfer::RankMatrix;

pub type Integer = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;
pub type QPoly = QPolynomial<Integer>;
pub type RankMat = RankMatrix<Integer>;
pub type Polytope = HPolytope<Rational>;
pub type Vertices = VertexSet<Rational>;
pub type QuasiPoly = QuasiPolynomial<Rational>;
