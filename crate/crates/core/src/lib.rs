//! Symbolic tensor calculus for paracomplex manifolds and their tangent
//! bundles.
//!
//! Component functions are polynomials over split-complex rationals
//! ([`Expr`]), so every identity between lifted objects can be decided by
//! exact comparison of canonical forms. The [`verify`] module runs a catalog
//! of such identities over seeded random inputs.

pub mod chart;
pub mod connection;
pub mod error;
pub mod expr;
pub mod field;
pub mod geometry;
pub mod lift;
pub mod oracle;
pub mod parse;
pub mod random;
pub mod split;
pub mod verify;

pub use chart::{Chart, Symbol, SymbolKind};
pub use connection::{BilinearVectorMap, Connection, Table3};
pub use error::GeometryError;
pub use expr::{Assignment, EvalError, Expr, Monomial};
pub use field::{EndoField, OneForm, ScalarField, VectorField};
pub use oracle::{equal, ConsistencyError, Oracle};
pub use parse::{parse, ParseError};
pub use split::SplitComplex;
