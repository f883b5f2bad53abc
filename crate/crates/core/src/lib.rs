//! The type-B associahedron as a flag complex on arrows, realized as a
//! pulling triangulation of the boundary of the Legendre polytope
//! `P_n = conv{e_j - e_i}`. Faces also correspond to balanced Delannoy words,
//! and a cyclic action refines the decomposition of `P_n` into rotated copies
//! of the positive root polytope.
//!
//! Module map:
//!
//! - [`representation`]: arrows, B-diagonals, arcs, compatibility.
//! - [`legendre`]: faces of `P_n`, simplex tests, lattice volumes, total unimodularity.
//! - [`pulling`]: pulling triangulations and vertex orders.
//! - [`simion`]: the complex of compatible arrow sets and its face numbers.
//! - [`cho`]: the cyclic action and the decomposition into copies of `P_n^+`.
//! - [`delannoy`]: valid digraphs and balanced Delannoy words.

pub mod cho;
pub mod delannoy;
pub mod error;
pub mod legendre;
pub mod pulling;
pub mod representation;
pub mod scalar;
pub mod simion;

pub use error::{Error, Result};
pub use representation::{Arrow, ArrowSet, BDiagonal, BDiagonalKind, CircularArc};

/// Coordinate type for vertices of `P_n`.
pub type Int = i64;

/// Arbitrary-precision counter for face numbers and path counts.
pub type Count = num_bigint::BigInt;

pub type IntegerVector = legendre::LatticeVector<Int>;

pub type FaceVector = simion::FaceVectorOf<Count>;
