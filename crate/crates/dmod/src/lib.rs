//! Exact symbolic tools for twisted D-modules attached to central line
//! arrangements in the plane.
//!
//! Given a finite set of pairwise-independent linear forms through the origin
//! and a complex exponent for each, the crate computes the number of
//! decomposition factors of the associated twisted module, together with the
//! support of each factor. The supporting machinery is exposed as well:
//! exact Gaussian-rational scalars, the rank-two Weyl algebra with a graded
//! reverse-lexicographic term order, the two canonical annihilating operators
//! and a normal-form division against them, the module action on symbols
//! `p * alpha^(beta + N)`, and step-by-step reduction certificates for the
//! one-variable ideals that appear at the origin.
//!
//! All arithmetic is exact; nothing is floating point.

pub mod action;
pub mod arrangement;
pub mod certs;
pub mod decomp;
pub mod poly;
pub mod scalar;
pub mod verify;
pub mod weyl;

pub use action::{TwistedElement, TwistedModule};
pub use arrangement::{arrangement_from_json, Arrangement, NormalizedArrangement};
pub use decomp::{count_factors, DecompositionReport};
pub use scalar::Scalar;
pub use weyl::{build_annihilators, normal_form, weyl_mul, WeylOp};
