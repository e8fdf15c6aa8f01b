//! Exact combinatorics and linearized geometry of coadjoint B-orbits attached
//! to involutions of the hyperoctahedral group W(C_n).
//!
//! The crate is organized bottom-up:
//!
//! * [`perm`]: signed permutations, lengths, reflections, the Bruhat order.
//! * [`roots`]: positive roots of C_n and supports of involutions.
//! * [`scalar`] and [`matrix`]: exact rings and 2n×2n matrices in the signed
//!   index order 1, …, n, −n, …, −1.
//! * [`orbits`]: functionals, Chevalley generators of B, the coadjoint action,
//!   degeneration curves and orbit dimensions.
//! * [`rank_order`]: rook placements, rank matrices and the involution poset.
//! * [`cli`]: the command surface used by the `symplorbit` binary.

pub mod cli;
pub mod error;
pub mod matrix;
pub mod orbits;
pub mod perm;
pub mod rank_order;
pub mod roots;
pub mod scalar;

pub use error::{Error, Result};
pub use matrix::{IndexedMatrix, Matrix};
pub use perm::{BruhatPoset, Involution, SignedPermutation, WeylType};
pub use roots::{OrthogonalSet, Root, Support};
pub use scalar::{Laurent, Rational, Ring};
