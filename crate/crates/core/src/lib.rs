//! Exact representation calculus for Schottky modules over complex tori.
//!
//! The crate is organised bottom-up:
//!
//! - [`scalar`]: the two scalar backends, exact Gaussian rationals and
//!   approximate complex doubles, behind one field-operations trait.
//! - [`linalg`]: dense matrices over either backend, echelon-form kernels,
//!   Kronecker and direct-sum constructions, and the nilpotent
//!   exponential / unipotent logarithm pair.
//! - [`group`]: the four source groups (free, free abelian, lattice inside
//!   a complex torus, surface), words, and the two comparison morphisms.
//! - [`rep`]: finite-dimensional representations and their calculus:
//!   validation, evaluation, tensor operations, intertwiners, Kolchin
//!   flags, peeling, pullback, the adjoint, and Jordan decomposition.
//! - [`cohomology`]: explicit group cohomology in degrees 0 and 1 for free
//!   and free-abelian groups, Ext^1, and extension building/extraction.
//! - [`schottky`]: the gauge construction that trivialises a unipotent
//!   lattice representation on the kernel of the torus morphism, its
//!   rank-one character analogue, flat direct sums, and the Schottky
//!   predicates (including the adjoint criterion).
//!
//! Everything over the exact backend is decidable and certified: operations
//! either return a checkable certificate or a concrete witness of failure.
//! The approximate backend exists for character data, where logarithms of
//! arbitrary nonzero scalars are needed; comparisons there are made within
//! an explicit tolerance.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cohomology;
pub mod group;
pub mod linalg;
pub mod rep;
pub mod scalar;
pub mod schottky;

pub use group::{GroupKind, GroupShape, GroupSpec, Morphism, Word};
pub use linalg::Matrix;
pub use rep::Representation;
pub use scalar::{ApproxComplex, Backend, GaussianRational, Scalar, Tolerance};
