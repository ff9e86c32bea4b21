//! Exact classification of M20-invariant polarizations on K3 surfaces.
//!
//! The invariant lattice `L20` has rank 3 and Gram matrix
//! `[[4,0,-2],[0,4,-2],[-2,-2,12]]` in the basis `(e, f, h)`. A polarization of
//! degree `4n` is a vector of norm `4n` in it; its orthogonal complement is the
//! transcendental lattice of the surface, a positive definite even binary form.
//!
//! Modules, bottom-up:
//!
//! * [`lattice`]: vectors, inner products, primitivity, orthogonal complements.
//! * [`isometry`]: the order-16 isometry group, orbits and canonical labels.
//! * [`representability`]: which degrees occur, exhaustive enumeration, prime witnesses.
//! * [`forms`]: Gauss reduction and equivalence of the transcendental lattices.
//! * [`analysis`]: the per-degree pipeline (orbits, `T_X`, index, quadric counts, feasibility).
//! * [`veronese`]: dimension bookkeeping for Veronese re-embeddings.
//! * [`report`], [`golden`], [`quadrics`]: rendering, regression data and the shipped equations.

pub mod analysis;
pub mod arith;
pub mod error;
pub mod forms;
pub mod golden;
pub mod isometry;
pub mod lattice;
pub mod quadrics;
pub mod report;
pub mod representability;
pub mod veronese;

pub use error::{Error, Result};
pub use forms::EvenBinaryForm;
pub use lattice::LatticeVector;
