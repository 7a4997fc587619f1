//! Exact computations behind symplectic quotients `(L ⊗ A) / W` of an abelian
//! surface `A` by a Weyl group `W` acting on an integral lattice `L`.
//!
//! The crate builds root data and Weyl groups over the integers, computes
//! invariant subspaces of the tensor constructions `Sym²V`, `∧²V` and
//! `∧²(V ⊕ V)`, enumerates `W`-stable lattices between a root lattice and its
//! dual, and assembles per-lattice verdicts (codimension of non-free loci,
//! dimension of invariant 2-forms, symplectic-resolution lookup).
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod error;
pub mod exact_linalg;
pub mod hk_analysis;
pub mod invariant_theory;
pub mod lattice_tower;
pub mod report;
pub mod root_data;
pub mod weyl;

#[doc(hidden)]
pub mod cli;

pub use error::{Error, Result};
