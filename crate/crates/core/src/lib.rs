//! Discrete period matrices of weighted graphs cellularly embedded on closed
//! orientable surfaces, and exact verification of the combinatorial
//! identities tying them to homological quasi-trees.
//!
//! Everything here is exact: rationals are arbitrary precision and no floating
//! point value is ever compared. The crate is `no_std` and needs only `alloc`.
//!
//! The layers, bottom-up:
//!
//! - [`exactla`]: rational and integer matrices, Smith normal form, degree-2
//!   jets and a division-free determinant.
//! - [`graph`]: plain multigraph utilities (union-find, tree paths, spanning
//!   tree enumeration) shared by the primal and dual skeleta.
//! - [`ribbon`]: rotation systems, face tracing, duals, contraction/deletion.
//! - [`homology`]: tree-cotree decompositions, fundamental (co)cycles, the
//!   intersection pairing, symplectic frames and the crossing matrix `M`.
//! - [`period`]: Laplacian, harmonic 1-forms and the period matrix `ΩL`.
//! - [`quasitree`]: homological quasi-trees and the identities built on them.
//! - [`bundle`]: the bundle Laplacian `Δ(z)`, its determinant `P` and the
//!   Hessian of `P` at the trivial connection.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bundle;
pub mod exactla;
pub mod graph;
pub mod homology;
pub mod period;
pub mod quasitree;
pub mod report;
pub mod ribbon;

pub use exactla::{IntMatrix, Jet2, Rat, RatMatrix};
pub use homology::{HomologyFrame, TreeCotree};
pub use period::PeriodData;
pub use quasitree::QuasiTree;
pub use report::{CheckRecord, Report};
pub use ribbon::RibbonGraph;
