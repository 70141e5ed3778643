// SPDX-License-Identifier: MIT OR Apache-2.0

//! Grids, grid gradings, and the computation of cyclic and universal
//! abelian gradings.
//!
//! A `Z/qZ`-grading of `E` corresponds to an automorphism `σ` of
//! `E ⊗ Q(ζ_q)` satisfying `σ^q = 1` and `τ_a σ = σ^a τ_a`; the grading is
//! recovered from the eigenspaces of `σ`. Roots of unity are always encoded
//! by their exponents.

mod cyclic;
mod eigen;
mod graded;
mod grid;
mod numeric;
mod universal;

pub use cyclic::{
    cyclic_gradings, cyclic_gradings_of_order, effective_exponent, spectrum_groupoid, xe_automorphisms,
    SpectrumGroupoid,
};
pub use eigen::{cyclic_automorphism, diagonalizable_on, joint_eigenspaces, EigenOperator, JointEigenspaces};
pub use graded::GridGrading;
pub use grid::{AbelianGroup, Grid, GroupPresentation};
pub use numeric::{complex_embeddings, max_cross_inner_product, ComplexEmbeddings};
pub use universal::{universal_abelian, UniversalAbelian, MAX_GROUP_ORDER};
