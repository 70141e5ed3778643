// SPDX-License-Identifier: MIT OR Apache-2.0

//! Structure-constant algebras over Z and Q.

pub mod corpus;
mod spectrum;
mod structure;
mod tensor;

pub use spectrum::{spectrum, subset_projection, unit_vector, SpectrumDecomposition, SpectrumFactor, SubsetProjection};
pub use structure::{int_vec, Base, StructureAlgebra};
pub use tensor::{tensor_cyclotomic, CyclotomicTensor};
