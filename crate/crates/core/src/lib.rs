// SPDX-License-Identifier: MIT OR Apache-2.0

//! Gradings of reduced orders and reduced rational algebras.
//!
//! Algebras are given by structure constants. The crate computes their
//! cyclic gradings of prime-power order, the universal abelian group grading
//! and the universal grid grading, using exact arithmetic throughout.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod grading;
pub mod groupoid;
pub mod linalg;
pub mod poly;
pub mod restriction;
pub mod xe;

pub use error::{Error, Result};
