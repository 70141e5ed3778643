// SPDX-License-Identifier: MIT OR Apache-2.0

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("multiplication is not associative at (e{h}·e{i})·e{j}")]
    NotAssociative { h: usize, i: usize, j: usize },
    #[error("multiplication is not commutative: e{h}·e{i} ≠ e{i}·e{h}")]
    NotCommutative { h: usize, i: usize },
    #[error("algebra has no unit element")]
    NoUnit,
    #[error("algebra is not reduced")]
    NotReduced,
    #[error("structure constants are not integral")]
    NotAnOrder,
    #[error("empty subset of the spectrum")]
    EmptySubset,
    #[error("grading is not loose: product of components {g} and {h} vanishes")]
    NotLoose { g: String, h: String },
    #[error("components do not form a decomposition: {0}")]
    NotADecomposition(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("map is not a grid morphism: {0}")]
    NotAMorphism(String),
    #[error("incompatible wreath elements: {0}")]
    Incompatible(String),
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("no admissible partition of the spectrum")]
    NoAdmissiblePartition,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
