// SPDX-License-Identifier: MIT OR Apache-2.0

//! Exact linear algebra over Z and Q.

mod lattice;
mod matrix;
mod normal_form;

pub use lattice::{lattice_contains, lattice_intersect, lattice_sum, saturate, saturate_rational, IntegerLattice};
pub use matrix::{det, IntMatrix, Matrix, RationalMatrix};
pub use normal_form::{
    hnf, hnf_with_pivots, integer_kernel, integer_kernel_rational, invariant_factors, kernel_basis, snf,
};

use num_bigint::BigInt;
use num_rational::BigRational;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
