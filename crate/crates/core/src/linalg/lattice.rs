// SPDX-License-Identifier: MIT OR Apache-2.0

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{IntMatrix, RationalMatrix};
use super::normal_form::{hnf_with_pivots, integer_kernel};
use crate::error::{Error, Result};

/// Finitely generated subgroup of `Z^n`, stored as the nonzero columns of its
/// column Hermite normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntegerLattice {
    ambient: usize,
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl IntegerLattice {
    pub fn from_generators(gens: &IntMatrix) -> Self {
        let (h, _, pivots) = hnf_with_pivots(gens);
        let basis = h.select_columns(&(0..pivots.len()).collect::<Vec<_>>());
        IntegerLattice { ambient: gens.rows(), basis, pivots }
    }

    pub fn from_vectors(ambient: usize, vecs: &[Vec<BigInt>]) -> Self {
        Self::from_generators(&IntMatrix::from_columns(ambient, vecs))
    }

    pub fn zero(ambient: usize) -> Self {
        Self::from_generators(&IntMatrix::zeros(ambient, 0))
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_generators(&IntMatrix::identity(ambient))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// Canonical basis, one column per basis vector.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<BigInt>> {
        self.basis.columns()
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient);
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (c, &r) in self.pivots.iter().enumerate() {
            let p = &self.basis[(r, c)];
            let (q, rem) = rest[r].div_rem(p);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for i in r..self.ambient {
                    let t = &q * &self.basis[(i, c)];
                    rest[i] -= t;
                }
            }
            coords.push(q);
        }
        if rest.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains_vector(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Whether `self ⊆ other`.
    pub fn is_sublattice_of(&self, other: &IntegerLattice) -> bool {
        self.ambient == other.ambient
            && self.basis_vectors().iter().all(|v| other.contains_vector(v))
    }

    /// Index `[other : self]` when `self ⊆ other` have equal rank.
    pub fn index_in(&self, other: &IntegerLattice) -> Option<BigInt> {
        if self.rank() != other.rank() || !self.is_sublattice_of(other) {
            return None;
        }
        let cols: Vec<Vec<BigInt>> = self
            .basis_vectors()
            .iter()
            .map(|v| other.coordinates(v).expect("sublattice"))
            .collect();
        let m = IntMatrix::from_columns(other.rank(), &cols);
        Some(super::matrix::det(&m).expect("square").magnitude().clone().into())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_generators(&self.basis.scale(c))
    }

    pub fn to_rational(&self) -> RationalMatrix {
        self.basis.to_rational()
    }
}

fn check_ambient(a: &IntegerLattice, b: &IntegerLattice) -> Result<()> {
    if a.ambient != b.ambient {
        return Err(Error::DimensionMismatch { expected: a.ambient, found: b.ambient });
    }
    Ok(())
}

/// `A + B`, the image of `(A | B)`.
pub fn lattice_sum(a: &IntegerLattice, b: &IntegerLattice) -> Result<IntegerLattice> {
    check_ambient(a, b)?;
    Ok(IntegerLattice::from_generators(&a.basis.hcat(&b.basis)))
}

/// `A ∩ B`, the image of `(A | 0)·K` for a kernel basis `K` of `(A | B)`.
pub fn lattice_intersect(a: &IntegerLattice, b: &IntegerLattice) -> Result<IntegerLattice> {
    check_ambient(a, b)?;
    let k = integer_kernel(&a.basis.hcat(&b.basis));
    let top = k.select_rows(&(0..a.rank()).collect::<Vec<_>>());
    Ok(IntegerLattice::from_generators(&a.basis.mul(&top)))
}

/// Whether `A ⊆ B`.
pub fn lattice_contains(a: &IntegerLattice, b: &IntegerLattice) -> Result<bool> {
    check_ambient(a, b)?;
    Ok(a.is_sublattice_of(b))
}

/// `(Q·L) ∩ Z^n`.
pub fn saturate(l: &IntegerLattice) -> IntegerLattice {
    let n = l.ambient;
    if l.rank() == 0 {
        return l.clone();
    }
    let perp = integer_kernel(&l.basis.transpose());
    if perp.cols() == 0 {
        return IntegerLattice::full(n);
    }
    IntegerLattice::from_generators(&integer_kernel(&perp.transpose()))
}

/// `Z^n ∩ span_Q(columns)` for rational column vectors.
pub fn saturate_rational(columns: &RationalMatrix) -> IntegerLattice {
    let n = columns.rows();
    let cols: Vec<Vec<BigInt>> = columns
        .columns()
        .into_iter()
        .map(|c| {
            let d = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            c.iter().map(|x| (x * BigRational::from_integer(d.clone())).to_integer()).collect()
        })
        .collect();
    saturate(&IntegerLattice::from_vectors(n, &cols))
}
