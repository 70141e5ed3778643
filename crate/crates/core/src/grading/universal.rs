// SPDX-License-Identifier: MIT OR Apache-2.0

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::cyclic::xe_automorphisms;
use super::eigen::{diagonalizable_on, joint_eigenspaces, EigenOperator};
use super::graded::GridGrading;
use super::grid::AbelianGroup;
use crate::algebra::{Base, CyclotomicTensor, StructureAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, snf, IntMatrix, IntegerLattice, RationalMatrix};

/// Largest grading group materialized as a grid.
pub const MAX_GROUP_ORDER: usize = 4096;

/// Universal abelian group grading with the data it was read off from.
#[derive(Clone, Debug)]
pub struct UniversalAbelian {
    pub grading: GridGrading,
    pub group: AbelianGroup,
    /// Moduli `q` of the operators, one per automorphism used.
    pub moduli: Vec<u64>,
    /// Joint eigenvalue exponents of each nonzero component, and the group
    /// element it sits in.
    pub labels: Vec<Vec<u64>>,
    pub elements: Vec<usize>,
}

fn primes_up_to(r: usize) -> Vec<u64> {
    (2..=r as u64).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// Largest power of `p` not exceeding `r`.
fn max_power(p: u64, r: usize) -> u64 {
    let mut q = p;
    while q * p <= r as u64 {
        q *= p;
    }
    q
}

/// The universal abelian group grading of a reduced order.
///
/// The group is the subgroup of `∏ Z/q_s` generated by the joint
/// eigenvalues, written in Smith coordinates `Z/d_1 × … × Z/d_t` with
/// `1 < d_1 | … | d_t`.
pub fn universal_abelian(r: &StructureAlgebra) -> Result<UniversalAbelian> {
    if r.base() != Base::Z || !r.is_integral() {
        return Err(Error::NotAnOrder);
    }
    if !r.is_reduced() {
        return Err(Error::NotReduced);
    }
    let n = r.rank();
    let qs: Vec<u64> = primes_up_to(n).into_iter().map(|p| max_power(p, n)).collect();
    let per_q: Vec<(u64, CyclotomicTensor, Vec<RationalMatrix>)> = qs
        .par_iter()
        .map(|&q| {
            let (t, mats) = xe_automorphisms(r, q)?;
            let id = RationalMatrix::identity(t.algebra.rank());
            let mut keep = Vec::new();
            for m in mats.into_iter().filter(|m| m.is_integral() && *m != id) {
                if diagonalizable_on(r, EigenOperator { tensor: &t, matrix: &m })? {
                    keep.push(m);
                }
            }
            Ok((q, t, keep))
        })
        .collect::<Result<_>>()?;

    let mut moduli = Vec::new();
    let mut ops = Vec::new();
    for (q, t, mats) in &per_q {
        for m in mats {
            moduli.push(*q);
            ops.push(EigenOperator { tensor: t, matrix: m });
        }
    }
    let js = joint_eigenspaces(r, &ops)?;

    // relations among the labels: c with Σ c_j z_j ≡ 0 mod q
    let s = moduli.len();
    let z = js.labels.len();
    let mut rows = vec![vec![BigInt::zero(); z + s]; s];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, label) in js.labels.iter().enumerate() {
            row[j] = BigInt::from(label[i]);
        }
        row[z + i] = BigInt::from(moduli[i]);
    }
    let stacked = if s == 0 { IntMatrix::zeros(0, z) } else { IntMatrix::from_rows(&rows) };
    let ker = integer_kernel(&stacked);
    let rel = ker.select_rows(&(0..z).collect::<Vec<_>>());
    let (d, left, _) = snf(&rel);
    let mut keep = Vec::new();
    let mut group_moduli = Vec::new();
    for i in 0..z {
        let di = if i < d.cols() { d[(i, i)].clone() } else { BigInt::zero() };
        if di.is_zero() {
            return Err(Error::InvalidGrading("joint eigenvalues generate an infinite group".into()));
        }
        if di > BigInt::from(1) {
            keep.push((i, di.clone()));
            group_moduli.push(di.to_u64().ok_or_else(|| Error::ResourceCap("grading group too large".into()))?);
        }
    }
    let group = AbelianGroup::new(group_moduli);
    let order = group.moduli.iter().try_fold(1usize, |acc, &m| acc.checked_mul(m as usize));
    if order.is_none_or(|o| o > MAX_GROUP_ORDER) {
        return Err(Error::ResourceCap(format!("grading group has order above {}", MAX_GROUP_ORDER)));
    }
    let elements: Vec<usize> = (0..z)
        .map(|j| {
            let coords: Vec<u64> = keep
                .iter()
                .map(|(i, di)| left[(*i, j)].mod_floor(di).to_u64().expect("reduced mod a u64"))
                .collect();
            group.index(&coords)
        })
        .collect();
    let grid = group.to_grid();
    let mut comps = vec![IntegerLattice::zero(n); grid.len()];
    for (space, &g) in js.spaces.iter().zip(&elements) {
        comps[g] = space.clone();
    }
    let grading = GridGrading::new(r.clone(), grid, comps)?;
    Ok(UniversalAbelian { grading, group, moduli, labels: js.labels, elements })
}
