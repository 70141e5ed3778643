// SPDX-License-Identifier: MIT OR Apache-2.0

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Base, CyclotomicTensor, StructureAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{saturate_rational, IntMatrix, IntegerLattice, RationalMatrix};

/// One automorphism `σ` of `R' = R ⊗ Z[ζ_e]`, given by its matrix in the
/// basis of `tensor.algebra`.
#[derive(Clone, Copy)]
pub struct EigenOperator<'a> {
    pub tensor: &'a CyclotomicTensor,
    pub matrix: &'a RationalMatrix,
}

/// Joint eigenspaces: `labels[i][j]` is the exponent of `ζ_{e_j}` for
/// operator `j` on `spaces[i]`. Sorted by label.
#[derive(Clone, Debug)]
pub struct JointEigenspaces {
    pub labels: Vec<Vec<u64>>,
    pub spaces: Vec<IntegerLattice>,
}

/// `K_z = {x ∈ R | σ_i(x ⊗ 1) = x ⊗ ζ^{z_i} for all i}` for every `z` with
/// `K_z ≠ 0`. Over `Z` the spaces are `R ∩ K_z`; the family must be a
/// decomposition of `R`.
pub fn joint_eigenspaces(r: &StructureAlgebra, ops: &[EigenOperator<'_>]) -> Result<JointEigenspaces> {
    let n = r.rank();
    let mut current: Vec<(Vec<u64>, RationalMatrix)> = vec![(Vec::new(), RationalMatrix::identity(n))];
    for op in ops {
        let t = op.tensor;
        if t.base_rank != n || op.matrix.rows() != t.algebra.rank() || !op.matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: t.algebra.rank(), found: op.matrix.rows() });
        }
        let eps = t.embed_matrix();
        let sig_eps = op.matrix.mul(&eps);
        let unit = r.unit().to_vec();
        let shifts: Vec<RationalMatrix> = (0..t.e)
            .map(|j| t.algebra.mul_matrix(&t.tensor_with_zeta_power(&unit, j)).mul(&eps))
            .collect();
        let mut next = Vec::new();
        for (z, v) in &current {
            let sv = sig_eps.mul(v);
            for (j, a) in shifts.iter().enumerate() {
                let d = sv.sub(&a.mul(v));
                let ker = d.kernel_basis();
                if ker.cols() == 0 {
                    continue;
                }
                let mut label = z.clone();
                label.push(j as u64);
                next.push((label, v.mul(&ker)));
            }
        }
        current = next;
    }
    let dim: usize = current.iter().map(|(_, v)| v.cols()).sum();
    if dim != n {
        return Err(Error::NotADecomposition(format!("eigenspaces span dimension {} of {}", dim, n)));
    }
    current.sort_by(|a, b| a.0.cmp(&b.0));
    let spaces: Vec<IntegerLattice> = current.iter().map(|(_, v)| saturate_rational(v)).collect();
    let cols: Vec<Vec<_>> = spaces.iter().flat_map(|s| s.basis_vectors()).collect();
    let d = IntMatrix::from_columns(n, &cols).det()?;
    let unit_det = match r.base() {
        Base::Z => d.abs().is_one(),
        Base::Q => !d.is_zero(),
    };
    if !unit_det {
        return Err(Error::NotADecomposition(format!("eigenspace lattices have index {} in R", d.abs())));
    }
    Ok(JointEigenspaces { labels: current.into_iter().map(|(z, _)| z).collect(), spaces })
}

/// Whether `σ` is diagonalizable on `R ⊗ Z[ζ_e]`, that is, whether its
/// eigenspaces meet `R` in a decomposition of `R`. For an order this is
/// stronger than `σ` having an integral matrix.
pub fn diagonalizable_on(r: &StructureAlgebra, op: EigenOperator<'_>) -> Result<bool> {
    match joint_eigenspaces(r, &[op]) {
        Ok(_) => Ok(true),
        Err(Error::NotADecomposition(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// The automorphism `x_j ⊗ u ↦ x_j ⊗ ζ^j·u` of `R'` attached to a
/// decomposition of `R` indexed by exponents mod `e`.
pub fn cyclic_automorphism(tensor: &CyclotomicTensor, parts: &[(u64, RationalMatrix)]) -> Result<RationalMatrix> {
    let n = tensor.base_rank;
    let phi = tensor.phi();
    let cols: Vec<Vec<BigRational>> = parts.iter().flat_map(|(_, b)| b.columns()).collect();
    let basis = RationalMatrix::from_columns(n, &cols);
    let inv = basis
        .inverse()
        .ok_or_else(|| Error::NotADecomposition("parts do not span the algebra".into()))?;
    let rank = tensor.algebra.rank();
    let mut image = Vec::with_capacity(rank);
    for h in 0..n {
        for s in 0..phi {
            // b_h ⊗ ζ^s split into homogeneous parts
            let mut x = vec![BigRational::zero(); n];
            x[h] = BigRational::one();
            let c = inv.mul_vec(&x);
            let mut acc = vec![BigRational::zero(); rank];
            let mut off = 0;
            for (j, b) in parts {
                let k = b.cols();
                let part = b.mul_vec(&c[off..off + k]);
                off += k;
                let v = tensor.tensor_with_zeta_power(&part, j + s as u64);
                for (a, y) in acc.iter_mut().zip(v) {
                    *a += y;
                }
            }
            image.push(acc);
        }
    }
    Ok(RationalMatrix::from_columns(rank, &image))
}
