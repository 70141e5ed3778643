// SPDX-License-Identifier: MIT OR Apache-2.0

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::structure::StructureAlgebra;
use crate::linalg::RationalMatrix;
use crate::poly::{cyclotomic_field, CyclotomicField};

/// `A ⊗ Z[ζ_e]` with basis `b_h ⊗ ζ^j` at index `h·φ(e) + j`.
#[derive(Clone, Debug)]
pub struct CyclotomicTensor {
    pub algebra: StructureAlgebra,
    pub base_rank: usize,
    pub e: u64,
    pub cyclotomic: CyclotomicField,
    phi: usize,
}

/// Builds `A' = A ⊗ Z[ζ_e]`.
pub fn tensor_cyclotomic(a: &StructureAlgebra, e: u64) -> CyclotomicTensor {
    let cyc = cyclotomic_field(e);
    let phi = cyc.field.degree();
    let n = a.rank();
    // ζ^s reduced, for s < 2φ
    let zpow: Vec<Vec<BigRational>> = (0..2 * phi as u64).map(|s| cyc.field.pow(&cyc.zeta, s)).collect();
    let rank = n * phi;
    let mut products = vec![Vec::new(); rank * rank];
    for h in 0..n {
        for i in 0..n {
            let hi = a.basis_product(h, i);
            if hi.is_empty() {
                continue;
            }
            for s in 0..phi {
                for t in 0..phi {
                    let z = &zpow[s + t];
                    let mut v: Vec<(usize, BigRational)> = Vec::new();
                    for (j, c) in hi {
                        for (r, zc) in z.iter().enumerate() {
                            if !zc.is_zero() {
                                v.push((j * phi + r, c * zc));
                            }
                        }
                    }
                    v.sort_by_key(|x| x.0);
                    products[(h * phi + s) * rank + i * phi + t] = v;
                }
            }
        }
    }
    let mut unit = vec![BigRational::zero(); rank];
    for (h, u) in a.unit().iter().enumerate() {
        unit[h * phi] = u.clone();
    }
    let algebra = StructureAlgebra::from_sparse(a.base(), rank, products, unit);
    CyclotomicTensor { algebra, base_rank: n, e, cyclotomic: cyc, phi }
}

impl CyclotomicTensor {
    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn embed(&self, x: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.algebra.rank()];
        for (h, c) in x.iter().enumerate() {
            out[h * self.phi] = c.clone();
        }
        out
    }

    pub fn retract(&self, x: &[BigRational]) -> Vec<BigRational> {
        (0..self.base_rank).map(|h| x[h * self.phi].clone()).collect()
    }

    /// Matrix of the embedding `A → A'`.
    pub fn embed_matrix(&self) -> RationalMatrix {
        let rank = self.algebra.rank();
        RationalMatrix::from_fn(rank, self.base_rank, |r, h| {
            if r == h * self.phi {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    /// `1 ⊗ ζ`.
    pub fn zeta(&self) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.algebra.rank()];
        for (h, u) in self.algebra_unit_base().iter().enumerate() {
            for (r, z) in self.cyclotomic.zeta.iter().enumerate() {
                v[h * self.phi + r] += u * z;
            }
        }
        v
    }

    fn algebra_unit_base(&self) -> Vec<BigRational> {
        self.retract(self.algebra.unit())
    }

    /// `x ⊗ ζ^j` for `x ∈ A`.
    pub fn tensor_with_zeta_power(&self, x: &[BigRational], j: u64) -> Vec<BigRational> {
        let z = self.cyclotomic.field.pow(&self.cyclotomic.zeta, j);
        let mut v = vec![BigRational::zero(); self.algebra.rank()];
        for (h, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (r, zc) in z.iter().enumerate() {
                v[h * self.phi + r] += c * zc;
            }
        }
        v
    }

    /// Matrix of `τ_a = id ⊗ (ζ ↦ ζ^a)`.
    pub fn tau(&self, a: u64) -> RationalMatrix {
        let h = self.cyclotomic.action(a).matrix();
        let blocks: Vec<RationalMatrix> = (0..self.base_rank).map(|_| h.clone()).collect();
        RationalMatrix::block_diag(&blocks)
    }
}
