// SPDX-License-Identifier: MIT OR Apache-2.0

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::poly::{krylov_minimal_polynomial, Polynomial};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Base {
    Z,
    Q,
}

/// Commutative unital algebra of finite rank given by structure constants
/// `e_h·e_i = Σ_j a_hij e_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructureAlgebra {
    base: Base,
    rank: usize,
    /// Sparse products: entry `h·n + i` lists the nonzero `(j, a_hij)`.
    products: Vec<Vec<(usize, BigRational)>>,
    unit: Vec<BigRational>,
    pub name: Option<String>,
}

impl StructureAlgebra {
    /// Validates the table and recovers the unit.
    pub fn new(base: Base, rank: usize, table: &[Vec<Vec<BigRational>>]) -> Result<Self> {
        let mut alg = Self::from_table_unchecked(base, rank, table)?;
        alg.unit = alg.validate()?;
        Ok(alg)
    }

    /// Builds from a dense table `table[h][i][j]` without validation; the
    /// unit is still solved for.
    pub fn from_table_unchecked(base: Base, rank: usize, table: &[Vec<Vec<BigRational>>]) -> Result<Self> {
        if table.len() != rank {
            return Err(Error::DimensionMismatch { expected: rank, found: table.len() });
        }
        let mut products = Vec::with_capacity(rank * rank);
        for row in table {
            if row.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: row.len() });
            }
            for v in row {
                if v.len() != rank {
                    return Err(Error::DimensionMismatch { expected: rank, found: v.len() });
                }
                products.push(v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j, c.clone())).collect());
            }
        }
        let mut alg = StructureAlgebra { base, rank, products, unit: Vec::new(), name: None };
        if base == Base::Z && !alg.is_integral() {
            return Err(Error::NotAnOrder);
        }
        alg.unit = alg.solve_unit().unwrap_or_default();
        Ok(alg)
    }

    /// Trusted constructor from sparse products and a known unit.
    pub(crate) fn from_sparse(
        base: Base,
        rank: usize,
        products: Vec<Vec<(usize, BigRational)>>,
        unit: Vec<BigRational>,
    ) -> Self {
        StructureAlgebra { base, rank, products, unit, name: None }
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn unit(&self) -> &[BigRational] {
        &self.unit
    }

    /// `a_hij`.
    pub fn constant(&self, h: usize, i: usize, j: usize) -> BigRational {
        self.products[h * self.rank + i]
            .iter()
            .find(|(k, _)| *k == j)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Dense table `t[h][i][j] = a_hij`.
    pub fn table(&self) -> Vec<Vec<Vec<BigRational>>> {
        let n = self.rank;
        (0..n)
            .map(|h| {
                (0..n)
                    .map(|i| {
                        let mut v = vec![BigRational::zero(); n];
                        for (j, c) in &self.products[h * n + i] {
                            v[*j] = c.clone();
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }

    pub fn basis_product(&self, h: usize, i: usize) -> &[(usize, BigRational)] {
        &self.products[h * self.rank + i]
    }

    pub fn is_integral(&self) -> bool {
        self.products.iter().all(|v| v.iter().all(|(_, c)| c.is_integer()))
    }

    pub fn basis_vector(&self, i: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.rank];
        v[i] = BigRational::one();
        v
    }

    pub fn zero(&self) -> Vec<BigRational> {
        vec![BigRational::zero(); self.rank]
    }

    pub fn mul(&self, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        let n = self.rank;
        let mut out = vec![BigRational::zero(); n];
        for (h, xh) in x.iter().enumerate() {
            if xh.is_zero() {
                continue;
            }
            for (i, yi) in y.iter().enumerate() {
                if yi.is_zero() {
                    continue;
                }
                let c = xh * yi;
                for (j, a) in &self.products[h * n + i] {
                    out[*j] += &c * a;
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ x·y`.
    pub fn mul_matrix(&self, x: &[BigRational]) -> RationalMatrix {
        let n = self.rank;
        let mut m = RationalMatrix::zeros(n, n);
        for (h, xh) in x.iter().enumerate() {
            if xh.is_zero() {
                continue;
            }
            for i in 0..n {
                for (j, a) in &self.products[h * n + i] {
                    m[(*j, i)] += xh * a;
                }
            }
        }
        m
    }

    fn solve_unit(&self) -> Option<Vec<BigRational>> {
        // Σ_h u_h a_hij = δ_ij for all i, j
        let n = self.rank;
        let mut m = RationalMatrix::zeros(n * n, n);
        let mut rhs = vec![BigRational::zero(); n * n];
        for i in 0..n {
            rhs[i * n + i] = BigRational::one();
            for h in 0..n {
                for (j, a) in &self.products[h * n + i] {
                    m[(i * n + j, h)] = a.clone();
                }
            }
        }
        m.solve(&rhs)
    }

    /// Checks commutativity, associativity and the unit; returns the unit.
    pub fn validate(&self) -> Result<Vec<BigRational>> {
        let n = self.rank;
        for h in 0..n {
            for i in h + 1..n {
                if self.products[h * n + i] != self.products[i * n + h] {
                    return Err(Error::NotCommutative { h, i });
                }
            }
        }
        for h in 0..n {
            for i in 0..n {
                let hi = &self.products[h * n + i];
                for j in 0..n {
                    // (e_h e_i) e_j versus e_h (e_i e_j)
                    let mut left = vec![BigRational::zero(); n];
                    for (k, a) in hi {
                        for (l, b) in &self.products[k * n + j] {
                            left[*l] += a * b;
                        }
                    }
                    let mut right = vec![BigRational::zero(); n];
                    for (k, a) in &self.products[i * n + j] {
                        for (l, b) in &self.products[h * n + k] {
                            right[*l] += a * b;
                        }
                    }
                    if left != right {
                        return Err(Error::NotAssociative { h, i, j });
                    }
                }
            }
        }
        let unit = self.solve_unit().ok_or(Error::NoUnit)?;
        if self.base == Base::Z && !unit.iter().all(|c| c.is_integer()) {
            return Err(Error::NoUnit);
        }
        Ok(unit)
    }

    /// Trace of multiplication by each basis vector.
    fn basis_traces(&self) -> Vec<BigRational> {
        let n = self.rank;
        (0..n)
            .map(|h| {
                (0..n)
                    .flat_map(|i| self.products[h * n + i].iter().filter(move |(j, _)| *j == i).map(|(_, c)| c.clone()))
                    .fold(BigRational::zero(), |s, c| s + c)
            })
            .collect()
    }

    /// Gram matrix of the trace form `Tr(x·y)` on the basis.
    pub fn trace_form(&self) -> RationalMatrix {
        let n = self.rank;
        let t = self.basis_traces();
        RationalMatrix::from_fn(n, n, |i, j| {
            self.products[i * n + j].iter().fold(BigRational::zero(), |s, (k, c)| s + c * &t[*k])
        })
    }

    /// Whether the algebra has no nonzero nilpotents (nondegenerate trace
    /// form; valid in characteristic zero).
    pub fn is_reduced(&self) -> bool {
        self.trace_form().rank() == self.rank
    }

    pub fn minimal_polynomial(&self, x: &[BigRational]) -> Polynomial {
        krylov_minimal_polynomial(&self.unit, |v| self.mul(v, x))
    }

    /// Same table viewed over Q.
    pub fn to_rational(&self) -> StructureAlgebra {
        StructureAlgebra { base: Base::Q, ..self.clone() }
    }

    /// Structure constants of the subalgebra or quotient spanned by the
    /// columns of `basis`, which must span a subring (given in ambient
    /// coordinates). `unit` is the subring's unit in ambient coordinates.
    pub fn restrict_to_basis(
        &self,
        basis: &RationalMatrix,
        unit: &[BigRational],
        base: Base,
    ) -> Result<StructureAlgebra> {
        let r = basis.cols();
        let cols = basis.columns();
        let mut products = Vec::with_capacity(r * r);
        let mut rhs = Vec::with_capacity(r * r);
        for a in 0..r {
            for b in 0..r {
                rhs.push(self.mul(&cols[a], &cols[b]));
            }
        }
        let rhs_m = RationalMatrix::from_columns(self.rank, &rhs);
        let coords = basis
            .solve_matrix(&rhs_m)
            .ok_or_else(|| Error::InvalidGrading("basis does not span a subring".into()))?;
        for c in 0..r * r {
            products.push((0..r).filter(|&j| !coords[(j, c)].is_zero()).map(|j| (j, coords[(j, c)].clone())).collect());
        }
        let u = basis.solve(unit).ok_or(Error::NoUnit)?;
        let alg = StructureAlgebra::from_sparse(base, r, products, u);
        if base == Base::Z && !alg.is_integral() {
            return Err(Error::NotAnOrder);
        }
        Ok(alg)
    }
}

pub fn int_vec(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}
