// SPDX-License-Identifier: MIT OR Apache-2.0

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::grid::Grid;
use crate::algebra::{Base, StructureAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{lattice_sum, saturate, IntMatrix, IntegerLattice, RationalMatrix};

/// Grading of an algebra by a grid. Components are lattices in the
/// coordinates of the algebra; over `Q` a component stands for its rational
/// span and is stored saturated.
#[derive(Clone, Debug)]
pub struct GridGrading {
    pub algebra: StructureAlgebra,
    pub grid: Grid,
    pub components: Vec<IntegerLattice>,
}

impl GridGrading {
    /// Validated constructor.
    pub fn new(algebra: StructureAlgebra, grid: Grid, components: Vec<IntegerLattice>) -> Result<Self> {
        let g = Self::new_unchecked(algebra, grid, components);
        g.validate()?;
        Ok(g)
    }

    pub fn new_unchecked(algebra: StructureAlgebra, grid: Grid, components: Vec<IntegerLattice>) -> Self {
        let components = if algebra.base() == Base::Q {
            components.iter().map(saturate).collect()
        } else {
            components
        };
        GridGrading { algebra, grid, components }
    }

    /// Everything in the unit component.
    pub fn trivial(algebra: StructureAlgebra) -> Self {
        let n = algebra.rank();
        GridGrading { algebra, grid: Grid::trivial(), components: vec![IntegerLattice::full(n)] }
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    /// Indices with a nonzero component.
    pub fn support(&self) -> Vec<usize> {
        (0..self.grid.len()).filter(|&g| !self.components[g].is_zero()).collect()
    }

    pub fn nonzero_count(&self) -> usize {
        self.support().len()
    }

    pub fn component(&self, g: usize) -> &IntegerLattice {
        &self.components[g]
    }

    /// Columns: the bases of all components in grid order.
    pub fn stacked_basis(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self.components.iter().flat_map(|c| c.basis_vectors()).collect();
        IntMatrix::from_columns(self.rank(), &cols)
    }

    /// Checks that the components form a decomposition: full total rank and
    /// a determinant that is a unit of the base ring.
    pub fn check_decomposition(&self) -> Result<()> {
        let n = self.rank();
        if self.components.len() != self.grid.len() {
            return Err(Error::InvalidGrading(format!(
                "{} components for a grid of size {}",
                self.components.len(),
                self.grid.len()
            )));
        }
        if let Some(c) = self.components.iter().find(|c| c.ambient_rank() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: c.ambient_rank() });
        }
        let total: usize = self.components.iter().map(|c| c.rank()).sum();
        if total != n {
            return Err(Error::NotADecomposition(format!("component ranks sum to {} instead of {}", total, n)));
        }
        let d = self.stacked_basis().det()?;
        let ok = match self.algebra.base() {
            Base::Z => d.abs().is_one(),
            Base::Q => !d.is_zero(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::NotADecomposition(format!("direct sum map has determinant {}", d)))
        }
    }

    /// Splits `x` into its homogeneous parts, one vector per grid element.
    /// Requires a valid decomposition.
    pub fn decompose(&self, x: &[BigRational]) -> Vec<Vec<BigRational>> {
        let p = self.stacked_basis().to_rational();
        let c = p.solve(x).expect("components span the algebra");
        let mut out = Vec::with_capacity(self.grid.len());
        let mut off = 0;
        for comp in &self.components {
            let k = comp.rank();
            let b = comp.basis().to_rational();
            out.push(b.mul_vec(&c[off..off + k]));
            off += k;
        }
        out
    }

    /// Grid indices on which `x` has a nonzero part.
    pub fn homogeneous_support(&self, x: &[BigRational]) -> Vec<usize> {
        self.decompose(x)
            .iter()
            .enumerate()
            .filter(|(_, v)| v.iter().any(|c| !c.is_zero()))
            .map(|(g, _)| g)
            .collect()
    }

    fn rational_basis(&self, g: usize) -> Vec<Vec<BigRational>> {
        self.components[g]
            .basis_vectors()
            .into_iter()
            .map(|v| v.into_iter().map(BigRational::from_integer).collect())
            .collect()
    }

    /// Products of basis vectors of `R_g` and `R_h`.
    pub fn basis_products(&self, g: usize, h: usize) -> Vec<Vec<BigRational>> {
        let a = self.rational_basis(g);
        let b = self.rational_basis(h);
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in &a {
            for y in &b {
                out.push(self.algebra.mul(x, y));
            }
        }
        out
    }

    /// Whether `R_g·R_h ≠ 0`.
    pub fn product_nonzero(&self, g: usize, h: usize) -> bool {
        self.basis_products(g, h).iter().any(|v| v.iter().any(|c| !c.is_zero()))
    }

    /// Decomposition, `1 ∈ R_1`, and `R_g·R_h ⊆ R_{g*h}` whenever nonzero.
    pub fn validate(&self) -> Result<()> {
        self.check_decomposition()?;
        let unit = self.grid.unit();
        let one = self.algebra.unit().to_vec();
        if one.is_empty() {
            return Err(Error::NoUnit);
        }
        let parts = self.homogeneous_support(&one);
        if parts != vec![unit] {
            return Err(Error::InvalidGrading(format!("1 is not in the component of {}", self.grid.label(unit))));
        }
        let p = self.stacked_basis().to_rational();
        let inv = p.inverse().expect("checked above");
        let offsets = self.offsets();
        let support = self.support();
        for &g in &support {
            for &h in &support {
                for v in self.basis_products(g, h) {
                    if v.iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    let gh = self.grid.mul(g, h).ok_or_else(|| {
                        Error::InvalidGrading(format!(
                            "R_{} · R_{} ≠ 0 but the product is undefined",
                            self.grid.label(g),
                            self.grid.label(h)
                        ))
                    })?;
                    let c = inv.mul_vec(&v);
                    let outside = c.iter().enumerate().any(|(i, x)| {
                        !x.is_zero() && !(offsets[gh] <= i && i < offsets[gh] + self.components[gh].rank())
                    });
                    if outside {
                        return Err(Error::InvalidGrading(format!(
                            "R_{} · R_{} is not contained in R_{}",
                            self.grid.label(g),
                            self.grid.label(h),
                            self.grid.label(gh)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.components
            .iter()
            .map(|c| {
                let o = acc;
                acc += c.rank();
                o
            })
            .collect()
    }

    /// The grid is generated by the support.
    pub fn is_efficient(&self) -> bool {
        self.grid.closure(&self.support()).len() == self.grid.len()
    }

    /// `R_g·R_h ≠ 0` for every defined product with `{g, h} ≠ {1}`.
    pub fn is_loose(&self) -> bool {
        self.loose_violation().is_none()
    }

    /// First pair `(g, h)` breaking looseness.
    pub fn loose_violation(&self) -> Option<(usize, usize)> {
        let n = self.grid.len();
        let unit = self.grid.unit();
        for g in 0..n {
            for h in 0..n {
                if g == unit && h == unit {
                    continue;
                }
                if self.grid.mul(g, h).is_some() && !self.product_nonzero(g, h) {
                    return Some((g, h));
                }
            }
        }
        None
    }

    /// `f_*` along a morphism of grids `f` into `target`.
    pub fn pushforward(&self, f: &[usize], target: &Grid) -> Result<GridGrading> {
        self.grid.check_morphism(f, target)?;
        let n = self.rank();
        let mut comps = vec![IntegerLattice::zero(n); target.len()];
        for (s, c) in self.components.iter().enumerate() {
            comps[f[s]] = lattice_sum(&comps[f[s]], c)?;
        }
        GridGrading::new(self.algebra.clone(), target.clone(), comps)
    }

    /// Sort key: component bases in grid order.
    pub fn canonical_key(&self) -> Vec<Vec<Vec<BigInt>>> {
        self.components.iter().map(|c| c.basis_vectors()).collect()
    }

    /// Rational column bases of every component.
    pub fn rational_components(&self) -> Vec<RationalMatrix> {
        self.components.iter().map(|c| c.to_rational()).collect()
    }
}
