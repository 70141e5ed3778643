// SPDX-License-Identifier: MIT OR Apache-2.0

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::structure::{Base, StructureAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{IntegerLattice, RationalMatrix};
use crate::poly::{factor_rational, krylov_minimal_polynomial, FieldElement, NumberField, Polynomial};

/// One factor `E/m ≅ K` of a reduced algebra.
#[derive(Clone, Debug)]
pub struct SpectrumFactor {
    pub field: NumberField,
    /// Primitive idempotent `ε` with `εE ≅ K`.
    pub idempotent: Vec<BigRational>,
    /// Element of `εE` corresponding to the class of `X` in `field`.
    pub generator: Vec<BigRational>,
    /// `E → K` in power-basis coordinates, `d × n`.
    pub projection: RationalMatrix,
    /// `K → E`, the inverse of the projection restricted to `εE`, `n × d`.
    pub section: RationalMatrix,
}

/// `E ≅ ∏ K_i` with factors ordered by degree, then defining polynomial.
#[derive(Clone, Debug)]
pub struct SpectrumDecomposition {
    pub factors: Vec<SpectrumFactor>,
    /// Stacked projections, an invertible `n × n` matrix.
    pub iso: RationalMatrix,
}

impl SpectrumDecomposition {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn projections(&self) -> Vec<&RationalMatrix> {
        self.factors.iter().map(|f| &f.projection).collect()
    }

    pub fn primitive_idempotents(&self) -> Vec<Vec<BigRational>> {
        self.factors.iter().map(|f| f.idempotent.clone()).collect()
    }

    /// Image of `x` in each factor.
    pub fn apply(&self, x: &[BigRational]) -> Vec<FieldElement> {
        self.factors.iter().map(|f| f.projection.mul_vec(x)).collect()
    }

    /// Preimage of a tuple of field elements.
    pub fn lift(&self, parts: &[FieldElement]) -> Vec<BigRational> {
        let n = self.iso.rows();
        let mut out = vec![BigRational::zero(); n];
        for (f, p) in self.factors.iter().zip(parts) {
            for (o, v) in out.iter_mut().zip(f.section.mul_vec(p)) {
                *o += v;
            }
        }
        out
    }

    /// Offsets of each factor's coordinates within the stacked iso.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.factors
            .iter()
            .map(|f| {
                let o = acc;
                acc += f.field.degree();
                o
            })
            .collect()
    }
}

/// Decomposes a reduced algebra into number fields.
pub fn spectrum(e: &StructureAlgebra) -> Result<SpectrumDecomposition> {
    if !e.is_reduced() {
        return Err(Error::NotReduced);
    }
    let mut factors = Vec::new();
    split(e, e.unit().to_vec(), &mut factors)?;
    factors.sort_by(|a, b| {
        a.field
            .degree()
            .cmp(&b.field.degree())
            .then_with(|| a.field.defining_poly().canonical_cmp(b.field.defining_poly()))
            .then_with(|| a.idempotent.cmp(&b.idempotent))
    });
    let projections: Vec<RationalMatrix> = factors.iter().map(|f| f.projection.clone()).collect();
    let iso = projections.iter().skip(1).fold(projections[0].clone(), |acc, p| acc.vcat(p));
    Ok(SpectrumDecomposition { factors, iso })
}

fn eval_at(e: &StructureAlgebra, p: &Polynomial, one: &[BigRational], c: &[BigRational]) -> Vec<BigRational> {
    let mut acc = vec![BigRational::zero(); e.rank()];
    for coef in p.coeffs().iter().rev() {
        acc = e.mul(&acc, c);
        for (a, o) in acc.iter_mut().zip(one) {
            *a += coef * o;
        }
    }
    acc
}

/// Candidate elements `b_i`, then `b_i + b_j`, then `b_i + k·b_j`.
fn candidates(n: usize) -> impl Iterator<Item = Vec<(usize, i64)>> {
    let singles = (0..n).map(|i| vec![(i, 1)]);
    let pairs = (0..n).flat_map(move |i| (i + 1..n).map(move |j| vec![(i, 1), (j, 1)]));
    let weighted = (2..).flat_map(move |k: i64| {
        (0..n).flat_map(move |i| {
            (0..n).filter(move |&j| j != i).flat_map(move |j| [vec![(i, 1), (j, k)], vec![(i, 1), (j, -k)]])
        })
    });
    singles.chain(pairs).chain(weighted)
}

fn split(e: &StructureAlgebra, eps: Vec<BigRational>, out: &mut Vec<SpectrumFactor>) -> Result<()> {
    let le = e.mul_matrix(&eps);
    let dim = le.rank();
    let n = e.rank();
    if dim == 1 {
        let zero = vec![BigRational::zero(); n];
        out.push(make_factor(e, eps, &zero, &Polynomial::x(), &le)?);
        return Ok(());
    }
    for cand in candidates(n) {
        let mut x = vec![BigRational::zero(); n];
        for (i, k) in cand {
            x[i] += BigRational::from_integer(BigInt::from(k));
        }
        let c = e.mul(&eps, &x);
        let m = krylov_minimal_polynomial(&eps, |v| e.mul(v, &c));
        if !m.is_squarefree() {
            return Err(Error::NotReduced);
        }
        let fs = factor_rational(&m)?;
        if fs.len() > 1 {
            for (g, _) in &fs {
                // CRT idempotent: ≡ 1 mod g, ≡ 0 mod the other factors
                let cof = m.exact_div(g);
                let (_, s, _) = cof.ext_gcd(g);
                let u = s.mul(&cof).rem(&m);
                let part = eval_at(e, &u, &eps, &c);
                split(e, part, out)?;
            }
            return Ok(());
        }
        if m.deg() == dim {
            out.push(make_factor(e, eps, &c, &m, &le)?);
            return Ok(());
        }
    }
    unreachable!("a reduced algebra has a primitive element in each factor")
}

fn make_factor(
    e: &StructureAlgebra,
    eps: Vec<BigRational>,
    c: &[BigRational],
    m: &Polynomial,
    le: &RationalMatrix,
) -> Result<SpectrumFactor> {
    let (field, s) = NumberField::from_irreducible(m)?;
    let gamma: Vec<BigRational> = c.iter().map(|x| x * BigRational::from_integer(s.clone())).collect();
    let d = field.degree();
    let mut powers = Vec::with_capacity(d);
    let mut cur = eps.clone();
    for k in 0..d {
        if k > 0 {
            cur = e.mul(&cur, &gamma);
        }
        powers.push(cur.clone());
    }
    let section = RationalMatrix::from_columns(e.rank(), &powers);
    let projection = section.solve_matrix(le).expect("εE is spanned by powers of the generator");
    Ok(SpectrumFactor { field, idempotent: eps, generator: gamma, projection, section })
}

/// `E_P = ∏_{i∈P} K_i` realized as `e_P·R`.
#[derive(Clone, Debug)]
pub struct SubsetProjection {
    pub subset: Vec<usize>,
    /// Structure constants in the basis below (integral when `R` is an order).
    pub algebra: StructureAlgebra,
    /// Columns: the basis of `R_P = e_P·R` in coordinates of `E`.
    pub basis: RationalMatrix,
    /// `E → E_P`, `x ↦` coordinates of `e_P·x`.
    pub projection: RationalMatrix,
    pub idempotent: Vec<BigRational>,
}

/// Image of the order `r` (basis = standard basis of its own table) in the
/// factors indexed by `subset`.
pub fn subset_projection(
    r: &StructureAlgebra,
    spec: &SpectrumDecomposition,
    subset: &[usize],
) -> Result<SubsetProjection> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let n = r.rank();
    let mut ep = vec![BigRational::zero(); n];
    for &i in subset {
        for (a, b) in ep.iter_mut().zip(&spec.factors[i].idempotent) {
            *a += b;
        }
    }
    let le = r.mul_matrix(&ep);
    let (den, ints) = le.clear_denominators();
    let lat = IntegerLattice::from_generators(&ints);
    let dr = BigRational::from_integer(den);
    let basis = lat.to_rational().map(|x| x / &dr);
    let projection = basis.solve_matrix(&le).expect("image lies in its own span");
    let base = if r.base() == Base::Z && r.is_integral() { Base::Z } else { Base::Q };
    let algebra = r.restrict_to_basis(&basis, &ep, base)?;
    Ok(SubsetProjection { subset: subset.to_vec(), algebra, basis, projection, idempotent: ep })
}

pub fn unit_vector(n: usize, i: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); n];
    v[i] = BigRational::one();
    v
}
