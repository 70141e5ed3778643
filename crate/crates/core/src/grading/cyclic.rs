// SPDX-License-Identifier: MIT OR Apache-2.0

use std::collections::HashMap;

use super::eigen::{joint_eigenspaces, EigenOperator};
use super::graded::GridGrading;
use super::grid::Grid;
use crate::algebra::{spectrum, tensor_cyclotomic, Base, CyclotomicTensor, SpectrumDecomposition, StructureAlgebra};
use crate::error::{Error, Result};
use crate::groupoid::{GroupAction, Groupoid, Mor, WreathElement};
use crate::linalg::{IntegerLattice, RationalMatrix};
use crate::poly::{field_isomorphisms, unit_group, FieldElement, FieldHom, Polynomial};
use crate::xe::{prime_power, xe, XeProblem};

/// The groupoid of `Q(ζ_e)`-isomorphisms between the factors of
/// `E' = E ⊗ Q(ζ_e)`, with `(Z/eZ)*` acting through `τ_a`.
#[derive(Clone, Debug)]
pub struct SpectrumGroupoid {
    pub tensor: CyclotomicTensor,
    pub spectrum: SpectrumDecomposition,
    /// Field isomorphism of each morphism handle.
    pub isos: Vec<FieldHom>,
    pub groupoid: Groupoid,
    pub action: GroupAction,
}

/// Builds the spectrum groupoid of `E ⊗ Q(ζ_e)` for a reduced `E`.
pub fn spectrum_groupoid(e_alg: &StructureAlgebra, e: u64) -> Result<SpectrumGroupoid> {
    let tensor = tensor_cyclotomic(&e_alg.to_rational(), e);
    let spec = spectrum(&tensor.algebra)?;
    let m = spec.len();
    let zeta = tensor.zeta();
    let zs: Vec<FieldElement> = spec.factors.iter().map(|f| f.projection.mul_vec(&zeta)).collect();

    // Q-isomorphisms between factors, computed once per pair of defining
    // polynomials
    let polys: Vec<&Polynomial> = spec.factors.iter().map(|f| f.field.defining_poly()).collect();
    let mut cache: HashMap<(usize, usize), Vec<FieldHom>> = HashMap::new();
    let first = |i: usize| polys.iter().position(|p| *p == polys[i]).expect("present");
    let mut isos = Vec::new();
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    let mut handle: HashMap<(usize, usize, FieldElement), Mor> = HashMap::new();
    for k in 0..m {
        for l in 0..m {
            let key = (first(k), first(l));
            let all = cache
                .entry(key)
                .or_insert_with(|| field_isomorphisms(&spec.factors[key.0].field, &spec.factors[key.1].field));
            for f in all.iter() {
                if f.apply(&zs[k]) != zs[l] {
                    continue;
                }
                handle.insert((k, l, f.image_of_generator.clone()), isos.len());
                isos.push(f.clone());
                src.push(k);
                tgt.push(l);
            }
        }
    }
    let groupoid = Groupoid::new(m, src.clone(), tgt.clone(), |f, g| {
        let h = isos[f].compose(&isos[g]);
        handle[&(src[g], tgt[f], h.image_of_generator)]
    })?;

    let elements = unit_group(e);
    let mut perms = Vec::with_capacity(elements.len());
    for &a in &elements {
        let tau = tensor.tau(a);
        // τ_a restricted to each factor, as an isomorphism onto its image
        let mut obj = vec![usize::MAX; m];
        let mut trans = Vec::with_capacity(m);
        for (k, fk) in spec.factors.iter().enumerate() {
            let img = tau.mul_vec(&fk.idempotent);
            let l = spec
                .factors
                .iter()
                .position(|f| f.idempotent == img)
                .ok_or_else(|| Error::InvalidAction("τ_a does not permute the primitive idempotents".into()))?;
            obj[k] = l;
            let g = spec.factors[l].projection.mul_vec(&tau.mul_vec(&fk.generator));
            trans.push(FieldHom::new(fk.field.clone(), spec.factors[l].field.clone(), g)?);
        }
        let inv: Vec<FieldHom> = trans.iter().map(|t| t.inverse()).collect::<Result<_>>()?;
        let mut perm = Vec::with_capacity(isos.len());
        for (f, iso) in isos.iter().enumerate() {
            let (k, l) = (src[f], tgt[f]);
            let h = trans[l].compose(&iso.compose(&inv[k]));
            let key = (obj[k], obj[l], h.image_of_generator);
            let mapped = handle
                .get(&key)
                .copied()
                .ok_or_else(|| Error::InvalidAction("conjugate by τ_a is not Q(ζ)-linear".into()))?;
            perm.push(mapped);
        }
        perms.push(perm);
    }
    let action = GroupAction::new(&groupoid, e, elements, perms)?;
    Ok(SpectrumGroupoid { tensor, spectrum: spec, isos, groupoid, action })
}

impl SpectrumGroupoid {
    pub fn problem(&self) -> Result<XeProblem> {
        XeProblem::new(self.groupoid.clone(), self.tensor.e, self.action.clone())
    }

    /// Matrix of the automorphism of `E'` induced by a wreath element.
    pub fn automorphism(&self, s: &WreathElement) -> RationalMatrix {
        let rank = self.tensor.algebra.rank();
        let mut out = RationalMatrix::zeros(rank, rank);
        for (k, fk) in self.spectrum.factors.iter().enumerate() {
            let l = s.perm[k];
            let part = self.spectrum.factors[l]
                .section
                .mul(&self.isos[s.mor[k]].matrix())
                .mul(&fk.projection);
            out = out.add(&part);
        }
        out
    }
}

/// `X_e(E)` as matrices on `E ⊗ Q(ζ_e)`, in the order returned by the
/// solver.
pub fn xe_automorphisms(e_alg: &StructureAlgebra, e: u64) -> Result<(CyclotomicTensor, Vec<RationalMatrix>)> {
    let sg = spectrum_groupoid(e_alg, e)?;
    let p = sg.problem()?;
    let mats = xe(&p).iter().map(|s| sg.automorphism(s)).collect();
    Ok((sg.tensor, mats))
}

/// `k' = min(k, ⌊log_p n⌋)`.
pub fn effective_exponent(p: u64, k: u32, n: usize) -> u32 {
    let mut kk = 0;
    let mut q: u64 = 1;
    while kk < k && q.saturating_mul(p) <= n as u64 {
        q *= p;
        kk += 1;
    }
    kk
}

/// All `Z/p^kZ`-gradings of the reduced `Q`-algebra `E`, indexed by
/// exponents mod `p^k`, sorted by component bases.
pub fn cyclic_gradings(e_alg: &StructureAlgebra, p: u64, k: u32) -> Result<Vec<GridGrading>> {
    cyclic_gradings_impl(&e_alg.to_rational(), p, k, false)
}

/// All `Z/p^kZ`-gradings of a reduced order: the cyclic gradings of `R ⊗ Q`
/// whose automorphism restricts to `R ⊗ Z[ζ]` and is diagonalizable there.
pub fn cyclic_gradings_of_order(r: &StructureAlgebra, p: u64, k: u32) -> Result<Vec<GridGrading>> {
    if r.base() != Base::Z || !r.is_integral() {
        return Err(Error::NotAnOrder);
    }
    cyclic_gradings_impl(r, p, k, true)
}

fn cyclic_gradings_impl(alg: &StructureAlgebra, p: u64, k: u32, integral: bool) -> Result<Vec<GridGrading>> {
    let q = p
        .checked_pow(k)
        .filter(|_| prime_power(p).is_some_and(|(_, j)| j == 1))
        .ok_or_else(|| Error::InvalidArgument(format!("{}^{} is not a prime power", p, k)))?;
    if !alg.is_reduced() {
        return Err(Error::NotReduced);
    }
    let n = alg.rank();
    let kk = effective_exponent(p, k, n);
    let grid = Grid::cyclic(q);
    if kk == 0 {
        let mut comps = vec![IntegerLattice::zero(n); q as usize];
        comps[0] = IntegerLattice::full(n);
        return Ok(vec![GridGrading::new(alg.clone(), grid, comps)?]);
    }
    let e = p.pow(kk);
    let step = q / e;
    let (tensor, mats) = xe_automorphisms(alg, e)?;
    let mut out = Vec::new();
    for m in mats.iter().filter(|m| !integral || m.is_integral()) {
        let js = match joint_eigenspaces(alg, &[EigenOperator { tensor: &tensor, matrix: m }]) {
            Ok(js) => js,
            // integral but not diagonalizable over Z[ζ]: no grading of the order
            Err(Error::NotADecomposition(_)) if integral => continue,
            Err(e) => return Err(e),
        };
        let mut comps = vec![IntegerLattice::zero(n); q as usize];
        for (z, s) in js.labels.iter().zip(js.spaces) {
            comps[(z[0] * step) as usize] = s;
        }
        out.push(GridGrading::new(alg.clone(), grid.clone(), comps)?);
    }
    out.sort_by_key(|g| g.canonical_key());
    Ok(out)
}

