// SPDX-License-Identifier: MIT OR Apache-2.0

//! Restricting decompositions and gradings to subgroups and suborders, and
//! the universal grid grading built from them.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{spectrum, subset_projection, Base, StructureAlgebra, SubsetProjection};
use crate::error::{Error, Result};
use crate::grading::{universal_abelian, Grid, GridGrading, GroupPresentation, UniversalAbelian};
use crate::linalg::{lattice_intersect, lattice_sum, saturate, saturate_rational, IntMatrix, IntegerLattice, RationalMatrix};
use crate::xe::set_partitions;

/// Largest spectrum accepted by [`universal_grid`].
pub const MAX_SPECTRUM: usize = 7;

/// A decomposition `{A_i}` of `A = Z^n / M·Z^k` together with a subgroup
/// `B ⊆ A`. All groups are given by generator columns in `Z^n`.
#[derive(Clone, Debug)]
pub struct DecompositionProblem {
    pub relations: IntMatrix,
    pub components: Vec<IntMatrix>,
    pub subgroup: IntMatrix,
    lattices: Vec<IntegerLattice>,
    sub: IntegerLattice,
    rel: IntegerLattice,
}

impl DecompositionProblem {
    /// Checks that the components form a decomposition of `A`.
    pub fn new(relations: IntMatrix, components: Vec<IntMatrix>, subgroup: IntMatrix) -> Result<Self> {
        let n = relations.rows();
        if components.is_empty() {
            return Err(Error::InvalidDecomposition("no components".into()));
        }
        for m in components.iter().chain([&subgroup]) {
            if m.rows() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.rows() });
            }
        }
        let rel = IntegerLattice::from_generators(&relations);
        let span = |m: &IntMatrix| IntegerLattice::from_generators(&m.hcat(&relations));
        let lattices: Vec<IntegerLattice> = components.iter().map(span).collect();
        let sub = span(&subgroup);
        let mut total = rel.clone();
        for l in &lattices {
            total = lattice_sum(&total, l)?;
        }
        if total != IntegerLattice::full(n) {
            return Err(Error::InvalidDecomposition("components do not generate A".into()));
        }
        for i in 0..lattices.len() {
            let mut others = rel.clone();
            for (j, l) in lattices.iter().enumerate() {
                if j != i {
                    others = lattice_sum(&others, l)?;
                }
            }
            if lattice_intersect(&lattices[i], &others)? != rel {
                return Err(Error::InvalidDecomposition(format!("component {} meets the sum of the others", i)));
            }
        }
        Ok(DecompositionProblem { relations, components, subgroup, lattices, sub, rel })
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `A_T = Σ_{i∈T} A_i`.
    fn block(&self, set: &[usize]) -> Result<IntegerLattice> {
        let mut acc = self.rel.clone();
        for &i in set {
            acc = lattice_sum(&acc, &self.lattices[i])?;
        }
        Ok(acc)
    }

    /// `B ∩ A_T`.
    pub fn restricted_block(&self, set: &[usize]) -> Result<IntegerLattice> {
        lattice_intersect(&self.sub, &self.block(set)?)
    }

    /// Whether the pushforward along `assignment` restricts to `B`, that is
    /// `B = Σ_t (B ∩ A_{f⁻¹t})`.
    pub fn restricts(&self, assignment: &[usize]) -> Result<bool> {
        let blocks = fibers(assignment);
        let mut acc = self.rel.clone();
        for b in blocks.values() {
            acc = lattice_sum(&acc, &self.restricted_block(b)?)?;
        }
        Ok(self.sub.is_sublattice_of(&acc))
    }
}

fn fibers(assignment: &[usize]) -> BTreeMap<usize, Vec<usize>> {
    let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &t) in assignment.iter().enumerate() {
        out.entry(t).or_default().push(i);
    }
    out
}

/// A surjection `u: I → U`, with targets numbered by least preimage.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniversalMap {
    pub assignment: Vec<usize>,
    pub targets: usize,
}

impl UniversalMap {
    /// Renumbers the targets of an arbitrary assignment canonically.
    pub fn from_assignment(assignment: &[usize]) -> Self {
        let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
        let mut out = Vec::with_capacity(assignment.len());
        for &t in assignment {
            let next = seen.len();
            out.push(*seen.entry(t).or_insert(next));
        }
        UniversalMap { targets: seen.len(), assignment: out }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Self {
        let mut a = vec![0; n];
        for (t, b) in blocks.iter().enumerate() {
            for &i in b {
                a[i] = t;
            }
        }
        Self::from_assignment(&a)
    }

    /// Fibers of `u`, in target order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        fibers(&self.assignment).into_values().collect()
    }

    /// Whether `f` factors through `u`.
    pub fn factors(&self, f: &[usize]) -> bool {
        let mut image: Vec<Option<usize>> = vec![None; self.targets];
        for (i, &t) in self.assignment.iter().enumerate() {
            match image[t] {
                Some(v) if v != f[i] => return false,
                _ => image[t] = Some(f[i]),
            }
        }
        true
    }
}

#[derive(Clone, Debug)]
pub struct Restriction {
    pub map: UniversalMap,
    /// `B ∩ A_{u⁻¹t}` for each target `t`.
    pub components: Vec<IntegerLattice>,
    /// Each merge, as the set of original indices joined in that step. The
    /// subgroup meets the merged block in elements not decomposable within
    /// any proper subset of the parts merged.
    pub certificates: Vec<Vec<usize>>,
}

/// The universal map `u` such that `u_*{A_i}` restricts to `B`.
///
/// Starting from singletons, each round finds a minimal set of blocks `S`
/// with `B ∩ A_S ⊄ Σ_{j∈S} (B ∩ A_j)` by dropping blocks in index order, and
/// merges it.
pub fn universal_restriction(p: &DecompositionProblem) -> Result<Restriction> {
    let mut blocks: Vec<Vec<usize>> = (0..p.len()).map(|i| vec![i]).collect();
    let mut certificates = Vec::new();
    loop {
        let inter: Vec<IntegerLattice> = blocks.iter().map(|b| p.restricted_block(b)).collect::<Result<_>>()?;
        let sum_of = |set: &[usize]| -> Result<IntegerLattice> {
            let mut acc = p.rel.clone();
            for &x in set {
                acc = lattice_sum(&acc, &inter[x])?;
            }
            Ok(acc)
        };
        let all: Vec<usize> = (0..blocks.len()).collect();
        if p.sub.is_sublattice_of(&sum_of(&all)?) {
            let map = UniversalMap::from_blocks(p.len(), &blocks);
            return Ok(Restriction { map, components: inter, certificates });
        }
        let mut s = all;
        for i in 0..blocks.len() {
            let t: Vec<usize> = s.iter().copied().filter(|&x| x != i).collect();
            if t.len() == s.len() || t.is_empty() {
                continue;
            }
            let orig: Vec<usize> = t.iter().flat_map(|&x| blocks[x].iter().copied()).collect();
            if !p.restricted_block(&orig)?.is_sublattice_of(&sum_of(&t)?) {
                s = t;
            }
        }
        let mut merged: Vec<usize> = s.iter().flat_map(|&x| blocks[x].iter().copied()).collect();
        merged.sort_unstable();
        certificates.push(merged.clone());
        let mut next: Vec<Vec<usize>> =
            blocks.into_iter().enumerate().filter(|(x, _)| !s.contains(x)).map(|(_, b)| b).collect();
        next.push(merged);
        next.sort_by_key(|b| b[0]);
        blocks = next;
    }
}

/// Grading of an order obtained from a loose grading of its rational span.
#[derive(Clone, Debug)]
pub struct RestrictedGrading {
    /// Grid morphism from the grid of the input grading.
    pub map: UniversalMap,
    pub grading: GridGrading,
}

fn check_order(r: &StructureAlgebra) -> Result<()> {
    if r.base() != Base::Z || !r.is_integral() {
        return Err(Error::NotAnOrder);
    }
    Ok(())
}

fn union(parent: &mut [usize], a: usize, b: usize) -> bool {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra == rb {
        return false;
    }
    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
    parent[hi] = lo;
    true
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

/// Homogeneous decomposition of `R` by blocks of saturated lattices.
struct BlockSplit {
    lattices: Vec<IntegerLattice>,
    bases: Vec<Vec<Vec<BigRational>>>,
    inverse: RationalMatrix,
    offsets: Vec<usize>,
}

impl BlockSplit {
    fn new(lattices: Vec<IntegerLattice>) -> Self {
        let n = lattices[0].ambient_rank();
        let bases: Vec<Vec<Vec<BigRational>>> = lattices
            .iter()
            .map(|l| l.basis_vectors().into_iter().map(|v| v.into_iter().map(BigRational::from_integer).collect()).collect())
            .collect();
        let cols: Vec<Vec<BigRational>> = bases.iter().flatten().cloned().collect();
        let inverse = RationalMatrix::from_columns(n, &cols).inverse().expect("blocks span the algebra");
        let mut offsets = Vec::with_capacity(lattices.len() + 1);
        let mut acc = 0;
        for l in &lattices {
            offsets.push(acc);
            acc += l.rank();
        }
        offsets.push(acc);
        BlockSplit { lattices, bases, inverse, offsets }
    }

    fn support(&self, x: &[BigRational]) -> BTreeSet<usize> {
        let c = self.inverse.mul_vec(x);
        (0..self.lattices.len())
            .filter(|&b| c[self.offsets[b]..self.offsets[b + 1]].iter().any(|v| !v.is_zero()))
            .collect()
    }

    fn product_support(&self, r: &StructureAlgebra, a: usize, b: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for x in &self.bases[a] {
            for y in &self.bases[b] {
                out.extend(self.support(&r.mul(x, y)));
            }
        }
        out
    }
}

/// Restricts a loose grading `Ē` of `E = R ⊗ Q` to the order `R`: the
/// universal coarsening of `Ē` whose components decompose `R`, read as a
/// loose grid grading.
pub fn restrict_grading(r: &StructureAlgebra, g: &GridGrading) -> Result<RestrictedGrading> {
    check_order(r)?;
    let n = r.rank();
    if g.rank() != n {
        return Err(Error::DimensionMismatch { expected: n, found: g.rank() });
    }
    if let Some((a, b)) = g.loose_violation() {
        return Err(Error::NotLoose { g: g.grid.label(a).to_string(), h: g.grid.label(b).to_string() });
    }
    let sat: Vec<IntegerLattice> = g.components.iter().map(saturate).collect();

    // coordinates of R in the basis stacked from the components, scaled to
    // integers
    let cols: Vec<Vec<BigInt>> = sat.iter().flat_map(|c| c.basis_vectors()).collect();
    let p = IntMatrix::from_columns(n, &cols);
    let d = p.det()?;
    let inv = p.to_rational().inverse().ok_or_else(|| Error::NotADecomposition("components do not span E".into()))?;
    let b = inv
        .scale(&BigRational::from_integer(d))
        .to_integer()
        .expect("d·P⁻¹ is the adjugate up to sign");
    let mut blocks = Vec::with_capacity(sat.len());
    let mut off = 0;
    for c in &sat {
        let idx: Vec<usize> = (off..off + c.rank()).collect();
        blocks.push(IntMatrix::identity(n).select_columns(&idx));
        off += c.rank();
    }
    let problem = DecompositionProblem::new(IntMatrix::zeros(n, 0), blocks, b)?;
    let res = universal_restriction(&problem)?;

    // coarsen until the blocks carry a grid: the support of 1, of each
    // product of two blocks, and every idempotent block join the unit
    let m = g.grid.len();
    let mut class: Vec<usize> = res.map.assignment.clone();
    loop {
        let map = UniversalMap::from_assignment(&class);
        let members = map.blocks();
        let split = BlockSplit::new(
            members
                .iter()
                .map(|mem| {
                    let mut acc = IntegerLattice::zero(n);
                    for &s in mem {
                        acc = lattice_sum(&acc, &sat[s])?;
                    }
                    Ok(saturate(&acc))
                })
                .collect::<Result<_>>()?,
        );
        let k = members.len();
        let mut parent: Vec<usize> = (0..k).collect();
        let mut changed = false;
        let unit_support = split.support(r.unit());
        let unit = map.assignment[g.grid.unit()];
        for &s in &unit_support {
            changed |= union(&mut parent, unit, s);
        }
        for a in 0..k {
            for c in a..k {
                let sup = split.product_support(r, a, c);
                if let Some(&first) = sup.iter().next() {
                    for &s in &sup {
                        changed |= union(&mut parent, first, s);
                    }
                }
                if a == c && a != unit && sup.len() == 1 && sup.contains(&a) {
                    changed |= union(&mut parent, unit, a);
                }
            }
        }
        if !changed {
            return build_grid_grading(r, g, map, split);
        }
        class = (0..m).map(|s| find(&mut parent, map.assignment[s])).collect();
    }
}

fn build_grid_grading(
    r: &StructureAlgebra,
    g: &GridGrading,
    map: UniversalMap,
    split: BlockSplit,
) -> Result<RestrictedGrading> {
    let k = map.targets;
    let unit = map.assignment[g.grid.unit()];
    let members = map.blocks();
    let labels: Vec<String> = members
        .iter()
        .enumerate()
        .map(|(t, mem)| {
            let rep = if t == unit { g.grid.unit() } else { mem[0] };
            g.grid.label(rep).to_string()
        })
        .collect();
    let mut products = Vec::new();
    for a in 0..k {
        for c in 0..k {
            let sup = split.product_support(r, a, c);
            match sup.len() {
                0 => {}
                1 => products.push((a, c, *sup.iter().next().expect("one element"))),
                _ => unreachable!("blocks were merged along product supports"),
            }
        }
    }
    let grid = Grid::new(labels, unit, &products)?;
    g.grid.check_morphism(&map.assignment, &grid)?;
    let grading = GridGrading::new(r.clone(), grid, split.lattices)?;
    Ok(RestrictedGrading { map, grading })
}

/// The universal grid grading with the data of its construction.
#[derive(Clone, Debug)]
pub struct UniversalGrid {
    pub grading: GridGrading,
    /// Partition of the spectrum the grading was built from.
    pub partition: Vec<Vec<usize>>,
    pub presentation: GroupPresentation,
    /// Generator of the presentation for each grid element.
    pub generator_of: Vec<Option<usize>>,
}

struct SubsetData {
    projection: SubsetProjection,
    universal: UniversalAbelian,
    loose: bool,
}

/// Universal grid grading of a reduced order, through the universal abelian
/// gradings of its projections onto subsets of the spectrum.
pub fn universal_grid(r: &StructureAlgebra) -> Result<UniversalGrid> {
    universal_grid_capped(r, MAX_SPECTRUM)
}

pub fn universal_grid_capped(r: &StructureAlgebra, max_spec: usize) -> Result<UniversalGrid> {
    check_order(r)?;
    if !r.is_reduced() {
        return Err(Error::NotReduced);
    }
    let e = r.to_rational();
    let spec = spectrum(&e)?;
    let m = spec.len();
    if m > max_spec.min(MAX_SPECTRUM) {
        return Err(Error::ResourceCap(format!("spectrum has {} points, limit is {}", m, max_spec.min(MAX_SPECTRUM))));
    }
    let subsets: Vec<SubsetData> = (1u32..(1 << m))
        .into_par_iter()
        .map(|mask| {
            let set: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
            let projection = subset_projection(r, &spec, &set)?;
            let universal = universal_abelian(&projection.algebra)?;
            let loose = universal.grading.is_loose();
            Ok(SubsetData { projection, universal, loose })
        })
        .collect::<Result<_>>()?;
    let data = |block: &[usize]| &subsets[block.iter().map(|&i| 1usize << i).sum::<usize>() - 1];

    let mut best: Option<(usize, Vec<Vec<usize>>, GridGrading)> = None;
    for partition in set_partitions(m) {
        if !partition.iter().all(|b| data(b).loose) {
            continue;
        }
        let coproduct = coproduct_grading(&e, &partition.iter().map(|b| data(b)).collect::<Vec<_>>())?;
        let restricted = restrict_grading(r, &coproduct)?;
        let count = restricted.grading.nonzero_count();
        if best.as_ref().is_none_or(|(c, _, _)| count > *c) {
            best = Some((count, partition, restricted.grading));
        }
    }
    let (_, partition, grading) = best.ok_or(Error::NoAdmissiblePartition)?;
    let (presentation, generator_of) = grading.grid.groupify();
    Ok(UniversalGrid { grading, partition, presentation, generator_of })
}

/// Coproduct of the gradings `Ē_P` of the factors `E_P`, as a grading of
/// `E = ∏ E_P`.
fn coproduct_grading(e: &StructureAlgebra, parts: &[&SubsetData]) -> Result<GridGrading> {
    let n = e.rank();
    let grids: Vec<Grid> = parts.iter().map(|p| p.universal.grading.grid.clone()).collect();
    let (grid, maps) = Grid::coproduct(&grids);
    let mut cols: Vec<Vec<Vec<BigRational>>> = vec![Vec::new(); grid.len()];
    for (part, map) in parts.iter().zip(&maps) {
        let basis = &part.projection.basis;
        for (s, comp) in part.universal.grading.components.iter().enumerate() {
            for v in comp.basis_vectors() {
                let v: Vec<BigRational> = v.into_iter().map(BigRational::from_integer).collect();
                cols[map[s]].push(basis.mul_vec(&v));
            }
        }
    }
    let comps = cols
        .iter()
        .map(|c| {
            if c.is_empty() {
                IntegerLattice::zero(n)
            } else {
                saturate_rational(&RationalMatrix::from_columns(n, c))
            }
        })
        .collect();
    GridGrading::new(e.clone(), grid, comps)
}
