// SPDX-License-Identifier: MIT OR Apache-2.0

//! `X_e(C, G) = {σ ∈ wreath(C) | σ^e = 1, ^aσ = σ^a for a ∈ G}` for a prime
//! power `e`, by reduction to iso classes, to partitions of the `G`-orbits,
//! to `⟨σ⟩`-transitive elements and finally to a cyclic acting group.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groupoid::{transporter, GroupAction, Groupoid, Mor, Semidirect, WreathElement};

#[derive(Clone, Debug)]
pub struct XeProblem {
    pub groupoid: Groupoid,
    pub e: u64,
    pub action: GroupAction,
}

/// `(p, k)` with `e = p^k`, if `e > 1` is a prime power.
pub fn prime_power(e: u64) -> Option<(u64, u32)> {
    if e < 2 {
        return None;
    }
    let p = (2..=e).find(|d| e.is_multiple_of(*d))?;
    let mut m = e;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

fn mul_mod(a: u64, b: u64, e: u64) -> u64 {
    ((a as u128 * b as u128) % e as u128) as u64
}

fn closure(e: u64, gens: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let gens: Vec<u64> = gens.into_iter().collect();
    let mut set: BTreeSet<u64> = [1 % e].into_iter().collect();
    let mut frontier: Vec<u64> = set.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        for &g in &gens {
            let y = mul_mod(x, g, e);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set.into_iter().collect()
}

fn element_order(a: u64, e: u64) -> usize {
    let mut x = a % e;
    let mut k = 1;
    while x != 1 % e {
        x = mul_mod(x, a, e);
        k += 1;
    }
    k
}

impl XeProblem {
    pub fn new(groupoid: Groupoid, e: u64, action: GroupAction) -> Result<Self> {
        if prime_power(e).is_none() {
            return Err(Error::InvalidAction(format!("{} is not a prime power > 1", e)));
        }
        if action.modulus() != e {
            return Err(Error::InvalidAction(format!("action is modulo {}, expected {}", action.modulus(), e)));
        }
        if action.object_permutation(1).len() != groupoid.n_objects() {
            return Err(Error::InvalidAction("action and groupoid differ in size".into()));
        }
        Ok(XeProblem { groupoid, e, action })
    }

    /// Whether `σ` satisfies both defining relations.
    pub fn contains(&self, s: &WreathElement) -> bool {
        let c = &self.groupoid;
        c.is_wreath_element(s)
            && c.wreath_is_identity(&c.wreath_pow(s, self.e))
            && self.action.elements().iter().all(|&a| self.action.act_wreath(a, s) == c.wreath_pow(s, a))
    }

    /// Same problem on the full subgroupoid with objects `objs`, which must
    /// be stable under `group` (a subgroup of the acting group).
    pub fn restrict(&self, objs: &[usize], group: &[u64]) -> Subproblem {
        let (c, old) = self.groupoid.full_subgroupoid(objs);
        let action = self.action.restrict(&c, &old, group).expect("stable object set");
        Subproblem { problem: XeProblem { groupoid: c, e: self.e, action }, objects: objs.to_vec(), morphisms: old }
    }

    /// `m = #(obj C / G)`.
    pub fn orbit_count(&self) -> usize {
        self.action.object_orbits().len()
    }

    /// `(2·m·a^c)^m` with `a = #aut(C)` and `c = 2 + [4 | e]`.
    pub fn bound(&self) -> BigUint {
        let m = self.orbit_count() as u32;
        let a = BigUint::from(self.groupoid.aut_count());
        let c = if self.e.is_multiple_of(4) { 3 } else { 2 };
        (BigUint::from(2 * m) * a.pow(c)).pow(m)
    }
}

/// A problem on a full subgroupoid with the maps back to the parent.
#[derive(Clone, Debug)]
pub struct Subproblem {
    pub problem: XeProblem,
    /// Parent object of each object.
    pub objects: Vec<usize>,
    /// Parent handle of each morphism.
    pub morphisms: Vec<Mor>,
}

impl Subproblem {
    fn write_into(&self, s: &WreathElement, perm: &mut [usize], mor: &mut [Mor]) {
        for (k, (&t, &f)) in s.perm.iter().zip(&s.mor).enumerate() {
            perm[self.objects[k]] = self.objects[t];
            mor[self.objects[k]] = self.morphisms[f];
        }
    }

    /// Extends `s` by the identity outside the subproblem.
    pub fn lift(&self, parent: &Groupoid, s: &WreathElement) -> WreathElement {
        let mut out = parent.wreath_identity();
        self.write_into(s, &mut out.perm, &mut out.mor);
        out
    }
}

/// Orbits of `wreath(C) ⋊ G` on objects, as subproblems ordered by least
/// object.
pub fn split_iso_classes(p: &XeProblem) -> Vec<Subproblem> {
    let n = p.groupoid.n_objects();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for a in 0..n {
        for b in 0..n {
            if p.groupoid.is_isomorphic(a, b) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        for &g in p.action.elements() {
            let b = p.action.act_object(g, a);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for a in 0..n {
        let r = find(&mut parent, a);
        classes.entry(r).or_default().push(a);
    }
    classes.into_values().map(|objs| p.restrict(&objs, p.action.elements())).collect()
}

/// Set partitions of `0..n` as block lists, blocks in order of least element.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            go(i + 1, n, cur, out);
            cur[b].pop();
        }
        cur.push(vec![i]);
        go(i + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// Solutions grouped by the partition of the `G`-orbits into
/// `⟨σ⟩⋊G`-orbits.
#[derive(Clone, Debug)]
pub struct PartitionSolutions {
    /// Blocks as sorted object lists.
    pub blocks: Vec<Vec<usize>>,
    pub solutions: Vec<WreathElement>,
}

/// `X_e(C, G) = ⊔_{𝒫 ⪰ obj/G} ∏_{Q ∈ 𝒫} X̃_e(C|_Q, G)`.
pub fn enumerate_partitions(p: &XeProblem) -> Vec<PartitionSolutions> {
    let orbits = p.action.object_orbits();
    let m = orbits.len();
    let masks: Vec<usize> = (1..1usize << m).collect();
    let wide: BTreeMap<usize, (Vec<usize>, Vec<WreathElement>)> = masks
        .par_iter()
        .map(|&mask| {
            let mut objs: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).flat_map(|i| orbits[i].clone()).collect();
            objs.sort_unstable();
            let sub = p.restrict(&objs, p.action.elements());
            let sols = wide_xe(&sub.problem);
            let lifted = sols
                .iter()
                .map(|s| {
                    let mut perm = vec![0; objs.len()];
                    let mut mor = vec![0; objs.len()];
                    for (k, (&t, &f)) in s.perm.iter().zip(&s.mor).enumerate() {
                        perm[k] = t;
                        mor[k] = sub.morphisms[f];
                    }
                    WreathElement { perm, mor }
                })
                .collect();
            (mask, (objs, lifted))
        })
        .collect();
    let n = p.groupoid.n_objects();
    set_partitions(m)
        .into_iter()
        .map(|part| {
            let pieces: Vec<&(Vec<usize>, Vec<WreathElement>)> =
                part.iter().map(|b| &wide[&b.iter().map(|i| 1usize << i).sum::<usize>()]).collect();
            let mut solutions = Vec::new();
            let mut perm = vec![0; n];
            let mut mor = vec![0; n];
            combine(&pieces, 0, &mut perm, &mut mor, &mut solutions);
            solutions.sort();
            PartitionSolutions { blocks: pieces.iter().map(|x| x.0.clone()).collect(), solutions }
        })
        .collect()
}

fn combine(
    pieces: &[&(Vec<usize>, Vec<WreathElement>)],
    i: usize,
    perm: &mut [usize],
    mor: &mut [Mor],
    out: &mut Vec<WreathElement>,
) {
    if i == pieces.len() {
        out.push(WreathElement { perm: perm.to_vec(), mor: mor.to_vec() });
        return;
    }
    let (objs, sols) = pieces[i];
    for s in sols {
        for (k, (&t, &f)) in s.perm.iter().zip(&s.mor).enumerate() {
            perm[objs[k]] = objs[t];
            mor[objs[k]] = f;
        }
        combine(pieces, i + 1, perm, mor, out);
    }
}

/// All of `X_e(C, G)`, sorted.
pub fn xe(p: &XeProblem) -> Vec<WreathElement> {
    let n = p.groupoid.n_objects();
    let mut acc = vec![p.groupoid.wreath_identity()];
    for sub in split_iso_classes(p) {
        let sols: Vec<WreathElement> =
            enumerate_partitions(&sub.problem).into_iter().flat_map(|ps| ps.solutions).collect();
        let mut next = Vec::with_capacity(acc.len() * sols.len());
        for base in &acc {
            for s in &sols {
                let mut x = base.clone();
                sub.write_into(s, &mut x.perm, &mut x.mor);
                next.push(x);
            }
        }
        acc = next;
    }
    debug_assert!(acc.iter().all(|s| s.n() == n && p.contains(s)));
    acc.sort();
    acc
}

/// Pointwise stabilizer of a set of objects.
fn pointwise_stabilizer(act: &GroupAction, objs: &[usize]) -> Vec<u64> {
    act.elements().iter().copied().filter(|&a| objs.iter().all(|&y| act.act_object(a, y) == y)).collect()
}

/// Subgroups `H` with `I ⊆ H ⊆ G`, ordered by size then elements.
pub fn intermediate_subgroups(e: u64, g: &[u64], i: &[u64]) -> Vec<Vec<u64>> {
    let mut out: BTreeSet<(usize, Vec<u64>)> = BTreeSet::new();
    for &a in g {
        for &b in g {
            let h = closure(e, i.iter().copied().chain([a, b]));
            out.insert((h.len(), h));
        }
    }
    out.into_iter().map(|x| x.1).collect()
}

/// `X̃_e(C, G)`: the `σ ∈ X_e` with `⟨σ⟩⋊G` transitive on objects.
pub fn wide_xe(p: &XeProblem) -> Vec<WreathElement> {
    let c = &p.groupoid;
    if c.n_objects() == 0 {
        return vec![c.wreath_identity()];
    }
    let orbits = p.action.object_orbits();
    let gens = orbits.iter().flat_map(|o| pointwise_stabilizer(&p.action, o));
    let i = closure(p.e, gens);
    let mut out = Vec::new();
    for h in intermediate_subgroups(p.e, p.action.elements(), &i) {
        for part in admissible_parts(p, &h) {
            let sub = p.restrict(&part, &h);
            for omega in transitive_xe(&sub.problem) {
                out.push(transitive_lift(p, &h, &sub, &omega));
            }
        }
    }
    out.sort();
    out
}

/// `𝒫(H)`: sets `P ∋ x` (with `x` the least object) meeting every
/// `G`-orbit in one `H`-orbit.
pub fn admissible_parts(p: &XeProblem, h: &[u64]) -> Vec<Vec<usize>> {
    let g_orbits = p.action.object_orbits();
    let h_orbits = p.action.subgroup_orbits(h);
    let mut choices: Vec<Vec<&Vec<usize>>> = Vec::new();
    for o in &g_orbits {
        let inside: Vec<&Vec<usize>> = h_orbits.iter().filter(|ho| o.contains(&ho[0])).collect();
        if o.contains(&0) {
            choices.push(inside.into_iter().filter(|ho| ho.contains(&0)).collect());
        } else {
            choices.push(inside);
        }
    }
    let mut parts: Vec<Vec<usize>> = vec![vec![]];
    for ch in choices {
        parts = parts
            .into_iter()
            .flat_map(|pre| {
                ch.iter().map(move |ho| {
                    let mut q = pre.clone();
                    q.extend(ho.iter().copied());
                    q
                })
            })
            .collect();
    }
    for q in &mut parts {
        q.sort_unstable();
    }
    parts
}

/// Least-residue representatives of `G/H`.
fn coset_representatives(e: u64, g: &[u64], h: &[u64]) -> Vec<u64> {
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    let mut reps = Vec::new();
    for &a in g {
        if seen.contains(&a) {
            continue;
        }
        reps.push(a);
        for &x in h {
            seen.insert(mul_mod(a, x, e));
        }
    }
    reps
}

/// The unique `σ ∈ X̃_e(C, G)` restricting to `ω` on `P`, where `sub` is the
/// restriction of `p` to `P` with acting group `H`. For `y` with `z = a·y ∈ P`
/// (`a` a coset representative): `s(y) = a⁻¹·o^a(z)` and
/// `σ_y = a⁻¹((ω^a)_z)`.
pub fn transitive_lift(p: &XeProblem, h: &[u64], sub: &Subproblem, omega: &WreathElement) -> WreathElement {
    let c = &p.groupoid;
    let act = &p.action;
    let e = p.e;
    let n = c.n_objects();
    let mut local = vec![usize::MAX; n];
    for (k, &y) in sub.objects.iter().enumerate() {
        local[y] = k;
    }
    let sc = &sub.problem.groupoid;
    let mut perm = vec![0; n];
    let mut mor = vec![0; n];
    for a in coset_representatives(e, act.elements(), h) {
        let wa = sc.wreath_pow(omega, a);
        let ainv = act.inverse(a);
        for y in 0..n {
            let z = act.act_object(a, y);
            if local[z] == usize::MAX {
                continue;
            }
            let zl = local[z];
            perm[y] = act.act_object(ainv, sub.objects[wa.perm[zl]]);
            mor[y] = act.act_morphism(ainv, sub.morphisms[wa.mor[zl]]);
        }
    }
    let s = WreathElement { perm, mor };
    debug_assert!(p.contains(&s), "lift left X_e");
    s
}

/// Generator of the cyclic subgroup used by the leaf step: for `e = 2^k`
/// with `k ≥ 3` it generates `H ∩ ⟨5⟩`, otherwise `H` itself (cyclic).
pub fn leaf_generator(e: u64, h: &[u64]) -> u64 {
    let (p, k) = prime_power(e).expect("prime power");
    let cand: Vec<u64> = if p == 2 && k >= 3 { h.iter().copied().filter(|&a| a % 4 == 1).collect() } else { h.to_vec() };
    let target = cand.len();
    cand.into_iter().find(|&a| element_order(a, e) == target).expect("cyclic subgroup")
}

/// `X̂_e(C, H)`: transitive `σ` with `σ^e = 1` and `^aσ = σ^a` for `a ∈ H`,
/// computed over a cyclic subgroup and filtered by the rest of `H`.
pub fn transitive_xe(p: &XeProblem) -> Vec<WreathElement> {
    let b = leaf_generator(p.e, p.action.elements());
    let cyclic = closure(p.e, [b]);
    let act_b = p.action.restrict(&p.groupoid, &(0..p.groupoid.n_morphisms()).collect::<Vec<_>>(), &cyclic).expect("subgroup");
    let mut out: Vec<WreathElement> = leaf_xe(&p.groupoid, &act_b, p.e, b)
        .into_iter()
        .filter(|s| p.action.elements().iter().all(|&a| p.action.act_wreath(a, s) == p.groupoid.wreath_pow(s, a)))
        .collect();
    out.sort();
    out
}

/// Transitive `σ` with `σ^e = 1` and `^bσ = σ^b`, where `act` is the action
/// of `⟨b⟩`. For each conjugacy class representative `σ_φ`, every
/// `υ = β∘τ_b` with `β·^bσ_φ = σ_φ^b·β` and every `α` with `αυα⁻¹ = τ_b`
/// contribute `ασ_φα⁻¹`.
pub fn leaf_xe(c: &Groupoid, act: &GroupAction, e: u64, b: u64) -> Vec<WreathElement> {
    let n = c.n_objects();
    if n == 0 || !e.is_multiple_of(n as u64) || (1..n).any(|k| !c.is_isomorphic(0, k)) {
        return Vec::new();
    }
    let sd = Semidirect::new(c, act);
    let base = sd.base_mask();
    let tau_b = sd.tau(b);
    let full = c.full_mask();
    let mut out = BTreeSet::new();
    for gamma in aut_class_representatives(c, 0) {
        if !(e / n as u64).is_multiple_of(c.order(gamma) as u64) {
            continue;
        }
        let phi = transitive_representative(c, gamma);
        let twisted = act.act_wreath(b, &phi);
        let powered = c.wreath_pow(&phi, b);
        for beta in transporter(c, &full, &twisted, &powered) {
            let upsilon = sd.groupoid.wreath_compose(&sd.embed(&beta), &tau_b);
            for alpha in transporter(&sd.groupoid, &base, &upsilon, &tau_b) {
                let alpha = sd.retract(&alpha).expect("transporter stays in the base");
                let s = c.wreath_compose(&alpha, &c.wreath_compose(&phi, &c.wreath_invert(&alpha)));
                out.insert(s);
            }
        }
    }
    out.into_iter().collect()
}

/// Least handle in each conjugacy class of `Aut(x)`.
fn aut_class_representatives(c: &Groupoid, x: usize) -> Vec<Mor> {
    let aut = c.aut(x);
    let mut reps = BTreeSet::new();
    for &g in aut {
        let r = aut.iter().map(|&h| c.compose(h, c.compose(g, c.inv(h)))).min().unwrap();
        reps.insert(r);
    }
    reps.into_iter().collect()
}

/// The cycle `0 → 1 → … → n−1 → 0` along the least handles `h_i: 0 → i`,
/// closed so that `λ(0) = γ`.
fn transitive_representative(c: &Groupoid, gamma: Mor) -> WreathElement {
    let n = c.n_objects();
    let h: Vec<Mor> = (0..n).map(|i| if i == 0 { c.id(0) } else { c.hom(0, i)[0] }).collect();
    let perm = (0..n).map(|i| (i + 1) % n).collect();
    let mor = (0..n)
        .map(|i| {
            let next = if i + 1 == n { gamma } else { h[i + 1] };
            c.compose(next, c.inv(h[i]))
        })
        .collect();
    WreathElement { perm, mor }
}
