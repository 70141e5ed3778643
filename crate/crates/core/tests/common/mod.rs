// SPDX-License-Identifier: MIT OR Apache-2.0

//! Small groupoid builders and exhaustive oracles shared by the test targets.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use grading_forge::groupoid::{GroupAction, Groupoid, Mor, WreathElement};
use rand::Rng;

/// Finite group by multiplication table, element 0 the identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SmallGroup {
    pub mul: Vec<Vec<usize>>,
}

impl SmallGroup {
    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn inv(&self, x: usize) -> usize {
        (0..self.order()).find(|&y| self.mul[x][y] == 0).unwrap()
    }

    /// All automorphisms as element maps.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        permutations(n)
            .into_iter()
            .filter(|p| p[0] == 0 && (0..n).all(|x| (0..n).all(|y| p[self.mul[x][y]] == self.mul[p[x]][p[y]])))
            .collect()
    }
}

pub fn cyclic(n: usize) -> SmallGroup {
    SmallGroup { mul: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect() }
}

pub fn klein() -> SmallGroup {
    SmallGroup { mul: (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect() }
}

/// `S₃`, elements `r^i s^j` indexed `i + 3j`.
pub fn s3() -> SmallGroup {
    let mul = (0..6)
        .map(|x| {
            (0..6)
                .map(|y| {
                    let (i, j, k, l) = (x % 3, x / 3, y % 3, y / 3);
                    let ii = if j == 0 { (i + k) % 3 } else { (i + 3 - k) % 3 };
                    ii + 3 * ((j + l) % 2)
                })
                .collect()
        })
        .collect();
    SmallGroup { mul }
}

/// Groups of order at most `max`, up to isomorphism.
pub fn groups_up_to(max: usize) -> Vec<SmallGroup> {
    let mut out = vec![cyclic(1)];
    for n in 2..=max {
        out.push(cyclic(n));
        if n == 4 {
            out.push(klein());
        }
        if n == 6 {
            out.push(s3());
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Disjoint union of connected groupoids `Γ × (indiscrete on n objects)`.
pub struct Built {
    pub c: Groupoid,
    pub groups: Vec<SmallGroup>,
    /// Component of each object.
    pub comp: Vec<usize>,
    /// `(K, L, x)` for each handle.
    pub label: Vec<(usize, usize, usize)>,
    pub handle: HashMap<(usize, usize, usize), Mor>,
}

pub fn build(components: &[(SmallGroup, usize)]) -> Built {
    let mut comp = Vec::new();
    let mut groups = Vec::new();
    for (i, (g, n)) in components.iter().enumerate() {
        groups.push(g.clone());
        comp.extend(std::iter::repeat_n(i, *n));
    }
    let n_obj = comp.len();
    let mut label = Vec::new();
    for k in 0..n_obj {
        for l in 0..n_obj {
            if comp[k] == comp[l] {
                for x in 0..groups[comp[k]].order() {
                    label.push((k, l, x));
                }
            }
        }
    }
    let handle: HashMap<_, _> = label.iter().enumerate().map(|(h, &t)| (t, h)).collect();
    let src = label.iter().map(|t| t.0).collect();
    let tgt = label.iter().map(|t| t.1).collect();
    let c = Groupoid::new(n_obj, src, tgt, |f, g| {
        let (_, m, y) = label[f];
        let (k, _, x) = label[g];
        handle[&(k, m, groups[comp[k]].mul[y][x])]
    })
    .unwrap();
    Built { c, groups, comp, label, handle }
}

impl Built {
    /// Functor `(K → L, x) ↦ (πK → πL, h_L·φ(x)·h_K⁻¹)` with `φ` applied
    /// per source component.
    pub fn functor(&self, pi: &[usize], phi: &[Vec<usize>], h: &[usize]) -> Option<Vec<Mor>> {
        let mut out = Vec::with_capacity(self.label.len());
        for &(k, l, x) in &self.label {
            let (pk, pl) = (pi[k], pi[l]);
            let c = self.comp[k];
            let g = &self.groups[self.comp[pk]];
            if *g != self.groups[c] || self.comp[pk] != self.comp[pl] {
                return None;
            }
            let y = g.mul[g.mul[h[l]][phi[c][x]]][g.inv(h[k])];
            out.push(self.handle[&(pk, pl, y)]);
        }
        Some(out)
    }

    /// Object permutations that map components onto components with equal
    /// groups.
    pub fn admissible_perms(&self) -> Vec<Vec<usize>> {
        let n = self.comp.len();
        permutations(n)
            .into_iter()
            .filter(|p| {
                (0..n).all(|k| {
                    self.groups[self.comp[k]] == self.groups[self.comp[p[k]]]
                        && (0..n).all(|l| (self.comp[k] == self.comp[l]) == (self.comp[p[k]] == self.comp[p[l]]))
                })
            })
            .collect()
    }

    /// Random functor.
    pub fn random_functor(&self, rng: &mut impl Rng, twisted: bool) -> Vec<Mor> {
        let perms = self.admissible_perms();
        let pi = &perms[rng.gen_range(0..perms.len())];
        let phi: Vec<Vec<usize>> = self
            .groups
            .iter()
            .map(|g| {
                let a = g.automorphisms();
                a[rng.gen_range(0..a.len())].clone()
            })
            .collect();
        let h: Vec<usize> = self
            .comp
            .iter()
            .map(|&c| if twisted { rng.gen_range(0..self.groups[c].order()) } else { 0 })
            .collect();
        self.functor(pi, &phi, &h).unwrap()
    }

    /// All functors without twisting.
    pub fn untwisted_functors(&self) -> Vec<Vec<Mor>> {
        let mut phis: Vec<Vec<Vec<usize>>> = vec![vec![]];
        for g in &self.groups {
            let autos = g.automorphisms();
            phis = phis
                .into_iter()
                .flat_map(|p| {
                    autos.iter().map(move |a| {
                        let mut q = p.clone();
                        q.push(a.clone());
                        q
                    })
                })
                .collect();
        }
        let h = vec![0; self.comp.len()];
        let mut out: Vec<Vec<Mor>> = self
            .admissible_perms()
            .iter()
            .flat_map(|pi| phis.iter().filter_map(|phi| self.functor(pi, phi, &h)).collect::<Vec<_>>())
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Every element of `wreath(C)`.
pub fn all_wreath(c: &Groupoid) -> Vec<WreathElement> {
    let n = c.n_objects();
    let mut out = Vec::new();
    for perm in permutations(n) {
        if (0..n).any(|k| c.hom(k, perm[k]).is_empty()) {
            continue;
        }
        let mut mor = vec![0; n];
        fill(c, &perm, 0, &mut mor, &mut out);
    }
    out.sort();
    out
}

fn fill(c: &Groupoid, perm: &[usize], k: usize, mor: &mut Vec<Mor>, out: &mut Vec<WreathElement>) {
    if k == perm.len() {
        out.push(WreathElement { perm: perm.to_vec(), mor: mor.clone() });
        return;
    }
    for &f in c.hom(k, perm[k]) {
        mor[k] = f;
        fill(c, perm, k + 1, mor, out);
    }
}

pub fn wreath_size(c: &Groupoid) -> u128 {
    let n = c.n_objects();
    permutations(n)
        .iter()
        .map(|p| (0..n).map(|k| c.hom(k, p[k]).len() as u128).product::<u128>())
        .sum()
}

/// `X_e(C, G)` by filtering all of `wreath(C)`.
pub fn xe_oracle(c: &Groupoid, act: &GroupAction, e: u64) -> Vec<WreathElement> {
    all_wreath(c)
        .into_iter()
        .filter(|s| {
            c.wreath_is_identity(&c.wreath_pow(s, e))
                && act.elements().iter().all(|&a| act.act_wreath(a, s) == c.wreath_pow(s, a))
        })
        .collect()
}

/// Units mod `e`.
pub fn units(e: u64) -> Vec<u64> {
    let mut u: Vec<u64> = (1..=e).map(|a| a % e).filter(|&a| num_integer::gcd(a, e) == 1).collect();
    u.sort_unstable();
    u
}

/// All subgroups of `(Z/eZ)*`, each sorted.
pub fn unit_subgroups(e: u64) -> Vec<Vec<u64>> {
    let u = units(e);
    let mut out: Vec<Vec<u64>> = Vec::new();
    for &a in &u {
        for &b in &u {
            let s = closure(e, &[a, b]);
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out.sort();
    out
}

/// Generators `(g₁, g₂)` of a subgroup of `(Z/eZ)*` (at most two suffice).
pub fn subgroup_generators(e: u64, sub: &[u64]) -> Vec<u64> {
    for &a in sub {
        if closure(e, &[a]) == sub {
            return vec![a];
        }
    }
    for &a in sub {
        for &b in sub {
            if closure(e, &[a, b]) == sub {
                return vec![a, b];
            }
        }
    }
    unreachable!()
}

fn closure(e: u64, gens: &[u64]) -> Vec<u64> {
    let mut set: BTreeSet<u64> = [1 % e].into_iter().collect();
    loop {
        let next: BTreeSet<u64> =
            set.iter().flat_map(|&x| gens.iter().map(move |&g| x * g % e)).chain(set.iter().copied()).collect();
        if next == set {
            return set.into_iter().collect();
        }
        set = next;
    }
}

/// All groupoids with at most `max_obj` objects whose automorphism groups
/// have order at most `max_aut`, as component lists.
pub fn small_groupoids(max_obj: usize, max_aut: usize) -> Vec<Vec<(SmallGroup, usize)>> {
    let groups = groups_up_to(max_aut);
    // components as (group index, size), non-decreasing
    let mut shapes: Vec<Vec<(usize, usize)>> = vec![vec![]];
    let mut out = Vec::new();
    while let Some(s) = shapes.pop() {
        let used: usize = s.iter().map(|x| x.1).sum();
        if used > 0 {
            out.push(s.iter().map(|&(g, n)| (groups[g].clone(), n)).collect());
        }
        for g in 0..groups.len() {
            for n in 1..=max_obj - used {
                if s.last().is_none_or(|&last| last <= (g, n)) {
                    let mut t = s.clone();
                    t.push((g, n));
                    shapes.push(t);
                }
            }
        }
    }
    out
}

/// Actions of the subgroup `sub ⊆ (Z/eZ)*` on `b.c`: every action whose
/// generators act by untwisted functors, plus actions built from a few
/// seeded random twisted functors.
pub fn actions(b: &Built, e: u64, sub: &[u64], rng: &mut impl Rng) -> Vec<GroupAction> {
    let gens = subgroup_generators(e, sub);
    let mut candidates = b.untwisted_functors();
    for _ in 0..4 {
        candidates.push(b.random_functor(rng, true));
    }
    candidates.sort();
    candidates.dedup();
    let mut out: Vec<GroupAction> = Vec::new();
    let mut push = |a: GroupAction| {
        if !out.contains(&a) {
            out.push(a);
        }
    };
    match gens.as_slice() {
        [g] => {
            for f in &candidates {
                if let Ok(a) = GroupAction::from_generators(&b.c, e, &[(*g, f.clone())]) {
                    push(a);
                }
            }
        }
        [g, h] => {
            for f in &candidates {
                for k in &candidates {
                    if let Ok(a) = GroupAction::from_generators(&b.c, e, &[(*g, f.clone()), (*h, k.clone())]) {
                        push(a);
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    out
}
