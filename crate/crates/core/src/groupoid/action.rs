// SPDX-License-Identifier: MIT OR Apache-2.0

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;

use super::core::{Groupoid, Mor, WreathElement};
use crate::error::{Error, Result};

/// Action of a subgroup `G ⊆ (Z/eZ)*` on a groupoid, by functors given as
/// morphism permutations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupAction {
    e: u64,
    elements: Vec<u64>,
    obj: Vec<Vec<usize>>,
    mor: Vec<Vec<Mor>>,
}

fn mul_mod(a: u64, b: u64, e: u64) -> u64 {
    ((a as u128 * b as u128) % e as u128) as u64
}

fn objects_of(c: &Groupoid, m: &[Mor]) -> Vec<usize> {
    (0..c.n_objects()).map(|k| c.source(m[c.id(k)])).collect()
}

impl GroupAction {
    /// `elements[i]` acts on morphisms by `mor[i]`.
    pub fn new(c: &Groupoid, e: u64, elements: Vec<u64>, mor: Vec<Vec<Mor>>) -> Result<Self> {
        if e == 0 || elements.len() != mor.len() {
            return Err(Error::InvalidAction("element and functor lists differ".into()));
        }
        let mut pairs: Vec<(u64, Vec<Mor>)> = elements.into_iter().map(|a| a % e).zip(mor).collect();
        pairs.sort();
        let elements: Vec<u64> = pairs.iter().map(|p| p.0).collect();
        let mor: Vec<Vec<Mor>> = pairs.into_iter().map(|p| p.1).collect();
        let obj = mor
            .iter()
            .map(|m| {
                if m.len() != c.n_morphisms() || m.iter().any(|&f| f >= c.n_morphisms()) {
                    Err(Error::InvalidAction("functor has the wrong size".into()))
                } else {
                    Ok(objects_of(c, m))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let act = GroupAction { e, elements, obj, mor };
        act.validate(c)?;
        Ok(act)
    }

    /// Closure of generator functors under composition.
    pub fn from_generators(c: &Groupoid, e: u64, gens: &[(u64, Vec<Mor>)]) -> Result<Self> {
        let id: Vec<Mor> = (0..c.n_morphisms()).collect();
        let mut found: BTreeMap<u64, Vec<Mor>> = BTreeMap::new();
        found.insert(1 % e, id);
        let mut queue = vec![1 % e];
        while let Some(a) = queue.pop() {
            for (g, gm) in gens {
                if gm.len() != c.n_morphisms() || gm.iter().any(|&f| f >= c.n_morphisms()) {
                    return Err(Error::InvalidAction("functor has the wrong size".into()));
                }
                let b = mul_mod(*g, a, e);
                let am = &found[&a];
                let bm: Vec<Mor> = am.iter().map(|&f| gm[f]).collect();
                match found.get(&b) {
                    Some(old) if *old != bm => {
                        return Err(Error::InvalidAction(format!("relation violated at {}", b)));
                    }
                    Some(_) => {}
                    None => {
                        found.insert(b, bm);
                        queue.push(b);
                    }
                }
            }
        }
        let (elements, mor) = found.into_iter().unzip();
        GroupAction::new(c, e, elements, mor)
    }

    /// `G` acting trivially.
    pub fn trivial(c: &Groupoid, e: u64, elements: &[u64]) -> Result<Self> {
        let id: Vec<Mor> = (0..c.n_morphisms()).collect();
        GroupAction::new(c, e, elements.to_vec(), vec![id; elements.len()])
    }

    fn validate(&self, c: &Groupoid) -> Result<()> {
        let e = self.e;
        let bad = |msg: String| Err(Error::InvalidAction(msg));
        if self.elements.windows(2).any(|w| w[0] == w[1]) {
            return bad("repeated group element".into());
        }
        for &a in &self.elements {
            if a.gcd(&e) != 1 {
                return bad(format!("{} is not a unit mod {}", a, e));
            }
            for &b in &self.elements {
                if self.index(mul_mod(a, b, e)).is_none() {
                    return bad(format!("{}·{} lies outside the group", a, b));
                }
            }
        }
        let one = self.index(1 % e).ok_or_else(|| Error::InvalidAction("identity missing".into()))?;
        if self.mor[one].iter().enumerate().any(|(f, &g)| f != g) {
            return bad("identity acts non-trivially".into());
        }
        let m = c.n_morphisms();
        for (i, fm) in self.mor.iter().enumerate() {
            let mut seen = vec![false; m];
            for f in 0..m {
                let g = fm[f];
                if seen[g] {
                    return bad(format!("element {} is not bijective on morphisms", self.elements[i]));
                }
                seen[g] = true;
                if c.source(g) != self.obj[i][c.source(f)] || c.target(g) != self.obj[i][c.target(f)] {
                    return bad(format!("element {} does not respect sources and targets", self.elements[i]));
                }
            }
            for g in 0..m {
                for b in 0..c.n_objects() {
                    for &f in c.hom(c.target(g), b) {
                        if fm[c.compose(f, g)] != c.compose(fm[f], fm[g]) {
                            return bad(format!("element {} is not a functor", self.elements[i]));
                        }
                    }
                }
            }
        }
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                let k = self.index(mul_mod(a, b, e)).unwrap();
                if (0..m).any(|f| self.mor[i][self.mor[j][f]] != self.mor[k][f]) {
                    return bad(format!("action of {}·{} is not the composite", a, b));
                }
            }
        }
        Ok(())
    }

    pub fn modulus(&self) -> u64 {
        self.e
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self, a: u64) -> Option<usize> {
        self.elements.binary_search(&(a % self.e)).ok()
    }

    fn idx(&self, a: u64) -> usize {
        self.index(a).unwrap_or_else(|| panic!("{} is not in the acting group", a))
    }

    pub fn contains(&self, a: u64) -> bool {
        self.index(a).is_some()
    }

    pub fn inverse(&self, a: u64) -> u64 {
        let a = a % self.e;
        *self.elements.iter().find(|&&b| mul_mod(a, b, self.e) == 1 % self.e).expect("group element")
    }

    pub fn act_object(&self, a: u64, k: usize) -> usize {
        self.obj[self.idx(a)][k]
    }

    pub fn act_morphism(&self, a: u64, f: Mor) -> Mor {
        self.mor[self.idx(a)][f]
    }

    pub fn object_permutation(&self, a: u64) -> &[usize] {
        &self.obj[self.idx(a)]
    }

    pub fn morphism_permutation(&self, a: u64) -> &[Mor] {
        &self.mor[self.idx(a)]
    }

    /// `^aσ`, with `(^aσ)_{aK} = a(σ_K)`.
    pub fn act_wreath(&self, a: u64, s: &WreathElement) -> WreathElement {
        let i = self.idx(a);
        let (o, m) = (&self.obj[i], &self.mor[i]);
        let n = s.n();
        let mut perm = vec![0; n];
        let mut mor = vec![0; n];
        for k in 0..n {
            perm[o[k]] = o[s.perm[k]];
            mor[o[k]] = m[s.mor[k]];
        }
        WreathElement { perm, mor }
    }

    /// Orbits of `G` on objects, sorted, ordered by least element.
    pub fn object_orbits(&self) -> Vec<Vec<usize>> {
        orbits_under(&self.obj, self.obj.first().map_or(0, |o| o.len()))
    }

    /// Orbits of the subgroup `sub` on objects.
    pub fn subgroup_orbits(&self, sub: &[u64]) -> Vec<Vec<usize>> {
        let perms: Vec<Vec<usize>> = sub.iter().map(|&a| self.obj[self.idx(a)].clone()).collect();
        orbits_under(&perms, self.obj[0].len())
    }

    /// Stabilizer of an object.
    pub fn stabilizer(&self, k: usize) -> Vec<u64> {
        self.elements.iter().zip(&self.obj).filter(|(_, o)| o[k] == k).map(|(&a, _)| a).collect()
    }

    /// Action of the subgroup `sub` on a full subgroupoid whose object set
    /// `sub` preserves; `old` maps new morphism handles
    /// to old ones as returned by [`Groupoid::full_subgroupoid`].
    pub fn restrict(&self, sub_c: &Groupoid, old: &[Mor], sub: &[u64]) -> Result<GroupAction> {
        let new_of: HashMap<Mor, Mor> = old.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let mor = sub
            .iter()
            .map(|&a| {
                let m = &self.mor[self.idx(a)];
                old.iter()
                    .map(|&f| new_of.get(&m[f]).copied().ok_or_else(|| Error::InvalidAction("subset is not stable".into())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        GroupAction::new(sub_c, self.e, sub.to_vec(), mor)
    }
}

fn orbits_under(perms: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for k in 0..n {
        if seen[k] {
            continue;
        }
        let mut orb: Vec<usize> = perms.iter().map(|p| p[k]).collect();
        orb.push(k);
        orb.sort_unstable();
        orb.dedup();
        for &x in &orb {
            seen[x] = true;
        }
        out.push(orb);
    }
    out
}

/// `C ⋊ G`: morphism `(f, a)` with `f: aA → B` has handle `i·#mor(C) + f`
/// where `i` is the index of `a` in the group.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub groupoid: Groupoid,
    pub action: GroupAction,
    base: usize,
}

impl Semidirect {
    pub fn new(c: &Groupoid, act: &GroupAction) -> Semidirect {
        let m = c.n_morphisms();
        let g = act.order();
        let mut src = Vec::with_capacity(m * g);
        let mut tgt = Vec::with_capacity(m * g);
        for &a in act.elements() {
            let ainv = act.inverse(a);
            for f in 0..m {
                src.push(act.act_object(ainv, c.source(f)));
                tgt.push(c.target(f));
            }
        }
        let e = act.modulus();
        // (σ, δ) ∘ (ρ, γ) = (σ ∘ δ(ρ), δγ)
        let groupoid = Groupoid::new(c.n_objects(), src, tgt, |x, y| {
            let (d, s) = (act.elements()[x / m], x % m);
            let (gm, r) = (act.elements()[y / m], y % m);
            let f = c.compose(s, act.act_morphism(d, r));
            act.idx(mul_mod(d, gm, e)) * m + f
        })
        .expect("semidirect product of a groupoid by an action");
        Semidirect { groupoid, action: act.clone(), base: m }
    }

    pub fn handle(&self, a: u64, f: Mor) -> Mor {
        self.action.idx(a) * self.base + f
    }

    /// `(a, f)` for a handle.
    pub fn split(&self, h: Mor) -> (u64, Mor) {
        (self.action.elements()[h / self.base], h % self.base)
    }

    /// Mask of the wide subgroupoid `C = C ⋊ {1}`.
    pub fn base_mask(&self) -> Vec<bool> {
        let one = self.action.idx(1 % self.action.modulus());
        (0..self.groupoid.n_morphisms()).map(|h| h / self.base == one).collect()
    }

    pub fn embed(&self, s: &WreathElement) -> WreathElement {
        let one = 1 % self.action.modulus();
        WreathElement { perm: s.perm.clone(), mor: s.mor.iter().map(|&f| self.handle(one, f)).collect() }
    }

    /// Inverse of [`Semidirect::embed`]; `None` off the base.
    pub fn retract(&self, s: &WreathElement) -> Option<WreathElement> {
        let one = 1 % self.action.modulus();
        let mor = s
            .mor
            .iter()
            .map(|&h| {
                let (a, f) = self.split(h);
                (a == one).then_some(f)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(WreathElement { perm: s.perm.clone(), mor })
    }

    /// `τ_a`, with component `(id_{aY}, a): Y → aY`.
    pub fn tau(&self, a: u64) -> WreathElement {
        let o = self.action.object_permutation(a);
        let perm = o.to_vec();
        let mor = o.iter().map(|&ay| self.handle(a, self.groupoid.id(ay) % self.base)).collect();
        WreathElement { perm, mor }
    }
}

/// `C^G`: objects are `G`-orbits, morphisms the `G`-equivariant families.
#[derive(Clone, Debug)]
pub struct InvariantGroupoid {
    pub groupoid: Groupoid,
    pub orbits: Vec<Vec<usize>>,
    /// Component at the least object of the source orbit.
    pub representative: Vec<Mor>,
}

impl InvariantGroupoid {
    pub fn new(c: &Groupoid, act: &GroupAction) -> InvariantGroupoid {
        let orbits = act.object_orbits();
        let mut orbit_of = vec![0; c.n_objects()];
        for (i, o) in orbits.iter().enumerate() {
            for &k in o {
                orbit_of[k] = i;
            }
        }
        let mut rep = Vec::new();
        let mut src = Vec::new();
        let mut tgt = Vec::new();
        for (i, o) in orbits.iter().enumerate() {
            let a0 = o[0];
            let stab = act.stabilizer(a0);
            for b in 0..c.n_objects() {
                for &f in c.hom(a0, b) {
                    if stab.iter().all(|&g| act.act_morphism(g, f) == f) {
                        rep.push(f);
                        src.push(i);
                        tgt.push(orbit_of[b]);
                    }
                }
            }
        }
        let handle: HashMap<Mor, usize> = rep.iter().enumerate().map(|(h, &f)| (f, h)).collect();
        let family_at = |f: Mor, y: usize| -> Mor {
            // component at y of the family through f
            let a0 = c.source(f);
            let g = act.elements().iter().copied().find(|&g| act.act_object(g, a0) == y).expect("same orbit");
            act.act_morphism(g, f)
        };
        let groupoid = Groupoid::new(orbits.len(), src, tgt, |x, y| {
            let (f, g) = (rep[x], rep[y]);
            handle[&c.compose(family_at(f, c.target(g)), g)]
        })
        .expect("invariant groupoid");
        InvariantGroupoid { groupoid, orbits, representative: rep }
    }

    /// All components `(K, σ_K)` of the family with handle `h`.
    pub fn components(&self, c: &Groupoid, act: &GroupAction, h: Mor) -> Vec<(usize, Mor)> {
        let f = self.representative[h];
        let a0 = c.source(f);
        let mut out: Vec<(usize, Mor)> = act
            .elements()
            .iter()
            .map(|&g| (act.act_object(g, a0), act.act_morphism(g, f)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}
