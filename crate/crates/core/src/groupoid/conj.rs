// SPDX-License-Identifier: MIT OR Apache-2.0

use std::collections::BTreeMap;

use super::core::{Groupoid, Mor, WreathElement};

/// Canonical representative `(object, handle)` of the `C`-conjugacy class of
/// an automorphism: the least pair among all `h ∘ g ∘ h⁻¹`.
pub fn label_class(c: &Groupoid, g: Mor) -> (usize, Mor) {
    let k = c.source(g);
    let mut best = (k, g);
    for l in 0..c.n_objects() {
        for &h in c.hom(k, l) {
            let x = c.compose(h, c.compose(g, c.inv(h)));
            best = best.min((l, x));
        }
    }
    best
}

/// Automorphisms of `source(g)` commuting with `g`.
pub fn centralizer(c: &Groupoid, g: Mor) -> Vec<Mor> {
    let k = c.source(g);
    c.aut(k).iter().copied().filter(|&h| c.compose(h, g) == c.compose(g, h)).collect()
}

/// Type of a wreath element: `(orbit length, label class) ↦ count`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ConjType {
    pub entries: Vec<(usize, (usize, Mor), usize)>,
}

impl ConjType {
    /// `Σ k·c(σ, k, γ)`.
    pub fn object_count(&self) -> usize {
        self.entries.iter().map(|(k, _, m)| k * m).sum()
    }

    /// Number of orbits.
    pub fn orbit_count(&self) -> usize {
        self.entries.iter().map(|e| e.2).sum()
    }
}

pub fn conj_type(c: &Groupoid, s: &WreathElement) -> ConjType {
    let mut counts: BTreeMap<(usize, (usize, Mor)), usize> = BTreeMap::new();
    for orbit in c.orbits(s) {
        let label = label_class(c, c.lambda(s, orbit[0]));
        *counts.entry((orbit.len(), label)).or_default() += 1;
    }
    ConjType { entries: counts.into_iter().map(|((k, l), m)| (k, l, m)).collect() }
}

/// `#{α ∈ wreath(C) | αρ = ρα}` by the centralizer-order formula.
pub fn centralizer_order(c: &Groupoid, s: &WreathElement) -> u128 {
    let t = conj_type(c, s);
    let mut out: u128 = 1;
    for (k, (_, g), m) in t.entries {
        let z = centralizer(c, g).len() as u128;
        for i in 1..=m as u128 {
            out *= i * k as u128 * z;
        }
    }
    out
}

/// Per-orbit pieces `α|_O: O → Y` of a transporter, given as
/// `(target orbit index, [(object, target object, component)])`.
type Piece = (usize, Vec<(usize, usize, Mor)>);

/// All `α ∈ wreath(D)` with `αρ = σα`, where `D` is the wide subgroupoid of
/// `C` whose morphisms are flagged in `mask`. Sorted.
pub fn transporter(c: &Groupoid, mask: &[bool], rho: &WreathElement, sigma: &WreathElement) -> Vec<WreathElement> {
    let r_orbits = c.orbits(rho);
    let s_orbits = c.orbits(sigma);
    if r_orbits.len() != s_orbits.len() {
        return Vec::new();
    }
    let pieces: Vec<Vec<Piece>> = r_orbits
        .iter()
        .map(|o| orbit_pieces(c, mask, rho, sigma, o, &s_orbits))
        .collect();
    if pieces.iter().any(|p| p.is_empty()) {
        return Vec::new();
    }
    let n = c.n_objects();
    let mut out = Vec::new();
    let mut used = vec![false; s_orbits.len()];
    let mut perm = vec![usize::MAX; n];
    let mut mor = vec![usize::MAX; n];
    assemble(&pieces, 0, &mut used, &mut perm, &mut mor, &mut out);
    out.sort();
    out
}

fn orbit_pieces(
    c: &Groupoid,
    mask: &[bool],
    rho: &WreathElement,
    sigma: &WreathElement,
    orbit: &[usize],
    s_orbits: &[Vec<usize>],
) -> Vec<Piece> {
    let n = orbit.len();
    let k0 = orbit[0];
    let lr = c.lambda(rho, k0);
    // (ρ^m)_K for m = 0..n-1
    let mut rho_pow = Vec::with_capacity(n);
    let mut cur = c.id(k0);
    for m in 0..n {
        if m > 0 {
            cur = c.compose(rho.mor[orbit[m - 1]], cur);
        }
        rho_pow.push(cur);
    }
    let mut out = Vec::new();
    for (j, y) in s_orbits.iter().enumerate() {
        if y.len() != n {
            continue;
        }
        for &l in y {
            let ls = c.lambda(sigma, l);
            let mut sig_pow = Vec::with_capacity(n);
            let mut cur = c.id(l);
            let mut obj = l;
            for m in 0..n {
                if m > 0 {
                    cur = c.compose(sigma.mor[obj], cur);
                    obj = sigma.perm[obj];
                }
                sig_pow.push((obj, cur));
            }
            for &w in c.hom(k0, l) {
                if !mask[w] || c.compose(w, lr) != c.compose(ls, w) {
                    continue;
                }
                let mut comps = Vec::with_capacity(n);
                let mut ok = true;
                for m in 0..n {
                    let (t, sp) = sig_pow[m];
                    let a = c.compose(sp, c.compose(w, c.inv(rho_pow[m])));
                    if !mask[a] {
                        ok = false;
                        break;
                    }
                    comps.push((orbit[m], t, a));
                }
                if ok {
                    out.push((j, comps));
                }
            }
        }
    }
    out
}

fn assemble(
    pieces: &[Vec<Piece>],
    i: usize,
    used: &mut [bool],
    perm: &mut [usize],
    mor: &mut [Mor],
    out: &mut Vec<WreathElement>,
) {
    if i == pieces.len() {
        out.push(WreathElement { perm: perm.to_vec(), mor: mor.to_vec() });
        return;
    }
    for (j, comps) in &pieces[i] {
        if used[*j] {
            continue;
        }
        used[*j] = true;
        for &(k, t, a) in comps {
            perm[k] = t;
            mor[k] = a;
        }
        assemble(pieces, i + 1, used, perm, mor, out);
        used[*j] = false;
    }
}

/// Whether `ρ` and `σ` are conjugate in `wreath(C)`.
pub fn are_conjugate(c: &Groupoid, rho: &WreathElement, sigma: &WreathElement) -> bool {
    conj_type(c, rho) == conj_type(c, sigma)
}
