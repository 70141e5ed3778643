// SPDX-License-Identifier: MIT OR Apache-2.0

use crate::error::{Error, Result};

/// Morphism handle.
pub type Mor = usize;

const NONE: u32 = u32::MAX;

/// Finite groupoid with morphisms as integer handles and a dense
/// composition table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Groupoid {
    n_obj: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
    homs: Vec<Vec<Mor>>,
    comp: Vec<u32>,
    id: Vec<Mor>,
    inv: Vec<Mor>,
}

impl Groupoid {
    /// Builds from source/target lists and a composition rule
    /// `compose(f, g) = f ∘ g` (called only when `tgt(g) = src(f)`).
    pub fn new(
        n_obj: usize,
        src: Vec<usize>,
        tgt: Vec<usize>,
        mut compose: impl FnMut(Mor, Mor) -> Mor,
    ) -> Result<Self> {
        let m = src.len();
        if tgt.len() != m {
            return Err(Error::InvalidGroupoid("source and target lists differ in length".into()));
        }
        if m >= NONE as usize {
            return Err(Error::ResourceCap("too many morphisms".into()));
        }
        let mut homs = vec![Vec::new(); n_obj * n_obj];
        for f in 0..m {
            if src[f] >= n_obj || tgt[f] >= n_obj {
                return Err(Error::InvalidGroupoid(format!("morphism {} has an unknown endpoint", f)));
            }
            homs[src[f] * n_obj + tgt[f]].push(f);
        }
        let mut comp = vec![NONE; m * m];
        for g in 0..m {
            for b in 0..n_obj {
                for &f in &homs[tgt[g] * n_obj + b] {
                    let h = compose(f, g);
                    if h >= m || src[h] != src[g] || tgt[h] != tgt[f] {
                        return Err(Error::InvalidGroupoid(format!("composite of {} and {} is ill-typed", f, g)));
                    }
                    comp[f * m + g] = h as u32;
                }
            }
        }
        let mut id = Vec::with_capacity(n_obj);
        for k in 0..n_obj {
            let e = homs[k * n_obj + k]
                .iter()
                .copied()
                .find(|&f| comp[f * m + f] as usize == f)
                .ok_or_else(|| Error::InvalidGroupoid(format!("object {} has no identity", k)))?;
            id.push(e);
        }
        for f in 0..m {
            if comp[id[tgt[f]] * m + f] as usize != f || comp[f * m + id[src[f]]] as usize != f {
                return Err(Error::InvalidGroupoid(format!("identity law fails at {}", f)));
            }
        }
        let mut inv = vec![0; m];
        for f in 0..m {
            let (a, b) = (src[f], tgt[f]);
            inv[f] = homs[b * n_obj + a]
                .iter()
                .copied()
                .find(|&g| comp[g * m + f] as usize == id[a] && comp[f * m + g] as usize == id[b])
                .ok_or_else(|| Error::InvalidGroupoid(format!("morphism {} is not invertible", f)))?;
        }
        Ok(Groupoid { n_obj, src, tgt, homs, comp, id, inv })
    }

    /// Checks associativity exhaustively.
    pub fn validate(&self) -> Result<()> {
        let m = self.src.len();
        for h in 0..m {
            for &g in self.homs_from(self.tgt[h]).iter() {
                for &f in self.homs_from(self.tgt[g]).iter() {
                    if self.compose(self.compose(f, g), h) != self.compose(f, self.compose(g, h)) {
                        return Err(Error::InvalidGroupoid(format!("associativity fails at ({}, {}, {})", f, g, h)));
                    }
                }
            }
        }
        Ok(())
    }

    fn homs_from(&self, a: usize) -> Vec<Mor> {
        (0..self.n_obj).flat_map(|b| self.homs[a * self.n_obj + b].iter().copied()).collect()
    }

    pub fn n_objects(&self) -> usize {
        self.n_obj
    }

    pub fn n_morphisms(&self) -> usize {
        self.src.len()
    }

    pub fn source(&self, f: Mor) -> usize {
        self.src[f]
    }

    pub fn target(&self, f: Mor) -> usize {
        self.tgt[f]
    }

    pub fn hom(&self, a: usize, b: usize) -> &[Mor] {
        &self.homs[a * self.n_obj + b]
    }

    pub fn aut(&self, a: usize) -> &[Mor] {
        self.hom(a, a)
    }

    pub fn id(&self, a: usize) -> Mor {
        self.id[a]
    }

    pub fn inv(&self, f: Mor) -> Mor {
        self.inv[f]
    }

    /// `f ∘ g`.
    pub fn compose(&self, f: Mor, g: Mor) -> Mor {
        let h = self.comp[f * self.src.len() + g];
        assert!(h != NONE, "composing non-composable morphisms {} ∘ {}", f, g);
        h as Mor
    }

    pub fn is_isomorphic(&self, a: usize, b: usize) -> bool {
        !self.hom(a, b).is_empty()
    }

    /// `#aut(C) = Σ_K #Aut(K)`.
    pub fn aut_count(&self) -> usize {
        (0..self.n_obj).map(|k| self.aut(k).len()).sum()
    }

    /// Order of an automorphism.
    pub fn order(&self, f: Mor) -> usize {
        let e = self.id[self.src[f]];
        let mut cur = f;
        let mut k = 1;
        while cur != e {
            cur = self.compose(f, cur);
            k += 1;
        }
        k
    }

    /// Full subgroupoid on `objs` (in the given order), with the old handle
    /// of each new morphism.
    pub fn full_subgroupoid(&self, objs: &[usize]) -> (Groupoid, Vec<Mor>) {
        let mut old = Vec::new();
        let mut src = Vec::new();
        let mut tgt = Vec::new();
        let mut new_of = vec![usize::MAX; self.n_morphisms()];
        for (i, &a) in objs.iter().enumerate() {
            for (j, &b) in objs.iter().enumerate() {
                for &f in self.hom(a, b) {
                    new_of[f] = old.len();
                    old.push(f);
                    src.push(i);
                    tgt.push(j);
                }
            }
        }
        let g = Groupoid::new(objs.len(), src, tgt, |f, g| new_of[self.compose(old[f], old[g])])
            .expect("full subgroupoid of a groupoid");
        (g, old)
    }

    /// Connected components, each sorted, ordered by least object.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n_obj];
        let mut out = Vec::new();
        for a in 0..self.n_obj {
            if seen[a] {
                continue;
            }
            let comp: Vec<usize> = (0..self.n_obj).filter(|&b| self.is_isomorphic(a, b)).collect();
            for &b in &comp {
                seen[b] = true;
            }
            out.push(comp);
        }
        out
    }

    /// Mask of all morphisms.
    pub fn full_mask(&self) -> Vec<bool> {
        vec![true; self.n_morphisms()]
    }
}

/// Element `((σ_K)_K, s)` of `End_{2^C}(obj C)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WreathElement {
    pub perm: Vec<usize>,
    pub mor: Vec<Mor>,
}

impl WreathElement {
    pub fn n(&self) -> usize {
        self.perm.len()
    }
}

impl Groupoid {
    pub fn wreath_identity(&self) -> WreathElement {
        WreathElement { perm: (0..self.n_obj).collect(), mor: self.id.clone() }
    }

    pub fn is_wreath_element(&self, s: &WreathElement) -> bool {
        if s.perm.len() != self.n_obj || s.mor.len() != self.n_obj {
            return false;
        }
        let mut seen = vec![false; self.n_obj];
        for k in 0..self.n_obj {
            let t = s.perm[k];
            if t >= self.n_obj || seen[t] {
                return false;
            }
            seen[t] = true;
            let f = s.mor[k];
            if f >= self.n_morphisms() || self.src[f] != k || self.tgt[f] != t {
                return false;
            }
        }
        true
    }

    /// `σ ∘ ρ = ((σ_{r(K)} ∘ ρ_K)_K, s ∘ r)`.
    pub fn wreath_compose(&self, s: &WreathElement, r: &WreathElement) -> WreathElement {
        let n = self.n_obj;
        let mut perm = vec![0; n];
        let mut mor = vec![0; n];
        for k in 0..n {
            let rk = r.perm[k];
            perm[k] = s.perm[rk];
            mor[k] = self.compose(s.mor[rk], r.mor[k]);
        }
        WreathElement { perm, mor }
    }

    /// Checked composition.
    pub fn try_wreath_compose(&self, s: &WreathElement, r: &WreathElement) -> Result<WreathElement> {
        if !self.is_wreath_element(s) || !self.is_wreath_element(r) {
            return Err(Error::Incompatible("not wreath elements of this groupoid".into()));
        }
        Ok(self.wreath_compose(s, r))
    }

    /// `σ⁻¹ = (((σ_{s⁻¹L})⁻¹)_L, s⁻¹)`.
    pub fn wreath_invert(&self, s: &WreathElement) -> WreathElement {
        let n = self.n_obj;
        let mut perm = vec![0; n];
        let mut mor = vec![0; n];
        for k in 0..n {
            let l = s.perm[k];
            perm[l] = k;
            mor[l] = self.inv[s.mor[k]];
        }
        WreathElement { perm, mor }
    }

    pub fn wreath_pow(&self, s: &WreathElement, mut k: u64) -> WreathElement {
        let mut acc = self.wreath_identity();
        let mut base = s.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.wreath_compose(&acc, &base);
            }
            base = self.wreath_compose(&base, &base);
            k >>= 1;
        }
        acc
    }

    pub fn wreath_is_identity(&self, s: &WreathElement) -> bool {
        s.perm.iter().enumerate().all(|(k, &t)| t == k) && s.mor == self.id
    }

    /// `λ_σ(K)`: the composite of `σ` around the orbit of `K`, starting at `K`.
    pub fn lambda(&self, s: &WreathElement, k: usize) -> Mor {
        let mut cur = s.mor[k];
        let mut obj = s.perm[k];
        while obj != k {
            cur = self.compose(s.mor[obj], cur);
            obj = s.perm[obj];
        }
        cur
    }

    /// Cycles of the object permutation, each starting at its least object,
    /// ordered by that object.
    pub fn orbits(&self, s: &WreathElement) -> Vec<Vec<usize>> {
        perm_cycles(&s.perm)
    }

    /// Whether the object permutation is a single cycle.
    pub fn is_transitive(&self, s: &WreathElement) -> bool {
        perm_cycles(&s.perm).len() <= 1
    }
}

/// Cycles of a permutation, each starting at its least element.
pub fn perm_cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for k in 0..perm.len() {
        if seen[k] {
            continue;
        }
        let mut cyc = vec![k];
        seen[k] = true;
        let mut c = perm[k];
        while c != k {
            seen[c] = true;
            cyc.push(c);
            c = perm[c];
        }
        out.push(cyc);
    }
    out
}
