// SPDX-License-Identifier: MIT OR Apache-2.0

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Pointed set with a partial product in which `1` is a two-sided unit and
/// the only idempotent.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Grid {
    labels: Vec<String>,
    unit: usize,
    /// `table[s·n + t] = s*t` when defined.
    table: Vec<Option<usize>>,
}

impl Grid {
    /// Builds from a list of defined products `(s, t, s*t)`; unit products
    /// are added automatically.
    pub fn new(labels: Vec<String>, unit: usize, products: &[(usize, usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if unit >= n {
            return Err(Error::InvalidGrid("unit is not an element".into()));
        }
        let mut table = vec![None; n * n];
        for s in 0..n {
            table[unit * n + s] = Some(s);
            table[s * n + unit] = Some(s);
        }
        for &(s, t, u) in products {
            if s >= n || t >= n || u >= n {
                return Err(Error::InvalidGrid(format!("product ({}, {}) -> {} is out of range", s, t, u)));
            }
            match table[s * n + t] {
                Some(v) if v != u => {
                    return Err(Error::InvalidGrid(format!(
                        "{} * {} is declared as both {} and {}",
                        labels[s], labels[t], labels[v], labels[u]
                    )))
                }
                _ => table[s * n + t] = Some(u),
            }
        }
        let g = Grid { labels, unit, table };
        g.check()?;
        Ok(g)
    }

    fn check(&self) -> Result<()> {
        let n = self.len();
        let mut seen = BTreeSet::new();
        for l in &self.labels {
            if !seen.insert(l) {
                return Err(Error::InvalidGrid(format!("duplicate label {}", l)));
            }
        }
        for s in 0..n {
            if self.mul(self.unit, s) != Some(s) || self.mul(s, self.unit) != Some(s) {
                return Err(Error::InvalidGrid(format!("1 is not a unit for {}", self.labels[s])));
            }
            if s != self.unit && self.mul(s, s) == Some(s) {
                return Err(Error::InvalidGrid(format!("{} is idempotent", self.labels[s])));
            }
        }
        Ok(())
    }

    /// The trivial grid `{1}`.
    pub fn trivial() -> Self {
        Grid { labels: vec!["0".into()], unit: 0, table: vec![Some(0)] }
    }

    /// `Z/qZ` with elements labelled by residues.
    pub fn cyclic(q: u64) -> Self {
        AbelianGroup::new(vec![q]).to_grid()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn label(&self, s: usize) -> &str {
        &self.labels[s]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn mul(&self, s: usize, t: usize) -> Option<usize> {
        self.table[s * self.len() + t]
    }

    /// All defined products `(s, t, s*t)` with `s, t ≠ 1`.
    pub fn products(&self) -> Vec<(usize, usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for s in 0..n {
            for t in 0..n {
                if s == self.unit || t == self.unit {
                    continue;
                }
                if let Some(u) = self.mul(s, t) {
                    out.push((s, t, u));
                }
            }
        }
        out
    }

    /// Smallest subgrid containing `gens` and `1`.
    pub fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = gens.iter().copied().collect();
        set.insert(self.unit);
        loop {
            let mut new = Vec::new();
            for &s in &set {
                for &t in &set {
                    if let Some(u) = self.mul(s, t) {
                        if !set.contains(&u) {
                            new.push(u);
                        }
                    }
                }
            }
            if new.is_empty() {
                return set;
            }
            set.extend(new);
        }
    }

    /// Whether `f` (given on indices) is a morphism of grids into `target`.
    pub fn check_morphism(&self, f: &[usize], target: &Grid) -> Result<()> {
        if f.len() != self.len() {
            return Err(Error::NotAMorphism(format!("map has {} entries for {} elements", f.len(), self.len())));
        }
        if let Some(&bad) = f.iter().find(|&&x| x >= target.len()) {
            return Err(Error::NotAMorphism(format!("image {} is out of range", bad)));
        }
        if f[self.unit] != target.unit {
            return Err(Error::NotAMorphism("unit is not preserved".into()));
        }
        for (s, t, u) in self.products() {
            if target.mul(f[s], f[t]) != Some(f[u]) {
                return Err(Error::NotAMorphism(format!(
                    "f({}) * f({}) is not f({})",
                    self.labels[s], self.labels[t], self.labels[u]
                )));
            }
        }
        Ok(())
    }

    /// Coproduct in the category of grids. Returns the grid and, per input,
    /// the index map into it.
    pub fn coproduct(grids: &[Grid]) -> (Grid, Vec<Vec<usize>>) {
        let mut labels = vec!["1".to_string()];
        let mut maps = Vec::with_capacity(grids.len());
        for (i, g) in grids.iter().enumerate() {
            let mut m = vec![0; g.len()];
            for s in 0..g.len() {
                if s != g.unit {
                    m[s] = labels.len();
                    labels.push(format!("{}:{}", i, g.labels[s]));
                }
            }
            maps.push(m);
        }
        let mut products = Vec::new();
        for (g, m) in grids.iter().zip(&maps) {
            for (s, t, u) in g.products() {
                products.push((m[s], m[t], m[u]));
            }
        }
        let grid = Grid::new(labels, 0, &products).expect("coproduct of grids is a grid");
        (grid, maps)
    }

    /// `⟨[g] | [1] = 1, [g][h] = [g*h]⟩` with the unit generator eliminated
    /// and trivially reducible relators removed. The index map sends each
    /// element to its generator, `None` for the unit.
    pub fn groupify(&self) -> (GroupPresentation, Vec<Option<usize>>) {
        let n = self.len();
        let mut gen_of = vec![None; n];
        let mut generators = Vec::new();
        for (s, slot) in gen_of.iter_mut().enumerate() {
            if s != self.unit {
                *slot = Some(generators.len());
                generators.push(self.labels[s].clone());
            }
        }
        let mut seen = BTreeSet::new();
        let mut relators = Vec::new();
        for (s, t, u) in self.products() {
            let mut w: Vec<(usize, i32)> = Vec::new();
            w.extend(gen_of[s].map(|g| (g, 1)));
            w.extend(gen_of[t].map(|g| (g, 1)));
            w.extend(gen_of[u].map(|g| (g, -1)));
            let w = cyclic_reduce(free_reduce(w));
            if w.is_empty() {
                continue;
            }
            if seen.insert(w.clone()) {
                relators.push(w);
            }
        }
        (GroupPresentation { generators, relators }, gen_of)
    }
}

fn free_reduce(w: Vec<(usize, i32)>) -> Vec<(usize, i32)> {
    let mut out: Vec<(usize, i32)> = Vec::with_capacity(w.len());
    for (g, e) in w {
        match out.last_mut() {
            Some(last) if last.0 == g => {
                last.1 += e;
                if last.1 == 0 {
                    out.pop();
                }
            }
            _ => out.push((g, e)),
        }
    }
    out
}

fn cyclic_reduce(mut w: Vec<(usize, i32)>) -> Vec<(usize, i32)> {
    while w.len() >= 2 && w[0].0 == w[w.len() - 1].0 {
        let (_, e) = w.pop().expect("nonempty");
        w[0].1 += e;
        if w[0].1 == 0 {
            w.remove(0);
        }
    }
    w
}

/// Finite presentation; words are sequences of `(generator, exponent)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<(usize, i32)>>,
}

impl GroupPresentation {
    pub fn word_to_string(&self, w: &[(usize, i32)]) -> String {
        w.iter()
            .map(|&(g, e)| if e == 1 { self.generators[g].clone() } else { format!("{}^{}", self.generators[g], e) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|w| self.word_to_string(w)).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

/// `Z/m_1 × … × Z/m_r` with elements enumerated in mixed radix, first
/// coordinate slowest.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AbelianGroup {
    pub moduli: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(moduli: Vec<u64>) -> Self {
        assert!(moduli.iter().all(|&m| m >= 1));
        AbelianGroup { moduli }
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().map(|&m| m as usize).product()
    }

    pub fn index(&self, v: &[u64]) -> usize {
        v.iter().zip(&self.moduli).fold(0, |acc, (&x, &m)| acc * m as usize + (x % m) as usize)
    }

    pub fn element(&self, mut i: usize) -> Vec<u64> {
        let mut v = vec![0; self.moduli.len()];
        for (k, &m) in self.moduli.iter().enumerate().rev() {
            v[k] = (i % m as usize) as u64;
            i /= m as usize;
        }
        v
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.moduli).map(|((x, y), m)| (x + y) % m).collect()
    }

    pub fn label(&self, v: &[u64]) -> String {
        if v.is_empty() {
            "0".to_string()
        } else if v.len() == 1 {
            v[0].to_string()
        } else {
            format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        }
    }

    /// The group as a grid with every product defined.
    pub fn to_grid(&self) -> Grid {
        let n = self.order();
        let elems: Vec<Vec<u64>> = (0..n).map(|i| self.element(i)).collect();
        let labels = elems.iter().map(|v| self.label(v)).collect();
        let mut table = vec![None; n * n];
        for (s, a) in elems.iter().enumerate() {
            for (t, b) in elems.iter().enumerate() {
                table[s * n + t] = Some(self.index(&self.add(a, b)));
            }
        }
        Grid { labels, unit: 0, table }
    }
}
