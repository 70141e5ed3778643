// SPDX-License-Identifier: MIT OR Apache-2.0

//! Factorization over Q: squarefree split, modular factorization, Hensel
//! lifting and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::polynomial::Polynomial;
use super::zp::{self, Zp};
use crate::error::{Error, Result};

/// Irreducible monic factors with multiplicities, in canonical order.
pub fn factor_rational(f: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (a, mult) in f.squarefree_decomposition() {
        for g in factor_squarefree(&a.primitive_part()) {
            out.push((Polynomial::from_bigints(&g).monic(), mult));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// Whether `f` is irreducible over Q (constants are not).
pub fn is_irreducible(f: &Polynomial) -> bool {
    match factor_rational(f) {
        Ok(fs) => fs.len() == 1 && fs[0].1 == 1,
        Err(_) => false,
    }
}

/// Factors a squarefree primitive integer polynomial into primitive
/// irreducibles with positive leading coefficient.
fn factor_squarefree(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // a factor X is handled directly, keeping constant-term tests meaningful
    if f[0].is_zero() {
        let mut rest = factor_squarefree(&f[1..]);
        rest.push(vec![BigInt::zero(), BigInt::one()]);
        return rest;
    }
    let (p, factors) = choose_prime(f);
    if factors.len() == 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    let bound = coefficient_bound(f);
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    while m <= &bound * 2 {
        m = &m * &m;
    }
    let lifted = multi_lift(f, &factors, p, &m);
    recombine(f.to_vec(), lc, lifted, &m)
}

const PRIME_CANDIDATES: usize = 5;

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&q| (3..).step_by(2).take_while(|d| d * d <= q).all(|d| q % d != 0))
}

fn reduce(f: &[BigInt], p: u64) -> Zp {
    let pb = BigInt::from(p);
    let mut v: Zp = f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Picks the good prime with the fewest modular factors among the first few
/// candidates and returns its monic irreducible factors.
fn choose_prime(f: &[BigInt]) -> (u64, Vec<Zp>) {
    let n = f.len() - 1;
    let mut best: Option<(u64, Vec<(Zp, usize)>, usize)> = None;
    let mut tried = 0;
    for p in small_primes() {
        let fp = reduce(f, p);
        if fp.len() != n + 1 {
            continue;
        }
        let fm = zp::monic(&fp, p);
        if zp::deg(&zp::gcd(&fm, &zp::derivative(&fm, p), p)) > 0 {
            continue;
        }
        let d = zp::ddf(&fm, p);
        let count: usize = d.iter().map(|(g, k)| zp::deg(g) / k).sum();
        if best.as_ref().is_none_or(|b| count < b.2) {
            best = Some((p, d, count));
        }
        tried += 1;
        if tried == PRIME_CANDIDATES || count == 1 {
            break;
        }
    }
    let (p, d, _) = best.expect("some prime is good for a squarefree polynomial");
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let mut factors = Vec::new();
    for (g, k) in d {
        factors.extend(zp::edf(&g, k, p, &mut rng));
    }
    factors.sort();
    (p, factors)
}

/// Bound on the absolute value of coefficients of `lc(f)·g` for any factor
/// `g` of `f` scaled to have leading coefficient `lc(f)`.
fn coefficient_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let norm = f.iter().map(|c| c.abs()).max().unwrap();
    let lc = f[n].abs();
    (BigInt::one() << n) * BigInt::from(n + 1) * norm * lc
}

// Polynomials over Z/mZ with BigInt coefficients in [0, m).

fn zm_trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zm_reduce(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    zm_trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zm_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm_trim((0..n).map(|i| (a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).mod_floor(m)).collect())
}

fn zm_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm_trim((0..n).map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(m)).collect())
}

fn zm_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zm_reduce(&out, m)
}

/// Division by a monic divisor.
fn zm_div_rem_monic(a: &[BigInt], d: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    if a.len() < d.len() {
        return (Vec::new(), a.to_vec());
    }
    let dd = d.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, y) in d.iter().enumerate() {
            r[k + j] = (&r[k + j] - &c * y).mod_floor(m);
        }
        q[k] = c;
    }
    r.truncate(dd);
    (zm_trim(q), zm_reduce(&r, m))
}

fn from_zp(a: &Zp) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step: from `f ≡ g·h`, `s·g + t·h ≡ 1 (mod m)` with
/// `h` monic, produce the same relations modulo `m²`.
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let m2 = m * m;
    let e = zm_sub(&zm_reduce(f, &m2), &zm_mul(g, h, &m2), &m2);
    let (q, r) = zm_div_rem_monic(&zm_mul(s, &e, &m2), h, &m2);
    let g1 = zm_add(&zm_add(g, &zm_mul(t, &e, &m2), &m2), &zm_mul(&q, g, &m2), &m2);
    let h1 = zm_add(h, &r, &m2);
    let b = zm_sub(&zm_add(&zm_mul(s, &g1, &m2), &zm_mul(t, &h1, &m2), &m2), &[BigInt::one()], &m2);
    let (c, d) = zm_div_rem_monic(&zm_mul(s, &b, &m2), &h1, &m2);
    let s1 = zm_sub(s, &d, &m2);
    let t1 = zm_sub(&zm_sub(t, &zm_mul(t, &b, &m2), &m2), &zm_mul(&c, &g1, &m2), &m2);
    (g1, h1, s1, t1)
}

/// Lifts `f ≡ lc·∏ u_i (mod p)` to monic `u_i` modulo `m` (a power of `p`
/// reached by repeated squaring).
fn multi_lift(f: &[BigInt], factors: &[Zp], p: u64, m: &BigInt) -> Vec<Vec<BigInt>> {
    let pb = BigInt::from(p);
    let mut out = Vec::new();
    let mut cur = zm_reduce(f, m);
    for i in 0..factors.len() - 1 {
        // split cur ≡ lc(cur)·u_i · (∏_{j>i} u_j)
        let rest = factors[i + 1..].iter().fold(vec![1u64], |acc, u| zp::mul(&acc, u, p));
        let lc = cur.last().unwrap().mod_floor(&pb).to_u64().unwrap();
        let g0 = zp::scale(&factors[i], lc, p);
        let (one, s0, t0) = zp::ext_gcd(&g0, &rest, p);
        debug_assert_eq!(one, vec![1]);
        let (mut g, mut h, mut s, mut t) = (from_zp(&g0), from_zp(&rest), from_zp(&s0), from_zp(&t0));
        let mut mm = pb.clone();
        while &mm < m {
            let r = hensel_step(&cur, &g, &h, &s, &t, &mm);
            g = r.0;
            h = r.1;
            s = r.2;
            t = r.3;
            mm = &mm * &mm;
        }
        let lcg = g.last().unwrap().clone();
        let inv = lcg.modpow(&(phi_of_prime_power(p, m) - BigInt::one()), m);
        out.push(zm_reduce(&g.iter().map(|c| c * &inv).collect::<Vec<_>>(), m));
        cur = h;
    }
    out.push(cur);
    out
}

/// `φ(m)` for `m` a power of `p`.
fn phi_of_prime_power(p: u64, m: &BigInt) -> BigInt {
    m / BigInt::from(p) * BigInt::from(p - 1)
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m >> 1u32;
    a.iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect()
}

fn primitive(a: &[BigInt]) -> Vec<BigInt> {
    let g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut v: Vec<BigInt> = a.iter().map(|c| c / &g).collect();
    if v.last().is_some_and(|c| c.is_negative()) {
        v = v.into_iter().map(|c| -c).collect();
    }
    v
}

/// Exact quotient over Z, if `d` divides `a`. Stops at the first leading
/// coefficient not divisible by `lc(d)`.
fn int_div(a: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    let dd = d.len() - 1;
    if a.len() < d.len() {
        return None;
    }
    let lc = &d[dd];
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + dd].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, y) in d.iter().enumerate() {
            r[k + j] -= &c * y;
        }
        q[k] = c;
    }
    if r[..dd].iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn recombine(mut f: Vec<BigInt>, mut lc: BigInt, mut us: Vec<Vec<BigInt>>, m: &BigInt) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= us.len() {
        let mut found = None;
        for subset in Subsets::new(us.len(), size) {
            // constant-term test before building the full product
            let c0 = subset.iter().fold(lc.clone(), |acc, &i| (acc * &us[i][0]).mod_floor(m));
            let c0 = symmetric(&[c0], m).remove(0);
            if c0.is_zero() || !(&lc * &f[0]).is_multiple_of(&c0) {
                continue;
            }
            let g = subset.iter().fold(vec![lc.clone()], |acc, &i| zm_mul(&acc, &us[i], m));
            let g = primitive(&symmetric(&g, m));
            if let Some(q) = int_div(&f, &g) {
                found = Some((subset, g, q));
                break;
            }
        }
        match found {
            Some((subset, g, q)) => {
                out.push(g);
                f = q;
                lc = f.last().unwrap().clone();
                us = us.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, u)| u).collect();
            }
            None => size += 1,
        }
    }
    out.push(primitive(&f));
    out
}

/// k-subsets of `0..n` in lexicographic order.
struct Subsets {
    n: usize,
    idx: Vec<usize>,
    first: bool,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets { n, idx: (0..k).collect(), first: true }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let k = self.idx.len();
        if k > self.n {
            return None;
        }
        if self.first {
            self.first = false;
            return Some(self.idx.clone());
        }
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(self.idx.clone());
            }
        }
        None
    }
}

/// Roots in Q of `f`.
pub fn rational_roots(f: &Polynomial) -> Result<Vec<BigRational>> {
    Ok(factor_rational(f)?
        .into_iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, _)| -g.coeff(0))
        .collect())
}
