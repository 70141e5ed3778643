// SPDX-License-Identifier: MIT OR Apache-2.0

//! Dense polynomials over `F_p` for odd primes `p < 2^31`, coefficients low
//! to high, always trimmed.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Zp = Vec<u64>;

fn trim(mut a: Zp) -> Zp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn deg(a: &Zp) -> usize {
    a.len().saturating_sub(1)
}

pub fn add(a: &Zp, b: &Zp, p: u64) -> Zp {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p).collect())
}

pub fn sub(a: &Zp, b: &Zp, p: u64) -> Zp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn mul(a: &Zp, b: &Zp, p: u64) -> Zp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub fn scale(a: &Zp, c: u64, p: u64) -> Zp {
    trim(a.iter().map(|&x| x * c % p).collect())
}

pub fn monic(a: &Zp, p: u64) -> Zp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv_mod(l, p), p),
    }
}

pub fn div_rem(a: &Zp, d: &Zp, p: u64) -> (Zp, Zp) {
    assert!(!d.is_empty());
    if a.len() < d.len() {
        return (Vec::new(), a.clone());
    }
    let dd = d.len() - 1;
    let inv = inv_mod(*d.last().unwrap(), p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd] * inv % p;
        if c == 0 {
            continue;
        }
        for (j, &y) in d.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * y % p) % p;
        }
        q[k] = c;
    }
    r.truncate(dd);
    (trim(q), trim(r))
}

pub fn rem(a: &Zp, d: &Zp, p: u64) -> Zp {
    div_rem(a, d, p).1
}

pub fn gcd(a: &Zp, b: &Zp, p: u64) -> Zp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `(g, s, t)` with `s·a + t·b = g` monic.
pub fn ext_gcd(a: &Zp, b: &Zp, p: u64) -> (Zp, Zp, Zp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    let l = inv_mod(*r0.last().expect("nonzero gcd"), p);
    (scale(&r0, l, p), scale(&s0, l, p), scale(&t0, l, p))
}

pub fn derivative(a: &Zp, p: u64) -> Zp {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
}

/// `b^e mod m`.
pub fn pow_rem(b: &Zp, e: &BigUint, m: &Zp, p: u64) -> Zp {
    let mut acc = vec![1u64];
    let base = rem(b, m, p);
    for i in (0..e.bits()).rev() {
        acc = rem(&mul(&acc, &acc, p), m, p);
        if e.bit(i) {
            acc = rem(&mul(&acc, &base, p), m, p);
        }
    }
    rem(&acc, m, p)
}

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// `(g_d, d)` where `g_d` is the product of the irreducible factors of degree d.
pub fn ddf(f: &Zp, p: u64) -> Vec<(Zp, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: Zp = vec![0, 1];
    let pe = BigUint::from(p);
    let mut h = x.clone();
    let mut d = 1;
    while deg(&f) >= 2 * d {
        h = pow_rem(&h, &pe, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if deg(&g) > 0 {
            f = div_rem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, d));
        }
        d += 1;
    }
    if deg(&f) > 0 {
        let dd = deg(&f);
        out.push((f, dd));
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus) of a monic product of
/// irreducibles of degree `d`.
pub fn edf(f: &Zp, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Zp> {
    let n = deg(f);
    if n == d {
        return vec![f.clone()];
    }
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1u32;
    loop {
        let a: Zp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&a) == 0 {
            continue;
        }
        let g = gcd(&a, f, p);
        let g = if deg(&g) > 0 && deg(&g) < n {
            g
        } else {
            let b = sub(&pow_rem(&a, &e, f, p), &vec![1], p);
            gcd(&b, f, p)
        };
        if deg(&g) > 0 && deg(&g) < n {
            let q = div_rem(f, &g, p).0;
            let mut out = edf(&g, d, p, rng);
            out.extend(edf(&q, d, p, rng));
            return out;
        }
    }
}

pub fn is_zero(a: &Zp) -> bool {
    a.iter().all(|x| x.is_zero())
}
