// SPDX-License-Identifier: MIT OR Apache-2.0

//! Dense linear algebra over `F_p` and rational reconstruction, for
//! multi-modular computations with `p < 2^31`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::zp::inv_mod;

/// Square matrix over `F_p`, row major.
pub type ModMatrix = Vec<Vec<u64>>;

/// Primes below `2^31`, descending.
pub fn large_primes() -> impl Iterator<Item = u64> {
    ((1u64 << 30)..(1u64 << 31)).rev().filter(|&n| n % 2 == 1 && is_prime(n))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn reduce(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

/// `x mod p` for a rational whose denominator is prime to `p`.
pub fn reduce_rational(x: &BigRational, p: u64) -> Option<u64> {
    let d = reduce(x.denom(), p);
    if d == 0 {
        return None;
    }
    Some(reduce(x.numer(), p) * inv_mod(d, p) % p)
}

pub fn mat_mul(a: &ModMatrix, b: &ModMatrix, p: u64) -> ModMatrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![0u64; n];
            for (k, &x) in row.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (o, &y) in out.iter_mut().zip(&b[k]) {
                    *o = (*o + x * y) % p;
                }
            }
            out
        })
        .collect()
}

pub fn mat_vec(a: &ModMatrix, v: &[u64], p: u64) -> Vec<u64> {
    a.iter().map(|row| row.iter().zip(v).fold(0, |acc, (&x, &y)| (acc + x * y) % p)).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut ModMatrix, p: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(k) = (r..rows).find(|&k| m[k][c] != 0) else { continue };
        m.swap(r, k);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = (*x + p - f * y % p) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel.
pub fn kernel(m: &ModMatrix, p: u64) -> Vec<Vec<u64>> {
    let mut r = m.clone();
    let pivots = rref(&mut r, p);
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - r[row][f]) % p;
            }
            v
        })
        .collect()
}

/// The unique `x` with `A·x = b`, where `A` is given by its columns.
pub fn solve_unique(columns: &[Vec<u64>], b: &[u64], p: u64) -> Option<Vec<u64>> {
    let k = columns.len();
    let mut aug: ModMatrix = (0..b.len())
        .map(|i| columns.iter().map(|c| c[i]).chain(std::iter::once(b[i])).collect())
        .collect();
    let pivots = rref(&mut aug, p);
    if pivots != (0..k).collect::<Vec<_>>() {
        return None;
    }
    Some((0..k).map(|i| aug[i][k]).collect())
}

/// Chinese remaindering of `x mod m` with `y mod p`.
pub fn crt(x: &BigInt, m: &BigInt, y: u64, p: u64) -> BigInt {
    let xm = reduce(x, p);
    let minv = inv_mod(reduce(m, p), p);
    let t = (y + p - xm) % p * minv % p;
    x + m * BigInt::from(t)
}

/// The fraction `a/b ≡ x mod m` with `|a|, b ≤ sqrt(m/2)`, if any.
pub fn rational_reconstruction(x: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), x.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}
