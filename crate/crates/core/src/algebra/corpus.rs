// SPDX-License-Identifier: MIT OR Apache-2.0

//! Builders for group rings, monogenic orders and products, plus the bundled
//! example corpus.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::structure::{Base, StructureAlgebra};
use crate::poly::Polynomial;

/// `k[X]/(f)` for monic integral `f`, in the power basis.
pub fn polynomial_quotient(f: &Polynomial, base: Base) -> StructureAlgebra {
    assert!(f.is_monic() && f.deg() >= 1);
    let d = f.deg();
    let powers: Vec<Polynomial> = (0..2 * d - 1)
        .map(|s| Polynomial::monomial(BigRational::one(), s).rem(f))
        .collect();
    let products = (0..d * d)
        .map(|hi| {
            let p = &powers[hi / d + hi % d];
            (0..d).filter(|&j| !p.coeff(j).is_zero()).map(|j| (j, p.coeff(j))).collect()
        })
        .collect();
    let mut unit = vec![BigRational::zero(); d];
    unit[0] = BigRational::one();
    StructureAlgebra::from_sparse(base, d, products, unit)
}

/// `Z[ζ_e]` or `Q(ζ_e)`.
pub fn cyclotomic_order(e: u64, base: Base) -> StructureAlgebra {
    polynomial_quotient(&Polynomial::cyclotomic(e), base)
}

/// `Z[√d]`.
pub fn quadratic_order(d: i64, base: Base) -> StructureAlgebra {
    polynomial_quotient(&Polynomial::from_ints(&[-d, 0, 1]), base)
}

/// Group ring of `Z/n_1 × … × Z/n_r`, basis indexed in mixed radix with
/// the first factor varying slowest.
pub fn group_ring(orders: &[u64], base: Base) -> StructureAlgebra {
    let size: usize = orders.iter().map(|&n| n as usize).product();
    let digits = |mut g: usize| -> Vec<usize> {
        let mut d = vec![0; orders.len()];
        for (k, &n) in orders.iter().enumerate().rev() {
            d[k] = g % n as usize;
            g /= n as usize;
        }
        d
    };
    let index = |d: &[usize]| d.iter().zip(orders).fold(0, |acc, (x, &n)| acc * n as usize + x);
    let mut products = Vec::with_capacity(size * size);
    for g in 0..size {
        let dg = digits(g);
        for h in 0..size {
            let dh = digits(h);
            let s: Vec<usize> = dg.iter().zip(&dh).zip(orders).map(|((a, b), &n)| (a + b) % n as usize).collect();
            products.push(vec![(index(&s), BigRational::one())]);
        }
    }
    let mut unit = vec![BigRational::zero(); size];
    unit[0] = BigRational::one();
    StructureAlgebra::from_sparse(base, size, products, unit)
}

/// `A × B` with the basis of `A` first.
pub fn direct_product(a: &StructureAlgebra, b: &StructureAlgebra) -> StructureAlgebra {
    let (n, m) = (a.rank(), b.rank());
    let r = n + m;
    let mut products = vec![Vec::new(); r * r];
    for h in 0..n {
        for i in 0..n {
            products[h * r + i] = a.basis_product(h, i).to_vec();
        }
    }
    for h in 0..m {
        for i in 0..m {
            products[(n + h) * r + n + i] = b.basis_product(h, i).iter().map(|(j, c)| (n + j, c.clone())).collect();
        }
    }
    let unit = a.unit().iter().chain(b.unit()).cloned().collect();
    let base = if a.base() == Base::Z && b.base() == Base::Z { Base::Z } else { Base::Q };
    StructureAlgebra::from_sparse(base, r, products, unit)
}

/// The ring `Z` (or `Q`).
pub fn integers(base: Base) -> StructureAlgebra {
    StructureAlgebra::from_sparse(base, 1, vec![vec![(0, BigRational::one())]], vec![BigRational::one()])
}

/// Named examples shipped with the CLI.
pub fn corpus() -> Vec<(&'static str, StructureAlgebra)> {
    let s2 = quadratic_order(2, Base::Z);
    vec![
        ("Z", integers(Base::Z)),
        ("Z[sqrt2]", s2.clone()),
        ("Z[sqrt2]^2", direct_product(&s2, &s2)),
        ("Z[zeta8]", cyclotomic_order(8, Base::Z)),
        ("Z[C2]", group_ring(&[2], Base::Z)),
        ("Z[C2xC2]", group_ring(&[2, 2], Base::Z)),
        ("Z[C4]", group_ring(&[4], Base::Z)),
        ("Z[C6]", group_ring(&[6], Base::Z)),
        ("Q[C4]", group_ring(&[4], Base::Q)),
        ("Q(zeta8)", cyclotomic_order(8, Base::Q)),
    ]
    .into_iter()
    .map(|(n, a)| (n, a.with_name(n)))
    .collect()
}

pub fn corpus_entry(name: &str) -> Option<StructureAlgebra> {
    corpus().into_iter().find(|(n, _)| *n == name).map(|(_, a)| a)
}
