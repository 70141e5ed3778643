// SPDX-License-Identifier: MIT OR Apache-2.0

use grading_forge::linalg::rat;
use grading_forge::poly::{
    cyclotomic_field, factor_over_field, factor_rational, field_isomorphisms, KPoly, NumberField, Polynomial,
};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn p(c: &[i64]) -> Polynomial {
    Polynomial::from_ints(c)
}

fn product(fs: &[(Polynomial, usize)]) -> Polynomial {
    fs.iter().fold(Polynomial::one(), |acc, (g, m)| acc.mul(&g.pow(*m as u32)))
}

/// Exhaustive search for a monic integer factor of degree `d` with
/// coefficients bounded by `h`.
fn has_small_factor(f: &Polynomial, d: usize, h: i64) -> bool {
    let mut c = vec![-h; d];
    loop {
        let mut coeffs = c.clone();
        coeffs.push(1);
        if f.rem(&Polynomial::from_ints(&coeffs)).is_zero() {
            return true;
        }
        let mut i = 0;
        while i < d && c[i] == h {
            c[i] = -h;
            i += 1;
        }
        if i == d {
            return false;
        }
        c[i] += 1;
    }
}

#[test]
fn x_squared_minus_one_splits() {
    let fs = factor_rational(&p(&[-1, 0, 1])).unwrap();
    assert_eq!(fs, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
}

#[test]
fn x4_plus_1_irreducible_matches_exhaustive_search() {
    let f = p(&[1, 0, 0, 0, 1]);
    // any monic integer factor of degree ≤ 2 has coefficients bounded by
    // the Mignotte bound 2^2·√2 < 6
    assert!(!has_small_factor(&f, 1, 6));
    assert!(!has_small_factor(&f, 2, 6));
    assert_eq!(factor_rational(&f).unwrap(), vec![(f.clone(), 1)]);
}

#[test]
fn x8_minus_1_is_cyclotomic_product() {
    let fs = factor_rational(&p(&[-1, 0, 0, 0, 0, 0, 0, 0, 1])).unwrap();
    let polys: Vec<Polynomial> = fs.iter().map(|(g, _)| g.clone()).collect();
    assert_eq!(polys, vec![p(&[-1, 1]), p(&[1, 1]), p(&[1, 0, 1]), p(&[1, 0, 0, 0, 1])]);
}

#[test]
fn repeated_and_rational_factors() {
    // (2X − 1)^2 · (X^2 + X + 1) · X
    let f = p(&[-1, 2]).pow(2).mul(&p(&[1, 1, 1])).mul(&p(&[0, 1]));
    let fs = factor_rational(&f).unwrap();
    assert_eq!(fs.len(), 3);
    assert!(fs.contains(&(Polynomial::new(vec![-BigRational::new(1.into(), 2.into()), BigRational::one()]), 2)));
    assert_eq!(product(&fs), f.monic());
}

#[test]
fn swinnerton_dyer_needs_recombination() {
    // minimal polynomial of √2 + √3 + √5, irreducible but splits mod every prime
    let f = p(&[576, 0, -960, 0, 352, 0, -40, 0, 1]);
    assert_eq!(factor_rational(&f).unwrap().len(), 1);
    let g = f.mul(&p(&[-3, 0, 1]));
    let fs = factor_rational(&g).unwrap();
    assert_eq!(fs.len(), 2);
    assert_eq!(product(&fs), g);
}

#[test]
fn cyclotomic_degree_and_zero_error() {
    assert!(factor_rational(&Polynomial::zero()).is_err());
    for e in 1..=30u64 {
        let phi = Polynomial::cyclotomic(e);
        let fs = factor_rational(&phi).unwrap();
        assert_eq!(fs, vec![(phi, 1)], "Φ_{}", e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn factors_reproduce_input(a in prop::collection::vec(-6i64..6, 1..4),
                               b in prop::collection::vec(-6i64..6, 1..4),
                               c in prop::collection::vec(-6i64..6, 1..5)) {
        let f = p(&a).mul(&p(&b)).mul(&p(&c));
        prop_assume!(!f.is_zero());
        let fs = factor_rational(&f).unwrap();
        let prod = product(&fs);
        prop_assert_eq!(prod.scale(&f.leading()), f);
        for (g, _) in &fs {
            prop_assert!(g.is_monic());
            if (2..=3).contains(&g.deg()) {
                prop_assert!(!has_rational_root(g));
            }
        }
    }
}

/// Rational root test by exhaustion over `a/b` with `a | g(0)`, `b | lc`.
fn has_rational_root(g: &Polynomial) -> bool {
    let ints = g.primitive_part();
    let c0: i64 = (&ints[0]).try_into().unwrap();
    let lc: i64 = (&ints[ints.len() - 1]).try_into().unwrap();
    if c0 == 0 {
        return true;
    }
    for a in -c0.abs()..=c0.abs() {
        for b in 1..=lc.abs() {
            if a != 0 && g.eval(&BigRational::new(a.into(), b.into())).is_zero() {
                return true;
            }
        }
    }
    false
}

fn sqrt2() -> NumberField {
    NumberField::new(p(&[-2, 0, 1])).unwrap()
}

#[test]
fn x2_minus_2_over_sqrt2() {
    let k = sqrt2();
    let f = KPoly::from_rational(&k, &p(&[-2, 0, 1]));
    let fs = factor_over_field(&f, &k).unwrap();
    assert_eq!(fs.len(), 2);
    for (g, _) in &fs {
        assert_eq!(g.deg(), 1);
        let root = k.neg(&g.coeffs[0]);
        assert_eq!(k.mul(&root, &root), k.from_rational(rat(2)));
    }
}

#[test]
fn x2_plus_1_over_sqrt2_irreducible() {
    let k = sqrt2();
    // no root a + b√2 with small coordinates; the norm form is positive
    for a in -8..=8 {
        for b in -8..=8 {
            for d in 1..=4 {
                let x = vec![BigRational::new(a.into(), d.into()), BigRational::new(b.into(), d.into())];
                let v = k.add(&k.mul(&x, &x), &k.one());
                assert!(!k.is_zero(&v));
            }
        }
    }
    let f = KPoly::from_rational(&k, &p(&[1, 0, 1]));
    assert_eq!(factor_over_field(&f, &k).unwrap().len(), 1);
}

#[test]
fn x4_plus_1_over_gaussian_field() {
    let k = cyclotomic_field(4).field;
    let f = KPoly::from_rational(&k, &p(&[1, 0, 0, 0, 1]));
    let fs = factor_over_field(&f, &k).unwrap();
    assert_eq!(fs.len(), 2);
    assert!(fs.iter().all(|(g, m)| g.deg() == 2 && *m == 1));
    let prod = fs.iter().fold(KPoly::from_rational(&k, &Polynomial::one()), |acc, (g, _)| acc.mul(&k, g));
    assert_eq!(prod, f);
}

#[test]
fn isomorphism_counts() {
    let k = sqrt2();
    assert_eq!(field_isomorphisms(&k, &k).len(), 2);
    let l = NumberField::new(p(&[-3, 0, 1])).unwrap();
    assert!(field_isomorphisms(&k, &l).is_empty());
    let z8 = cyclotomic_field(8).field;
    let auts = field_isomorphisms(&z8, &z8);
    assert_eq!(auts.len(), 4);
    // exponent 2
    for a in &auts {
        assert!(a.compose(a).is_identity());
    }
    // a non-Galois cubic has only the identity
    let c = NumberField::new(p(&[-2, 0, 0, 1])).unwrap();
    let auts = field_isomorphisms(&c, &c);
    assert_eq!(auts.len(), 1);
    assert!(auts[0].is_identity());
}

#[test]
fn isomorphisms_are_ring_homs_and_invertible() {
    for f in [p(&[1, 0, 1]), p(&[1, 1, 1, 1, 1]), p(&[-2, 0, 1]), p(&[1, -1, 1])] {
        let k = NumberField::new(f).unwrap();
        let d = k.degree();
        let auts = field_isomorphisms(&k, &k);
        assert_eq!(d % auts.len(), 0);
        for a in &auts {
            for i in 0..d {
                for j in 0..d {
                    let xi = k.pow(&k.generator(), i as u64);
                    let xj = k.pow(&k.generator(), j as u64);
                    assert_eq!(a.apply(&k.mul(&xi, &xj)), k.mul(&a.apply(&xi), &a.apply(&xj)));
                }
            }
            assert!(a.compose(&a.inverse().unwrap()).is_identity());
        }
    }
}

#[test]
fn isomorphisms_between_distinct_presentations() {
    // Q(√2) presented by X^2 − 2 and by X^2 − 2X − 1 (root 1 + √2)
    let k = sqrt2();
    let l = NumberField::new(p(&[-1, -2, 1])).unwrap();
    let isos = field_isomorphisms(&k, &l);
    assert_eq!(isos.len(), 2);
    for h in &isos {
        let r = &h.image_of_generator;
        assert_eq!(l.mul(r, r), l.from_rational(rat(2)));
    }
}

#[test]
fn cyclotomic_fields() {
    let q = cyclotomic_field(1);
    assert_eq!(q.field.degree(), 1);
    assert_eq!(q.zeta, q.field.one());
    let i = cyclotomic_field(4);
    assert_eq!(i.field.degree(), 2);
    assert_eq!(i.units(), vec![1, 3]);
    let z8 = cyclotomic_field(8);
    assert_eq!(z8.field.degree(), 4);
    let one = z8.field.one();
    assert_eq!(z8.field.pow(&z8.zeta, 8), one);
    for a in z8.units() {
        let h = z8.action(a);
        assert!(h.compose(&h).is_identity());
        for b in z8.units() {
            assert_eq!(h.compose(&z8.action(b)), z8.action(a * b % 8));
        }
    }
}

#[test]
fn field_minimal_polynomials() {
    let z8 = cyclotomic_field(8);
    let k = &z8.field;
    assert_eq!(k.minimal_polynomial(&k.zero()), p(&[0, 1]));
    let s = k.add(&z8.zeta, &k.pow(&z8.zeta, 7));
    assert_eq!(k.minimal_polynomial(&s), p(&[-2, 0, 1]));
    assert_eq!(k.minimal_polynomial(&z8.zeta), p(&[1, 0, 0, 0, 1]));
    let x = k.generator();
    let y = k.add(&x, &k.from_rational(rat(3)));
    let m = k.minimal_polynomial(&y);
    // divides the characteristic polynomial, here equal since y generates
    assert_eq!(m.deg(), 4);
    assert!(k.is_zero(&k.eval(&m, &y)));
    assert!(!BigRational::is_zero(&k.norm(&y)));
}
