// SPDX-License-Identifier: MIT OR Apache-2.0

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::factor::{factor_rational, is_irreducible};
use super::polynomial::Polynomial;
use super::krylov_minimal_polynomial;
use super::modular;
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;

/// Power-basis coordinates of a number field element.
pub type FieldElement = Vec<BigRational>;

/// `Q[X]/(f)` for a monic integral irreducible `f`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumberField {
    poly: Polynomial,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({})", self.poly)
    }
}

impl NumberField {
    /// Field defined by a monic integral irreducible polynomial.
    pub fn new(poly: Polynomial) -> Result<Self> {
        if poly.deg() == 0 || !poly.is_monic() || !poly.has_integer_coeffs() {
            return Err(Error::InvalidGrading(format!("defining polynomial {} is not monic integral", poly)));
        }
        if !is_irreducible(&poly) {
            return Err(Error::InvalidGrading(format!("defining polynomial {} is reducible", poly)));
        }
        Ok(NumberField { poly })
    }

    /// Skips the irreducibility test; the caller vouches for `poly`.
    pub(crate) fn new_unchecked(poly: Polynomial) -> Self {
        debug_assert!(poly.is_monic() && poly.has_integer_coeffs());
        NumberField { poly }
    }

    /// Field for an irreducible rational `f`, presented by `c^d·f(X/c)` made
    /// monic and integral. Returns the field and `c`; the class of `X` in the
    /// returned field corresponds to `c·α` for a root `α` of `f`.
    pub fn from_irreducible(f: &Polynomial) -> Result<(Self, BigInt)> {
        let f = f.monic();
        let c = f.denominator_lcm();
        Ok((Self::new(scaled_poly(&f, &c))?, c))
    }

    pub fn rational() -> Self {
        NumberField { poly: Polynomial::from_ints(&[0, 1]) }
    }

    pub fn degree(&self) -> usize {
        self.poly.deg()
    }

    pub fn defining_poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn zero(&self) -> FieldElement {
        vec![BigRational::zero(); self.degree()]
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, c: BigRational) -> FieldElement {
        let mut v = self.zero();
        v[0] = c;
        v
    }

    /// Class of `X`.
    pub fn generator(&self) -> FieldElement {
        self.reduce(&Polynomial::x())
    }

    pub fn reduce(&self, p: &Polynomial) -> FieldElement {
        let r = p.rem(&self.poly);
        (0..self.degree()).map(|i| r.coeff(i)).collect()
    }

    pub fn to_poly(&self, a: &[BigRational]) -> Polynomial {
        Polynomial::new(a.to_vec())
    }

    pub fn is_zero(&self, a: &[BigRational]) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, a: &[BigRational], b: &[BigRational]) -> FieldElement {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &[BigRational], b: &[BigRational]) -> FieldElement {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn neg(&self, a: &[BigRational]) -> FieldElement {
        a.iter().map(|x| -x).collect()
    }

    pub fn scale(&self, a: &[BigRational], c: &BigRational) -> FieldElement {
        a.iter().map(|x| x * c).collect()
    }

    pub fn mul(&self, a: &[BigRational], b: &[BigRational]) -> FieldElement {
        self.reduce(&self.to_poly(a).mul(&self.to_poly(b)))
    }

    pub fn pow(&self, a: &[BigRational], mut k: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &[BigRational]) -> Result<FieldElement> {
        let p = self.to_poly(a);
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (g, s, _) = p.ext_gcd(&self.poly);
        debug_assert!(g.is_one());
        Ok(self.reduce(&s))
    }

    pub fn div(&self, a: &[BigRational], b: &[BigRational]) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Matrix of multiplication by `a` in the power basis (columns are
    /// `a·X^j`).
    pub fn mul_matrix(&self, a: &[BigRational]) -> RationalMatrix {
        let d = self.degree();
        let mut cols = Vec::with_capacity(d);
        let mut cur = a.to_vec();
        let x = self.generator();
        for j in 0..d {
            if j > 0 {
                cur = self.mul(&cur, &x);
            }
            cols.push(cur.clone());
        }
        RationalMatrix::from_columns(d, &cols)
    }

    pub fn norm(&self, a: &[BigRational]) -> BigRational {
        self.mul_matrix(a).det().expect("square")
    }

    pub fn trace(&self, a: &[BigRational]) -> BigRational {
        let m = self.mul_matrix(a);
        (0..self.degree()).map(|i| m[(i, i)].clone()).fold(BigRational::zero(), |s, x| s + x)
    }

    pub fn minimal_polynomial(&self, a: &[BigRational]) -> Polynomial {
        krylov_minimal_polynomial(&self.one(), |v| self.mul(v, a))
    }

    /// Evaluates a rational polynomial at `a`.
    pub fn eval(&self, p: &Polynomial, a: &[BigRational]) -> FieldElement {
        let mut acc = self.zero();
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, a);
            acc[0] += c;
        }
        acc
    }
}

/// `c^d·f(X/c)`.
fn scaled_poly(f: &Polynomial, c: &BigInt) -> Polynomial {
    let d = f.deg();
    let cr = BigRational::from_integer(c.clone());
    let mut pw = BigRational::one();
    let mut coeffs = vec![BigRational::zero(); d + 1];
    for i in (0..=d).rev() {
        coeffs[i] = f.coeff(i) * &pw;
        pw *= &cr;
    }
    Polynomial::new(coeffs)
}

/// Field homomorphism determined by the image of the generator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldHom {
    pub source: NumberField,
    pub target: NumberField,
    pub image_of_generator: FieldElement,
}

impl FieldHom {
    pub fn new(source: NumberField, target: NumberField, image: FieldElement) -> Result<Self> {
        let v = target.eval(source.defining_poly(), &image);
        if !target.is_zero(&v) {
            return Err(Error::NotAMorphism("generator image is not a root".into()));
        }
        Ok(FieldHom { source, target, image_of_generator: image })
    }

    pub fn identity(k: &NumberField) -> Self {
        FieldHom { source: k.clone(), target: k.clone(), image_of_generator: k.generator() }
    }

    pub fn apply(&self, a: &[BigRational]) -> FieldElement {
        self.target.eval(&self.source.to_poly(a), &self.image_of_generator)
    }

    /// Matrix whose column `j` is the image of `X^j`.
    pub fn matrix(&self) -> RationalMatrix {
        let d = self.source.degree();
        let mut cols = Vec::with_capacity(d);
        let mut cur = self.target.one();
        for j in 0..d {
            if j > 0 {
                cur = self.target.mul(&cur, &self.image_of_generator);
            }
            cols.push(cur.clone());
        }
        RationalMatrix::from_columns(self.target.degree(), &cols)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FieldHom) -> FieldHom {
        assert_eq!(other.target, self.source);
        FieldHom {
            source: other.source.clone(),
            target: self.target.clone(),
            image_of_generator: self.apply(&other.image_of_generator),
        }
    }

    pub fn inverse(&self) -> Result<FieldHom> {
        if self.source.degree() != self.target.degree() {
            return Err(Error::NotAMorphism("not an isomorphism".into()));
        }
        let m = self.matrix();
        let inv = m.inverse().ok_or_else(|| Error::NotAMorphism("singular".into()))?;
        let x = self.target.generator();
        let image = inv.mul_vec(&x);
        FieldHom::new(self.target.clone(), self.source.clone(), image)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.image_of_generator == self.source.generator()
    }
}

/// Polynomials over a number field, coefficients low to high.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KPoly {
    pub coeffs: Vec<FieldElement>,
}

impl KPoly {
    pub fn new(k: &NumberField, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| k.is_zero(c)) {
            coeffs.pop();
        }
        KPoly { coeffs }
    }

    pub fn from_rational(k: &NumberField, p: &Polynomial) -> Self {
        Self::new(k, p.coeffs().iter().map(|c| k.from_rational(c.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn coeff(&self, k: &NumberField, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| k.zero())
    }

    pub fn add(&self, k: &NumberField, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(k, (0..n).map(|i| k.add(&self.coeff(k, i), &o.coeff(k, i))).collect())
    }

    pub fn sub(&self, k: &NumberField, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(k, (0..n).map(|i| k.sub(&self.coeff(k, i), &o.coeff(k, i))).collect())
    }

    pub fn mul(&self, k: &NumberField, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return KPoly { coeffs: Vec::new() };
        }
        // multiply as bivariate polynomials, reduce once per coefficient
        let mut acc = vec![Polynomial::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            let pa = k.to_poly(a);
            if pa.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                acc[i + j] = acc[i + j].add(&pa.mul(&k.to_poly(b)));
            }
        }
        Self::new(k, acc.iter().map(|p| k.reduce(p)).collect())
    }

    pub fn scale(&self, k: &NumberField, c: &[BigRational]) -> Self {
        Self::new(k, self.coeffs.iter().map(|x| k.mul(x, c)).collect())
    }

    pub fn monic(&self, k: &NumberField) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) => self.scale(k, &k.inv(l).expect("nonzero leading coefficient")),
        }
    }

    pub fn div_rem(&self, k: &NumberField, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero());
        if self.coeffs.len() < d.coeffs.len() {
            return (KPoly { coeffs: Vec::new() }, self.clone());
        }
        let dd = d.deg();
        let inv = k.inv(d.coeffs.last().unwrap()).expect("nonzero");
        let mut r = self.coeffs.clone();
        let mut q = vec![k.zero(); self.coeffs.len() - dd];
        for i in (0..q.len()).rev() {
            let c = k.mul(&r[i + dd], &inv);
            if k.is_zero(&c) {
                continue;
            }
            for (j, y) in d.coeffs.iter().enumerate() {
                r[i + j] = k.sub(&r[i + j], &k.mul(&c, y));
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(k, q), Self::new(k, r))
    }

    pub fn gcd(&self, k: &NumberField, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(k, &b).1;
            a = b;
            b = r;
        }
        a.monic(k)
    }

    pub fn derivative(&self, k: &NumberField) -> Self {
        Self::new(
            k,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| k.scale(c, &BigRational::from_integer(BigInt::from(i))))
                .collect(),
        )
    }

    /// `self(X + c)` for `c ∈ K`.
    pub fn shift(&self, k: &NumberField, c: &[BigRational]) -> Self {
        let lin = KPoly::new(k, vec![c.to_vec(), k.one()]);
        let mut acc = KPoly { coeffs: Vec::new() };
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(k, &lin).add(k, &KPoly::new(k, vec![a.clone()]));
        }
        acc
    }

    /// Value at a rational point.
    pub fn eval_rational(&self, k: &NumberField, x: &BigRational) -> FieldElement {
        let mut acc = k.zero();
        for c in self.coeffs.iter().rev() {
            acc = k.add(&k.scale(&acc, x), c);
        }
        acc
    }

    /// Squarefree decomposition (Yun) into monic parts.
    pub fn squarefree_decomposition(&self, k: &NumberField) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let f = self.monic(k);
        let df = f.derivative(k);
        let a0 = f.gcd(k, &df);
        let mut b = f.div_rem(k, &a0).0;
        let mut c = df.div_rem(k, &a0).0;
        let mut d = c.sub(k, &b.derivative(k));
        let mut i = 1;
        while b.deg() > 0 {
            let a = b.gcd(k, &d);
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(k, &a).0;
            c = d.div_rem(k, &a).0;
            d = c.sub(k, &b.derivative(k));
            i += 1;
        }
        out
    }

    /// `N_{K/Q}` of a polynomial, by evaluation at `deg·[K:Q] + 1` rational
    /// points and Newton interpolation.
    pub fn norm(&self, k: &NumberField) -> Polynomial {
        let n = self.deg() * k.degree();
        let xs: Vec<BigRational> = (0..=n as i64).map(|i| BigRational::from_integer(BigInt::from(i))).collect();
        let ys: Vec<BigRational> = xs.iter().map(|x| k.norm(&self.eval_rational(k, x))).collect();
        newton_interpolate(&xs, &ys)
    }

    pub fn canonical_cmp(&self, o: &Self) -> Ordering {
        self.coeffs.len().cmp(&o.coeffs.len()).then_with(|| self.coeffs.cmp(&o.coeffs))
    }
}

fn newton_interpolate(xs: &[BigRational], ys: &[BigRational]) -> Polynomial {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut acc = Polynomial::zero();
    for i in (0..n).rev() {
        let lin = Polynomial::new(vec![-xs[i].clone(), BigRational::one()]);
        acc = acc.mul(&lin).add(&Polynomial::constant(dd[i].clone()));
    }
    acc
}

/// Monic irreducible factors of `f` over `K` with multiplicities, sorted
/// canonically. Uses the norm method with shifts `0, 1, -1, 2, -2, …`.
pub fn factor_over_field(f: &KPoly, k: &NumberField) -> Result<Vec<(KPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (a, mult) in f.squarefree_decomposition(k) {
        for g in factor_squarefree_over_field(&a, k) {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

fn factor_squarefree_over_field(f: &KPoly, k: &NumberField) -> Vec<KPoly> {
    if f.deg() <= 1 {
        return vec![f.monic(k)];
    }
    let alpha = k.generator();
    for step in 0i64.. {
        let s = if step == 0 { 0 } else if step % 2 == 1 { (step + 1) / 2 } else { -step / 2 };
        // g(X) = f(X − s·α)
        let shift = k.scale(&alpha, &BigRational::from_integer(BigInt::from(-s)));
        let g = f.shift(k, &shift);
        let n = g.norm(k);
        if !n.is_squarefree() {
            continue;
        }
        let factors = factor_rational(&n).expect("nonzero norm");
        if factors.len() == 1 {
            return vec![f.monic(k)];
        }
        let back = k.scale(&alpha, &BigRational::from_integer(BigInt::from(s)));
        let mut out = Vec::new();
        for (ni, _) in factors {
            let h = g.gcd(k, &KPoly::from_rational(k, &ni));
            if h.deg() > 0 {
                out.push(h.shift(k, &back).monic(k));
            }
        }
        return out;
    }
    unreachable!()
}

/// All isomorphisms `K → L`, sorted by the coordinates of the generator image.
///
/// Works in `A = K ⊗ L = Q[x, y]/(f(x), h(y))`. For a shift `s` making
/// `c = x + s·y` a primitive element, each factor `g` of degree `[L:Q]` of the
/// characteristic polynomial of `c` cuts out the summand `ker g(c) ≅ L`, on
/// which `x` acts as a root `r ∈ L` of `f`. The coordinates of `r` are found
/// modulo large primes, recombined and checked exactly.
pub fn field_isomorphisms(k: &NumberField, l: &NumberField) -> Vec<FieldHom> {
    let n = k.degree();
    if n != l.degree() {
        return Vec::new();
    }
    let f = KPoly::from_rational(l, k.defining_poly());
    let alpha = l.generator();
    for step in 0i64.. {
        let s = if step == 0 { 0 } else if step % 2 == 1 { (step + 1) / 2 } else { -step / 2 };
        let shift = l.scale(&alpha, &BigRational::from_integer(BigInt::from(-s)));
        let charpoly = f.shift(l, &shift).norm(l);
        if !charpoly.is_squarefree() {
            continue;
        }
        let factors = factor_rational(&charpoly).expect("nonzero");
        let mut roots: Vec<FieldElement> = factors
            .iter()
            .filter(|(g, _)| g.deg() == n)
            .map(|(g, _)| summand_root(k, l, s, g))
            .collect();
        roots.sort();
        return roots
            .into_iter()
            .map(|r| FieldHom { source: k.clone(), target: l.clone(), image_of_generator: r })
            .collect();
    }
    unreachable!()
}

/// The element of `L` by which `x` acts on `ker g(x + s·y)`.
fn summand_root(k: &NumberField, l: &NumberField, s: i64, g: &Polynomial) -> FieldElement {
    let n = k.degree();
    let cx = k.mul_matrix(&k.generator());
    let cy = l.mul_matrix(&l.generator());
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); n];
    let mut modulus = BigInt::one();
    for p in modular::large_primes() {
        let Some(r) = summand_root_mod(&cx, &cy, s, g, p) else { continue };
        acc = acc.iter().zip(&r).map(|(x, &y)| modular::crt(x, &modulus, y, p)).collect();
        modulus *= BigInt::from(p);
        let cand: Option<FieldElement> =
            acc.iter().map(|x| modular::rational_reconstruction(x, &modulus)).collect();
        if let Some(r) = cand {
            if l.is_zero(&l.eval(k.defining_poly(), &r)) {
                return r;
            }
        }
    }
    unreachable!("infinitely many primes")
}

fn summand_root_mod(
    cx: &RationalMatrix,
    cy: &RationalMatrix,
    s: i64,
    g: &Polynomial,
    p: u64,
) -> Option<Vec<u64>> {
    let n = cx.rows();
    let red = |m: &RationalMatrix| -> Option<modular::ModMatrix> {
        (0..n).map(|i| (0..n).map(|j| modular::reduce_rational(&m[(i, j)], p)).collect()).collect()
    };
    let (ax, ay) = (red(cx)?, red(cy)?);
    let sp = modular::reduce(&BigInt::from(s), p);
    // basis x^i y^j at index i·n + j
    let mx: modular::ModMatrix =
        (0..n * n).map(|a| (0..n * n).map(|b| if a % n == b % n { ax[a / n][b / n] } else { 0 }).collect()).collect();
    let my: modular::ModMatrix =
        (0..n * n).map(|a| (0..n * n).map(|b| if a / n == b / n { ay[a % n][b % n] } else { 0 }).collect()).collect();
    let mc: modular::ModMatrix = mx
        .iter()
        .zip(&my)
        .map(|(u, v)| u.iter().zip(v).map(|(&x, &y)| (x + sp * y) % p).collect())
        .collect();
    let mut gc: modular::ModMatrix = vec![vec![0; n * n]; n * n];
    for c in g.coeffs().iter().rev() {
        gc = modular::mat_mul(&gc, &mc, p);
        let c = modular::reduce_rational(c, p)?;
        for (i, row) in gc.iter_mut().enumerate() {
            row[i] = (row[i] + c) % p;
        }
    }
    let ker = modular::kernel(&gc, p);
    if ker.len() != n {
        return None;
    }
    let v = &ker[0];
    let mut cols = vec![v.clone()];
    for _ in 1..n {
        let next = modular::mat_vec(&my, cols.last().unwrap(), p);
        cols.push(next);
    }
    modular::solve_unique(&cols, &modular::mat_vec(&mx, v, p), p)
}

/// `Q(ζ_e)` with its distinguished root of unity.
#[derive(Clone, Debug)]
pub struct CyclotomicField {
    pub e: u64,
    pub field: NumberField,
    pub zeta: FieldElement,
}

impl CyclotomicField {
    /// Exponent `a ∈ (Z/eZ)*` acting by `ζ ↦ ζ^a`.
    pub fn action(&self, a: u64) -> FieldHom {
        FieldHom {
            source: self.field.clone(),
            target: self.field.clone(),
            image_of_generator: self.field.pow(&self.zeta, a % self.e.max(1)),
        }
    }

    /// Units of `Z/eZ` in increasing order.
    pub fn units(&self) -> Vec<u64> {
        unit_group(self.e)
    }
}

pub fn unit_group(e: u64) -> Vec<u64> {
    if e == 1 {
        return vec![0];
    }
    (1..e).filter(|a| num_integer::gcd(*a, e) == 1).collect()
}

pub fn cyclotomic_field(e: u64) -> CyclotomicField {
    assert!(e >= 1);
    let phi = Polynomial::cyclotomic(e);
    let field = NumberField::new_unchecked(phi);
    // X reduces to 1 and −1 for e = 1, 2
    let zeta = field.generator();
    CyclotomicField { e, field, zeta }
}
