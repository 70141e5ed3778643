// SPDX-License-Identifier: MIT OR Apache-2.0

//! Polynomials over Q and number fields.

mod factor;
mod modular;
mod numberfield;
mod polynomial;
pub mod zp;

pub use factor::{factor_rational, is_irreducible, rational_roots};
pub use numberfield::{
    cyclotomic_field, factor_over_field, field_isomorphisms, unit_group, CyclotomicField, FieldElement,
    FieldHom, KPoly, NumberField,
};
pub use polynomial::Polynomial;

use num_rational::BigRational;
use num_traits::Zero;

/// Minimal polynomial of `x` given `one` and the map `v ↦ v·x`, found as the
/// first linear dependency among `1, x, x², …`.
pub fn krylov_minimal_polynomial(
    one: &[BigRational],
    mut times_x: impl FnMut(&[BigRational]) -> Vec<BigRational>,
) -> Polynomial {
    let n = one.len();
    // echelon rows: (reduced vector, pivot, combination in terms of powers)
    let mut rows: Vec<(Vec<BigRational>, usize, Vec<BigRational>)> = Vec::new();
    let mut power = one.to_vec();
    for k in 0..=n {
        let mut v = power.clone();
        let mut comb = vec![BigRational::zero(); k + 1];
        comb[k] = num_traits::One::one();
        for (r, piv, c) in &rows {
            if v[*piv].is_zero() {
                continue;
            }
            let f = v[*piv].clone() / &r[*piv];
            for i in 0..n {
                if !r[i].is_zero() {
                    v[i] -= &f * &r[i];
                }
            }
            for (i, ci) in c.iter().enumerate() {
                comb[i] -= &f * ci;
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => return Polynomial::new(comb).monic(),
            Some(piv) => rows.push((v, piv, comb)),
        }
        power = times_x(&power);
    }
    unreachable!("powers beyond the dimension are dependent")
}
