// SPDX-License-Identifier: MIT OR Apache-2.0

use num_complex::Complex;
use num_traits::ToPrimitive;

use super::graded::GridGrading;
use crate::algebra::{spectrum, StructureAlgebra};
use crate::error::Result;

/// Floating-point complex embeddings of a reduced algebra: `values[σ][j]`
/// is `σ(b_j)` for the basis vector `b_j`.
#[derive(Clone, Debug)]
pub struct ComplexEmbeddings {
    pub values: Vec<Vec<Complex<f64>>>,
}

impl ComplexEmbeddings {
    pub fn apply(&self, sigma: usize, x: &[f64]) -> Complex<f64> {
        self.values[sigma].iter().zip(x).map(|(v, c)| v * c).sum()
    }

    /// `⟨x, y⟩ = Σ_σ σ(x)·conj(σ(y))`.
    pub fn inner_product(&self, x: &[f64], y: &[f64]) -> Complex<f64> {
        (0..self.values.len()).map(|s| self.apply(s, x) * self.apply(s, y).conj()).sum()
    }
}

/// Embeddings through the spectrum: each factor `Q[t]/(f)` contributes one
/// embedding per complex root of `f`.
pub fn complex_embeddings(alg: &StructureAlgebra) -> Result<ComplexEmbeddings> {
    let spec = spectrum(&alg.to_rational())?;
    let n = alg.rank();
    let mut values = Vec::with_capacity(n);
    for f in &spec.factors {
        let coeffs: Vec<f64> =
            f.field.defining_poly().coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
        let d = coeffs.len() - 1;
        let proj: Vec<Vec<f64>> = (0..d)
            .map(|k| (0..n).map(|j| f.projection[(k, j)].to_f64().unwrap_or(f64::NAN)).collect())
            .collect();
        for root in complex_roots(&coeffs) {
            let powers: Vec<Complex<f64>> =
                std::iter::successors(Some(Complex::new(1.0, 0.0)), |p| Some(p * root)).take(d).collect();
            let row = (0..n).map(|j| (0..d).map(|k| powers[k] * proj[k][j]).sum()).collect();
            values.push(row);
        }
    }
    Ok(ComplexEmbeddings { values })
}

/// Roots of a squarefree polynomial (coefficients low to high) by
/// Aberth–Ehrlich iteration.
pub fn complex_roots(coeffs: &[f64]) -> Vec<Complex<f64>> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    let p: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    // Cauchy bound for the starting circle
    let radius = 1.0 + p[..d].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex<f64>> =
        (0..d).map(|k| Complex::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / d as f64)).collect();
    let eval = |x: Complex<f64>| {
        let mut v = Complex::new(0.0, 0.0);
        let mut dv = Complex::new(0.0, 0.0);
        for &c in p.iter().rev() {
            dv = dv * x + v;
            v = v * x + c;
        }
        (v, dv)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (v, dv) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let repulsion: Complex<f64> = (0..d).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex::new(1.0, 0.0) - ratio * repulsion);
            z[i] -= step;
            moved = moved.max(step.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Largest `|⟨x, y⟩|` over basis vectors `x`, `y` of distinct nonzero
/// components. Homogeneous components of a grading are orthogonal, so this
/// is zero up to rounding.
pub fn max_cross_inner_product(g: &GridGrading) -> Result<f64> {
    let emb = complex_embeddings(&g.algebra)?;
    let bases: Vec<Vec<Vec<f64>>> = g
        .components
        .iter()
        .map(|c| c.basis_vectors().iter().map(|v| v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()).collect())
        .collect();
    let mut worst = 0.0f64;
    for (a, ba) in bases.iter().enumerate() {
        for bb in &bases[a + 1..] {
            for x in ba {
                for y in bb {
                    worst = worst.max(emb.inner_product(x, y).norm());
                }
            }
        }
    }
    Ok(worst)
}
