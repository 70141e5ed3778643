// SPDX-License-Identifier: MIT OR Apache-2.0

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, RationalMatrix};

/// Column Hermite normal form `H = M·U` with `U` unimodular.
///
/// `H` is in lower column echelon form: each nonzero column has a positive
/// pivot strictly below the pivots of the columns to its left, entries of a
/// pivot row left of the pivot lie in `[0, pivot)`, and zero columns come last.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (h, u, _) = hnf_with_pivots(m);
    (h, u)
}

/// As [`hnf`], also returning the pivot row of each nonzero column.
pub fn hnf_with_pivots(m: &IntMatrix) -> (IntMatrix, IntMatrix, Vec<usize>) {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(cols);
    let mut pivots = Vec::new();
    let mut col = 0;
    for row in 0..rows {
        if col == cols {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in col..cols {
                if h[(row, j)].is_zero() {
                    continue;
                }
                if best.is_none_or(|b| h[(row, j)].abs() < h[(row, b)].abs()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            h.swap_columns(col, b);
            u.swap_columns(col, b);
            let mut done = true;
            for j in col + 1..cols {
                if h[(row, j)].is_zero() {
                    continue;
                }
                let q = h[(row, j)].div_floor(&h[(row, col)]);
                col_axpy(&mut h, j, col, &q);
                col_axpy(&mut u, j, col, &q);
                if !h[(row, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            col_negate(&mut h, col);
            col_negate(&mut u, col);
        }
        for k in 0..col {
            let q = h[(row, k)].div_floor(&h[(row, col)]);
            if !q.is_zero() {
                col_axpy(&mut h, k, col, &q);
                col_axpy(&mut u, k, col, &q);
            }
        }
        pivots.push(row);
        col += 1;
    }
    (h, u, pivots)
}

/// column[dst] -= q · column[src]
fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    for i in 0..m.rows() {
        if m[(i, src)].is_zero() {
            continue;
        }
        let t = q * &m[(i, src)];
        m[(i, dst)] -= t;
    }
}

fn col_negate(m: &mut IntMatrix, c: usize) {
    for i in 0..m.rows() {
        let v = -m[(i, c)].clone();
        m[(i, c)] = v;
    }
}

/// row[dst] -= q · row[src]
fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    for j in 0..m.cols() {
        if m[(src, j)].is_zero() {
            continue;
        }
        let t = q * &m[(src, j)];
        m[(dst, j)] -= t;
    }
}

fn row_negate(m: &mut IntMatrix, r: usize) {
    for j in 0..m.cols() {
        let v = -m[(r, j)].clone();
        m[(r, j)] = v;
    }
}

/// Smith normal form `D = left · M · right` with unimodular `left`, `right`
/// and nonnegative diagonal entries `d₁ | d₂ | …`.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d[(i, j)].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap_rows(t, bi);
        left.swap_rows(t, bi);
        d.swap_columns(t, bj);
        right.swap_columns(t, bj);

        let mut clean = true;
        for i in t + 1..rows {
            if d[(i, t)].is_zero() {
                continue;
            }
            let q = d[(i, t)].div_floor(&d[(t, t)]);
            row_axpy(&mut d, i, t, &q);
            row_axpy(&mut left, i, t, &q);
            if !d[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if d[(t, j)].is_zero() {
                continue;
            }
            let q = d[(t, j)].div_floor(&d[(t, t)]);
            col_axpy(&mut d, j, t, &q);
            col_axpy(&mut right, j, t, &q);
            if !d[(t, j)].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility of the remaining block
        let mut fixed = false;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !d[(i, j)].is_multiple_of(&d[(t, t)]) {
                    let one = BigInt::from(-1);
                    row_axpy(&mut d, t, i, &one);
                    row_axpy(&mut left, t, i, &one);
                    fixed = true;
                    break 'outer;
                }
            }
        }
        if fixed {
            continue;
        }
        if d[(t, t)].is_negative() {
            row_negate(&mut d, t);
            row_negate(&mut left, t);
        }
        t += 1;
    }
    (d, left, right)
}

/// Diagonal of a Smith form.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let (d, _, _) = snf(m);
    (0..d.rows().min(d.cols())).map(|i| d[(i, i)].clone()).collect()
}

/// Saturated integer basis (as columns) of `ker(M) ∩ Z^cols`.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let (_, u, pivots) = hnf_with_pivots(m);
    let r = pivots.len();
    let idx: Vec<usize> = (r..m.cols()).collect();
    let k = u.select_columns(&idx);
    // canonical form keeps the output deterministic and small
    let (kh, _, kp) = hnf_with_pivots(&k);
    kh.select_columns(&(0..kp.len()).collect::<Vec<_>>())
}

/// Saturated integer kernel basis of a rational matrix.
pub fn integer_kernel_rational(m: &RationalMatrix) -> IntMatrix {
    let mut scaled = m.clone();
    for i in 0..m.rows() {
        let den = m.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        for j in 0..m.cols() {
            scaled[(i, j)] = &m[(i, j)] * num_rational::BigRational::from_integer(den.clone());
        }
    }
    integer_kernel(&scaled.to_integer().expect("rows were cleared of denominators"))
}

/// Basis of the kernel of `M`: over Q for rational input.
pub fn kernel_basis(m: &RationalMatrix) -> RationalMatrix {
    m.kernel_basis()
}
