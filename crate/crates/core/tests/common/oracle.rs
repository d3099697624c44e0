//! Independent reference computations used to cross-check the engine.
//!
//! Nothing here calls into the graph or lattice code: cocycles are found by
//! Gaussian elimination over Q on the full list of defining relations.

#![allow(dead_code)]

use dgca_core::dgca::CoeffMatrix;
use dgca_core::ExactRational;

/// Every cocycle relation for `C` in extension degree `n`, as rows over the
/// unknowns `θ_1, …, θ_{n−1}`.
pub fn cocycle_relations(c: &CoeffMatrix, n: usize) -> Vec<Vec<ExactRational>> {
    let mut rows = Vec::new();
    for i in 1..n {
        let mut r = vec![ExactRational::zero(); n - 1];
        r[i - 1] = &r[i - 1] + ExactRational::one();
        r[n - i - 1] = &r[n - i - 1] - ExactRational::one();
        rows.push(r);
    }
    for i in 1..n {
        for j in 1..n {
            if i + j >= n {
                continue;
            }
            let k = n - i - j;
            let mut r = vec![ExactRational::zero(); n - 1];
            r[i + j - 1] = &r[i + j - 1] + c.get(i, j);
            r[j + k - 1] = &r[j + k - 1] - c.get(j, k);
            rows.push(r);
        }
    }
    rows
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<ExactRational>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for k in 0..rows.len() {
            if k != r && !rows[k][col].is_zero() {
                let f = rows[k][col].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[k].iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<ExactRational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of the right nullspace of `rows` (vectors `x` with `rows·x = 0`).
pub fn nullspace(rows: &[Vec<ExactRational>], cols: usize) -> Vec<Vec<ExactRational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![ExactRational::zero(); cols];
            x[f] = ExactRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -m[r][f].clone();
            }
            x
        })
        .collect()
}

pub fn dot(a: &[ExactRational], b: &[ExactRational]) -> ExactRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
