//! Small dense linear algebra over the ambient field.

use crate::gf::{FieldCtx, FieldElem};

pub type Matrix = Vec<Vec<FieldElem>>;

/// Reduces `rows` in place to reduced row-echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row, ascending.
pub fn rref(ctx: &FieldCtx, rows: &mut Matrix) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let s = ctx.inv(rows[r][col]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = ctx.mul(*x, s);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col];
                let pivot_row = rows[r].clone();
                for (x, &p) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = ctx.sub(*x, ctx.mul(f, p));
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

/// Basis of `{v : mat * v = 0}`.
pub fn nullspace(ctx: &FieldCtx, mat: &Matrix, ncols: usize) -> Matrix {
    let mut rows = mat.clone();
    let pivots = rref(ctx, &mut rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![FieldElem::ZERO; ncols];
            v[f] = FieldElem::ONE;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = ctx.neg(row[f]);
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(ctx: &FieldCtx, mat: &Matrix) -> Option<Matrix> {
    let n = mat.len();
    let mut aug: Matrix = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { FieldElem::ONE } else { FieldElem::ZERO }));
            r
        })
        .collect();
    let pivots = rref(ctx, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(ctx: &FieldCtx, mat: &Matrix, v: &[FieldElem]) -> Vec<FieldElem> {
    mat.iter()
        .map(|row| row.iter().zip(v).fold(FieldElem::ZERO, |acc, (&a, &b)| ctx.add(acc, ctx.mul(a, b))))
        .collect()
}
