//! Exact dense linear algebra over the scalar fields: reduced row echelon
//! form, rank, and nullspace bases. Matrices here are small (relation spaces
//! and truncation windows), so plain field arithmetic is fast enough and
//! keeps everything exact.

use crate::scalar::Scalar;

/// Puts `rows` into reduced row echelon form in place, drops zero rows, and
/// returns the rank. The result is the canonical RREF of the row space, so
/// two inputs span the same space iff the outputs are equal.
pub(crate) fn rref(rows: &mut Vec<Vec<Scalar>>) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    debug_assert!(rows.iter().all(|r| r.len() == ncols));
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = rows[rank][col].inv().expect("pivot is nonzero");
        for c in col..ncols {
            rows[rank][c] = rows[rank][c].mul(&inv);
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    let t = rows[rank][c].mul(&factor);
                    rows[r][c] = rows[r][c].sub(&t);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    debug_assert_eq!(rows.len(), rank);
    rank
}

pub(crate) fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut copy = rows.to_vec();
    rref(&mut copy)
}

/// Canonical basis of the right nullspace `{v : M v = 0}` of a matrix given
/// in RREF. One basis vector per free column, with a 1 in that column.
pub(crate) fn nullspace(rref_rows: &[Vec<Scalar>], ncols: usize, field: crate::scalar::FieldSpec) -> Vec<Vec<Scalar>> {
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    for (r, row) in rref_rows.iter().enumerate() {
        if let Some(c) = row.iter().position(|x| !x.is_zero()) {
            pivot_of_col[c] = Some(r);
        }
    }
    let mut basis = Vec::new();
    for free_col in 0..ncols {
        if pivot_of_col[free_col].is_some() {
            continue;
        }
        let mut v = vec![Scalar::zero(field); ncols];
        v[free_col] = Scalar::one(field);
        for (c, pr) in pivot_of_col.iter().enumerate() {
            if let Some(r) = pr {
                v[c] = rref_rows[*r][free_col].neg();
            }
        }
        basis.push(v);
    }
    basis
}
