//! Exact rational linear algebra: completely reduced row echelon form,
//! kernels in border form, and column echelon reduction.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::matrix::ExactMatrix;

/// Completely reduced row echelon form with its pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct RreResult {
    /// Echelon form with zero rows dropped.
    pub echelon: ExactMatrix,
    /// Strictly increasing pivot column indices, one per row of `echelon`.
    pub pivot_columns: Vec<usize>,
}

impl RreResult {
    pub fn rank(&self) -> usize {
        self.pivot_columns.len()
    }

    /// Columns that carry no pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut pivots = self.pivot_columns.iter().peekable();
        (0..self.echelon.cols())
            .filter(|&j| {
                if pivots.peek() == Some(&&j) {
                    pivots.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }
}

/// Reduces `a` to completely reduced row echelon form.
///
/// The pivot in each column is the first nonzero entry at or below the current
/// row; no magnitude heuristics are involved, so the result depends only on
/// the input.
pub fn rre(a: &ExactMatrix) -> RreResult {
    let cols = a.cols();
    let mut rows = a.to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = BigRational::one() / rows[r][c].clone();
        for x in rows[r][c..].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let (before, rest) = rows.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().expect("pivot row exists");
        for other in before.iter_mut().chain(after.iter_mut()) {
            if other[c].is_zero() {
                continue;
            }
            let f = other[c].clone();
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    other[j] = &other[j] - &f * &pivot_row[j];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    let echelon = ExactMatrix::from_rows(cols, rows).expect("rows keep their width");
    RreResult {
        echelon,
        pivot_columns: pivots,
    }
}

pub fn rank(a: &ExactMatrix) -> usize {
    rre(a).rank()
}

/// Basis of `{v : a v = 0}`, one vector per free column of `rre(a)`.
///
/// Restricted to the free columns the basis is the identity pattern; the
/// pivot entries are the negated echelon entries.
pub fn kernel_exact(a: &ExactMatrix) -> Vec<Vec<BigRational>> {
    let res = rre(a);
    kernel_from_rre(&res)
}

pub(crate) fn kernel_from_rre(res: &RreResult) -> Vec<Vec<BigRational>> {
    let cols = res.echelon.cols();
    res.free_columns()
        .into_iter()
        .map(|f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (i, &p) in res.pivot_columns.iter().enumerate() {
                let e = &res.echelon[(i, f)];
                if !e.is_zero() {
                    v[p] = -e.clone();
                }
            }
            v
        })
        .collect()
}

/// Column echelon form of `a` (same shape, zero columns last) and the pivot
/// rows, i.e. the row indices where each nonzero column has its leading 1.
pub fn column_reduce_to_echelon(a: &ExactMatrix) -> (ExactMatrix, Vec<usize>) {
    let res = rre(&a.transpose());
    let mut reduced = ExactMatrix::zeros(a.rows(), a.cols());
    for i in 0..res.echelon.rows() {
        for j in 0..a.rows() {
            reduced[(j, i)] = res.echelon[(i, j)].clone();
        }
    }
    (reduced, res.pivot_columns)
}
