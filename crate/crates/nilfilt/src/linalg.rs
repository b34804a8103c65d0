//! Exact Gaussian elimination over a coefficient field.
//!
//! Matrices are dense row vectors of scalars; everything here operates on a
//! handful of rows at most, so clarity wins over cleverness.

use crate::scalar::{Field, Scalar};

/// Row-reduces `rows` in place and returns the pivot column of each
/// resulting nonzero row (reduced row echelon form).
#[allow(clippy::needless_range_loop)] // the pivot row is read while others mutate
pub fn rref(field: &Field, rows: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pivot_row) = (row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, pivot_row);
        let inv = field
            .inv(&rows[row][col])
            .expect("pivot is nonzero by construction");
        for c in 0..ncols {
            rows[row][c] = field.mul(&rows[row][c], &inv);
        }
        for r in 0..rows.len() {
            if r != row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..ncols {
                    let delta = field.mul(&factor, &rows[row][c]);
                    rows[r][c] = field.sub(&rows[r][c], &delta);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    rows.truncate(row);
    pivots
}

pub fn rank(field: &Field, rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    rref(field, &mut m).len()
}

/// Basis of the right kernel {v : M v = 0}. `rows` is the matrix by rows.
pub fn kernel_basis(field: &Field, rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let pivots = rref(field, &mut m);
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            // pivot row r: x_pc + sum over free columns = 0
            v[pc] = field.neg(&m[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// Solves M x = b exactly; free variables are set to zero. Returns None when
/// the system is inconsistent.
pub fn solve(field: &Field, rows: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Scalar>> = rows
        .iter()
        .zip(b)
        .map(|(r, rhs)| {
            let mut row = r.clone();
            row.push(rhs.clone());
            row
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.contains(&ncols) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![field.zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Field::Rationals.ratio(n, d).unwrap()
    }

    #[test]
    fn kernel_of_simple_map() {
        let f = Field::Rationals;
        // [1 1 0] has kernel spanned by (-1, 1, 0), (0, 0, 1)
        let rows = vec![vec![q(1, 1), q(1, 1), q(0, 1)]];
        let k = kernel_basis(&f, &rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot = f.add(&v[0], &v[1]);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solve_and_inconsistency() {
        let f = Field::Rationals;
        let rows = vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(2, 1)]];
        let x = solve(&f, &rows, &[q(3, 1), q(4, 1)]).unwrap();
        assert_eq!(x, vec![q(3, 1), q(2, 1)]);
        let bad = vec![vec![q(1, 1), q(1, 1)], vec![q(2, 2), q(1, 1)]];
        assert!(solve(&f, &bad, &[q(0, 1), q(1, 1)]).is_none());
    }

    #[test]
    fn rank_counts_independent_rows() {
        let f = Field::Rationals;
        let rows = vec![
            vec![q(1, 1), q(2, 1)],
            vec![q(2, 1), q(4, 1)],
            vec![q(0, 1), q(1, 1)],
        ];
        assert_eq!(rank(&f, &rows), 2);
    }
}
