//! Exact Gaussian elimination over the rationals.
//!
//! Matrices are dense `Vec<Vec<Rational>>` in row-major order. Everything
//! here is exact; there are no pivoting heuristics beyond "first nonzero".

use num_traits::{One, Zero};

use crate::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Reduces `m` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(m: &mut Matrix, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row][col..].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (x, p) in other[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

pub fn rank(m: &Matrix, cols: usize) -> usize {
    let mut m = m.clone();
    rref(&mut m, cols).len()
}

/// Basis of `{x : m x = 0}`, returned in reduced row echelon form so the
/// result depends only on the solution space, not on how the rows of `m`
/// were written down. Every basis vector has leading coordinate 1.
pub fn nullspace(m: &Matrix, cols: usize) -> Matrix {
    let mut reduced = m.clone();
    let pivots = rref(&mut reduced, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis: Matrix = (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect();
    rref(&mut basis, cols);
    basis
}

/// True if `v` lies in the row space of `basis`.
pub fn in_span(basis: &Matrix, v: &[Rational]) -> bool {
    let cols = v.len();
    let r = rank(basis, cols);
    let mut extended = basis.clone();
    extended.push(v.to_vec());
    rank(&extended, cols) == r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot: Rational = m[0].iter().zip(v).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn full_rank_has_trivial_nullspace() {
        let m = mat(&[&[1, 0], &[1, 1]]);
        assert!(nullspace(&m, 2).is_empty());
    }

    #[test]
    fn empty_matrix_gives_identity() {
        let ns = nullspace(&Vec::new(), 3);
        assert_eq!(ns, mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
    }

    #[test]
    fn scaling_rows_does_not_change_basis() {
        let m = mat(&[&[1, -1, 0, 2], &[0, 3, 1, 1]]);
        let doubled: Matrix = m
            .iter()
            .map(|r| r.iter().map(|x| x * int(2)).collect())
            .collect();
        assert_eq!(nullspace(&m, 4), nullspace(&doubled, 4));
    }

    #[test]
    fn span_membership() {
        let b = mat(&[&[1, 0, 1], &[0, 1, 1]]);
        assert!(in_span(&b, &[int(2), int(3), int(5)]));
        assert!(!in_span(&b, &[int(0), int(0), int(1)]));
    }
}
