//! Gaussian elimination over a [`Scalar`] field.

use crate::scalar::{Scalar, Tolerance};

fn negligible<S: Scalar>(x: &S, scale: f64, tol: Tolerance) -> bool {
    if S::EXACT {
        return x.is_zero();
    }
    match tol {
        Tolerance::Exact => x.is_zero(),
        Tolerance::Relative(eps) => x.to_f64().abs() <= eps * scale.max(1.0),
    }
}

/// Reduces `rows` to reduced row-echelon form in place and returns the pivot
/// columns. In float mode entries below the tolerance count as zero.
pub fn reduce<S: Scalar>(rows: &mut [Vec<S>], ncols: usize, tol: Tolerance) -> Vec<usize> {
    let scale = rows
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |m, x| m.max(x.to_f64().abs()));
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == rows.len() {
            break;
        }
        let pick = if S::EXACT {
            (row..rows.len()).find(|&r| !rows[r][col].is_zero())
        } else {
            (row..rows.len())
                .filter(|&r| !negligible(&rows[r][col], scale, tol))
                .max_by(|&a, &b| {
                    rows[a][col]
                        .to_f64()
                        .abs()
                        .total_cmp(&rows[b][col].to_f64().abs())
                })
        };
        let Some(p) = pick else { continue };
        rows.swap(row, p);
        let inv = S::one() / rows[row][col].clone();
        for x in rows[row].iter_mut() {
            if !x.is_zero() {
                *x = x.mul_ref(&inv);
            }
        }
        let pivot_row = rows[row].clone();
        for (r, other) in rows.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (x, p) in other.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.sub_ref(&f.mul_ref(p));
                }
            }
            if !S::EXACT {
                other[col] = S::zero();
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Rank of the matrix with the given rows.
pub fn rank<S: Scalar>(mut rows: Vec<Vec<S>>, tol: Tolerance) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    reduce(&mut rows, ncols, tol).len()
}

/// A basis of `{x : A x = 0}` for `A` given by rows with `ncols` columns.
pub fn nullspace<S: Scalar>(mut rows: Vec<Vec<S>>, ncols: usize, tol: Tolerance) -> Vec<Vec<S>> {
    let pivots = reduce(&mut rows, ncols, tol);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![S::zero(); ncols];
        v[free] = S::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -rows[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::integer(n)
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(0), q(1), q(1)],
        ];
        assert_eq!(rank(rows, Tolerance::Exact), 2);
    }

    #[test]
    fn nullspace_annihilates() {
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(0), q(1), q(1)]];
        let ns = nullspace(rows.clone(), 3, Tolerance::Exact);
        assert_eq!(ns.len(), 1);
        for row in &rows {
            let dot = row
                .iter()
                .zip(&ns[0])
                .fold(q(0), |acc, (a, b)| acc + a.clone() * b.clone());
            assert_eq!(dot, q(0));
        }
    }

    #[test]
    fn float_rank_uses_tolerance() {
        let rows = vec![vec![1.0, 1.0], vec![1.0, 1.0 + 1e-14]];
        assert_eq!(rank(rows, Tolerance::Relative(1e-9)), 1);
    }
}
