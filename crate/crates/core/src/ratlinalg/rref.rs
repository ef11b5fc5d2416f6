//! Gaussian elimination over Q: reduced row echelon form, kernels, solves.

use num_traits::{One, Zero};

use super::rational::Rational;

/// Output of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// The reduced matrix, same shape as the input (zero rows at the bottom).
    pub matrix: Vec<Vec<Rational>>,
    /// Pivot column of each nonzero row, increasing.
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row echelon form of a `rows.len() x cols` matrix.
///
/// The result is unique: pivots are 1, and every other entry of a pivot
/// column is 0.
pub fn rref(rows: &[Vec<Rational>], cols: usize) -> Rref {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    for r in &a {
        assert_eq!(r.len(), cols, "ragged matrix passed to rref");
    }
    let m = a.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m {
            break;
        }
        let Some(p) = (row..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        if !inv.is_one() {
            for x in a[row][col..].iter_mut() {
                *x *= &inv;
            }
        }
        let pivot_row = a[row].clone();
        for (r, target) in a.iter_mut().enumerate() {
            if r == row || target[col].is_zero() {
                continue;
            }
            let f = target[col].clone();
            for (x, p) in target[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let rank = pivots.len();
    Rref { matrix: a, pivots, rank }
}

/// Basis of the right null space `{v : m v = 0}`; one vector per free column.
pub fn kernel(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let red = rref(rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (i, &p) in red.pivots.iter().enumerate() {
                v[p] = -red.matrix[i][free].clone();
            }
            v
        })
        .collect()
}

/// Nonzero rows of the RREF: the canonical basis of the row space.
pub fn row_space(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut red = rref(rows, cols);
    red.matrix.truncate(red.rank);
    red.matrix
}

/// Coefficients `c` with `sum_i c_i vectors[i] = target`, if any exist.
///
/// When the vectors are dependent the solution with zero free coordinates is
/// returned.
pub fn solve_combination(vectors: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = vectors.len();
    let len = target.len();
    let rows: Vec<Vec<Rational>> = (0..len)
        .map(|i| {
            let mut r: Vec<Rational> = vectors.iter().map(|v| v[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let red = rref(&rows, k + 1);
    if red.pivots.last() == Some(&k) {
        return None;
    }
    let mut c = vec![Rational::zero(); k];
    for (i, &p) in red.pivots.iter().enumerate() {
        c[p] = red.matrix[i][k].clone();
    }
    Some(c)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}
