//! Integer relation lattices in Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rational;

/// A sublattice of `Z^d` with a basis in row Hermite normal form: echelon
/// rows, positive pivots, entries above each pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerLattice {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
}

impl IntegerLattice {
    /// Lattice generated by the given (linearly independent) integer rows.
    pub fn from_independent_rows(ambient: usize, rows: Vec<Vec<BigInt>>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), ambient, "lattice vector of wrong length");
        }
        let basis = hermite_normal_form(rows);
        IntegerLattice { ambient, basis }
    }

    /// All of `Z^d`.
    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient).map(|i| (0..ambient).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
        Self::from_independent_rows(ambient, rows)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Basis rows converted to rationals.
    pub fn rational_basis(&self) -> Vec<Vec<Rational>> {
        self.basis.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect()
    }

    /// Integer membership, by back-substitution through the echelon basis.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut residual = v.to_vec();
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
            if residual[..p].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let (q, r) = residual[p].div_rem(&row[p]);
            if !r.is_zero() {
                return false;
            }
            for (x, b) in residual.iter_mut().zip(row) {
                *x -= &q * b;
            }
        }
        residual.iter().all(Zero::is_zero)
    }
}

impl Serialize for IntegerLattice {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows = self
            .basis
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_i64().ok_or_else(|| S::Error::custom("lattice entry exceeds 64 bits")))
                    .collect::<Result<Vec<i64>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        LatticeRepr { ambient_dim: self.ambient, basis: rows }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntegerLattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = LatticeRepr::deserialize(d)?;
        let rows: Vec<Vec<BigInt>> =
            r.basis.into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect();
        if rows.iter().any(|row| row.len() != r.ambient_dim) {
            return Err(D::Error::custom("lattice vector of wrong length"));
        }
        let lattice = IntegerLattice::from_independent_rows(r.ambient_dim, rows.clone());
        if lattice.rank() != rows.len() {
            return Err(D::Error::custom("lattice basis vectors are dependent"));
        }
        Ok(lattice)
    }
}

#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    ambient_dim: usize,
    basis: Vec<Vec<i64>>,
}

/// The lattice `{p in Z^d : row . p = 0 for every row}`.
///
/// Rows are scaled to integers, then column operations (tracked in a
/// unimodular matrix `U`) bring the system to `A U = [H | 0]`; the trailing
/// columns of `U` are a basis of the integer kernel.
pub fn integer_kernel(rows: &[Vec<Rational>], d: usize) -> IntegerLattice {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), d, "relation row of wrong length");
            let lcm = r.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect()
        })
        .collect();
    let mut u: Vec<Vec<BigInt>> = (0..d).map(|i| (0..d).map(|j| BigInt::from((i == j) as i64)).collect()).collect();

    let swap_cols = |m: &mut Vec<Vec<BigInt>>, x: usize, y: usize| {
        for row in m.iter_mut() {
            row.swap(x, y);
        }
    };
    // col[dst] -= q * col[src]
    let axpy_col = |m: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        for row in m.iter_mut() {
            let t = &row[src] * q;
            row[dst] -= t;
        }
    };

    let mut k = 0;
    for r in 0..a.len() {
        if k == d {
            break;
        }
        loop {
            let best = (k..d).filter(|&c| !a[r][c].is_zero()).min_by_key(|&c| a[r][c].abs());
            let Some(best) = best else { break };
            swap_cols(&mut a, k, best);
            swap_cols(&mut u, k, best);
            for c in k + 1..d {
                if a[r][c].is_zero() {
                    continue;
                }
                let q = a[r][c].div_floor(&a[r][k]);
                axpy_col(&mut a, c, k, &q);
                axpy_col(&mut u, c, k, &q);
            }
            if (k + 1..d).all(|c| a[r][c].is_zero()) {
                k += 1;
                break;
            }
        }
    }

    let kernel_rows: Vec<Vec<BigInt>> = (k..d).map(|c| u.iter().map(|row| row[c].clone()).collect()).collect();
    IntegerLattice::from_independent_rows(d, kernel_rows)
}

/// Row Hermite normal form of independent integer rows.
fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let d = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..d {
        if r == rows.len() {
            break;
        }
        loop {
            let best = (r..rows.len()).filter(|&i| !rows[i][col].is_zero()).min_by_key(|&i| rows[i][col].abs());
            let Some(best) = best else { break };
            rows.swap(r, best);
            let pivot = rows[r].clone();
            for row in rows.iter_mut().skip(r + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let q = row[col].div_floor(&pivot[col]);
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &q * p;
                }
            }
            if rows[r + 1..].iter().all(|row| row[col].is_zero()) {
                break;
            }
        }
        if rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot = rows[r].clone();
        for row in rows.iter_mut().take(r) {
            let q = row[col].div_floor(&pivot[col]);
            if q.is_zero() {
                continue;
            }
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x -= &q * p;
            }
        }
        r += 1;
    }
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    rows
}
