//! Dense square matrices over the rationals, i.e. elements of `gl(n)`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{self, Rational};
use super::rref::rref;
use crate::error::{Error, Result};

/// A dense `n x n` matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct QMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    dim: usize,
    entries: Vec<Vec<String>>,
}

impl From<QMatrix> for MatrixRepr {
    fn from(m: QMatrix) -> Self {
        MatrixRepr { dim: m.dim, entries: m.rows().map(|row| row.iter().map(rational::format).collect()).collect() }
    }
}

impl TryFrom<MatrixRepr> for QMatrix {
    type Error = Error;

    fn try_from(r: MatrixRepr) -> Result<Self> {
        if r.entries.len() != r.dim {
            return Err(Error::InvalidMatrix(format!("dim is {} but {} rows were given", r.dim, r.entries.len())));
        }
        let rows = r
            .entries
            .iter()
            .map(|row| row.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        QMatrix::from_rows(rows)
    }
}

impl QMatrix {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        QMatrix { dim, entries: vec![Rational::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        let entries = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        QMatrix { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidMatrix("matrix must have at least one row".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::InvalidMatrix(format!("not square: {} rows but a row of length {}", dim, bad.len())));
        }
        Ok(QMatrix { dim, entries: rows.into_iter().flatten().collect() })
    }

    /// Convenience for integer literals; panics on a ragged or empty grid.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| rational::int(v)).collect()).collect())
            .expect("square integer grid")
    }

    /// Rebuilds a matrix from its row-major flattening.
    pub fn from_flat(dim: usize, entries: Vec<Rational>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: entries.len() });
        }
        Ok(QMatrix { dim, entries })
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        let mut m = Self::zero(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major flattening; this is the coordinate vector used by [`super::Subspace`].
    pub fn as_flat(&self) -> &[Rational] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.dim)
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rational {
        (0..self.dim).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QMatrix { dim: self.dim, entries: self.entries.iter().map(|e| e * c).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].clone())
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Matrix-vector product `self * v`.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.dim);
        self.rows().map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b)).collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.dim;
        let aug: Vec<Vec<Rational>> = self
            .rows()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.to_vec();
                r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                r
            })
            .collect();
        let red = rref(&aug, 2 * n);
        // [A | I] always has rank n; A is invertible iff the first n pivots land in A.
        if red.pivots.iter().take(n).copied().ne(0..n) {
            return None;
        }
        let rows = red.matrix.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(Self::from_rows(rows).expect("square"))
    }

    pub fn check_same_dim(&self, other: &QMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.dim + j]
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;

    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix sum");
        QMatrix { dim: self.dim, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;

    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix difference");
        QMatrix { dim: self.dim, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;

    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix product");
        // integer product over common denominators, one normalization per entry
        let (a, da) = scaled_integers(&self.entries);
        let (b, db) = scaled_integers(&rhs.entries);
        let den = da * db;
        let entries = integer_product(self.dim, &a, &b).into_iter().map(|v| ratio(v, &den)).collect();
        QMatrix { dim: self.dim, entries }
    }
}

impl QMatrix {
    /// `self * other - other * self`, panicking on a dimension mismatch.
    pub fn commutator(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch in commutator");
        let (a, da) = scaled_integers(&self.entries);
        let (b, db) = scaled_integers(&other.entries);
        let den = da * db;
        let ab = integer_product(self.dim, &a, &b);
        let ba = integer_product(self.dim, &b, &a);
        let entries = ab.into_iter().zip(ba).map(|(x, y)| ratio(x - y, &den)).collect();
        QMatrix { dim: self.dim, entries }
    }
}

fn ratio(num: BigInt, den: &BigInt) -> Rational {
    if num.is_zero() {
        Rational::zero()
    } else if den.is_one() {
        Rational::from_integer(num)
    } else {
        Rational::new(num, den.clone())
    }
}

fn integer_product(n: usize, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = &a[i * n + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                let y = &b[k * n + j];
                if !y.is_zero() {
                    acc[i * n + j] += x * y;
                }
            }
        }
    }
    acc
}

/// `(v_i * d, d)` with `d` the least common denominator.
fn scaled_integers(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let mut d = BigInt::one();
    for r in v {
        if !r.denom().is_one() && !d.is_multiple_of(r.denom()) {
            d = d.lcm(r.denom());
        }
    }
    let scaled = v
        .iter()
        .map(|r| {
            if r.is_zero() {
                BigInt::zero()
            } else if r.denom() == &d {
                r.numer().clone()
            } else {
                r.numer() * (&d / r.denom())
            }
        })
        .collect();
    (scaled, d)
}

impl Neg for &QMatrix {
    type Output = QMatrix;

    fn neg(self) -> QMatrix {
        QMatrix { dim: self.dim, entries: self.entries.iter().map(|e| -e).collect() }
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(rational::format).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self.rows().map(|r| r.iter().map(rational::format).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", padded.join("  "))?;
        }
        Ok(())
    }
}
