//! Linear subspaces of the matrix space `gl(n)` in canonical form.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::matrix::QMatrix;
use super::rational::Rational;
use super::rref::row_space;
use crate::error::{Error, Result};

/// A subspace of `gl(n)`, stored as the RREF basis of the row-major
/// flattenings of its elements.
///
/// RREF is unique, so two subspaces are equal iff their basis lists are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SubspaceRepr", into = "SubspaceRepr")]
pub struct Subspace {
    n: usize,
    basis: Vec<QMatrix>,
    pivots: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    ambient_dim: usize,
    basis: Vec<QMatrix>,
}

impl From<Subspace> for SubspaceRepr {
    fn from(s: Subspace) -> Self {
        SubspaceRepr { ambient_dim: s.n, basis: s.basis }
    }
}

impl TryFrom<SubspaceRepr> for Subspace {
    type Error = Error;

    fn try_from(r: SubspaceRepr) -> Result<Self> {
        Subspace::span(r.ambient_dim, &r.basis)
    }
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { n, basis: Vec::new(), pivots: Vec::new() }
    }

    /// All of `gl(n)`.
    pub fn full(n: usize) -> Self {
        let units: Vec<QMatrix> = (0..n * n)
            .map(|k| {
                let mut e = QMatrix::zero(n);
                e[(k / n, k % n)] = Rational::from_integer(1.into());
                e
            })
            .collect();
        Self::span(n, &units).expect("unit matrices have dimension n")
    }

    /// Span of the given matrices, each of which must be `n x n`.
    pub fn span<'a>(n: usize, gens: impl IntoIterator<Item = &'a QMatrix>) -> Result<Self> {
        let mut flat = Vec::new();
        for g in gens {
            if g.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.dim() });
            }
            flat.push(g.as_flat().to_vec());
        }
        Ok(Self::from_flat_rows(n, flat))
    }

    pub(crate) fn from_flat_rows(n: usize, rows: Vec<Vec<Rational>>) -> Self {
        let rows = row_space(&rows, n * n);
        let pivots = rows.iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero RREF row")).collect();
        let basis = rows.into_iter().map(|r| QMatrix::from_flat(n, r).expect("n*n entries")).collect();
        Subspace { n, basis, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[QMatrix] {
        &self.basis
    }

    /// Coordinates of `x` in the canonical basis, or `None` if `x` is outside.
    ///
    /// In RREF the coordinate on basis element `i` is the entry of `x` at that
    /// element's pivot; membership is then decided by the residual.
    pub fn coordinates(&self, x: &QMatrix) -> Result<Option<Vec<Rational>>> {
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.dim() });
        }
        let flat = x.as_flat();
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| flat[p].clone()).collect();
        let mut residual = flat.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, e) in residual.iter_mut().zip(b.as_flat()) {
                if !e.is_zero() {
                    *r -= c * e;
                }
            }
        }
        Ok(residual.iter().all(Zero::is_zero).then_some(coords))
    }

    pub fn contains(&self, x: &QMatrix) -> Result<bool> {
        Ok(self.coordinates(x)?.is_some())
    }

    /// The span of `self` and `other`.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        Subspace::span(self.n, self.basis.iter().chain(&other.basis))
    }

    /// The span of `self` and the extra matrices.
    pub fn extend<'a>(&self, extra: impl IntoIterator<Item = &'a QMatrix>) -> Result<Subspace> {
        let mut fresh: Vec<&QMatrix> = Vec::new();
        for m in extra {
            if !self.contains(m)? {
                fresh.push(m);
            }
        }
        if fresh.is_empty() {
            return Ok(self.clone());
        }
        Subspace::span(self.n, self.basis.iter().chain(fresh))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_same_ambient(other)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }
}

/// Membership test on a subspace; see [`Subspace::contains`].
pub fn span_contains(s: &Subspace, x: &QMatrix) -> Result<bool> {
    s.contains(x)
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.sum(b)
}

pub fn subspace_equal(a: &Subspace, b: &Subspace) -> Result<bool> {
    a.check_same_ambient(b)?;
    Ok(a == b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlinalg::rational::{frac, int};

    #[test]
    fn span_is_canonical() {
        let a = QMatrix::from_i64(&[&[1, 2], &[0, 0]]);
        let b = QMatrix::from_i64(&[&[0, 0], &[3, 4]]);
        let s1 = Subspace::span(2, [&a, &b]).unwrap();
        let sum = &a + &b;
        let s2 = Subspace::span(2, [&sum, &b, &a]).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(s1.dim(), 2);
    }

    #[test]
    fn membership_and_coordinates() {
        let a = QMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let b = QMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let s = Subspace::span(2, [&a, &b]).unwrap();
        let x = &a.scale(&frac(2, 3)) - &b.scale(&int(5));
        assert!(s.contains(&x).unwrap());
        assert!(s.contains(&QMatrix::zero(2)).unwrap());
        assert!(!s.contains(&QMatrix::identity(2)).unwrap());
        assert!(s.contains(&QMatrix::zero(3)).is_err());
    }

    #[test]
    fn sum_with_zero_and_symmetry() {
        let a = Subspace::span(2, [&QMatrix::identity(2)]).unwrap();
        let b = Subspace::span(2, [&QMatrix::from_i64(&[&[0, 1], &[0, 0]])]).unwrap();
        assert_eq!(a.sum(&Subspace::zero(2)).unwrap(), a);
        assert_eq!(a.sum(&b).unwrap(), b.sum(&a).unwrap());
        assert!(subspace_sum(&a, &Subspace::zero(3)).is_err());
        assert_eq!(Subspace::full(2).dim(), 4);
    }
}
