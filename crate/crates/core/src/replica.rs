//! The replica algebra `g(X)`: the smallest algebraic Lie subalgebra of
//! `gl(n)` containing a single matrix `X`.
//!
//! For semisimple `X_s` with distinct eigenvalues `l_1..l_d` and spectral
//! projections `P_1..P_d`, the integer relations `sum p_c l_c = 0` form a
//! lattice; `g(X_s)` is the set of `sum mu_c P_c` whose weights satisfy every
//! such relation. For nilpotent `X_n` the replica is the line through `X_n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jordan::{eigenstructure, is_nilpotent_matrix, jordan_decompose, JordanPair};
use crate::ratlinalg::rref::kernel;
use crate::ratlinalg::{integer_kernel, IntegerLattice, QMatrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ReplicaRepr", try_from = "ReplicaRepr")]
pub struct ReplicaResult {
    pub semisimple_replica: Subspace,
    pub nilpotent_replica: Subspace,
    pub total: Subspace,
    /// Relation lattice over the distinct eigenvalues of `X_s`.
    pub lattice: IntegerLattice,
}

#[derive(Serialize, Deserialize)]
struct ReplicaRepr {
    dim: usize,
    lattice: IntegerLattice,
    semisimple_replica: Vec<QMatrix>,
    nilpotent_replica: Vec<QMatrix>,
    total: Vec<QMatrix>,
}

impl From<ReplicaResult> for ReplicaRepr {
    fn from(r: ReplicaResult) -> Self {
        ReplicaRepr {
            dim: r.total.ambient_dim(),
            lattice: r.lattice,
            semisimple_replica: r.semisimple_replica.basis().to_vec(),
            nilpotent_replica: r.nilpotent_replica.basis().to_vec(),
            total: r.total.basis().to_vec(),
        }
    }
}

impl TryFrom<ReplicaRepr> for ReplicaResult {
    type Error = Error;

    fn try_from(r: ReplicaRepr) -> Result<Self> {
        Ok(ReplicaResult {
            semisimple_replica: Subspace::span(r.dim, &r.semisimple_replica)?,
            nilpotent_replica: Subspace::span(r.dim, &r.nilpotent_replica)?,
            total: Subspace::span(r.dim, &r.total)?,
            lattice: r.lattice,
        })
    }
}

/// `g(X_s)` together with the relation lattice.
pub fn replica_semisimple(x_s: &QMatrix) -> Result<(Subspace, IntegerLattice)> {
    let es = eigenstructure(x_s)?;
    let d = es.eigenvalues.len();
    let lattice = integer_kernel(std::slice::from_ref(&es.eigenvalues), d);
    // weights mu with p . mu = 0 for every lattice generator p
    let weights = kernel(&lattice.rational_basis(), d);
    let gens: Vec<QMatrix> = weights.iter().map(|mu| es.combine(mu)).collect();
    Ok((Subspace::span(x_s.dim(), &gens)?, lattice))
}

/// `span{X_n}`, the zero subspace when `X_n = 0`.
pub fn replica_nilpotent(x_n: &QMatrix) -> Result<Subspace> {
    if !is_nilpotent_matrix(x_n) {
        return Err(Error::NotNilpotent);
    }
    Subspace::span(x_n.dim(), [x_n])
}

/// `g(X) = g(X_s) + g(X_n)`.
pub fn replica(x: &QMatrix) -> Result<ReplicaResult> {
    replica_from_parts(&jordan_decompose(x))
}

/// Same as [`replica`] when the Jordan pair is already known.
pub fn replica_from_parts(jp: &JordanPair) -> Result<ReplicaResult> {
    let (semisimple_replica, lattice) = replica_semisimple(&jp.semisimple)?;
    let nilpotent_replica = replica_nilpotent(&jp.nilpotent)?;
    let total = semisimple_replica.sum(&nilpotent_replica)?;
    Ok(ReplicaResult { semisimple_replica, nilpotent_replica, total, lattice })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::is_semisimple;
    use crate::ratlinalg::rational::{frac, int};
    use num_bigint::BigInt;

    #[test]
    fn diagonal_one_two() {
        let d = QMatrix::diagonal(&[int(1), int(2)]);
        let (s, l) = replica_semisimple(&d).unwrap();
        assert_eq!(s, Subspace::span(2, [&d]).unwrap());
        assert_eq!(l.basis(), &[vec![BigInt::from(2), BigInt::from(-1)]]);
    }

    #[test]
    fn zero_matrix() {
        let (s, l) = replica_semisimple(&QMatrix::zero(3)).unwrap();
        assert!(s.is_zero());
        assert_eq!(l, IntegerLattice::full(1));
        assert!(replica_nilpotent(&QMatrix::zero(3)).unwrap().is_zero());
    }

    #[test]
    fn rational_spectrum_gives_a_line() {
        // relations (1,0,0) and (0,2,-1) over eigenvalues (0, 1/2, 1)
        let d = QMatrix::diagonal(&[int(0), int(1), frac(1, 2)]);
        let (s, _) = replica_semisimple(&d).unwrap();
        assert_eq!(s.dim(), 1);
        let d = QMatrix::diagonal(&[int(0), int(0), int(5)]);
        let (s, l) = replica_semisimple(&d).unwrap();
        assert_eq!(s, Subspace::span(3, [&d]).unwrap());
        assert_eq!(l.basis(), &[vec![BigInt::from(1), BigInt::from(0)]]);
    }

    #[test]
    fn nilpotent_line_and_error() {
        let x = QMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(replica_nilpotent(&x).unwrap().dim(), 1);
        assert_eq!(replica_nilpotent(&QMatrix::identity(2)), Err(Error::NotNilpotent));
        let r = replica(&x).unwrap();
        assert_eq!(r.total, Subspace::span(2, [&x]).unwrap());
    }

    #[test]
    fn not_semisimple_is_rejected() {
        let x = QMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(replica_semisimple(&x), Err(Error::NotSemisimple));
    }

    #[test]
    fn replica_elements_are_semisimple_and_commute() {
        let x = QMatrix::from_i64(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, -1]]);
        let r = replica(&x).unwrap();
        assert!(r.total.contains(&x).unwrap());
        for b in r.semisimple_replica.basis() {
            assert!(is_semisimple(b));
            assert!(crate::jordan::commute(b, &x));
        }
    }
}
