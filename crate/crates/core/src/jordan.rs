//! Chevalley-Jordan decomposition `X = X_s + X_n` and spectral projections.
//!
//! The decomposition is computed without eigenvalues: with `chi` the
//! characteristic polynomial and `f` its square-free part, the Newton step
//! `z <- z - f(z) g(z)` (where `g f' = 1 mod f`) is run in `Q[T] / chi`
//! starting from `z = T`. After `ceil(log2 m) + 1` steps, `m` the largest
//! root multiplicity, `f(z) = 0 mod chi` and `X_s = z(X)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratlinalg::{charpoly, minpoly, QMatrix, QPoly, Rational};

/// `X = semisimple + nilpotent`, both polynomials in `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanPair {
    pub semisimple: QMatrix,
    pub nilpotent: QMatrix,
    /// `s` with `semisimple = s(X)`.
    pub semisimple_poly: QPoly,
    /// `T - s`, so `nilpotent = (T - s)(X)`.
    pub nilpotent_poly: QPoly,
}

/// Number of Newton steps used by [`jordan_decompose`] for a given
/// characteristic polynomial.
pub fn newton_steps(chi: &QPoly) -> usize {
    let max_mult = chi
        .squarefree_decomposition()
        .expect("characteristic polynomials are nonzero")
        .iter()
        .map(|(_, m)| *m)
        .max()
        .unwrap_or(1);
    let mut ceil_log2 = 0;
    while (1usize << ceil_log2) < max_mult {
        ceil_log2 += 1;
    }
    ceil_log2 + 1
}

pub fn jordan_decompose(x: &QMatrix) -> JordanPair {
    let chi = charpoly(x);
    let f = chi.squarefree_part().expect("characteristic polynomials are nonzero");
    let g = f.derivative().inverse_mod(&f).expect("a square-free polynomial is coprime to its derivative");

    let mut z = QPoly::monomial(1).rem(&chi);
    for _ in 0..newton_steps(&chi) {
        let fz = f.compose_mod(&z, &chi);
        if fz.is_zero() {
            break;
        }
        let gz = g.compose_mod(&z, &chi);
        z = (&z - &(&fz * &gz)).rem(&chi);
    }
    debug_assert!(f.compose_mod(&z, &chi).is_zero(), "Newton iteration did not converge");

    let semisimple = z.eval_matrix(x);
    let nilpotent = x - &semisimple;
    let nilpotent_poly = &QPoly::monomial(1) - &z;
    JordanPair { semisimple, nilpotent, semisimple_poly: z, nilpotent_poly }
}

/// Minimal polynomial is square-free.
pub fn is_semisimple(x: &QMatrix) -> bool {
    minpoly(x).is_squarefree()
}

/// Characteristic polynomial is `T^n`.
pub fn is_nilpotent_matrix(x: &QMatrix) -> bool {
    charpoly(x) == QPoly::monomial(x.dim())
}

/// Spectral data of a semisimple matrix with rational spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenstructure {
    /// Distinct eigenvalues, increasing.
    pub eigenvalues: Vec<Rational>,
    /// Algebraic multiplicity of each eigenvalue.
    pub multiplicities: Vec<usize>,
    /// Projection onto each eigenspace along the others.
    pub projections: Vec<QMatrix>,
}

impl Eigenstructure {
    /// `sum_c lambda_c P_c`.
    pub fn reconstruct(&self) -> QMatrix {
        let n = self.projections[0].dim();
        self.eigenvalues.iter().zip(&self.projections).fold(QMatrix::zero(n), |acc, (l, p)| &acc + &p.scale(l))
    }

    /// `sum_c mu_c P_c` for a vector of per-eigenvalue weights.
    pub fn combine(&self, mu: &[Rational]) -> QMatrix {
        let n = self.projections[0].dim();
        mu.iter().zip(&self.projections).fold(QMatrix::zero(n), |acc, (m, p)| &acc + &p.scale(m))
    }
}

/// Lagrange projections `P_c = prod_{c' != c} (X - lambda_c' I) / (lambda_c - lambda_c')`.
pub fn eigenstructure(x_s: &QMatrix) -> Result<Eigenstructure> {
    if !is_semisimple(x_s) {
        return Err(Error::NotSemisimple);
    }
    let roots = charpoly(x_s).rational_roots()?;
    let n = x_s.dim();
    let projections = roots
        .iter()
        .map(|(lc, _)| {
            roots.iter().filter(|(l, _)| l != lc).fold(QMatrix::identity(n), |acc, (l, _)| {
                let mut shifted = x_s.clone();
                for i in 0..n {
                    shifted[(i, i)] -= l;
                }
                (&acc * &shifted).scale(&(lc - l).recip())
            })
        })
        .collect();
    Ok(Eigenstructure {
        eigenvalues: roots.iter().map(|(l, _)| l.clone()).collect(),
        multiplicities: roots.iter().map(|(_, m)| *m).collect(),
        projections,
    })
}

/// `true` when `p(x) = 0`; used to certify the polynomial-in-X property.
pub fn annihilates(p: &QPoly, x: &QMatrix) -> bool {
    p.eval_matrix(x).is_zero()
}

/// `x^n = 0` via repeated products; an independent nilpotency check.
pub fn power_vanishes(x: &QMatrix) -> bool {
    x.pow(x.dim() as u32).is_zero()
}

pub(crate) fn commute(a: &QMatrix, b: &QMatrix) -> bool {
    (&(a * b) - &(b * a)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlinalg::rational::{frac, int};
    use crate::ratlinalg::Subspace;
    use num_traits::Zero;

    /// h(1,1) basis element X1.
    fn x1_h11() -> QMatrix {
        QMatrix::from_i64(&[&[1, 1, 0, 1], &[1, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 0, 0]])
    }

    #[test]
    fn decomposes_heisenberg_x1() {
        let x = x1_h11();
        let jp = jordan_decompose(&x);
        let h = frac(1, 2);
        let z = int(0);
        let o = int(1);
        let xs = QMatrix::from_rows(vec![
            vec![o.clone(), o.clone(), z.clone(), h.clone()],
            vec![o.clone(), o.clone(), z.clone(), h.clone()],
            vec![o.clone(), o.clone(), z.clone(), h.clone()],
            vec![z.clone(), z.clone(), z.clone(), z.clone()],
        ])
        .unwrap();
        assert_eq!(jp.semisimple, xs);
        assert_eq!(jp.nilpotent, &x - &xs);
        assert_eq!(jp.nilpotent[(0, 3)], h);
        assert_eq!(jp.nilpotent[(1, 3)], -h.clone());
        assert_eq!(jp.nilpotent[(2, 3)], -h);
        assert_eq!(minpoly(&xs), QPoly::from_roots(&[(int(0), 1), (int(2), 1)]));
        assert_eq!(charpoly(&xs), QPoly::from_roots(&[(int(0), 3), (int(2), 1)]));
        assert_eq!(jp.semisimple_poly.eval_matrix(&x), jp.semisimple);
    }

    #[test]
    fn nilpotent_input_has_zero_semisimple_part() {
        let x = QMatrix::from_i64(&[&[0, 1, 3], &[0, 0, 2], &[0, 0, 0]]);
        let jp = jordan_decompose(&x);
        assert!(jp.semisimple.is_zero());
        assert_eq!(jp.nilpotent, x);
    }

    #[test]
    fn predicates() {
        let id = QMatrix::identity(3);
        assert!(is_semisimple(&id));
        assert!(!is_nilpotent_matrix(&id));
        let x = x1_h11();
        assert!(!is_semisimple(&x));
        assert!(!is_nilpotent_matrix(&x));
        let rot = QMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        assert!(is_semisimple(&rot));
    }

    #[test]
    fn irrational_spectrum_still_decomposes() {
        // [[A, I], [0, A]] with A^2 = 2I, charpoly (T^2 - 2)^2
        let c = QMatrix::from_i64(&[&[0, 2, 1, 0], &[1, 0, 0, 1], &[0, 0, 0, 2], &[0, 0, 1, 0]]);
        let jp = jordan_decompose(&c);
        assert!(is_semisimple(&jp.semisimple));
        assert!(power_vanishes(&jp.nilpotent));
        assert!(commute(&jp.semisimple, &jp.nilpotent));
        assert!(!jp.nilpotent.is_zero());
        assert!(matches!(eigenstructure(&jp.semisimple), Err(Error::SplitFailure { .. })));
    }

    #[test]
    fn eigenstructure_examples() {
        let xs = jordan_decompose(&x1_h11()).semisimple;
        let es = eigenstructure(&xs).unwrap();
        assert_eq!(es.eigenvalues, vec![int(0), int(2)]);
        assert_eq!(es.multiplicities, vec![3, 1]);
        assert_eq!(es.projections[1], xs.scale(&frac(1, 2)));

        let es = eigenstructure(&QMatrix::identity(3)).unwrap();
        assert_eq!(es.eigenvalues, vec![int(1)]);
        assert_eq!(es.projections, vec![QMatrix::identity(3)]);

        let d = QMatrix::diagonal(&[int(1), int(2), int(3)]);
        let es = eigenstructure(&d).unwrap();
        for (k, p) in es.projections.iter().enumerate() {
            let mut e = vec![int(0); 3];
            e[k] = int(1);
            assert_eq!(p, &QMatrix::diagonal(&e));
        }
        assert_eq!(eigenstructure(&x1_h11()), Err(Error::NotSemisimple));
    }

    #[test]
    fn components_live_in_krylov_space() {
        let x = QMatrix::from_i64(&[&[2, 1, 0], &[0, 2, 0], &[1, 0, 3]]);
        let jp = jordan_decompose(&x);
        let krylov: Vec<QMatrix> = (0..3).map(|k| x.pow(k)).collect();
        let k = Subspace::span(3, &krylov).unwrap();
        assert!(k.contains(&jp.semisimple).unwrap());
        assert!(k.contains(&jp.nilpotent).unwrap());
        assert!(jp.nilpotent.trace().is_zero());
    }
}
