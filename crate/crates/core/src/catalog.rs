//! Exact constructors for the worked examples: the 3-dimensional nilpotent
//! algebra `h(alpha, beta)` in `gl(4)`, its algebraic hull `m`, the pieces
//! `n1` and `a1` of `m`, the filiform family `h_n` in `gl(n+1)`, and the
//! model filiform structure constants `L_n`.
//!
//! Entries are transcribed verbatim. Every constructor re-verifies the
//! bracket relations it relies on; the filiform family reports them instead,
//! since the printed matrices are the object under test.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::{bracket, LieSubalgebra, StructureConstants};
use crate::ratlinalg::rational::{self, frac, int, Rational};
use crate::ratlinalg::{QMatrix, Subspace};

/// Free constants of the catalog examples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogParams {
    #[serde(with = "rational::serde_str")]
    pub alpha: Rational,
    #[serde(with = "rational::serde_str")]
    pub beta: Rational,
    #[serde(with = "rational::serde_str")]
    pub a: Rational,
    pub n: usize,
}

impl CatalogParams {
    /// `alpha + beta != 0`.
    pub fn check_heisenberg(&self) -> Result<()> {
        check_alpha_beta(&self.alpha, &self.beta)
    }

    /// `a != 0` and `n >= 4`.
    pub fn check_filiform(&self) -> Result<()> {
        check_filiform(self.n, &self.a)
    }
}

fn check_alpha_beta(alpha: &Rational, beta: &Rational) -> Result<()> {
    if (alpha + beta).is_zero() {
        return Err(Error::ParamDomain(format!("alpha + beta must be nonzero (alpha = {alpha}, beta = {beta})")));
    }
    Ok(())
}

fn check_filiform(n: usize, a: &Rational) -> Result<()> {
    if n == 3 {
        return Err(Error::ParamDomain(
            "the filiform family starts at n = 4; the 3-dimensional case is heisenberg_h".into(),
        ));
    }
    if n < 4 {
        return Err(Error::ParamDomain(format!("filiform family needs n >= 4, got {n}")));
    }
    if a.is_zero() {
        return Err(Error::ParamDomain("filiform family needs a != 0".into()));
    }
    Ok(())
}

fn m4(rows: [[Rational; 4]; 4]) -> QMatrix {
    QMatrix::from_rows(rows.into_iter().map(Vec::from).collect()).expect("4x4")
}

/// The element `x1 X1 + x2 X2 + x3 X3` as displayed in set-builder form.
pub fn h_element(alpha: &Rational, beta: &Rational, x: [&Rational; 3]) -> QMatrix {
    let [x1, x2, x3] = x;
    let s = x1 + x2;
    let z = Rational::zero();
    let one = Rational::one();
    m4([
        [s.clone(), s.clone(), z.clone(), x1.clone()],
        [s.clone(), s, z.clone(), x2.clone()],
        [alpha * x1 + (beta - &one) * x2, beta * x1 + (alpha + &one) * x2, z.clone(), x3.clone()],
        [z.clone(), z.clone(), z.clone(), z],
    ])
}

/// `X1, X2, X3` of `h(alpha, beta)`.
pub fn heisenberg_basis(alpha: &Rational, beta: &Rational) -> Result<[QMatrix; 3]> {
    check_alpha_beta(alpha, beta)?;
    let (z, o) = (int(0), int(1));
    let x1 = m4([
        [o.clone(), o.clone(), z.clone(), o.clone()],
        [o.clone(), o.clone(), z.clone(), z.clone()],
        [alpha.clone(), beta.clone(), z.clone(), z.clone()],
        [z.clone(), z.clone(), z.clone(), z.clone()],
    ]);
    let x2 = m4([
        [o.clone(), o.clone(), z.clone(), z.clone()],
        [o.clone(), o.clone(), z.clone(), o.clone()],
        [beta - &o, alpha + &o, z.clone(), z.clone()],
        [z.clone(), z.clone(), z.clone(), z.clone()],
    ]);
    let mut x3 = QMatrix::zero(4);
    x3[(2, 3)] = o;
    Ok([x1, x2, x3])
}

/// `h(alpha, beta)` with presentation basis `X1, X2, X3`.
pub fn heisenberg_h(alpha: &Rational, beta: &Rational) -> Result<LieSubalgebra> {
    let [x1, x2, x3] = heisenberg_basis(alpha, beta)?;
    let relations = [(&x1, &x2, &x3), (&x1, &x3, &QMatrix::zero(4)), (&x2, &x3, &QMatrix::zero(4))];
    for (k, (a, b, expected)) in relations.into_iter().enumerate() {
        if &bracket(a, b)? != expected {
            return Err(Error::NotClosed(format!("heisenberg relation {} fails", k + 1)));
        }
    }
    LieSubalgebra::from_basis(4, vec![x1, x2, x3])
}

/// `X4`, the common semisimple part of `X1` and `X2`.
pub fn x4(alpha: &Rational, beta: &Rational) -> Result<QMatrix> {
    check_alpha_beta(alpha, beta)?;
    Ok(a1_element(alpha, beta, &int(1)))
}

/// The displayed `(X_{1,s}, X_{1,n})` of `h(alpha, beta)`, transcribed
/// entrywise rather than computed.
pub fn x1_jordan_display(alpha: &Rational, beta: &Rational) -> Result<(QMatrix, QMatrix)> {
    check_alpha_beta(alpha, beta)?;
    let (z, o, h) = (int(0), int(1), frac(1, 2));
    let s2 = (alpha + beta) * &h;
    let s4 = (alpha + beta) * frac(1, 4);
    let d2 = (alpha - beta) * &h;
    let xs = m4([
        [o.clone(), o.clone(), z.clone(), h.clone()],
        [o.clone(), o, z.clone(), h.clone()],
        [s2.clone(), s2, z.clone(), s4.clone()],
        [z.clone(), z.clone(), z.clone(), z.clone()],
    ]);
    let xn = m4([
        [z.clone(), z.clone(), z.clone(), h.clone()],
        [z.clone(), z.clone(), z.clone(), -h],
        [d2.clone(), -d2, z.clone(), -s4],
        [z.clone(), z.clone(), z.clone(), z],
    ]);
    Ok((xs, xn))
}

/// The displayed general element of `m` with coordinates `x1..x4`.
pub fn m_element(alpha: &Rational, beta: &Rational, x: [&Rational; 4]) -> QMatrix {
    let [x1, x2, x3, x4] = x;
    let half = frac(1, 2);
    let quarter = frac(1, 4);
    let s = alpha + beta;
    let d = x1 + x2 + x4;
    let z = Rational::zero();
    let one = Rational::one();
    m4([
        [d.clone(), d.clone(), z.clone(), x1 + x4 * &half],
        [d.clone(), d, z.clone(), x2 + x4 * &half],
        [
            alpha * x1 + (beta - &one) * x2 + &s * &half * x4,
            beta * x1 + (alpha + &one) * x2 + &s * &half * x4,
            z.clone(),
            x3 + &s * &quarter * x4,
        ],
        [z.clone(), z.clone(), z.clone(), z],
    ])
}

/// `m = h ⊕ K X4` with presentation basis `X1, X2, X3, X4`.
pub fn hull_m(alpha: &Rational, beta: &Rational) -> Result<LieSubalgebra> {
    let [x1, x2, x3] = heisenberg_basis(alpha, beta)?;
    let x4 = x4(alpha, beta)?;
    for (i, xi) in [&x1, &x2, &x3].into_iter().enumerate() {
        if !bracket(xi, &x4)?.is_zero() {
            return Err(Error::NotClosed(format!("[X{}, X4] is nonzero", i + 1)));
        }
    }
    LieSubalgebra::from_basis(4, vec![x1, x2, x3, x4])
}

/// The displayed general element of `n1` with coordinates `x1, x2, x3`.
pub fn n1_element(alpha: &Rational, beta: &Rational, x: [&Rational; 3]) -> QMatrix {
    let [x1, x2, x3] = x;
    let half = frac(1, 2);
    let quarter = frac(1, 4);
    let two = int(2);
    let z = Rational::zero();
    let top = (x1 - x2) * &half;
    m4([
        [z.clone(), z.clone(), z.clone(), top.clone()],
        [z.clone(), z.clone(), z.clone(), -top],
        [
            (alpha - beta) * &half * x1 + (-alpha + beta - &two) * &half * x2,
            (-alpha + beta) * &half * x1 + (alpha - beta + &two) * &half * x2,
            z.clone(),
            x3 + (alpha + beta) * &quarter * (-x1 - x2),
        ],
        [z.clone(), z.clone(), z.clone(), z],
    ])
}

/// `n1`, the nilpotent elements of `m`.
pub fn nilradical_n1(alpha: &Rational, beta: &Rational) -> Result<Subspace> {
    check_alpha_beta(alpha, beta)?;
    let (z, o) = (int(0), int(1));
    let gens = [
        n1_element(alpha, beta, [&o, &z, &z]),
        n1_element(alpha, beta, [&z, &o, &z]),
        n1_element(alpha, beta, [&z, &z, &o]),
    ];
    Subspace::span(4, &gens)
}

/// The displayed element of `a1` with coordinate `y`.
pub fn a1_element(alpha: &Rational, beta: &Rational, y: &Rational) -> QMatrix {
    let half = y * frac(1, 2);
    let s = alpha + beta;
    let sh = &s * &half;
    let sq = &s * y * frac(1, 4);
    let z = Rational::zero();
    m4([
        [y.clone(), y.clone(), z.clone(), half.clone()],
        [y.clone(), y.clone(), z.clone(), half],
        [sh.clone(), sh, z.clone(), sq],
        [z.clone(), z.clone(), z.clone(), z],
    ])
}

/// `a1`, the semisimple elements of `m`.
pub fn torus_a1(alpha: &Rational, beta: &Rational) -> Result<Subspace> {
    Subspace::span(4, [&x4(alpha, beta)?])
}

/// Model filiform algebra `L_n`: `[X1, Xi] = X{i+1}` for `2 <= i <= n-1`,
/// all other brackets of basis elements zero.
pub fn model_ln(n: usize) -> Result<StructureConstants> {
    if n < 3 {
        return Err(Error::ParamDomain(format!("model filiform algebra needs n >= 3, got {n}")));
    }
    let mut sc = StructureConstants::zero(n);
    for i in 1..n - 1 {
        sc.set_antisymmetric(0, i, i + 1, Rational::one());
    }
    Ok(sc)
}

/// The two displayed generators of `h_n` in `gl(n+1)`.
///
/// `X1`: `a` on the top-left 2x2 block, `1` at `(0, n)`, subdiagonal
/// `(k, k-1) = (k-2)/(k-1)` for `3 <= k <= n-1`, and `alpha, beta` at the
/// start of row `n-1`. `X2`: the same block, `1` at `(1, n)`, row 2 starting
/// `-1, 1`, subdiagonal `(k, k-1) = 1/(k-1)`, and `beta, alpha` at the start
/// of row `n-1`.
pub fn filiform_generators(n: usize, a: &Rational, alpha: &Rational, beta: &Rational) -> Result<(QMatrix, QMatrix)> {
    check_filiform(n, a)?;
    let size = n + 1;
    let mut x1 = QMatrix::zero(size);
    let mut x2 = QMatrix::zero(size);
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        x1[(i, j)] = a.clone();
        x2[(i, j)] = a.clone();
    }
    x1[(0, n)] = int(1);
    x2[(1, n)] = int(1);
    x2[(2, 0)] = int(-1);
    x2[(2, 1)] = int(1);
    for k in 3..n {
        x1[(k, k - 1)] = frac(k as i64 - 2, k as i64 - 1);
        x2[(k, k - 1)] = frac(1, k as i64 - 1);
    }
    x1[(n - 1, 0)] += alpha;
    x1[(n - 1, 1)] += beta;
    x2[(n - 1, 0)] += beta;
    x2[(n - 1, 1)] += alpha;
    Ok((x1, x2))
}

/// One relation of `L_n` evaluated on the printed matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
}

/// Itemized comparison of `h_n` against the model `L_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub n: usize,
    pub checks: Vec<RelationCheck>,
    /// The first relation in `checks` that fails.
    pub first_failure: Option<String>,
    /// Rank of `X1..Xn`.
    pub chain_rank: usize,
    /// Dimension of the bracket closure of `{X1, X2}`.
    pub generated_dim: usize,
    /// Structure constants over `X1..Xn` equal those of `L_n`.
    pub matches_model: bool,
}

impl ComparisonReport {
    pub fn all_hold(&self) -> bool {
        self.first_failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiliformRep {
    pub x1: QMatrix,
    pub x2: QMatrix,
    /// `X1, X2` followed by `Xi = [X1, X{i-1}]` for `3 <= i <= n`.
    pub chain: Vec<QMatrix>,
    pub generated: LieSubalgebra,
    pub report: ComparisonReport,
}

/// Builds `h_n(a, alpha, beta)` and checks the `L_n` relations on it.
pub fn filiform_rep(n: usize, a: &Rational, alpha: &Rational, beta: &Rational) -> Result<FiliformRep> {
    let (x1, x2) = filiform_generators(n, a, alpha, beta)?;
    let size = n + 1;
    let mut chain = vec![x1.clone(), x2.clone()];
    for _ in 3..=n {
        let next = bracket(&x1, chain.last().unwrap())?;
        chain.push(next);
    }

    let mut checks = Vec::new();
    let chain_rank = Subspace::span(size, &chain)?.dim();
    checks.push(RelationCheck { relation: format!("X1..X{n} are linearly independent"), holds: chain_rank == n });
    for i in 2..n {
        let holds = bracket(&chain[0], &chain[i - 1])? == chain[i];
        checks.push(RelationCheck { relation: format!("[X1, X{i}] = X{}", i + 1), holds });
    }
    checks.push(RelationCheck {
        relation: format!("[X1, X{n}] = 0"),
        holds: bracket(&chain[0], &chain[n - 1])?.is_zero(),
    });
    for i in 2..=n {
        for j in i + 1..=n {
            checks.push(RelationCheck {
                relation: format!("[X{i}, X{j}] = 0"),
                holds: bracket(&chain[i - 1], &chain[j - 1])?.is_zero(),
            });
        }
    }

    let closure = LieSubalgebra::generate(size, &[x1.clone(), x2.clone()])?;
    let generated_dim = closure.dim();
    checks.push(RelationCheck {
        relation: format!("closure of {{X1, X2}} has dimension {n}"),
        holds: generated_dim == n,
    });

    let presented =
        if chain_rank == n && generated_dim == n { LieSubalgebra::from_basis(size, chain.clone()).ok() } else { None };
    let matches_model = match &presented {
        Some(l) => l.structure_constants() == Some(&model_ln(n)?),
        None => false,
    };
    checks.push(RelationCheck {
        relation: format!("structure constants over X1..X{n} equal those of L_{n}"),
        holds: matches_model,
    });

    let first_failure = checks.iter().find(|c| !c.holds).map(|c| c.relation.clone());
    let report = ComparisonReport { n, checks, first_failure, chain_rank, generated_dim, matches_model };
    Ok(FiliformRep { x1, x2, chain, generated: presented.unwrap_or(closure), report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::jordan_decompose;
    use crate::ratlinalg::minpoly;
    use crate::ratlinalg::QPoly;

    fn q(v: i64) -> Rational {
        int(v)
    }

    #[test]
    fn heisenberg_entries_and_domain() {
        let [x1, _, _] = heisenberg_basis(&q(1), &q(1)).unwrap();
        assert_eq!(x1.to_rows()[2], vec![q(1), q(1), q(0), q(0)]);
        assert!(matches!(heisenberg_h(&q(1), &q(-1)), Err(Error::ParamDomain(_))));
        let h = heisenberg_h(&q(2), &q(-1)).unwrap();
        assert_eq!(h.dim(), 3);
    }

    #[test]
    fn displays_agree_with_bases() {
        let (al, be) = (frac(1, 2), q(3));
        let [x1, x2, x3] = heisenberg_basis(&al, &be).unwrap();
        let x4m = x4(&al, &be).unwrap();
        let c = [q(2), frac(-1, 3), q(5), frac(7, 2)];
        let combo = &(&(&x1.scale(&c[0]) + &x2.scale(&c[1])) + &x3.scale(&c[2])) + &x4m.scale(&c[3]);
        assert_eq!(m_element(&al, &be, [&c[0], &c[1], &c[2], &c[3]]), combo);
        let combo3 = &(&x1.scale(&c[0]) + &x2.scale(&c[1])) + &x3.scale(&c[2]);
        assert_eq!(h_element(&al, &be, [&c[0], &c[1], &c[2]]), combo3);
        // n1 is the x4 = -(x1 + x2) slice of m
        let x4c = -(&c[0] + &c[1]);
        assert_eq!(n1_element(&al, &be, [&c[0], &c[1], &c[2]]), m_element(&al, &be, [&c[0], &c[1], &c[2], &x4c]));
    }

    #[test]
    fn hull_pieces_have_expected_dims() {
        let (al, be) = (q(1), q(1));
        assert_eq!(hull_m(&al, &be).unwrap().dim(), 4);
        assert_eq!(nilradical_n1(&al, &be).unwrap().dim(), 3);
        assert_eq!(torus_a1(&al, &be).unwrap().dim(), 1);
        let [x1, _, _] = heisenberg_basis(&al, &be).unwrap();
        assert_eq!(x4(&al, &be).unwrap(), jordan_decompose(&x1).semisimple);
    }

    #[test]
    fn displayed_x1_parts_sum_to_x1() {
        let (al, be) = (q(-3), q(5));
        let [x1, _, _] = heisenberg_basis(&al, &be).unwrap();
        let (xs, xn) = x1_jordan_display(&al, &be).unwrap();
        assert_eq!(&xs + &xn, x1);
        assert_eq!(xs, x4(&al, &be).unwrap());
    }

    #[test]
    fn model_small_cases() {
        let l4 = model_ln(4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let expected = match (i, j, k) {
                        (0, 1, 2) | (0, 2, 3) => q(1),
                        (1, 0, 2) | (2, 0, 3) => q(-1),
                        _ => q(0),
                    };
                    assert_eq!(l4.get(i, j, k), &expected, "c[{i}][{j}][{k}]");
                }
            }
        }
        assert!(model_ln(2).is_err());
        assert!(model_ln(7).unwrap().satisfies_jacobi());
        assert_eq!(model_ln(6).unwrap().nilindex().unwrap(), 5);
    }

    #[test]
    fn filiform_five() {
        let rep = filiform_rep(5, &q(1), &q(1), &q(1)).unwrap();
        assert_eq!(minpoly(&rep.x1), QPoly::from_roots(&[(q(0), 3), (q(2), 1)]));
        assert!(rep.report.all_hold(), "{:?}", rep.report);
        assert_eq!(rep.generated.dim(), 5);
    }

    #[test]
    fn filiform_domain_errors() {
        assert!(
            matches!(filiform_rep(3, &q(1), &q(1), &q(1)), Err(Error::ParamDomain(m)) if m.contains("heisenberg_h"))
        );
        assert!(filiform_rep(5, &q(0), &q(1), &q(1)).is_err());
        assert!(filiform_rep(2, &q(1), &q(1), &q(1)).is_err());
    }
}
