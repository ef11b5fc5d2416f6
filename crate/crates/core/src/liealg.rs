//! Matrix Lie subalgebras of `gl(n)`: bracket closure, structure constants,
//! lower central series, center, and Engel-style unipotence certificates.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::jordan::is_nilpotent_matrix;
use crate::ratlinalg::rational::{self, Rational};
use crate::ratlinalg::rref::{kernel, row_space};
use crate::ratlinalg::{QMatrix, Subspace};

/// `[a, b] = ab - ba`.
pub fn bracket(a: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
    a.check_same_dim(b)?;
    Ok(a.commutator(b))
}

/// `sum_i coeffs[i] * basis[i]`.
pub fn combination(n: usize, basis: &[QMatrix], coeffs: &[Rational]) -> QMatrix {
    basis.iter().zip(coeffs).fold(QMatrix::zero(n), |acc, (b, c)| if c.is_zero() { acc } else { &acc + &b.scale(c) })
}

/// Structure constants `c[i][j][k]` with `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    c: Vec<Vec<Vec<Rational>>>,
}

impl StructureConstants {
    pub fn zero(dim: usize) -> Self {
        StructureConstants { dim, c: vec![vec![vec![Rational::zero(); dim]; dim]; dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    /// Sets `c[i][j][k] = v` and `c[j][i][k] = -v`.
    pub fn set_antisymmetric(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        self.c[j][i][k] = -v.clone();
        self.c[i][j][k] = v;
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| (0..self.dim).all(|k| self.c[i][j][k] == -self.c[j][i][k].clone())))
    }

    /// Jacobi identity on every basis triple, checked in every output slot.
    pub fn satisfies_jacobi(&self) -> bool {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let mut s = Rational::zero();
                        for m in 0..d {
                            s += &self.c[i][j][m] * &self.c[m][k][l];
                            s += &self.c[j][k][m] * &self.c[m][i][l];
                            s += &self.c[k][i][m] * &self.c[m][j][l];
                        }
                        if !s.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket_coords(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let w = ui * vj;
                for (o, c) in out.iter_mut().zip(&self.c[i][j]) {
                    if !c.is_zero() {
                        *o += &w * c;
                    }
                }
            }
        }
        out
    }

    /// Dimensions of `C^1 = g, C^{k+1} = [g, C^k]` until zero or stable.
    pub fn lower_central_dims(&self) -> Vec<usize> {
        let d = self.dim;
        let units: Vec<Vec<Rational>> =
            (0..d).map(|i| (0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
        let mut current = units.clone();
        let mut dims = vec![d];
        while !current.is_empty() {
            let gens: Vec<Vec<Rational>> =
                units.iter().flat_map(|e| current.iter().map(|c| self.bracket_coords(e, c))).collect();
            let next = row_space(&gens, d);
            if next.len() == current.len() {
                break;
            }
            dims.push(next.len());
            current = next;
        }
        dims
    }

    pub fn nilindex(&self) -> Result<usize> {
        let dims = self.lower_central_dims();
        match dims.last() {
            Some(0) => Ok(dims.len() - 1),
            Some(&stable_dim) => Err(Error::NotNilpotentAlgebra { stable_dim }),
            None => unreachable!("series always has a first term"),
        }
    }
}

impl Serialize for StructureConstants {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let c: Vec<Vec<Vec<String>>> =
            self.c.iter().map(|a| a.iter().map(|b| b.iter().map(rational::format).collect()).collect()).collect();
        StructureRepr { c }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for StructureConstants {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = StructureRepr::deserialize(d)?;
        let dim = r.c.len();
        let mut c = Vec::with_capacity(dim);
        for a in r.c {
            if a.len() != dim || a.iter().any(|b| b.len() != dim) {
                return Err(D::Error::custom("structure constants must form a d x d x d tensor"));
            }
            c.push(
                a.into_iter()
                    .map(|b| b.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
                    .map_err(D::Error::custom)?,
            );
        }
        Ok(StructureConstants { dim, c })
    }
}

#[derive(Serialize, Deserialize)]
struct StructureRepr {
    c: Vec<Vec<Vec<String>>>,
}

/// A bracket-closed subspace of `gl(n)`, optionally with a presentation basis
/// (for example `X1, X2, X3`) and its structure constants.
#[derive(Clone, Debug)]
pub struct LieSubalgebra {
    space: Subspace,
    user_basis: Option<Vec<QMatrix>>,
    structure_constants: Option<StructureConstants>,
}

impl PartialEq for LieSubalgebra {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.basis() == other.basis()
    }
}

impl Eq for LieSubalgebra {}

impl LieSubalgebra {
    /// Uses `basis` as the presentation basis; it must be independent and
    /// bracket-closed.
    pub fn from_basis(n: usize, basis: Vec<QMatrix>) -> Result<Self> {
        let space = Subspace::span(n, &basis)?;
        if space.dim() != basis.len() {
            return Err(Error::DependentBasis);
        }
        let constants = structure_constants(n, &basis)?;
        Ok(LieSubalgebra { space, user_basis: Some(basis), structure_constants: Some(constants) })
    }

    pub fn from_subspace(space: Subspace) -> Result<Self> {
        if let Some((i, j)) = first_escaping_pair(&space) {
            return Err(Error::NotClosed(format!("[b{}, b{}] leaves the span", i + 1, j + 1)));
        }
        Ok(LieSubalgebra { space, user_basis: None, structure_constants: None })
    }

    /// Smallest bracket-closed subspace containing `gens`.
    ///
    /// Each round adjoins all pairwise brackets of the current canonical
    /// basis (in basis order) and re-canonicalizes; the dimension strictly
    /// grows until the fixed point, so at most `n^2` rounds run. When the
    /// generators are already an independent closed set they are kept as the
    /// presentation basis.
    pub fn generate(n: usize, gens: &[QMatrix]) -> Result<Self> {
        let mut space = Subspace::span(n, gens)?;
        loop {
            let b = space.basis();
            let mut brackets = Vec::new();
            for i in 0..b.len() {
                for j in i + 1..b.len() {
                    let c = bracket(&b[i], &b[j])?;
                    if !c.is_zero() {
                        brackets.push(c);
                    }
                }
            }
            let next = space.extend(&brackets)?;
            if next.dim() == space.dim() {
                break;
            }
            space = next;
        }
        let nonzero: Vec<QMatrix> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        if !nonzero.is_empty() && nonzero.len() == space.dim() {
            return Self::from_basis(n, nonzero);
        }
        Ok(LieSubalgebra { space, user_basis: None, structure_constants: None })
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Matrix size `n` of the ambient `gl(n)`.
    pub fn ambient_dim(&self) -> usize {
        self.space.ambient_dim()
    }

    /// The presentation basis if one was given, else the canonical one.
    pub fn basis(&self) -> &[QMatrix] {
        self.user_basis.as_deref().unwrap_or_else(|| self.space.basis())
    }

    pub fn user_basis(&self) -> Option<&[QMatrix]> {
        self.user_basis.as_deref()
    }

    pub fn structure_constants(&self) -> Option<&StructureConstants> {
        self.structure_constants.as_ref()
    }

    /// Structure constants over [`Self::basis`], computed if not cached.
    pub fn constants(&self) -> StructureConstants {
        match &self.structure_constants {
            Some(c) => c.clone(),
            None => structure_constants(self.ambient_dim(), self.basis()).expect("algebra is closed"),
        }
    }

    pub fn contains(&self, x: &QMatrix) -> Result<bool> {
        self.space.contains(x)
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraRepr {
    dim: usize,
    basis: Vec<QMatrix>,
}

impl Serialize for LieSubalgebra {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraRepr { dim: self.ambient_dim(), basis: self.basis().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LieSubalgebra {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = AlgebraRepr::deserialize(d)?;
        LieSubalgebra::from_basis(r.dim, r.basis).map_err(D::Error::custom)
    }
}

fn first_escaping_pair(space: &Subspace) -> Option<(usize, usize)> {
    let b = space.basis();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            let c = bracket(&b[i], &b[j]).expect("same ambient");
            if !space.contains(&c).expect("same ambient") {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_subalgebra(s: &Subspace) -> bool {
    first_escaping_pair(s).is_none()
}

/// Solves every `[b_i, b_j]` in the given basis; `NotClosed` if one escapes.
pub fn structure_constants(n: usize, basis: &[QMatrix]) -> Result<StructureConstants> {
    let space = Subspace::span(n, basis)?;
    let k = basis.len();
    if space.dim() != k {
        return Err(Error::DependentBasis);
    }
    // row i of `change` holds the canonical coordinates of basis[i]
    let mut change = QMatrix::zero(k);
    for (i, b) in basis.iter().enumerate() {
        let coords = space.coordinates(b)?.expect("basis lies in its span");
        for (j, v) in coords.into_iter().enumerate() {
            change[(i, j)] = v;
        }
    }
    let to_user = change.inverse().expect("independent basis");
    let mut sc = StructureConstants::zero(k);
    for i in 0..k {
        for j in i + 1..k {
            let c = bracket(&basis[i], &basis[j])?;
            let canon = space
                .coordinates(&c)?
                .ok_or_else(|| Error::NotClosed(format!("[X{}, X{}] is outside the span", i + 1, j + 1)))?;
            for (m, v) in to_user.transpose().apply(&canon).into_iter().enumerate() {
                if !v.is_zero() {
                    sc.set_antisymmetric(i, j, m, v);
                }
            }
        }
    }
    Ok(sc)
}

/// `span{[a, b] : a in A, b in B}`.
fn bracket_span(n: usize, a: &[QMatrix], b: &[QMatrix]) -> Subspace {
    let gens: Vec<QMatrix> =
        a.iter().flat_map(|x| b.iter().map(move |y| bracket(x, y).expect("same ambient"))).collect();
    Subspace::span(n, &gens).expect("same ambient")
}

/// `C^1 = L`, `C^{k+1} = [L, C^k]`, stopping at zero or when the series stabilizes.
pub fn lower_central_series(l: &LieSubalgebra) -> Vec<Subspace> {
    let n = l.ambient_dim();
    let mut series = vec![l.space().clone()];
    loop {
        let current = series.last().unwrap();
        if current.is_zero() {
            break;
        }
        let next = bracket_span(n, l.basis(), current.basis());
        if &next == current {
            break;
        }
        series.push(next);
    }
    series
}

/// Least `k` with `C^{k+1} = 0`.
pub fn nilindex(l: &LieSubalgebra) -> Result<usize> {
    let series = lower_central_series(l);
    let last = series.last().unwrap();
    if last.is_zero() {
        Ok(series.len() - 1)
    } else {
        Err(Error::NotNilpotentAlgebra { stable_dim: last.dim() })
    }
}

pub fn is_nilpotent_algebra(l: &LieSubalgebra) -> bool {
    nilindex(l).is_ok()
}

/// Nilindex equals `dim - 1`, on the matrix realization itself.
pub fn is_filiform(l: &LieSubalgebra) -> bool {
    l.dim() >= 1 && nilindex(l).is_ok_and(|k| k == l.dim() - 1)
}

pub fn derived_subalgebra(l: &LieSubalgebra) -> Subspace {
    bracket_span(l.ambient_dim(), l.basis(), l.basis())
}

/// `{x in L : [x, b] = 0 for every basis element b}`.
pub fn center(l: &LieSubalgebra) -> Subspace {
    let n = l.ambient_dim();
    let b = l.basis();
    let d = b.len();
    // unknown coefficients c_i; one equation per (j, matrix entry)
    let brackets: Vec<Vec<QMatrix>> =
        b.iter().map(|bi| b.iter().map(|bj| bracket(bi, bj).expect("same ambient")).collect()).collect();
    let mut rows = Vec::new();
    for j in 0..d {
        for e in 0..n * n {
            let row: Vec<Rational> = (0..d).map(|i| brackets[i][j].as_flat()[e].clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let gens: Vec<QMatrix> = kernel(&rows, d).iter().map(|c| combination(n, b, c)).collect();
    Subspace::span(n, &gens).expect("same ambient")
}

/// `[L, s] ⊆ s`.
pub fn is_ideal(s: &Subspace, l: &LieSubalgebra) -> Result<bool> {
    if s.ambient_dim() != l.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: l.ambient_dim(), found: s.ambient_dim() });
    }
    for x in l.basis() {
        for y in s.basis() {
            if !s.contains(&bracket(x, y)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of the Engel procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Unipotence {
    /// `0 = W_0 ⊂ W_1 ⊂ ... ⊂ W_m = Q^n` with `L W_{k+1} ⊆ W_k`; each entry
    /// is a row basis of `W_k`, starting from `W_1`.
    Unipotent { flag: Vec<Vec<Vec<Rational>>> },
    /// The flag stalled; `witness` is a non-nilpotent element when the
    /// deterministic search found one.
    NotUnipotent { stalled_at: usize, witness: Option<QMatrix> },
}

impl Unipotence {
    pub fn holds(&self) -> bool {
        matches!(self, Unipotence::Unipotent { .. })
    }
}

/// Decides whether every element of `L` is nilpotent.
///
/// Builds `W_{k+1} = {v : b v ∈ W_k for every basis b}` from `W_0 = 0`. The
/// chain reaches `Q^n` iff `L` is simultaneously strictly triangularizable,
/// which for a Lie algebra is equivalent to all elements being nilpotent.
pub fn is_unipotent(l: &LieSubalgebra) -> Unipotence {
    let n = l.ambient_dim();
    let basis = l.basis();
    // rows of `annihilator` cut out the current W as a kernel
    let mut annihilator: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
    let mut flag: Vec<Vec<Vec<Rational>>> = Vec::new();
    let mut current_dim = 0;
    loop {
        let mut rows = Vec::new();
        for b in basis {
            let bt = b.transpose();
            for q in &annihilator {
                // (q^T b) v = 0
                rows.push(bt.apply(q));
            }
        }
        let next = row_space(&kernel(&rows, n), n);
        if next.len() == current_dim {
            return Unipotence::NotUnipotent { stalled_at: current_dim, witness: find_non_nilpotent(l) };
        }
        current_dim = next.len();
        annihilator = kernel(&next, n);
        flag.push(next);
        if current_dim == n {
            return Unipotence::Unipotent { flag };
        }
    }
}

/// Basis elements, then pairwise sums, then seeded random combinations.
fn find_non_nilpotent(l: &LieSubalgebra) -> Option<QMatrix> {
    let n = l.ambient_dim();
    let b = l.basis();
    let mut candidates: Vec<QMatrix> = b.to_vec();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            candidates.push(&b[i] + &b[j]);
        }
    }
    if let Some(w) = candidates.into_iter().find(|x| !is_nilpotent_matrix(x)) {
        return Some(w);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    (0..64).find_map(|_| {
        let coeffs: Vec<Rational> = (0..b.len()).map(|_| rational::int(rng.gen_range(-9..=9))).collect();
        let x = combination(n, b, &coeffs);
        (!is_nilpotent_matrix(&x)).then_some(x)
    })
}
