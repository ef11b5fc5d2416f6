//! Algebraicity of matrix Lie algebras.
//!
//! A Lie subalgebra `L` of `gl(n)` is algebraic iff `g(X) ⊆ L` for every
//! `X ∈ L`; in particular `X_s, X_n ∈ L`. A failure on one element is an
//! exact refutation. Success can only be checked on a finite population
//! (basis, pairwise sums, seeded random integer combinations), so the
//! positive verdict is sample-relative unless `L` equals its derived algebra,
//! which is sufficient on its own.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jordan::{commute, is_semisimple, jordan_decompose};
use crate::liealg::{
    combination, derived_subalgebra, is_ideal, is_nilpotent_algebra, is_unipotent, nilindex, LieSubalgebra,
};
use crate::ratlinalg::rational::int;
use crate::ratlinalg::{QMatrix, Subspace};
use crate::replica::replica_from_parts;

/// Size and seed of the sample population.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    /// Number of random combinations added after the basis and pairwise sums.
    pub samples: usize,
    /// Random coefficients are drawn uniformly from `[-bound, bound]`.
    pub bound: i64,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { samples: 32, bound: 5, seed: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictKind {
    NotAlgebraic,
    ClosedOnSamples,
    PerfectHenceAlgebraic,
}

/// Which closure requirement failed for a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FailedPart {
    #[serde(rename = "semisimple-part")]
    Semisimple,
    #[serde(rename = "nilpotent-part")]
    Nilpotent,
    #[serde(rename = "replica")]
    Replica,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// The element `X ∈ L` whose closure fails.
    pub element: QMatrix,
    pub part: FailedPart,
    /// The matrix found outside `L` (`X_s`, `X_n`, or a basis element of `g(X)`).
    pub offending: QMatrix,
    /// Position of `element` in the population.
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    /// Random combinations requested.
    pub samples: usize,
    pub bound: i64,
    pub seed: u64,
    /// Population elements examined before the verdict.
    pub samples_checked: usize,
    /// Elements whose spectrum is irrational; only their Jordan parts were checked.
    pub split_failures: usize,
}

/// Basis, then `b_i + b_j` for `i < j`, then `samples` seeded combinations.
pub fn population(l: &LieSubalgebra, cfg: &SampleConfig) -> Vec<QMatrix> {
    population_iter(l, cfg).collect()
}

/// Lazy form of [`population`]; refutations usually stop at the basis.
pub fn population_iter<'a>(l: &'a LieSubalgebra, cfg: &SampleConfig) -> impl Iterator<Item = QMatrix> + 'a {
    let n = l.ambient_dim();
    let b = l.basis();
    let pairs = (0..b.len()).flat_map(move |i| (i + 1..b.len()).map(move |j| &b[i] + &b[j]));
    let samples = if b.is_empty() { 0 } else { cfg.samples };
    let bound = cfg.bound;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let random = (0..samples).map(move |_| {
        let coeffs: Vec<_> = (0..b.len()).map(|_| int(rng.gen_range(-bound..=bound))).collect();
        combination(n, b, &coeffs)
    });
    b.iter().cloned().chain(pairs).chain(random)
}

enum ElementCheck {
    Closed { split_failure: bool },
    Fails(FailedPart, QMatrix),
}

fn check_element(space: &Subspace, x: &QMatrix) -> Result<ElementCheck> {
    let jp = jordan_decompose(x);
    if !space.contains(&jp.semisimple)? {
        return Ok(ElementCheck::Fails(FailedPart::Semisimple, jp.semisimple));
    }
    if !space.contains(&jp.nilpotent)? {
        return Ok(ElementCheck::Fails(FailedPart::Nilpotent, jp.nilpotent));
    }
    match replica_from_parts(&jp) {
        Ok(r) => {
            for b in r.total.basis() {
                if !space.contains(b)? {
                    return Ok(ElementCheck::Fails(FailedPart::Replica, b.clone()));
                }
            }
            Ok(ElementCheck::Closed { split_failure: false })
        }
        Err(Error::SplitFailure { .. }) => Ok(ElementCheck::Closed { split_failure: true }),
        Err(e) => Err(e),
    }
}

/// Refutes algebraicity by witness, or reports closure on the sample population.
pub fn check_algebraic(l: &LieSubalgebra, cfg: &SampleConfig) -> Verdict {
    let mut verdict = Verdict {
        kind: VerdictKind::ClosedOnSamples,
        witness: None,
        samples: cfg.samples,
        bound: cfg.bound,
        seed: cfg.seed,
        samples_checked: 0,
        split_failures: 0,
    };
    if &derived_subalgebra(l) == l.space() {
        verdict.kind = VerdictKind::PerfectHenceAlgebraic;
        return verdict;
    }
    for (index, x) in population_iter(l, cfg).enumerate() {
        verdict.samples_checked += 1;
        match check_element(l.space(), &x).expect("population lies in the ambient space") {
            ElementCheck::Closed { split_failure } => verdict.split_failures += split_failure as usize,
            ElementCheck::Fails(part, offending) => {
                verdict.kind = VerdictKind::NotAlgebraic;
                verdict.witness = Some(Witness { element: x, part, offending, index });
                return verdict;
            }
        }
    }
    verdict
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Adjunction {
    pub round: usize,
    pub source: QMatrix,
    pub adjoined: QMatrix,
    pub reason: FailedPart,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HullStatus {
    Converged,
    /// Still growing when the round cap was hit; the hull is partial.
    RoundLimitExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullReport {
    pub hull: LieSubalgebra,
    pub rounds: usize,
    pub adjoined: Vec<Adjunction>,
    pub status: HullStatus,
    /// [`check_algebraic`] on the final hull, same configuration.
    pub verdict: Verdict,
}

impl HullReport {
    pub fn is_valid(&self) -> bool {
        self.status == HullStatus::Converged && self.verdict.kind != VerdictKind::NotAlgebraic
    }
}

pub const DEFAULT_MAX_ROUNDS: usize = 16;

/// Candidate algebraic hull by fixed-point iteration.
///
/// Each round walks the population of the current algebra and adjoins every
/// missing `X_s`, `X_n`, and basis element of `g(X)`, then re-closes under
/// brackets. Stops when a round adjoins nothing, when the hull is all of
/// `gl(n)`, or after `max_rounds`.
pub fn algebraic_hull(l: &LieSubalgebra, cfg: &SampleConfig, max_rounds: usize) -> HullReport {
    let n = l.ambient_dim();
    let mut current = l.clone();
    let mut adjoined = Vec::new();
    let mut rounds = 0;
    let status = loop {
        if current.dim() == n * n {
            break HullStatus::Converged;
        }
        if rounds == max_rounds {
            break HullStatus::RoundLimitExceeded;
        }
        rounds += 1;
        let mut span = current.space().clone();
        let mut gens: Vec<QMatrix> = current.basis().to_vec();
        let before = adjoined.len();
        for x in population(&current, cfg) {
            let jp = jordan_decompose(&x);
            let mut candidates =
                vec![(jp.semisimple.clone(), FailedPart::Semisimple), (jp.nilpotent.clone(), FailedPart::Nilpotent)];
            if let Ok(r) = replica_from_parts(&jp) {
                candidates.extend(r.total.basis().iter().map(|b| (b.clone(), FailedPart::Replica)));
            }
            for (m, reason) in candidates {
                if !span.contains(&m).expect("same ambient") {
                    span = span.extend([&m]).expect("same ambient");
                    gens.push(m.clone());
                    adjoined.push(Adjunction { round: rounds, source: x.clone(), adjoined: m, reason });
                }
            }
        }
        if adjoined.len() == before {
            break HullStatus::Converged;
        }
        current = LieSubalgebra::generate(n, &gens).expect("same ambient");
    };
    let verdict = check_algebraic(&current, cfg);
    HullReport { hull: current, rounds, adjoined, status, verdict }
}

/// Attempted splitting `L = n ⊕ a` into nilpotent and semisimple parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotentDecomposition {
    pub nil_part: Subspace,
    pub semisimple_part: Subspace,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

/// Builds `n` and `a` from the Jordan parts of the basis and validates every
/// property of the splitting; the first violated property is the reason.
pub fn nilpotent_decomposition(l: &LieSubalgebra) -> Result<NilpotentDecomposition> {
    if let Err(Error::NotNilpotentAlgebra { stable_dim }) = nilindex(l) {
        return Err(Error::NotNilpotentAlgebra { stable_dim });
    }
    debug_assert!(is_nilpotent_algebra(l));
    let n = l.ambient_dim();
    let parts: Vec<_> = l.basis().iter().map(jordan_decompose).collect();
    let semis: Vec<QMatrix> = parts.iter().map(|p| p.semisimple.clone()).collect();
    let nils: Vec<QMatrix> = parts.iter().map(|p| p.nilpotent.clone()).collect();
    let a = Subspace::span(n, &semis)?;
    let nil = Subspace::span(n, &nils)?;
    let reason = decomposition_failure(l, &parts, &nil, &a)?;
    Ok(NilpotentDecomposition { nil_part: nil, semisimple_part: a, valid: reason.is_none(), reason })
}

fn decomposition_failure(
    l: &LieSubalgebra,
    parts: &[crate::jordan::JordanPair],
    nil: &Subspace,
    a: &Subspace,
) -> Result<Option<String>> {
    for (i, p) in parts.iter().enumerate() {
        if !l.contains(&p.semisimple)? {
            return Ok(Some(format!("semisimple part of basis element {} lies outside L", i + 1)));
        }
        if !l.contains(&p.nilpotent)? {
            return Ok(Some(format!("nilpotent part of basis element {} lies outside L", i + 1)));
        }
    }
    if nil.dim() + a.dim() != l.dim() || &nil.sum(a)? != l.space() {
        return Ok(Some(format!(
            "n (dim {}) and a (dim {}) do not form a direct sum equal to L (dim {})",
            nil.dim(),
            a.dim(),
            l.dim()
        )));
    }
    if !is_ideal(nil, l)? {
        return Ok(Some("n is not an ideal of L".into()));
    }
    match LieSubalgebra::from_subspace(nil.clone()) {
        Ok(nl) if is_unipotent(&nl).holds() => {}
        _ => return Ok(Some("n is not a unipotent subalgebra".into())),
    }
    let ab = a.basis();
    for (i, x) in ab.iter().enumerate() {
        if !is_semisimple(x) {
            return Ok(Some(format!("basis element {} of a is not semisimple", i + 1)));
        }
        if ab[i + 1..].iter().any(|y| !commute(x, y)) {
            return Ok(Some("a is not abelian".into()));
        }
        if l.basis().iter().any(|y| !commute(x, y)) {
            return Ok(Some("a is not central in L".into()));
        }
    }
    Ok(None)
}
