//! Univariate polynomials over Q, plus characteristic and minimal polynomials.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::QMatrix;
use super::rational::{self, Rational};
use super::rref::kernel;
use crate::error::{Error, Result};

/// Polynomial in `T`, coefficients stored lowest degree first with no
/// trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl From<QPoly> for Vec<String> {
    fn from(p: QPoly) -> Self {
        p.coeffs.iter().map(rational::format).collect()
    }
}

impl TryFrom<Vec<String>> for QPoly {
    type Error = Error;

    fn try_from(v: Vec<String>) -> Result<Self> {
        let coeffs = v.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>()?;
        Ok(QPoly::new(coeffs))
    }
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `T^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        QPoly { coeffs: c }
    }

    /// `T - r`.
    pub fn linear(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    /// Product of `(T - r)^m` over the given roots.
    pub fn from_roots(roots: &[(Rational, usize)]) -> Self {
        roots.iter().fold(Self::one(), |acc, (r, m)| &acc * &Self::linear(r).pow(*m))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.recip();
                QPoly { coeffs: self.coeffs.iter().map(|c| c * &inv).collect() }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * rational::int(k as i64)).collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.leading().unwrap().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = &r[k] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k - dd + j] -= &c * dc;
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    pub fn divides(&self, other: &QPoly) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// `(g, s, t)` with `s*a + t*b = g = gcd(a, b)`, `g` monic (or zero).
    pub fn ext_gcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = l.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        Self::ext_gcd(a, b).0
    }

    /// Inverse of `self` modulo `m`, when they are coprime.
    pub fn inverse_mod(&self, m: &QPoly) -> Option<QPoly> {
        let (g, s, _) = Self::ext_gcd(&self.rem(m), m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Result<QPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = Self::gcd(self, &self.derivative());
        Ok(self.div_rem(&g).0.monic())
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && Self::gcd(self, &self.derivative()).is_one()
    }

    /// Yun's decomposition: monic square-free, pairwise coprime `f_i` with
    /// `p = lc * prod f_i^i`. Returned as `(f_i, i)` for nonconstant `f_i`.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(QPoly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = self.monic();
        let mut out = Vec::new();
        let d = f.derivative();
        let a0 = Self::gcd(&f, &d);
        let mut b = f.div_rem(&a0).0;
        let mut c = d.div_rem(&a0).0;
        let mut i = 1;
        loop {
            let dd = &c - &b.derivative();
            if b.degree() == Some(0) {
                break;
            }
            let a = Self::gcd(&b, &dd);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            c = dd.div_rem(&a).0;
            i += 1;
        }
        Ok(out)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `p(A)` by Horner's rule.
    pub fn eval_matrix(&self, a: &QMatrix) -> QMatrix {
        let n = a.dim();
        let mut acc = QMatrix::zero(n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * a;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        acc
    }

    /// `self(inner) mod m`.
    pub fn compose_mod(&self, inner: &QPoly, m: &QPoly) -> QPoly {
        let inner = inner.rem(m);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| (&(&acc * &inner) + &Self::constant(c.clone())).rem(m))
    }

    /// Rational roots with multiplicities, or `SplitFailure` carrying the
    /// factor left over once all rational roots are divided out.
    pub fn rational_roots(&self) -> Result<Vec<(Rational, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut remaining = self.monic();
        let mut roots = Vec::new();
        for r in candidate_roots(&self.squarefree_part()?) {
            let lin = Self::linear(&r);
            let mut mult = 0;
            loop {
                let (q, rem) = remaining.div_rem(&lin);
                if !rem.is_zero() {
                    break;
                }
                remaining = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push((r, mult));
            }
        }
        if remaining.degree() != Some(0) {
            return Err(Error::SplitFailure { factor: remaining.to_string() });
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(roots)
    }
}

/// Every `p/q` allowed by the rational root theorem that is actually a root.
fn candidate_roots(p: &QPoly) -> Vec<Rational> {
    let lcm = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let mut out = Vec::new();
    let shift = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if shift > 0 {
        out.push(Rational::zero());
    }
    let ints = &ints[shift..];
    if ints.len() <= 1 {
        return out;
    }
    let q = QPoly::new(ints.iter().map(|c| Rational::from_integer(c.clone())).collect());
    let lead = ints.last().unwrap().abs();
    let constant = ints[0].abs();
    for num in divisors(&constant) {
        for den in divisors(&lead) {
            for sign in [1i64, -1] {
                let r = Rational::new(&num * BigInt::from(sign), den.clone());
                if r.denom() == &den && q.eval(&r).is_zero() && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let limit = n.sqrt();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while d <= limit {
        if (&n % &d).is_zero() {
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl Add for &QPoly {
    type Output = QPoly;

    fn add(self, rhs: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;

    fn sub(self, rhs: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;

    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::new(c)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{}", rational::format(&abs))?;
                if k > 0 {
                    write!(f, "*")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "T")?,
                _ => write!(f, "T^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

/// Monic characteristic polynomial `det(T I - A)` by Faddeev-LeVerrier.
///
/// `M_k = A M_{k-1} + c_{n-k+1} I`, `c_{n-k} = -tr(A M_k) / k`.
pub fn charpoly(a: &QMatrix) -> QPoly {
    let n = a.dim();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut m = QMatrix::zero(n);
    for k in 1..=n {
        let mut next = a * &m;
        for i in 0..n {
            next[(i, i)] += &c[n - k + 1];
        }
        m = next;
        let am = a * &m;
        c[n - k] = -am.trace() / rational::int(k as i64);
    }
    QPoly::new(c)
}

/// Monic minimal polynomial: the first linear dependency among
/// `I, A, A^2, ...` inside the `n^2`-dimensional matrix space.
pub fn minpoly(a: &QMatrix) -> QPoly {
    let n = a.dim();
    let mut powers = vec![QMatrix::identity(n)];
    loop {
        let next = &powers[powers.len() - 1] * a;
        powers.push(next);
        let k = powers.len();
        // columns are the flattened powers; a kernel vector is a relation
        let rows: Vec<Vec<Rational>> =
            (0..n * n).map(|e| powers.iter().map(|p| p.as_flat()[e].clone()).collect()).collect();
        let ker = kernel(&rows, k);
        if let Some(rel) = ker.into_iter().next() {
            return QPoly::new(rel).monic();
        }
        assert!(k <= n + 1, "Cayley-Hamilton bounds the Krylov search");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlinalg::rational::{frac, int};

    fn p(c: &[i64]) -> QPoly {
        QPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[0, 0, -2, 1]).to_string(), "T^3 - 2*T^2");
        assert_eq!(p(&[1, 0, 1]).to_string(), "T^2 + 1");
        assert_eq!(QPoly::zero().to_string(), "0");
    }

    #[test]
    fn squarefree_examples() {
        // T^3 (T - 2) = T^4 - 2T^3; gcd with 4T^3 - 6T^2 is T^2
        let f = p(&[0, 0, 0, -2, 1]);
        assert_eq!(f.squarefree_part().unwrap(), p(&[0, -2, 1]));
        let g = p(&[-6, 4]);
        assert_eq!(g.squarefree_part().unwrap(), p(&[-3, 2]).monic());
        assert_eq!(QPoly::gcd(&QPoly::monomial(2), &QPoly::monomial(3)), QPoly::monomial(2));
        assert_eq!(QPoly::zero().squarefree_part(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn yun_recovers_multiplicities() {
        let f = QPoly::from_roots(&[(int(0), 3), (int(2), 1), (frac(1, 2), 2)]);
        let dec = f.squarefree_decomposition().unwrap();
        assert_eq!(dec, vec![(QPoly::linear(&int(2)), 1), (QPoly::linear(&frac(1, 2)), 2), (QPoly::monomial(1), 3)]);
    }

    #[test]
    fn roots_examples() {
        assert_eq!(p(&[0, 0, 0, -2, 1]).rational_roots().unwrap(), vec![(int(0), 3), (int(2), 1)]);
        assert!(matches!(p(&[1, 0, 1]).rational_roots(), Err(Error::SplitFailure { .. })));
        let half = QPoly::from_roots(&[(frac(1, 2), 2)]);
        assert_eq!(half.rational_roots().unwrap(), vec![(frac(1, 2), 2)]);
        // (T^2 - 2)(T - 3): 3 is found, T^2 - 2 is reported
        let f = &p(&[-2, 0, 1]) * &p(&[-3, 1]);
        match f.rational_roots() {
            Err(Error::SplitFailure { factor }) => assert_eq!(factor, "T^2 - 2"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inverse_mod_works() {
        let m = p(&[0, -2, 1]); // T(T-2)
        let g = p(&[-2, 2]).inverse_mod(&m).unwrap(); // f' = 2T - 2
        assert!((&(&g * &p(&[-2, 2])) - &QPoly::one()).rem(&m).is_zero());
        assert!(p(&[0, 1]).inverse_mod(&m).is_none());
    }

    #[test]
    fn charpoly_and_minpoly_basics() {
        assert_eq!(charpoly(&QMatrix::zero(3)), QPoly::monomial(3));
        assert_eq!(minpoly(&QMatrix::identity(4)), p(&[-1, 1]));
        let j = QMatrix::from_i64(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 2]]);
        assert_eq!(charpoly(&j), QPoly::from_roots(&[(int(2), 3)]));
        assert_eq!(minpoly(&j), QPoly::from_roots(&[(int(2), 2)]));
    }
}
