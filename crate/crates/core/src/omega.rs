//! The commutative polynomial ring `Ω = F[ξ_{ij}^{(k)}]` and sparse matrices
//! over it.
//!
//! Coefficients are exact rationals, or residues modulo a prime `p`. In
//! modular mode every stored coefficient is an integer in `[0, p)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoefficientError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("coefficient {value} has a denominator divisible by {p}")]
    DenominatorDivisibleByP { value: String, p: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CoeffMode {
    #[default]
    Rational,
    ModPrime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CoeffMode {
    pub fn mod_prime(p: u64) -> Result<CoeffMode, CoefficientError> {
        if is_prime(p) {
            Ok(CoeffMode::ModPrime(p))
        } else {
            Err(CoefficientError::NotPrime(p))
        }
    }

    /// Maps a rational into the coefficient ring of this mode.
    pub fn reduce(&self, q: &BigRational) -> Result<BigRational, CoefficientError> {
        match self {
            CoeffMode::Rational => Ok(q.clone()),
            CoeffMode::ModPrime(p) => {
                let modulus = BigInt::from(*p);
                let den = q.denom().mod_floor(&modulus);
                if den.is_zero() {
                    return Err(CoefficientError::DenominatorDivisibleByP {
                        value: q.to_string(),
                        p: *p,
                    });
                }
                let inv = den.modpow(&(&modulus - 2), &modulus);
                let value = (q.numer().mod_floor(&modulus) * inv).mod_floor(&modulus);
                Ok(BigRational::from_integer(value))
            }
        }
    }

    fn normalize(&self, q: BigRational) -> BigRational {
        match self {
            CoeffMode::Rational => q,
            CoeffMode::ModPrime(p) => {
                debug_assert!(q.is_integer());
                BigRational::from_integer(q.to_integer().mod_floor(&BigInt::from(*p)))
            }
        }
    }
}

/// The variable `ξ_{ij}^{(k)}`. Ordered by `(k, i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaVariable {
    pub k: u32,
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for OmegaVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ξ[{},{},{}]", self.k, self.i, self.j)
    }
}

/// A monomial of `Ω`: sorted variables with positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OmegaMonomial(Vec<(OmegaVariable, u32)>);

impl OmegaMonomial {
    pub fn one() -> OmegaMonomial {
        OmegaMonomial(Vec::new())
    }

    pub fn var(v: OmegaVariable) -> OmegaMonomial {
        OmegaMonomial(vec![(v, 1)])
    }

    pub fn from_variables(vars: impl IntoIterator<Item = OmegaVariable>) -> OmegaMonomial {
        vars.into_iter().fold(OmegaMonomial::one(), |acc, v| {
            acc.mul(&OmegaMonomial::var(v))
        })
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(OmegaVariable, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &OmegaMonomial) -> OmegaMonomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => {
                    if va < vb {
                        out.push((va, ea));
                        a.next();
                    } else if vb < va {
                        out.push((vb, eb));
                        b.next();
                    } else {
                        out.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, Some(&&x)) => {
                    out.push(x);
                    b.next();
                }
                (None, None) => break,
            }
        }
        OmegaMonomial(out)
    }
}

impl fmt::Display for OmegaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (pos, (v, e)) in self.0.iter().enumerate() {
            if pos > 0 {
                f.write_str(" · ")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Element of `Ω` with no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaPolynomial {
    mode: CoeffMode,
    terms: BTreeMap<OmegaMonomial, BigRational>,
}

impl OmegaPolynomial {
    pub fn zero(mode: CoeffMode) -> OmegaPolynomial {
        OmegaPolynomial {
            mode,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(mode: CoeffMode, m: OmegaMonomial, coeff: BigRational) -> OmegaPolynomial {
        let mut p = OmegaPolynomial::zero(mode);
        p.add_term(m, coeff);
        p
    }

    pub fn mode(&self) -> CoeffMode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OmegaMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff · m`; `coeff` must already live in this mode's ring.
    pub fn add_term(&mut self, m: OmegaMonomial, coeff: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                let c = self.mode.normalize(coeff);
                if !c.is_zero() {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                let sum = self.mode.normalize(slot.get() + coeff);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &OmegaPolynomial) -> OmegaPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> OmegaPolynomial {
        let mut out = OmegaPolynomial::zero(self.mode);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), self.mode.normalize(v * c));
        }
        out
    }

    pub fn mul(&self, other: &OmegaPolynomial) -> OmegaPolynomial {
        let mut out = OmegaPolynomial::zero(self.mode);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), self.mode.normalize(ca * cb));
            }
        }
        out
    }

    /// Keeps only the monomials satisfying `keep`.
    pub fn retain_monomials(
        &self,
        mut keep: impl FnMut(&OmegaMonomial) -> bool,
    ) -> OmegaPolynomial {
        OmegaPolynomial {
            mode: self.mode,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for OmegaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (pos, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (pos, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if abs.is_one() {
                write!(f, "{m}")?;
            } else if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}·{m}")?;
            }
        }
        Ok(())
    }
}

/// Sparse `n×n` matrix over `Ω`; zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericMatrix {
    n: usize,
    mode: CoeffMode,
    entries: BTreeMap<(usize, usize), OmegaPolynomial>,
}

impl GenericMatrix {
    pub fn zero(n: usize, mode: CoeffMode) -> GenericMatrix {
        GenericMatrix {
            n,
            mode,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> CoeffMode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&OmegaPolynomial> {
        self.entries.get(&(i, j))
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &OmegaPolynomial)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn set(&mut self, i: usize, j: usize, value: OmegaPolynomial) {
        if value.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), value);
        }
    }

    pub fn add_assign(&mut self, other: &GenericMatrix) {
        for (&(i, j), v) in &other.entries {
            let sum = match self.entries.get(&(i, j)) {
                Some(cur) => cur.add(v),
                None => v.clone(),
            };
            self.set(i, j, sum);
        }
    }

    pub fn scale(&self, c: &BigRational) -> GenericMatrix {
        let mut out = GenericMatrix::zero(self.n, self.mode);
        for (&(i, j), v) in &self.entries {
            out.set(i, j, v.scale(c));
        }
        out
    }

    pub fn mul(&self, other: &GenericMatrix) -> GenericMatrix {
        let mut out = GenericMatrix::zero(self.n, self.mode);
        for (&(i, k), a) in &self.entries {
            for (&(_, j), b) in other.entries.range((k, 0)..=(k, usize::MAX)) {
                let prod = a.mul(b);
                let sum = match out.entries.get(&(i, j)) {
                    Some(cur) => cur.add(&prod),
                    None => prod,
                };
                out.set(i, j, sum);
            }
        }
        out
    }

    /// Applies `f` to every entry, dropping entries that become zero.
    pub fn map_entries(
        &self,
        mut f: impl FnMut(&OmegaPolynomial) -> OmegaPolynomial,
    ) -> GenericMatrix {
        let mut out = GenericMatrix::zero(self.n, self.mode);
        for (&(i, j), v) in &self.entries {
            out.set(i, j, f(v));
        }
        out
    }
}

impl fmt::Display for GenericMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (pos, ((i, j), v)) in self.entries.iter().enumerate() {
            if pos > 0 {
                f.write_str("\n")?;
            }
            write!(f, "({i},{j}): {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn xi(k: u32, i: usize, j: usize) -> OmegaMonomial {
        OmegaMonomial::var(OmegaVariable { k, i, j })
    }

    #[test]
    fn monomial_product_merges_exponents() {
        let m = xi(1, 1, 2).mul(&xi(2, 2, 1)).mul(&xi(1, 1, 2));
        assert_eq!(m.degree(), 3);
        assert_eq!(m.factors().len(), 2);
        assert_eq!(m.to_string(), "ξ[1,1,2]^2 · ξ[2,2,1]");
    }

    #[test]
    fn cancellation_removes_terms() {
        let mode = CoeffMode::Rational;
        let a = OmegaPolynomial::monomial(mode, xi(1, 1, 1), q(1));
        let b = OmegaPolynomial::monomial(mode, xi(1, 1, 1), q(-1));
        assert!(a.add(&b).is_zero());
        let c = OmegaPolynomial::monomial(mode, xi(1, 2, 2), q(3));
        let s = a.add(&c).add(&b);
        assert_eq!(s.len(), 1);
        assert_eq!(s.to_string(), "3·ξ[1,2,2]");
    }

    #[test]
    fn modular_mode() {
        let mode = CoeffMode::mod_prime(3).unwrap();
        assert_eq!(CoeffMode::mod_prime(4), Err(CoefficientError::NotPrime(4)));
        let two = mode.reduce(&q(2)).unwrap();
        let a = OmegaPolynomial::monomial(mode, xi(1, 1, 1), two.clone());
        assert!(a.add(&a).add(&a).is_zero());
        let half = mode.reduce(&BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(half, q(2));
        assert!(mode.reduce(&BigRational::new(1.into(), 3.into())).is_err());
        assert_eq!(mode.reduce(&q(-1)).unwrap(), q(2));
    }

    #[test]
    fn matrix_product() {
        let mode = CoeffMode::Rational;
        let mut a = GenericMatrix::zero(2, mode);
        a.set(1, 2, OmegaPolynomial::monomial(mode, xi(1, 1, 2), q(1)));
        a.set(2, 1, OmegaPolynomial::monomial(mode, xi(1, 2, 1), q(1)));
        let sq = a.mul(&a);
        assert_eq!(sq.entry(1, 1).unwrap().to_string(), "ξ[1,1,2] · ξ[1,2,1]");
        assert_eq!(sq.entry(2, 2).unwrap().to_string(), "ξ[1,1,2] · ξ[1,2,1]");
        assert!(sq.entry(1, 2).is_none());
        let mut diff = sq.clone();
        diff.add_assign(&sq.scale(&q(-1)));
        assert!(diff.is_zero());
    }
}
