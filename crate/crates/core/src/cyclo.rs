//! Exact elements of the cyclotomic field `Q(ζ_m)`.
//!
//! Values are stored as rational polynomials in `ζ_m` reduced modulo the
//! cyclotomic polynomial `Φ_m`, so equal field elements have equal
//! representations and zero testing is structural.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer coefficients of `Φ_m`, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache lock").get(&m) {
        return p.clone();
    }
    let p = compute_cyclotomic(m);
    cache.lock().expect("cache lock").insert(m, p.clone());
    p
}

fn compute_cyclotomic(m: u32) -> Vec<BigInt> {
    assert!(m >= 1, "root order must be positive");
    // x^m - 1 = Π_{d | m} Φ_d
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = exact_divide(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_divide(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] / &lead;
        for (t, dv) in den.iter().enumerate() {
            rem[k + t] -= &c * dv;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// An element `Σ c_i ζ_m^i` with `deg < φ(m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    m: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(m: u32) -> Cyclotomic {
        let phi = cyclotomic_polynomial(m).len() - 1;
        Cyclotomic {
            m,
            coeffs: vec![BigRational::zero(); phi],
        }
    }

    pub fn from_rational(m: u32, q: BigRational) -> Cyclotomic {
        let mut out = Cyclotomic::zero(m);
        out.coeffs[0] = q;
        out
    }

    pub fn one(m: u32) -> Cyclotomic {
        Cyclotomic::from_rational(m, BigRational::one())
    }

    /// `ζ_m^e`.
    pub fn root(m: u32, e: u32) -> Cyclotomic {
        let mut raw = vec![BigRational::zero(); m as usize];
        raw[(e % m) as usize] = BigRational::one();
        Cyclotomic::reduce(m, raw)
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    fn reduce(m: u32, mut raw: Vec<BigRational>) -> Cyclotomic {
        let phi = cyclotomic_polynomial(m);
        let d = phi.len() - 1;
        for k in (d..raw.len()).rev() {
            let c = std::mem::take(&mut raw[k]);
            if c.is_zero() {
                continue;
            }
            // Φ_m is monic: ζ^k = -Σ_{t<d} φ_t ζ^{k-d+t}
            for (t, pt) in phi.iter().enumerate().take(d) {
                raw[k - d + t] -= &c * BigRational::from_integer(pt.clone());
            }
        }
        raw.truncate(d);
        raw.resize(d, BigRational::zero());
        Cyclotomic { m, coeffs: raw }
    }

    fn raw(&self) -> Vec<BigRational> {
        let mut out = self.coeffs.clone();
        out.resize(self.m as usize, BigRational::zero());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational, when it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(
                self.coeffs
                    .first()
                    .cloned()
                    .unwrap_or_else(BigRational::zero),
            )
        } else {
            None
        }
    }

    /// Writes the value as `q · ζ_m^e` with `q` rational and `e` as small as
    /// possible.
    pub fn as_scaled_root(&self) -> Option<(BigRational, u32)> {
        if self.is_zero() {
            return None;
        }
        (0..self.m).find_map(|e| {
            self.mul(&Cyclotomic::root(self.m, self.m - e))
                .as_rational()
                .map(|q| (q, e))
        })
    }

    /// The same element viewed in `Q(ζ_{m'})` for a multiple `m'` of `m`.
    pub fn lift(&self, target: u32) -> Cyclotomic {
        assert!(
            target.is_multiple_of(self.m),
            "target order must be a multiple"
        );
        let step = (target / self.m) as usize;
        let mut raw = vec![BigRational::zero(); target as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Cyclotomic::reduce(target, raw)
    }

    fn common(&self, other: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        if self.m == other.m {
            return (self.clone(), other.clone());
        }
        let m = self.m.lcm(&other.m);
        (self.lift(m), other.lift(m))
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.common(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Cyclotomic { m: a.m, coeffs }
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &BigRational) -> Cyclotomic {
        Cyclotomic {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.common(other);
        let m = a.m as usize;
        let mut raw = vec![BigRational::zero(); m];
        for (i, x) in a.raw().iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.raw().iter().enumerate() {
                if !y.is_zero() {
                    raw[(i + j) % m] += x * y;
                }
            }
        }
        Cyclotomic::reduce(a.m, raw)
    }

    /// Multiplies by `ζ_m^e` where `m` is this element's order.
    pub fn mul_root(&self, e: u32) -> Cyclotomic {
        if e.is_multiple_of(self.m) {
            return self.clone();
        }
        self.mul(&Cyclotomic::root(self.m, e))
    }

    /// Sign and magnitude text for use as a polynomial coefficient; the
    /// magnitude is `None` for 1.
    pub fn coefficient_text(&self) -> (bool, Option<String>) {
        if let Some((q, e)) = self.as_scaled_root() {
            let negative = q.is_negative();
            let abs = q.abs();
            let root = match e {
                0 => None,
                1 => Some(format!("ζ{}", self.m)),
                _ => Some(format!("ζ{}^{e}", self.m)),
            };
            let text = match (abs.is_one(), root) {
                (true, None) => None,
                (true, Some(r)) => Some(r),
                (false, None) => Some(abs.to_string()),
                (false, Some(r)) => Some(format!("{abs}{r}")),
            };
            return (negative, text);
        }
        (false, Some(format!("({self})")))
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.m
            .cmp(&other.m)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let root = match i {
                0 => String::new(),
                1 => format!("ζ{}", self.m),
                _ => format!("ζ{}^{i}", self.m),
            };
            if i == 0 || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            f.write_str(&root)?;
        }
        if first {
            f.write_str("0")?;
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

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn sum_of_roots_vanishes() {
        for m in [2u32, 3, 4, 5, 6, 12] {
            let total = (0..m).fold(Cyclotomic::zero(m), |acc, e| {
                acc.add(&Cyclotomic::root(m, e))
            });
            assert!(total.is_zero(), "m = {m}");
        }
        let s = Cyclotomic::one(3).add(&Cyclotomic::root(3, 1));
        assert!(!s.is_zero());
    }

    #[test]
    fn roots_multiply() {
        let z = Cyclotomic::root(6, 1);
        let mut acc = Cyclotomic::one(6);
        for _ in 0..6 {
            acc = acc.mul(&z);
        }
        assert_eq!(acc, Cyclotomic::one(6));
        assert_eq!(Cyclotomic::root(6, 3), Cyclotomic::from_rational(6, q(-1)));
        assert_eq!(Cyclotomic::root(2, 1).as_rational(), Some(q(-1)));
    }

    #[test]
    fn lifting() {
        let z3 = Cyclotomic::root(3, 1);
        assert_eq!(z3.lift(6), Cyclotomic::root(6, 2));
        let minus = Cyclotomic::root(2, 1);
        assert_eq!(minus.mul(&z3), Cyclotomic::root(6, 5));
    }

    #[test]
    fn scaled_roots_and_text() {
        let x = Cyclotomic::root(3, 2).scale(&q(-2));
        assert_eq!(x.as_scaled_root(), Some((q(-2), 2)));
        let y = Cyclotomic::one(3).add(&Cyclotomic::root(3, 1));
        assert_eq!(y.as_scaled_root(), Some((q(-1), 2)));
        assert_eq!(
            Cyclotomic::root(3, 1).coefficient_text(),
            (false, Some("ζ3".into()))
        );
        assert_eq!(
            Cyclotomic::from_rational(3, q(-1)).coefficient_text(),
            (true, None)
        );
        let mixed = Cyclotomic::one(5).add(&Cyclotomic::root(5, 1));
        assert_eq!(mixed.as_scaled_root(), None);
        assert_eq!(mixed.to_string(), "1 + ζ5");
    }
}
