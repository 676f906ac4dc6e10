//! Exact arithmetic for boundary slopes and tangle fractions.
//!
//! Both types share one canonical form: denominator non-negative, fraction in
//! lowest terms, all infinite representatives identified with 1/0, and zero
//! written 0/1. The sign always lives in the numerator.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A fraction on the projective line: p/q with q >= 0, gcd(|p|, q) = 1,
/// infinity stored as 1/0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtendedRational {
    num: BigInt,
    den: BigInt,
}

impl ExtendedRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let (mut num, mut den) = (num.into(), den.into());
        if num.is_zero() && den.is_zero() {
            return Err(Error::IndeterminateFraction);
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if den.is_zero() {
            return Ok(Self { num: BigInt::one(), den });
        }
        let g = num.gcd(&den);
        Ok(Self { num: num / &g, den: den / g })
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self { num: n.into(), den: BigInt::one() }
    }

    pub fn infinity() -> Self {
        Self { num: BigInt::one(), den: BigInt::zero() }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn negated(&self) -> Self {
        if self.is_infinite() {
            self.clone()
        } else {
            Self { num: -&self.num, den: self.den.clone() }
        }
    }

    /// Splits a finite fraction as (floor, fractional part), with the
    /// fractional part in [0, 1).
    pub fn floor_split(&self) -> Result<(BigInt, ExtendedRational)> {
        if self.is_infinite() {
            return Err(Error::InfiniteValue(self.to_string()));
        }
        let (q, r) = self.num.div_mod_floor(&self.den);
        Ok((q, Self { num: r, den: self.den.clone() }))
    }

    /// Continued fraction expansion with integer terms of either sign,
    /// produced by repeated truncation: r = a0 + 1/(a1 + 1/(... + 1/ak)).
    /// Every term after the first is nonzero, so the expansion always
    /// evaluates back to r without intermediate division by zero.
    pub fn continued_fraction(&self) -> Result<Vec<BigInt>> {
        if self.is_infinite() {
            return Err(Error::InfiniteValue(self.to_string()));
        }
        let mut terms = Vec::new();
        let (mut n, mut d) = (self.num.clone(), self.den.clone());
        loop {
            let a = &n / &d; // truncated toward zero
            let r = &n - &a * &d;
            terms.push(a);
            if r.is_zero() {
                return Ok(terms);
            }
            // tail is 1/(d/r); renormalize so the working denominator stays positive
            n = d;
            d = r;
            if d.is_negative() {
                n = -n;
                d = -d;
            }
        }
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for ExtendedRational {
    type Err = Error;

    /// Accepts "p/q" or a bare integer "p".
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let malformed = || Error::Malformed { expected: "fraction p/q", token: s.to_string() };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| malformed())?,
                BigInt::from_str(d.trim()).map_err(|_| malformed())?,
            ),
            None => (BigInt::from_str(s).map_err(|_| malformed())?, BigInt::one()),
        };
        ExtendedRational::new(num, den)
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedRational {
    /// Finite values in numeric order; the single infinity sorts last.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (&self.num * &other.den).cmp(&(&other.num * &self.den)),
        }
    }
}

/// A surgery slope on a torus boundary, in the same canonical form as
/// [`ExtendedRational`]. The meridian is 1/0 and the longitude 0/1.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Slope(ExtendedRational);

impl Slope {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        Ok(Self(ExtendedRational::new(p, q)?))
    }

    pub fn integral(p: impl Into<BigInt>) -> Self {
        Self(ExtendedRational::integer(p))
    }

    pub fn infinity() -> Self {
        Self(ExtendedRational::infinity())
    }

    pub fn p(&self) -> &BigInt {
        self.0.numerator()
    }

    pub fn q(&self) -> &BigInt {
        self.0.denominator()
    }

    pub fn is_infinity(&self) -> bool {
        self.0.is_infinite()
    }

    pub fn is_integral(&self) -> bool {
        self.0.is_integer()
    }

    pub fn negated(&self) -> Self {
        Self(self.0.negated())
    }

    /// Geometric intersection number of the two slopes:
    /// |p_a q_b - p_b q_a|.
    pub fn distance(&self, other: &Slope) -> BigInt {
        (self.p() * other.q() - other.p() * self.q()).abs()
    }

    pub fn fraction(&self) -> &ExtendedRational {
        &self.0
    }
}

impl From<ExtendedRational> for Slope {
    fn from(r: ExtendedRational) -> Self {
        Self(r)
    }
}

impl From<Slope> for ExtendedRational {
    fn from(s: Slope) -> Self {
        s.0
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExtendedRational::from_str(s).map(Slope)
    }
}

/// An integral 2x2 matrix of determinant +1 or -1, acting on slopes as a
/// change of basis on the boundary torus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisChange {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl BasisChange {
    /// Row-major [[a, b], [c, d]]; rejects matrices with det != +-1.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        let det = &a * &d - &b * &c;
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular(det));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn apply(&self, s: &Slope) -> Slope {
        let p = &self.a * s.p() + &self.b * s.q();
        let q = &self.c * s.p() + &self.d * s.q();
        Slope::new(p, q).expect("unimodular image of a slope is a slope")
    }
}
