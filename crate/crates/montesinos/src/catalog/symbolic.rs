//! Integer-linear symbols in one parameter n, and fractions, links, and
//! Seifert invariants built from them. The parameterized catalog rows are
//! stored in this form and materialized per parameter value.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::seifert::SeifertInvariants;
use crate::slope::ExtendedRational;
use crate::tangle::MontesinosLink;

/// The integer-valued term a·n + b.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LinearTerm {
    pub n_coeff: i64,
    pub constant: i64,
}

impl LinearTerm {
    pub const fn constant(c: i64) -> Self {
        Self { n_coeff: 0, constant: c }
    }

    pub const fn linear(a: i64, b: i64) -> Self {
        Self { n_coeff: a, constant: b }
    }

    pub fn is_constant(&self) -> bool {
        self.n_coeff == 0
    }

    pub fn eval(&self, n: i64) -> BigInt {
        BigInt::from(self.n_coeff) * n + BigInt::from(self.constant)
    }
}

/// Constants print bare; terms with an n part print parenthesized, e.g.
/// "(2n+1)", "(n-2)", "(-4n)".
impl fmt::Display for LinearTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return write!(f, "{}", self.constant);
        }
        let coeff = match self.n_coeff {
            1 => String::new(),
            -1 => "-".to_string(),
            c => c.to_string(),
        };
        let tail = match self.constant {
            0 => String::new(),
            c if c > 0 => format!("+{c}"),
            c => c.to_string(),
        };
        write!(f, "({coeff}n{tail})")
    }
}

impl FromStr for LinearTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let malformed = || Error::Malformed {
            expected: "an integer or a parenthesized linear term like (2n+1)",
            token: s.to_string(),
        };
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (head, tail) = inner.split_once('n').ok_or_else(malformed)?;
            let n_coeff = match head {
                "" => 1,
                "-" => -1,
                _ => head.parse().map_err(|_| malformed())?,
            };
            let constant = match tail {
                "" => 0,
                _ => {
                    if !(tail.starts_with('+') || tail.starts_with('-')) {
                        return Err(malformed());
                    }
                    tail.trim_start_matches('+').parse().map_err(|_| malformed())?
                }
            };
            Ok(Self { n_coeff, constant })
        } else {
            Ok(Self::constant(s.parse().map_err(|_| malformed())?))
        }
    }
}

/// A quotient of two linear terms.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SymbolicFraction {
    pub num: LinearTerm,
    pub den: LinearTerm,
}

impl SymbolicFraction {
    pub const fn new(num: LinearTerm, den: LinearTerm) -> Self {
        Self { num, den }
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn eval(&self, n: i64) -> Result<ExtendedRational> {
        ExtendedRational::new(self.num.eval(n), self.den.eval(n))
    }
}

impl fmt::Display for SymbolicFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Splits at the unique '/' outside parentheses.
impl FromStr for SymbolicFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut depth = 0usize;
        let mut split = None;
        for (i, c) in s.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth = depth.checked_sub(1).ok_or(Error::Malformed {
                        expected: "balanced parentheses",
                        token: s.to_string(),
                    })?
                }
                '/' if depth == 0 => {
                    if split.replace(i).is_some() {
                        return Err(Error::Malformed {
                            expected: "a single fraction bar",
                            token: s.to_string(),
                        });
                    }
                }
                _ => {}
            }
        }
        let i = split.ok_or(Error::Malformed {
            expected: "a fraction of the form num/den",
            token: s.to_string(),
        })?;
        Ok(Self { num: s[..i].parse()?, den: s[i + 1..].parse()? })
    }
}

/// Splits a comma-separated list at depth zero.
fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut depth = 0usize;
    let mut start = 0;
    let mut parts = Vec::new();
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth = depth.checked_sub(1).ok_or(Error::Malformed {
                    expected: "balanced parentheses",
                    token: s.to_string(),
                })?
            }
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    Ok(parts)
}

/// A Montesinos link whose tangle fractions may depend on n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymbolicLink {
    pub tangles: Vec<SymbolicFraction>,
    pub extra_twists: i64,
}

impl SymbolicLink {
    pub fn is_constant(&self) -> bool {
        self.tangles.iter().all(SymbolicFraction::is_constant)
    }

    pub fn eval(&self, n: i64) -> Result<MontesinosLink> {
        let tangles = self
            .tangles
            .iter()
            .map(|t| t.eval(n))
            .collect::<Result<Vec<_>>>()?;
        MontesinosLink::new(tangles, self.extra_twists)
    }
}

impl fmt::Display for SymbolicLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K(")?;
        for (i, t) in self.tangles.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        if self.extra_twists != 0 {
            write!(f, ";{}", self.extra_twists)?;
        }
        write!(f, ")")
    }
}

impl FromStr for SymbolicLink {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .strip_prefix("K(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or(Error::Malformed {
                expected: "a link of the form K(f1,f2,...) or K(f1,f2,...;e)",
                token: s.to_string(),
            })?;
        let (list, extra_twists) = match inner.rsplit_once(';') {
            Some((list, e)) => (
                list,
                e.parse().map_err(|_| Error::Malformed {
                    expected: "an integer twist count after ';'",
                    token: e.to_string(),
                })?,
            ),
            None => (inner, 0),
        };
        let tangles = split_top_level(list)?
            .into_iter()
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { tangles, extra_twists })
    }
}

/// Seifert invariants M(f1, f2, ...) whose fibers may depend on n.
/// The integer part is zero: the catalog's claimed manifolds are all
/// written without one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymbolicSfs {
    pub fibers: Vec<SymbolicFraction>,
}

impl SymbolicSfs {
    pub fn is_constant(&self) -> bool {
        self.fibers.iter().all(SymbolicFraction::is_constant)
    }

    pub fn eval(&self, n: i64) -> Result<SeifertInvariants> {
        let fibers = self
            .fibers
            .iter()
            .map(|t| t.eval(n))
            .collect::<Result<Vec<_>>>()?;
        SeifertInvariants::from_fractions(&fibers)
    }
}

impl fmt::Display for SymbolicSfs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M(")?;
        for (i, t) in self.fibers.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for SymbolicSfs {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .strip_prefix("M(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or(Error::Malformed {
                expected: "Seifert invariants of the form M(f1,f2,...)",
                token: s.to_string(),
            })?;
        let fibers = split_top_level(inner)?
            .into_iter()
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { fibers })
    }
}
