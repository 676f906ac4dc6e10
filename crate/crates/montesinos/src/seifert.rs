//! Seifert fibered spaces over S^2: unnormalized Seifert invariants, their
//! normal form, Euler number, and first homology, plus the double branched
//! cover dictionary for Montesinos links.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::slope::ExtendedRational;
use crate::snf::AbelianGroup;
use crate::tangle::MontesinosLink;

/// Seifert invariants (b; beta_1/alpha_1, ..., beta_k/alpha_k) of a closed
/// orientable Seifert fibration over S^2. Fibers keep whatever presentation
/// they were built with; `normalize` produces the classifying normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeifertInvariants {
    b: BigInt,
    fibers: Vec<(BigInt, BigInt)>, // (alpha >= 1, beta), each beta/alpha reduced
}

impl SeifertInvariants {
    pub fn new(
        b: impl Into<BigInt>,
        fibers: Vec<(BigInt, BigInt)>,
    ) -> Result<Self> {
        for (alpha, beta) in &fibers {
            if !alpha.is_positive() {
                return Err(Error::BadMultiplicity(alpha.clone()));
            }
            if !alpha.gcd(beta).is_one() {
                return Err(Error::UnreducedFiber(beta.clone(), alpha.clone()));
            }
        }
        Ok(Self { b: b.into(), fibers })
    }

    /// Reads each fraction beta/alpha as one fiber, with b = 0. This is the
    /// verbatim reading of the notation M(r1, ..., rk).
    pub fn from_fractions(fractions: &[ExtendedRational]) -> Result<Self> {
        let mut fibers = Vec::with_capacity(fractions.len());
        for f in fractions {
            if f.is_infinite() {
                return Err(Error::InfiniteValue(f.to_string()));
            }
            fibers.push((f.denominator().clone(), f.numerator().clone()));
        }
        Ok(Self { b: BigInt::zero(), fibers })
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn fibers(&self) -> &[(BigInt, BigInt)] {
        &self.fibers
    }

    /// Normal form: every beta moved into (0, alpha) with the quotients
    /// absorbed into b, multiplicity-one fibers absorbed entirely, fibers
    /// sorted. Classifies the fibration up to orientation-preserving
    /// homeomorphism (for at least three exceptional fibers).
    pub fn normalize(&self) -> Self {
        let mut b = self.b.clone();
        let mut fibers = Vec::with_capacity(self.fibers.len());
        for (alpha, beta) in &self.fibers {
            if alpha.is_one() {
                b += beta;
                continue;
            }
            let (q, r) = beta.div_mod_floor(alpha);
            b += q;
            fibers.push((alpha.clone(), r));
        }
        fibers.sort();
        Self { b, fibers }
    }

    pub fn is_normal_form(&self) -> bool {
        self == &self.normalize()
    }

    /// Reversed-orientation invariants: negate b and every beta. Not
    /// renormalized.
    pub fn negated(&self) -> Self {
        Self {
            b: -&self.b,
            fibers: self
                .fibers
                .iter()
                .map(|(alpha, beta)| (alpha.clone(), -beta))
                .collect(),
        }
    }

    /// At most three exceptional fibers in normal form.
    pub fn is_small(&self) -> bool {
        self.normalize().fibers.len() <= 3
    }

    /// b + sum of beta_i/alpha_i, as (numerator over the alpha product).
    /// This integer is zero exactly when the Euler number vanishes.
    fn euler_numerator(&self) -> (BigInt, BigInt) {
        let product: BigInt = self
            .fibers
            .iter()
            .fold(BigInt::one(), |acc, (alpha, _)| acc * alpha);
        let mut num = &self.b * &product;
        for (alpha, beta) in &self.fibers {
            num += beta * (&product / alpha);
        }
        (num, product)
    }

    /// Euler number of the fibration: -(b + sum beta_i/alpha_i).
    pub fn euler_number(&self) -> ExtendedRational {
        let (num, product) = self.euler_numerator();
        ExtendedRational::new(-num, product).expect("alpha product is positive")
    }

    /// Order of the first homology when finite, 0 when infinite:
    /// |alpha_1 ... alpha_k (b + sum beta_i/alpha_i)|.
    pub fn h1_order(&self) -> BigInt {
        self.euler_numerator().0.abs()
    }

    /// First homology from the standard presentation (generators x_1, ...,
    /// x_k, h; relations alpha_i x_i + beta_i h = 0 and x_1 + ... + x_k -
    /// b h = 0, abelianized from x_i^{alpha_i} h^{beta_i} = 1 and
    /// x_1 ... x_k = h^b), via Smith normal form. An independent route to
    /// the same group that `h1_order` sizes in closed form.
    pub fn first_homology(&self) -> AbelianGroup {
        let k = self.fibers.len();
        let mut rows = Vec::with_capacity(k + 1);
        for (i, (alpha, beta)) in self.fibers.iter().enumerate() {
            let mut row = vec![BigInt::zero(); k + 1];
            row[i] = alpha.clone();
            row[k] = beta.clone();
            rows.push(row);
        }
        let mut section = vec![BigInt::one(); k + 1];
        section[k] = -&self.b;
        rows.push(section);
        AbelianGroup::from_presentation(rows)
    }
}

/// Orientation behaviour of a homeomorphism.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Orientation {
    Preserving,
    Reversing,
}

/// Compares normal forms, directly and after reversing the orientation of
/// `b`. For fibrations with at least three exceptional fibers this decides
/// homeomorphism; with fewer fibers it is only a sufficient test, since lens
/// spaces admit extra coincidences the normal form does not see.
pub fn homeomorphic(a: &SeifertInvariants, b: &SeifertInvariants) -> Option<Orientation> {
    let na = a.normalize();
    if na == b.normalize() {
        Some(Orientation::Preserving)
    } else if na == b.negated().normalize() {
        Some(Orientation::Reversing)
    } else {
        None
    }
}

/// The double branched cover of a Montesinos link: one fiber per tangle
/// fraction, read verbatim, with b equal to the twist count.
pub fn double_branched_cover(link: &MontesinosLink) -> SeifertInvariants {
    let fibers = link
        .tangles()
        .iter()
        .map(|t| (t.denominator().clone(), t.numerator().clone()))
        .collect();
    SeifertInvariants {
        b: link.extra_twists().clone(),
        fibers,
    }
}

impl fmt::Display for SeifertInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({};", self.b)?;
        for (i, (alpha, beta)) in self.fibers.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {beta}/{alpha}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for SeifertInvariants {
    type Err = Error;

    /// Accepts "M(r1, r2, ...)" (b = 0, fractions read verbatim) and
    /// "M(b; r1, r2, ...)". Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let malformed = || Error::Malformed {
            expected: "Seifert invariants M(...)",
            token: s.trim().to_string(),
        };
        let body = compact
            .strip_prefix("M(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(malformed)?;
        let (b, list) = match body.split_once(';') {
            Some((b, list)) => (
                BigInt::from_str(b).map_err(|_| Error::Malformed {
                    expected: "integer b",
                    token: b.to_string(),
                })?,
                list,
            ),
            None => (BigInt::zero(), body),
        };
        let mut fractions = Vec::new();
        if !list.is_empty() {
            for tok in list.split(',') {
                fractions.push(ExtendedRational::from_str(tok)?);
            }
        }
        let verbatim = SeifertInvariants::from_fractions(&fractions)?;
        SeifertInvariants::new(b + verbatim.b, verbatim.fibers)
    }
}
