//! Rational tangles, Montesinos links, and pretzel presentations.
//!
//! A Montesinos link is a cyclic chain of rational tangles closed by a block
//! of horizontal half-twists. The presentation kept here is the raw one the
//! link was built with; `normalize` produces the standard form with every
//! tangle fraction in (0, 1) and all integer parts folded into the twist
//! count.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::slope::ExtendedRational;

/// Endpoint connectivity of a rational tangle, determined by the parities of
/// its fraction. Corners are labelled NW, NE, SW, SE.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParityClass {
    /// Even numerator, odd denominator: two horizontal strands,
    /// NW-NE and SW-SE.
    Zero,
    /// Odd numerator, odd denominator: two diagonal strands,
    /// NW-SE and NE-SW.
    One,
    /// Odd numerator, even denominator: two vertical strands,
    /// NW-SW and NE-SE.
    Infinity,
}

/// The four tangle corners in the order NW, NE, SW, SE.
const NW: usize = 0;
const NE: usize = 1;
const SW: usize = 2;
const SE: usize = 3;

impl ParityClass {
    /// Endpoint pairing as two corner pairs.
    pub fn pairing(self) -> [(usize, usize); 2] {
        match self {
            ParityClass::Zero => [(NW, NE), (SW, SE)],
            ParityClass::One => [(NW, SE), (NE, SW)],
            ParityClass::Infinity => [(NW, SW), (NE, SE)],
        }
    }
}

/// A rational tangle with a finite, non-integral fraction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalTangle {
    fraction: ExtendedRational,
}

impl RationalTangle {
    pub fn new(fraction: ExtendedRational) -> Result<Self> {
        if fraction.is_infinite() || fraction.is_integer() {
            return Err(Error::DegenerateTangle(fraction.to_string()));
        }
        Ok(Self { fraction })
    }

    pub fn fraction(&self) -> &ExtendedRational {
        &self.fraction
    }

    pub fn parity_class(&self) -> ParityClass {
        parity_of(self.fraction.numerator(), self.fraction.denominator())
    }
}

fn parity_of(num: &BigInt, den: &BigInt) -> ParityClass {
    match (num.is_even(), den.is_even()) {
        (true, false) => ParityClass::Zero,
        (false, false) => ParityClass::One,
        (false, true) => ParityClass::Infinity,
        (true, true) => unreachable!("fraction not in lowest terms"),
    }
}

/// How two link presentations match up.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Match {
    Direct,
    Mirrored,
}

/// A Montesinos link presentation: an ordered list of tangle fractions plus
/// an integer count of extra horizontal half-twists in the closure.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MontesinosLink {
    tangles: Vec<ExtendedRational>,
    extra_twists: BigInt,
}

impl MontesinosLink {
    pub fn new(
        tangles: Vec<ExtendedRational>,
        extra_twists: impl Into<BigInt>,
    ) -> Result<Self> {
        if tangles.is_empty() {
            return Err(Error::EmptyTangleList);
        }
        for t in &tangles {
            if t.is_infinite() || t.is_integer() {
                return Err(Error::DegenerateTangle(t.to_string()));
            }
        }
        Ok(Self { tangles, extra_twists: extra_twists.into() })
    }

    /// The (q1, ..., qk) pretzel with an optional trailing twist count:
    /// tangle fractions 1/q1, ..., 1/qk. Every |qi| must be at least 2.
    pub fn pretzel(strands: &[i64], trailing: i64) -> Result<Self> {
        let mut tangles = Vec::with_capacity(strands.len());
        for &q in strands {
            if q.abs() < 2 {
                return Err(Error::DegenerateStrand(q.to_string()));
            }
            tangles.push(ExtendedRational::new(1, q)?);
        }
        Self::new(tangles, trailing)
    }

    pub fn tangles(&self) -> &[ExtendedRational] {
        &self.tangles
    }

    pub fn extra_twists(&self) -> &BigInt {
        &self.extra_twists
    }

    /// Standard form: every tangle fraction moved into (0, 1), integer parts
    /// summed into the twist count. The link type is unchanged.
    pub fn normalize(&self) -> Self {
        let mut extra = self.extra_twists.clone();
        let mut tangles = Vec::with_capacity(self.tangles.len());
        for t in &self.tangles {
            let (whole, frac) = t.floor_split().expect("tangle fractions are finite");
            extra += whole;
            tangles.push(frac);
        }
        Self { tangles, extra_twists: extra }
    }

    pub fn is_normal_form(&self) -> bool {
        self == &self.normalize()
    }

    pub fn mirror(&self) -> Self {
        Self {
            tangles: self.tangles.iter().map(ExtendedRational::negated).collect(),
            extra_twists: -&self.extra_twists,
        }
    }

    /// Number of link components, computed by composing the endpoint
    /// pairings of the tangles (and of the twist block, whose parity makes
    /// it a horizontal or diagonal block) around the closed chain.
    pub fn component_count(&self) -> usize {
        let mut classes: Vec<ParityClass> = self
            .tangles
            .iter()
            .map(|t| parity_of(t.numerator(), t.denominator()))
            .collect();
        classes.push(if self.extra_twists.is_even() {
            ParityClass::Zero
        } else {
            ParityClass::One
        });

        // Ports 4i + corner; each port lies on one in-block strand and one
        // connecting arc, so the diagram decomposes into disjoint cycles.
        let blocks = classes.len();
        let mut dsu = DisjointSets::new(4 * blocks);
        for (i, class) in classes.iter().enumerate() {
            for (x, y) in class.pairing() {
                dsu.union(4 * i + x, 4 * i + y);
            }
            let j = (i + 1) % blocks;
            dsu.union(4 * i + NE, 4 * j + NW);
            dsu.union(4 * i + SE, 4 * j + SW);
        }
        dsu.count()
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    /// Dihedral canonical key of the normalized tangle list: the least
    /// rotation of the list or of its reversal, together with the twist
    /// count. Two presentations denote the same oriented link exactly when
    /// their keys agree.
    fn canonical_key(&self) -> (Vec<(BigInt, BigInt)>, BigInt) {
        let normal = self.normalize();
        let seq: Vec<(BigInt, BigInt)> = normal
            .tangles
            .iter()
            .map(|t| (t.denominator().clone(), t.numerator().clone()))
            .collect();
        let k = seq.len();
        let mut best: Option<Vec<(BigInt, BigInt)>> = None;
        let mut reversed = seq.clone();
        reversed.reverse();
        for candidate in [seq, reversed] {
            for shift in 0..k {
                let mut rotated = Vec::with_capacity(k);
                for i in 0..k {
                    rotated.push(candidate[(i + shift) % k].clone());
                }
                if best.as_ref().is_none_or(|b| rotated < *b) {
                    best = Some(rotated);
                }
            }
        }
        (best.unwrap(), normal.extra_twists)
    }

    /// Key identifying the unoriented link up to mirror image as well.
    pub(crate) fn chirality_key(&self) -> (Vec<(BigInt, BigInt)>, BigInt) {
        let a = self.canonical_key();
        let b = self.mirror().canonical_key();
        a.min(b)
    }
}

/// True when the presentations denote the same link: normal forms agree up
/// to rotation and reversal of the tangle list.
pub fn equivalent_direct(a: &MontesinosLink, b: &MontesinosLink) -> bool {
    a.canonical_key() == b.canonical_key()
}

/// True when one presentation denotes the mirror image of the other.
pub fn equivalent_mirrored(a: &MontesinosLink, b: &MontesinosLink) -> bool {
    a.canonical_key() == b.mirror().canonical_key()
}

/// Combined test; a direct match is reported in preference to a mirrored
/// one when both hold.
pub fn equivalence(a: &MontesinosLink, b: &MontesinosLink) -> Option<Match> {
    if equivalent_direct(a, b) {
        Some(Match::Direct)
    } else if equivalent_mirrored(a, b) {
        Some(Match::Mirrored)
    } else {
        None
    }
}

impl fmt::Display for MontesinosLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K(")?;
        for (i, t) in self.tangles.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t}")?;
        }
        if !self.extra_twists.is_zero() {
            write!(f, "; {}", self.extra_twists)?;
        }
        write!(f, ")")
    }
}

impl FromStr for MontesinosLink {
    type Err = Error;

    /// Accepts "K(p1/q1, p2/q2, ...)" or "P(q1, q2, ...)", optionally with
    /// "; e" before the closing parenthesis. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let malformed = || Error::Malformed { expected: "knot K(...) or P(...)", token: s.trim().to_string() };
        let (head, rest) = compact.split_at(compact.len().min(2));
        let pretzel_form = match head {
            "K(" => false,
            "P(" => true,
            _ => return Err(malformed()),
        };
        let body = rest.strip_suffix(')').ok_or_else(malformed)?;
        let (list, extra) = match body.split_once(';') {
            Some((list, e)) => (
                list,
                BigInt::from_str(e).map_err(|_| Error::Malformed {
                    expected: "integer twist count",
                    token: e.to_string(),
                })?,
            ),
            None => (body, BigInt::zero()),
        };
        if pretzel_form {
            let mut strands = Vec::new();
            for tok in list.split(',') {
                strands.push(i64::from_str(tok).map_err(|_| Error::Malformed {
                    expected: "integer pretzel strand",
                    token: tok.to_string(),
                })?);
            }
            let mut tangles = Vec::with_capacity(strands.len());
            for q in strands {
                if q.abs() < 2 {
                    return Err(Error::DegenerateStrand(q.to_string()));
                }
                tangles.push(ExtendedRational::new(1, q)?);
            }
            MontesinosLink::new(tangles, extra)
        } else {
            let mut tangles = Vec::new();
            for tok in list.split(',') {
                tangles.push(ExtendedRational::from_str(tok)?);
            }
            MontesinosLink::new(tangles, extra)
        }
    }
}

/// A knot presented by two rational tangles inside a solid torus, the two
/// strands closed by parallel arcs that wind once around the torus; the kind
/// records which of the two closure patterns is used.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TubedKnot {
    kind: u8,
    fractions: [ExtendedRational; 2],
}

impl TubedKnot {
    pub fn new(kind: u8, f1: ExtendedRational, f2: ExtendedRational) -> Result<Self> {
        if kind > 1 {
            return Err(Error::BadTubedKind(kind));
        }
        let bad = |a: &ExtendedRational, b: &ExtendedRational| {
            Error::BadTubedFractions(a.to_string(), b.to_string())
        };
        for f in [&f1, &f2] {
            if f.is_infinite() || f.is_integer() {
                return Err(bad(&f1, &f2));
            }
        }
        if f1.denominator().is_even() && f2.denominator().is_even() {
            return Err(bad(&f1, &f2));
        }
        Ok(Self { kind, fractions: [f1, f2] })
    }

    pub fn kind(&self) -> u8 {
        self.kind
    }

    pub fn fractions(&self) -> &[ExtendedRational; 2] {
        &self.fractions
    }

    pub fn mirror(&self) -> Self {
        Self {
            kind: self.kind,
            fractions: [self.fractions[0].negated(), self.fractions[1].negated()],
        }
    }

    /// Same kind and the same fraction pair, allowing a swap of the two
    /// tangles and an overall mirror image.
    pub fn same_knot(&self, other: &TubedKnot) -> bool {
        if self.kind != other.kind {
            return false;
        }
        let pairs = |k: &TubedKnot| {
            let [a, b] = k.fractions.clone();
            [[a.clone(), b.clone()], [b, a]]
        };
        let mirrored = other.mirror();
        pairs(other)
            .into_iter()
            .chain(pairs(&mirrored))
            .any(|p| p == self.fractions)
    }
}

impl fmt::Display for TubedKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K^{}({}, {})", self.kind, self.fractions[0], self.fractions[1])
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}
