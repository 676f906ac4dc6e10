//! Dehn surgery bookkeeping: surgery specifications on Montesinos knots,
//! the homology of the result, twist families, and distance bounds on
//! exceptional filling parameters.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::slope::Slope;
use crate::tangle::{equivalent_direct, equivalent_mirrored, MontesinosLink};

/// A slope on a Montesinos knot. Construction insists the link really is a
/// knot.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SurgerySpec {
    knot: MontesinosLink,
    slope: Slope,
}

impl SurgerySpec {
    pub fn new(knot: MontesinosLink, slope: Slope) -> Result<Self> {
        if !knot.is_knot() {
            return Err(Error::NotAKnot(knot.to_string()));
        }
        Ok(Self { knot, slope })
    }

    pub fn knot(&self) -> &MontesinosLink {
        &self.knot
    }

    pub fn slope(&self) -> &Slope {
        &self.slope
    }

    /// The meridian 1/0 gives back the starting manifold.
    pub fn is_nontrivial(&self) -> bool {
        !self.slope.is_infinity()
    }

    /// |H1| of p/q surgery on a knot in S^3 is |p| (0 encodes infinite
    /// homology, from the 0 slope).
    pub fn h1_order(&self) -> BigInt {
        self.slope.p().abs()
    }
}

/// Two surgeries give homeomorphic results when the knots match directly
/// with equal slopes, or match as mirror images with negated slopes.
pub fn mirror_equivalent(a: &SurgerySpec, b: &SurgerySpec) -> bool {
    (equivalent_direct(&a.knot, &b.knot) && a.slope == b.slope)
        || (equivalent_mirrored(&a.knot, &b.knot) && a.slope == b.slope.negated())
}

/// Slope carried over by n twists along an unknotted circle that the knot
/// crosses with winding number w: p/q becomes (p - n w^2 q)/q.
pub fn twisted_slope(r: &Slope, n: impl Into<BigInt>, winding: u32) -> Slope {
    let shift: BigInt = n.into() * BigInt::from(winding).pow(2);
    Slope::new(r.p() - shift * r.q(), r.q().clone())
        .expect("twisting keeps the slope reduced")
}

/// Replacing the exterior of a strongly inverted knot by a rational tangle:
/// a surface framing f on the knot meets the r surgery curve in a tangle of
/// slope f - r in the quotient. Both slopes must be integral.
pub fn quotient_tangle_slope(framing: &Slope, r: &Slope) -> Result<Slope> {
    for s in [framing, r] {
        if !s.is_integral() {
            return Err(Error::NonIntegralSlope(s.to_string()));
        }
    }
    Ok(Slope::integral(framing.p() - r.p()))
}

/// A one-parameter family of surgery descriptions related by twisting along
/// a fixed unknotted circle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwistFamily {
    /// Name of the link (knot plus twisting circle) the family twists along.
    pub base: String,
    /// Winding number of the knot through the twisting circle.
    pub winding: u32,
    /// Name of the twist parameter.
    pub parameter: String,
}

impl TwistFamily {
    pub fn slope_at(&self, r: &Slope, n: impl Into<BigInt>) -> Slope {
        twisted_slope(r, n, self.winding)
    }
}

/// All integers n with distance at most `max_distance` between 1/n and the
/// center slope. The center must have nonzero numerator, otherwise every n
/// qualifies.
pub fn one_over_n_within(center: &Slope, max_distance: u32) -> BTreeSet<BigInt> {
    let p = center.p();
    let q = center.q();
    assert!(
        !p.is_zero(),
        "the 1/n family is unbounded around a zero-numerator center"
    );
    // |q - p n| <= d
    let d = BigInt::from(max_distance);
    let (lo, hi) = if p.is_positive() {
        ((q - &d).div_ceil(p), (q + &d).div_floor(p))
    } else {
        ((q + &d).div_ceil(p), (q - &d).div_floor(p))
    };
    let mut out = BTreeSet::new();
    let mut n = lo;
    while n <= hi {
        debug_assert!((q - p * &n).abs() <= d);
        out.insert(n.clone());
        n += 1;
    }
    out
}

/// Distance bound from hyperbolic Dehn filling: two exceptional slopes on a
/// cusp intersect at most this many times (Lackenby-Meyerhoff).
pub const MAX_EXCEPTIONAL_DISTANCE: u32 = 8;

/// Twist parameters n for which the 1/n filling can possibly be
/// non-hyperbolic, given one filling known to be non-hyperbolic at the
/// center slope.
pub fn exceptional_twist_range(center: &Slope) -> BTreeSet<BigInt> {
    one_over_n_within(center, MAX_EXCEPTIONAL_DISTANCE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn slope(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    fn set(range: std::ops::RangeInclusive<i64>) -> BTreeSet<BigInt> {
        range.map(BigInt::from).collect()
    }

    #[test]
    fn surgery_h1() {
        let k: MontesinosLink = "K(-1/2, 1/3, 1/7)".parse().unwrap();
        let s = SurgerySpec::new(k.clone(), slope(17, 1)).unwrap();
        assert_eq!(s.h1_order(), BigInt::from(17));
        assert!(s.is_nontrivial());

        let s = SurgerySpec::new(k.clone(), slope(0, 1)).unwrap();
        assert_eq!(s.h1_order(), BigInt::zero());

        let s = SurgerySpec::new(k, Slope::infinity()).unwrap();
        assert!(!s.is_nontrivial());

        let two_components = MontesinosLink::pretzel(&[2, 2, 3], 0).unwrap();
        assert!(SurgerySpec::new(two_components, slope(1, 1)).is_err());
    }

    #[test]
    fn mirrors_with_negated_slopes() {
        let k: MontesinosLink = "K(-1/2, 1/3, 1/7)".parse().unwrap();
        let m: MontesinosLink = "K(1/2, -1/3, -1/7)".parse().unwrap();
        let a = SurgerySpec::new(k.clone(), slope(18, 1)).unwrap();
        let b = SurgerySpec::new(m.clone(), slope(-18, 1)).unwrap();
        assert!(mirror_equivalent(&a, &b));
        assert!(mirror_equivalent(&b, &a));

        let c = SurgerySpec::new(m, slope(18, 1)).unwrap();
        assert!(!mirror_equivalent(&a, &c));
        let d = SurgerySpec::new(k, slope(18, 1)).unwrap();
        assert!(mirror_equivalent(&a, &d));
    }

    #[test]
    fn twisting_examples() {
        assert_eq!(twisted_slope(&slope(6, 1), -3, 2), slope(18, 1));
        assert_eq!(twisted_slope(&slope(7, 1), -3, 2), slope(19, 1));
        assert_eq!(twisted_slope(&slope(6, 1), 0, 2), slope(6, 1));
        // non-integral slopes shift by n w^2 q in the numerator
        assert_eq!(twisted_slope(&slope(7, 2), 1, 2), slope(-1, 2));
        // the meridian is fixed by twisting
        assert_eq!(twisted_slope(&Slope::infinity(), 5, 2), Slope::infinity());
    }

    #[test]
    fn twisting_is_additive() {
        for n1 in -20i64..=20 {
            for n2 in [-20i64, -7, 0, 3, 20] {
                for p in [-100i64, -13, 0, 1, 99] {
                    let once = twisted_slope(&slope(p, 1), n1 + n2, 2);
                    let stepwise = twisted_slope(&twisted_slope(&slope(p, 1), n1, 2), n2, 2);
                    assert_eq!(once, stepwise);
                }
            }
        }
    }

    #[test]
    fn quotient_tangle_slopes() {
        assert_eq!(quotient_tangle_slope(&slope(6, 1), &slope(3, 1)).unwrap(), slope(3, 1));
        assert_eq!(quotient_tangle_slope(&slope(6, 1), &slope(6, 1)).unwrap(), slope(0, 1));
        assert_eq!(
            quotient_tangle_slope(&slope(-6, 1), &slope(-5, 1)).unwrap(),
            slope(-1, 1)
        );
        assert!(quotient_tangle_slope(&slope(6, 1), &slope(1, 2)).is_err());
        assert!(quotient_tangle_slope(&Slope::infinity(), &slope(1, 1)).is_err());
        // distinct surgery slopes stay distinct in the quotient
        for r1 in -10i64..=10 {
            for r2 in -10i64..=10 {
                let a = quotient_tangle_slope(&slope(6, 1), &slope(r1, 1)).unwrap();
                let b = quotient_tangle_slope(&slope(6, 1), &slope(r2, 1)).unwrap();
                assert_eq!(a == b, r1 == r2);
            }
        }
    }

    #[test]
    fn twist_ranges() {
        assert_eq!(exceptional_twist_range(&Slope::infinity()), set(-8..=8));
        assert_eq!(exceptional_twist_range(&slope(1, -1)), set(-9..=7));
        assert_eq!(one_over_n_within(&Slope::infinity(), 0), set(0..=0));
        assert_eq!(one_over_n_within(&slope(2, 1), 8), set(-3..=4));
    }

    #[test]
    fn twist_family_applies_winding() {
        let family = TwistFamily {
            base: "trefoil with meridional axis".to_string(),
            winding: 2,
            parameter: "n".to_string(),
        };
        assert_eq!(family.slope_at(&slope(6, 1), -3), slope(18, 1));
    }
}
