//! Mechanical regeneration of the finite candidate lists for small Seifert
//! fibered surgeries on length-3 Montesinos knots, with the slope
//! restrictions attached to each candidate class.
//!
//! The strand-size bounds are recomputed from the distance primitives in
//! [`crate::surgery`] rather than hard-coded, so a change in the underlying
//! arithmetic would surface here as an assertion failure.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::slope::{ExtendedRational, Slope};
use crate::surgery::exceptional_twist_range;
use crate::tangle::{equivalence, MontesinosLink};

/// A generated candidate. Torus-knot pretzels in the generated range stay in
/// the list but are flagged, since the lists describe hyperbolic knots and
/// hyperbolicity is not decided here.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CandidateKnot {
    pub link: MontesinosLink,
    pub known_non_hyperbolic: bool,
}

/// One of the four candidate classes, with its generated members.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CandidateFamily {
    pub case: u8,
    pub description: String,
    /// Set when the generation range rests on a conjectural bound rather
    /// than a derived one.
    pub conjectural_cap: Option<u32>,
    pub knots: Vec<CandidateKnot>,
}

impl CandidateFamily {
    /// Membership up to link equivalence (tangle rotation, reversal, mirror).
    pub fn contains(&self, k: &MontesinosLink) -> bool {
        self.knots.iter().any(|c| equivalence(&c.link, k).is_some())
    }
}

/// Strand classes known to be non-hyperbolic (torus knots) within the
/// generated ranges.
const NON_HYPERBOLIC_PRETZELS: [[i64; 3]; 2] = [[-2, 3, 3], [-2, 3, 5]];

/// Whether the knot is on the explicit non-hyperbolic exception list.
pub fn known_non_hyperbolic(k: &MontesinosLink) -> bool {
    NON_HYPERBOLIC_PRETZELS.iter().any(|strands| {
        let t = MontesinosLink::pretzel(strands, 0).expect("table strands are valid");
        equivalence(k, &t).is_some()
    })
}

/// The largest odd strand size |q3| compatible with the distance bound on
/// exceptional twist parameters.
///
/// Twisting -n times along the axis circle turns the strand of size 1 into
/// one of size 1 - 2n while the meridional filling of the axis stays
/// non-hyperbolic (it is a torus-knot surgery), so |n| <= 8 and
/// |q3| = |1 - 2n| <= 17. The same bound falls out of the trefoil member of
/// the odd family, whose twist parameter is centered at 1/-1 with
/// q3 = 2n + 1. Both derivations are evaluated and must agree.
pub fn case1_bound() -> i64 {
    let one = BigInt::from(1);
    let two = BigInt::from(2);
    let from_meridian = exceptional_twist_range(&Slope::infinity())
        .into_iter()
        .map(|n| (&one - &two * n).abs())
        .max()
        .expect("range is nonempty");
    let from_trefoil = exceptional_twist_range(&Slope::new(1, -1).expect("valid slope"))
        .into_iter()
        .map(|n| (&two * n + &one).abs())
        .max()
        .expect("range is nonempty");
    assert_eq!(
        from_meridian, from_trefoil,
        "both twist-family centers must yield the same strand bound"
    );
    i64::try_from(from_meridian).expect("bound fits in i64")
}

/// Twist parameters n for the (3,3,2n,-1) class: the n = 0 member is a
/// connected sum of trefoils, so the meridional center is non-hyperbolic and
/// |n| <= 8; the strand constraint 2n >= 3 (with 2n even) forces n >= 2.
pub fn case2_parameters() -> Vec<i64> {
    exceptional_twist_range(&Slope::infinity())
        .into_iter()
        .map(|n| i64::try_from(n).expect("parameter fits in i64"))
        .filter(|&n| n >= 2)
        .collect()
}

fn candidate(link: MontesinosLink) -> CandidateKnot {
    CandidateKnot { known_non_hyperbolic: known_non_hyperbolic(&link), link }
}

/// All (q1, q2, q3) pretzel knots with |q1| <= |q2| <= |q3| bounded by
/// [`case1_bound`] and either |q1| = 2 or |q1| = |q2| = 3, over every sign
/// pattern, deduplicated up to equivalence.
pub fn enumerate_case1() -> CandidateFamily {
    let bound = case1_bound();
    let mut seen = BTreeSet::new();
    let mut knots = Vec::new();
    for m1 in 2..=bound {
        for m2 in m1..=bound {
            if !(m1 == 2 || (m1 == 3 && m2 == 3)) {
                continue;
            }
            for m3 in m2..=bound {
                for signs in 0..8u8 {
                    let sign = |bit: u8| if signs >> bit & 1 == 0 { 1 } else { -1 };
                    let strands = [m1 * sign(0), m2 * sign(1), m3 * sign(2)];
                    let link = MontesinosLink::pretzel(&strands, 0)
                        .expect("strand sizes are at least 2");
                    if link.is_knot() && seen.insert(link.chirality_key()) {
                        knots.push(candidate(link));
                    }
                }
            }
        }
    }
    CandidateFamily {
        case: 1,
        description: format!(
            "(q1,q2,q3) pretzel knots with |q1| <= |q2| <= |q3| <= {bound} \
             and |q1| = 2 or |q1| = |q2| = 3"
        ),
        conjectural_cap: None,
        knots,
    }
}

/// The (3,3,2n,-1) pretzel knots over the derived parameter range.
pub fn enumerate_case2() -> CandidateFamily {
    let params = case2_parameters();
    let (lo, hi) = (params[0], params[params.len() - 1]);
    let knots = params
        .iter()
        .map(|&n| {
            candidate(
                MontesinosLink::pretzel(&[3, 3, 2 * n], -1).expect("strands are valid"),
            )
        })
        .collect();
    CandidateFamily {
        case: 2,
        description: format!("(3,3,2n,-1) pretzel knots with {lo} <= n <= {hi}"),
        conjectural_cap: None,
        knots,
    }
}

/// The knots K(-1/2, 2/5, 1/(2n+1)) for 1 <= n <= cap. Finiteness of the
/// class is proved abstractly; the numeric cap (default 9) rests on
/// computer experiment, so it is carried as a conjectural marker.
///
/// Recorded conclusion with no finite computation behind it here: on each
/// member, the slope 4n - 2 bounds a non-orientable spanning surface whose
/// complement carries an essential lamination, so that surgery is never
/// small Seifert fibered.
pub fn enumerate_case3(cap: u32) -> CandidateFamily {
    assert!(cap >= 1, "case 3 needs at least one member");
    let knots = (1..=i64::from(cap))
        .map(|n| {
            let tangles = vec![
                ExtendedRational::new(-1, 2).expect("valid"),
                ExtendedRational::new(2, 5).expect("valid"),
                ExtendedRational::new(1, 2 * n + 1).expect("valid"),
            ];
            candidate(MontesinosLink::new(tangles, 0).expect("tangles are non-integral"))
        })
        .collect();
    CandidateFamily {
        case: 3,
        description: format!(
            "K(-1/2, 2/5, 1/(2n+1)) with 1 <= n <= {cap} (cap conjectural)"
        ),
        conjectural_cap: Some(cap),
        knots,
    }
}

/// The ten sporadic candidates.
pub fn enumerate_case4() -> CandidateFamily {
    let mut knots = Vec::with_capacity(10);
    for s4 in [4i64, -4] {
        for s5 in [5i64, -5] {
            knots.push(candidate(
                MontesinosLink::pretzel(&[3, s4, s5], 0).expect("strands are valid"),
            ));
        }
    }
    knots.push(candidate(
        MontesinosLink::pretzel(&[3, 4, 5], -1).expect("strands are valid"),
    ));
    let fractions = |list: [(i64, i64); 3]| {
        let tangles = list
            .into_iter()
            .map(|(p, q)| ExtendedRational::new(p, q).expect("valid"))
            .collect();
        candidate(MontesinosLink::new(tangles, 0).expect("tangles are non-integral"))
    };
    knots.push(fractions([(-2, 3), (1, 3), (2, 5)]));
    for a in 3i64..=6 {
        knots.push(fractions([(-1, 2), (1, 3), (2, 2 * a + 1)]));
    }
    CandidateFamily {
        case: 4,
        description: "ten sporadic knots: (3,±4,±5), (3,4,5,-1), K(-2/3,1/3,2/5), \
                      K(-1/2,1/3,2/(2a+1)) for a = 3..6"
            .to_string(),
        conjectural_cap: None,
        knots,
    }
}

/// Which surgery slopes on a candidate knot can possibly be small Seifert
/// fibered. Constraints compose conjunctively; `All` records that no
/// restriction is derived for the class.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AllowedSlopes {
    All,
    IntegralOnly,
    /// Integral and |p| bounded: genus-one candidates with persistent
    /// laminations admit no non-integral and no large exceptional slope.
    IntegralWithNumeratorAtMost(u32),
}

impl AllowedSlopes {
    pub fn admits(&self, r: &Slope) -> bool {
        match self {
            AllowedSlopes::All => true,
            AllowedSlopes::IntegralOnly => r.is_integral(),
            AllowedSlopes::IntegralWithNumeratorAtMost(m) => {
                r.is_integral() && r.p().abs() <= BigInt::from(*m)
            }
        }
    }
}

impl fmt::Display for AllowedSlopes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AllowedSlopes::All => write!(f, "all slopes"),
            AllowedSlopes::IntegralOnly => write!(f, "integral slopes only"),
            AllowedSlopes::IntegralWithNumeratorAtMost(m) => {
                write!(f, "integral slopes with |p| <= {m}")
            }
        }
    }
}

/// The non-integral-slope sieve: only three candidate classes can carry a
/// non-integral small Seifert fibered slope; the (-3,3,q) class is further
/// pinned to integral slopes with |p| <= 3; everything else is integral-only.
pub fn nonintegral_slope_filter(k: &MontesinosLink) -> AllowedSlopes {
    let pretzel = |strands: &[i64], trailing: i64| {
        MontesinosLink::pretzel(strands, trailing).expect("reference strands are valid")
    };
    let bound = case1_bound();
    for p2 in 3..=bound {
        for p3 in p2..=bound {
            if equivalence(k, &pretzel(&[-2, p2, p3], 0)).is_some() {
                return AllowedSlopes::All;
            }
        }
    }
    for n in case2_parameters() {
        if equivalence(k, &pretzel(&[3, 3, 2 * n], -1)).is_some() {
            return AllowedSlopes::All;
        }
    }
    if equivalence(k, &pretzel(&[3, 4, 5], -1)).is_some() {
        return AllowedSlopes::All;
    }
    for q in 3..=bound {
        for q3 in [q, -q] {
            if equivalence(k, &pretzel(&[-3, 3, q3], 0)).is_some() {
                return AllowedSlopes::IntegralWithNumeratorAtMost(3);
            }
        }
    }
    AllowedSlopes::IntegralOnly
}

/// Deduplicated union of the four cases with slope constraints attached.
/// Order is deterministic: cases in order, generation order within a case.
pub fn full_candidate_list(cap3: u32) -> Vec<(CandidateKnot, AllowedSlopes)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for family in [
        enumerate_case1(),
        enumerate_case2(),
        enumerate_case3(cap3),
        enumerate_case4(),
    ] {
        for ck in family.knots {
            if seen.insert(ck.link.chirality_key()) {
                let constraint = nonintegral_slope_filter(&ck.link);
                out.push((ck, constraint));
            }
        }
    }
    out
}
