//! The shipped table of claimed small Seifert fibered surgeries, the
//! homology auditor that checks each row, and the exceptional-surgery
//! dictionary for tubed knots in a solid torus.
//!
//! The audit is a necessary condition, not a proof: it compares |H1| of the
//! surgered manifold (read off the surgery slope) with |H1| of the claimed
//! Seifert invariants (read off the fiber data). The two sides share no
//! code. A failed comparison is reported as MISMATCH — it flags a data
//! discrepancy, not a decision about which side is wrong — and the expected
//! discrepancy set ships alongside the table so regressions are separable
//! from known typos.

pub mod symbolic;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::enumerate::known_non_hyperbolic;
use crate::error::{Error, Result};
use crate::seifert::SeifertInvariants;
use crate::slope::Slope;
use crate::surgery::SurgerySpec;
use crate::tangle::{MontesinosLink, TubedKnot};

use symbolic::{SymbolicFraction, SymbolicLink, SymbolicSfs};

/// The catalog data compiled into the binary; `verify-table` falls back to
/// this copy when no path is given.
pub const SHIPPED_CATALOG: &str = include_str!("../../data/catalog.txt");

/// The expected mismatch set, established with an independent oracle and
/// pinned as a regression baseline.
pub const SHIPPED_PINNED: &str = include_str!("../../data/pinned_mismatches.txt");

/// Validity range and exclusions for a row's parameter.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FamilyParam {
    pub name: String,
    pub min: i64,
    pub max: i64,
    pub excluded: Vec<i64>,
}

impl FamilyParam {
    pub fn range(&self) -> RangeInclusive<i64> {
        self.min..=self.max
    }
}

/// A stated framing for the strong-inversion quotient of the row's knot,
/// with a note recording where the number comes from.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Framing {
    pub slope: i64,
    pub note: String,
}

/// One row of the surgery table: a knot, a surgery slope, and the claimed
/// Seifert invariants of the result. Family rows carry a parameter and are
/// materialized per parameter value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CatalogRow {
    pub id: String,
    pub knot: SymbolicLink,
    pub slope: SymbolicFraction,
    pub claimed: SymbolicSfs,
    pub param: Option<FamilyParam>,
    pub framing: Option<Framing>,
}

/// A row materialized at a concrete parameter value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConcreteRow {
    pub id: String,
    pub knot: MontesinosLink,
    pub slope: Slope,
    pub claimed: SeifertInvariants,
}

/// Result of materializing a row at one parameter value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Instantiation {
    Concrete(ConcreteRow),
    Degenerate { reason: String },
}

impl CatalogRow {
    pub fn is_family(&self) -> bool {
        self.param.is_some()
    }

    fn param_name(&self) -> &str {
        self.param.as_ref().map_or("n", |p| p.name.as_str())
    }

    fn instance_id(&self, n: i64) -> String {
        if self.is_family() {
            format!("{}[{}={}]", self.id, self.param_name(), n)
        } else {
            self.id.clone()
        }
    }

    /// Materializes the row at parameter value `n` (ignored for rows
    /// without a parameter).
    pub fn instantiate(&self, n: i64) -> Instantiation {
        let name = self.param_name();
        let degenerate = |reason: String| Instantiation::Degenerate { reason };
        if let Some(p) = &self.param {
            if p.excluded.contains(&n) {
                return degenerate(format!(
                    "parameter {name} = {n} is excluded from the claim"
                ));
            }
        }
        let knot = match self.knot.eval(n) {
            Ok(k) => k,
            Err(e) => return degenerate(format!("knot undefined at {name} = {n}: {e}")),
        };
        if !knot.is_knot() {
            return degenerate(format!("link has several components at {name} = {n}"));
        }
        let slope = match self.slope.eval(n) {
            Ok(s) => Slope::from(s),
            Err(e) => return degenerate(format!("slope undefined at {name} = {n}: {e}")),
        };
        if slope.is_infinity() {
            return degenerate(format!("slope is the meridian at {name} = {n}"));
        }
        let claimed = match self.claimed.eval(n) {
            Ok(c) => c,
            Err(e) => {
                return degenerate(format!(
                    "claimed invariants undefined at {name} = {n}: {e}"
                ))
            }
        };
        Instantiation::Concrete(ConcreteRow { id: self.instance_id(n), knot, slope, claimed })
    }
}

/// Verdict for one materialized row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RowStatus {
    Pass { order: BigInt },
    Mismatch { computed: BigInt, expected: BigInt },
    Degenerate { reason: String },
}

impl RowStatus {
    pub fn label(&self) -> &'static str {
        match self {
            RowStatus::Pass { .. } => "PASS",
            RowStatus::Mismatch { .. } => "MISMATCH",
            RowStatus::Degenerate { .. } => "DEGENERATE",
        }
    }
}

/// One line of a verification report.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReportEntry {
    pub id: String,
    pub status: RowStatus,
    pub note: Option<String>,
}

/// Audits a materialized row: `computed` is |H1| of the claimed Seifert
/// invariants, `expected` is |H1| of the surgery read off the slope alone.
pub fn verify_concrete(row: &ConcreteRow) -> RowStatus {
    if !row.claimed.is_small() {
        return RowStatus::Degenerate {
            reason: "claimed invariants are not small Seifert fibered".to_string(),
        };
    }
    let computed = row.claimed.h1_order();
    let surgery = SurgerySpec::new(row.knot.clone(), row.slope.clone())
        .expect("materialized rows hold knots");
    let expected = surgery.h1_order();
    if computed == expected {
        RowStatus::Pass { order: computed }
    } else {
        RowStatus::Mismatch { computed, expected }
    }
}

fn entry_for(row: &CatalogRow, n: i64) -> ReportEntry {
    match row.instantiate(n) {
        Instantiation::Concrete(concrete) => {
            let note = known_non_hyperbolic(&concrete.knot)
                .then(|| "knot is a known non-hyperbolic pretzel".to_string());
            ReportEntry { id: concrete.id.clone(), status: verify_concrete(&concrete), note }
        }
        Instantiation::Degenerate { reason } => ReportEntry {
            id: row.instance_id(n),
            status: RowStatus::Degenerate { reason },
            note: None,
        },
    }
}

/// Audits a family row over an explicit parameter range, one entry per value.
pub fn verify_family(row: &CatalogRow, range: RangeInclusive<i64>) -> Vec<ReportEntry> {
    assert!(row.is_family(), "verify_family needs a parameterized row");
    range.map(|n| entry_for(row, n)).collect()
}

/// Audits a row: family rows expand over their stored range.
pub fn verify_row(row: &CatalogRow) -> Vec<ReportEntry> {
    match &row.param {
        Some(p) => verify_family(row, p.range()),
        None => vec![entry_for(row, 0)],
    }
}

/// A parsed catalog: surgery rows plus the tubed-knot exceptional entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Catalog {
    pub rows: Vec<CatalogRow>,
    pub tubed: Vec<TubedExceptionalEntry>,
}

impl Catalog {
    /// The compiled-in copy of the shipped data.
    pub fn shipped() -> Self {
        load_catalog(SHIPPED_CATALOG).expect("shipped catalog parses")
    }

    /// Canonical text form; `emit(parse(text)) == text` for canonical input.
    pub fn emit(&self) -> String {
        text::emit_catalog(self)
    }
}

/// Parses catalog text. Blank lines and lines starting with '#' are
/// ignored; errors carry the line number and offending token.
pub fn load_catalog(source: &str) -> Result<Catalog> {
    text::parse_catalog(source)
}

/// Audits a whole catalog in row order.
pub fn verify_catalog(catalog: &Catalog) -> VerificationReport {
    VerificationReport {
        entries: catalog.rows.iter().flat_map(verify_row).collect(),
    }
}

/// Deterministic, stably ordered audit report.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport {
    pub entries: Vec<ReportEntry>,
}

impl VerificationReport {
    /// The mismatched entries as id -> (computed, expected).
    pub fn mismatches(&self) -> BTreeMap<String, (BigInt, BigInt)> {
        self.entries
            .iter()
            .filter_map(|e| match &e.status {
                RowStatus::Mismatch { computed, expected } => {
                    Some((e.id.clone(), (computed.clone(), expected.clone())))
                }
                _ => None,
            })
            .collect()
    }

    /// (pass, mismatch, degenerate) entry counts.
    pub fn counts(&self) -> (usize, usize, usize) {
        let mut counts = (0, 0, 0);
        for e in &self.entries {
            match e.status {
                RowStatus::Pass { .. } => counts.0 += 1,
                RowStatus::Mismatch { .. } => counts.1 += 1,
                RowStatus::Degenerate { .. } => counts.2 += 1,
            }
        }
        counts
    }

    /// Success means the observed mismatch set equals the pinned one.
    pub fn matches_pinned(&self, pinned: &PinnedMismatches) -> bool {
        self.mismatches() == pinned.0
    }

    /// Human-readable table with a trailing summary line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let detail = match &e.status {
                RowStatus::Pass { order } => format!("|H1| = {order}"),
                RowStatus::Mismatch { computed, expected } => {
                    format!("claimed invariants give {computed}, slope gives {expected}")
                }
                RowStatus::Degenerate { reason } => reason.clone(),
            };
            let note = e.note.as_ref().map(|n| format!(" [{n}]")).unwrap_or_default();
            out.push_str(&format!(
                "{:<16} {:<10} {detail}{note}\n",
                e.id,
                e.status.label()
            ));
        }
        let (pass, mismatch, degenerate) = self.counts();
        out.push_str(&format!(
            "summary: {} checks: {pass} PASS, {mismatch} MISMATCH, {degenerate} DEGENERATE\n",
            self.entries.len()
        ));
        out
    }

    /// Machine-readable: one `id<TAB>status<TAB>computed<TAB>expected` line
    /// per entry, "-" for sides a degenerate entry does not have.
    pub fn render_records(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let (computed, expected) = match &e.status {
                RowStatus::Pass { order } => (order.to_string(), order.to_string()),
                RowStatus::Mismatch { computed, expected } => {
                    (computed.to_string(), expected.to_string())
                }
                RowStatus::Degenerate { .. } => ("-".to_string(), "-".to_string()),
            };
            out.push_str(&format!(
                "{}\t{}\t{computed}\t{expected}\n",
                e.id,
                e.status.label()
            ));
        }
        out
    }
}

/// The regression baseline: ids expected to mismatch, with both orders.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PinnedMismatches(pub BTreeMap<String, (BigInt, BigInt)>);

impl PinnedMismatches {
    /// Parses `id<TAB>computed<TAB>expected` lines; '#' comments and blank
    /// lines are ignored.
    pub fn parse(source: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, line) in source.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split('\t');
            let parse_err = |message: String| Error::Parse { line: i + 1, message };
            let id = fields
                .next()
                .filter(|s| !s.is_empty())
                .ok_or_else(|| parse_err("missing id".to_string()))?;
            let mut int = |what: &str| -> Result<BigInt> {
                fields
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| parse_err(format!("missing or malformed {what}")))
            };
            let computed = int("computed order")?;
            let expected = int("expected order")?;
            if map.insert(id.to_string(), (computed, expected)).is_some() {
                return Err(parse_err(format!("duplicate id {id}")));
            }
        }
        Ok(Self(map))
    }

    pub fn emit(&self) -> String {
        self.0
            .iter()
            .map(|(id, (computed, expected))| format!("{id}\t{computed}\t{expected}\n"))
            .collect()
    }

    pub fn shipped() -> Self {
        Self::parse(SHIPPED_PINNED).expect("shipped pin file parses")
    }
}

/// Which slopes an exceptional-entry applies to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SlopeDescriptor {
    /// The boundary slope of the pretzel surface, kept symbolic.
    PretzelSlope,
    Numeric(Slope),
}

impl fmt::Display for SlopeDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlopeDescriptor::PretzelSlope => write!(f, "pretzel-slope"),
            SlopeDescriptor::Numeric(s) => write!(f, "{}", s.fraction()),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SurgeryOutcome {
    Toroidal,
    SmallSeifert,
}

impl fmt::Display for SurgeryOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurgeryOutcome::Toroidal => write!(f, "toroidal"),
            SurgeryOutcome::SmallSeifert => write!(f, "small-sfs"),
        }
    }
}

/// Knot pattern an exceptional entry matches against.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TubedPattern {
    /// Any K^a(1/q1, 1/q2): both tangle numerators are ±1.
    AnyOneOverQ,
    /// One specific knot, up to mirror image and tangle swap.
    Exact(TubedKnot),
}

impl TubedPattern {
    pub fn matches(&self, k: &TubedKnot) -> bool {
        match self {
            TubedPattern::AnyOneOverQ => {
                k.fractions().iter().all(|f| f.numerator().abs() == BigInt::one())
            }
            TubedPattern::Exact(t) => t.same_knot(k),
        }
    }
}

/// The exceptional surgeries of one tubed-knot class inside the solid torus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TubedExceptionalEntry {
    pub id: String,
    pub pattern: TubedPattern,
    pub outcomes: Vec<(SlopeDescriptor, SurgeryOutcome)>,
}

/// The exceptional surgeries on a tubed knot in the solid torus; an empty
/// answer means every nontrivial filling is hyperbolic. Exact patterns take
/// precedence over the generic 1/q pattern.
pub fn tubed_exceptional_lookup(
    entries: &[TubedExceptionalEntry],
    k: &TubedKnot,
) -> Vec<(SlopeDescriptor, SurgeryOutcome)> {
    for exact_pass in [true, false] {
        for e in entries {
            let is_exact = matches!(e.pattern, TubedPattern::Exact(_));
            if is_exact == exact_pass && e.pattern.matches(k) {
                return e.outcomes.clone();
            }
        }
    }
    Vec::new()
}
