//! The catalog file grammar: line-oriented records of space-separated
//! key=value fields. See data/FORMAT.md for the grammar. Parsing is
//! lenient about extra whitespace, blank lines, and '#' comments; emission
//! is canonical, so emit ∘ parse is the identity on canonical files.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::slope::ExtendedRational;
use crate::tangle::TubedKnot;

use super::symbolic::{SymbolicFraction, SymbolicLink, SymbolicSfs};
use super::{
    Catalog, CatalogRow, FamilyParam, Framing, Instantiation, SlopeDescriptor, SurgeryOutcome,
    TubedExceptionalEntry, TubedPattern,
};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Splits a line into whitespace-separated tokens; a double-quoted span
/// (used by note fields) keeps its spaces and sheds its quotes.
fn tokenize(line: &str, lineno: usize) -> Result<Vec<String>> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut in_quotes = false;
    let mut was_quoted = false;
    for c in line.chars() {
        match c {
            '"' => {
                in_quotes = !in_quotes;
                was_quoted = true;
            }
            c if c.is_whitespace() && !in_quotes => {
                if !current.is_empty() || was_quoted {
                    tokens.push(std::mem::take(&mut current));
                    was_quoted = false;
                }
            }
            c => current.push(c),
        }
    }
    if in_quotes {
        return Err(err(lineno, "unterminated quote"));
    }
    if !current.is_empty() || was_quoted {
        tokens.push(current);
    }
    Ok(tokens)
}

/// key=value fields in declaration order, each key at most once.
struct Fields {
    lineno: usize,
    pairs: Vec<(String, String)>,
    used: BTreeSet<String>,
}

impl Fields {
    fn new(lineno: usize, tokens: &[String]) -> Result<Self> {
        let mut pairs = Vec::new();
        for token in tokens {
            let (key, value) = token.split_once('=').ok_or_else(|| {
                err(lineno, format!("expected key=value, found {token:?}"))
            })?;
            if pairs.iter().any(|(k, _)| k == key) {
                return Err(err(lineno, format!("duplicate field {key:?}")));
            }
            pairs.push((key.to_string(), value.to_string()));
        }
        Ok(Self { lineno, pairs, used: BTreeSet::new() })
    }

    fn optional(&mut self, key: &str) -> Option<String> {
        self.used.insert(key.to_string());
        self.pairs.iter().find(|(k, _)| k == key).map(|(_, v)| v.clone())
    }

    fn required(&mut self, key: &str) -> Result<String> {
        self.optional(key)
            .ok_or_else(|| err(self.lineno, format!("missing field {key:?}")))
    }

    fn finish(self) -> Result<()> {
        for (key, _) in &self.pairs {
            if !self.used.contains(key) {
                return Err(err(self.lineno, format!("unknown field {key:?}")));
            }
        }
        Ok(())
    }
}

fn parse_i64(lineno: usize, what: &str, text: &str) -> Result<i64> {
    text.parse()
        .map_err(|_| err(lineno, format!("malformed {what}: {text:?}")))
}

fn parse_row(lineno: usize, tokens: &[String]) -> Result<CatalogRow> {
    let mut fields = Fields::new(lineno, tokens)?;
    let id = fields.required("id")?;
    let knot: SymbolicLink = fields
        .required("knot")?
        .parse()
        .map_err(|e| err(lineno, format!("knot: {e}")))?;
    let slope: SymbolicFraction = fields
        .required("slope")?
        .parse()
        .map_err(|e| err(lineno, format!("slope: {e}")))?;
    let claimed: SymbolicSfs = fields
        .required("claimed")?
        .parse()
        .map_err(|e| err(lineno, format!("claimed: {e}")))?;

    let param = match fields.optional("param") {
        Some(name) => {
            if name != "n" {
                return Err(err(lineno, format!("parameter must be named n, found {name:?}")));
            }
            let range = fields.required("range")?;
            let (min, max) = range
                .split_once("..")
                .ok_or_else(|| err(lineno, format!("malformed range: {range:?}")))?;
            let min = parse_i64(lineno, "range start", min)?;
            let max = parse_i64(lineno, "range end", max)?;
            if min > max {
                return Err(err(lineno, format!("empty range {min}..{max}")));
            }
            let excluded = match fields.optional("excluded") {
                Some(list) => list
                    .split(',')
                    .map(|v| parse_i64(lineno, "excluded value", v))
                    .collect::<Result<Vec<_>>>()?,
                None => Vec::new(),
            };
            if let Some(bad) = excluded.iter().find(|v| !(min..=max).contains(*v)) {
                return Err(err(lineno, format!("excluded value {bad} outside {min}..{max}")));
            }
            Some(FamilyParam { name, min, max, excluded })
        }
        None => {
            if fields.optional("range").is_some() || fields.optional("excluded").is_some() {
                return Err(err(lineno, "range/excluded need a param field"));
            }
            None
        }
    };

    let framing = match fields.optional("framing") {
        Some(value) => {
            let slope = parse_i64(lineno, "framing", &value)?;
            let note = fields
                .required("note")
                .map_err(|_| err(lineno, "framing needs a note field"))?;
            Some(Framing { slope, note })
        }
        None => {
            if fields.optional("note").is_some() {
                return Err(err(lineno, "note needs a framing field"));
            }
            None
        }
    };
    fields.finish()?;

    let row = CatalogRow { id, knot, slope, claimed, param, framing };
    if row.param.is_none() {
        if !(row.knot.is_constant() && row.slope.is_constant() && row.claimed.is_constant()) {
            return Err(err(lineno, "parameterized terms need a param field"));
        }
        if let Instantiation::Degenerate { reason } = row.instantiate(0) {
            return Err(err(lineno, format!("row does not materialize: {reason}")));
        }
    }
    Ok(row)
}

fn parse_pattern(lineno: usize, text: &str) -> Result<TubedPattern> {
    if text == "one-over-q" {
        return Ok(TubedPattern::AnyOneOverQ);
    }
    let rest = text
        .strip_prefix("K^")
        .ok_or_else(|| err(lineno, format!("malformed pattern: {text:?}")))?;
    let (kind, rest) = rest
        .split_once('(')
        .ok_or_else(|| err(lineno, format!("malformed pattern: {text:?}")))?;
    let kind = parse_i64(lineno, "pattern kind", kind)?;
    let inner = rest
        .strip_suffix(')')
        .ok_or_else(|| err(lineno, format!("malformed pattern: {text:?}")))?;
    let mut fractions = inner.split(',').map(|f| {
        f.parse::<ExtendedRational>()
            .map_err(|e| err(lineno, format!("pattern fraction: {e}")))
    });
    let f1 = fractions.next().ok_or_else(|| err(lineno, "pattern needs two fractions"))??;
    let f2 = fractions.next().ok_or_else(|| err(lineno, "pattern needs two fractions"))??;
    if fractions.next().is_some() {
        return Err(err(lineno, "pattern takes exactly two fractions"));
    }
    let kind = u8::try_from(kind).map_err(|_| err(lineno, "pattern kind must be 0 or 1"))?;
    let knot = TubedKnot::new(kind, f1, f2).map_err(|e| err(lineno, format!("pattern: {e}")))?;
    Ok(TubedPattern::Exact(knot))
}

fn parse_tubed(lineno: usize, tokens: &[String]) -> Result<TubedExceptionalEntry> {
    let mut fields = Fields::new(lineno, tokens)?;
    let id = fields.required("id")?;
    let pattern = parse_pattern(lineno, &fields.required("pattern")?)?;
    let outcomes = fields
        .required("outcomes")?
        .split(',')
        .map(|item| {
            let (desc, outcome) = item
                .split_once(':')
                .ok_or_else(|| err(lineno, format!("malformed outcome: {item:?}")))?;
            let desc = if desc == "pretzel-slope" {
                SlopeDescriptor::PretzelSlope
            } else {
                SlopeDescriptor::Numeric(
                    desc.parse()
                        .map_err(|e| err(lineno, format!("outcome slope: {e}")))?,
                )
            };
            let outcome = match outcome {
                "toroidal" => SurgeryOutcome::Toroidal,
                "small-sfs" => SurgeryOutcome::SmallSeifert,
                other => return Err(err(lineno, format!("unknown outcome {other:?}"))),
            };
            Ok((desc, outcome))
        })
        .collect::<Result<Vec<_>>>()?;
    fields.finish()?;
    Ok(TubedExceptionalEntry { id, pattern, outcomes })
}

pub(super) fn parse_catalog(source: &str) -> Result<Catalog> {
    let mut rows = Vec::new();
    let mut tubed = Vec::new();
    let mut ids = BTreeSet::new();
    for (i, line) in source.lines().enumerate() {
        let lineno = i + 1;
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let tokens = tokenize(line, lineno)?;
        let id = match tokens[0].as_str() {
            "row" => {
                let row = parse_row(lineno, &tokens[1..])?;
                let id = row.id.clone();
                rows.push(row);
                id
            }
            "tubed" => {
                let entry = parse_tubed(lineno, &tokens[1..])?;
                let id = entry.id.clone();
                tubed.push(entry);
                id
            }
            other => return Err(err(lineno, format!("unknown record kind {other:?}"))),
        };
        if !ids.insert(id.clone()) {
            return Err(err(lineno, format!("duplicate id {id:?}")));
        }
    }
    Ok(Catalog { rows, tubed })
}

fn emit_row(row: &CatalogRow, out: &mut String) {
    out.push_str(&format!(
        "row id={} knot={} slope={} claimed={}",
        row.id, row.knot, row.slope, row.claimed
    ));
    if let Some(p) = &row.param {
        out.push_str(&format!(" param={} range={}..{}", p.name, p.min, p.max));
        if !p.excluded.is_empty() {
            let list: Vec<String> = p.excluded.iter().map(i64::to_string).collect();
            out.push_str(&format!(" excluded={}", list.join(",")));
        }
    }
    if let Some(f) = &row.framing {
        out.push_str(&format!(" framing={} note=\"{}\"", f.slope, f.note));
    }
    out.push('\n');
}

fn emit_tubed(entry: &TubedExceptionalEntry, out: &mut String) {
    let pattern = match &entry.pattern {
        TubedPattern::AnyOneOverQ => "one-over-q".to_string(),
        TubedPattern::Exact(k) => {
            format!("K^{}({},{})", k.kind(), k.fractions()[0], k.fractions()[1])
        }
    };
    let outcomes: Vec<String> = entry
        .outcomes
        .iter()
        .map(|(desc, outcome)| format!("{desc}:{outcome}"))
        .collect();
    out.push_str(&format!(
        "tubed id={} pattern={} outcomes={}\n",
        entry.id,
        pattern,
        outcomes.join(",")
    ));
}

pub(super) fn emit_catalog(catalog: &Catalog) -> String {
    let mut out = String::new();
    for row in &catalog.rows {
        emit_row(row, &mut out);
    }
    for entry in &catalog.tubed {
        emit_tubed(entry, &mut out);
    }
    out
}
