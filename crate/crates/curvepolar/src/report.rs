//! Structured text reports.
//!
//! A report is an ordered key-value document with nested maps and lists,
//! serialized to an indentation-based plain-text format so runs can be
//! diffed structurally.  The grammar, with two-space indentation:
//!
//! ```text
//! document  = entry*
//! entry     = key ": " scalar NL        -- scalar value
//!           | key ": []" NL             -- empty list
//!           | key ": {}" NL             -- empty map
//!           | key ":" NL indented-block -- nested list or map
//! item      = "- " scalar NL
//!           | "-" NL indented-block
//! ```
//!
//! Keys match `[A-Za-z0-9_.-]+`.  Scalars are free text without newlines or
//! leading/trailing whitespace and never equal the literals `[]` or `{}`.
//! Exact rationals are written as `num/den` strings, decimal approximations
//! with twelve digits.  `parse(serialize(r)) == r` for every report built
//! through this module.

use crate::poly::{Interval, Rat};
use crate::singular::SingularityReport;
use crate::solve::{Certificate, CertifiedPoint, SolutionSet};
use crate::topology::{ComponentMap, CoverageReport};
use crate::uni::rat_to_f64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("line {0}: bad indentation")]
    BadIndent(usize),
    #[error("line {0}: expected `key: value` or list item")]
    BadLine(usize),
    #[error("line {0}: empty nested block")]
    EmptyBlock(usize),
    #[error("line {0}: mixed list items and map keys in one block")]
    MixedBlock(usize),
}

/// One node of a report document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Scalar(String),
    List(Vec<Value>),
    Map(Vec<(String, Value)>),
}

impl Value {
    pub fn scalar(s: impl Into<String>) -> Value {
        Value::Scalar(s.into())
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        match self {
            Value::Map(entries) => entries.iter().find(|(k, _)| k == key).map(|(_, v)| v),
            _ => None,
        }
    }

    pub fn as_scalar(&self) -> Option<&str> {
        match self {
            Value::Scalar(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Value]> {
        match self {
            Value::List(items) => Some(items),
            _ => None,
        }
    }
}

/// An ordered document; the unit of serialization.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, key: &str, value: Value) -> &mut Self {
        debug_assert!(valid_key(key), "invalid report key {key:?}");
        self.entries.push((key.to_string(), value));
        self
    }

    pub fn push_scalar(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.push(key, Value::Scalar(value.into()))
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        write_map(&mut out, &self.entries, 0);
        out
    }

    pub fn parse(text: &str) -> Result<Report, ReportError> {
        let lines: Vec<(usize, usize, &str)> = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(n, l)| {
                let indent = l.len() - l.trim_start_matches(' ').len();
                (n + 1, indent, l.trim_start_matches(' '))
            })
            .collect();
        let (value, used) = parse_block(&lines, 0, 0)?;
        if used < lines.len() {
            return Err(ReportError::BadIndent(lines[used].0));
        }
        match value {
            Value::Map(entries) => Ok(Report { entries }),
            _ => Err(ReportError::BadLine(lines.first().map_or(0, |l| l.0))),
        }
    }
}

fn valid_key(key: &str) -> bool {
    !key.is_empty()
        && key
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'))
}

fn write_map(out: &mut String, entries: &[(String, Value)], indent: usize) {
    for (key, value) in entries {
        out.push_str(&" ".repeat(indent));
        out.push_str(key);
        write_value_after_key(out, value, indent);
    }
}

fn write_value_after_key(out: &mut String, value: &Value, indent: usize) {
    match value {
        Value::Scalar(s) => {
            out.push_str(": ");
            out.push_str(s);
            out.push('\n');
        }
        Value::List(items) if items.is_empty() => out.push_str(": []\n"),
        Value::Map(entries) if entries.is_empty() => out.push_str(": {}\n"),
        Value::List(items) => {
            out.push_str(":\n");
            write_list(out, items, indent + 2);
        }
        Value::Map(entries) => {
            out.push_str(":\n");
            write_map(out, entries, indent + 2);
        }
    }
}

fn write_list(out: &mut String, items: &[Value], indent: usize) {
    for item in items {
        out.push_str(&" ".repeat(indent));
        match item {
            Value::Scalar(s) => {
                out.push_str("- ");
                out.push_str(s);
                out.push('\n');
            }
            Value::List(inner) if inner.is_empty() => out.push_str("- []\n"),
            Value::Map(inner) if inner.is_empty() => out.push_str("- {}\n"),
            Value::List(inner) => {
                out.push_str("-\n");
                write_list(out, inner, indent + 2);
            }
            Value::Map(inner) => {
                out.push_str("-\n");
                write_map(out, inner, indent + 2);
            }
        }
    }
}

/// Parse one block of lines at exactly `indent`, starting at `pos`; returns
/// the block value and the index one past its last line.
fn parse_block(
    lines: &[(usize, usize, &str)],
    pos: usize,
    indent: usize,
) -> Result<(Value, usize), ReportError> {
    if pos >= lines.len() {
        return Err(ReportError::EmptyBlock(
            lines.last().map_or(0, |l| l.0),
        ));
    }
    let is_list = lines[pos].2 == "-" || lines[pos].2.starts_with("- ");
    let mut i = pos;
    let mut items = Vec::new();
    let mut entries = Vec::new();
    while i < lines.len() {
        let (lineno, line_indent, body) = lines[i];
        if line_indent < indent {
            break;
        }
        if line_indent > indent {
            return Err(ReportError::BadIndent(lineno));
        }
        let item_here = body == "-" || body.starts_with("- ");
        if item_here != is_list {
            return Err(ReportError::MixedBlock(lineno));
        }
        if is_list {
            if let Some(rest) = body.strip_prefix("- ") {
                items.push(scalar_or_empty(rest));
                i += 1;
            } else {
                let (value, next) = parse_block(lines, i + 1, indent + 2)?;
                items.push(value);
                i = next;
            }
        } else {
            let (key, rest) = body
                .split_once(':')
                .ok_or(ReportError::BadLine(lineno))?;
            if !valid_key(key) {
                return Err(ReportError::BadLine(lineno));
            }
            if rest.is_empty() {
                let (value, next) = parse_block(lines, i + 1, indent + 2)?;
                entries.push((key.to_string(), value));
                i = next;
            } else if let Some(scalar) = rest.strip_prefix(' ') {
                entries.push((key.to_string(), scalar_or_empty(scalar)));
                i += 1;
            } else {
                return Err(ReportError::BadLine(lineno));
            }
        }
    }
    if is_list {
        Ok((Value::List(items), i))
    } else {
        Ok((Value::Map(entries), i))
    }
}

fn scalar_or_empty(s: &str) -> Value {
    match s {
        "[]" => Value::List(vec![]),
        "{}" => Value::Map(vec![]),
        other => Value::Scalar(other.to_string()),
    }
}

// ---------------------------------------------------------------------------
// Builders from the domain types.

pub fn rat_str(r: &Rat) -> String {
    r.to_string()
}

pub fn approx_str(r: &Rat) -> String {
    format!("{:.12}", rat_to_f64(r))
}

fn interval_value(iv: &Interval) -> Value {
    Value::List(vec![
        Value::scalar(rat_str(&iv.lo)),
        Value::scalar(rat_str(&iv.hi)),
    ])
}

fn certificate_name(cert: &Certificate) -> &'static str {
    match cert {
        Certificate::Exact { .. } => "exact",
        Certificate::ExactX { .. } => "exact-x",
        Certificate::ExactY { .. } => "exact-y",
        Certificate::Pair { proven: true, .. } => "interval-pair",
        Certificate::Pair { proven: false, .. } => "interval-cluster",
    }
}

/// One certified point as a report map: exact box endpoints, twelve-digit
/// decimal approximations, multiplicity hint, and certificate kind.
pub fn point_value(p: &CertifiedPoint) -> Value {
    let (ax, ay) = p.approx();
    Value::Map(vec![
        ("x-box".into(), interval_value(&p.xbox)),
        ("y-box".into(), interval_value(&p.ybox)),
        ("x-approx".into(), Value::scalar(format!("{ax:.12}"))),
        ("y-approx".into(), Value::scalar(format!("{ay:.12}"))),
        (
            "multiplicity-hint".into(),
            Value::scalar(p.multiplicity_hint.to_string()),
        ),
        (
            "certificate".into(),
            Value::scalar(certificate_name(&p.cert)),
        ),
    ])
}

/// A solution set as two lists: `witnesses` and `excluded` (with reasons).
pub fn solution_set_value(s: &SolutionSet) -> Value {
    let witnesses = s.points.iter().map(point_value).collect();
    let excluded = s
        .excluded
        .iter()
        .map(|(p, reason)| {
            let mut m = match point_value(p) {
                Value::Map(m) => m,
                _ => unreachable!(),
            };
            m.push(("excluded-because".into(), Value::scalar(reason.to_string())));
            Value::Map(m)
        })
        .collect();
    Value::Map(vec![
        ("witnesses".into(), Value::List(witnesses)),
        ("excluded".into(), Value::List(excluded)),
    ])
}

/// One singularity classification: location, multiplicity, kind, and the
/// tangent directions as exact surd strings.
pub fn singularity_value(rep: &SingularityReport) -> Value {
    let tangents = rep
        .tangent_cone_factors
        .iter()
        .map(|t| Value::scalar(format!("{t} x{}", t.multiplicity)))
        .collect();
    Value::Map(vec![
        ("location".into(), point_value(&rep.location)),
        (
            "multiplicity".into(),
            Value::scalar(rep.multiplicity.to_string()),
        ),
        ("kind".into(), Value::scalar(rep.kind.to_string())),
        ("real-tangents".into(), Value::List(tangents)),
    ])
}

/// Component census: window, resolution, and per-component facts.
pub fn component_map_value(map: &ComponentMap) -> Value {
    let comps = map
        .components()
        .iter()
        .enumerate()
        .map(|(id, c)| {
            Value::Map(vec![
                ("id".into(), Value::scalar(id.to_string())),
                ("cells".into(), Value::scalar(c.cell_count.to_string())),
                (
                    "compact-in-box".into(),
                    Value::scalar(c.compact_in_box.to_string()),
                ),
                ("x-extent".into(), interval_value(&c.xbox)),
                ("y-extent".into(), interval_value(&c.ybox)),
            ])
        })
        .collect();
    Value::Map(vec![
        ("window-x".into(), interval_value(&map.window.0)),
        ("window-y".into(), interval_value(&map.window.1)),
        (
            "resolution".into(),
            Value::scalar(map.resolution.to_string()),
        ),
        (
            "component-count".into(),
            Value::scalar(map.component_count().to_string()),
        ),
        ("components".into(), Value::List(comps)),
    ])
}

/// Coverage verdicts and the hypothesis checklist.
pub fn coverage_value(cov: &CoverageReport) -> Value {
    let per = cov
        .per_component
        .iter()
        .map(|c| {
            Value::Map(vec![
                ("component".into(), Value::scalar(c.component.to_string())),
                (
                    "nonsingular-witnesses".into(),
                    Value::scalar(c.nonsingular_witnesses.len().to_string()),
                ),
                (
                    "singular-witnesses".into(),
                    Value::scalar(c.singular_witnesses.len().to_string()),
                ),
                ("verdict".into(), Value::scalar(c.verdict.to_string())),
            ])
        })
        .collect();
    let mut hyp = vec![
        (
            "all-components-compact".into(),
            Value::scalar(cov.hypotheses.all_components_compact.to_string()),
        ),
        (
            "all-singularities-ordinary".into(),
            Value::scalar(cov.hypotheses.all_singularities_ordinary.to_string()),
        ),
    ];
    if let Some(off) = cov.hypotheses.pole_off_curve {
        hyp.push(("pole-off-curve".into(), Value::scalar(off.to_string())));
    }
    Value::Map(vec![
        ("per-component".into(), Value::List(per)),
        ("hypotheses".into(), Value::Map(hyp)),
        (
            "ambiguous-witnesses".into(),
            Value::scalar(cov.ambiguous_witnesses.len().to_string()),
        ),
        (
            "off-map-witnesses".into(),
            Value::scalar(cov.off_map_witnesses.len().to_string()),
        ),
    ])
}

/// Start a report with the common header.
pub fn header(command: &str) -> Report {
    let mut r = Report::new();
    r.push_scalar("schema", "curvepolar-report-v1");
    r.push_scalar("command", command);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::solve::solve_system;

    #[test]
    fn serialize_then_parse_is_identity() {
        let mut r = header("polar");
        r.push_scalar("curve-id", "ex1");
        r.push(
            "nested",
            Value::Map(vec![
                ("a".into(), Value::scalar("1/2")),
                (
                    "b".into(),
                    Value::List(vec![
                        Value::scalar("x"),
                        Value::Map(vec![("deep".into(), Value::scalar("-3/7"))]),
                        Value::List(vec![Value::scalar("1"), Value::scalar("2")]),
                    ]),
                ),
            ]),
        );
        r.push("empty-list", Value::List(vec![]));
        r.push("empty-map", Value::Map(vec![]));
        let text = r.serialize();
        let back = Report::parse(&text).unwrap();
        assert_eq!(back, r);
        // and serialization is stable
        assert_eq!(back.serialize(), text);
    }

    #[test]
    fn solution_set_report_round_trips() {
        let f = Poly::parse("X1^2 + X2^2 - 1").unwrap();
        let g = Poly::parse("X2").unwrap();
        let sols = solve_system(&f, &g, None).unwrap();
        assert_eq!(sols.points.len(), 2);
        let mut r = header("polar");
        r.push("solutions", solution_set_value(&sols));
        let text = r.serialize();
        let back = Report::parse(&text).unwrap();
        assert_eq!(back, r);
        let wit = back
            .get("solutions")
            .and_then(|v| v.get("witnesses"))
            .and_then(|v| v.as_list())
            .unwrap();
        assert_eq!(wit.len(), 2);
        let x = wit[0].get("x-approx").and_then(|v| v.as_scalar()).unwrap();
        assert_eq!(x, "-1.000000000000");
    }

    #[test]
    fn rejects_malformed_documents() {
        assert!(Report::parse("key:\n").is_err());
        assert!(Report::parse("  indented-at-top: 1\n").is_err());
        assert!(Report::parse("list:\n  - a\n  b: 2\n").is_err());
        assert!(Report::parse("bad key!: 1\n").is_err());
    }

    #[test]
    fn empty_containers_round_trip_distinctly() {
        let mut r = Report::new();
        r.push("l", Value::List(vec![]));
        r.push("m", Value::Map(vec![]));
        let back = Report::parse(&r.serialize()).unwrap();
        assert_eq!(back.get("l"), Some(&Value::List(vec![])));
        assert_eq!(back.get("m"), Some(&Value::Map(vec![])));
    }
}
