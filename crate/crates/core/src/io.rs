//! Wire formats: isotherm CSV ingestion, the deterministic JSON report
//! with its lossless number encoding, the BET-plot table, the candidate
//! dump, and comparison against reference fixture areas.

use crate::bet::linearize_point;
use crate::model::{
    validate_isotherm, AnalysisReport, BETFit, Candidate, Isotherm, Point, RejectionReason,
    ValidationError,
};
use serde_json::Value;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Ingestion failure: either a malformed cell or a well-formed table that
/// fails isotherm validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// Cell at (1-based line, 1-based column) is not usable; `text` is the
    /// offending content.
    Syntax { line: usize, column: usize, text: String },
    /// Parsed rows do not form a valid isotherm. `line` locates the
    /// offending row where the underlying error names a point.
    Invalid { line: Option<usize>, source: ValidationError },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { line, column, text } => {
                write!(f, "line {line}, column {column}: cannot read '{text}'")
            }
            ParseError::Invalid { line: Some(line), source } => {
                write!(f, "line {line}: {source}")
            }
            ParseError::Invalid { line: None, source } => source.fmt(f),
        }
    }
}

impl std::error::Error for ParseError {}

/// Parses a two-column pressure/uptake CSV and validates it.
///
/// Blank lines and lines starting with '#' are skipped. A single leading
/// header line is tolerated when none of its fields parse as numbers.
/// Whitespace around fields is ignored. Validation errors are mapped back
/// to the source line of the offending point.
pub fn parse_isotherm_csv(text: &str) -> Result<Isotherm, ParseError> {
    let mut rows: Vec<(usize, Point)> = Vec::new();
    let mut first_row_seen = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if !first_row_seen {
            first_row_seen = true;
            let all_non_numeric =
                fields.iter().all(|f| f.trim().parse::<f64>().is_err());
            if all_non_numeric {
                continue;
            }
        }
        if fields.len() != 2 {
            let column = if fields.len() < 2 { 2 } else { 3 };
            return Err(ParseError::Syntax { line: line_no, column, text: line.to_string() });
        }
        let p = parse_cell(fields[0], line_no, 1)?;
        let n = parse_cell(fields[1], line_no, 2)?;
        rows.push((line_no, Point::new(p, n)));
    }
    let points = rows.iter().map(|&(_, pt)| pt).collect();
    validate_isotherm(points).map_err(|source| ParseError::Invalid {
        line: source.index().map(|k| rows[k].0),
        source,
    })
}

fn parse_cell(field: &str, line: usize, column: usize) -> Result<f64, ParseError> {
    let text = field.trim();
    text.parse::<f64>().map_err(|_| ParseError::Syntax {
        line,
        column,
        text: text.to_string(),
    })
}

/// 17 significant digits in scientific notation. That many digits pin down
/// every finite f64 uniquely, so parsing the text recovers the exact bits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn push_json_string(out: &mut String, s: &str) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
}

fn push_candidate_json(out: &mut String, c: &Candidate) {
    out.push_str("{\"fit\":{\"slope\":");
    out.push_str(&fmt_f64(c.fit.slope));
    out.push_str(",\"intercept\":");
    out.push_str(&fmt_f64(c.fit.intercept));
    out.push_str(",\"r_squared\":");
    out.push_str(&fmt_f64(c.fit.r_squared));
    out.push_str(",\"nm\":");
    out.push_str(&fmt_f64(c.fit.nm));
    out.push_str(",\"c\":");
    out.push_str(&fmt_f64(c.fit.c));
    out.push_str(&format!(",\"range\":[{},{}]", c.fit.range.0, c.fit.range.1));
    out.push_str(&format!(",\"n_points\":{}", c.fit.n_points));
    out.push_str("},\"window\":[");
    for (i, pt) in c.window.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push('[');
        out.push_str(&fmt_f64(pt.p));
        out.push(',');
        out.push_str(&fmt_f64(pt.n));
        out.push(']');
    }
    out.push_str("],\"p_nm\":");
    out.push_str(&fmt_f64(c.p_nm));
    out.push_str(",\"p_read\":");
    out.push_str(&fmt_f64(c.p_read));
    out.push_str(",\"pc_error\":");
    out.push_str(&fmt_f64(c.pc_error));
    out.push('}');
}

/// Serializes a report to JSON with a fixed key order (chosen, candidates,
/// rejections, surface_area_m2_per_g, input_digest) and 17-digit numbers.
/// Equal reports serialize to identical bytes.
pub fn write_report_json(report: &AnalysisReport) -> String {
    let mut out = String::new();
    out.push_str("{\"chosen\":");
    match &report.chosen {
        Some(c) => push_candidate_json(&mut out, c),
        None => out.push_str("null"),
    }
    out.push_str(",\"candidates\":[");
    for (i, c) in report.candidates.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        push_candidate_json(&mut out, c);
    }
    out.push_str("],\"rejections\":{");
    for (i, (reason, count)) in report.rejections.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!("\"{}\":{}", reason.tag(), count));
    }
    out.push_str("},\"surface_area_m2_per_g\":");
    match report.surface_area_m2_per_g {
        Some(v) => out.push_str(&fmt_f64(v)),
        None => out.push_str("null"),
    }
    out.push_str(",\"input_digest\":");
    push_json_string(&mut out, &report.input_digest);
    out.push('}');
    out
}

/// Failure reading a serialized report back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReportParseError {
    /// Not JSON at all; carries the parser's message.
    Json(String),
    /// JSON, but not the report schema; names the violated expectation.
    Schema(&'static str),
}

impl fmt::Display for ReportParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportParseError::Json(msg) => write!(f, "invalid JSON: {msg}"),
            ReportParseError::Schema(what) => write!(f, "unexpected report shape: {what}"),
        }
    }
}

impl std::error::Error for ReportParseError {}

type SchemaResult<T> = Result<T, ReportParseError>;

fn field<'a>(obj: &'a Value, key: &'static str, what: &'static str) -> SchemaResult<&'a Value> {
    obj.get(key).ok_or(ReportParseError::Schema(what))
}

fn number(v: &Value, what: &'static str) -> SchemaResult<f64> {
    v.as_f64().ok_or(ReportParseError::Schema(what))
}

fn index(v: &Value, what: &'static str) -> SchemaResult<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or(ReportParseError::Schema(what))
}

fn candidate_from_json(v: &Value) -> SchemaResult<Candidate> {
    let fit = field(v, "fit", "candidate needs a fit")?;
    let range = field(fit, "range", "fit needs a range")?
        .as_array()
        .ok_or(ReportParseError::Schema("range must be an array"))?;
    if range.len() != 2 {
        return Err(ReportParseError::Schema("range must hold two indices"));
    }
    let window = field(v, "window", "candidate needs a window")?
        .as_array()
        .ok_or(ReportParseError::Schema("window must be an array"))?
        .iter()
        .map(|pair| {
            let pair = pair
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or(ReportParseError::Schema("window entries must be [p, n]"))?;
            Ok(Point::new(
                number(&pair[0], "window pressure must be a number")?,
                number(&pair[1], "window uptake must be a number")?,
            ))
        })
        .collect::<SchemaResult<Vec<Point>>>()?;
    Ok(Candidate {
        fit: BETFit {
            slope: number(field(fit, "slope", "fit needs a slope")?, "slope")?,
            intercept: number(field(fit, "intercept", "fit needs an intercept")?, "intercept")?,
            r_squared: number(field(fit, "r_squared", "fit needs r_squared")?, "r_squared")?,
            nm: number(field(fit, "nm", "fit needs nm")?, "nm")?,
            c: number(field(fit, "c", "fit needs c")?, "c")?,
            range: (
                index(&range[0], "range start must be an index")?,
                index(&range[1], "range end must be an index")?,
            ),
            n_points: index(field(fit, "n_points", "fit needs n_points")?, "n_points")?,
        },
        window,
        p_nm: number(field(v, "p_nm", "candidate needs p_nm")?, "p_nm")?,
        p_read: number(field(v, "p_read", "candidate needs p_read")?, "p_read")?,
        pc_error: number(field(v, "pc_error", "candidate needs pc_error")?, "pc_error")?,
    })
}

/// Reads a report serialized by [`write_report_json`] back into memory.
/// Together the pair round-trips every field exactly.
pub fn parse_report_json(text: &str) -> Result<AnalysisReport, ReportParseError> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| ReportParseError::Json(e.to_string()))?;
    if !root.is_object() {
        return Err(ReportParseError::Schema("top level must be an object"));
    }

    let chosen = match field(&root, "chosen", "report needs a chosen field")? {
        Value::Null => None,
        v => Some(candidate_from_json(v)?),
    };
    let candidates = field(&root, "candidates", "report needs candidates")?
        .as_array()
        .ok_or(ReportParseError::Schema("candidates must be an array"))?
        .iter()
        .map(candidate_from_json)
        .collect::<SchemaResult<Vec<Candidate>>>()?;
    let rejections = field(&root, "rejections", "report needs rejections")?
        .as_object()
        .ok_or(ReportParseError::Schema("rejections must be an object"))?
        .iter()
        .map(|(tag, count)| {
            let reason = RejectionReason::from_tag(tag)
                .ok_or(ReportParseError::Schema("unknown rejection reason"))?;
            Ok((reason, index(count, "rejection counts must be integers")?))
        })
        .collect::<SchemaResult<BTreeMap<RejectionReason, usize>>>()?;
    let surface_area_m2_per_g =
        match field(&root, "surface_area_m2_per_g", "report needs surface_area_m2_per_g")? {
            Value::Null => None,
            v => Some(number(v, "surface area must be a number")?),
        };
    let input_digest = field(&root, "input_digest", "report needs input_digest")?
        .as_str()
        .ok_or(ReportParseError::Schema("input_digest must be a string"))?
        .to_string();

    Ok(AnalysisReport { chosen, candidates, rejections, surface_area_m2_per_g, input_digest })
}

/// Per-point table for plotting the linearized data against the chosen
/// fit: p, y observed, y on the fitted line, and a 0/1 window membership
/// flag. `chosen` must have been derived from `iso`.
pub fn write_bet_plot_csv(iso: &Isotherm, chosen: &Candidate) -> String {
    let mut out = String::from("p,y_linearized,y_fitted,in_window\n");
    let (start, end) = chosen.fit.range;
    for (k, pt) in iso.points().iter().enumerate() {
        let (_, y) = linearize_point(*pt).expect("validated isotherms linearize everywhere");
        let fitted = chosen.fit.slope * pt.p + chosen.fit.intercept;
        let flag = usize::from(k >= start && k <= end);
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(pt.p),
            fmt_f64(y),
            fmt_f64(fitted),
            flag
        ));
    }
    out
}

/// Flat table of every admissible window in report order.
pub fn write_candidates_csv(report: &AnalysisReport) -> String {
    let mut out = String::from(
        "start,end,n_points,slope,intercept,r_squared,nm,c,p_nm,p_read,pc_error\n",
    );
    for c in &report.candidates {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            c.fit.range.0,
            c.fit.range.1,
            c.fit.n_points,
            fmt_f64(c.fit.slope),
            fmt_f64(c.fit.intercept),
            fmt_f64(c.fit.r_squared),
            fmt_f64(c.fit.nm),
            fmt_f64(c.fit.c),
            fmt_f64(c.p_nm),
            fmt_f64(c.p_read),
            fmt_f64(c.pc_error),
        ));
    }
    out
}

/// One line of a fixture comparison. Absent fields mark a side that did
/// not report the name; the deviation needs both sides and a positive
/// reference.
#[derive(Debug, Clone, PartialEq)]
pub struct FixtureRow {
    pub name: String,
    pub reference_area: Option<f64>,
    pub computed_area: Option<f64>,
    pub deviation_pct: Option<f64>,
}

/// Joins reference areas (CSV with columns name, area) against computed
/// areas by name, sorted by name. Names present on only one side yield
/// rows with the other side absent. A later reference row for the same
/// name overrides an earlier one.
pub fn compare_fixture(
    reference_csv: &str,
    computed: &BTreeMap<String, f64>,
) -> Result<Vec<FixtureRow>, ParseError> {
    let mut reference: BTreeMap<String, f64> = BTreeMap::new();
    let mut first_row_seen = false;
    for (idx, raw) in reference_csv.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 2 {
            let column = if fields.len() < 2 { 2 } else { 3 };
            return Err(ParseError::Syntax { line: line_no, column, text: line.to_string() });
        }
        // The name column is free text, so only the area column decides
        // whether the first row is a header.
        if !first_row_seen {
            first_row_seen = true;
            if fields[1].trim().parse::<f64>().is_err() {
                continue;
            }
        }
        let area = parse_cell(fields[1], line_no, 2)?;
        reference.insert(fields[0].trim().to_string(), area);
    }

    let names: BTreeSet<&String> = reference.keys().chain(computed.keys()).collect();
    Ok(names
        .into_iter()
        .map(|name| {
            let reference_area = reference.get(name).copied();
            let computed_area = computed.get(name).copied();
            let deviation_pct = match (reference_area, computed_area) {
                (Some(r), Some(c)) if r > 0.0 => Some(100.0 * (c - r).abs() / r),
                _ => None,
            };
            FixtureRow { name: name.clone(), reference_area, computed_area, deviation_pct }
        })
        .collect())
}

/// Renders fixture rows as CSV, with `missing` marking absent sides.
pub fn write_fixture_csv(rows: &[FixtureRow]) -> String {
    fn cell(v: Option<f64>) -> String {
        v.map_or_else(|| "missing".to_string(), fmt_f64)
    }
    let mut out = String::from("name,reference_area,computed_area,deviation_pct\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.name,
            cell(row.reference_area),
            cell(row.computed_area),
            cell(row.deviation_pct),
        ));
    }
    out
}
