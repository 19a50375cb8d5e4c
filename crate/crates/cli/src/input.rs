//! Model files.
//!
//! Matrix JSON: `{"C": [["1","-1"], ...], "M": [[1, 0], ...], "mode": "positive"}`.
//! Entries of `C` are rational strings (`"p/q"`, integers, or decimals; plain
//! JSON numbers are accepted too), entries of `M` are integers. `mode` and
//! `variables` are optional. The form `{"N": ..., "M": ...}` takes a
//! stoichiometric matrix and a kinetic matrix instead of `C`.
//!
//! CSV: one matrix row per record, the first field naming the matrix
//! (`C`, `N` or `M`), for example `N,-1,1,0`.
//!
//! Any other file is read as network text.

use std::path::Path;

use serde_json::{Map, Value};
use toricity_core::crn::{parse_network, steady_state_from_matrices, ReactionNetwork};
use toricity_core::exactalg::{parse_rational, Integer, IntegerMatrix, Rational, RationalMatrix};
use toricity_core::toricity::{GroupMode, VerticalSystem};
use toricity_core::Error;

use crate::CliError;

#[derive(Debug, Clone)]
pub enum Model {
    Matrices { system: VerticalSystem, mode: Option<GroupMode> },
    Network(ReactionNetwork),
}

impl Model {
    pub fn kind(&self) -> &'static str {
        match self {
            Model::Matrices { .. } => "matrices",
            Model::Network(_) => "network",
        }
    }

    pub fn system(&self) -> Result<VerticalSystem, CliError> {
        match self {
            Model::Matrices { system, .. } => Ok(system.clone()),
            Model::Network(net) => net.steady_state_system().map_err(CliError::from),
        }
    }
}

pub fn parse_mode(text: &str) -> Option<GroupMode> {
    match text.trim().to_ascii_lowercase().replace('_', "-").as_str() {
        "positive" => Some(GroupMode::Positive),
        "real-star" => Some(GroupMode::RealStar),
        "complex-star" => Some(GroupMode::ComplexStar),
        _ => None,
    }
}

pub fn load_model(path: &Path) -> Result<Model, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => parse_matrix_json(&text),
        Some("csv") => parse_matrix_csv(&text),
        _ => Ok(Model::Network(parse_network(&text)?)),
    }
}

fn parse_error(message: impl Into<String>) -> CliError {
    CliError::Parse(message.into())
}

fn rational_entry(v: &Value) -> Result<Rational, CliError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => return Err(parse_error(format!("expected a rational entry, found {other}"))),
    };
    parse_rational(&text).ok_or_else(|| parse_error(format!("invalid rational '{text}'")))
}

fn integer_entry(v: &Value) -> Result<Integer, CliError> {
    let parsed = match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string().parse().ok(),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    };
    parsed.ok_or_else(|| parse_error(format!("expected an integer entry, found {v}")))
}

fn rows<'a>(name: &str, v: &'a Value) -> Result<Vec<&'a Vec<Value>>, CliError> {
    let outer = v
        .as_array()
        .ok_or_else(|| parse_error(format!("{name} must be an array of rows")))?;
    outer
        .iter()
        .map(|r| r.as_array().ok_or_else(|| parse_error(format!("every row of {name} must be an array"))))
        .collect()
}

fn width(name: &str, rows: &[Vec<impl Sized>]) -> Result<usize, CliError> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || cols == 0 {
        return Err(CliError::Dimension(format!("{name} is empty")));
    }
    if let Some(i) = rows.iter().position(|r| r.len() != cols) {
        return Err(CliError::Dimension(format!(
            "row {} of {name} has {} entries, expected {cols}",
            i + 1,
            rows[i].len()
        )));
    }
    Ok(cols)
}

fn rational_matrix(name: &str, rows: Vec<Vec<Rational>>) -> Result<RationalMatrix, CliError> {
    let cols = width(name, &rows)?;
    Ok(RationalMatrix::from_rows(cols, rows)?)
}

fn integer_matrix(name: &str, rows: Vec<Vec<Integer>>) -> Result<IntegerMatrix, CliError> {
    let cols = width(name, &rows)?;
    Ok(IntegerMatrix::from_rows(cols, rows)?)
}

fn build(
    c: Option<RationalMatrix>,
    n: Option<IntegerMatrix>,
    m: IntegerMatrix,
    mode: Option<GroupMode>,
    variables: Option<Vec<String>>,
) -> Result<Model, CliError> {
    let system = match (c, n) {
        (Some(c), None) => VerticalSystem::new(c, m)?,
        (None, Some(n)) => steady_state_from_matrices(&n, &m)?,
        (Some(_), Some(_)) => return Err(parse_error("give either C or N, not both")),
        (None, None) => return Err(parse_error("missing coefficient matrix C (or stoichiometric matrix N)")),
    };
    let system = match variables {
        Some(names) => system.with_variable_names(names)?,
        None => system,
    };
    Ok(Model::Matrices { system, mode })
}

pub fn parse_matrix_json(text: &str) -> Result<Model, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| parse_error(format!("invalid JSON: {e}")))?;
    let obj: &Map<String, Value> = value
        .as_object()
        .ok_or_else(|| parse_error("the top level must be an object"))?;
    for key in obj.keys() {
        if !["C", "N", "M", "mode", "variables"].contains(&key.as_str()) {
            return Err(parse_error(format!("unknown field '{key}'")));
        }
    }
    let c = match obj.get("C") {
        Some(v) => Some(rational_matrix(
            "C",
            rows("C", v)?
                .into_iter()
                .map(|r| r.iter().map(rational_entry).collect())
                .collect::<Result<_, _>>()?,
        )?),
        None => None,
    };
    let integer_rows = |name: &str, v: &Value| -> Result<IntegerMatrix, CliError> {
        integer_matrix(
            name,
            rows(name, v)?
                .into_iter()
                .map(|r| r.iter().map(integer_entry).collect())
                .collect::<Result<_, _>>()?,
        )
    };
    let n = obj.get("N").map(|v| integer_rows("N", v)).transpose()?;
    let m = integer_rows("M", obj.get("M").ok_or_else(|| parse_error("missing exponent matrix M"))?)?;
    let mode = match obj.get("mode") {
        None => None,
        Some(Value::String(s)) => Some(parse_mode(s).ok_or_else(|| parse_error(format!("unknown mode '{s}'")))?),
        Some(other) => return Err(parse_error(format!("mode must be a string, found {other}"))),
    };
    let variables = match obj.get("variables") {
        None => None,
        Some(Value::Array(names)) => Some(
            names
                .iter()
                .map(|v| v.as_str().map(str::to_string).ok_or_else(|| parse_error("variable names must be strings")))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        Some(_) => return Err(parse_error("variables must be an array of strings")),
    };
    build(c, n, m, mode, variables)
}

pub fn parse_matrix_csv(text: &str) -> Result<Model, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut c: Vec<Vec<Rational>> = Vec::new();
    let mut n: Vec<Vec<Integer>> = Vec::new();
    let mut m: Vec<Vec<Integer>> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| parse_error(format!("invalid CSV: {e}")))?;
        let line = record.position().map_or(i as u64 + 1, |p| p.line());
        let mut fields = record.iter();
        let label = fields.next().unwrap_or("");
        let entries: Vec<&str> = fields.collect();
        let bad = |f: &str| parse_error(format!("line {line}: invalid entry '{f}'"));
        match label {
            "C" => c.push(
                entries
                    .iter()
                    .map(|f| parse_rational(f).ok_or_else(|| bad(f)))
                    .collect::<Result<_, _>>()?,
            ),
            "N" | "M" => {
                let row = entries
                    .iter()
                    .map(|f| f.parse::<Integer>().map_err(|_| bad(f)))
                    .collect::<Result<_, _>>()?;
                if label == "N" { n.push(row) } else { m.push(row) }
            }
            "" if entries.is_empty() => {}
            other => return Err(parse_error(format!("line {line}: unknown matrix label '{other}'"))),
        }
    }
    let c = (!c.is_empty()).then(|| rational_matrix("C", c)).transpose()?;
    let n = (!n.is_empty()).then(|| integer_matrix("N", n)).transpose()?;
    build(c, n, integer_matrix("M", m)?, None, None)
}

fn integer_value(v: &Integer) -> Value {
    match i64::try_from(v) {
        Ok(x) => Value::from(x),
        Err(_) => Value::String(v.to_string()),
    }
}

pub fn integer_matrix_json(m: &IntegerMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(integer_value).collect()))
            .collect(),
    )
}

pub fn rational_matrix_json(m: &RationalMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

/// Matrix JSON for a system, readable by [`parse_matrix_json`].
pub fn matrix_json(system: &VerticalSystem, mode: GroupMode) -> Value {
    let mut obj = Map::new();
    obj.insert("C".into(), rational_matrix_json(system.c()));
    obj.insert("M".into(), integer_matrix_json(system.exponents()));
    obj.insert("mode".into(), Value::String(mode.name().into()));
    obj.insert(
        "variables".into(),
        Value::Array(system.variables().iter().cloned().map(Value::String).collect()),
    );
    Value::Object(obj)
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => CliError::Parse(e.to_string()),
            Error::DimensionMismatch(_) | Error::Precondition(_) | Error::ZeroDynamics | Error::InvalidChoice(_) => {
                CliError::Dimension(e.to_string())
            }
            other => CliError::Failed(other.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn system(model: Model) -> (VerticalSystem, Option<GroupMode>) {
        match model {
            Model::Matrices { system, mode } => (system, mode),
            Model::Network(_) => panic!("expected matrices"),
        }
    }

    #[test]
    fn reads_rational_strings_and_numbers() {
        let (sys, mode) = system(
            parse_matrix_json(r#"{"C": [["1/2", -1, "0.25"]], "M": [[1, 0, 2], ["3", 1, 0]], "mode": "real-star"}"#)
                .unwrap(),
        );
        assert_eq!(sys.c().get(0, 0).to_string(), "1/2");
        assert_eq!(sys.c().get(0, 2).to_string(), "1/4");
        assert_eq!(sys.exponents().get(1, 0), &Integer::from(3));
        assert_eq!(mode, Some(GroupMode::RealStar));
    }

    #[test]
    fn round_trips_through_matrix_json() {
        let (sys, _) = system(parse_matrix_json(r#"{"C": [["-7/3", "1", "2/5"]], "M": [[1, 0, 2], [0, 1, 1]]}"#).unwrap());
        let text = serde_json::to_string(&matrix_json(&sys, GroupMode::Positive)).unwrap();
        let (again, mode) = system(parse_matrix_json(&text).unwrap());
        assert_eq!(again.c(), sys.c());
        assert_eq!(again.exponents(), sys.exponents());
        assert_eq!(mode, Some(GroupMode::Positive));
    }

    #[test]
    fn stoichiometric_form_derives_c() {
        let (sys, _) = system(parse_matrix_json(r#"{"N": [[-1, 1], [1, -1]], "M": [[1, 0], [0, 1]]}"#).unwrap());
        assert_eq!(sys.s(), 1);
        assert_eq!(sys.m(), 2);
    }

    #[test]
    fn csv_matches_json() {
        let (a, _) = system(parse_matrix_csv("# square\nC,-2,-1,2,1\nM,9,3,0,6\nM,0,4,6,2\n").unwrap());
        let (b, _) = system(parse_matrix_json(r#"{"C": [[-2,-1,2,1]], "M": [[9,3,0,6],[0,4,6,2]]}"#).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn error_classes() {
        assert!(matches!(parse_matrix_json("{\"C\": [[1,"), Err(CliError::Parse(_))));
        assert!(matches!(parse_matrix_json(r#"{"C": [["x"]], "M": [[1]]}"#), Err(CliError::Parse(_))));
        assert!(matches!(parse_matrix_json(r#"{"C": [[1, 2]], "M": [[1, 2, 3]]}"#), Err(CliError::Dimension(_))));
        assert!(matches!(parse_matrix_json(r#"{"C": [[1, 2], [1]], "M": [[1, 2]]}"#), Err(CliError::Dimension(_))));
        assert!(matches!(parse_matrix_json(r#"{"C": [[1]], "M": [[1]], "K": 1}"#), Err(CliError::Parse(_))));
    }
}
