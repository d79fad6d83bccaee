//! JSON formats for real and complex sequences.
//!
//! ```text
//! {"space":"real","d":3,"truncation":2,"coeffs":[0.5,0.5,0.0],"valid_mass":true}
//! {"space":"complex","q":2,"max_degree":4,"entries":[[0,0,0.5],[1,1,0.5]],"valid_mass":true}
//! ```
//!
//! Both accept an optional `"finite_support"` boolean; when absent it is
//! inferred as in the sequence constructors. Floats are written as the
//! shortest decimal that round-trips.

use serde_json::{json, Map, Value};

use crate::complex_coeffs::ComplexSchoenbergSequence;
use crate::error::{Result, SchoenbergError};
use crate::real_coeffs::RealSchoenbergSequence;

#[derive(Debug, Clone, PartialEq)]
pub enum SequenceFile {
    Real(RealSchoenbergSequence),
    Complex(ComplexSchoenbergSequence),
}

fn invalid(field: &str, reason: impl Into<String>) -> SchoenbergError {
    SchoenbergError::InvalidField {
        field: field.into(),
        reason: reason.into(),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    obj.get(name).ok_or_else(|| invalid(name, "missing"))
}

fn uint(obj: &Map<String, Value>, name: &str) -> Result<usize> {
    field(obj, name)?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| invalid(name, "expected a nonnegative integer"))
}

fn boolean(obj: &Map<String, Value>, name: &str) -> Result<Option<bool>> {
    match obj.get(name) {
        None => Ok(None),
        Some(v) => v
            .as_bool()
            .map(Some)
            .ok_or_else(|| invalid(name, "expected a boolean")),
    }
}

fn number(v: &Value, name: &str) -> Result<f64> {
    v.as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| invalid(name, "expected a finite number"))
}

fn check_valid_mass(obj: &Map<String, Value>, actual: bool) -> Result<()> {
    let stated = boolean(obj, "valid_mass")?.ok_or_else(|| invalid("valid_mass", "missing"))?;
    if stated != actual {
        return Err(invalid(
            "valid_mass",
            format!("stated {stated} but the coefficients give {actual}"),
        ));
    }
    Ok(())
}

fn parse_real(obj: &Map<String, Value>) -> Result<RealSchoenbergSequence> {
    let d = uint(obj, "d")?;
    if d == 0 {
        return Err(invalid("d", "sphere dimension must be at least 1"));
    }
    let raw = field(obj, "coeffs")?
        .as_array()
        .ok_or_else(|| invalid("coeffs", "expected an array"))?;
    if raw.is_empty() {
        return Err(invalid("coeffs", "must not be empty"));
    }
    let coeffs = raw
        .iter()
        .enumerate()
        .map(|(i, v)| number(v, &format!("coeffs[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let truncation = uint(obj, "truncation")?;
    if truncation + 1 != coeffs.len() {
        return Err(invalid(
            "truncation",
            format!("{truncation} does not match {} coefficients", coeffs.len()),
        ));
    }
    let mut seq = RealSchoenbergSequence::new(d, coeffs)?;
    check_valid_mass(obj, seq.valid_mass())?;
    if let Some(f) = boolean(obj, "finite_support")? {
        seq = seq.with_finite_support(f);
    }
    Ok(seq)
}

fn parse_complex(obj: &Map<String, Value>) -> Result<ComplexSchoenbergSequence> {
    let q = uint(obj, "q")?;
    if q < 2 {
        return Err(invalid("q", "complex sphere index must be at least 2"));
    }
    let max_degree = uint(obj, "max_degree")?;
    let raw = field(obj, "entries")?
        .as_array()
        .ok_or_else(|| invalid("entries", "expected an array"))?;
    let mut entries = Vec::with_capacity(raw.len());
    let mut seen = std::collections::BTreeSet::new();
    for (i, e) in raw.iter().enumerate() {
        let name = format!("entries[{i}]");
        let triple = e
            .as_array()
            .filter(|t| t.len() == 3)
            .ok_or_else(|| invalid(&name, "expected [m, n, value]"))?;
        let idx = |k: usize| {
            triple[k]
                .as_u64()
                .map(|v| v as usize)
                .ok_or_else(|| invalid(&name, "indices must be nonnegative integers"))
        };
        let (m, n) = (idx(0)?, idx(1)?);
        if m + n > max_degree {
            return Err(invalid(
                &name,
                format!("m + n = {} exceeds max_degree {max_degree}", m + n),
            ));
        }
        if !seen.insert((m, n)) {
            return Err(invalid(&name, format!("duplicate index ({m}, {n})")));
        }
        entries.push(((m, n), number(&triple[2], &name)?));
    }
    let mut seq = ComplexSchoenbergSequence::new(q, max_degree, entries)?;
    check_valid_mass(obj, seq.valid_mass())?;
    if let Some(f) = boolean(obj, "finite_support")? {
        seq = seq.with_finite_support(f);
    }
    Ok(seq)
}

pub fn parse_sequence(text: &str) -> Result<SequenceFile> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| invalid("<document>", e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| invalid("<document>", "expected a JSON object"))?;
    match field(obj, "space")?.as_str() {
        Some("real") => parse_real(obj).map(SequenceFile::Real),
        Some("complex") => parse_complex(obj).map(SequenceFile::Complex),
        _ => Err(invalid("space", "expected \"real\" or \"complex\"")),
    }
}

pub fn parse_real_sequence(text: &str) -> Result<RealSchoenbergSequence> {
    match parse_sequence(text)? {
        SequenceFile::Real(s) => Ok(s),
        SequenceFile::Complex(_) => Err(invalid("space", "expected a real sequence")),
    }
}

pub fn parse_complex_sequence(text: &str) -> Result<ComplexSchoenbergSequence> {
    match parse_sequence(text)? {
        SequenceFile::Complex(s) => Ok(s),
        SequenceFile::Real(_) => Err(invalid("space", "expected a complex sequence")),
    }
}

pub fn real_to_json(seq: &RealSchoenbergSequence) -> Value {
    json!({
        "space": "real",
        "d": seq.dimension(),
        "truncation": seq.truncation(),
        "coeffs": seq.coeffs(),
        "valid_mass": seq.valid_mass(),
        "finite_support": seq.is_finitely_supported(),
    })
}

pub fn complex_to_json(seq: &ComplexSchoenbergSequence) -> Value {
    let entries: Vec<Value> = seq.entries().map(|((m, n), a)| json!([m, n, a])).collect();
    json!({
        "space": "complex",
        "q": seq.q(),
        "max_degree": seq.max_degree(),
        "entries": entries,
        "valid_mass": seq.valid_mass(),
        "finite_support": seq.is_finitely_supported(),
    })
}

pub fn to_json(file: &SequenceFile) -> Value {
    match file {
        SequenceFile::Real(s) => real_to_json(s),
        SequenceFile::Complex(s) => complex_to_json(s),
    }
}

pub fn to_pretty_string(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values always serialize")
}
