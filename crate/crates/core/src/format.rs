//! JSON file formats.
//!
//! Polynomial: `{"p": 2, "s": 1, "r": 2, "n": 3, "coeffs": [...]}` with
//! `M_r(n)` coefficients in deglex rank order. With s = 1 each coefficient
//! is a residue; otherwise it is an array of `s` residues, constant
//! coordinate first.
//!
//! Point: `{"m": 2, "coords": [[c0, c1], ...]}`, one length-m residue array
//! per variable.
//!
//! Parse errors are [`Error::Format`] naming the offending field, e.g.
//! `coeffs[4][1]`.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::gf::{ExtElement, ExtField, PrimeModulus};
use crate::mpoly::{m_r, DensePoly};

fn format_err(field: impl Into<String>, reason: impl ToString) -> Error {
    Error::Format {
        field: field.into(),
        reason: reason.to_string(),
    }
}

fn parse_object(text: &str) -> Result<Map<String, Value>> {
    match serde_json::from_str::<Value>(text) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(format_err("$", "expected a JSON object")),
        Err(e) => Err(format_err("$", e)),
    }
}

fn field<'a>(map: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    map.get(name).ok_or_else(|| format_err(name, "missing"))
}

fn uint(value: &Value, name: &str) -> Result<u64> {
    value
        .as_u64()
        .ok_or_else(|| format_err(name, "expected a nonnegative integer"))
}

fn usize_field(map: &Map<String, Value>, name: &str) -> Result<usize> {
    let v = uint(field(map, name)?, name)?;
    usize::try_from(v).map_err(|_| format_err(name, "too large"))
}

fn residue(value: &Value, name: &str, p: PrimeModulus) -> Result<u32> {
    let v = uint(value, name)?;
    if v >= u64::from(p.get()) {
        return Err(format_err(name, format!("residue {v} is not below p = {p}")));
    }
    Ok(v as u32)
}

fn residue_array(value: &Value, name: &str, len: usize, p: PrimeModulus) -> Result<Vec<u32>> {
    let items = value
        .as_array()
        .ok_or_else(|| format_err(name, format!("expected an array of {len} residues")))?;
    if items.len() != len {
        return Err(format_err(
            name,
            format!("expected {len} residues, got {}", items.len()),
        ));
    }
    items
        .iter()
        .enumerate()
        .map(|(k, v)| residue(v, &format!("{name}[{k}]"), p))
        .collect()
}

pub fn parse_poly(text: &str) -> Result<DensePoly> {
    let map = parse_object(text)?;
    let p = PrimeModulus::new(uint(field(&map, "p")?, "p")?).map_err(|e| format_err("p", e))?;
    let s = usize_field(&map, "s")?;
    if s == 0 {
        return Err(format_err("s", "must be at least 1"));
    }
    let r = usize_field(&map, "r")?;
    if r == 0 {
        return Err(format_err("r", "must be at least 1"));
    }
    let n = usize_field(&map, "n")?;
    let expected = m_r(n, r).map_err(|e| format_err("n", e))? as usize;
    let items = field(&map, "coeffs")?
        .as_array()
        .ok_or_else(|| format_err("coeffs", "expected an array"))?;
    if items.len() != expected {
        return Err(format_err(
            "coeffs",
            format!("expected M_r(n) = {expected} coefficients, got {}", items.len()),
        ));
    }
    let mut coeffs = Vec::with_capacity(expected * s);
    for (k, item) in items.iter().enumerate() {
        let name = format!("coeffs[{k}]");
        if s == 1 {
            coeffs.push(residue(item, &name, p)?);
        } else {
            coeffs.extend(residue_array(item, &name, s, p)?);
        }
    }
    DensePoly::from_coeffs(p, s, r, n, coeffs).map_err(|e| format_err("coeffs", e))
}

/// Parses a point for a field of characteristic `p`; the extension degree
/// comes from the file.
pub fn parse_point(text: &str, p: PrimeModulus) -> Result<(ExtField, Vec<ExtElement>)> {
    let map = parse_object(text)?;
    let m = usize_field(&map, "m")?;
    let field_ = ExtField::new(p, m).map_err(|e| format_err("m", e))?;
    let items = field(&map, "coords")?
        .as_array()
        .ok_or_else(|| format_err("coords", "expected an array"))?;
    let point = items
        .iter()
        .enumerate()
        .map(|(j, item)| {
            let name = format!("coords[{j}]");
            let digits = residue_array(item, &name, m, p)?;
            field_.element(&digits).map_err(|e| format_err(name, e))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((field_, point))
}

pub fn poly_to_json(poly: &DensePoly) -> Value {
    let s = poly.coeff_degree();
    let coeffs: Vec<Value> = (0..poly.num_monomials())
        .map(|k| match s {
            1 => json!(poly.coeff(k)[0]),
            _ => json!(poly.coeff(k)),
        })
        .collect();
    json!({
        "p": poly.characteristic().get(),
        "s": s,
        "r": poly.num_vars(),
        "n": poly.degree_bound(),
        "coeffs": coeffs,
    })
}

pub fn point_to_json(field: &ExtField, point: &[ExtElement]) -> Value {
    let coords: Vec<Vec<u32>> = point.iter().map(|&a| field.coeffs(a)).collect();
    json!({ "m": field.degree(), "coords": coords })
}
