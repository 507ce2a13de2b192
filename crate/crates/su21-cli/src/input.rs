//! JSON input: matrices as 3 rows of 3 `[re, im]` entries (a bare number is
//! read as a real entry), plus an optional `"form": "ball" | "siegel"`.

use anyhow::{anyhow, bail, Context, Result};
use serde_json::Value;
use su21::discrete::Mat2;
use su21::{Cx, Element, Form, Mat3, Vec3};

pub fn parse(bytes: &[u8]) -> Result<Value> {
    let text = std::str::from_utf8(bytes).context("input is not UTF-8")?;
    serde_json::from_str(text).context("input is not valid JSON")
}

pub fn complex(v: &Value) -> Result<Cx> {
    match v {
        Value::Number(n) => Ok(Cx::new(
            n.as_f64().ok_or_else(|| anyhow!("bad number"))?,
            0.0,
        )),
        Value::Array(a) if a.len() == 2 => {
            let re = a[0]
                .as_f64()
                .ok_or_else(|| anyhow!("real part is not a number"))?;
            let im = a[1]
                .as_f64()
                .ok_or_else(|| anyhow!("imaginary part is not a number"))?;
            Ok(Cx::new(re, im))
        }
        _ => bail!("expected a number or [re, im], got {v}"),
    }
}

fn rows<const N: usize>(v: &Value) -> Result<[[Cx; N]; N]> {
    let a = v
        .as_array()
        .filter(|a| a.len() == N)
        .ok_or_else(|| anyhow!("expected {N} rows"))?;
    let mut out = [[Cx::new(0.0, 0.0); N]; N];
    for (i, row) in a.iter().enumerate() {
        let r = row
            .as_array()
            .filter(|r| r.len() == N)
            .ok_or_else(|| anyhow!("row {i} must have {N} entries"))?;
        for (j, x) in r.iter().enumerate() {
            out[i][j] = complex(x).with_context(|| format!("entry ({i},{j})"))?;
        }
    }
    Ok(out)
}

pub fn vector(v: &Value) -> Result<Vec3> {
    let a = v
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| anyhow!("a point needs 3 coordinates"))?;
    Ok([complex(&a[0])?, complex(&a[1])?, complex(&a[2])?])
}

/// The `"form"` field, falling back to `default`.
pub fn form(doc: &Value, default: Form) -> Result<Form> {
    match doc.get("form") {
        None => Ok(default),
        Some(f) => parse_form(f.as_str().ok_or_else(|| anyhow!("form must be a string"))?),
    }
}

pub fn parse_form(s: &str) -> Result<Form> {
    match s.to_ascii_lowercase().as_str() {
        "ball" => Ok(Form::Ball),
        "siegel" => Ok(Form::Siegel),
        _ => bail!("unknown form {s:?} (expected ball or siegel)"),
    }
}

/// A matrix either as the whole document or under `key`.
pub fn element(doc: &Value, key: Option<&str>, default: Form) -> Result<Element> {
    let f = form(doc, default)?;
    let m = match key {
        Some(k) => doc.get(k).ok_or_else(|| anyhow!("missing field {k:?}"))?,
        None => doc.get("matrix").unwrap_or(doc),
    };
    Ok(Element::new(Mat3::from_rows(rows::<3>(m)?), f))
}

pub fn mat2(doc: &Value, key: &str) -> Result<Mat2> {
    let m = doc
        .get(key)
        .ok_or_else(|| anyhow!("missing field {key:?}"))?;
    Ok(Mat2(rows::<2>(m)?))
}

pub fn complex_list(doc: &Value, keys: &[&str], len: usize) -> Result<Vec<Cx>> {
    let v = keys
        .iter()
        .find_map(|k| doc.get(*k))
        .or(doc.as_array().map(|_| doc))
        .ok_or_else(|| anyhow!("missing field {:?}", keys[0]))?;
    let a = v
        .as_array()
        .filter(|a| a.len() == len)
        .ok_or_else(|| anyhow!("expected {len} values"))?;
    a.iter().map(complex).collect()
}
