//! Number and JSON rendering. Floats always carry 17 significant digits
//! (trailing zeros dropped), which round-trips every `f64`.

use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

/// `x` with 17 significant digits, positional for moderate exponents.
pub fn fmt17(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.16e}", x);
    let (mant, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(char::is_ascii_digit).collect();
    let digits = digits.trim_end_matches('0');
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if (-6..17).contains(&exp) {
        if exp < 0 {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
            out.push_str(digits);
        } else {
            let int_len = exp as usize + 1;
            if digits.len() <= int_len {
                out.push_str(digits);
                out.extend(std::iter::repeat_n('0', int_len - digits.len()));
            } else {
                out.push_str(&digits[..int_len]);
                out.push('.');
                out.push_str(&digits[int_len..]);
            }
        }
    } else {
        out.push_str(&digits[..1]);
        if digits.len() > 1 {
            out.push('.');
            out.push_str(&digits[1..]);
        }
        let _ = write!(out, "e{exp}");
    }
    out
}

/// Compact JSON with [`fmt17`] numbers. Non-finite floats become `null`.
pub fn to_json<T: Serialize>(v: &T) -> serde_json::Result<String> {
    let v = serde_json::to_value(v)?;
    let mut s = String::new();
    write_value(&v, &mut s);
    Ok(s)
}

fn write_value(v: &Value, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => match (n.as_i64(), n.as_u64(), n.as_f64()) {
            (Some(i), _, _) => {
                let _ = write!(out, "{i}");
            }
            (_, Some(u), _) => {
                let _ = write!(out, "{u}");
            }
            (_, _, Some(f)) if f.is_finite() => out.push_str(&fmt17(f)),
            _ => out.push_str("null"),
        },
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(a) => {
            out.push('[');
            for (k, x) in a.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                write_value(x, out);
            }
            out.push(']');
        }
        Value::Object(m) => {
            out.push('{');
            for (k, (key, x)) in m.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(key.clone()).to_string());
                out.push(':');
                write_value(x, out);
            }
            out.push('}');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt17(2.0), "2");
        assert_eq!(fmt17(-0.0), "0");
        assert_eq!(fmt17(2.0 * 2f64.ln()), "1.3862943611198906");
        assert_eq!(fmt17(0.1), "0.10000000000000001");
        assert_eq!(fmt17(-1.5e-9), "-1.5e-9");
        assert_eq!(fmt17(1e20), "1e20");
        assert_eq!(fmt17(123456.0), "123456");
        for x in [std::f64::consts::PI, -1e-300, 6.02e23, 0.000123, 1.0 / 3.0] {
            assert_eq!(fmt17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn json_keeps_key_order_and_numbers() {
        let v = serde_json::json!({"b": [2.0, -0.5], "a": 3, "s": "x\"y"});
        let s = to_json(&v).unwrap();
        assert_eq!(s, r#"{"b":[2,-0.5],"a":3,"s":"x\"y"}"#);
    }
}
