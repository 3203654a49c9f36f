//! JSON writer that prints every float with 17 significant digits, so a
//! value read back is bit-identical to the one written.

use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

use crate::error::HarnessError;

fn float(out: &mut String, x: f64) {
    if x == 0.0 {
        out.push_str(if x.is_sign_negative() { "-0.0" } else { "0.0" });
    } else {
        let _ = write!(out, "{x:.16e}");
    }
}

fn write_value(out: &mut String, v: &Value) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => {
                let _ = write!(out, "{u}");
            }
            (None, Some(i)) => {
                let _ = write!(out, "{i}");
            }
            _ => float(out, n.as_f64().unwrap_or(f64::NAN)),
        },
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                write_value(out, item);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (k, (key, item)) in map.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(key.clone()).to_string());
                out.push(':');
                write_value(out, item);
            }
            out.push('}');
        }
    }
}

/// One compact JSON line.
pub fn to_line<T: Serialize>(value: &T) -> Result<String, HarnessError> {
    let v = serde_json::to_value(value)?;
    let mut out = String::new();
    write_value(&mut out, &v);
    Ok(out)
}
