//! One problem per line: six or eighteen whitespace-separated decimals, or
//! a JSON object `{"b":[re,im],"c":[re,im],"d":[re,im]}` /
//! `{"m":[[[re,im],..],..]}`. Blank lines and `#` comments are skipped.

use serde::{Deserialize, Serialize, Serializer};
use uniform_cubic::{Complex, CubicPoly, Matrix3};

use crate::error::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Input {
    Cubic(CubicPoly),
    Matrix(Matrix3),
}

impl Input {
    /// The cubic whose roots are wanted: itself, or the characteristic polynomial.
    pub fn polynomial(&self) -> CubicPoly {
        match self {
            Input::Cubic(p) => *p,
            Input::Matrix(m) => uniform_cubic::char_poly(m),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum Wire {
    Cubic { b: [f64; 2], c: [f64; 2], d: [f64; 2] },
    Matrix { m: [[[f64; 2]; 3]; 3] },
}

fn z(v: [f64; 2]) -> Complex {
    Complex::new(v[0], v[1])
}

fn pair(z: Complex) -> [f64; 2] {
    [z.re, z.im]
}

impl From<Wire> for Input {
    fn from(w: Wire) -> Self {
        match w {
            Wire::Cubic { b, c, d } => Input::Cubic(CubicPoly::new(z(b), z(c), z(d))),
            Wire::Matrix { m } => Input::Matrix(Matrix3::from_rows(m.map(|row| row.map(z)))),
        }
    }
}

impl Serialize for Input {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let wire = match self {
            Input::Cubic(p) => Wire::Cubic { b: pair(p.b), c: pair(p.c), d: pair(p.d) },
            Input::Matrix(m) => Wire::Matrix { m: m.rows.map(|row| row.map(pair)) },
        };
        wire.serialize(s)
    }
}

fn finite(values: &[f64]) -> Result<(), String> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err("non-finite value".into())
    }
}

/// Parses one line. `Ok(None)` for blank and comment lines.
pub fn parse_line(line: &str) -> Result<Option<Input>, String> {
    let line = line.trim();
    if line.is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    if line.starts_with('{') {
        let wire: Wire = serde_json::from_str(line).map_err(|e| format!("bad JSON: {e}"))?;
        let input = Input::from(wire);
        let ok = match &input {
            Input::Cubic(p) => p.is_finite(),
            Input::Matrix(m) => m.is_finite(),
        };
        return if ok { Ok(Some(input)) } else { Err("non-finite value".into()) };
    }
    let values = line
        .split_whitespace()
        .map(|t| t.parse::<f64>().map_err(|_| format!("not a number: {t:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    finite(&values)?;
    let c = |k: usize| Complex::new(values[2 * k], values[2 * k + 1]);
    match values.len() {
        6 => Ok(Some(Input::Cubic(CubicPoly::new(c(0), c(1), c(2))))),
        18 => Ok(Some(Input::Matrix(Matrix3::from_rows([[c(0), c(1), c(2)], [c(3), c(4), c(5)], [c(6), c(7), c(8)]])))),
        n => Err(format!("expected 6 or 18 numbers, found {n}")),
    }
}

/// Parses a whole stream, keeping 1-based line numbers. Stops at the first bad line.
pub fn parse_input(text: &str) -> Result<Vec<(usize, Input)>, HarnessError> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        match parse_line(line) {
            Ok(Some(input)) => out.push((k + 1, input)),
            Ok(None) => {}
            Err(message) => return Err(HarnessError::Parse { line: k + 1, message }),
        }
    }
    Ok(out)
}
