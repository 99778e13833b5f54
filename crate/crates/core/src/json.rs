//! JSON exchange formats.
//!
//! * matrix: `{"rows": r, "cols": c, "data": [[re, im], …]}`, row-major;
//! * sequence: `{"depth": N, "samples": [[re, im], …], "limit": [re, im] | null,
//!   "tail_window": W}` (`tail_window` optional);
//! * bimodule element: a matrix (arity one) or `{"parts": [matrix, …]}`;
//! * segment program: `{"steps": [{"left": "in:0", "right": "step:1",
//!   "t1": matrix, "t2": matrix}, …], "output": "step:k"}`.
//!
//! Numbers are written with 17 significant digits in exponent form so that
//! `f64` values round-trip and output is byte-stable.

use std::str::FromStr;

use serde_json::{json, Map, Number, Value};

use crate::commutative::SequenceFunction;
use crate::convex::{BimoduleElement, OperandRef, SegmentProgram, SegmentStep};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{cx, Cx, Real};

fn bad(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

/// Fixed 17-significant-digit number; non-finite values become `null`.
pub fn number(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let x = if x == 0.0 { 0.0 } else { x };
    Value::Number(Number::from_str(&format!("{x:.16e}")).expect("formatted float is valid JSON"))
}

pub fn real_to_json<T: Real>(x: T) -> Value {
    number(x.as_f64())
}

pub fn complex_to_json<T: Real>(z: Cx<T>) -> Value {
    Value::Array(vec![real_to_json(z.re), real_to_json(z.im)])
}

fn as_f64(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| bad(format!("{what}: expected a number, got {v}")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(format!("{what}: expected a nonnegative integer, got {v}")))
}

/// Accepts `[re, im]` or a bare real number.
pub fn complex_from_json<T: Real>(v: &Value) -> Result<Cx<T>> {
    let (re, im) = match v {
        Value::Array(p) if p.len() == 2 => (as_f64(&p[0], "real part")?, as_f64(&p[1], "imaginary part")?),
        Value::Number(_) => (as_f64(v, "entry")?, 0.0),
        _ => return Err(bad(format!("expected [re, im], got {v}"))),
    };
    if !re.is_finite() || !im.is_finite() {
        return Err(bad("non-finite complex entry"));
    }
    Ok(cx(T::lit(re), T::lit(im)))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| bad(format!("{what}: missing field {key:?}")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(format!("{what}: expected an object")))
}

pub fn matrix_to_json<T: Real>(m: &Matrix<T>) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "data": m.as_slice().iter().map(|&z| complex_to_json(z)).collect::<Vec<_>>(),
    })
}

pub fn matrix_from_json<T: Real>(v: &Value) -> Result<Matrix<T>> {
    let obj = object(v, "matrix")?;
    let rows = as_usize(field(obj, "rows", "matrix")?, "rows")?;
    let cols = as_usize(field(obj, "cols", "matrix")?, "cols")?;
    let data = field(obj, "data", "matrix")?.as_array().ok_or_else(|| bad("matrix data must be an array"))?;
    if data.len() != rows * cols {
        return Err(bad(format!("matrix data has {} entries, expected {rows}x{cols}", data.len())));
    }
    let entries = data.iter().map(complex_from_json).collect::<Result<Vec<_>>>()?;
    Matrix::new(rows, cols, entries)
}

pub fn sequence_to_json<T: Real>(f: &SequenceFunction<T>) -> Value {
    json!({
        "depth": f.depth(),
        "samples": f.samples().iter().map(|&z| complex_to_json(z)).collect::<Vec<_>>(),
        "limit": f.limit().map_or(Value::Null, complex_to_json),
        "tail_window": f.tail_window(),
    })
}

pub fn sequence_from_json<T: Real>(v: &Value) -> Result<SequenceFunction<T>> {
    let obj = object(v, "sequence")?;
    let samples = field(obj, "samples", "sequence")?
        .as_array()
        .ok_or_else(|| bad("sequence samples must be an array"))?
        .iter()
        .map(complex_from_json)
        .collect::<Result<Vec<_>>>()?;
    if let Some(d) = obj.get("depth") {
        let d = as_usize(d, "depth")?;
        if d != samples.len() {
            return Err(bad(format!("depth {d} but {} samples", samples.len())));
        }
    }
    let limit = match obj.get("limit") {
        None | Some(Value::Null) => None,
        Some(l) => Some(complex_from_json(l)?),
    };
    let f = SequenceFunction::new(samples, limit)?;
    match obj.get("tail_window") {
        None | Some(Value::Null) => Ok(f),
        Some(w) => f.with_tail_window(as_usize(w, "tail_window")?),
    }
}

pub fn element_to_json<T: Real>(e: &BimoduleElement<T>) -> Value {
    json!({ "parts": e.parts().iter().map(matrix_to_json).collect::<Vec<_>>() })
}

pub fn element_from_json<T: Real>(v: &Value) -> Result<BimoduleElement<T>> {
    let obj = object(v, "bimodule element")?;
    match obj.get("parts") {
        Some(parts) => {
            let parts = parts.as_array().ok_or_else(|| bad("parts must be an array"))?;
            BimoduleElement::new(parts.iter().map(matrix_from_json).collect::<Result<Vec<_>>>()?)
        }
        None => BimoduleElement::single(matrix_from_json(v)?),
    }
}

pub fn program_to_json<T: Real>(p: &SegmentProgram<T>) -> Value {
    let steps: Vec<Value> = p
        .steps
        .iter()
        .map(|s| {
            json!({
                "left": s.left.to_string(),
                "right": s.right.to_string(),
                "t1": matrix_to_json(&s.t1),
                "t2": matrix_to_json(&s.t2),
            })
        })
        .collect();
    json!({ "steps": steps, "output": p.output.to_string() })
}

fn operand(v: &Value) -> Result<OperandRef> {
    v.as_str().ok_or_else(|| bad("operand reference must be a string"))?.parse()
}

pub fn program_from_json<T: Real>(v: &Value) -> Result<SegmentProgram<T>> {
    let obj = object(v, "program")?;
    let steps = field(obj, "steps", "program")?
        .as_array()
        .ok_or_else(|| bad("program steps must be an array"))?
        .iter()
        .map(|s| {
            let o = object(s, "step")?;
            Ok(SegmentStep {
                left: operand(field(o, "left", "step")?)?,
                right: operand(field(o, "right", "step")?)?,
                t1: matrix_from_json(field(o, "t1", "step")?)?,
                t2: matrix_from_json(field(o, "t2", "step")?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let output = operand(field(obj, "output", "program")?)?;
    Ok(SegmentProgram { steps, output })
}

/// Parses a document whose top level is an object of named entries.
pub fn parse_document(text: &str) -> Result<Map<String, Value>> {
    match serde_json::from_str::<Value>(text).map_err(|e| bad(e.to_string()))? {
        Value::Object(m) => Ok(m),
        _ => Err(bad("top level must be an object of named entries")),
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
