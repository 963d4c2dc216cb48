//! JSON encodings of angles, scalars, diagrams and matrices.
//!
//! - angle: `{"pi":[num,den]}`, `{"float":x}` or
//!   `{"linear":{"coeffs":{"a":1},"const":[num,den]}}`
//! - exact scalar: `{"coeffs":[a,b,c,d],"sqrt2_exp":k}`; float scalar:
//!   `{"re":x,"im":y}`
//! - diagram: `{"calculus","nodes","wires","inputs","outputs"}` where wire
//!   ends are `{"node":id,"port":p}` or `{"boundary":"in"|"out","slot":i}`
//! - matrix: `{"rows","cols","mode":"exact"|"float","entries":[[..],..]}`

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::angle::{Angle, Binding, PiFrac};
use crate::diagram::{Calculus, Diagram, End, NodeKind};
use crate::error::{Error, Result};
use crate::scalar::{ApproxScalar, CycloScalar, Ring};
use crate::semantics::{Dense, Entry, Equality, Matrix};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| perr(format!("missing field `{key}`")))
}

fn as_i64(v: &Value) -> Result<i64> {
    v.as_i64().ok_or_else(|| perr(format!("expected integer, got {v}")))
}

fn as_usize(v: &Value) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| perr(format!("expected non-negative integer, got {v}")))
}

fn frac_to_json(p: &PiFrac) -> Value {
    json!([p.num(), p.den()])
}

fn frac_from_json(v: &Value) -> Result<PiFrac> {
    let a = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| perr("expected [num, den]"))?;
    let den = as_i64(&a[1])?;
    if den <= 0 {
        return Err(perr("angle denominator must be positive"));
    }
    Ok(PiFrac::new(as_i64(&a[0])?, den))
}

pub fn angle_to_json(a: &Angle) -> Value {
    match a {
        Angle::ExactPi(p) => json!({ "pi": frac_to_json(p) }),
        Angle::Float(x) => json!({ "float": x }),
        Angle::Linear { coeffs, constant } => {
            json!({ "linear": { "coeffs": coeffs, "const": frac_to_json(constant) } })
        }
    }
}

/// `"0"`, `"pi"`, `"pi/4"`, `"-3pi/4"`, `"3*pi/2"`.
fn angle_from_str(s: &str) -> Option<Angle> {
    let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect::<String>().replace('π', "pi");
    if t == "0" {
        return Some(Angle::zero());
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d.parse::<i64>().ok().filter(|d| *d > 0)?),
        None => (t.as_str(), 1),
    };
    let k = match num.strip_suffix("pi")? {
        "" | "+" => 1,
        "-" => -1,
        c => c.parse().ok()?,
    };
    Some(Angle::pi_frac(k, den))
}

pub fn angle_from_json(v: &Value) -> Result<Angle> {
    if let Some(s) = v.as_str() {
        return angle_from_str(s).ok_or_else(|| perr(format!("unrecognised angle {v}")));
    }
    if let Some(p) = v.get("pi") {
        return Ok(Angle::ExactPi(frac_from_json(p)?));
    }
    if let Some(x) = v.get("float") {
        let x = x.as_f64().ok_or_else(|| perr("float angle must be a number"))?;
        return Ok(Angle::float(x));
    }
    if let Some(l) = v.get("linear") {
        let coeffs = field(l, "coeffs")?
            .as_object()
            .ok_or_else(|| perr("linear coeffs must be an object"))?
            .iter()
            .map(|(k, c)| Ok((k.clone(), as_i64(c)?)))
            .collect::<Result<Vec<_>>>()?;
        let constant = match l.get("const") {
            Some(c) => frac_from_json(c)?,
            None => PiFrac::zero(),
        };
        return Ok(Angle::linear(coeffs, constant));
    }
    Err(perr(format!("unrecognised angle {v}")))
}

fn bigint_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn bigint_from_json(v: &Value) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    v.as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| perr(format!("expected integer, got {v}")))
}

pub fn scalar_to_json(s: &CycloScalar) -> Value {
    json!({
        "coeffs": s.coeffs().iter().map(bigint_to_json).collect::<Vec<_>>(),
        "sqrt2_exp": s.sqrt2_exp(),
    })
}

pub fn scalar_from_json(v: &Value) -> Result<CycloScalar> {
    let c = field(v, "coeffs")?.as_array().filter(|a| a.len() == 4).ok_or_else(|| perr("coeffs must have 4 entries"))?;
    let k = as_usize(field(v, "sqrt2_exp")?)? as u32;
    Ok(CycloScalar::normalize(
        [bigint_from_json(&c[0])?, bigint_from_json(&c[1])?, bigint_from_json(&c[2])?, bigint_from_json(&c[3])?],
        k,
    ))
}

pub fn complex_to_json(z: &ApproxScalar) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn complex_from_json(v: &Value) -> Result<ApproxScalar> {
    let re = field(v, "re")?.as_f64().ok_or_else(|| perr("re must be a number"))?;
    let im = v.get("im").and_then(|x| x.as_f64()).unwrap_or(0.0);
    Ok(ApproxScalar::new(re, im))
}

pub fn entry_to_json(e: &Entry) -> Value {
    match e {
        Entry::Exact(x) => scalar_to_json(x),
        Entry::Float(z) => complex_to_json(z),
    }
}

pub fn end_to_json(e: &End) -> Value {
    match e {
        End::Port { node, port } => json!({ "node": node, "port": port }),
        End::Input(i) => json!({ "boundary": "in", "slot": i }),
        End::Output(i) => json!({ "boundary": "out", "slot": i }),
    }
}

pub fn end_from_json(v: &Value) -> Result<End> {
    if let Some(n) = v.get("node") {
        return Ok(End::port(as_usize(n)?, as_usize(field(v, "port")?)?));
    }
    let slot = as_usize(field(v, "slot")?)?;
    match field(v, "boundary")?.as_str() {
        Some("in") => Ok(End::Input(slot)),
        Some("out") => Ok(End::Output(slot)),
        _ => Err(perr(format!("bad boundary reference {v}"))),
    }
}

pub fn binding_to_json(b: &Binding) -> Value {
    Value::Object(b.iter().map(|(k, a)| (k.clone(), angle_to_json(a))).collect())
}

/// Parameter values; plain numbers are read as radians.
pub fn binding_from_json(v: &Value) -> Result<Binding> {
    let o = v.as_object().ok_or_else(|| perr("binding must be an object"))?;
    o.iter()
        .map(|(k, a)| {
            let angle = match a.as_f64() {
                Some(x) => Angle::float(x),
                None => angle_from_json(a)?,
            };
            Ok((k.clone(), angle))
        })
        .collect()
}

pub fn node_to_json(id: usize, kind: &NodeKind) -> Value {
    let mut m = Map::new();
    m.insert("id".into(), json!(id));
    m.insert("kind".into(), json!(kind.name()));
    if let Some(a) = kind.angle() {
        m.insert("angle".into(), angle_to_json(a));
        m.insert("arity".into(), json!([kind.io().0, kind.io().1]));
    }
    Value::Object(m)
}

pub fn node_from_json(v: &Value) -> Result<(usize, NodeKind)> {
    let id = as_usize(field(v, "id")?)?;
    let name = field(v, "kind")?.as_str().ok_or_else(|| perr("kind must be a string"))?;
    let kind = match name {
        "z" | "x" => {
            let angle = match v.get("angle") {
                Some(a) => angle_from_json(a)?,
                None => Angle::zero(),
            };
            let ar = field(v, "arity")?.as_array().filter(|a| a.len() == 2).ok_or_else(|| perr("arity must be [n, m]"))?;
            let (n, m) = (as_usize(&ar[0])?, as_usize(&ar[1])?);
            if name == "z" {
                NodeKind::z(angle, n, m)
            } else {
                NodeKind::x(angle, n, m)
            }
        }
        other => NodeKind::from_name(other).ok_or_else(|| perr(format!("unknown node kind `{other}`")))?,
    };
    Ok((id, kind))
}

pub fn diagram_to_json(d: &Diagram) -> Value {
    json!({
        "calculus": d.calculus.to_string(),
        "nodes": d.nodes.iter().map(|(id, k)| node_to_json(*id, k)).collect::<Vec<_>>(),
        "wires": d.wires.iter().map(|(a, b)| json!([end_to_json(a), end_to_json(b)])).collect::<Vec<_>>(),
        "inputs": (0..d.n_inputs).map(|i| end_to_json(&End::Input(i))).collect::<Vec<_>>(),
        "outputs": (0..d.n_outputs).map(|i| end_to_json(&End::Output(i))).collect::<Vec<_>>(),
    })
}

fn calculus_from_json(v: &Value) -> Result<Calculus> {
    match v.as_str() {
        Some("zx") => Ok(Calculus::Zx),
        Some("zw") => Ok(Calculus::Zw),
        _ => Err(perr(format!("unknown calculus {v}"))),
    }
}

/// Parses without validating; callers decide how to treat violations.
pub fn diagram_from_json_unchecked(v: &Value) -> Result<Diagram> {
    let calculus = calculus_from_json(field(v, "calculus")?)?;
    let mut nodes = BTreeMap::new();
    for n in field(v, "nodes")?.as_array().ok_or_else(|| perr("nodes must be a list"))? {
        let (id, k) = node_from_json(n)?;
        if nodes.insert(id, k).is_some() {
            return Err(perr(format!("duplicate node id {id}")));
        }
    }
    let mut wires = Vec::new();
    for w in field(v, "wires")?.as_array().ok_or_else(|| perr("wires must be a list"))? {
        let pair = w.as_array().filter(|a| a.len() == 2).ok_or_else(|| perr("wire must be a pair"))?;
        wires.push((end_from_json(&pair[0])?, end_from_json(&pair[1])?));
    }
    let count = |key: &str| -> Result<usize> {
        match v.get(key) {
            Some(Value::Array(a)) => Ok(a.len()),
            Some(x) => as_usize(x),
            None => Ok(0),
        }
    };
    Ok(Diagram { calculus, nodes, wires, n_inputs: count("inputs")?, n_outputs: count("outputs")? })
}

pub fn diagram_from_json(v: &Value) -> Result<Diagram> {
    let d = diagram_from_json_unchecked(v)?;
    d.check_valid()?;
    Ok(d)
}

pub fn diagram_from_str(s: &str) -> Result<Diagram> {
    diagram_from_json(&serde_json::from_str(s).map_err(|e| perr(e.to_string()))?)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|r| Value::Array((0..m.cols()).map(|c| entry_to_json(&m.get(r, c))).collect()))
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "mode": m.mode().to_string(), "entries": rows })
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix> {
    let rows = as_usize(field(v, "rows")?)?;
    let cols = as_usize(field(v, "cols")?)?;
    if !rows.is_power_of_two() || !cols.is_power_of_two() {
        return Err(perr("matrix dimensions must be powers of two"));
    }
    let entries = field(v, "entries")?.as_array().ok_or_else(|| perr("entries must be a list of rows"))?;
    if entries.len() != rows {
        return Err(perr("row count does not match `rows`"));
    }
    let flat: Vec<&Value> = entries
        .iter()
        .map(|r| r.as_array().filter(|r| r.len() == cols).ok_or_else(|| perr("row length does not match `cols`")))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let exact = match v.get("mode").and_then(|m| m.as_str()) {
        Some("float") => false,
        Some("exact") | None => true,
        Some(other) => return Err(perr(format!("unknown mode `{other}`"))),
    };
    if exact {
        let data = flat
            .iter()
            .map(|e| match e.as_i64() {
                Some(i) => Ok(CycloScalar::from_int(i)),
                None => scalar_from_json(e),
            })
            .collect::<Result<Vec<_>>>()?;
        // an optional common factor 1/√2^k
        let k = match v.get("sqrt2_exp") {
            Some(k) => as_usize(k)? as u32,
            None => 0,
        };
        let scale = CycloScalar::inv_sqrt2_pow(k);
        let data = data.iter().map(|x| Ring::mul(x, &scale)).collect();
        Ok(Matrix::Exact(Dense::new(rows, cols, data)))
    } else {
        let data = flat
            .iter()
            .map(|e| match e.as_f64() {
                Some(x) => Ok(ApproxScalar::new(x, 0.0)),
                None => complex_from_json(e),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::Float(Dense::new(rows, cols, data)))
    }
}

pub fn equality_to_json(e: &Equality) -> Value {
    match e {
        Equality::Equal => json!({ "result": "Equal" }),
        Equality::NotEqual { row, col, left, right } => json!({
            "result": "NotEqual",
            "witness": { "row": row, "col": col, "left": entry_to_json(left), "right": entry_to_json(right) },
        }),
        Equality::EqualUpToGlobalScalar(r) => json!({ "result": "EqualUpToGlobalScalar", "ratio": complex_to_json(r) }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{interpret, Mode};

    #[test]
    fn angle_strings() {
        assert_eq!(angle_from_json(&json!("pi/4")).unwrap(), Angle::quarter(1));
        assert_eq!(angle_from_json(&json!("-3pi/4")).unwrap(), Angle::quarter(-3));
        assert_eq!(angle_from_json(&json!("0")).unwrap(), Angle::zero());
        assert_eq!(angle_from_json(&json!("π")).unwrap(), Angle::pi());
        assert!(angle_from_json(&json!("pie")).is_err());
    }

    #[test]
    fn matrix_with_common_factor() {
        let v = json!({"rows": 2, "cols": 2, "entries": [[1, 1], [1, -1]], "sqrt2_exp": 1});
        assert_eq!(matrix_from_json(&v).unwrap(), Matrix::from_ints(2, 2, &[1, 1, 1, -1], 1));
    }

    #[test]
    fn angle_round_trip() {
        for a in [
            Angle::quarter(3),
            Angle::float(0.25),
            Angle::linear([("a".to_string(), 2), ("b".to_string(), -1)], PiFrac::new(1, 2)),
        ] {
            assert_eq!(angle_from_json(&angle_to_json(&a)).unwrap(), a);
        }
        assert_eq!(angle_to_json(&Angle::pi()), json!({"pi": [1, 1]}));
    }

    #[test]
    fn scalar_round_trip() {
        let s = CycloScalar::from_i64s([3, -1, 0, 2], 3);
        assert_eq!(scalar_from_json(&scalar_to_json(&s)).unwrap(), s);
        let big = CycloScalar::from_bigint(BigInt::from(7).pow(40));
        assert_eq!(scalar_from_json(&scalar_to_json(&big)).unwrap(), big);
    }

    #[test]
    fn diagram_round_trip() {
        let d = Diagram::triangle()
            .tensor(&Diagram::z(Angle::quarter(1), 1, 2))
            .unwrap()
            .compose(&Diagram::cap(Calculus::Zx))
            .unwrap();
        let v = diagram_to_json(&d);
        assert_eq!(diagram_from_json(&v).unwrap(), d);
        assert_eq!(diagram_from_str(&v.to_string()).unwrap(), d);
    }

    #[test]
    fn matrix_round_trip() {
        let m = interpret(&Diagram::hadamard(), Mode::Exact).unwrap();
        assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
        let f = interpret(&Diagram::z(Angle::float(0.5), 1, 1), Mode::Float).unwrap();
        assert_eq!(matrix_from_json(&matrix_to_json(&f)).unwrap(), f);
        let ints = json!({"rows": 2, "cols": 2, "entries": [[1, 1], [0, 1]]});
        assert_eq!(matrix_from_json(&ints).unwrap(), interpret(&Diagram::triangle(), Mode::Exact).unwrap());
    }

    #[test]
    fn bad_input_is_a_parse_error() {
        assert!(matches!(diagram_from_str("{}"), Err(Error::Parse(_))));
        let v = json!({"calculus": "zx", "nodes": [{"id": 0, "kind": "h"}], "wires": [], "inputs": [], "outputs": []});
        assert!(matches!(diagram_from_json(&v), Err(Error::InvalidDiagram(_))));
    }
}
