//! JSON encodings of the exact data types.
//!
//! Scalars are strings such as `"3/2-i"` (integers may also be JSON
//! numbers). Polynomials are ascending coefficient lists or strings such as
//! `"z^2 - 3z + 2"`. Matrices are lists of rows.

use serde_json::{json, Value};

use crate::correspondence::{ChargeVector, MatrixPair, RationalMapData};
use crate::error::Error;
use crate::exact_algebra::parse::parse_poly;
use crate::exact_algebra::{GaussScalar, Mat, Poly};
use crate::normal_forms::NormalFormData;

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, Error> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

pub fn parse_json(s: &str) -> Result<Value, Error> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

pub fn scalar_from_json(v: &Value) -> Result<GaussScalar, Error> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => n
            .as_i64()
            .map(GaussScalar::from_i64)
            .ok_or_else(|| Error::Parse(format!("number {n} is not an integer; use a string like \"1/3\""))),
        _ => Err(Error::Parse(format!("expected a scalar, got {v}"))),
    }
}

pub fn vector_from_json(v: &Value) -> Result<Vec<GaussScalar>, Error> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array of scalars, got {v}")))?
        .iter()
        .map(scalar_from_json)
        .collect()
}

pub fn matrix_from_json(v: &Value) -> Result<Mat, Error> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected a list of rows, got {v}")))?
        .iter()
        .map(vector_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    Mat::from_rows(rows).map_err(|e| Error::Parse(e.to_string()))
}

pub fn poly_from_json(v: &Value) -> Result<Poly, Error> {
    match v {
        Value::String(s) => parse_poly(s),
        Value::Array(_) => Ok(Poly::from_coeffs(vector_from_json(v)?)),
        _ => Err(Error::Parse(format!("expected a polynomial, got {v}"))),
    }
}

pub fn scalar_to_json(s: &GaussScalar) -> Value {
    Value::String(s.to_string())
}

pub fn vector_to_json(v: &[GaussScalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn matrix_to_json(m: &Mat) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector_to_json(r)).collect())
}

/// Ascending coefficients; the zero polynomial is `["0"]`.
pub fn poly_to_json(p: &Poly) -> Value {
    if p.is_zero() {
        json!(["0"])
    } else {
        vector_to_json(p.coeffs())
    }
}

pub fn charge_from_json(v: &Value) -> Result<ChargeVector, Error> {
    let k = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected a charge vector, got {v}")))?
        .iter()
        .map(|x| x.as_u64().map(|u| u as usize).ok_or_else(|| Error::Parse(format!("bad charge entry {x}"))))
        .collect::<Result<Vec<_>, _>>()?;
    ChargeVector::new(k)
}

/// `{"n", "m", "Q", "P"}`; `n` and `m` are optional but checked if present.
pub fn rational_map_from_json(v: &Value) -> Result<RationalMapData, Error> {
    let q = poly_from_json(field(v, "Q")?)?;
    let p = field(v, "P")?
        .as_array()
        .ok_or_else(|| Error::Parse("P must be a list of polynomials".into()))?
        .iter()
        .map(poly_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    let f = RationalMapData::new(q, p)?;
    if let Some(n) = v.get("n") {
        if n.as_u64() != Some(f.n() as u64) {
            return Err(Error::Domain(format!("n = {n} but P has {} entries", f.n())));
        }
    }
    if let Some(m) = v.get("m") {
        if m.as_u64() != Some(f.m() as u64) {
            return Err(Error::Domain(format!("m = {m} but deg Q = {}", f.m())));
        }
    }
    Ok(f)
}

pub fn rational_map_to_json(f: &RationalMapData) -> Value {
    json!({
        "n": f.n(),
        "m": f.m(),
        "Q": poly_to_json(f.q()),
        "P": f.p().iter().map(poly_to_json).collect::<Vec<_>>(),
    })
}

/// `{"B", "w1", "w"}` with `w` the list of the vectors `w₂, …, w_{n+1}`.
pub fn pair_from_json(v: &Value) -> Result<MatrixPair, Error> {
    let b = matrix_from_json(field(v, "B")?)?;
    let w1 = vector_from_json(field(v, "w1")?)?;
    let w = field(v, "w")?
        .as_array()
        .ok_or_else(|| Error::Parse("w must be a list of vectors".into()))?
        .iter()
        .map(vector_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    MatrixPair::new(b, w1, w)
}

pub fn pair_to_json(p: &MatrixPair) -> Value {
    json!({
        "B": matrix_to_json(p.b()),
        "w1": vector_to_json(p.w1()),
        "w": p.w().iter().map(|w| vector_to_json(w)).collect::<Vec<_>>(),
    })
}

/// `{"k", "q", "C"}`; `q` defaults to zeros.
pub fn normal_form_from_json(v: &Value) -> Result<NormalFormData, Error> {
    let k = charge_from_json(field(v, "k")?)?;
    let c = matrix_from_json(field(v, "C")?)?;
    let q = match v.get("q") {
        Some(q) => vector_from_json(q)?,
        None => vec![GaussScalar::zero(); k.m()],
    };
    NormalFormData::new(k, q, c)
}

pub fn normal_form_to_json(nf: &NormalFormData) -> Value {
    json!({
        "k": nf.k().as_slice(),
        "q": vector_to_json(nf.q()),
        "C": matrix_to_json(nf.c()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_round_trip() {
        let v = parse_json(r#"{"n":1,"m":2,"Q":["0","0","1"],"P":[["1"]]}"#).unwrap();
        let f = rational_map_from_json(&v).unwrap();
        assert_eq!(rational_map_to_json(&f), v);
        let s = parse_json(r#"{"Q":"z^2 - z","P":["z - 1","z"]}"#).unwrap();
        let f = rational_map_from_json(&s).unwrap();
        assert_eq!(f.m(), 2);
        assert!(matches!(
            rational_map_from_json(&parse_json(r#"{"Q":"z^2","P":["z^3"]}"#).unwrap()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(rational_map_from_json(&json!({"Q": 3})), Err(Error::Parse(_))));
    }

    #[test]
    fn pair_round_trip() {
        let v = json!({"B": [["0"]], "w1": ["1"], "w": [["1"]]});
        let p = pair_from_json(&v).unwrap();
        assert_eq!(pair_to_json(&p), v);
        assert!(pair_from_json(&json!({"B": [[0, 1]], "w1": [1], "w": [[1]]})).is_err());
    }

    #[test]
    fn normal_form_input() {
        let v = json!({"k": [2], "C": [[3], [5]]});
        let nf = normal_form_from_json(&v).unwrap();
        assert_eq!(nf.block_b(), Mat::from_i64_rows(&[&[0, 3], &[1, 5]]));
        assert!(normal_form_from_json(&json!({"k": [1, 2], "C": [[0], [0], [0]]})).is_err());
    }
}
