//! Small helpers for reading the JSON input schemas with path-aware errors.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{Domain, Scalar, ScalarDomain};

pub(crate) fn perr(path: &str, message: &str) -> Error {
    Error::Parse {
        path: path.to_string(),
        message: message.to_string(),
    }
}

pub(crate) fn field<'a>(v: &'a Value, path: &str, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| perr(&format!("{path}.{key}"), "missing field"))
}

pub(crate) fn field_str<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| perr(path, "expected a string"))
}

pub(crate) fn field_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(path, "expected an array"))
}

pub(crate) fn field_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| perr(path, "expected a non-negative integer"))
}

/// `"Q"` or `{"Fp": p}`.
pub(crate) fn parse_domain(v: &Value, path: &str) -> Result<Domain> {
    match v {
        Value::String(s) if s == "Q" => Ok(ScalarDomain::rational()),
        Value::Object(o) => {
            let p = o
                .get("Fp")
                .and_then(Value::as_u64)
                .ok_or_else(|| perr(path, "expected \"Q\" or {\"Fp\": p}"))?;
            ScalarDomain::prime_field(p).map_err(|e| perr(path, &e.to_string()))
        }
        _ => Err(perr(path, "expected \"Q\" or {\"Fp\": p}")),
    }
}

pub(crate) fn domain_to_json(d: &Domain) -> Value {
    match **d {
        ScalarDomain::PrimeField(p) => json!({ "Fp": p }),
        _ => json!("Q"),
    }
}

/// Scalar given as a string or a bare integer.
pub(crate) fn parse_scalar(domain: &Domain, v: &Value, path: &str) -> Result<Scalar> {
    match v {
        Value::String(s) => Scalar::parse(domain, s).map_err(|e| perr(path, &e.to_string())),
        Value::Number(n) => n
            .as_i64()
            .map(|n| Scalar::from_int(domain, n))
            .ok_or_else(|| perr(path, "expected an integer or a scalar string")),
        _ => Err(perr(path, "expected a scalar string")),
    }
}
