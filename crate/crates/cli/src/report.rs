//! Machine-readable reports: JSON with deterministic key order, exact
//! integers as decimal strings and rational functions as num/den pairs of
//! canonical polynomial strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Map, Value};

use pcurv_core::arith::{Field, Fp, Poly, RatFun, Rationals};
use pcurv_core::ore::DiffOp;
use pcurv_core::pcurvature::{PCurvatureReport, PcurvStatus, Witness};
use pcurv_core::series::TruncatedSeries;

/// One report per invocation; serde_json maps keep keys sorted, so the
/// serialized form is byte-identical across runs for a fixed input.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input: Value,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
}

impl Report {
    pub fn ok(command: &str, input: Value, result: Value) -> Report {
        Report {
            command: command.into(),
            input,
            status: "ok".into(),
            error: None,
            result: Some(result),
        }
    }

    pub fn error(command: &str, input: Value, kind: &str, message: String) -> Report {
        Report {
            command: command.into(),
            input,
            status: kind.into(),
            error: Some(message),
            result: None,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

pub fn bigint_value(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

pub fn rational_value(q: &BigRational) -> Value {
    if q.is_integer() {
        Value::String(q.numer().to_string())
    } else {
        Value::String(format!("{}/{}", q.numer(), q.denom()))
    }
}

pub fn poly_value<F: Field>(p: &Poly<F>) -> Value {
    Value::String(p.to_string())
}

pub fn ratfun_value<F: Field>(f: &RatFun<F>) -> Value {
    let mut m = Map::new();
    m.insert("num".into(), Value::String(f.num().to_string()));
    m.insert("den".into(), Value::String(f.den().to_string()));
    Value::Object(m)
}

pub fn operator_value<F: Field>(l: &DiffOp<F>) -> Value {
    Value::String(l.to_string())
}

pub fn series_value(s: &TruncatedSeries<Rationals>) -> Value {
    Value::Array(s.coeffs().iter().map(rational_value).collect())
}

pub fn series_fp_value(s: &TruncatedSeries<Fp>) -> Value {
    Value::Array(s.coeffs().iter().map(|c| json!(c)).collect())
}

pub fn status_value(s: PcurvStatus) -> Value {
    Value::String(s.as_str().into())
}

pub fn matrix_value(m: &pcurv_core::matrix::Mat<RatFun<Fp>>) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(ratfun_value).collect()))
            .collect(),
    )
}

pub fn charpoly_value(cp: &[RatFun<Fp>]) -> Value {
    Value::Array(cp.iter().map(ratfun_value).collect())
}

pub fn cartier_value(rep: &PCurvatureReport) -> Value {
    let mut m = Map::new();
    m.insert("prime".into(), json!(rep.prime));
    m.insert("status".into(), status_value(rep.status));
    if let Some(cp) = &rep.charpoly {
        m.insert("charpoly".into(), charpoly_value(cp));
    }
    match &rep.witness {
        Some(Witness::PolynomialBasis(basis)) => {
            m.insert(
                "witness_basis".into(),
                Value::Array(basis.iter().map(poly_value).collect()),
            );
        }
        Some(Witness::NonzeroRemainder(rem)) => {
            m.insert("witness_remainder".into(), operator_value(rem));
        }
        None => {}
    }
    Value::Object(m)
}
