//! JSON encodings for exact values.

use qde_core::field::fmt_rat;
use qde_core::linalg::Mat;
use qde_core::params::{ParamSpec, QFunc};
use qde_core::series::ZSeries;
use qde_core::vertex::ZMat;
use qde_core::Rat;
use serde_json::{json, Value};

pub const SCHEMA: &str = "qde-lab/1";

/// Values that have a canonical JSON form.
pub trait ToJson {
    fn to_json(&self) -> Value;
}

impl ToJson for Rat {
    fn to_json(&self) -> Value {
        Value::String(fmt_rat(self))
    }
}

impl ToJson for QFunc {
    fn to_json(&self) -> Value {
        let enc = |c: &[Rat]| c.iter().map(|x| x.to_json()).collect::<Vec<_>>();
        json!({ "num": enc(self.num().coeffs()), "den": enc(self.den().coeffs()) })
    }
}

impl<F: ToJson + qde_core::Field> ToJson for Mat<F> {
    fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows())
                .map(|i| Value::Array(self.row(i).iter().map(|x| x.to_json()).collect()))
                .collect(),
        )
    }
}

impl<F: ToJson + qde_core::Field> ToJson for ZSeries<F> {
    fn to_json(&self) -> Value {
        Value::Array(self.coeffs().iter().map(|x| x.to_json()).collect())
    }
}

impl<F: ToJson + qde_core::Field> ToJson for ZMat<F> {
    fn to_json(&self) -> Value {
        let d = self.dim();
        Value::Array(
            (0..d)
                .map(|i| Value::Array((0..d).map(|j| self.entry(i, j).to_json()).collect()))
                .collect(),
        )
    }
}

/// The envelope shared by every command.
pub fn envelope(command: &str, params: &[ParamSpec], ok: bool, body: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "ok": ok,
        "params": params,
        "result": body,
    })
}
