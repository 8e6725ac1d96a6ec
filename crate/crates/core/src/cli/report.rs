//! JSON rendering of engine values. Keys are emitted in sorted order, so a
//! fixed configuration always yields the same bytes.

use serde_json::{json, Map, Value};

use crate::algebra::{NuSeries, Rational};
use crate::cohomology::{ClassVerdict, EquivariantCochain, Obstruction, Stage, Witness};
use crate::geometry::FormSeries;
use crate::symmetry::{MomentumObstruction, ValidationReport};

/// Coefficients C₀…C_K as strings.
pub fn series_coeffs(s: &NuSeries) -> Value {
    Value::Array((0..=s.order()).map(|k| Value::String(s.coeff(k).to_string())).collect())
}

pub fn series_text(s: &NuSeries) -> Value {
    Value::String(s.to_string())
}

pub fn series_list(values: &[NuSeries]) -> Value {
    Value::Array(values.iter().map(series_text).collect())
}

/// Same layout as the config: `[{nu_power, coeffs: {"1,2": poly}}]`, zero
/// coefficients omitted.
pub fn form_series(s: &FormSeries) -> Value {
    let terms = s
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(k, a)| {
            let coeffs: Map<String, Value> = a.to_map().into_iter().map(|(i, p)| (i, Value::String(p))).collect();
            json!({ "nu_power": k, "coeffs": coeffs })
        })
        .collect();
    Value::Array(terms)
}

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn cochain(alpha: &EquivariantCochain) -> Value {
    let lin: Vec<Value> = alpha.lin_part().iter().map(|a| series_coeffs(&a.to_functions())).collect();
    json!({
        "degree": alpha.degree(),
        "nu_order": alpha.order(),
        "form_part": form_series(alpha.form_part()),
        "lin_part": lin,
    })
}

pub fn witness(w: &Witness) -> Value {
    json!({ "C": form_series(&w.c), "t": series_text(&w.t) })
}

pub fn obstruction(o: &Obstruction) -> Value {
    let stage = match o.stage {
        Stage::InvariantPrimitive => "invariant_primitive",
        Stage::Constants => "constants",
    };
    let combination: Vec<Value> = o
        .combination
        .iter()
        .map(|(i, m, y)| json!({ "xi": i + 1, "monomial": m.to_string(), "multiplier": rational(y) }))
        .collect();
    json!({
        "stage": stage,
        "nu_power": o.nu_power,
        "combination": combination,
        "residual": rational(&o.residual),
        "text": o.to_string(),
    })
}

pub fn verdict(v: &ClassVerdict) -> Value {
    json!({
        "status": v.status.as_str(),
        "degree_bound": v.degree_bound,
        "witness": v.witness.as_ref().map(witness),
        "obstruction": v.obstruction.as_ref().map(obstruction),
    })
}

pub fn momentum_obstruction(o: &MomentumObstruction) -> Value {
    let pairs: Vec<Value> = o.pairs.iter().map(|(i, j)| json!([i + 1, j + 1])).collect();
    json!({
        "pairs": pairs,
        "rhs": series_list(&o.rhs),
        "certificate": o.certificate.iter().map(rational).collect::<Vec<_>>(),
        "residual": series_text(&o.residual),
        "text": o.to_string(),
    })
}

/// One row of a check matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckRow {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl CheckRow {
    pub fn new(name: impl Into<String>, passed: bool, detail: Option<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail,
        }
    }

    /// Passes when `failure` is `None`.
    pub fn from_failure(name: impl Into<String>, failure: Option<String>) -> Self {
        Self::new(name, failure.is_none(), failure)
    }

    pub fn to_json(&self) -> Value {
        json!({ "name": self.name, "passed": self.passed, "detail": self.detail })
    }
}

pub fn validation_rows(prefix: &str, report: &ValidationReport) -> Vec<CheckRow> {
    report
        .checks
        .iter()
        .map(|c| CheckRow::new(format!("{prefix}: {}", c.name), c.passed, c.witness.clone()))
        .collect()
}

pub fn rows(rows: &[CheckRow]) -> Value {
    Value::Array(rows.iter().map(CheckRow::to_json).collect())
}
