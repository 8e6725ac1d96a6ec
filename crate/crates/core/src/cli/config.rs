//! JSON run configuration.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "order": 3,
//!   "n_deg": 8,
//!   "omega": [["0", "1"], ["-1", "0"]],
//!   "gamma": { "gamma.1.1.1": "x2" },
//!   "Omega": [{ "nu_power": 1, "coeffs": { "1,2": "1" } }],
//!   "action": {
//!     "structure": [{ "i": 1, "j": 2, "k": 1, "value": "1" }],
//!     "fields": [["-x2", "x1"]],
//!     "J0": ["-(x1^2 + x2^2)/2"]
//!   },
//!   "J": ["-(x1^2 + x2^2)/2 + nu"],
//!   "f": "x1", "g": "x2",
//!   "C": [{ "nu_power": 1, "coeffs": { "1": "1" } }],
//!   "t": "nu*x1",
//!   "compare": { "Omega": [], "J": ["..."] },
//!   "degree_bound": 4,
//!   "test_degree": 4
//! }
//! ```
//!
//! Indices are 1-based. `gamma.i.j.k` entries are the lowered Christoffel
//! symbols Γ_ijk and must be given for every permutation; missing entries are
//! zero. Structure constants cᵏᵢⱼ likewise list both (i,j) and (j,i).
//! `compare` describes the second pair either by `Omega` and optional `J`, or
//! by `transport: { "C": [...], "t": "..." }` applied to the first pair.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;

use crate::algebra::{parse_nu_series, parse_poly, NuSeries, Poly, Rational};
use crate::error::Error;
use crate::fedosov::default_n_deg;
use crate::geometry::{FormSeries, GeometryData, PolyForm, PolyVectorField};
use crate::symmetry::LieAction;
use crate::weyl::anti;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormTerm {
    pub nu_power: usize,
    pub coeffs: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAction {
    #[serde(default)]
    pub structure: Vec<StructureEntry>,
    pub fields: Vec<Vec<String>>,
    #[serde(default, rename = "J0")]
    pub j0: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTransport {
    #[serde(default, rename = "C")]
    pub c: Vec<FormTerm>,
    #[serde(default)]
    pub t: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPair {
    #[serde(default, rename = "Omega")]
    pub omega: Option<Vec<FormTerm>>,
    #[serde(default, rename = "J")]
    pub j: Option<Vec<String>>,
    #[serde(default)]
    pub transport: Option<RawTransport>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub dim: usize,
    pub order: usize,
    #[serde(default)]
    pub n_deg: Option<i64>,
    #[serde(default)]
    pub omega: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub gamma: BTreeMap<String, String>,
    #[serde(default, rename = "Omega")]
    pub big_omega: Vec<FormTerm>,
    #[serde(default)]
    pub action: Option<RawAction>,
    #[serde(default, rename = "J")]
    pub j: Option<Vec<String>>,
    #[serde(default)]
    pub f: Option<String>,
    #[serde(default)]
    pub g: Option<String>,
    #[serde(default, rename = "C")]
    pub c: Option<Vec<FormTerm>>,
    #[serde(default)]
    pub t: Option<String>,
    #[serde(default)]
    pub compare: Option<RawPair>,
    #[serde(default)]
    pub degree_bound: Option<u32>,
    #[serde(default)]
    pub test_degree: Option<u32>,
}

/// How the second pair of `compare` is given.
#[derive(Clone, Debug)]
pub enum SecondPair {
    Explicit { omega: FormSeries, j: Option<Vec<NuSeries>> },
    Transport { c: FormSeries, t: NuSeries },
}

/// A fully validated configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub dim: usize,
    pub order: usize,
    pub n_deg: i64,
    pub geometry: GeometryData,
    pub omega: FormSeries,
    pub action: LieAction,
    pub j: Option<Vec<NuSeries>>,
    pub f: Option<NuSeries>,
    pub g: Option<NuSeries>,
    pub c: Option<FormSeries>,
    pub t: Option<NuSeries>,
    pub second: Option<SecondPair>,
    pub degree_bound: u32,
    pub test_degree: u32,
}

/// Input rejected before any computation; `location` names the offending key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub location: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.location.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.location, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

fn err(location: impl Into<String>, message: impl fmt::Display) -> ConfigError {
    ConfigError {
        location: location.into(),
        message: message.to_string(),
    }
}

fn poly(text: &str, dim: usize, loc: &str) -> Result<Poly, ConfigError> {
    parse_poly(text, dim).map_err(|e| err(loc, format!("{} at column {}", e.kind, e.position + 1)))
}

fn series(text: &str, dim: usize, order: usize, loc: &str) -> Result<NuSeries, ConfigError> {
    parse_nu_series(text, dim, order).map_err(|e| err(loc, format!("{} at column {}", e.kind, e.position + 1)))
}

fn rational(text: &str, loc: &str) -> Result<Rational, ConfigError> {
    let p = poly(text, 0, loc)?;
    if !p.is_constant() {
        return Err(err(loc, "expected a rational constant"));
    }
    Ok(p.constant_term())
}

fn in_range(i: usize, dim: usize, loc: &str) -> Result<usize, ConfigError> {
    if i == 0 || i > dim {
        return Err(err(loc, format!("index {i} outside 1..={dim}")));
    }
    Ok(i - 1)
}

fn index(text: &str, dim: usize, loc: &str) -> Result<usize, ConfigError> {
    let i: usize = text
        .trim()
        .parse()
        .map_err(|_| err(loc, format!("`{text}` is not an index")))?;
    in_range(i, dim, loc)
}

/// Series of forms from `[{nu_power, coeffs: {"i,j": poly}}]`, exact in ν.
fn form_series(terms: &[FormTerm], dim: usize, degree: u32, loc: &str) -> Result<FormSeries, ConfigError> {
    let max = terms.iter().map(|t| t.nu_power).max().unwrap_or(0);
    let mut coeffs = vec![PolyForm::zero(dim); max + 1];
    for (n, term) in terms.iter().enumerate() {
        for (key, value) in &term.coeffs {
            let here = format!("{loc}[{n}].coeffs.{key}");
            let idx = key
                .split(',')
                .map(|s| index(s, dim, &here))
                .collect::<Result<Vec<_>, _>>()?;
            if idx.len() as u32 != degree {
                return Err(err(&here, format!("expected {degree} indices")));
            }
            if anti::from_indices(&idx).is_none() {
                return Err(err(&here, "repeated index"));
            }
            let p = poly(value, dim, &here)?;
            coeffs[term.nu_power] = coeffs[term.nu_power].add(&PolyForm::monomial(dim, &idx, p));
        }
    }
    Ok(FormSeries::from_coeffs(dim, coeffs, NuSeries::EXACT))
}

fn series_list(items: &[String], dim: usize, order: usize, loc: &str) -> Result<Vec<NuSeries>, ConfigError> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| series(s, dim, order, &format!("{loc}[{i}]")))
        .collect()
}

/// (C, t) of a transport or witness; both must start at ν¹.
pub(super) fn transport(raw: &RawTransport, dim: usize, order: usize, loc: &str) -> Result<(FormSeries, NuSeries), ConfigError> {
    let c = form_series(&raw.c, dim, 1, &format!("{loc}.C"))?;
    let t = match &raw.t {
        Some(s) => series(s, dim, order, &format!("{loc}.t"))?,
        None => NuSeries::zero(order),
    };
    if !c.coeff(0).is_zero() || !t.coeff(0).is_zero() {
        return Err(err(loc, "C and t must start at nu^1"));
    }
    Ok((c, t))
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| err("", format!("JSON: {e}")))
    }

    /// Schema and semantic validation: Γ symmetry and ω invertibility, Ω
    /// closedness, the action checks.
    pub fn validate(self) -> Result<RunConfig, ConfigError> {
        let dim = self.dim;
        if dim == 0 || dim % 2 != 0 {
            return Err(err("dim", format!("must be even and positive, got {dim}")));
        }
        let order = self.order;
        let n_deg = self.n_deg.unwrap_or_else(|| default_n_deg(order));

        let omega_lower = match &self.omega {
            None => GeometryData::standard_omega(dim),
            Some(rows) => {
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    return Err(err("omega", format!("must be a {dim} x {dim} matrix")));
                }
                rows.iter()
                    .enumerate()
                    .map(|(i, r)| {
                        r.iter()
                            .enumerate()
                            .map(|(j, s)| rational(s, &format!("omega[{}][{}]", i + 1, j + 1)))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?
            }
        };
        let mut gamma = vec![vec![vec![Poly::zero(); dim]; dim]; dim];
        for (key, value) in &self.gamma {
            let parts: Vec<&str> = key.split('.').collect();
            if parts.len() != 4 || parts[0] != "gamma" {
                return Err(err(format!("gamma.{key}"), "keys have the form gamma.i.j.k"));
            }
            let i = index(parts[1], dim, key)?;
            let j = index(parts[2], dim, key)?;
            let k = index(parts[3], dim, key)?;
            gamma[i][j][k] = poly(value, dim, key)?;
        }
        let geometry = GeometryData::new(omega_lower, gamma).map_err(|e| err("gamma/omega", e))?;

        let omega = form_series(&self.big_omega, dim, 2, "Omega")?;
        if !omega.coeff(0).is_zero() {
            return Err(err("Omega", "Omega must start at nu^1"));
        }
        if !omega.d().is_zero() {
            return Err(err("Omega", format!("Omega-closedness fails: d(Omega) = {}", omega.d())));
        }

        let action = match &self.action {
            None => LieAction::trivial(),
            Some(a) => {
                let m = a.fields.len();
                let fields = a
                    .fields
                    .iter()
                    .enumerate()
                    .map(|(n, comps)| {
                        if comps.len() != dim {
                            return Err(err(format!("action.fields[{n}]"), format!("expected {dim} components")));
                        }
                        comps
                            .iter()
                            .enumerate()
                            .map(|(i, s)| poly(s, dim, &format!("action.fields[{n}][{i}]")))
                            .collect::<Result<Vec<_>, _>>()
                            .map(PolyVectorField::new)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let mut c = vec![vec![vec![Rational::from_integer(0.into()); m]; m]; m];
                for (n, e) in a.structure.iter().enumerate() {
                    let loc = format!("action.structure[{n}]");
                    let (i, j, k) = (in_range(e.i, m, &loc)?, in_range(e.j, m, &loc)?, in_range(e.k, m, &loc)?);
                    c[i][j][k] = rational(&e.value, &loc)?;
                }
                let j0 = match &a.j0 {
                    None => None,
                    Some(list) => Some(
                        list.iter()
                            .enumerate()
                            .map(|(n, s)| poly(s, dim, &format!("action.J0[{n}]")))
                            .collect::<Result<Vec<_>, _>>()?,
                    ),
                };
                LieAction::new(c, fields, j0).map_err(|e| err("action", e))?
            }
        };
        let report = action.validate(&geometry);
        if let Some(c) = report.first_failure() {
            return Err(err(
                "action",
                format!("{} check fails at {}", c.name, c.witness.as_deref().unwrap_or("?")),
            ));
        }
        for (i, x) in action.fields().iter().enumerate() {
            if !omega.lie(x).is_zero() {
                return Err(err("Omega", format!("not invariant under xi_{}", i + 1)));
            }
        }

        let j = self.j.as_deref().map(|l| series_list(l, dim, order, "J")).transpose()?;
        if let Some(j) = &j {
            if j.len() != action.dim() {
                return Err(err("J", format!("expected {} entries", action.dim())));
            }
        }
        let f = self.f.as_deref().map(|s| series(s, dim, order, "f")).transpose()?;
        let g = self.g.as_deref().map(|s| series(s, dim, order, "g")).transpose()?;
        let c = self.c.as_deref().map(|c| form_series(c, dim, 1, "C")).transpose()?;
        if let Some(c) = &c {
            if !c.coeff(0).is_zero() {
                return Err(err("C", "C must start at nu^1"));
            }
        }
        let t = self.t.as_deref().map(|s| series(s, dim, order, "t")).transpose()?;
        let second = match self.compare {
            None => None,
            Some(p) => Some(match (p.omega, p.transport) {
                (Some(_), Some(_)) => return Err(err("compare", "give either Omega or transport")),
                (None, Some(tr)) => {
                    if p.j.is_some() {
                        return Err(err("compare.J", "not used with transport"));
                    }
                    let (c, t) = transport(&tr, dim, order, "compare.transport")?;
                    SecondPair::Transport { c, t }
                }
                (omega, None) => {
                    let omega = form_series(omega.as_deref().unwrap_or(&[]), dim, 2, "compare.Omega")?;
                    if !omega.coeff(0).is_zero() || !omega.d().is_zero() {
                        return Err(err("compare.Omega", "must be closed and start at nu^1"));
                    }
                    let j = p.j.as_deref().map(|l| series_list(l, dim, order, "compare.J")).transpose()?;
                    SecondPair::Explicit { omega, j }
                }
            }),
        };
        Ok(RunConfig {
            dim,
            order,
            n_deg,
            geometry,
            omega,
            action,
            j,
            f,
            g,
            c,
            t,
            second,
            degree_bound: self.degree_bound.unwrap_or(4),
            test_degree: self.test_degree.unwrap_or(4),
        })
    }
}

/// Reads and validates a configuration file.
pub fn load_config(path: &std::path::Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| err(path.display().to_string(), e))?;
    RawConfig::parse(&text)?.validate()
}

impl From<ConfigError> for Error {
    fn from(e: ConfigError) -> Self {
        Error::Invalid(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Result<RunConfig, ConfigError> {
        RawConfig::parse(text)?.validate()
    }

    #[test]
    fn minimal_flat_config() {
        let cfg = load(r#"{ "dim": 2, "order": 3 }"#).unwrap();
        assert!(cfg.geometry.is_flat());
        assert!(cfg.omega.is_zero());
        assert_eq!(cfg.n_deg, 8);
        assert_eq!(cfg.action.dim(), 0);
    }

    #[test]
    fn non_closed_omega_is_rejected() {
        let e = load(r#"{ "dim": 4, "order": 2, "Omega": [{ "nu_power": 1, "coeffs": { "2,3": "x1" } }] }"#)
            .unwrap_err();
        assert_eq!(e.location, "Omega");
        assert!(e.message.contains("closedness"), "{e}");
    }

    #[test]
    fn asymmetric_gamma_is_rejected() {
        let e = load(r#"{ "dim": 2, "order": 2, "gamma": { "gamma.1.1.2": "x1" } }"#).unwrap_err();
        assert_eq!(e.location, "gamma/omega");
    }

    #[test]
    fn parse_errors_carry_location() {
        let e = load(r#"{ "dim": 2, "order": 2, "f": "x1 +* x2" }"#).unwrap_err();
        assert_eq!(e.location, "f");
        let e = load(r#"{ "dim": 2, "order": 2, "gamma": { "gamma.1.1.3": "1" } }"#).unwrap_err();
        assert!(e.message.contains("outside"), "{e}");
        let e = load(r#"{ "dim": 2, "order": 2, "colour": 1 }"#).unwrap_err();
        assert!(e.message.contains("unknown field"), "{e}");
        assert!(load(r#"{ "dim": 3, "order": 2 }"#).is_err());
    }

    #[test]
    fn action_checks_run_at_load() {
        let e = load(r#"{ "dim": 2, "order": 2, "action": { "fields": [["x1^2", "0"]] } }"#).unwrap_err();
        assert_eq!(e.location, "action");
        assert!(e.message.contains("symplectic"), "{e}");
        let e = load(
            r#"{ "dim": 2, "order": 2, "Omega": [{ "nu_power": 1, "coeffs": { "1,2": "x1" } }],
                 "action": { "fields": [["1", "0"]] } }"#,
        )
        .unwrap_err();
        assert!(e.message.contains("invariant"), "{e}");
    }

    #[test]
    fn full_config_round_trip() {
        let cfg = load(
            r#"{ "dim": 2, "order": 2, "omega": [["0", "2"], ["-2", "0"]],
                 "action": { "structure": [], "fields": [["-x2", "x1"]], "J0": ["-(x1^2 + x2^2)"] },
                 "J": ["-(x1^2 + x2^2) + nu"],
                 "compare": { "transport": { "C": [{ "nu_power": 1, "coeffs": { "1": "-x2", "2": "x1" } }] } } }"#,
        )
        .unwrap();
        assert_eq!(cfg.geometry.omega_lower()[0][1], Rational::from_integer(2.into()));
        assert_eq!(cfg.j.as_ref().unwrap()[0].coeff(1), Poly::one());
        assert!(matches!(cfg.second, Some(SecondPair::Transport { .. })));
    }
}
