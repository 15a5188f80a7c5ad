//! Manifold description files.
//!
//! ```json
//! {
//!   "name": "kt",
//!   "n": 2,
//!   "coframe": ["x", "y", "z", "w"],
//!   "d": { "z": [["x", "y", "1"]] },
//!   "J": { "y": "x", "x": "-y", "z": "w", "w": "-z" }
//! }
//! ```
//!
//! `d` lists the wedge terms `[a, b, c]` of `d e^k = Σ c · e^a∧e^b`; names
//! missing from `d` are closed. `J` is either a map `v ↦ ±Jv` or a matrix of
//! rational strings with `J v_b = Σ_a J[a][b] v_a`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use clifford_lab_core::clifford::ComplexStructure;
use clifford_lab_core::lie::{LieModel, ModelError, Rat};
use serde::Deserialize;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Text(String),
    Integer(i64),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum JSpec {
    Signed(BTreeMap<String, String>),
    Matrix(Vec<Vec<Number>>),
}

/// Flags the file claims; checked by `info`.
#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    pub almost_kaehler: Option<bool>,
    pub integrable: Option<bool>,
    pub kaehler: Option<bool>,
    pub balanced: Option<bool>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldSpec {
    pub name: Option<String>,
    pub description: Option<String>,
    pub n: usize,
    pub coframe: Vec<String>,
    #[serde(default)]
    pub d: BTreeMap<String, Vec<Vec<Number>>>,
    #[serde(rename = "J")]
    pub j: JSpec,
    #[serde(default)]
    pub expect: Expect,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpecError {
    Io { path: String, message: String },
    Json { line: usize, column: usize, message: String },
    /// A semantic problem at a JSON path such as `d.z[0][2]`.
    Field { path: String, message: String },
    Model(ModelError),
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Io { path, message } => write!(f, "{path}: {message}"),
            SpecError::Json { line, column, message } => write!(f, "line {line}, column {column}: {message}"),
            SpecError::Field { path, message } => write!(f, "at {path}: {message}"),
            SpecError::Model(e) => write!(f, "invalid model: {e}"),
        }
    }
}

impl std::error::Error for SpecError {}

fn field(path: impl Into<String>, message: impl Into<String>) -> SpecError {
    SpecError::Field { path: path.into(), message: message.into() }
}

/// `"p/q"`, `"p"` or a bare integer.
pub fn parse_rational(x: &Number, path: &str) -> Result<Rat, SpecError> {
    match x {
        Number::Integer(k) => Ok(Rat::from_integer((*k).into())),
        Number::Text(s) => {
            let t = s.trim();
            if t.split('/').nth(1).is_some_and(|d| d.trim_start_matches(['+', '-']).chars().all(|c| c == '0')) {
                return Err(field(path, format!("zero denominator in \"{s}\"")));
            }
            Rat::from_str(t).map_err(|_| field(path, format!("not a rational: \"{s}\"")))
        }
    }
}

impl ManifoldSpec {
    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        serde_json::from_str(text).map_err(|e| SpecError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, SpecError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SpecError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::from_json(&text).map_err(|e| match e {
            SpecError::Json { line, column, message } => SpecError::Json {
                line,
                column,
                message: format!("{}: {message}", path.display()),
            },
            other => other,
        })
    }

    fn index(&self, name: &str, path: &str) -> Result<usize, SpecError> {
        self.coframe
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| field(path, format!("unknown coframe element \"{name}\"")))
    }

    fn structure(&self) -> Result<ComplexStructure, SpecError> {
        let m = self.coframe.len();
        let zero = Rat::from_integer(0.into());
        let mut j = vec![vec![zero; m]; m];
        match &self.j {
            JSpec::Signed(map) => {
                for (from, to) in map {
                    let path = format!("J.{from}");
                    let b = self.index(from, &path)?;
                    let (sign, name) = match to.trim().strip_prefix('-') {
                        Some(rest) => (-1, rest.trim()),
                        None => (1, to.trim().trim_start_matches('+')),
                    };
                    let a = self.index(name, &path)?;
                    j[a][b] = Rat::from_integer(sign.into());
                }
                if let Some(name) = self.coframe.iter().find(|c| !map.contains_key(*c)) {
                    return Err(field("J", format!("no image given for \"{name}\"")));
                }
            }
            JSpec::Matrix(rows) => {
                if rows.len() != m {
                    return Err(field("J", format!("expected {m} rows, found {}", rows.len())));
                }
                for (a, row) in rows.iter().enumerate() {
                    if row.len() != m {
                        return Err(field(format!("J[{a}]"), format!("expected {m} entries, found {}", row.len())));
                    }
                    for (b, x) in row.iter().enumerate() {
                        j[a][b] = parse_rational(x, &format!("J[{a}][{b}]"))?;
                    }
                }
            }
        }
        Ok(ComplexStructure::from_matrix(j))
    }

    pub fn model_name(&self, fallback: &str) -> String {
        self.name.clone().unwrap_or_else(|| fallback.to_string())
    }

    /// Validates everything and builds the Lie model.
    pub fn to_model(&self, fallback_name: &str) -> Result<LieModel, SpecError> {
        let m = self.coframe.len();
        if m != 2 * self.n {
            return Err(field("coframe", format!("n = {} needs {} names, found {m}", self.n, 2 * self.n)));
        }
        if self.n == 0 {
            return Err(field("n", "must be at least 1"));
        }
        for (k, name) in self.coframe.iter().enumerate() {
            if self.coframe[..k].contains(name) {
                return Err(field(format!("coframe[{k}]"), format!("duplicate name \"{name}\"")));
            }
        }
        let mut d = vec![Vec::new(); m];
        for (name, terms) in &self.d {
            let k = self.index(name, &format!("d.{name}"))?;
            for (t, term) in terms.iter().enumerate() {
                let path = format!("d.{name}[{t}]");
                if term.len() != 3 {
                    return Err(field(path, "expected [name, name, rational]"));
                }
                let label = |x: &Number, p: String| match x {
                    Number::Text(s) => self.index(s, &p),
                    Number::Integer(_) => Err(field(p, "expected a coframe name")),
                };
                let a = label(&term[0], format!("{path}[0]"))?;
                let b = label(&term[1], format!("{path}[1]"))?;
                if a == b {
                    return Err(field(path, format!("degenerate wedge {0}∧{0}", self.coframe[a])));
                }
                d[k].push((a, b, parse_rational(&term[2], &format!("{path}[2]"))?));
            }
        }
        let name = self.model_name(fallback_name);
        LieModel::from_differential(&name, self.coframe.clone(), &d, self.structure()?).map_err(SpecError::Model)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const KT: &str = r#"{
        "name": "kt", "n": 2, "coframe": ["x", "y", "z", "w"],
        "d": { "z": [["x", "y", "1"]] },
        "J": { "y": "x", "x": "-y", "z": "w", "w": "-z" }
    }"#;

    #[test]
    fn parses_kt() {
        let m = ManifoldSpec::from_json(KT).unwrap().to_model("").unwrap();
        assert_eq!(m.name(), "kt");
        assert!(m.is_integrable());
    }

    #[test]
    fn matrix_form_agrees() {
        let text = r#"{
            "n": 2, "coframe": ["x", "y", "z", "w"],
            "d": { "z": [["x", "y", 1]] },
            "J": [["0", "1", "0", "0"], ["-1", "0", "0", "0"], ["0", "0", "0", "-1"], ["0", "0", "1/1", "0"]]
        }"#;
        let a = ManifoldSpec::from_json(text).unwrap().to_model("kt").unwrap();
        let b = ManifoldSpec::from_json(KT).unwrap().to_model("").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_carry_positions() {
        let e = ManifoldSpec::from_json("{\n  \"n\": 2,\n  \"coframe\": [1]\n}").unwrap_err();
        assert!(matches!(e, SpecError::Json { line: 3, .. }), "{e}");
        let bad = KT.replace(r#"["x", "y", "1"]"#, r#"["x", "q", "1"]"#);
        let e = ManifoldSpec::from_json(&bad).unwrap().to_model("").unwrap_err();
        assert_eq!(e.to_string(), "at d.z[0][1]: unknown coframe element \"q\"");
        let bad = KT.replace(r#""1"]"#, r#""1/0"]"#);
        let e = ManifoldSpec::from_json(&bad).unwrap().to_model("").unwrap_err();
        assert!(e.to_string().starts_with("at d.z[0][2]: zero denominator"), "{e}");
        let bad = KT.replace(r#""w": "-z""#, r#""w": "z""#);
        let e = ManifoldSpec::from_json(&bad).unwrap().to_model("").unwrap_err();
        assert!(matches!(e, SpecError::Model(ModelError::NotComplexStructure)));
    }

    #[test]
    fn jacobi_is_checked() {
        let text = r#"{
            "n": 2, "coframe": ["a", "b", "c", "e"],
            "d": { "a": [["a", "c", "1"]], "c": [["a", "b", "-1"]] },
            "J": { "a": "b", "b": "-a", "c": "e", "e": "-c" }
        }"#;
        let e = ManifoldSpec::from_json(text).unwrap().to_model("").unwrap_err();
        assert!(e.to_string().contains("Jacobi") || e.to_string().contains("unimodular"), "{e}");
    }
}
