//! JSON configuration documents for the command line front end.
//!
//! Integers may be given as decimal strings (preferred) or JSON numbers.
//! Unknown keys are rejected everywhere.

use std::fmt;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Failure to read a document against the schema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaError(pub String);

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "schema error: {}", self.0)
    }
}

impl std::error::Error for SchemaError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "IntRepr", into = "String")]
pub struct Int(pub i64);

#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Text(String),
    Number(i64),
}

impl TryFrom<IntRepr> for Int {
    type Error = String;
    fn try_from(r: IntRepr) -> Result<Self, String> {
        match r {
            IntRepr::Number(n) => Ok(Int(n)),
            IntRepr::Text(s) => i64::from_str(s.trim()).map(Int).map_err(|e| format!("bad integer {s:?}: {e}")),
        }
    }
}

impl From<Int> for String {
    fn from(i: Int) -> String {
        i.0.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig {
    pub p: Int,
    #[serde(default)]
    pub k: Option<Int>,
    /// Monic modulus, low degree first; the canonical one is used when absent.
    #[serde(default)]
    pub modulus: Option<Vec<Int>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveModel {
    ProjectiveLine,
    Elliptic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    pub model: CurveModel,
    #[serde(default)]
    pub a: Option<Int>,
    #[serde(default)]
    pub b: Option<Int>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TaskName {
    RrTable,
    Reciprocity,
    Tame,
    Intersect,
    Weil,
    Massey,
    Selfcheck,
}

impl fmt::Display for TaskName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        f.write_str(&s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    field: FieldConfig,
    #[serde(default)]
    curve: Option<CurveConfig>,
    task: TaskName,
    #[serde(default)]
    seed: Option<Int>,
    #[serde(default)]
    payload: Option<Value>,
}

/// A place: `"inf"`, `"O"`, a monic irreducible `{"poly": [...]}` in t or x,
/// or a rational point `{"point": [x, y]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PlaceSpec {
    Named(String),
    Poly { poly: Vec<Int> },
    Point { point: [Int; 2] },
}

/// num/den in t (or x), plus an optional y-coefficient on elliptic curves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FunctionSpec {
    pub num: Vec<Int>,
    #[serde(default)]
    pub den: Option<Vec<Int>>,
    #[serde(default)]
    pub y_num: Option<Vec<Int>>,
    #[serde(default)]
    pub y_den: Option<Vec<Int>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolEntry(pub FunctionSpec, pub FunctionSpec, pub Int);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceTerm {
    /// Terms [coefficient, [e0, e1, e2]] of a homogeneous form.
    pub form: Vec<(Int, [u32; 3])>,
    #[serde(default)]
    pub degree: Option<Int>,
    pub multiplicity: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Infinity(String),
    Affine([Int; 2]),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct RrTablePayload {
    pub min_degree: Int,
    pub max_degree: Int,
    #[serde(default)]
    pub place: Option<PlaceSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReciprocityPayload {
    pub symbols: Vec<Vec<SymbolEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TamePayload {
    pub symbol: Vec<SymbolEntry>,
    pub places: Vec<PlaceSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct IntersectPayload {
    pub d1: Vec<SurfaceTerm>,
    pub d2: Vec<SurfaceTerm>,
    #[serde(default)]
    pub ext_bound: Option<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingPayload {
    pub l: Int,
    pub p: PointSpec,
    pub q: PointSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Task {
    RrTable(RrTablePayload),
    Reciprocity(ReciprocityPayload),
    Tame(TamePayload),
    Intersect(IntersectPayload),
    Weil(PairingPayload),
    Massey(PairingPayload),
    Selfcheck,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigDocument {
    pub field: FieldConfig,
    pub curve: Option<CurveConfig>,
    pub seed: Option<i64>,
    pub task: Task,
    /// The input with every integer rewritten as a decimal string.
    pub normalized: Value,
}

fn payload<T: DeserializeOwned>(task: TaskName, v: Option<Value>) -> Result<T, SchemaError> {
    let v = v.ok_or_else(|| SchemaError(format!("task {task} needs a payload")))?;
    serde_json::from_value(v).map_err(|e| SchemaError(format!("payload of {task}: {e}")))
}

fn normalize(v: &Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(a) => Value::Array(a.iter().map(normalize).collect()),
        Value::Object(m) => Value::Object(m.iter().map(|(k, v)| (k.clone(), normalize(v))).collect()),
        other => other.clone(),
    }
}

impl ConfigDocument {
    pub fn parse(text: &str) -> Result<Self, SchemaError> {
        let value: Value = serde_json::from_str(text).map_err(|e| SchemaError(e.to_string()))?;
        Self::from_value(value)
    }

    pub fn from_value(value: Value) -> Result<Self, SchemaError> {
        let normalized = normalize(&value);
        let raw: RawConfig = serde_json::from_value(value).map_err(|e| SchemaError(e.to_string()))?;
        let task = match raw.task {
            TaskName::RrTable => Task::RrTable(payload(raw.task, raw.payload)?),
            TaskName::Reciprocity => Task::Reciprocity(payload(raw.task, raw.payload)?),
            TaskName::Tame => Task::Tame(payload(raw.task, raw.payload)?),
            TaskName::Intersect => Task::Intersect(payload(raw.task, raw.payload)?),
            TaskName::Weil => Task::Weil(payload(raw.task, raw.payload)?),
            TaskName::Massey => Task::Massey(payload(raw.task, raw.payload)?),
            TaskName::Selfcheck => match raw.payload {
                None => Task::Selfcheck,
                Some(Value::Object(m)) if m.is_empty() => Task::Selfcheck,
                Some(_) => return Err(SchemaError("selfcheck takes no payload".into())),
            },
        };
        let needs_curve =
            matches!(task, Task::RrTable(_) | Task::Reciprocity(_) | Task::Tame(_) | Task::Weil(_) | Task::Massey(_));
        if needs_curve && raw.curve.is_none() {
            return Err(SchemaError(format!("task {} needs a curve", raw.task)));
        }
        Ok(ConfigDocument { field: raw.field, curve: raw.curve, seed: raw.seed.map(|s| s.0), task, normalized })
    }

    pub fn task_name(&self) -> TaskName {
        match self.task {
            Task::RrTable(_) => TaskName::RrTable,
            Task::Reciprocity(_) => TaskName::Reciprocity,
            Task::Tame(_) => TaskName::Tame,
            Task::Intersect(_) => TaskName::Intersect,
            Task::Weil(_) => TaskName::Weil,
            Task::Massey(_) => TaskName::Massey,
            Task::Selfcheck => TaskName::Selfcheck,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_weil_config() {
        let doc = ConfigDocument::parse(
            r#"{"field": {"p": "5"}, "curve": {"model": "elliptic", "a": "-1", "b": 0},
                "task": "weil", "payload": {"l": "2", "p": ["0", "0"], "q": ["1", "0"]}}"#,
        )
        .unwrap();
        assert_eq!(doc.task_name(), TaskName::Weil);
        assert_eq!(doc.normalized["curve"]["b"], Value::String("0".into()));
    }

    #[test]
    fn rejects_unknown_keys_and_bad_integers() {
        assert!(ConfigDocument::parse(r#"{"field": {"p": "5"}, "task": "selfcheck", "extra": 1}"#).is_err());
        assert!(ConfigDocument::parse(r#"{"field": {"p": "five"}, "task": "selfcheck"}"#).is_err());
        assert!(ConfigDocument::parse(
            r#"{"field": {"p": "5"}, "curve": {"model": "elliptic", "a": "1", "b": "1"}, "task": "weil",
                "payload": {"l": "2", "p": ["0", "0"], "q": ["1", "0"], "r": "3"}}"#
        )
        .is_err());
        assert!(ConfigDocument::parse(r#"{"field": {"p": "5"}, "task": "weil", "payload": {}}"#).is_err());
    }
}
