//! The polymatroid JSON format.
//!
//! ```json
//! {"format": 1, "ground": ["e","f"], "k": 3, "ranks": {"": 0, "e": 3, "f": 2, "e,f": 4}}
//! ```
//!
//! Subset keys are the subset's labels joined by `,` in ground order. Every
//! subset must be present, values must be integers, and `"format"` is
//! optional on input (it must be `1` when given). Output always carries it and
//! lists subsets in mask order.

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::poly::RankTable;
use crate::subset::all_subsets;

pub const FORMAT_VERSION: i64 = 1;

pub fn to_value(table: &RankTable) -> Value {
    let ground = table.ground();
    let mut ranks = Map::new();
    for s in all_subsets(ground.len()) {
        ranks.insert(ground.subset_key(s), Value::from(table.rank(s)));
    }
    let mut out = Map::new();
    out.insert("format".into(), Value::from(FORMAT_VERSION));
    out.insert(
        "ground".into(),
        Value::Array(ground.labels().iter().map(|l| Value::from(l.as_str())).collect()),
    );
    out.insert("k".into(), Value::from(table.k()));
    out.insert("ranks".into(), Value::Object(ranks));
    Value::Object(out)
}

pub fn to_string(table: &RankTable) -> String {
    serde_json::to_string(&to_value(table)).expect("values serialize")
}

pub fn to_string_pretty(table: &RankTable) -> String {
    serde_json::to_string_pretty(&to_value(table)).expect("values serialize")
}

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn as_int(v: &Value, what: &str) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| format_err(format!("{what} must be an integer, got {v}")))
}

/// Parses and validates a polymatroid document.
pub fn from_value(v: &Value) -> Result<RankTable> {
    let obj = v
        .as_object()
        .ok_or_else(|| format_err("polymatroid must be a JSON object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "format" | "ground" | "k" | "ranks") {
            return Err(format_err(format!("unexpected field {key:?}")));
        }
    }
    if let Some(f) = obj.get("format") {
        let f = as_int(f, "format")?;
        if f != FORMAT_VERSION {
            return Err(format_err(format!("unsupported format version {f}")));
        }
    }
    let labels = obj
        .get("ground")
        .and_then(Value::as_array)
        .ok_or_else(|| format_err("missing array field \"ground\""))?
        .iter()
        .map(|l| {
            l.as_str()
                .map(str::to_string)
                .ok_or_else(|| format_err("ground labels must be strings"))
        })
        .collect::<Result<Vec<_>>>()?;
    let ground = GroundSet::new(labels)?;
    let k = as_int(
        obj.get("k").ok_or_else(|| format_err("missing field \"k\""))?,
        "k",
    )?;
    let ranks_obj = obj
        .get("ranks")
        .and_then(Value::as_object)
        .ok_or_else(|| format_err("missing object field \"ranks\""))?;
    let n = ground.len();
    if ranks_obj.len() != 1 << n {
        return Err(format_err(format!(
            "\"ranks\" has {} keys, expected {}",
            ranks_obj.len(),
            1usize << n
        )));
    }
    let ranks = all_subsets(n)
        .map(|s| {
            let key = ground.subset_key(s);
            let v = ranks_obj
                .get(&key)
                .ok_or_else(|| format_err(format!("missing rank for subset {key:?}")))?;
            as_int(v, &format!("rank of {key:?}"))
        })
        .collect::<Result<Vec<_>>>()?;
    RankTable::new(ground, k, ranks)
}

pub fn from_str(s: &str) -> Result<RankTable> {
    let v: Value = serde_json::from_str(s).map_err(|e| format_err(e.to_string()))?;
    from_value(&v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_example() {
        let t = from_str(r#"{"ground": ["e","f"], "k": 3, "ranks": {"": 0, "e": 3, "f": 2, "e,f": 4}}"#)
            .unwrap();
        assert_eq!(t.ranks(), &[0, 3, 2, 4]);
        assert_eq!(
            to_string(&t),
            r#"{"format":1,"ground":["e","f"],"k":3,"ranks":{"":0,"e":3,"f":2,"e,f":4}}"#
        );
    }

    #[test]
    fn rejects_missing_or_misordered_keys() {
        let missing = r#"{"ground": ["e","f"], "k": 3, "ranks": {"": 0, "e": 3, "f": 2}}"#;
        assert!(matches!(from_str(missing).unwrap_err(), Error::Format(_)));
        let misordered = r#"{"ground": ["e","f"], "k": 3, "ranks": {"": 0, "e": 3, "f": 2, "f,e": 4}}"#;
        assert!(matches!(from_str(misordered).unwrap_err(), Error::Format(_)));
    }

    #[test]
    fn rejects_non_integers_and_bad_versions() {
        let float = r#"{"ground": ["e"], "k": 3, "ranks": {"": 0, "e": 1.5}}"#;
        assert!(matches!(from_str(float).unwrap_err(), Error::Format(_)));
        let version = r#"{"format": 2, "ground": ["e"], "k": 3, "ranks": {"": 0, "e": 1}}"#;
        assert!(matches!(from_str(version).unwrap_err(), Error::Format(_)));
    }

    #[test]
    fn axiom_violations_surface_as_such() {
        let bad = r#"{"ground": ["e","f"], "k": 3, "ranks": {"": 0, "e": 1, "f": 1, "e,f": 3}}"#;
        assert!(matches!(from_str(bad).unwrap_err(), Error::NotSubmodular { .. }));
    }
}
