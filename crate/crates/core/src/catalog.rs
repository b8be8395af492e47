//! Catalog files: the excluded minors found for one class.
//!
//! ```json
//! {"format": 1, "class": {"a": 2, "b": 4, "k": 4},
//!  "metadata": {"tool_version": "0.1.0", "max_elements": 2, "node_budget": 10000000},
//!  "records": [{"polymatroid": {...}, "tags": ["Ex^2", "gamma"], "witnesses": [...]}]}
//! ```
//!
//! Records are sorted by `(|E|, canonical rank vector)` and nothing time- or
//! host-dependent is written, so equal inputs give byte-identical files.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::{self, FORMAT_VERSION};
use crate::search::SearchOutcome;
use crate::uniform::{ClassSpec, ExcludedMinorRecord, RecordTag};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogMetadata {
    pub tool_version: String,
    pub max_elements: usize,
    pub node_budget: u64,
}

impl CatalogMetadata {
    pub fn new(max_elements: usize, node_budget: u64) -> Self {
        CatalogMetadata {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            max_elements,
            node_budget,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub class: ClassSpec,
    pub metadata: CatalogMetadata,
    pub records: Vec<ExcludedMinorRecord>,
}

impl Catalog {
    pub fn new(class: ClassSpec, metadata: CatalogMetadata, mut records: Vec<ExcludedMinorRecord>) -> Self {
        records.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
        Catalog {
            class,
            metadata,
            records,
        }
    }

    pub fn from_search(class: ClassSpec, metadata: CatalogMetadata, outcome: SearchOutcome) -> Self {
        Self::new(class, metadata, outcome.records)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn to_value(&self) -> Value {
        let records: Vec<Value> = self
            .records
            .iter()
            .map(|r| {
                json!({
                    "polymatroid": json::to_value(&r.polymatroid),
                    "tags": r.tags,
                    "witnesses": r.witnesses,
                })
            })
            .collect();
        json!({
            "format": FORMAT_VERSION,
            "class": self.class,
            "metadata": self.metadata,
            "records": records,
        })
    }

    pub fn to_string_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }

    /// Reads a catalog back. Shapes and witnesses are recomputed from the
    /// polymatroids; the `gamma` tag is kept as stored.
    pub fn from_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        let field = |name: &str| {
            v.get(name)
                .ok_or_else(|| Error::Format(format!("catalog is missing \"{name}\"")))
        };
        if field("format")?.as_i64() != Some(FORMAT_VERSION) {
            return Err(Error::Format(format!("catalog format must be {FORMAT_VERSION}")));
        }
        let class: ClassSpec = serde_json::from_value(field("class")?.clone())
            .map_err(|e| Error::Format(format!("class: {e}")))?;
        let class = ClassSpec::new(class.a, class.b, class.k)?;
        let meta = field("metadata")?;
        let metadata = CatalogMetadata {
            tool_version: meta["tool_version"].as_str().unwrap_or_default().to_string(),
            max_elements: meta["max_elements"].as_u64().unwrap_or_default() as usize,
            node_budget: meta["node_budget"].as_u64().unwrap_or_default(),
        };
        let records = field("records")?
            .as_array()
            .ok_or_else(|| Error::Format("records must be an array".into()))?
            .iter()
            .map(|r| {
                let table = json::from_value(&r["polymatroid"])?;
                let mut record = ExcludedMinorRecord::new_unchecked(table, &class);
                let gamma = r["tags"]
                    .as_array()
                    .is_some_and(|t| t.iter().any(|x| x == "gamma"));
                if gamma {
                    record.tags.push(RecordTag::Gamma);
                }
                Ok(record)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(class, metadata, records))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{search_excluded, SearchOptions};

    fn small() -> Catalog {
        let class = ClassSpec::new(2, 4, 4).unwrap();
        let opts = SearchOptions {
            max_elements: 2,
            ..SearchOptions::default()
        };
        let out = search_excluded(&class, &opts).unwrap();
        Catalog::from_search(class, CatalogMetadata::new(2, opts.node_budget), out)
    }

    #[test]
    fn serialization_is_stable_and_round_trips() {
        let a = small().to_string_pretty();
        assert_eq!(a, small().to_string_pretty());
        let back = Catalog::from_str(&a).unwrap();
        assert_eq!(back.to_string_pretty(), a);
        assert_eq!(back.len(), 6);
    }

    #[test]
    fn tags_serialize_as_strings() {
        let v = small().to_value();
        assert_eq!(v["records"][0]["tags"], json!(["Ex^2", "gamma"]));
        assert_eq!(v["format"], json!(1));
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(Catalog::from_str("{}").is_err());
        assert!(Catalog::from_str(r#"{"format": 2}"#).is_err());
    }
}
