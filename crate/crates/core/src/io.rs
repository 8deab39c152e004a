//! JSON file formats.
//!
//! A quiver file names its vertices and lists arrows by endpoint names, with
//! an optional multiplicity (default 1):
//!
//! ```json
//! { "vertices": ["a", "b", "c"], "arrows": [["a", "c", 4], ["b", "c", 4]] }
//! ```
//!
//! A dimension vector file maps every vertex name to a positive integer:
//!
//! ```json
//! { "a": 1, "b": 1, "c": 1 }
//! ```

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{DimensionVector, Quiver};

/// A quiver together with the vertex names used in its source file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedQuiver {
    pub names: Vec<String>,
    pub quiver: Quiver,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawQuiver {
    vertices: Vec<String>,
    arrows: Vec<RawArrow>,
}

#[derive(Deserialize, Serialize)]
#[serde(untagged)]
enum RawArrow {
    Counted(String, String, u32),
    Single(String, String),
}

fn json_error(what: &str, e: serde_json::Error) -> Error {
    Error::Parse(format!("{what}: {e}"))
}

pub fn parse_quiver_json(text: &str) -> Result<NamedQuiver> {
    let raw: RawQuiver = serde_json::from_str(text).map_err(|e| json_error("quiver", e))?;
    if raw.vertices.is_empty() {
        return Err(Error::Parse("quiver: field `vertices` is empty".into()));
    }
    let mut index = HashMap::new();
    for (i, name) in raw.vertices.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(Error::Parse(format!("quiver: vertices[{i}]: duplicate vertex name {name:?}")));
        }
    }
    let mut list = Vec::with_capacity(raw.arrows.len());
    for (k, arrow) in raw.arrows.iter().enumerate() {
        let (src, dst, mult) = match arrow {
            RawArrow::Counted(s, t, m) => (s, t, *m),
            RawArrow::Single(s, t) => (s, t, 1),
        };
        let lookup = |name: &String| {
            index.get(name.as_str()).copied().ok_or_else(|| {
                Error::Parse(format!("quiver: arrows[{k}]: unknown vertex {name:?}"))
            })
        };
        list.push((lookup(src)?, lookup(dst)?, mult));
    }
    let quiver = Quiver::from_arrows(raw.vertices.len(), &list)?;
    Ok(NamedQuiver { names: raw.vertices, quiver })
}

/// Parses a dimension vector keyed by the vertex names of `quiver`.
pub fn parse_dimension_vector_json(text: &str, quiver: &NamedQuiver) -> Result<DimensionVector> {
    let raw: HashMap<String, serde_json::Value> =
        serde_json::from_str(text).map_err(|e| json_error("dimension vector", e))?;
    if let Some(extra) = raw.keys().filter(|k| !quiver.names.contains(k)).min() {
        return Err(Error::Parse(format!("dimension vector: unknown vertex {extra:?}")));
    }
    let mut entries = Vec::with_capacity(quiver.names.len());
    for name in &quiver.names {
        let value = raw
            .get(name)
            .ok_or_else(|| Error::Parse(format!("dimension vector: missing vertex {name:?}")))?;
        match value.as_i64() {
            Some(v) if v >= 1 => entries.push(v),
            _ => {
                return Err(Error::Parse(format!(
                    "dimension vector: field {name:?} must be a positive integer, got {value}"
                )))
            }
        }
    }
    DimensionVector::new(entries)
}

/// Writes a quiver file, naming vertices by their index when no names are
/// given.
pub fn quiver_to_json(quiver: &Quiver, names: Option<&[String]>) -> String {
    let names: Vec<String> = match names {
        Some(n) => n.to_vec(),
        None => (0..quiver.vertex_count()).map(|i| i.to_string()).collect(),
    };
    let arrows = quiver
        .arrow_list()
        .into_iter()
        .map(|(i, j, m)| RawArrow::Counted(names[i].clone(), names[j].clone(), m))
        .collect();
    serde_json::to_string_pretty(&RawQuiver { vertices: names, arrows }).expect("plain data serializes")
}

/// Writes a dimension vector file keyed by `names`.
pub fn dimension_vector_to_json(d: &DimensionVector, names: &[String]) -> String {
    let map: serde_json::Map<String, serde_json::Value> =
        names.iter().cloned().zip(d.iter().map(|&v| v.into())).collect();
    serde_json::to_string_pretty(&map).expect("plain data serializes")
}
