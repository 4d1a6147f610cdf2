//! JSON-lines catalog of the registry, one record per entry.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{registry_list, Convention, Descriptor, EntryKind, IdentityError};

pub const CATALOG_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamRecord {
    pub name: String,
    pub min: i64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub optional: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub choices: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub version: u32,
    pub id: String,
    pub kind: EntryKind,
    pub summary: String,
    pub params: Vec<ParamRecord>,
    pub domain: String,
    pub convention: Convention,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub anchor: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bound: BTreeMap<String, i64>,
}

impl From<&Descriptor> for CatalogRecord {
    fn from(d: &Descriptor) -> Self {
        CatalogRecord {
            version: CATALOG_VERSION,
            id: d.id.to_string(),
            kind: d.kind,
            summary: d.summary.to_string(),
            params: d
                .params
                .iter()
                .map(|p| ParamRecord {
                    name: p.name.to_string(),
                    min: p.min,
                    optional: p.optional,
                    choices: p.choices.map(|c| {
                        c.iter().map(|&(n, d)| if d == 1 { n.to_string() } else { format!("{n}/{d}") }).collect()
                    }),
                })
                .collect(),
            domain: d.domain.to_string(),
            convention: d.convention,
            anchor: d.anchor.to_string(),
            bound: d.bound.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }
}

pub fn catalog_records() -> Vec<CatalogRecord> {
    registry_list().iter().map(CatalogRecord::from).collect()
}

pub fn catalog_to_jsonl(records: &[CatalogRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("catalog records serialize"));
        out.push('\n');
    }
    out
}

pub fn catalog_from_jsonl(text: &str) -> Result<Vec<CatalogRecord>, IdentityError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let r: CatalogRecord =
            serde_json::from_str(line).map_err(|e| IdentityError::Catalog(format!("line {}: {e}", i + 1)))?;
        if r.version != CATALOG_VERSION {
            return Err(IdentityError::Catalog(format!("line {}: unsupported version {}", i + 1, r.version)));
        }
        out.push(r);
    }
    Ok(out)
}
