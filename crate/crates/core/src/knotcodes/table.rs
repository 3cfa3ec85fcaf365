use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::knotcodes::pd::{parse_pd, PlanarDiagram};
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// One knot of a table, with optional reference values of invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct KnotTableEntry {
    pub name: String,
    pub pd: PlanarDiagram,
    pub known_values: BTreeMap<String, Rational>,
}

impl KnotTableEntry {
    pub fn new(name: impl Into<String>, pd: PlanarDiagram) -> Result<Self> {
        let name = name.into();
        if name.trim().is_empty() {
            return Err(Error::Table("knot name is empty".into()));
        }
        Ok(KnotTableEntry { name, pd, known_values: BTreeMap::new() })
    }
}

fn row_error(row: usize, e: Error) -> Error {
    Error::Row { row, source: Box::new(e) }
}

/// Parses the CSV table format.
///
/// The header is `name,pd_code` followed by any number of invariant columns.
/// Invariant cells hold a rational `p/q` or are empty; a cell of the form
/// `key=p/q` names its invariant explicitly and overrides the column name.
/// Rows are numbered from 1, not counting the header.
pub fn parse_table_csv(text: &str) -> Result<Vec<KnotTableEntry>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| Error::Table(e.to_string()))?.clone();
    if header.len() < 2 || &header[0] != "name" || &header[1] != "pd_code" {
        return Err(Error::Table(format!(
            "header must start with name,pd_code; got {:?}",
            header.iter().collect::<Vec<_>>()
        )));
    }
    let columns: Vec<String> = header.iter().skip(2).map(str::to_string).collect();

    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| row_error(row, Error::Table(e.to_string())))?;
        let entry = (|| {
            let mut entry = KnotTableEntry::new(&record[0], parse_pd(&record[1])?)?;
            for (col, cell) in columns.iter().zip(record.iter().skip(2)) {
                if cell.is_empty() {
                    continue;
                }
                let (key, value) = match cell.split_once('=') {
                    Some((k, v)) => (k.trim().to_string(), v),
                    None => (col.clone(), cell),
                };
                entry.known_values.insert(key, rational::parse(value)?);
            }
            Ok(entry)
        })()
        .map_err(|e| row_error(row, e))?;
        out.push(entry);
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    name: String,
    #[serde(alias = "pd")]
    pd_code: String,
    #[serde(default)]
    known_values: BTreeMap<String, String>,
}

/// Parses the JSON table format: an array of
/// `{"name": ..., "pd_code": ..., "known_values": {"v2": "1", ...}}`.
pub fn parse_table_json(text: &str) -> Result<Vec<KnotTableEntry>> {
    let raw: Vec<serde_json::Value> =
        serde_json::from_str(text).map_err(|e| Error::Table(e.to_string()))?;
    raw.into_iter()
        .enumerate()
        .map(|(i, v)| {
            let row = i + 1;
            (|| {
                let e: JsonEntry = serde_json::from_value(v).map_err(|e| Error::Table(e.to_string()))?;
                let mut entry = KnotTableEntry::new(e.name, parse_pd(&e.pd_code)?)?;
                for (k, v) in e.known_values {
                    entry.known_values.insert(k, rational::parse(&v)?);
                }
                Ok(entry)
            })()
            .map_err(|e| row_error(row, e))
        })
        .collect()
}

/// Serializes entries in the JSON table format.
pub fn table_to_json(entries: &[KnotTableEntry]) -> String {
    let raw: Vec<JsonEntry> = entries
        .iter()
        .map(|e| JsonEntry {
            name: e.name.clone(),
            pd_code: e.pd.render(),
            known_values: e.known_values.iter().map(|(k, v)| (k.clone(), rational::to_string(v))).collect(),
        })
        .collect();
    serde_json::to_string_pretty(&raw).expect("plain data serializes")
}

/// Loads a table, choosing the format from the first non-blank character
/// (`[` for JSON, anything else for CSV).
pub fn load_table(path: impl AsRef<Path>) -> Result<Vec<KnotTableEntry>> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('[') {
        parse_table_json(&text)
    } else {
        parse_table_csv(&text)
    }
}

const BUILTIN_CSV: &str = include_str!("../../data/knots.csv");

/// The unknot and all prime knots through 8 crossings, with their Conway
/// coefficients `c2`, `c4` and determinants as reference values.
pub fn builtin_table() -> Vec<KnotTableEntry> {
    parse_table_csv(BUILTIN_CSV).expect("bundled table is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_rows() {
        let t = parse_table_csv("name,pd_code,v2\n3_1,\"[[1,4,2,5],[3,6,4,1],[5,2,6,3]]\",1\n0_1,[],\n").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].name, "3_1");
        assert_eq!(t[0].pd.n(), 3);
        assert_eq!(t[0].known_values["v2"], rational::int(1));
        assert!(t[1].known_values.is_empty());
    }

    #[test]
    fn header_only_is_empty() {
        assert!(parse_table_csv("name,pd_code\n").unwrap().is_empty());
    }

    #[test]
    fn keyed_cells() {
        let t = parse_table_csv("name,pd_code,extra\nk,[],v4=1/2\n").unwrap();
        assert_eq!(t[0].known_values["v4"], rational::frac(1, 2));
    }

    #[test]
    fn malformed_row_is_named() {
        let err = parse_table_csv("name,pd_code\n0_1,[]\nbad,\"[[1,2,3]]\"\n").unwrap_err();
        assert!(matches!(err, Error::Row { row: 2, .. }), "{err}");
        assert!(err.to_string().starts_with("row 2"));
        assert!(parse_table_csv("id,pd\n").is_err());
    }

    #[test]
    fn json_roundtrip() {
        let t = parse_table_csv("name,pd_code,c2\n3_1,\"[[1,4,2,5],[3,6,4,1],[5,2,6,3]]\",1\n").unwrap();
        let back = parse_table_json(&table_to_json(&t)).unwrap();
        assert_eq!(back, t);
        let err = parse_table_json(r#"[{"name":"x","pd":"[]"},{"name":"y"}]"#).unwrap_err();
        assert!(matches!(err, Error::Row { row: 2, .. }));
    }

    #[test]
    fn builtin_covers_eight_crossings() {
        let t = builtin_table();
        assert_eq!(t.len(), 36);
        assert_eq!(t[0].pd.n(), 0);
        assert!(t.iter().all(|e| e.pd.n() <= 8));
    }
}
