//! Reading and writing table files.
//!
//! ```text
//! { "group": "A5", "order": 60,
//!   "classes": [ {"name": "1a", "order": 1, "centralizer": 60, "in_socle": true}, ... ],
//!   "irreducibles": [ [1, 1, 1, 1, 1], ... ] }
//! ```
//! Integers may exceed 64 bits; they are read exactly.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::Deserialize;
use serde_json::Value;

use super::{CharacterTable, ClassInfo, TableError};
use crate::cyclo::Cyclotomic;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassRecord {
    name: String,
    order: Value,
    centralizer: Value,
    in_socle: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableRecord {
    group: String,
    order: Value,
    classes: Vec<ClassRecord>,
    irreducibles: Vec<Vec<Value>>,
}

fn biguint(v: &Value, what: &str) -> Result<BigUint, TableError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(TableError::Parse(format!("{what}: expected an integer"))),
    };
    text.trim()
        .parse::<BigUint>()
        .map_err(|_| TableError::Parse(format!("{what}: not a nonnegative integer: {text}")))
}

/// Resolves `path`, falling back to `path.json` when the bare path does not exist.
pub(crate) fn resolve(path: &Path) -> PathBuf {
    if !path.exists() {
        let mut with_ext = path.as_os_str().to_owned();
        with_ext.push(".json");
        let alt = PathBuf::from(with_ext);
        if alt.exists() {
            return alt;
        }
    }
    path.to_path_buf()
}

pub fn load_table(path: impl AsRef<Path>) -> Result<CharacterTable, TableError> {
    let path = resolve(path.as_ref());
    let text = std::fs::read_to_string(&path).map_err(|source| TableError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_table(&text)
}

pub fn parse_table(text: &str) -> Result<CharacterTable, TableError> {
    let rec: TableRecord =
        serde_json::from_str(text).map_err(|e| TableError::Parse(e.to_string()))?;
    let order = biguint(&rec.order, "group order")?;
    let classes = rec
        .classes
        .into_iter()
        .map(|c| {
            let element_order = u64::try_from(biguint(&c.order, &c.name)?)
                .map_err(|_| TableError::Parse(format!("{}: element order too large", c.name)))?;
            Ok(ClassInfo {
                centralizer_order: biguint(&c.centralizer, &c.name)?,
                name: c.name,
                element_order,
                in_socle: c.in_socle,
            })
        })
        .collect::<Result<Vec<_>, TableError>>()?;
    let irreducibles = rec
        .irreducibles
        .iter()
        .map(|row| row.iter().map(Cyclotomic::from_json).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    CharacterTable::new(rec.group, order, classes, irreducibles)
}

impl CharacterTable {
    /// Serializes in the table file format, one class or character per line.
    pub fn to_file_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{{");
        let _ = writeln!(s, "  \"group\": {},", Value::String(self.group_name.clone()));
        let _ = writeln!(s, "  \"order\": {},", self.group_order);
        let _ = writeln!(s, "  \"classes\": [");
        for (i, c) in self.classes.iter().enumerate() {
            let _ = writeln!(
                s,
                "    {{\"name\": {}, \"order\": {}, \"centralizer\": {}, \"in_socle\": {}}}{}",
                Value::String(c.name.clone()),
                c.element_order,
                c.centralizer_order,
                c.in_socle,
                if i + 1 < self.classes.len() { "," } else { "" }
            );
        }
        let _ = writeln!(s, "  ],");
        let _ = writeln!(s, "  \"irreducibles\": [");
        for (i, row) in self.irreducibles.iter().enumerate() {
            let vals: Vec<String> = row.iter().map(|v| v.to_json().to_string()).collect();
            let _ = writeln!(
                s,
                "    [{}]{}",
                vals.join(", "),
                if i + 1 < self.irreducibles.len() { "," } else { "" }
            );
        }
        let _ = writeln!(s, "  ]");
        let _ = writeln!(s, "}}");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A5_SHORT: &str = r#"{
      "group": "A5", "order": 60,
      "classes": [
        {"name": "1a", "order": 1, "centralizer": 60, "in_socle": true},
        {"name": "2a", "order": 2, "centralizer": 4, "in_socle": true},
        {"name": "3a", "order": 3, "centralizer": 3, "in_socle": true},
        {"name": "5a", "order": 5, "centralizer": 5, "in_socle": true},
        {"name": "5b", "order": 5, "centralizer": 5, "in_socle": true}
      ],
      "irreducibles": [
        [1, 1, 1, 1, 1],
        [3, -1, 0, {"n":5,"terms":[[1,-1,1],[4,-1,1]]}, {"n":5,"terms":[[2,-1,1],[3,-1,1]]}],
        [3, -1, 0, {"n":5,"terms":[[2,-1,1],[3,-1,1]]}, {"n":5,"terms":[[1,-1,1],[4,-1,1]]}],
        [4, 0, 1, -1, -1]
      ]
    }"#;

    #[test]
    fn missing_row_is_dimension_mismatch() {
        let err = parse_table(A5_SHORT).unwrap_err();
        assert!(matches!(err, TableError::DimensionMismatch(_)), "{err}");
    }

    #[test]
    fn malformed_json_is_parse_error() {
        assert!(matches!(parse_table("{\"group\": 3"), Err(TableError::Parse(_))));
        let unknown_field = A5_SHORT.replace("\"in_socle\": true}", "\"in_socle\": true, \"x\": 1}");
        assert!(matches!(parse_table(&unknown_field), Err(TableError::Parse(_))));
    }

    #[test]
    fn huge_order_is_exact() {
        let text = r#"{"group": "T", "order": 808017424794512875886459904961710757005754368000000000,
            "classes": [{"name": "1a", "order": 1, "centralizer": 808017424794512875886459904961710757005754368000000000, "in_socle": true}],
            "irreducibles": [[1]]}"#;
        let t = parse_table(text).unwrap();
        assert_eq!(t.group_order().to_string(), "808017424794512875886459904961710757005754368000000000");
        let again = parse_table(&t.to_file_string()).unwrap();
        assert_eq!(again, t);
    }
}
