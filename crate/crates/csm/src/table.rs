//! The expansion of a CSM class as a table of `(β, γ)` rows, in JSON, CSV and
//! a human-readable form.
//!
//! Coefficients always travel as exact decimal strings in JSON; CSV writes
//! them as bare integers. Rows are ordered by `|β|` descending, then
//! colexicographically.

use std::fmt;

use csm_core::{Partition, SchubertExpansion};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::serde_util;
use crate::TOOL_VERSION;

/// Identifies the summation formula in table metadata.
pub const FORMULA_ID: &str = "aluffi-mihalcea-binomial-determinant";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    /// `c_SM(S(α)°)`
    Cell,
    /// `c_SM(S(α))`
    Variety,
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableKind::Cell => "cell",
            TableKind::Variety => "variety",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    #[serde(with = "serde_util::partition")]
    pub beta: Partition,
    #[serde(with = "serde_util::bigint")]
    pub gamma: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableMeta {
    pub tool_version: String,
    /// RFC 3339; absent in deterministic output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    pub d: usize,
    pub formula: String,
}

impl TableMeta {
    pub fn new(d: usize, timestamp: Option<String>) -> Self {
        TableMeta { tool_version: TOOL_VERSION.to_string(), timestamp, d, formula: FORMULA_ID.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    #[serde(with = "serde_util::partition")]
    pub alpha: Partition,
    pub kind: TableKind,
    pub rows: Vec<TableRow>,
    pub meta: TableMeta,
}

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error("invalid JSON table: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid CSV table: {0}")]
    Csv(#[from] csv::Error),
    #[error("invalid table: {0}")]
    Invalid(String),
}

fn sort_rows(rows: &mut [TableRow]) {
    rows.sort_by(|a, b| {
        b.beta.cell_dimension().cmp(&a.beta.cell_dimension()).then_with(|| a.beta.cmp(&b.beta))
    });
}

impl TableDocument {
    pub fn from_expansion(expansion: &SchubertExpansion, kind: TableKind, timestamp: Option<String>) -> Self {
        let alpha = expansion.base().clone();
        let rows = expansion
            .graded_terms()
            .into_iter()
            .map(|(beta, gamma)| TableRow { beta: beta.clone(), gamma: gamma.clone() })
            .collect();
        let meta = TableMeta::new(alpha.len(), timestamp);
        TableDocument { alpha, kind, rows, meta }
    }

    pub fn to_expansion(&self) -> csm_core::Result<SchubertExpansion> {
        SchubertExpansion::from_terms(self.alpha.clone(), self.rows.iter().map(|r| (r.beta.clone(), r.gamma.clone())))
    }

    fn validate(&self) -> Result<(), TableError> {
        if self.meta.d != self.alpha.len() {
            return Err(TableError::Invalid(format!("meta.d = {} but alpha has {} parts", self.meta.d, self.alpha.len())));
        }
        for row in &self.rows {
            if !row.beta.is_subpartition(&self.alpha).map_err(|e| TableError::Invalid(e.to_string()))? {
                return Err(TableError::Invalid(format!("row ({}) is not contained in ({})", row.beta, self.alpha)));
            }
        }
        let mut sorted = self.rows.clone();
        sort_rows(&mut sorted);
        if sorted != self.rows {
            return Err(TableError::Invalid("rows are not in canonical order".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, TableError> {
        let doc: TableDocument = serde_json::from_str(text)?;
        doc.validate()?;
        Ok(doc)
    }

    /// Header `beta,gamma`; `β` quoted and comma joined. Only the rows are
    /// written, so reading back needs the kind and metadata from elsewhere.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("beta,gamma\n");
        for row in &self.rows {
            out += &format!("\"{}\",{}\n", row.beta, row.gamma);
        }
        out
    }

    /// Reads rows written by [`to_csv`](Self::to_csv). `α` is recovered as
    /// the termwise maximum of the rows.
    pub fn from_csv(text: &str, kind: TableKind, mut meta: TableMeta) -> Result<Self, TableError> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let headers = reader.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["beta", "gamma"] {
            return Err(TableError::Invalid(format!("unexpected header {headers:?}")));
        }
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record?;
            let beta: Partition = record[0].parse().map_err(|e: csm_core::Error| TableError::Invalid(e.to_string()))?;
            let gamma: BigInt =
                record[1].parse().map_err(|_| TableError::Invalid(format!("bad coefficient {:?}", &record[1])))?;
            rows.push(TableRow { beta, gamma });
        }
        let first = rows.first().ok_or_else(|| TableError::Invalid("no rows".into()))?;
        let mut top = first.beta.parts().to_vec();
        for row in &rows {
            if row.beta.len() != top.len() {
                return Err(TableError::Invalid("rows have different lengths".into()));
            }
            for (t, &x) in top.iter_mut().zip(row.beta.parts()) {
                *t = (*t).max(x);
            }
        }
        let alpha = Partition::new(top).map_err(|e| TableError::Invalid(e.to_string()))?;
        meta.d = alpha.len();
        let doc = TableDocument { alpha, kind, rows, meta };
        doc.validate()?;
        Ok(doc)
    }

    /// `c_SM(S(2)) = 1*S(2) + 3*S(1) + 3*S(0)`
    pub fn to_pretty(&self) -> String {
        let name = match self.kind {
            TableKind::Cell => format!("c_SM(S({})^o)", self.alpha),
            TableKind::Variety => format!("c_SM(S({}))", self.alpha),
        };
        let mut out = format!("{name} =");
        if self.rows.is_empty() {
            out += " 0";
        }
        for (i, row) in self.rows.iter().enumerate() {
            let negative = row.gamma < BigInt::default();
            let magnitude = if negative { -row.gamma.clone() } else { row.gamma.clone() };
            let sign = match (i, negative) {
                (0, false) => " ",
                (0, true) => " -",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            out += &format!("{sign}{magnitude}*S({})", row.beta);
        }
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn doc(alpha: &str, kind: TableKind) -> TableDocument {
        let alpha: Partition = alpha.parse().unwrap();
        let e = match kind {
            TableKind::Cell => csm_core::csm_cell(&alpha),
            TableKind::Variety => csm_core::csm_variety(&alpha),
        };
        TableDocument::from_expansion(&e, kind, None)
    }

    #[test]
    fn single_box_cell_csv() {
        assert_eq!(doc("1", TableKind::Cell).to_csv(), "beta,gamma\n\"1\",1\n\"0\",1\n");
    }

    #[test]
    fn variety_pretty() {
        assert_eq!(doc("2", TableKind::Variety).to_pretty(), "c_SM(S(2)) = 1*S(2) + 3*S(1) + 3*S(0)\n");
    }

    #[test]
    fn json_shape() {
        let d = doc("3,2,1", TableKind::Cell);
        assert_eq!(d.rows.len(), 14);
        let v: serde_json::Value = serde_json::from_str(&d.to_json()).unwrap();
        assert_eq!(v["alpha"], serde_json::json!([3, 2, 1]));
        assert_eq!(v["kind"], "cell");
        let row = v["rows"].as_array().unwrap().iter().find(|r| r["beta"] == serde_json::json!([2, 0, 0])).unwrap();
        assert_eq!(row["gamma"], "11");
        assert_eq!(v["meta"]["formula"], FORMULA_ID);
        assert_eq!(v["meta"]["d"], 3);
        assert!(v["meta"].get("timestamp").is_none());
    }

    #[test]
    fn rejects_bad_json() {
        let mut d = doc("2,1", TableKind::Cell);
        d.rows.reverse();
        assert!(matches!(TableDocument::from_json(&d.to_json()), Err(TableError::Invalid(_))));
        assert!(TableDocument::from_json("{\"alpha\":[1,2]}").is_err());
        let good = doc("2,1", TableKind::Cell).to_json();
        let numeric = good.replace("\"gamma\":\"1\"", "\"gamma\":1");
        assert_ne!(numeric, good);
        assert!(TableDocument::from_json(&good).is_ok());
        assert!(TableDocument::from_json(&numeric).is_err());
    }

    #[test]
    fn negative_coefficients_render() {
        let alpha: Partition = "1,0".parse().unwrap();
        let mut e = SchubertExpansion::zero(alpha);
        e.add_term("1,0".parse().unwrap(), BigInt::from(-2)).unwrap();
        e.add_term("0,0".parse().unwrap(), BigInt::from(-1)).unwrap();
        let d = TableDocument::from_expansion(&e, TableKind::Cell, None);
        assert_eq!(d.to_pretty(), "c_SM(S(1,0)^o) = -2*S(1,0) - 1*S(0,0)\n");
    }

    proptest! {
        #[test]
        fn json_and_csv_round_trip(
            parts in prop::collection::vec(0u32..4, 1..4),
            variety in any::<bool>(),
            stamp in any::<bool>(),
        ) {
            let mut parts = parts;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let alpha = Partition::new(parts).unwrap();
            let (kind, e) = if variety {
                (TableKind::Variety, csm_core::csm_variety(&alpha))
            } else {
                (TableKind::Cell, csm_core::csm_cell(&alpha))
            };
            let d = TableDocument::from_expansion(&e, kind, stamp.then(|| "2026-01-01T00:00:00+00:00".to_string()));
            prop_assert_eq!(&TableDocument::from_json(&d.to_json()).unwrap(), &d);
            prop_assert_eq!(&TableDocument::from_csv(&d.to_csv(), kind, d.meta.clone()).unwrap(), &d);
            prop_assert_eq!(d.to_expansion().unwrap(), e);
        }
    }
}
