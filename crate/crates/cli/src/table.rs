//! Result tables and their serialization. Output is byte-stable for a
//! fixed input: row order, field order, and float rendering are all fixed.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub n: u64,
    pub volume: u64,
    pub dim: i64,
    pub value: f64,
    pub uncertainty: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub crosscheck: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    pub rows: Vec<ResultRow>,
    /// `snapped <k>`, `unsettled`, `pass`, or `fail: <reason>`.
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residuals: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl ResultTable {
    pub fn summary_for(snapped: Option<i64>) -> String {
        match snapped {
            Some(k) => format!("snapped {k}"),
            None => "unsettled".to_string(),
        }
    }

    pub fn is_unsettled(&self) -> bool {
        self.summary == "unsettled"
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format '{other}' (json or csv)")),
        }
    }
}

/// Renders a table. CSV carries the fixed header
/// `n,volume,dim,value,uncertainty,crosscheck` and only the rows; JSON
/// mirrors the whole structure and round-trips through `serde_json`.
pub fn emit(table: &ResultTable, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut text = serde_json::to_string_pretty(table).expect("tables serialize");
            text.push('\n');
            text
        }
        OutputFormat::Csv => {
            let mut out = String::from("n,volume,dim,value,uncertainty,crosscheck\n");
            for row in &table.rows {
                let cross = row.crosscheck.map(|c| c.to_string()).unwrap_or_default();
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    row.n, row.volume, row.dim, row.value, row.uncertainty, cross
                ));
            }
            out
        }
    }
}
