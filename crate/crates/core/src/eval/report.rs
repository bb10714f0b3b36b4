use std::fmt::Write as _;
use std::str::FromStr;

use super::ConfusionMatrix;
use crate::error::{Error, Result};

/// Per-repeat results of one classifier on one dataset.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CellResult {
    pub aucs: Vec<f64>,
    pub confusions: Vec<ConfusionMatrix>,
}

impl CellResult {
    pub fn mean(&self) -> f64 {
        if self.aucs.is_empty() {
            return f64::NAN;
        }
        self.aucs.iter().sum::<f64>() / self.aucs.len() as f64
    }

    /// Sample standard deviation; 0 for a single repeat.
    pub fn sd(&self) -> f64 {
        let n = self.aucs.len();
        if n < 2 {
            return 0.0;
        }
        let m = self.mean();
        (self.aucs.iter().map(|a| (a - m).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    }
}

/// AUC results laid out as classifiers (rows) by datasets (columns).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EvalReport {
    datasets: Vec<String>,
    classifiers: Vec<String>,
    /// `cells[classifier][dataset]`
    cells: Vec<Vec<Option<CellResult>>>,
}

impl EvalReport {
    pub fn new() -> Self {
        EvalReport::default()
    }

    pub fn datasets(&self) -> &[String] {
        &self.datasets
    }

    pub fn classifiers(&self) -> &[String] {
        &self.classifiers
    }

    pub fn is_empty(&self) -> bool {
        self.cells.iter().flatten().all(Option::is_none)
    }

    fn index_of(list: &mut Vec<String>, name: &str) -> usize {
        match list.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                list.push(name.to_string());
                list.len() - 1
            }
        }
    }

    /// Stores a result, adding the row or column on first use.
    pub fn insert(&mut self, classifier: &str, dataset: &str, cell: CellResult) {
        let c = Self::index_of(&mut self.classifiers, classifier);
        let d = Self::index_of(&mut self.datasets, dataset);
        self.cells.resize_with(self.classifiers.len(), Vec::new);
        for row in &mut self.cells {
            row.resize(self.datasets.len(), None);
        }
        self.cells[c][d] = Some(cell);
    }

    pub fn get(&self, classifier: &str, dataset: &str) -> Option<&CellResult> {
        let c = self.classifiers.iter().position(|n| n == classifier)?;
        let d = self.datasets.iter().position(|n| n == dataset)?;
        self.cells[c][d].as_ref()
    }

    /// Adds every cell of `other`, keeping first-seen row and column order.
    pub fn merge(&mut self, other: EvalReport) {
        for (c, row) in other.cells.into_iter().enumerate() {
            for (d, cell) in row.into_iter().enumerate() {
                if let Some(cell) = cell {
                    self.insert(&other.classifiers[c], &other.datasets[d], cell);
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Table,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(ReportFormat::Table),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::Config(format!("unknown report format `{s}`"))),
        }
    }
}

fn cell_text(cell: Option<&CellResult>) -> String {
    match cell {
        Some(c) => format!("{:.3} ({:.3})", c.mean(), c.sd()),
        None => "-".to_string(),
    }
}

/// Renders "mean (sd)" cells, one row per classifier and one column per dataset.
pub fn emit_report(report: &EvalReport, format: ReportFormat) -> String {
    let header: Vec<&str> = std::iter::once("classifier")
        .chain(report.datasets.iter().map(String::as_str))
        .collect();
    let rows: Vec<Vec<String>> = report
        .classifiers
        .iter()
        .zip(&report.cells)
        .map(|(name, cells)| {
            std::iter::once(name.clone())
                .chain(cells.iter().map(|c| cell_text(c.as_ref())))
                .collect()
        })
        .collect();
    let mut out = String::new();
    match format {
        ReportFormat::Csv => {
            writeln!(out, "{}", header.join(",")).unwrap();
            for row in rows {
                writeln!(out, "{}", row.join(",")).unwrap();
            }
        }
        ReportFormat::Table => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(out, "{}", line(header.clone())).unwrap();
            let rule: usize = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
            writeln!(out, "{}", "-".repeat(rule)).unwrap();
            for row in &rows {
                writeln!(out, "{}", line(row.iter().map(String::as_str).collect())).unwrap();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(aucs: &[f64]) -> CellResult {
        CellResult {
            aucs: aucs.to_vec(),
            confusions: vec![ConfusionMatrix::default(); aucs.len()],
        }
    }

    #[test]
    fn mean_and_sample_sd() {
        let c = cell(&[0.7, 0.8, 0.9]);
        assert!((c.mean() - 0.8).abs() < 1e-12);
        assert!((c.sd() - 0.1).abs() < 1e-12);
        assert_eq!(cell(&[0.7]).sd(), 0.0);
    }

    #[test]
    fn single_cell_report() {
        let mut r = EvalReport::new();
        r.insert("HDDT", "pima", cell(&[0.78949]));
        let csv = emit_report(&r, ReportFormat::Csv);
        assert_eq!(csv, "classifier,pima\nHDDT,0.789 (0.000)\n");
        let table = emit_report(&r, ReportFormat::Table);
        assert_eq!(table.lines().count(), 3);
        assert!(table.lines().nth(2).unwrap().starts_with("HDDT"));
    }

    #[test]
    fn layout_follows_insertion_order() {
        let mut r = EvalReport::new();
        for (c, d) in [("CT", "breast"), ("CT", "german"), ("HDDT", "breast"), ("HDDT", "german"), ("SE", "pima")] {
            r.insert(c, d, cell(&[0.5, 0.6]));
        }
        assert_eq!(r.classifiers(), ["CT", "HDDT", "SE"]);
        assert_eq!(r.datasets(), ["breast", "german", "pima"]);
        let csv = emit_report(&r, ReportFormat::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "classifier,breast,german,pima");
        assert_eq!(lines[3], "SE,-,-,0.550 (0.071)");
    }

    #[test]
    fn merge_combines_columns() {
        let mut a = EvalReport::new();
        a.insert("HDDT", "pima", cell(&[0.7]));
        let mut b = EvalReport::new();
        b.insert("HDDT", "german", cell(&[0.6]));
        b.insert("RBFN", "german", cell(&[0.65]));
        a.merge(b);
        assert_eq!(a.datasets(), ["pima", "german"]);
        assert_eq!(a.get("RBFN", "german").unwrap().aucs, vec![0.65]);
        assert!(a.get("RBFN", "pima").is_none());
    }

    #[test]
    fn format_names_parse() {
        assert_eq!("csv".parse::<ReportFormat>().unwrap(), ReportFormat::Csv);
        assert!("xml".parse::<ReportFormat>().is_err());
    }
}
