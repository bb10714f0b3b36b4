use std::path::Path;

use super::{Cell, ClassNames, Dataset, FeatureKind, Label, Schema};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadOptions {
    /// Fail when the label column is absent.
    pub require_label: bool,
    /// Ignore columns the schema does not name and map categorical values
    /// outside the schema's value set to the "unseen" index instead of failing.
    pub lenient: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            require_label: true,
            lenient: false,
        }
    }
}

impl LoadOptions {
    /// Settings for scoring new data with a fitted model.
    pub fn for_prediction() -> Self {
        LoadOptions {
            require_label: false,
            lenient: true,
        }
    }
}

pub fn load_csv(path: impl AsRef<Path>, schema: &Schema) -> Result<Dataset> {
    load_csv_with(path, schema, LoadOptions::default())
}

pub fn load_csv_with(path: impl AsRef<Path>, schema: &Schema, opts: LoadOptions) -> Result<Dataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_csv(&text, schema, opts)
}

const MISSING_MARKERS: [&str; 3] = ["", "?", "NA"];

enum Column {
    Feature(usize),
    Label,
    Ignored,
}

pub(crate) fn parse_csv(text: &str, schema: &Schema, opts: LoadOptions) -> Result<Dataset> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty());

    let (_, header) = lines.next().ok_or(Error::Csv {
        line: 1,
        msg: "file is empty".into(),
    })?;
    let names: Vec<&str> = header.split(',').map(str::trim).collect();
    let mut columns = Vec::with_capacity(names.len());
    let mut seen = vec![false; schema.features().len()];
    let mut has_label = false;
    for (i, name) in names.iter().enumerate() {
        if names[..i].contains(name) {
            return Err(Error::Csv {
                line: 1,
                msg: format!("duplicate header column `{name}`"),
            });
        }
        if *name == schema.label() {
            has_label = true;
            columns.push(Column::Label);
        } else if let Some(f) = schema.feature_index(name) {
            seen[f] = true;
            columns.push(Column::Feature(f));
        } else if opts.lenient {
            columns.push(Column::Ignored);
        } else {
            return Err(Error::SchemaMismatch(format!(
                "header column `{name}` is not in the schema"
            )));
        }
    }
    if let Some(f) = seen.iter().position(|s| !s) {
        return Err(Error::SchemaMismatch(format!(
            "header lacks schema feature `{}`",
            schema.features()[f].name
        )));
    }
    if opts.require_label && !has_label {
        return Err(Error::SchemaMismatch(format!(
            "header lacks label column `{}`",
            schema.label()
        )));
    }

    let d = schema.features().len();
    let mut cells = Vec::new();
    let mut raw_labels: Vec<&str> = Vec::new();
    let mut row = vec![Cell::Num(0.0); d];
    for (line, text) in lines {
        let values: Vec<&str> = text.split(',').map(str::trim).collect();
        if values.len() != columns.len() {
            return Err(Error::Csv {
                line,
                msg: format!("{} cells, header has {}", values.len(), columns.len()),
            });
        }
        for ((value, column), name) in values.iter().zip(&columns).zip(&names) {
            if matches!(column, Column::Ignored) {
                continue;
            }
            if MISSING_MARKERS.contains(value) {
                return Err(Error::MissingValue {
                    line,
                    column: name.to_string(),
                });
            }
            match column {
                Column::Label => raw_labels.push(value),
                Column::Feature(f) => row[*f] = parse_cell(value, &schema.features()[*f].kind, opts, line, name)?,
                Column::Ignored => {}
            }
        }
        cells.extend_from_slice(&row);
    }
    if cells.is_empty() {
        return Err(Error::Csv {
            line: 2,
            msg: "no data rows".into(),
        });
    }

    let (classes, labels) = if has_label {
        let (classes, labels) = assign_labels(&raw_labels, schema)?;
        (classes, Some(labels))
    } else {
        let classes = ClassNames {
            positive: schema.positive().unwrap_or("positive").to_string(),
            negative: None,
        };
        (classes, None)
    };
    Dataset::new(schema.clone(), classes, cells, labels)
}

fn parse_cell(value: &str, kind: &FeatureKind, opts: LoadOptions, line: usize, column: &str) -> Result<Cell> {
    match kind {
        FeatureKind::Numeric => match value.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Cell::Num(v)),
            _ => Err(Error::Csv {
                line,
                msg: format!("column `{column}`: `{value}` is not a finite number"),
            }),
        },
        FeatureKind::Categorical(values) => match values.iter().position(|v| v == value) {
            Some(i) => Ok(Cell::Cat(i as u32)),
            None if opts.lenient => Ok(Cell::Cat(values.len() as u32)),
            None => Err(Error::Csv {
                line,
                msg: format!("column `{column}`: `{value}` is not in the schema value set"),
            }),
        },
    }
}

/// Assigns polarity: the schema's declared positive value, else the more
/// frequent label (ties go to the label seen first).
fn assign_labels(raw: &[&str], schema: &Schema) -> Result<(ClassNames, Vec<Label>)> {
    let mut distinct: Vec<(&str, usize)> = Vec::new();
    for &v in raw {
        match distinct.iter_mut().find(|(name, _)| *name == v) {
            Some((_, count)) => *count += 1,
            None => distinct.push((v, 1)),
        }
    }
    if distinct.len() > 2 {
        return Err(Error::TooManyLabels {
            column: schema.label().to_string(),
            count: distinct.len(),
        });
    }
    let (positive, negative) = match schema.positive() {
        Some(p) => {
            let others: Vec<&str> = distinct.iter().map(|(n, _)| *n).filter(|n| *n != p).collect();
            if others.len() > 1 {
                return Err(Error::SchemaMismatch(format!(
                    "declared positive class `{p}` does not occur in label column `{}`",
                    schema.label()
                )));
            }
            (p.to_string(), others.first().map(|s| s.to_string()))
        }
        None => {
            let mut order: Vec<(usize, &str, usize)> =
                distinct.iter().enumerate().map(|(i, (n, c))| (i, *n, *c)).collect();
            order.sort_by(|a, b| b.2.cmp(&a.2).then(a.0.cmp(&b.0)));
            (order[0].1.to_string(), order.get(1).map(|o| o.1.to_string()))
        }
    };
    let labels = raw.iter().map(|v| Label::from_bool(*v == positive)).collect();
    Ok((ClassNames { positive, negative }, labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn schema() -> Schema {
        Schema::parse("x numeric\nc categorical a b c\nlabel y\n").unwrap()
    }

    fn parse(text: &str) -> Result<Dataset> {
        parse_csv(text, &schema(), LoadOptions::default())
    }

    #[test]
    fn majority_label_is_positive_by_default() {
        let ds = parse("x,c,y\n1,a,no\n2,b,yes\n3,c,yes\n").unwrap();
        assert_eq!(ds.n(), 3);
        assert_eq!(ds.classes().positive, "yes");
        assert_eq!(ds.classes().negative.as_deref(), Some("no"));
        assert_eq!(ds.class_counts(&ds.all_rows()).unwrap(), (2, 1));
        assert_eq!(ds.cell(1, 1), Cell::Cat(1));
    }

    #[test]
    fn declared_positive_overrides_frequency() {
        let s = Schema::parse("x numeric\nc categorical a b c\nlabel y positive=no\n").unwrap();
        let ds = parse_csv("x,c,y\n1,a,no\n2,b,yes\n3,c,yes\n", &s, LoadOptions::default()).unwrap();
        assert_eq!(ds.labels().unwrap()[0], Label::Positive);
        assert_eq!(ds.class_counts(&ds.all_rows()).unwrap(), (1, 2));
    }

    #[test]
    fn label_column_may_sit_anywhere() {
        let ds = parse("y,c,x\nno,a,1.5\n").unwrap();
        assert_eq!(ds.cell(0, 0), Cell::Num(1.5));
        assert_eq!(ds.n(), 1);
    }

    #[test]
    fn single_row_single_feature() {
        let s = Schema::parse("x numeric\nlabel y\n").unwrap();
        let ds = parse_csv("x,y\n0.25,yes\n", &s, LoadOptions::default()).unwrap();
        assert_eq!((ds.n(), ds.d()), (1, 1));
    }

    #[test]
    fn three_label_values_rejected() {
        let err = parse("x,c,y\n1,a,p\n2,a,q\n3,a,r\n").unwrap_err();
        assert!(matches!(err, Error::TooManyLabels { count: 3, .. }));
    }

    #[test]
    fn missing_and_unparseable_cells_rejected() {
        assert!(matches!(parse("x,c,y\n,a,p\n").unwrap_err(), Error::MissingValue { line: 2, .. }));
        assert!(matches!(parse("x,c,y\n1,?,p\n").unwrap_err(), Error::MissingValue { .. }));
        assert!(matches!(parse("x,c,y\nabc,a,p\n").unwrap_err(), Error::Csv { line: 2, .. }));
        assert!(matches!(parse("x,c,y\nNaN,a,p\n").unwrap_err(), Error::Csv { .. }));
        assert!(matches!(parse("x,c,y\n1,d,p\n").unwrap_err(), Error::Csv { .. }));
        assert!(matches!(parse("x,c,y\n1,a\n").unwrap_err(), Error::Csv { .. }));
    }

    #[test]
    fn header_must_match_schema() {
        assert!(matches!(parse("x,y\n1,p\n").unwrap_err(), Error::SchemaMismatch(_)));
        assert!(matches!(parse("x,c,z,y\n1,a,2,p\n").unwrap_err(), Error::SchemaMismatch(_)));
        assert!(matches!(parse("x,c\n1,a\n").unwrap_err(), Error::SchemaMismatch(_)));
    }

    #[test]
    fn lenient_mode_for_prediction() {
        let ds = parse_csv("extra,c,x\nfoo,zzz,1\n", &schema(), LoadOptions::for_prediction()).unwrap();
        assert!(!ds.is_labeled());
        assert_eq!(ds.cell(0, 1), Cell::Cat(3));
        assert!(matches!(ds.labels(), Err(Error::Unlabeled)));
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_csv("/nonexistent/definitely/missing.csv", &schema()).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }
}
