//! Tabular datasets with mixed numeric/categorical features and binary labels.
//!
//! A [`Dataset`] is immutable once built. Learners address it through row
//! index lists, so splits and replications never copy cells.

mod encode;
pub(crate) mod loader;
mod matrix;
mod schema;
mod split;

pub use encode::{encode, fit_encoder, fit_encoder_on, ColumnEncoding, EncoderState, SD_FLOOR};
pub use loader::{load_csv, load_csv_with, LoadOptions};
pub use matrix::Matrix;
pub use schema::Schema;
pub use split::{stratified_split, SplitIndices, SplitRatios};

use crate::error::{Error, Result};

/// Binary class label. `Positive` is the majority class by default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Positive,
    Negative,
}

impl Label {
    pub fn from_bool(positive: bool) -> Self {
        if positive {
            Label::Positive
        } else {
            Label::Negative
        }
    }

    pub fn is_positive(self) -> bool {
        self == Label::Positive
    }

    /// Regression target used by the RBF network: 1 for positive, 0 for negative.
    pub fn target(self) -> f64 {
        if self.is_positive() {
            1.0
        } else {
            0.0
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Label::Positive => Label::Negative,
            Label::Negative => Label::Positive,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FeatureKind {
    Numeric,
    /// Ordered, duplicate-free, non-empty value set.
    Categorical(Vec<String>),
}

impl FeatureKind {
    pub fn categorical<S: Into<String>>(values: impl IntoIterator<Item = S>) -> Result<Self> {
        let values: Vec<String> = values.into_iter().map(Into::into).collect();
        if values.is_empty() {
            return Err(Error::Config("categorical value set is empty".into()));
        }
        for (i, v) in values.iter().enumerate() {
            if values[..i].contains(v) {
                return Err(Error::Config(format!("duplicate categorical value `{v}`")));
            }
        }
        Ok(FeatureKind::Categorical(values))
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, FeatureKind::Numeric)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Feature {
    pub name: String,
    pub kind: FeatureKind,
}

impl Feature {
    pub fn numeric(name: impl Into<String>) -> Self {
        Feature {
            name: name.into(),
            kind: FeatureKind::Numeric,
        }
    }

    pub fn categorical<S: Into<String>>(
        name: impl Into<String>,
        values: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        Ok(Feature {
            name: name.into(),
            kind: FeatureKind::categorical(values)?,
        })
    }
}

/// One cell: a numeric value or an index into the feature's value set.
///
/// A categorical index equal to the value-set length marks a value that was
/// not in the schema (only produced by lenient loading).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Num(f64),
    Cat(u32),
}

/// Names of the two classes as they appear in the label column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassNames {
    pub positive: String,
    pub negative: Option<String>,
}

impl ClassNames {
    pub fn name(&self, label: Label) -> &str {
        match label {
            Label::Positive => &self.positive,
            Label::Negative => self.negative.as_deref().unwrap_or("negative"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    schema: Schema,
    classes: ClassNames,
    cells: Vec<Cell>,
    labels: Option<Vec<Label>>,
    n: usize,
}

impl Dataset {
    /// Builds a dataset from row-major cells, checking every invariant.
    pub fn new(
        schema: Schema,
        classes: ClassNames,
        cells: Vec<Cell>,
        labels: Option<Vec<Label>>,
    ) -> Result<Self> {
        let d = schema.features().len();
        if d == 0 {
            return Err(Error::Config("dataset needs at least one feature".into()));
        }
        if cells.is_empty() || cells.len() % d != 0 {
            return Err(Error::Length(format!(
                "{} cells do not form rows of width {d}",
                cells.len()
            )));
        }
        let n = cells.len() / d;
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::Length(format!("{} labels for {n} rows", l.len())));
            }
        }
        for (i, cell) in cells.iter().enumerate() {
            let feature = &schema.features()[i % d];
            match (cell, &feature.kind) {
                (Cell::Num(v), FeatureKind::Numeric) if v.is_finite() => {}
                (Cell::Cat(c), FeatureKind::Categorical(values)) if (*c as usize) <= values.len() => {}
                _ => {
                    return Err(Error::Config(format!(
                        "row {} feature `{}`: cell {:?} does not fit the feature kind",
                        i / d,
                        feature.name,
                        cell
                    )))
                }
            }
        }
        Ok(Dataset {
            schema,
            classes,
            cells,
            labels,
            n,
        })
    }

    /// All-numeric dataset, mainly for fixtures and synthetic experiments.
    pub fn from_numeric(rows: &[Vec<f64>], labels: &[Label]) -> Result<Self> {
        let d = rows.first().map_or(0, Vec::len);
        let features = (0..d).map(|j| Feature::numeric(format!("x{j}"))).collect();
        let schema = Schema::new(features, "y", Some("pos".into()))?;
        let mut cells = Vec::with_capacity(rows.len() * d);
        for row in rows {
            if row.len() != d {
                return Err(Error::Dimension {
                    expected: d,
                    got: row.len(),
                });
            }
            cells.extend(row.iter().map(|&v| Cell::Num(v)));
        }
        let classes = ClassNames {
            positive: "pos".into(),
            negative: Some("neg".into()),
        };
        Dataset::new(schema, classes, cells, Some(labels.to_vec()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.schema.features().len()
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn features(&self) -> &[Feature] {
        self.schema.features()
    }

    pub fn classes(&self) -> &ClassNames {
        &self.classes
    }

    pub fn cell(&self, row: usize, feature: usize) -> Cell {
        self.cells[row * self.d() + feature]
    }

    pub fn row(&self, row: usize) -> &[Cell] {
        let d = self.d();
        &self.cells[row * d..(row + 1) * d]
    }

    pub fn is_labeled(&self) -> bool {
        self.labels.is_some()
    }

    pub fn labels(&self) -> Result<&[Label]> {
        self.labels.as_deref().ok_or(Error::Unlabeled)
    }

    pub fn all_rows(&self) -> Vec<usize> {
        (0..self.n).collect()
    }

    /// (positive, negative) counts over `rows`.
    pub fn class_counts(&self, rows: &[usize]) -> Result<(usize, usize)> {
        let labels = self.labels()?;
        let pos = rows.iter().filter(|&&r| labels[r].is_positive()).count();
        Ok((pos, rows.len() - pos))
    }

    /// Fails unless `rows` contain both classes.
    pub fn require_both_classes(&self, rows: &[usize]) -> Result<()> {
        let (pos, neg) = self.class_counts(rows)?;
        if pos == 0 || neg == 0 {
            return Err(Error::SingleClass);
        }
        Ok(())
    }
}

/// Population coefficient of variation of the two class counts.
///
/// With counts `a` and `b` the mean is `(a+b)/2` and the population sd is
/// `|a-b|/2`, so the ratio reduces to `|a-b|/(a+b)`.
pub fn imbalance_cv_counts(positives: usize, negatives: usize) -> f64 {
    let n = positives + negatives;
    if n == 0 {
        return 0.0;
    }
    positives.abs_diff(negatives) as f64 / n as f64
}

pub fn imbalance_cv(dataset: &Dataset) -> Result<f64> {
    let (pos, neg) = dataset.class_counts(&dataset.all_rows())?;
    Ok(imbalance_cv_counts(pos, neg))
}
