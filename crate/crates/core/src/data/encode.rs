use super::{Cell, Dataset, FeatureKind, Matrix};
use crate::error::{Error, Result};

/// Floor applied to fitted standard deviations.
pub const SD_FLOOR: f64 = 1e-12;

/// How one source feature maps onto encoded columns.
#[derive(Debug, Clone, PartialEq)]
pub enum ColumnEncoding {
    /// z-score with training-set mean and (floored) population sd.
    Standardize { feature: usize, mean: f64, sd: f64 },
    /// One column per schema value; unseen values encode as all zeros.
    OneHot { feature: usize, width: usize },
}

impl ColumnEncoding {
    pub fn feature(&self) -> usize {
        match self {
            ColumnEncoding::Standardize { feature, .. } | ColumnEncoding::OneHot { feature, .. } => *feature,
        }
    }

    pub fn width(&self) -> usize {
        match self {
            ColumnEncoding::Standardize { .. } => 1,
            ColumnEncoding::OneHot { width, .. } => *width,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EncoderState {
    columns: Vec<ColumnEncoding>,
}

impl EncoderState {
    pub fn from_columns(columns: Vec<ColumnEncoding>) -> Result<Self> {
        for c in &columns {
            if let ColumnEncoding::Standardize { mean, sd, .. } = c {
                if !mean.is_finite() || !(*sd >= SD_FLOOR) || !sd.is_finite() {
                    return Err(Error::Config(format!("invalid standardization ({mean}, {sd})")));
                }
            }
            if c.width() == 0 {
                return Err(Error::Config("one-hot block of width 0".into()));
            }
        }
        Ok(EncoderState { columns })
    }

    pub fn columns(&self) -> &[ColumnEncoding] {
        &self.columns
    }

    /// Source features covered, in encoding order.
    pub fn features(&self) -> Vec<usize> {
        self.columns.iter().map(ColumnEncoding::feature).collect()
    }

    /// Encoded width without any extra column.
    pub fn width(&self) -> usize {
        self.columns.iter().map(ColumnEncoding::width).sum()
    }

    fn check_schema(&self, dataset: &Dataset) -> Result<()> {
        for c in &self.columns {
            let feature = dataset.features().get(c.feature()).ok_or_else(|| {
                Error::SchemaMismatch(format!("encoder references feature {} of {}", c.feature(), dataset.d()))
            })?;
            let ok = match (c, &feature.kind) {
                (ColumnEncoding::Standardize { .. }, FeatureKind::Numeric) => true,
                (ColumnEncoding::OneHot { width, .. }, FeatureKind::Categorical(values)) => *width == values.len(),
                _ => false,
            };
            if !ok {
                return Err(Error::SchemaMismatch(format!(
                    "encoder does not fit feature `{}`",
                    feature.name
                )));
            }
        }
        Ok(())
    }

    /// Writes the encoding of one dataset row into `out` (length `width()`).
    pub fn encode_row_into(&self, dataset: &Dataset, row: usize, out: &mut [f64]) {
        let mut at = 0;
        for c in &self.columns {
            match (c, dataset.cell(row, c.feature())) {
                (ColumnEncoding::Standardize { mean, sd, .. }, Cell::Num(v)) => {
                    out[at] = (v - mean) / sd;
                }
                (ColumnEncoding::OneHot { width, .. }, Cell::Cat(k)) => {
                    let block = &mut out[at..at + width];
                    block.fill(0.0);
                    if let Some(slot) = block.get_mut(k as usize) {
                        *slot = 1.0;
                    }
                }
                // check_schema rules out kind mismatches before any row is encoded
                _ => unreachable!("cell kind does not match encoder column"),
            }
            at += c.width();
        }
    }
}

/// Fits an encoder on `train` rows covering every feature.
pub fn fit_encoder(dataset: &Dataset, train: &[usize]) -> Result<EncoderState> {
    let all: Vec<usize> = (0..dataset.d()).collect();
    fit_encoder_on(dataset, train, &all)
}

/// Fits an encoder on `train` rows for the listed features, in that order.
pub fn fit_encoder_on(dataset: &Dataset, train: &[usize], features: &[usize]) -> Result<EncoderState> {
    if train.is_empty() {
        return Err(Error::Empty("encoder training rows".into()));
    }
    let mut columns = Vec::with_capacity(features.len());
    for &f in features {
        let feature = dataset
            .features()
            .get(f)
            .ok_or_else(|| Error::Config(format!("feature index {f} out of range")))?;
        columns.push(match &feature.kind {
            FeatureKind::Numeric => {
                let values: Vec<f64> = train
                    .iter()
                    .map(|&r| match dataset.cell(r, f) {
                        Cell::Num(v) => v,
                        Cell::Cat(_) => unreachable!("numeric feature holds a categorical cell"),
                    })
                    .collect();
                let n = values.len() as f64;
                let mean = values.iter().sum::<f64>() / n;
                let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
                ColumnEncoding::Standardize {
                    feature: f,
                    mean,
                    sd: var.sqrt().max(SD_FLOOR),
                }
            }
            FeatureKind::Categorical(values) => ColumnEncoding::OneHot {
                feature: f,
                width: values.len(),
            },
        });
    }
    EncoderState::from_columns(columns)
}

/// Encodes `rows` as `[standardized numerics | one-hot blocks | extra]`, with
/// blocks in encoder order and the optional extra column last as 0/1.
pub fn encode(
    dataset: &Dataset,
    rows: &[usize],
    encoder: &EncoderState,
    extra_column: Option<&[bool]>,
) -> Result<Matrix> {
    if let Some(extra) = extra_column {
        if extra.len() != rows.len() {
            return Err(Error::Length(format!(
                "extra column has {} entries for {} rows",
                extra.len(),
                rows.len()
            )));
        }
    }
    encoder.check_schema(dataset)?;
    let width = encoder.width();
    let cols = width + usize::from(extra_column.is_some());
    let mut m = Matrix::zeros(rows.len(), cols);
    for (i, &r) in rows.iter().enumerate() {
        let out = m.row_mut(i);
        encoder.encode_row_into(dataset, r, &mut out[..width]);
        if let Some(extra) = extra_column {
            out[width] = if extra[i] { 1.0 } else { 0.0 };
        }
    }
    Ok(m)
}
