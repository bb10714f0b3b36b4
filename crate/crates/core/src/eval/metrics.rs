use crate::data::Label;
use crate::error::{Error, Result};

/// Counts with the positive (majority) class as the "positive" row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConfusionMatrix {
    pub tp: usize,
    pub fn_: usize,
    pub fp: usize,
    pub tn: usize,
}

impl ConfusionMatrix {
    pub fn actual_positives(&self) -> usize {
        self.tp + self.fn_
    }

    pub fn actual_negatives(&self) -> usize {
        self.fp + self.tn
    }

    pub fn total(&self) -> usize {
        self.actual_positives() + self.actual_negatives()
    }

    fn check(&self) -> Result<()> {
        if self.actual_positives() == 0 || self.actual_negatives() == 0 {
            return Err(Error::Empty(format!(
                "a class is absent from the actual labels (positives {}, negatives {})",
                self.actual_positives(),
                self.actual_negatives()
            )));
        }
        Ok(())
    }

    /// TP / (TP + FN).
    pub fn sensitivity(&self) -> Result<f64> {
        self.check()?;
        Ok(self.tp as f64 / self.actual_positives() as f64)
    }

    /// TN / (FP + TN).
    pub fn specificity(&self) -> Result<f64> {
        self.check()?;
        Ok(self.tn as f64 / self.actual_negatives() as f64)
    }
}

pub fn confusion(actual: &[Label], predicted: &[Label]) -> Result<ConfusionMatrix> {
    if actual.len() != predicted.len() {
        return Err(Error::Length(format!(
            "{} actual labels, {} predictions",
            actual.len(),
            predicted.len()
        )));
    }
    if actual.is_empty() {
        return Err(Error::Empty("label lists".into()));
    }
    let mut cm = ConfusionMatrix::default();
    for (a, p) in actual.iter().zip(predicted) {
        match (a, p) {
            (Label::Positive, Label::Positive) => cm.tp += 1,
            (Label::Positive, Label::Negative) => cm.fn_ += 1,
            (Label::Negative, Label::Positive) => cm.fp += 1,
            (Label::Negative, Label::Negative) => cm.tn += 1,
        }
    }
    Ok(cm)
}

/// `(sensitivity + specificity) / 2` at the classifier's single operating
/// point. This is balanced accuracy, reported under the name AUC.
pub fn auc(cm: &ConfusionMatrix) -> Result<f64> {
    Ok((cm.sensitivity()? + cm.specificity()?) / 2.0)
}
