use super::criterion::{criterion_score, ClassCounts, SplitCriterion};
use crate::data::{Cell, Dataset, FeatureKind, Label};

/// Binary routing rule at an internal node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SplitRule {
    /// `value < threshold` goes left.
    Numeric { feature: usize, threshold: f64 },
    /// `value == category` goes left; everything else, including values
    /// unseen at training time, goes right.
    Categorical { feature: usize, category: u32 },
}

impl SplitRule {
    pub fn feature(&self) -> usize {
        match *self {
            SplitRule::Numeric { feature, .. } | SplitRule::Categorical { feature, .. } => feature,
        }
    }

    pub fn goes_left(&self, cell: Cell) -> bool {
        match (*self, cell) {
            (SplitRule::Numeric { threshold, .. }, Cell::Num(v)) => v < threshold,
            (SplitRule::Categorical { category, .. }, Cell::Cat(c)) => c == category,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Split {
    pub rule: SplitRule,
    pub score: f64,
    pub left: ClassCounts,
    pub right: ClassCounts,
}

/// Scores closer than this are ties. Mathematically equal scores reached
/// from different counts can differ in the last bits.
pub const SCORE_TOLERANCE: f64 = 1e-12;

/// Threshold between two adjacent distinct values `lo < hi`, in `(lo, hi]`.
pub(crate) fn midpoint(lo: f64, hi: f64) -> f64 {
    let mid = lo + (hi - lo) / 2.0;
    if mid > lo {
        mid
    } else {
        hi
    }
}

/// Highest-scoring split of `rows` over every feature.
///
/// Numeric features are cut at midpoints between adjacent distinct values;
/// categorical features use each present value against the rest. Ties keep
/// the lowest feature index, then the lowest threshold or category. Returns
/// `None` when no candidate exists or none scores above [`SCORE_TOLERANCE`].
pub fn best_split(dataset: &Dataset, rows: &[usize], criterion: SplitCriterion) -> Option<Split> {
    let labels = dataset.labels().ok()?;
    let parent = count(labels, rows);
    let mut best: Option<Split> = None;
    let mut offer = |candidate: Split| {
        let threshold = best.map_or(0.0, |b| b.score);
        if candidate.score > threshold + SCORE_TOLERANCE {
            best = Some(candidate);
        }
    };
    for (f, feature) in dataset.features().iter().enumerate() {
        match &feature.kind {
            FeatureKind::Numeric => {
                let mut values: Vec<(f64, Label)> = rows
                    .iter()
                    .map(|&r| match dataset.cell(r, f) {
                        Cell::Num(v) => (v, labels[r]),
                        Cell::Cat(_) => unreachable!("numeric feature holds a categorical cell"),
                    })
                    .collect();
                values.sort_by(|a, b| a.0.total_cmp(&b.0));
                let mut left = ClassCounts::default();
                for i in 0..values.len().saturating_sub(1) {
                    if values[i].1.is_positive() {
                        left.pos += 1;
                    } else {
                        left.neg += 1;
                    }
                    let (lo, hi) = (values[i].0, values[i + 1].0);
                    if lo == hi {
                        continue;
                    }
                    let right = ClassCounts::new(parent.pos - left.pos, parent.neg - left.neg);
                    if let Ok(score) = criterion_score(parent, left, right, criterion) {
                        offer(Split {
                            rule: SplitRule::Numeric {
                                feature: f,
                                threshold: midpoint(lo, hi),
                            },
                            score,
                            left,
                            right,
                        });
                    }
                }
            }
            FeatureKind::Categorical(values) => {
                // one extra slot for the unseen marker
                let mut per_value = vec![ClassCounts::default(); values.len() + 1];
                for &r in rows {
                    if let Cell::Cat(c) = dataset.cell(r, f) {
                        let slot = &mut per_value[(c as usize).min(values.len())];
                        if labels[r].is_positive() {
                            slot.pos += 1;
                        } else {
                            slot.neg += 1;
                        }
                    }
                }
                for (v, &left) in per_value.iter().enumerate().take(values.len()) {
                    if left.total() == 0 || left.total() == parent.total() {
                        continue;
                    }
                    let right = ClassCounts::new(parent.pos - left.pos, parent.neg - left.neg);
                    if let Ok(score) = criterion_score(parent, left, right, criterion) {
                        offer(Split {
                            rule: SplitRule::Categorical {
                                feature: f,
                                category: v as u32,
                            },
                            score,
                            left,
                            right,
                        });
                    }
                }
            }
        }
    }
    best
}

pub(crate) fn count(labels: &[Label], rows: &[usize]) -> ClassCounts {
    let pos = rows.iter().filter(|&&r| labels[r].is_positive()).count();
    ClassCounts::new(pos, rows.len() - pos)
}
