use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Class counts at a node or partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassCounts {
    pub pos: usize,
    pub neg: usize,
}

impl ClassCounts {
    pub fn new(pos: usize, neg: usize) -> Self {
        ClassCounts { pos, neg }
    }

    pub fn total(self) -> usize {
        self.pos + self.neg
    }

    pub fn is_pure(self) -> bool {
        self.pos == 0 || self.neg == 0
    }

    pub fn add(self, other: ClassCounts) -> ClassCounts {
        ClassCounts::new(self.pos + other.pos, self.neg + other.neg)
    }
}

/// Split goodness measure. Higher scores are better for every variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SplitCriterion {
    /// Hellinger distance between the class-conditional partition
    /// distributions, with the inner square roots.
    #[default]
    Hellinger,
    /// The same sum without inner square roots:
    /// `sqrt(sum_j (f+_j - f-_j)^2)`.
    HellingerAsPrinted,
    /// Gini impurity decrease.
    Gini,
    /// Information gain in bits.
    Entropy,
}

impl SplitCriterion {
    pub const ALL: [SplitCriterion; 4] = [
        SplitCriterion::Hellinger,
        SplitCriterion::HellingerAsPrinted,
        SplitCriterion::Gini,
        SplitCriterion::Entropy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SplitCriterion::Hellinger => "hellinger",
            SplitCriterion::HellingerAsPrinted => "hellinger-as-printed",
            SplitCriterion::Gini => "gini",
            SplitCriterion::Entropy => "entropy",
        }
    }

    fn is_hellinger(self) -> bool {
        matches!(self, SplitCriterion::Hellinger | SplitCriterion::HellingerAsPrinted)
    }
}

impl fmt::Display for SplitCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SplitCriterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SplitCriterion::ALL
            .into_iter()
            .find(|c| c.name() == s || c.name().replace('-', "_") == s)
            .ok_or_else(|| Error::Config(format!("unknown split criterion `{s}`")))
    }
}

/// Hellinger distance of a binary partition. `variant` must be one of the
/// two Hellinger criteria.
///
/// With `f+_j = pos_j / pos_parent` and `f-_j = neg_j / neg_parent`, the
/// canonical form is `sqrt(sum_j (sqrt(f+_j) - sqrt(f-_j))^2)`. Fractions are
/// formed from raw counts, so scaling either class by an integer factor leaves
/// the result bit-identical.
pub fn hellinger_distance(left: ClassCounts, right: ClassCounts, variant: SplitCriterion) -> Result<f64> {
    let parent = left.add(right);
    if parent.is_pure() {
        return Err(Error::PureParent {
            pos: parent.pos as f64,
            neg: parent.neg as f64,
        });
    }
    let (tp, tn) = (parent.pos as f64, parent.neg as f64);
    let sum: f64 = [left, right]
        .iter()
        .map(|part| {
            let fp = part.pos as f64 / tp;
            let fn_ = part.neg as f64 / tn;
            match variant {
                SplitCriterion::HellingerAsPrinted => (fp - fn_).powi(2),
                _ => (fp.sqrt() - fn_.sqrt()).powi(2),
            }
        })
        .sum();
    Ok(sum.sqrt())
}

fn entropy(c: ClassCounts) -> f64 {
    let n = c.total() as f64;
    [c.pos, c.neg]
        .iter()
        .filter(|&&k| k > 0)
        .map(|&k| {
            let p = k as f64 / n;
            -p * p.log2()
        })
        .sum()
}

fn gini(c: ClassCounts) -> f64 {
    let n = c.total() as f64;
    let (p, q) = (c.pos as f64 / n, c.neg as f64 / n);
    1.0 - p * p - q * q
}

/// Score of splitting `parent` into `left` and `right`.
///
/// Gini and entropy return the impurity decrease (0 on a pure parent); the
/// Hellinger variants return [`hellinger_distance`] and reject a pure parent.
pub fn criterion_score(
    parent: ClassCounts,
    left: ClassCounts,
    right: ClassCounts,
    criterion: SplitCriterion,
) -> Result<f64> {
    if left.total() == 0 || right.total() == 0 {
        return Err(Error::Empty("split child".into()));
    }
    if left.add(right) != parent {
        return Err(Error::Config(format!(
            "child counts {left:?} + {right:?} do not add up to parent {parent:?}"
        )));
    }
    if criterion.is_hellinger() {
        return hellinger_distance(left, right, criterion);
    }
    let impurity = match criterion {
        SplitCriterion::Gini => gini,
        _ => entropy,
    };
    let n = parent.total() as f64;
    let children = left.total() as f64 / n * impurity(left) + right.total() as f64 / n * impurity(right);
    Ok(impurity(parent) - children)
}
