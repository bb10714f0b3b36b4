//! Unpruned binary decision trees.
//!
//! Growth stops only through the minsplit rule: a node with fewer than `α`
//! training samples, or a single class, or no positive-scoring split becomes
//! a leaf labeled by plurality. Plurality ties go to the negative (minority)
//! class.

mod criterion;
pub(crate) mod serial;
mod split;

pub use criterion::{criterion_score, hellinger_distance, ClassCounts, SplitCriterion};
pub use split::{best_split, Split, SplitRule, SCORE_TOLERANCE};

use crate::data::{Cell, Dataset, FeatureKind, Label};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum TreeNode {
    Internal {
        rule: SplitRule,
        left: Box<TreeNode>,
        right: Box<TreeNode>,
    },
    Leaf {
        label: Label,
        counts: ClassCounts,
    },
}

impl TreeNode {
    fn leaf(counts: ClassCounts) -> TreeNode {
        TreeNode::Leaf {
            label: plurality(counts),
            counts,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, TreeNode::Leaf { .. })
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<(Label, ClassCounts)> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            match node {
                TreeNode::Leaf { label, counts } => out.push((*label, *counts)),
                TreeNode::Internal { left, right, .. } => {
                    stack.push(right);
                    stack.push(left);
                }
            }
        }
        out
    }

    pub fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Internal { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }
}

/// Plurality label; ties go to the negative class.
pub fn plurality(counts: ClassCounts) -> Label {
    Label::from_bool(counts.pos > counts.neg)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreeModel {
    root: TreeNode,
    criterion: SplitCriterion,
    minsplit: usize,
    importances: Vec<f64>,
}

/// `max(2, ceil(fraction * train_rows))`.
pub fn minsplit_from_fraction(fraction: f64, train_rows: usize) -> usize {
    ((fraction * train_rows as f64 - 1e-9).ceil() as usize).max(2)
}

pub fn fit_tree(dataset: &Dataset, rows: &[usize], criterion: SplitCriterion, minsplit: usize) -> Result<TreeModel> {
    if minsplit < 2 {
        return Err(Error::Config(format!("minsplit must be at least 2, got {minsplit}")));
    }
    dataset.require_both_classes(rows)?;
    let labels = dataset.labels()?;
    let mut gains = vec![0.0; dataset.d()];
    let root_n = rows.len() as f64;
    let root = grow(dataset, labels, rows.to_vec(), criterion, minsplit, root_n, &mut gains);
    let total: f64 = gains.iter().sum();
    if total > 0.0 {
        gains.iter_mut().for_each(|g| *g /= total);
    }
    Ok(TreeModel {
        root,
        criterion,
        minsplit,
        importances: gains,
    })
}

fn grow(
    dataset: &Dataset,
    labels: &[Label],
    rows: Vec<usize>,
    criterion: SplitCriterion,
    minsplit: usize,
    root_n: f64,
    gains: &mut [f64],
) -> TreeNode {
    let counts = split::count(labels, &rows);
    if rows.len() < minsplit || counts.is_pure() {
        return TreeNode::leaf(counts);
    }
    let Some(best) = best_split(dataset, &rows, criterion) else {
        return TreeNode::leaf(counts);
    };
    gains[best.rule.feature()] += rows.len() as f64 / root_n * best.score;
    let f = best.rule.feature();
    let (left, right): (Vec<usize>, Vec<usize>) =
        rows.into_iter().partition(|&r| best.rule.goes_left(dataset.cell(r, f)));
    TreeNode::Internal {
        rule: best.rule,
        left: Box::new(grow(dataset, labels, left, criterion, minsplit, root_n, gains)),
        right: Box::new(grow(dataset, labels, right, criterion, minsplit, root_n, gains)),
    }
}

impl TreeModel {
    pub fn root(&self) -> &TreeNode {
        &self.root
    }

    pub fn criterion(&self) -> SplitCriterion {
        self.criterion
    }

    pub fn minsplit(&self) -> usize {
        self.minsplit
    }

    /// Size-weighted split scores per feature, normalized to sum to 1
    /// (all zero for a leaf-only tree).
    pub fn importances(&self) -> &[f64] {
        &self.importances
    }

    pub fn n_features(&self) -> usize {
        self.importances.len()
    }

    pub fn predict_row(&self, row: &[Cell]) -> Label {
        let mut node = &self.root;
        loop {
            match node {
                TreeNode::Leaf { label, .. } => return *label,
                TreeNode::Internal { rule, left, right } => {
                    node = if rule.goes_left(row[rule.feature()]) { left } else { right };
                }
            }
        }
    }

    /// Fails unless every rule matches the kind and value set of `dataset`.
    pub fn check_schema(&self, dataset: &Dataset) -> Result<()> {
        if dataset.d() != self.n_features() {
            return Err(Error::SchemaMismatch(format!(
                "tree was fit on {} features, data has {}",
                self.n_features(),
                dataset.d()
            )));
        }
        let mut stack = vec![&self.root];
        while let Some(node) = stack.pop() {
            if let TreeNode::Internal { rule, left, right } = node {
                let kind = &dataset.features()[rule.feature()].kind;
                let ok = match (rule, kind) {
                    (SplitRule::Numeric { .. }, FeatureKind::Numeric) => true,
                    (SplitRule::Categorical { category, .. }, FeatureKind::Categorical(values)) => {
                        (*category as usize) < values.len()
                    }
                    _ => false,
                };
                if !ok {
                    return Err(Error::SchemaMismatch(format!(
                        "split on feature `{}` does not match its kind",
                        dataset.features()[rule.feature()].name
                    )));
                }
                stack.push(left);
                stack.push(right);
            }
        }
        Ok(())
    }

    pub(crate) fn from_parts(
        root: TreeNode,
        criterion: SplitCriterion,
        minsplit: usize,
        importances: Vec<f64>,
    ) -> TreeModel {
        TreeModel {
            root,
            criterion,
            minsplit,
            importances,
        }
    }
}

pub fn predict_tree(model: &TreeModel, dataset: &Dataset, rows: &[usize]) -> Result<Vec<Label>> {
    model.check_schema(dataset)?;
    Ok(rows.iter().map(|&r| model.predict_row(dataset.row(r))).collect())
}

/// Features by descending importance (ties: lower index first), keeping only
/// features with positive importance, truncated to `top_m` when given.
pub fn rank_features(model: &TreeModel, top_m: Option<usize>) -> Vec<usize> {
    let imp = model.importances();
    let mut order: Vec<usize> = (0..imp.len()).filter(|&f| imp[f] > 0.0).collect();
    order.sort_by(|&a, &b| imp[b].total_cmp(&imp[a]).then(a.cmp(&b)));
    if let Some(m) = top_m {
        order.truncate(m);
    }
    order
}
