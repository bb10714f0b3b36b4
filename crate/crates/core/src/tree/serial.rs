//! Pre-order, one-line-per-node text form of a tree.
//!
//! ```text
//! split <feature> num <threshold>
//! split <feature> cat <category>
//! leaf <pos|neg> <positives> <negatives>
//! ```

use std::fmt::Write as _;

use super::{ClassCounts, SplitRule, TreeNode};
use crate::data::Label;
use crate::error::{Error, Result};

/// 17 significant digits, enough for an exact `f64` round trip.
pub(crate) fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub(crate) fn write_nodes(root: &TreeNode, out: &mut String) {
    let mut stack = vec![root];
    while let Some(node) = stack.pop() {
        match node {
            TreeNode::Leaf { label, counts } => {
                let tag = if label.is_positive() { "pos" } else { "neg" };
                writeln!(out, "leaf {tag} {} {}", counts.pos, counts.neg).unwrap();
            }
            TreeNode::Internal { rule, left, right } => {
                match *rule {
                    SplitRule::Numeric { feature, threshold } => {
                        writeln!(out, "split {feature} num {}", fmt_f64(threshold)).unwrap()
                    }
                    SplitRule::Categorical { feature, category } => {
                        writeln!(out, "split {feature} cat {category}").unwrap()
                    }
                }
                stack.push(right);
                stack.push(left);
            }
        }
    }
}

/// Parses exactly one tree from `(line number, text)` pairs.
pub(crate) fn parse_nodes<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<TreeNode> {
    let (line, text) = lines.next().ok_or_else(|| Error::Truncated("tree ends early".into()))?;
    let err = |msg: &str| Error::Format {
        line,
        msg: format!("{msg}: `{text}`"),
    };
    let tokens: Vec<&str> = text.split_whitespace().collect();
    match tokens.as_slice() {
        ["leaf", tag, pos, neg] => {
            let label = match *tag {
                "pos" => Label::Positive,
                "neg" => Label::Negative,
                _ => return Err(err("bad leaf label")),
            };
            let counts = ClassCounts::new(
                pos.parse().map_err(|_| err("bad count"))?,
                neg.parse().map_err(|_| err("bad count"))?,
            );
            Ok(TreeNode::Leaf { label, counts })
        }
        ["split", feature, kind, value] => {
            let feature: usize = feature.parse().map_err(|_| err("bad feature index"))?;
            let rule = match *kind {
                "num" => SplitRule::Numeric {
                    feature,
                    threshold: value
                        .parse::<f64>()
                        .ok()
                        .filter(|t| t.is_finite())
                        .ok_or_else(|| err("bad threshold"))?,
                },
                "cat" => SplitRule::Categorical {
                    feature,
                    category: value.parse().map_err(|_| err("bad category"))?,
                },
                _ => return Err(err("bad split kind")),
            };
            let left = parse_nodes(lines)?;
            let right = parse_nodes(lines)?;
            Ok(TreeNode::Internal {
                rule,
                left: Box::new(left),
                right: Box::new(right),
            })
        }
        _ => Err(err("expected a tree node")),
    }
}
