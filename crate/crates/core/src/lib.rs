//! Superensemble classifier for binary imbalanced data.
//!
//! A Hellinger-distance decision tree ranks features and produces a base
//! prediction; a Gaussian radial-basis-function network is then trained on
//! the selected features plus the tree's predicted class.
//!
//! Modules:
//! - [`data`]: datasets, CSV/schema loading, encoding, stratified splits
//! - [`tree`]: unpruned binary decision trees with Hellinger, Gini and entropy criteria
//! - [`rbfn`]: Gaussian RBF network, k-means initialization, gradient-descent training
//! - [`ensemble`]: the tree-then-network pipeline and its model file
//! - [`eval`]: confusion matrices, balanced-accuracy AUC, repeated benchmarks
//! - [`cli`]: the `secl` command-line driver

pub mod cli;
pub mod data;
pub mod ensemble;
pub mod error;
pub mod eval;
pub mod rbfn;
pub mod rng;
pub mod tree;

pub use error::{Error, Result};
