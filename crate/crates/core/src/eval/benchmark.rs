use std::thread;

use super::{auc, confusion, CellResult, ConfusionMatrix, EvalReport};
use crate::data::{encode, fit_encoder, stratified_split, Dataset, Label, SplitIndices, SplitRatios};
use crate::ensemble::{fit_superensemble, predict_superensemble, PipelineConfig};
use crate::error::{Error, Result};
use crate::rbfn::{predict_rbfn, train_rbfn};
use crate::rng;
use crate::tree::{fit_tree, minsplit_from_fraction, predict_tree, SplitCriterion};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classifier {
    /// A single unpruned tree grown on the training rows.
    Tree(SplitCriterion),
    /// The network alone on all encoded features, `k` chosen on validation.
    Rbfn,
    Superensemble,
}

impl Classifier {
    pub fn name(self) -> String {
        match self {
            Classifier::Tree(SplitCriterion::Hellinger) => "HDDT".to_string(),
            Classifier::Tree(c) => format!("tree({c})"),
            Classifier::Rbfn => "RBFN".to_string(),
            Classifier::Superensemble => "superensemble".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkConfig {
    pub classifiers: Vec<Classifier>,
    pub repeats: usize,
    /// Shared settings; `criterion` is overridden for tree classifiers and
    /// `seed` is replaced per repeat.
    pub pipeline: PipelineConfig,
    pub seed: u64,
}

impl Default for BenchmarkConfig {
    fn default() -> Self {
        BenchmarkConfig {
            classifiers: vec![
                Classifier::Tree(SplitCriterion::Hellinger),
                Classifier::Rbfn,
                Classifier::Superensemble,
            ],
            repeats: 5,
            pipeline: PipelineConfig::default(),
            seed: 1,
        }
    }
}

fn labels_of(labels: &[Label], rows: &[usize]) -> Vec<Label> {
    rows.iter().map(|&r| labels[r]).collect()
}

fn evaluate(
    dataset: &Dataset,
    split: &SplitIndices,
    classifier: Classifier,
    config: &PipelineConfig,
) -> Result<ConfusionMatrix> {
    let labels = dataset.labels()?;
    let predicted = match classifier {
        Classifier::Tree(criterion) => {
            let minsplit = minsplit_from_fraction(config.minsplit_fraction, split.train.len());
            let tree = fit_tree(dataset, &split.train, criterion, minsplit)?;
            predict_tree(&tree, dataset, &split.test)?
        }
        Classifier::Rbfn => {
            let encoder = fit_encoder(dataset, &split.train)?;
            let x_train = encode(dataset, &split.train, &encoder, None)?;
            let x_val = encode(dataset, &split.validation, &encoder, None)?;
            let x_test = encode(dataset, &split.test, &encoder, None)?;
            let y_train = labels_of(labels, &split.train);
            let y_val = labels_of(labels, &split.validation);
            let val = (!y_val.is_empty()).then_some((&x_val, y_val.as_slice()));
            let net = train_rbfn(&x_train, &y_train, &config.network_config(), val)?;
            predict_rbfn(&net, &x_test)?
        }
        Classifier::Superensemble => {
            let model = fit_superensemble(dataset, &split.train, &split.validation, config)?;
            predict_superensemble(&model, dataset, &split.test)?
        }
    };
    confusion(&labels_of(labels, &split.test), &predicted)
}

fn run_repeat(dataset: &Dataset, config: &BenchmarkConfig, repeat: usize) -> Result<Vec<(f64, ConfusionMatrix)>> {
    let seed = rng::derive(config.seed, repeat as u64);
    let split = stratified_split(dataset, SplitRatios::default(), seed)?;
    let pipeline = PipelineConfig {
        seed,
        ..config.pipeline.clone()
    };
    config
        .classifiers
        .iter()
        .map(|&c| {
            let cm = evaluate(dataset, &split, c, &pipeline)?;
            Ok((auc(&cm)?, cm))
        })
        .collect()
}

/// Runs every classifier on `repeats` seeded stratified splits of one dataset
/// and records the test-set AUC of each.
///
/// Repeats run on separate threads; repeat `r` always uses the split seed
/// `derive(seed, r)`, so the report does not depend on scheduling or on which
/// classifiers are configured.
pub fn run_benchmark(name: &str, dataset: &Dataset, config: &BenchmarkConfig) -> Result<EvalReport> {
    if config.repeats == 0 {
        return Err(Error::Config("repeats must be at least 1".into()));
    }
    if config.classifiers.is_empty() {
        return Err(Error::Config("no classifiers configured".into()));
    }
    config.pipeline.validate()?;
    dataset.labels()?;

    let results: Vec<Result<Vec<(f64, ConfusionMatrix)>>> = thread::scope(|s| {
        let handles: Vec<_> = (0..config.repeats)
            .map(|r| s.spawn(move || run_repeat(dataset, config, r)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("benchmark worker panicked"))
            .collect()
    });

    let mut cells = vec![CellResult::default(); config.classifiers.len()];
    for repeat in results {
        for (cell, (a, cm)) in cells.iter_mut().zip(repeat?) {
            cell.aucs.push(a);
            cell.confusions.push(cm);
        }
    }
    let mut report = EvalReport::new();
    for (c, cell) in config.classifiers.iter().zip(cells) {
        report.insert(&c.name(), name, cell);
    }
    Ok(report)
}
