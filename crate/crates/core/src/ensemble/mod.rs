//! The tree-then-network pipeline.
//!
//! 1. grow an unpruned tree on the training rows,
//! 2. keep the features it ranks as important (all features if it never split),
//! 3. fit an encoder on those features,
//! 4. append the tree's predicted class as a raw 0/1 input column,
//! 5. train the RBF network, choosing `k` on the validation rows.

mod persist;

pub use persist::{load_model, save_model, read_model, write_model, FORMAT_VERSION};

use crate::data::{encode, fit_encoder_on, ClassNames, Dataset, EncoderState, Label, Matrix, Schema};
use crate::error::{Error, Result};
use crate::rbfn::{predict_rbfn, train_rbfn, RbfNetwork, RbfTrainConfig};
use crate::tree::{fit_tree, minsplit_from_fraction, predict_tree, rank_features, SplitCriterion, TreeModel};

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub criterion: SplitCriterion,
    /// Minsplit as a fraction of the training rows, in (0, 1].
    pub minsplit_fraction: f64,
    /// Keep at most this many ranked features.
    pub top_m: Option<usize>,
    /// Network settings; its `seed` is replaced by [`PipelineConfig::seed`].
    pub rbfn: RbfTrainConfig,
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            criterion: SplitCriterion::Hellinger,
            minsplit_fraction: 0.1,
            top_m: None,
            rbfn: RbfTrainConfig::default(),
            seed: 0,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.minsplit_fraction > 0.0 && self.minsplit_fraction <= 1.0) {
            return Err(Error::Config(format!(
                "minsplit fraction must lie in (0, 1], got {}",
                self.minsplit_fraction
            )));
        }
        if self.top_m == Some(0) {
            return Err(Error::Config("top_m must be at least 1".into()));
        }
        self.rbfn.validate()
    }

    pub fn network_config(&self) -> RbfTrainConfig {
        RbfTrainConfig {
            seed: self.seed,
            ..self.rbfn.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuperensembleModel {
    pub(crate) schema: Schema,
    pub(crate) classes: ClassNames,
    pub(crate) tree: TreeModel,
    pub(crate) selected: Vec<usize>,
    pub(crate) encoder: EncoderState,
    pub(crate) net: RbfNetwork,
}

impl SuperensembleModel {
    pub(crate) fn new(
        schema: Schema,
        classes: ClassNames,
        tree: TreeModel,
        selected: Vec<usize>,
        encoder: EncoderState,
        net: RbfNetwork,
    ) -> Result<Self> {
        let d = schema.features().len();
        if tree.n_features() != d {
            return Err(Error::SchemaMismatch(format!(
                "tree covers {} features, schema has {d}",
                tree.n_features()
            )));
        }
        if selected.is_empty() || selected.iter().any(|&f| f >= d) {
            return Err(Error::SchemaMismatch("selected features are not a subset of the schema".into()));
        }
        if encoder.features() != selected {
            return Err(Error::SchemaMismatch("encoder does not cover the selected features".into()));
        }
        if net.input_dim() != encoder.width() + 1 {
            return Err(Error::Dimension {
                expected: encoder.width() + 1,
                got: net.input_dim(),
            });
        }
        Ok(SuperensembleModel {
            schema,
            classes,
            tree,
            selected,
            encoder,
            net,
        })
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn classes(&self) -> &ClassNames {
        &self.classes
    }

    pub fn tree(&self) -> &TreeModel {
        &self.tree
    }

    pub fn selected_features(&self) -> &[usize] {
        &self.selected
    }

    pub fn encoder(&self) -> &EncoderState {
        &self.encoder
    }

    pub fn net(&self) -> &RbfNetwork {
        &self.net
    }

    /// Network inputs for `rows`: encoded selected features plus the tree's
    /// prediction as the last column.
    pub fn network_inputs(&self, dataset: &Dataset, rows: &[usize]) -> Result<Matrix> {
        self.check_schema(dataset)?;
        network_inputs(&self.tree, &self.encoder, dataset, rows)
    }

    fn check_schema(&self, dataset: &Dataset) -> Result<()> {
        let (expected, got) = (self.schema.fingerprint(), dataset.schema().fingerprint());
        if expected != got {
            return Err(Error::SchemaMismatch(format!(
                "model schema {expected:016x}, data schema {got:016x}"
            )));
        }
        Ok(())
    }
}

fn network_inputs(tree: &TreeModel, encoder: &EncoderState, dataset: &Dataset, rows: &[usize]) -> Result<Matrix> {
    let tree_out: Vec<bool> = predict_tree(tree, dataset, rows)?.into_iter().map(Label::is_positive).collect();
    encode(dataset, rows, encoder, Some(&tree_out))
}

/// Fitted model plus the network training inputs, for inspection.
#[derive(Debug, Clone)]
pub struct FitTrace {
    pub model: SuperensembleModel,
    pub train_inputs: Matrix,
}

pub fn fit_superensemble(
    dataset: &Dataset,
    train: &[usize],
    validation: &[usize],
    config: &PipelineConfig,
) -> Result<SuperensembleModel> {
    fit_superensemble_traced(dataset, train, validation, config).map(|t| t.model)
}

pub fn fit_superensemble_traced(
    dataset: &Dataset,
    train: &[usize],
    validation: &[usize],
    config: &PipelineConfig,
) -> Result<FitTrace> {
    config.validate()?;
    dataset.require_both_classes(train)?;
    let labels = dataset.labels()?;

    let minsplit = minsplit_from_fraction(config.minsplit_fraction, train.len());
    let tree = fit_tree(dataset, train, config.criterion, minsplit)?;
    let mut selected = rank_features(&tree, config.top_m);
    if selected.is_empty() {
        selected = (0..dataset.d()).collect();
    }
    let encoder = fit_encoder_on(dataset, train, &selected)?;

    let train_inputs = network_inputs(&tree, &encoder, dataset, train)?;
    let train_labels: Vec<Label> = train.iter().map(|&r| labels[r]).collect();
    let val_inputs = network_inputs(&tree, &encoder, dataset, validation)?;
    let val_labels: Vec<Label> = validation.iter().map(|&r| labels[r]).collect();
    let val = (!validation.is_empty()).then_some((&val_inputs, val_labels.as_slice()));
    let net = train_rbfn(&train_inputs, &train_labels, &config.network_config(), val)?;

    let model = SuperensembleModel::new(
        dataset.schema().clone(),
        dataset.classes().clone(),
        tree,
        selected,
        encoder,
        net,
    )?;
    Ok(FitTrace { model, train_inputs })
}

pub fn predict_superensemble(model: &SuperensembleModel, dataset: &Dataset, rows: &[usize]) -> Result<Vec<Label>> {
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    let inputs = model.network_inputs(dataset, rows)?;
    predict_rbfn(&model.net, &inputs)
}
