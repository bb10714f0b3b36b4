//! The `secl` command line: train, predict, rank-features, benchmark.
//!
//! Exit status: 0 success, 1 usage error, 2 input or data error, 3 training
//! failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::data::{load_csv, load_csv_with, stratified_split, Dataset, Label, LoadOptions, Schema, SplitRatios};
use crate::ensemble::{fit_superensemble, load_model, predict_superensemble, save_model, PipelineConfig};
use crate::error::{Error, Result};
use crate::eval::{auc, confusion, emit_report, run_benchmark, BenchmarkConfig, Classifier, EvalReport, ReportFormat};
use crate::rbfn::{RbfTrainConfig, WeightInit};
use crate::tree::{fit_tree, minsplit_from_fraction, rank_features, SplitCriterion};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_FIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "secl", version, about = "Hellinger-tree + RBF network classifier for imbalanced binary data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a model on a seeded 50:25:25 split and write it to --model.
    Train(TrainArgs),
    /// Predict labels for a CSV with a saved model.
    Predict(PredictArgs),
    /// Print features ranked by tree importance.
    RankFeatures(RankArgs),
    /// Compare tree, RBFN and superensemble AUC over repeated splits.
    Benchmark(BenchmarkArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Seed for every random choice.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Split criterion: hellinger, hellinger-as-printed, gini, entropy.
    #[arg(long, default_value = "hellinger", value_parser = parse_criterion)]
    pub criterion: SplitCriterion,
    /// Minimum node size as a fraction of the training rows.
    #[arg(long = "minsplit-frac", default_value_t = 0.1)]
    pub minsplit_frac: f64,
    /// Keep at most this many ranked features [default: all with nonzero importance].
    #[arg(long = "top-m")]
    pub top_m: Option<usize>,
    /// Candidate hidden-layer sizes, comma-separated.
    #[arg(long = "hidden-grid", value_delimiter = ',', default_value = "2,3,5,8,12,16,20")]
    pub hidden_grid: Vec<usize>,
    /// Learning rate for output weights and bias.
    #[arg(long = "lr-w", default_value_t = 0.01)]
    pub lr_w: f64,
    /// Learning rate for centers.
    #[arg(long = "lr-c", default_value_t = 0.01)]
    pub lr_c: f64,
    /// Learning rate for widths.
    #[arg(long = "lr-sigma", default_value_t = 0.01)]
    pub lr_sigma: f64,
    /// Gradient-descent iterations.
    #[arg(long, default_value_t = 100)]
    pub iters: usize,
    /// Output weight initialization: least-squares or uniform.
    #[arg(long = "weight-init", default_value = "least-squares", value_parser = parse_weight_init)]
    pub weight_init: WeightInit,
}

impl ModelArgs {
    pub fn pipeline(&self) -> PipelineConfig {
        PipelineConfig {
            criterion: self.criterion,
            minsplit_fraction: self.minsplit_frac,
            top_m: self.top_m,
            rbfn: RbfTrainConfig {
                lr_w: self.lr_w,
                lr_c: self.lr_c,
                lr_sigma: self.lr_sigma,
                max_iters: self.iters,
                k_grid: self.hidden_grid.clone(),
                weight_init: self.weight_init,
                seed: self.seed,
                ..RbfTrainConfig::default()
            },
            seed: self.seed,
        }
    }
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Training CSV with a header row.
    #[arg(long)]
    pub data: PathBuf,
    /// Schema file describing the CSV columns.
    #[arg(long)]
    pub schema: PathBuf,
    /// Where to write the model.
    #[arg(long)]
    pub model: PathBuf,
    #[command(flatten)]
    pub model_args: ModelArgs,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    /// Saved model file.
    #[arg(long)]
    pub model: PathBuf,
    /// CSV to predict; a label column is optional.
    #[arg(long)]
    pub data: PathBuf,
    /// Schema to check against the model's [default: the model's own].
    #[arg(long)]
    pub schema: Option<PathBuf>,
    /// Write predicted labels here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    /// CSV with a header row and a label column.
    #[arg(long)]
    pub data: PathBuf,
    /// Schema file describing the CSV columns.
    #[arg(long)]
    pub schema: PathBuf,
    /// Split criterion: hellinger, hellinger-as-printed, gini, entropy.
    #[arg(long, default_value = "hellinger", value_parser = parse_criterion)]
    pub criterion: SplitCriterion,
    /// Minimum node size as a fraction of the rows.
    #[arg(long = "minsplit-frac", default_value_t = 0.1)]
    pub minsplit_frac: f64,
    /// Print at most this many features [default: all with nonzero importance].
    #[arg(long = "top-m")]
    pub top_m: Option<usize>,
    /// Write the ranking here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchmarkArgs {
    /// Dataset CSV; repeat for several. Each uses `--schema` in the same
    /// position, or the `.schema` file next to it.
    #[arg(long = "data")]
    pub data: Vec<PathBuf>,
    /// Schema for the `--data` in the same position.
    #[arg(long = "schema")]
    pub schema: Vec<PathBuf>,
    /// Number of repeated splits.
    #[arg(long, default_value_t = 5)]
    pub repeats: usize,
    /// Report format: table or csv.
    #[arg(long, default_value = "table", value_parser = parse_format)]
    pub format: ReportFormat,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Tree criteria to benchmark; repeat or comma-separate. The first one
    /// also drives the superensemble.
    #[arg(long, default_value = "hellinger", value_delimiter = ',', value_parser = parse_criterion)]
    pub criterion: Vec<SplitCriterion>,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Minimum node size as a fraction of the training rows.
    #[arg(long = "minsplit-frac", default_value_t = 0.1)]
    pub minsplit_frac: f64,
    /// Keep at most this many ranked features [default: all with nonzero importance].
    #[arg(long = "top-m")]
    pub top_m: Option<usize>,
    /// Candidate hidden-layer sizes, comma-separated.
    #[arg(long = "hidden-grid", value_delimiter = ',', default_value = "2,3,5,8,12,16,20")]
    pub hidden_grid: Vec<usize>,
    /// Learning rate for output weights and bias.
    #[arg(long = "lr-w", default_value_t = 0.01)]
    pub lr_w: f64,
    /// Learning rate for centers.
    #[arg(long = "lr-c", default_value_t = 0.01)]
    pub lr_c: f64,
    /// Learning rate for widths.
    #[arg(long = "lr-sigma", default_value_t = 0.01)]
    pub lr_sigma: f64,
    /// Gradient-descent iterations.
    #[arg(long, default_value_t = 100)]
    pub iters: usize,
    /// Output weight initialization: least-squares or uniform.
    #[arg(long = "weight-init", default_value = "least-squares", value_parser = parse_weight_init)]
    pub weight_init: WeightInit,
}

impl BenchmarkArgs {
    fn model_args(&self) -> ModelArgs {
        ModelArgs {
            seed: self.seed,
            criterion: self.criterion.first().copied().unwrap_or_default(),
            minsplit_frac: self.minsplit_frac,
            top_m: self.top_m,
            hidden_grid: self.hidden_grid.clone(),
            lr_w: self.lr_w,
            lr_c: self.lr_c,
            lr_sigma: self.lr_sigma,
            iters: self.iters,
            weight_init: self.weight_init,
        }
    }
}

fn parse_criterion(s: &str) -> std::result::Result<SplitCriterion, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_weight_init(s: &str) -> std::result::Result<WeightInit, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> std::result::Result<ReportFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Maps a library error onto the exit-status contract.
pub fn exit_status(err: &Error) -> i32 {
    if err.is_fit_error() {
        EXIT_FIT
    } else if matches!(err, Error::Config(_)) {
        EXIT_USAGE
    } else {
        EXIT_DATA
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Train(a) => cmd_train(&a),
        Command::Predict(a) => cmd_predict(&a),
        Command::RankFeatures(a) => cmd_rank_features(&a),
        Command::Benchmark(a) => return cmd_benchmark(&a),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_status(&e)
        }
    }
}

fn load(data: &Path, schema: &Path) -> Result<Dataset> {
    let schema = Schema::from_file(schema)?;
    load_csv(data, &schema)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::io(Path::new("<stdout>"), e))
        }
    }
}

pub fn cmd_train(args: &TrainArgs) -> Result<()> {
    let config = args.model_args.pipeline();
    config.validate()?;
    let ds = load(&args.data, &args.schema)?;
    let split = stratified_split(&ds, SplitRatios::default(), config.seed)?;
    let model = fit_superensemble(&ds, &split.train, &split.validation, &config)?;
    save_model(&model, &args.model)?;

    let names: Vec<&str> = model
        .selected_features()
        .iter()
        .map(|&f| ds.features()[f].name.as_str())
        .collect();
    println!("selected features: {}", names.join(", "));
    println!("hidden units: {}", model.net().k());
    let labels = ds.labels()?;
    let actual: Vec<Label> = split.validation.iter().map(|&r| labels[r]).collect();
    let predicted = predict_superensemble(&model, &ds, &split.validation)?;
    println!("validation AUC: {:.4}", auc(&confusion(&actual, &predicted)?)?);
    Ok(())
}

pub fn cmd_predict(args: &PredictArgs) -> Result<()> {
    let model = load_model(&args.model)?;
    if let Some(path) = &args.schema {
        let given = Schema::from_file(path)?;
        if given.fingerprint() != model.schema().fingerprint() {
            return Err(Error::SchemaMismatch(format!(
                "{} does not describe the layout the model was trained on",
                path.display()
            )));
        }
    }
    // Polarity is fixed by the model, not by label frequencies in this file.
    let stored = model.schema();
    let schema = Schema::new(
        stored.features().to_vec(),
        stored.label(),
        Some(model.classes().positive.clone()),
    )?;
    let ds = load_csv_with(&args.data, &schema, LoadOptions::for_prediction())?;
    let rows = ds.all_rows();
    let predicted = predict_superensemble(&model, &ds, &rows)?;

    let mut text = String::new();
    for &l in &predicted {
        writeln!(text, "{}", model.classes().name(l)).unwrap();
    }
    write_output(args.out.as_deref(), &text)?;

    if ds.is_labeled() {
        let cm = confusion(ds.labels()?, &predicted)?;
        let mut report = String::new();
        writeln!(report, "            predicted+  predicted-").unwrap();
        writeln!(report, "actual+     {:<10}  {}", cm.tp, cm.fn_).unwrap();
        writeln!(report, "actual-     {:<10}  {}", cm.fp, cm.tn).unwrap();
        match auc(&cm) {
            Ok(a) => writeln!(report, "AUC: {a:.4}").unwrap(),
            Err(_) => writeln!(report, "AUC: undefined (one class absent)").unwrap(),
        }
        // keep standard output a clean label stream unless it is not used for labels
        if args.out.is_some() {
            print!("{report}");
        } else {
            eprint!("{report}");
        }
    }
    Ok(())
}

pub fn cmd_rank_features(args: &RankArgs) -> Result<()> {
    if !(args.minsplit_frac > 0.0 && args.minsplit_frac <= 1.0) {
        return Err(Error::Config(format!(
            "minsplit fraction must lie in (0, 1], got {}",
            args.minsplit_frac
        )));
    }
    if args.top_m == Some(0) {
        return Err(Error::Config("top_m must be at least 1".into()));
    }
    let ds = load(&args.data, &args.schema)?;
    let rows = ds.all_rows();
    let tree = fit_tree(&ds, &rows, args.criterion, minsplit_from_fraction(args.minsplit_frac, rows.len()))?;
    let ranked = rank_features(&tree, args.top_m);
    if ranked.is_empty() {
        eprintln!("notice: the tree made no splits; no feature is ranked");
    }
    let mut text = String::new();
    for f in ranked {
        writeln!(text, "{}\t{:.6}", ds.features()[f].name, tree.importances()[f]).unwrap();
    }
    write_output(args.out.as_deref(), &text)
}

fn dataset_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn cmd_benchmark(args: &BenchmarkArgs) -> i32 {
    if args.data.is_empty() {
        eprintln!("error: benchmark needs at least one --data file");
        return EXIT_USAGE;
    }
    if !args.schema.is_empty() && args.schema.len() != args.data.len() {
        eprintln!(
            "error: got {} --schema for {} --data; give one per dataset or none",
            args.schema.len(),
            args.data.len()
        );
        return EXIT_USAGE;
    }
    let mut classifiers: Vec<Classifier> = Vec::new();
    for &c in &args.criterion {
        if !classifiers.contains(&Classifier::Tree(c)) {
            classifiers.push(Classifier::Tree(c));
        }
    }
    classifiers.push(Classifier::Rbfn);
    classifiers.push(Classifier::Superensemble);
    let config = BenchmarkConfig {
        classifiers,
        repeats: args.repeats,
        pipeline: args.model_args().pipeline(),
        seed: args.seed,
    };
    if args.repeats == 0 {
        eprintln!("error: repeats must be at least 1");
        return EXIT_USAGE;
    }
    if let Err(e) = config.pipeline.validate() {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }

    let mut report = EvalReport::new();
    let mut status = EXIT_OK;
    for (i, data) in args.data.iter().enumerate() {
        let schema = args
            .schema
            .get(i)
            .cloned()
            .unwrap_or_else(|| data.with_extension("schema"));
        let name = dataset_name(data);
        let result = load(data, &schema).and_then(|ds| run_benchmark(&name, &ds, &config));
        match result {
            Ok(r) => report.merge(r),
            Err(e) => {
                eprintln!("error: {name}: {e}");
                if status == EXIT_OK {
                    status = exit_status(&e);
                }
            }
        }
    }
    if !report.is_empty() {
        if let Err(e) = write_output(args.out.as_deref(), &emit_report(&report, args.format)) {
            eprintln!("error: {e}");
            return EXIT_DATA;
        }
    }
    status
}
