use rand::Rng;

use super::kmeans::kmeans;
use super::{predict_rbfn, RbfNetwork, SIGMA_MIN};
use crate::data::{Label, Matrix};
use crate::error::{Error, Result};
use crate::eval::{auc, confusion};
use crate::rng;

pub const DEFAULT_K_GRID: [usize; 7] = [2, 3, 5, 8, 12, 16, 20];

/// Ridge term added to the weight diagonal of the normal equations.
const LSQ_RIDGE: f64 = 1e-6;

/// Starting point for the output layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightInit {
    /// Seeded uniform draws in [-0.1, 0.1], then least squares for the
    /// weights and bias given the initial centers and widths. Falls back to
    /// the uniform draws if the normal equations are singular.
    #[default]
    LeastSquares,
    /// Seeded uniform draws in [-0.1, 0.1] only.
    Uniform,
}

impl WeightInit {
    pub fn name(self) -> &'static str {
        match self {
            WeightInit::LeastSquares => "least-squares",
            WeightInit::Uniform => "uniform",
        }
    }
}

impl std::str::FromStr for WeightInit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "least-squares" => Ok(WeightInit::LeastSquares),
            "uniform" => Ok(WeightInit::Uniform),
            _ => Err(Error::Config(format!("unknown weight init `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RbfTrainConfig {
    pub lr_w: f64,
    pub lr_c: f64,
    pub lr_sigma: f64,
    pub max_iters: usize,
    /// Training stops early once `|E_t - E_{t-1}| < tolerance`.
    pub tolerance: f64,
    /// Candidate hidden-unit counts, capped at `ceil(n_train / 10)`.
    pub k_grid: Vec<usize>,
    pub weight_init: WeightInit,
    pub seed: u64,
}

impl Default for RbfTrainConfig {
    fn default() -> Self {
        RbfTrainConfig {
            lr_w: 0.01,
            lr_c: 0.01,
            lr_sigma: 0.01,
            max_iters: 100,
            tolerance: 1e-8,
            k_grid: DEFAULT_K_GRID.to_vec(),
            weight_init: WeightInit::default(),
            seed: 0,
        }
    }
}

impl RbfTrainConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("lr_w", self.lr_w), ("lr_c", self.lr_c), ("lr_sigma", self.lr_sigma)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be a positive number, got {v}")));
            }
        }
        if self.max_iters == 0 {
            return Err(Error::Config("max_iters must be at least 1".into()));
        }
        if !(self.tolerance >= 0.0) {
            return Err(Error::Config(format!("tolerance must be non-negative, got {}", self.tolerance)));
        }
        if self.k_grid.is_empty() || self.k_grid.contains(&0) {
            return Err(Error::Config("k_grid must be a non-empty list of positive counts".into()));
        }
        Ok(())
    }
}

/// Outcome of a training run, with the model-selection record.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainTrace {
    pub net: RbfNetwork,
    /// `(k, selection score)` per candidate tried; validation AUC when a
    /// validation set was given, otherwise the negated final training error.
    pub candidates: Vec<(usize, f64)>,
    /// Training error before each descent step of the selected network.
    pub loss_history: Vec<f64>,
}

pub fn train_rbfn(
    inputs: &Matrix,
    targets: &[Label],
    config: &RbfTrainConfig,
    validation: Option<(&Matrix, &[Label])>,
) -> Result<RbfNetwork> {
    train_rbfn_traced(inputs, targets, config, validation).map(|t| t.net)
}

/// Trains one network per admissible `k` and keeps the best: highest
/// validation AUC, or lowest training error without a validation set.
/// Ties keep the earlier grid entry.
pub fn train_rbfn_traced(
    inputs: &Matrix,
    targets: &[Label],
    config: &RbfTrainConfig,
    validation: Option<(&Matrix, &[Label])>,
) -> Result<TrainTrace> {
    config.validate()?;
    if inputs.rows() != targets.len() {
        return Err(Error::Length(format!("{} inputs for {} targets", inputs.rows(), targets.len())));
    }
    if inputs.cols() == 0 {
        return Err(Error::Config("inputs have no columns".into()));
    }
    if !(targets.contains(&Label::Positive) && targets.contains(&Label::Negative)) {
        return Err(Error::SingleClass);
    }
    if let Some((vx, vy)) = validation {
        if vx.cols() != inputs.cols() || vx.rows() != vy.len() {
            return Err(Error::Dimension {
                expected: inputs.cols(),
                got: vx.cols(),
            });
        }
    }
    let y: Vec<f64> = targets.iter().map(|l| l.target()).collect();
    let grid = admissible_k(inputs, &config.k_grid);

    let mut best: Option<(f64, TrainTrace)> = None;
    let mut candidates = Vec::with_capacity(grid.len());
    for k in grid {
        let (net, history) = fit_one(inputs, &y, k, config)?;
        let score = match validation {
            Some((vx, vy)) if !vy.is_empty() => {
                let pred = predict_rbfn(&net, vx)?;
                // a single-class validation set cannot rank candidates by AUC
                match auc(&confusion(vy, &pred)?) {
                    Ok(a) => a,
                    Err(_) => -net.loss(inputs, &y)?,
                }
            }
            _ => -net.loss(inputs, &y)?,
        };
        candidates.push((k, score));
        if best.as_ref().map_or(true, |(s, _)| score > *s) {
            best = Some((
                score,
                TrainTrace {
                    net,
                    candidates: Vec::new(),
                    loss_history: history,
                },
            ));
        }
    }
    let (_, mut trace) = best.expect("admissible grid is never empty");
    trace.candidates = candidates;
    Ok(trace)
}

/// Grid entries no larger than `ceil(n / 10)` or the distinct point count;
/// falls back to the largest admissible value when the grid has none.
fn admissible_k(inputs: &Matrix, grid: &[usize]) -> Vec<usize> {
    let cap = inputs.rows().div_ceil(10).max(1);
    let distinct = {
        let mut rows: Vec<Vec<u64>> = inputs.iter_rows().map(|r| r.iter().map(|v| v.to_bits()).collect()).collect();
        rows.sort_unstable();
        rows.dedup();
        rows.len()
    };
    let limit = cap.min(distinct);
    let mut ks: Vec<usize> = Vec::new();
    for &k in grid {
        if k <= limit && !ks.contains(&k) {
            ks.push(k);
        }
    }
    if ks.is_empty() {
        ks.push(limit);
    }
    ks
}

fn initial_network(inputs: &Matrix, k: usize, seed: u64) -> Result<RbfNetwork> {
    let km = kmeans(inputs, k, rng::derive(seed, k as u64))?;
    let mut sums = vec![0.0; k];
    let mut sizes = vec![0usize; k];
    for (x, &j) in inputs.iter_rows().zip(&km.assignment) {
        sums[j] += dist(x, km.centers.row(j));
        sizes[j] += 1;
    }
    let fallback = if k >= 2 {
        let mut total = 0.0;
        let mut pairs = 0usize;
        for a in 0..k {
            for b in a + 1..k {
                total += dist(km.centers.row(a), km.centers.row(b));
                pairs += 1;
            }
        }
        total / pairs as f64
    } else {
        sums[0] / sizes[0].max(1) as f64
    }
    .max(SIGMA_MIN);
    let widths: Vec<f64> = (0..k)
        .map(|j| {
            let mean = if sizes[j] > 1 { sums[j] / sizes[j] as f64 } else { 0.0 };
            if mean >= SIGMA_MIN {
                mean
            } else {
                fallback
            }
        })
        .collect();
    let mut wrng = rng::seeded(rng::derive(rng::derive(seed, k as u64), 1));
    let weights: Vec<f64> = (0..k).map(|_| wrng.gen_range(-0.1..=0.1)).collect();
    let bias = wrng.gen_range(-0.1..=0.1);
    RbfNetwork::new(km.centers, widths, weights, bias)
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn fit_one(inputs: &Matrix, y: &[f64], k: usize, config: &RbfTrainConfig) -> Result<(RbfNetwork, Vec<f64>)> {
    let mut net = initial_network(inputs, k, config.seed)?;
    if config.weight_init == WeightInit::LeastSquares {
        if let Some((weights, bias)) = least_squares_weights(&net, inputs, y) {
            let (centers, widths) = (net.centers().clone(), net.widths().to_vec());
            net = RbfNetwork::new(centers, widths, weights, bias)?;
        }
    }
    let mut history: Vec<f64> = Vec::with_capacity(config.max_iters);
    for _ in 0..config.max_iters {
        let g = net.gradients(inputs, y)?;
        if let Some(&prev) = history.last() {
            if (prev - g.loss).abs() < config.tolerance {
                break;
            }
        }
        history.push(g.loss);
        net.apply(&g, config.lr_w, config.lr_c, config.lr_sigma);
    }
    Ok((net, history))
}


/// Minimizes the training error over weights and bias with centers and
/// widths held fixed, via Cholesky on the (ridged) normal equations.
fn least_squares_weights(net: &RbfNetwork, inputs: &Matrix, y: &[f64]) -> Option<(Vec<f64>, f64)> {
    let k = net.k();
    let m = k + 1;
    let mut gram = vec![0.0; m * m];
    let mut rhs = vec![0.0; m];
    let mut a = vec![0.0; m];
    a[0] = 1.0;
    for (x, &t) in inputs.iter_rows().zip(y) {
        for j in 0..k {
            a[j + 1] = super::phi(x, net.center(j), net.widths()[j]);
        }
        for p in 0..m {
            rhs[p] += a[p] * t;
            for q in 0..=p {
                gram[p * m + q] += a[p] * a[q];
            }
        }
    }
    let n = y.len() as f64;
    for p in 0..m {
        rhs[p] /= n;
        for q in 0..=p {
            gram[p * m + q] /= n;
        }
        if p > 0 {
            gram[p * m + p] += LSQ_RIDGE;
        }
    }
    let solution = cholesky_solve(&mut gram, &rhs, m)?;
    Some((solution[1..].to_vec(), solution[0]))
}

/// Solves `A x = b` for symmetric positive-definite `A`, of which only the
/// lower triangle is read. `A` is overwritten by its Cholesky factor.
fn cholesky_solve(a: &mut [f64], b: &[f64], m: usize) -> Option<Vec<f64>> {
    for j in 0..m {
        let mut d = a[j * m + j];
        for t in 0..j {
            d -= a[j * m + t] * a[j * m + t];
        }
        if !(d > 1e-14) {
            return None;
        }
        let d = d.sqrt();
        a[j * m + j] = d;
        for i in j + 1..m {
            let mut s = a[i * m + j];
            for t in 0..j {
                s -= a[i * m + t] * a[j * m + t];
            }
            a[i * m + j] = s / d;
        }
    }
    let mut z = vec![0.0; m];
    for i in 0..m {
        let mut s = b[i];
        for t in 0..i {
            s -= a[i * m + t] * z[t];
        }
        z[i] = s / a[i * m + i];
    }
    let mut x = vec![0.0; m];
    for i in (0..m).rev() {
        let mut s = z[i];
        for t in i + 1..m {
            s -= a[t * m + i] * x[t];
        }
        x[i] = s / a[i * m + i];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}
