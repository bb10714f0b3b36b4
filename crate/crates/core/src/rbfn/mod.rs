//! One-hidden-layer Gaussian radial-basis-function network.
//!
//! `f(x) = w0 + sum_j w_j * exp(-|x - c_j|^2 / (2 sigma_j^2))`, trained by
//! full-batch gradient descent on the mean squared error against 0/1
//! targets. Centers start at k-means cluster centers.

mod kmeans;
mod train;

pub use kmeans::{kmeans, kmeans_centers, KMeans, KMEANS_MAX_ITERS};
pub use train::{train_rbfn, train_rbfn_traced, RbfTrainConfig, TrainTrace, WeightInit, DEFAULT_K_GRID};

use crate::data::{Label, Matrix};
use crate::error::{Error, Result};

/// Lower bound enforced on every width.
pub const SIGMA_MIN: f64 = 1e-6;

/// Output threshold: `forward(x) >= 0.5` predicts the positive class.
pub const DECISION_THRESHOLD: f64 = 0.5;

fn squared_distance(x: &[f64], c: &[f64]) -> f64 {
    x.iter().zip(c).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// `exp(-|x - c|^2 / (2 sigma^2))`.
pub fn gaussian_phi(x: &[f64], c: &[f64], sigma: f64) -> Result<f64> {
    if x.len() != c.len() {
        return Err(Error::Dimension {
            expected: c.len(),
            got: x.len(),
        });
    }
    if !(sigma >= SIGMA_MIN) {
        return Err(Error::Config(format!("width {sigma} below {SIGMA_MIN}")));
    }
    Ok(phi(x, c, sigma))
}

#[inline]
fn phi(x: &[f64], c: &[f64], sigma: f64) -> f64 {
    (-squared_distance(x, c) / (2.0 * sigma * sigma)).exp()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RbfNetwork {
    centers: Matrix,
    widths: Vec<f64>,
    weights: Vec<f64>,
    bias: f64,
}

impl RbfNetwork {
    /// `centers` is `k x d_m`; `widths` and `weights` have length `k`.
    pub fn new(centers: Matrix, widths: Vec<f64>, weights: Vec<f64>, bias: f64) -> Result<Self> {
        let k = centers.rows();
        if k == 0 || centers.cols() == 0 {
            return Err(Error::Config("network needs k >= 1 and input dimension >= 1".into()));
        }
        if widths.len() != k || weights.len() != k {
            return Err(Error::Length(format!(
                "{k} centers, {} widths, {} weights",
                widths.len(),
                weights.len()
            )));
        }
        if let Some(s) = widths.iter().find(|&&s| !(s >= SIGMA_MIN) || !s.is_finite()) {
            return Err(Error::Config(format!("width {s} below {SIGMA_MIN}")));
        }
        Ok(RbfNetwork {
            centers,
            widths,
            weights,
            bias,
        })
    }

    pub fn k(&self) -> usize {
        self.widths.len()
    }

    pub fn input_dim(&self) -> usize {
        self.centers.cols()
    }

    pub fn centers(&self) -> &Matrix {
        &self.centers
    }

    pub fn center(&self, j: usize) -> &[f64] {
        self.centers.row(j)
    }

    pub fn widths(&self) -> &[f64] {
        &self.widths
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    /// Network output for one input vector.
    pub fn forward(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x.len())?;
        Ok(self.output(x))
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.input_dim() {
            return Err(Error::Dimension {
                expected: self.input_dim(),
                got,
            });
        }
        Ok(())
    }

    fn output(&self, x: &[f64]) -> f64 {
        let mut f = self.bias;
        for j in 0..self.k() {
            f += self.weights[j] * phi(x, self.centers.row(j), self.widths[j]);
        }
        f
    }

    pub fn forward_batch(&self, inputs: &Matrix) -> Result<Vec<f64>> {
        self.check_dim(inputs.cols())?;
        Ok(inputs.iter_rows().map(|x| self.output(x)).collect())
    }

    /// Mean squared error against 0/1 targets.
    pub fn loss(&self, inputs: &Matrix, targets: &[f64]) -> Result<f64> {
        let out = self.forward_batch(inputs)?;
        check_batch(inputs, targets)?;
        Ok(out.iter().zip(targets).map(|(f, y)| (f - y) * (f - y)).sum::<f64>() / targets.len() as f64)
    }

    /// Analytic gradient of the mean squared error over the batch.
    pub fn gradients(&self, inputs: &Matrix, targets: &[f64]) -> Result<Gradients> {
        self.check_dim(inputs.cols())?;
        check_batch(inputs, targets)?;
        let (k, d) = (self.k(), self.input_dim());
        let scale = 2.0 / targets.len() as f64;
        let mut g = Gradients {
            loss: 0.0,
            bias: 0.0,
            weights: vec![0.0; k],
            centers: Matrix::zeros(k, d),
            widths: vec![0.0; k],
        };
        let mut phis = vec![0.0; k];
        for (x, &y) in inputs.iter_rows().zip(targets) {
            let mut f = self.bias;
            for j in 0..k {
                phis[j] = phi(x, self.centers.row(j), self.widths[j]);
                f += self.weights[j] * phis[j];
            }
            let e = f - y;
            g.loss += e * e;
            g.bias += e;
            for j in 0..k {
                let s = self.widths[j];
                let c = self.centers.row(j);
                let common = e * self.weights[j] * phis[j];
                g.weights[j] += e * phis[j];
                g.widths[j] += common * squared_distance(x, c) / (s * s * s);
                let gc = g.centers.row_mut(j);
                for t in 0..d {
                    gc[t] += common * (x[t] - c[t]) / (s * s);
                }
            }
        }
        g.loss /= targets.len() as f64;
        g.bias *= scale;
        g.weights.iter_mut().for_each(|v| *v *= scale);
        g.widths.iter_mut().for_each(|v| *v *= scale);
        for j in 0..k {
            g.centers.row_mut(j).iter_mut().for_each(|v| *v *= scale);
        }
        Ok(g)
    }

    /// One descent step with separate rates for weights, centers and widths;
    /// widths are clamped to [`SIGMA_MIN`] afterwards.
    pub fn apply(&mut self, g: &Gradients, lr_w: f64, lr_c: f64, lr_sigma: f64) {
        self.bias -= lr_w * g.bias;
        for j in 0..self.k() {
            self.weights[j] -= lr_w * g.weights[j];
            self.widths[j] = (self.widths[j] - lr_sigma * g.widths[j]).max(SIGMA_MIN);
            let gc = g.centers.row(j);
            for (c, d) in self.centers.row_mut(j).iter_mut().zip(gc) {
                *c -= lr_c * d;
            }
        }
    }

}

fn check_batch(inputs: &Matrix, targets: &[f64]) -> Result<()> {
    if targets.is_empty() {
        return Err(Error::Empty("training batch".into()));
    }
    if inputs.rows() != targets.len() {
        return Err(Error::Length(format!(
            "{} inputs for {} targets",
            inputs.rows(),
            targets.len()
        )));
    }
    Ok(())
}

/// Partial derivatives of the mean squared error, plus the error itself.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub loss: f64,
    pub bias: f64,
    pub weights: Vec<f64>,
    pub centers: Matrix,
    pub widths: Vec<f64>,
}

pub fn predict_rbfn(net: &RbfNetwork, inputs: &Matrix) -> Result<Vec<Label>> {
    Ok(net
        .forward_batch(inputs)?
        .into_iter()
        .map(|f| Label::from_bool(f >= DECISION_THRESHOLD))
        .collect())
}
