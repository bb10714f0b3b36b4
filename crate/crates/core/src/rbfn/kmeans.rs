use rand::seq::index;

use crate::data::Matrix;
use crate::error::{Error, Result};
use crate::rng;

pub const KMEANS_MAX_ITERS: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct KMeans {
    pub centers: Matrix,
    /// Cluster index of every input point.
    pub assignment: Vec<usize>,
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn distinct_rows(points: &Matrix) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.rows()).collect();
    let cmp = |a: &usize, b: &usize| {
        points
            .row(*a)
            .iter()
            .zip(points.row(*b))
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    };
    order.sort_by(cmp);
    order.dedup_by(|a, b| cmp(a, b).is_eq());
    order
}

fn nearest(x: &[f64], centers: &Matrix) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (j, c) in centers.iter_rows().enumerate() {
        let d = dist2(x, c);
        if d < best.1 {
            best = (j, d);
        }
    }
    best
}

/// Lloyd's algorithm from `k` distinct data points drawn by the seeded RNG.
///
/// Stops at an assignment fixpoint or after [`KMEANS_MAX_ITERS`] rounds. An
/// empty cluster is re-seeded at the point farthest from its own center.
pub fn kmeans(points: &Matrix, k: usize, seed: u64) -> Result<KMeans> {
    let distinct = distinct_rows(points);
    if k == 0 || k > distinct.len() {
        return Err(Error::TooFewPoints {
            k,
            distinct: distinct.len(),
        });
    }
    let mut rng = rng::seeded(seed);
    let picks = index::sample(&mut rng, distinct.len(), k);
    let mut centers = points.select_rows(&picks.iter().map(|i| distinct[i]).collect::<Vec<_>>());
    let n = points.rows();
    let d = points.cols();
    let mut assignment = vec![usize::MAX; n];
    for _ in 0..KMEANS_MAX_ITERS {
        let mut changed = false;
        let mut far = vec![0.0; n];
        for (i, x) in points.iter_rows().enumerate() {
            let (j, dist) = nearest(x, &centers);
            far[i] = dist;
            if assignment[i] != j {
                assignment[i] = j;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        let mut sums = Matrix::zeros(k, d);
        let mut sizes = vec![0usize; k];
        for (x, &j) in points.iter_rows().zip(&assignment) {
            sizes[j] += 1;
            sums.row_mut(j).iter_mut().zip(x).for_each(|(s, v)| *s += v);
        }
        for j in 0..k {
            if sizes[j] == 0 {
                // farthest point from its center; ties keep the lowest index
                let (i, _) = far
                    .iter()
                    .enumerate()
                    .fold((0, f64::NEG_INFINITY), |b, (i, &v)| if v > b.1 { (i, v) } else { b });
                centers.row_mut(j).copy_from_slice(points.row(i));
                far[i] = 0.0;
                assignment[i] = j;
            } else {
                let size = sizes[j] as f64;
                centers
                    .row_mut(j)
                    .iter_mut()
                    .zip(sums.row(j))
                    .for_each(|(c, s)| *c = s / size);
            }
        }
    }
    Ok(KMeans { centers, assignment })
}

pub fn kmeans_centers(points: &Matrix, k: usize, seed: u64) -> Result<Matrix> {
    kmeans(points, k, seed).map(|m| m.centers)
}
