use rand::seq::SliceRandom;

use super::{Dataset, Label};
use crate::error::{Error, Result};
use crate::rng;

/// Minimum per-class sample count for a stratified three-way split.
pub const MIN_CLASS_SIZE: usize = 4;

/// Fractions for train and validation; the test part takes the remainder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitRatios {
    pub train: f64,
    pub validation: f64,
}

impl Default for SplitRatios {
    fn default() -> Self {
        SplitRatios {
            train: 0.5,
            validation: 0.25,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitIndices {
    pub train: Vec<usize>,
    pub validation: Vec<usize>,
    pub test: Vec<usize>,
}

/// Shuffles each class with the seeded RNG and cuts it into train,
/// validation and test parts: `floor(ratio * class size)` rows for train and
/// validation, the rest for test. Each part is returned in ascending order.
pub fn stratified_split(dataset: &Dataset, ratios: SplitRatios, seed: u64) -> Result<SplitIndices> {
    if !(ratios.train > 0.0 && ratios.validation > 0.0 && ratios.train + ratios.validation < 1.0) {
        return Err(Error::Config(format!(
            "split ratios {}:{} leave no room for a test part",
            ratios.train, ratios.validation
        )));
    }
    let labels = dataset.labels()?;
    let mut rng = rng::seeded(seed);
    let mut out = SplitIndices {
        train: Vec::new(),
        validation: Vec::new(),
        test: Vec::new(),
    };
    for class in [Label::Positive, Label::Negative] {
        let mut members: Vec<usize> = (0..dataset.n()).filter(|&i| labels[i] == class).collect();
        if members.len() < MIN_CLASS_SIZE {
            return Err(Error::ClassTooSmall {
                class: dataset.classes().name(class).to_string(),
                count: members.len(),
                need: MIN_CLASS_SIZE,
            });
        }
        members.shuffle(&mut rng);
        let n = members.len() as f64;
        // the epsilon keeps exact products such as 0.3 * 10 from flooring low
        let n_train = (ratios.train * n + 1e-9).floor() as usize;
        let n_val = (ratios.validation * n + 1e-9).floor() as usize;
        out.train.extend_from_slice(&members[..n_train]);
        out.validation.extend_from_slice(&members[n_train..n_train + n_val]);
        out.test.extend_from_slice(&members[n_train + n_val..]);
    }
    out.train.sort_unstable();
    out.validation.sort_unstable();
    out.test.sort_unstable();
    Ok(out)
}
