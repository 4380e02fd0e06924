//! Train/test partitioning.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{DataError, SupervisedDataset};

/// How rows are assigned to the test set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitStrategy {
    /// Deterministic shuffle of row indices keyed by the seed. Mirrors the
    /// conventional random hold-out, but reproducible by construction.
    #[serde(rename = "seeded-random")]
    SeededRandom,
    /// The latest rows form the test set. The leak-free choice for
    /// time-series data.
    #[serde(rename = "chronological")]
    Chronological,
}

impl fmt::Display for SplitStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplitStrategy::SeededRandom => f.write_str("seeded-random"),
            SplitStrategy::Chronological => f.write_str("chronological"),
        }
    }
}

impl FromStr for SplitStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" | "seeded-random" => Ok(SplitStrategy::SeededRandom),
            "chronological" => Ok(SplitStrategy::Chronological),
            other => Err(format!(
                "unknown split strategy '{other}' (expected 'random' or 'chronological')"
            )),
        }
    }
}

/// A disjoint train/test partition plus the parameters that produced it.
#[derive(Debug, Clone)]
pub struct SplitDataset {
    pub train: SupervisedDataset,
    pub test: SupervisedDataset,
    pub seed: u64,
    pub strategy: SplitStrategy,
}

/// Partition `ds` into train and test rows.
///
/// The test size is `round(test_fraction * n)` with ties rounding half up;
/// row order within each part follows the source order. The seeded-random
/// strategy is a pure function of `(seed, n)`.
pub fn split(
    ds: &SupervisedDataset,
    test_fraction: f64,
    strategy: SplitStrategy,
    seed: u64,
) -> Result<SplitDataset, DataError> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(DataError::InvalidTestFraction {
            fraction: test_fraction,
        });
    }
    let n = ds.n_rows();
    let n_test = (test_fraction * n as f64 + 0.5).floor() as usize;
    if n_test == 0 || n_test >= n {
        return Err(DataError::DegenerateSplit {
            n,
            fraction: test_fraction,
        });
    }

    let (mut train_idx, mut test_idx): (Vec<usize>, Vec<usize>) = match strategy {
        SplitStrategy::SeededRandom => {
            let mut indices: Vec<usize> = (0..n).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            indices.shuffle(&mut rng);
            let test = indices[..n_test].to_vec();
            let train = indices[n_test..].to_vec();
            (train, test)
        }
        SplitStrategy::Chronological => {
            ((0..n - n_test).collect(), (n - n_test..n).collect())
        }
    };
    train_idx.sort_unstable();
    test_idx.sort_unstable();

    Ok(SplitDataset {
        train: ds.subset_rows(&train_idx),
        test: ds.subset_rows(&test_idx),
        seed,
        strategy,
    })
}
