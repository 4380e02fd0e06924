//! End-to-end orchestration: data source → lag features → correlation
//! filter → split → backward elimination (train only) → held-out
//! evaluation, plus the report/plot artifacts.

mod report;
mod scatter;
mod synth;

pub use report::to_deterministic_json;
pub use scatter::export_scatter;
pub use synth::{generate_synthetic, write_observations_csv, SynthError, SynthParams};

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::datamodel::{
    build_lag_features, ingest_csv, split, CsvSchema, DataError, IngestStats, SplitStrategy,
    SupervisedDataset,
};
use crate::regression::RegressionFit;
use crate::selection::{
    backward_eliminate, correlation_filter, CorrelationReport, EliminationTrace, SelectionError,
};

/// Where the daily observations come from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
#[allow(clippy::large_enum_variant)] // one config value per run, size is irrelevant
pub enum DataSource {
    Csv {
        path: PathBuf,
        schema: CsvSchema,
    },
    Synthetic {
        params: SynthParams,
    },
}

/// Everything a run needs. The scalar defaults: 3-day lags, the
/// |r| ≥ 0.6 filter, α = 0.05, an 80/20 seeded-random split.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub source: DataSource,
    pub lag_depth: usize,
    pub corr_threshold: f64,
    pub alpha: f64,
    pub test_fraction: f64,
    pub split_strategy: SplitStrategy,
    pub seed: u64,
    /// Destination for artifacts; not part of the report (two runs into
    /// different directories still produce identical bytes).
    #[serde(skip, default)]
    pub output_dir: PathBuf,
}

pub const DEFAULT_LAG_DEPTH: usize = 3;
pub const DEFAULT_CORR_THRESHOLD: f64 = 0.6;
pub const DEFAULT_ALPHA: f64 = 0.05;
pub const DEFAULT_TEST_FRACTION: f64 = 0.2;
pub const DEFAULT_SEED: u64 = 42;

impl PipelineConfig {
    /// Config with the standard defaults for the given source.
    pub fn new(source: DataSource, output_dir: impl Into<PathBuf>) -> Self {
        Self {
            source,
            lag_depth: DEFAULT_LAG_DEPTH,
            corr_threshold: DEFAULT_CORR_THRESHOLD,
            alpha: DEFAULT_ALPHA,
            test_fraction: DEFAULT_TEST_FRACTION,
            split_strategy: SplitStrategy::SeededRandom,
            seed: DEFAULT_SEED,
            output_dir: output_dir.into(),
        }
    }

    /// Default run on the synthetic generator.
    pub fn synthetic_default(output_dir: impl Into<PathBuf>) -> Self {
        Self::new(
            DataSource::Synthetic {
                params: SynthParams::default(),
            },
            output_dir,
        )
    }

    /// Default run on a CSV file with canonical column names.
    pub fn from_csv(path: impl Into<PathBuf>, output_dir: impl Into<PathBuf>) -> Self {
        Self::new(
            DataSource::Csv {
                path: path.into(),
                schema: CsvSchema::default(),
            },
            output_dir,
        )
    }
}

/// Held-out accuracy: mean absolute error plus the raw pairs behind the
/// scatter plot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    /// `(1/n) Σ |actual − predicted|`, in °C.
    pub mae: f64,
    pub n_test: usize,
    /// `(actual, predicted)` per test row, in test-set order.
    pub pairs: Vec<(f64, f64)>,
}

/// How the observations were obtained, echoed into the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SourceSummary {
    Csv {
        path: PathBuf,
        stats: IngestStats,
        observations: usize,
    },
    Synthetic {
        params: SynthParams,
        observations: usize,
    },
}

/// The full outcome of a pipeline run. Serializing this is the
/// `report.json` contract; the stored fit and test set are sufficient to
/// re-run the evaluation offline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: PipelineConfig,
    pub source: SourceSummary,
    pub correlation: CorrelationReport,
    pub elimination: EliminationTrace,
    pub fit: RegressionFit,
    pub evaluation: EvaluationReport,
    /// Test rows restricted to the final feature set.
    pub test_set: SupervisedDataset,
}

/// A fitted model plus the lag depth needed to rebuild its features,
/// written by `train` and consumed by `evaluate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub lag_depth: usize,
    pub fit: RegressionFit,
}

/// Pipeline failures carry the stage that produced them.
#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("ingest: {0}")]
    Ingest(DataError),

    #[error("generate: {0}")]
    Generate(#[from] SynthError),

    #[error("lag-features: {0}")]
    LagFeatures(DataError),

    #[error("correlation-filter: {0}")]
    CorrelationFilter(SelectionError),

    #[error("split: {0}")]
    Split(DataError),

    #[error("backward-elimination: {0}")]
    Elimination(SelectionError),

    #[error("evaluate: test columns {found:?} do not match model features {expected:?}")]
    ColumnMismatch {
        expected: Vec<String>,
        found: Vec<String>,
    },

    #[error("evaluate: {0}")]
    Evaluate(crate::regression::RegressionError),

    #[error("evaluation has no pairs to export")]
    EmptyEvaluation,

    #[error("cannot write {path}: {source}")]
    WriteArtifact {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot encode report: {0}")]
    Encode(#[from] serde_json::Error),
}

/// Predict every test row and compute the mean absolute error.
///
/// The test columns must match the fit's features exactly (same names,
/// same order) — selection has already happened by the time this runs.
pub fn evaluate(
    fit: &RegressionFit,
    test: &SupervisedDataset,
) -> Result<EvaluationReport, PipelineError> {
    if test.feature_names() != fit.feature_names.as_slice() {
        return Err(PipelineError::ColumnMismatch {
            expected: fit.feature_names.clone(),
            found: test.feature_names().to_vec(),
        });
    }
    let mut pairs = Vec::with_capacity(test.n_rows());
    for (row, &actual) in test.rows().iter().zip(test.target()) {
        let predicted = fit.predict(row).map_err(PipelineError::Evaluate)?;
        pairs.push((actual, predicted));
    }
    let mae = pairs.iter().map(|(a, p)| (a - p).abs()).sum::<f64>() / pairs.len().max(1) as f64;
    Ok(EvaluationReport {
        mae,
        n_test: pairs.len(),
        pairs,
    })
}

/// Outcome of the stages shared by `run`, `select` and `train`: everything
/// up to and including the fit on the training rows.
#[derive(Debug, Clone)]
pub struct SelectionOutcome {
    pub source: SourceSummary,
    pub correlation: CorrelationReport,
    pub elimination: EliminationTrace,
    pub fit: RegressionFit,
    /// Held-out rows, still carrying every filtered feature column.
    pub test: SupervisedDataset,
}

/// Run the pipeline up to the fitted model, without touching the
/// filesystem: source → lag features → correlation filter → split →
/// backward elimination on the training rows.
pub fn run_selection(cfg: &PipelineConfig) -> Result<SelectionOutcome, PipelineError> {
    let (observations, source) = match &cfg.source {
        DataSource::Csv { path, schema } => {
            let ingested = ingest_csv(path, schema).map_err(PipelineError::Ingest)?;
            let summary = SourceSummary::Csv {
                path: path.clone(),
                stats: ingested.stats,
                observations: ingested.observations.len(),
            };
            (ingested.observations, summary)
        }
        DataSource::Synthetic { params } => {
            let observations = generate_synthetic(params)?;
            let summary = SourceSummary::Synthetic {
                params: params.clone(),
                observations: observations.len(),
            };
            (observations, summary)
        }
    };

    let dataset =
        build_lag_features(&observations, cfg.lag_depth).map_err(PipelineError::LagFeatures)?;
    let (filtered, correlation) = correlation_filter(&dataset, cfg.corr_threshold)
        .map_err(PipelineError::CorrelationFilter)?;
    let parts = split(&filtered, cfg.test_fraction, cfg.split_strategy, cfg.seed)
        .map_err(PipelineError::Split)?;
    // Elimination and the final fit see training rows only.
    let (fit, elimination) =
        backward_eliminate(&parts.train, cfg.alpha).map_err(PipelineError::Elimination)?;

    Ok(SelectionOutcome {
        source,
        correlation,
        elimination,
        fit,
        test: parts.test,
    })
}

/// Execute the full pipeline and write `report.json`, `summary.txt`,
/// `scatter.csv` and `scatter.svg` into the configured output directory.
///
/// The run is a pure function of the config. A stage failure halts the run
/// carrying the stage name, and nothing is written in that case.
pub fn run_pipeline(cfg: &PipelineConfig) -> Result<RunReport, PipelineError> {
    let stages = run_selection(cfg)?;
    let test_final = stages
        .test
        .select_features(&stages.fit.feature_names)
        .map_err(PipelineError::Split)?;
    let evaluation = evaluate(&stages.fit, &test_final)?;

    let run = RunReport {
        config: cfg.clone(),
        source: stages.source,
        correlation: stages.correlation,
        elimination: stages.elimination,
        fit: stages.fit,
        evaluation,
        test_set: test_final,
    };
    write_artifacts(&run, &cfg.output_dir)?;
    Ok(run)
}

/// Write the four-artifact bundle for a completed run.
pub fn write_artifacts(run: &RunReport, dir: &Path) -> Result<(), PipelineError> {
    // Render everything before touching the filesystem.
    let json = to_deterministic_json(run)?;
    let summary = run.fit.summary();
    let csv = scatter::render_csv(&run.evaluation);
    let svg = scatter::render_svg(&run.evaluation);

    std::fs::create_dir_all(dir).map_err(|source| PipelineError::WriteArtifact {
        path: dir.to_path_buf(),
        source,
    })?;
    let write = |name: &str, content: &str| -> Result<(), PipelineError> {
        std::fs::write(dir.join(name), content).map_err(|source| PipelineError::WriteArtifact {
            path: dir.join(name),
            source,
        })
    };
    write("report.json", &json)?;
    write("summary.txt", &summary)?;
    write("scatter.csv", &csv)?;
    write("scatter.svg", &svg)
}
