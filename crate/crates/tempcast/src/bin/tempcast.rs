//! Command-line front end for the forecasting pipeline.
//!
//! Exit codes: 0 on success, 1 when a pipeline stage fails, 2 on usage
//! errors (clap's default).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tempcast::datamodel::{build_lag_features, ingest_csv, CsvSchema, SplitStrategy};
use tempcast::pipeline::{
    evaluate, export_scatter, generate_synthetic, run_pipeline, run_selection,
    to_deterministic_json, write_observations_csv, DataSource, PipelineConfig, SynthParams,
    TrainedModel,
};

#[derive(Parser)]
#[command(name = "tempcast", version, about = "Temperature forecasting by lagged linear regression")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and write report.json, summary.txt,
    /// scatter.csv and scatter.svg.
    Run(RunArgs),
    /// Generate a synthetic daily-weather CSV.
    Synth(SynthArgs),
    /// Run feature selection only and write the correlation table and
    /// elimination trace.
    Select(RunArgs),
    /// Fit a model and write model.json plus summary.txt.
    Train(RunArgs),
    /// Evaluate a trained model against a CSV dataset.
    Evaluate(EvaluateArgs),
}

#[derive(Args)]
struct SourceArgs {
    /// Input CSV of daily observations.
    #[arg(long, group = "source", required = true)]
    input: Option<PathBuf>,

    /// Use the synthetic generator instead of a CSV file.
    #[arg(long, group = "source")]
    synth: bool,

    /// Remap a CSV column, e.g. --col meantempm=avg_temp (repeatable).
    #[arg(long = "col", value_name = "FIELD=COLUMN")]
    columns: Vec<String>,

    /// Days to generate (synthetic source).
    #[arg(long, default_value_t = 1000)]
    n_days: usize,

    /// Innovation standard deviation in °C (synthetic source).
    #[arg(long, default_value_t = 2.0)]
    noise_sd: f64,

    /// AR(1) coefficient of the disturbance (synthetic source).
    #[arg(long, default_value_t = 0.6)]
    ar: f64,

    /// Seasonal amplitude in °C (synthetic source).
    #[arg(long, default_value_t = 10.0)]
    amplitude: f64,

    /// Mean temperature level in °C (synthetic source).
    #[arg(long, default_value_t = 15.0)]
    base_temp: f64,
}

impl SourceArgs {
    fn schema(&self) -> Result<CsvSchema, String> {
        let mut schema = CsvSchema::default();
        for mapping in &self.columns {
            let (field, column) = mapping
                .split_once('=')
                .ok_or_else(|| format!("--col expects FIELD=COLUMN, got '{mapping}'"))?;
            schema.set(field, column).map_err(|e| e.to_string())?;
        }
        Ok(schema)
    }

    fn synth_params(&self, seed: u64) -> SynthParams {
        SynthParams {
            n_days: self.n_days,
            base_temp: self.base_temp,
            seasonal_amplitude: self.amplitude,
            ar_coefficient: self.ar,
            noise_sd: self.noise_sd,
            seed,
        }
    }

    fn data_source(&self, seed: u64) -> Result<DataSource, String> {
        if self.synth {
            Ok(DataSource::Synthetic {
                params: self.synth_params(seed),
            })
        } else {
            Ok(DataSource::Csv {
                path: self.input.clone().expect("clap enforces the source group"),
                schema: self.schema()?,
            })
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    source: SourceArgs,

    /// How many previous days feed each prediction.
    #[arg(long, default_value_t = 3)]
    lag_depth: usize,

    /// Minimum |r| against the target for a feature to survive.
    #[arg(long, default_value_t = 0.6)]
    corr_threshold: f64,

    /// Significance level for backward elimination.
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,

    /// Fraction of rows held out for testing.
    #[arg(long, default_value_t = 0.2)]
    test_fraction: f64,

    /// Split strategy: random (seeded) or chronological.
    #[arg(long = "split", default_value = "random")]
    split_strategy: SplitStrategy,

    /// Seed for the split (and the generator with --synth).
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Output directory for artifacts.
    #[arg(long)]
    out: PathBuf,
}

impl RunArgs {
    fn config(&self) -> Result<PipelineConfig, String> {
        Ok(PipelineConfig {
            source: self.source.data_source(self.seed)?,
            lag_depth: self.lag_depth,
            corr_threshold: self.corr_threshold,
            alpha: self.alpha,
            test_fraction: self.test_fraction,
            split_strategy: self.split_strategy,
            seed: self.seed,
            output_dir: self.out.clone(),
        })
    }
}

#[derive(Args)]
struct SynthArgs {
    /// Destination CSV path.
    #[arg(long)]
    out: PathBuf,

    #[arg(long, default_value_t = 1000)]
    n_days: usize,

    #[arg(long, default_value_t = 2.0)]
    noise_sd: f64,

    #[arg(long, default_value_t = 0.6)]
    ar: f64,

    #[arg(long, default_value_t = 10.0)]
    amplitude: f64,

    #[arg(long, default_value_t = 15.0)]
    base_temp: f64,

    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct EvaluateArgs {
    /// model.json written by `tempcast train`.
    #[arg(long)]
    model: PathBuf,

    /// CSV of daily observations to evaluate against.
    #[arg(long)]
    input: PathBuf,

    /// Remap a CSV column, e.g. --col meantempm=avg_temp (repeatable).
    #[arg(long = "col", value_name = "FIELD=COLUMN")]
    columns: Vec<String>,

    /// Output directory for evaluation.json, scatter.csv and scatter.svg.
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(&args),
        Command::Synth(args) => cmd_synth(&args),
        Command::Select(args) => cmd_select(&args),
        Command::Train(args) => cmd_train(&args),
        Command::Evaluate(args) => cmd_evaluate(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn cmd_run(args: &RunArgs) -> Result<(), String> {
    let cfg = args.config()?;
    let run = run_pipeline(&cfg).map_err(|e| e.to_string())?;
    println!(
        "kept {} of {} features after the correlation filter, {} after elimination",
        run.correlation.kept.len(),
        run.correlation.entries.len(),
        run.elimination.final_features.len()
    );
    println!(
        "test MAE: {:.3} °C over {} rows",
        run.evaluation.mae, run.evaluation.n_test
    );
    println!("artifacts written to {}", cfg.output_dir.display());
    Ok(())
}

fn cmd_synth(args: &SynthArgs) -> Result<(), String> {
    let params = SynthParams {
        n_days: args.n_days,
        base_temp: args.base_temp,
        seasonal_amplitude: args.amplitude,
        ar_coefficient: args.ar,
        noise_sd: args.noise_sd,
        seed: args.seed,
    };
    let observations = generate_synthetic(&params).map_err(|e| e.to_string())?;
    write_observations_csv(&observations, &args.out)
        .map_err(|e| format!("cannot write {}: {e}", args.out.display()))?;
    println!("wrote {} days to {}", observations.len(), args.out.display());
    Ok(())
}

fn cmd_select(args: &RunArgs) -> Result<(), String> {
    let cfg = args.config()?;
    let stages = run_selection(&cfg).map_err(|e| e.to_string())?;

    let correlation_table = stages.correlation.to_table("meantempm");
    let trace_table = stages.elimination.to_table();
    print!("{correlation_table}");
    println!();
    print!("{trace_table}");

    std::fs::create_dir_all(&cfg.output_dir)
        .map_err(|e| format!("cannot create {}: {e}", cfg.output_dir.display()))?;
    let selection = serde_json::json!({
        "correlation": stages.correlation,
        "elimination": stages.elimination,
    });
    write_text(
        &cfg.output_dir.join("selection.json"),
        &to_deterministic_json(&selection).map_err(|e| e.to_string())?,
    )?;
    write_text(&cfg.output_dir.join("correlation.txt"), &correlation_table)?;
    write_text(&cfg.output_dir.join("elimination.txt"), &trace_table)?;
    Ok(())
}

fn cmd_train(args: &RunArgs) -> Result<(), String> {
    let cfg = args.config()?;
    let stages = run_selection(&cfg).map_err(|e| e.to_string())?;
    let model = TrainedModel {
        lag_depth: cfg.lag_depth,
        fit: stages.fit,
    };

    print!("{}", model.fit.summary());
    std::fs::create_dir_all(&cfg.output_dir)
        .map_err(|e| format!("cannot create {}: {e}", cfg.output_dir.display()))?;
    write_text(
        &cfg.output_dir.join("model.json"),
        &to_deterministic_json(&model).map_err(|e| e.to_string())?,
    )?;
    write_text(&cfg.output_dir.join("summary.txt"), &model.fit.summary())?;
    Ok(())
}

fn cmd_evaluate(args: &EvaluateArgs) -> Result<(), String> {
    let text = std::fs::read_to_string(&args.model)
        .map_err(|e| format!("cannot read {}: {e}", args.model.display()))?;
    let model: TrainedModel =
        serde_json::from_str(&text).map_err(|e| format!("bad model file: {e}"))?;

    let mut schema = CsvSchema::default();
    for mapping in &args.columns {
        let (field, column) = mapping
            .split_once('=')
            .ok_or_else(|| format!("--col expects FIELD=COLUMN, got '{mapping}'"))?;
        schema.set(field, column).map_err(|e| e.to_string())?;
    }

    let ingested = ingest_csv(&args.input, &schema).map_err(|e| e.to_string())?;
    let dataset =
        build_lag_features(&ingested.observations, model.lag_depth).map_err(|e| e.to_string())?;
    let restricted = dataset
        .select_features(&model.fit.feature_names)
        .map_err(|e| e.to_string())?;
    let evaluation = evaluate(&model.fit, &restricted).map_err(|e| e.to_string())?;

    std::fs::create_dir_all(&args.out)
        .map_err(|e| format!("cannot create {}: {e}", args.out.display()))?;
    write_text(
        &args.out.join("evaluation.json"),
        &to_deterministic_json(&evaluation).map_err(|e| e.to_string())?,
    )?;
    export_scatter(&evaluation, &args.out).map_err(|e| e.to_string())?;
    println!("MAE: {:.3} °C over {} rows", evaluation.mae, evaluation.n_test);
    Ok(())
}

fn write_text(path: &std::path::Path, content: &str) -> Result<(), String> {
    std::fs::write(path, content).map_err(|e| format!("cannot write {}: {e}", path.display()))
}
