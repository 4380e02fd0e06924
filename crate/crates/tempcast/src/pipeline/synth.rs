//! Seeded synthetic weather series: seasonal cycle plus an AR(1)
//! disturbance, with the remaining measurements derived so that every
//! observation invariant holds. Stands in for the defunct live data source
//! in tests, docs and benchmarks.

use std::io::Write;
use std::path::Path;

use chrono::{Days, NaiveDate};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::datamodel::{DailyObservation, BASE_FEATURE_NAMES};

/// First generated date; fixed so output depends only on the parameters.
const START_DATE: (i32, u32, u32) = (2015, 1, 1);

/// Parameters of the synthetic series.
///
/// Mean temperature follows
/// `base_temp + seasonal_amplitude·sin(2π·day/365) + s(day)` where `s` is
/// an AR(1) process with coefficient `ar_coefficient` and innovation
/// standard deviation `noise_sd`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthParams {
    pub n_days: usize,
    pub base_temp: f64,
    pub seasonal_amplitude: f64,
    pub ar_coefficient: f64,
    pub noise_sd: f64,
    pub seed: u64,
}

impl Default for SynthParams {
    fn default() -> Self {
        Self {
            n_days: 1000,
            base_temp: 15.0,
            seasonal_amplitude: 10.0,
            ar_coefficient: 0.6,
            noise_sd: 2.0,
            seed: 42,
        }
    }
}

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("n_days must be at least {min}, got {got}")]
    TooFewDays { min: usize, got: usize },

    #[error("ar_coefficient must lie in (-1, 1), got {0}")]
    UnstableAr(f64),

    #[error("noise_sd must be finite and non-negative, got {0}")]
    BadNoise(f64),

    #[error("base_temp and seasonal_amplitude must be finite")]
    NonFiniteLevel,
}

impl SynthParams {
    /// Smallest series worth generating: the default lag depth plus a
    /// handful of rows on either side of the split.
    pub const MIN_DAYS: usize = 13;

    pub fn validate(&self) -> Result<(), SynthError> {
        if self.n_days < Self::MIN_DAYS {
            return Err(SynthError::TooFewDays {
                min: Self::MIN_DAYS,
                got: self.n_days,
            });
        }
        if !(self.ar_coefficient > -1.0 && self.ar_coefficient < 1.0) {
            return Err(SynthError::UnstableAr(self.ar_coefficient));
        }
        if !(self.noise_sd >= 0.0 && self.noise_sd.is_finite()) {
            return Err(SynthError::BadNoise(self.noise_sd));
        }
        if !self.base_temp.is_finite() || !self.seasonal_amplitude.is_finite() {
            return Err(SynthError::NonFiniteLevel);
        }
        Ok(())
    }
}

/// Generate a consecutive-day synthetic series, fully determined by the
/// parameters (same seed, same bytes).
pub fn generate_synthetic(params: &SynthParams) -> Result<Vec<DailyObservation>, SynthError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let innovations = Normal::new(0.0, params.noise_sd).expect("validated noise_sd");
    let pressure_noise = Normal::new(0.0, 5.0).expect("constant sd");
    let start = NaiveDate::from_ymd_opt(START_DATE.0, START_DATE.1, START_DATE.2)
        .expect("valid start date");

    let mut ar_state = 0.0;
    let mut out = Vec::with_capacity(params.n_days);
    for day in 0..params.n_days {
        ar_state = params.ar_coefficient * ar_state + innovations.sample(&mut rng);
        let seasonal = params.seasonal_amplitude
            * (2.0 * std::f64::consts::PI * day as f64 / 365.0).sin();
        let meantempm = params.base_temp + seasonal + ar_state;

        let spread_hi: f64 = rng.random_range(1.0..6.0);
        let spread_lo: f64 = rng.random_range(1.0..6.0);
        let meanhumidity: f64 = rng.random_range(30.0..95.0);
        // Dew point gap from relative humidity, rule-of-thumb scale, plus
        // jitter so no column is an exact affine combination of others
        // (exact collinearity would be flagged as rank deficiency, and real
        // measurements never exhibit it). Same reason the up/down spreads
        // are drawn independently.
        let dew_gap = (100.0 - meanhumidity) / 5.0 + rng.random_range(-0.8..0.8);
        let dew_spread_hi: f64 = rng.random_range(0.5..2.5);
        let dew_spread_lo: f64 = rng.random_range(0.5..2.5);

        let rain_draw: f64 = rng.random_range(0.0..1.0);
        let rain_amount: f64 = rng.random_range(0.1..12.0);
        let precipm = if rain_draw < 0.3 { rain_amount } else { 0.0 };

        let obs = DailyObservation {
            date: start + Days::new(day as u64),
            meantempm,
            maxtempm: meantempm + spread_hi,
            mintempm: meantempm - spread_lo,
            meandewptm: meantempm - dew_gap,
            maxdewptm: meantempm - dew_gap + dew_spread_hi,
            mindewptm: meantempm - dew_gap - dew_spread_lo,
            meanhumidity,
            precipm,
            meanpressurem: 1013.25 + pressure_noise.sample(&mut rng),
            meanwindspdm: rng.random_range(0.0..30.0),
        };
        debug_assert!(obs.validate().is_ok());
        out.push(obs);
    }
    Ok(out)
}

/// Write observations as CSV with the canonical column names.
///
/// Floats use the shortest round-trip representation, so ingesting the file
/// reproduces the generated values exactly.
pub fn write_observations_csv(
    obs: &[DailyObservation],
    path: &Path,
) -> std::io::Result<()> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(file, "date,{}", BASE_FEATURE_NAMES.join(","))?;
    for o in obs {
        let values = o.base_values();
        let cells: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        writeln!(file, "{},{}", o.date.format("%Y-%m-%d"), cells.join(","))?;
    }
    file.flush()
}
