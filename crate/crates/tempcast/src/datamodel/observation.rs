//! One day of raw weather measurements and the CSV column mapping.

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::DataError;

/// Names of the ten base measurements, in canonical column order. Lag
/// features are these names with a `_k` suffix for the day offset.
pub const BASE_FEATURE_NAMES: [&str; 10] = [
    "meantempm",
    "maxtempm",
    "mintempm",
    "meandewptm",
    "maxdewptm",
    "mindewptm",
    "meanhumidity",
    "precipm",
    "meanpressurem",
    "meanwindspdm",
];

/// A single day's weather measurements.
///
/// Temperatures and dew points are in °C, humidity in percent,
/// precipitation in mm, pressure in hPa and wind speed in km/h.
/// [`DailyObservation::validate`] checks the physical invariants; the
/// ingest and generator paths never hand out an invalid observation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DailyObservation {
    pub date: NaiveDate,
    pub meantempm: f64,
    pub maxtempm: f64,
    pub mintempm: f64,
    pub meandewptm: f64,
    pub maxdewptm: f64,
    pub mindewptm: f64,
    pub meanhumidity: f64,
    pub precipm: f64,
    pub meanpressurem: f64,
    pub meanwindspdm: f64,
}

impl DailyObservation {
    /// Check the physical invariants of a day's measurements.
    pub fn validate(&self) -> Result<(), DataError> {
        let all = self.base_values();
        if all.iter().any(|v| !v.is_finite()) {
            return Err(self.invalid("non-finite measurement"));
        }
        if !(self.mintempm <= self.meantempm && self.meantempm <= self.maxtempm) {
            return Err(self.invalid("temperatures must satisfy min <= mean <= max"));
        }
        if !(self.mindewptm <= self.meandewptm && self.meandewptm <= self.maxdewptm) {
            return Err(self.invalid("dew points must satisfy min <= mean <= max"));
        }
        if !(0.0..=100.0).contains(&self.meanhumidity) {
            return Err(self.invalid("humidity must lie in [0, 100]"));
        }
        if self.precipm < 0.0 {
            return Err(self.invalid("precipitation must be non-negative"));
        }
        if self.meanpressurem <= 0.0 {
            return Err(self.invalid("pressure must be positive"));
        }
        if self.meanwindspdm < 0.0 {
            return Err(self.invalid("wind speed must be non-negative"));
        }
        Ok(())
    }

    /// The ten base measurements in [`BASE_FEATURE_NAMES`] order.
    pub fn base_values(&self) -> [f64; 10] {
        [
            self.meantempm,
            self.maxtempm,
            self.mintempm,
            self.meandewptm,
            self.maxdewptm,
            self.mindewptm,
            self.meanhumidity,
            self.precipm,
            self.meanpressurem,
            self.meanwindspdm,
        ]
    }

    fn invalid(&self, reason: &str) -> DataError {
        DataError::InvalidObservation {
            date: self.date,
            reason: reason.to_string(),
        }
    }
}

/// Maps each required field to a CSV column name.
///
/// Defaults to the canonical names, matching both the synthetic generator's
/// output and Weather-Underground-style exports. Individual columns can be
/// remapped with [`CsvSchema::set`] (the CLI exposes this as repeated
/// `--col field=column` flags).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvSchema {
    pub date: String,
    pub meantempm: String,
    pub maxtempm: String,
    pub mintempm: String,
    pub meandewptm: String,
    pub maxdewptm: String,
    pub mindewptm: String,
    pub meanhumidity: String,
    pub precipm: String,
    pub meanpressurem: String,
    pub meanwindspdm: String,
}

impl Default for CsvSchema {
    fn default() -> Self {
        Self {
            date: "date".to_string(),
            meantempm: "meantempm".to_string(),
            maxtempm: "maxtempm".to_string(),
            mintempm: "mintempm".to_string(),
            meandewptm: "meandewptm".to_string(),
            maxdewptm: "maxdewptm".to_string(),
            mindewptm: "mindewptm".to_string(),
            meanhumidity: "meanhumidity".to_string(),
            precipm: "precipm".to_string(),
            meanpressurem: "meanpressurem".to_string(),
            meanwindspdm: "meanwindspdm".to_string(),
        }
    }
}

impl CsvSchema {
    /// Remap one field to a different CSV column.
    pub fn set(&mut self, field: &str, column: &str) -> Result<(), DataError> {
        let slot = match field {
            "date" => &mut self.date,
            "meantempm" => &mut self.meantempm,
            "maxtempm" => &mut self.maxtempm,
            "mintempm" => &mut self.mintempm,
            "meandewptm" => &mut self.meandewptm,
            "maxdewptm" => &mut self.maxdewptm,
            "mindewptm" => &mut self.mindewptm,
            "meanhumidity" => &mut self.meanhumidity,
            "precipm" => &mut self.precipm,
            "meanpressurem" => &mut self.meanpressurem,
            "meanwindspdm" => &mut self.meanwindspdm,
            _ => {
                return Err(DataError::UnknownSchemaField {
                    field: field.to_string(),
                })
            }
        };
        *slot = column.to_string();
        Ok(())
    }

    /// `(field, column)` pairs for the ten numeric measurements, in
    /// [`BASE_FEATURE_NAMES`] order.
    pub fn numeric_columns(&self) -> [(&'static str, &str); 10] {
        [
            ("meantempm", self.meantempm.as_str()),
            ("maxtempm", self.maxtempm.as_str()),
            ("mintempm", self.mintempm.as_str()),
            ("meandewptm", self.meandewptm.as_str()),
            ("maxdewptm", self.maxdewptm.as_str()),
            ("mindewptm", self.mindewptm.as_str()),
            ("meanhumidity", self.meanhumidity.as_str()),
            ("precipm", self.precipm.as_str()),
            ("meanpressurem", self.meanpressurem.as_str()),
            ("meanwindspdm", self.meanwindspdm.as_str()),
        ]
    }
}
