//! CSV ingestion with visible data loss.

use std::path::Path;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::{CsvSchema, DailyObservation, DataError};

/// What came out of a CSV file: the usable observations plus a tally of
/// everything that was dropped on the way.
#[derive(Debug, Clone)]
pub struct IngestReport {
    /// Observations sorted by date, strictly increasing.
    pub observations: Vec<DailyObservation>,
    pub stats: IngestStats,
}

/// Drop counters surfaced so data loss is never silent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestStats {
    /// Data rows read from the file (header excluded).
    pub rows_read: usize,
    /// Rows dropped because a required cell was empty or unparseable.
    pub rows_dropped_missing: usize,
    /// Rows dropped because the parsed values violate a physical invariant.
    pub rows_dropped_invalid: usize,
}

/// Read daily observations from a CSV file.
///
/// The file must be UTF-8 with a header row; dates are ISO-8601
/// (`YYYY-MM-DD`), numeric cells plain decimal, and an empty cell means
/// missing. Rows with any missing or unparseable required value are dropped
/// and counted, as are rows violating observation invariants. The result is
/// sorted by date.
///
/// # Errors
///
/// * the file cannot be opened,
/// * the header lacks a column required by `schema`,
/// * two rows share a date,
/// * no usable rows remain.
pub fn ingest_csv(path: &Path, schema: &CsvSchema) -> Result<IngestReport, DataError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_path(path)
        .map_err(|source| DataError::FileOpen {
            path: path.to_path_buf(),
            source: source.into(),
        })?;

    let headers = reader
        .headers()
        .map_err(|source| DataError::CsvRead {
            path: path.to_path_buf(),
            source,
        })?
        .clone();
    let column_index = |name: &str| -> Result<usize, DataError> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| DataError::MissingColumn {
                column: name.to_string(),
            })
    };

    let date_idx = column_index(&schema.date)?;
    let mut numeric_idx = [0usize; 10];
    for (slot, (_, column)) in numeric_idx.iter_mut().zip(schema.numeric_columns()) {
        *slot = column_index(column)?;
    }

    let mut stats = IngestStats {
        rows_read: 0,
        rows_dropped_missing: 0,
        rows_dropped_invalid: 0,
    };
    let mut observations = Vec::new();

    for record in reader.records() {
        let record = record.map_err(|source| DataError::CsvRead {
            path: path.to_path_buf(),
            source,
        })?;
        stats.rows_read += 1;

        let Some(date) = record
            .get(date_idx)
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .and_then(|s| NaiveDate::parse_from_str(s, "%Y-%m-%d").ok())
        else {
            stats.rows_dropped_missing += 1;
            continue;
        };

        let mut values = [0.0f64; 10];
        let mut missing = false;
        for (slot, &idx) in values.iter_mut().zip(&numeric_idx) {
            match record.get(idx).map(str::trim).filter(|s| !s.is_empty()) {
                Some(cell) => match cell.parse::<f64>() {
                    Ok(v) if v.is_finite() => *slot = v,
                    _ => {
                        missing = true;
                        break;
                    }
                },
                None => {
                    missing = true;
                    break;
                }
            }
        }
        if missing {
            stats.rows_dropped_missing += 1;
            continue;
        }

        let obs = DailyObservation {
            date,
            meantempm: values[0],
            maxtempm: values[1],
            mintempm: values[2],
            meandewptm: values[3],
            maxdewptm: values[4],
            mindewptm: values[5],
            meanhumidity: values[6],
            precipm: values[7],
            meanpressurem: values[8],
            meanwindspdm: values[9],
        };
        if obs.validate().is_err() {
            stats.rows_dropped_invalid += 1;
            continue;
        }
        observations.push(obs);
    }

    observations.sort_by_key(|o| o.date);
    for pair in observations.windows(2) {
        if pair[0].date == pair[1].date {
            return Err(DataError::DuplicateDate { date: pair[0].date });
        }
    }
    if observations.is_empty() {
        return Err(DataError::ZeroUsableRows {
            path: path.to_path_buf(),
        });
    }

    Ok(IngestReport {
        observations,
        stats,
    })
}
