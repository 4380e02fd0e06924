//! Multiple linear regression with the classical inference summary.
//!
//! The fitted model is `y = k0 + k1·x1 + … + kp·xp`. Beyond the
//! coefficients, [`ols_fit`] reports per-term standard errors,
//! t-statistics and two-sided p-values, plus R², adjusted R² and the
//! overall F-test — everything the backward-elimination loop and the run
//! report consume.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::datamodel::SupervisedDataset;
use crate::numerics::{f_cdf, lstsq, student_t_cdf, Matrix, NumericsError};
use crate::numfmt::format_sig;

/// A fitted linear model with inference statistics.
///
/// Vectors indexed by term put the intercept first: `std_errors`,
/// `t_stats` and `p_values` have length `p + 1`, while `coefficients`
/// holds only the `p` slope terms (the intercept lives in `k0`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionFit {
    pub feature_names: Vec<String>,
    /// Intercept, in °C for the temperature pipeline.
    pub k0: f64,
    pub coefficients: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub t_stats: Vec<f64>,
    pub p_values: Vec<f64>,
    pub r_squared: f64,
    pub adj_r_squared: f64,
    pub f_statistic: f64,
    pub f_pvalue: f64,
    pub n_obs: usize,
    pub df_resid: usize,
}

/// Errors from fitting or applying a regression model.
#[derive(Debug, Error)]
pub enum RegressionError {
    #[error("need at least p + 2 = {need} observations for {p} features, got {n}")]
    InsufficientObservations { n: usize, p: usize, need: usize },

    #[error("feature '{feature}' is collinear with earlier columns")]
    RankDeficient { feature: String },

    #[error("input has {found} values but the model has {expected} features")]
    DimensionMismatch { expected: usize, found: usize },

    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Fit ordinary least squares with an intercept.
///
/// Requires `n >= p + 2` so at least one residual degree of freedom
/// remains for the error variance. Exactly collinear features surface as
/// [`RegressionError::RankDeficient`] naming the offending column (for a
/// duplicated pair, the later one).
pub fn ols_fit(ds: &SupervisedDataset) -> Result<RegressionFit, RegressionError> {
    let n = ds.n_rows();
    let p = ds.n_features();
    if n < p + 2 {
        return Err(RegressionError::InsufficientObservations {
            n,
            p,
            need: p + 2,
        });
    }

    // Design matrix with a leading column of ones.
    let mut data = Vec::with_capacity(n * (p + 1));
    for row in ds.rows() {
        data.push(1.0);
        data.extend_from_slice(row);
    }
    let design = Matrix::new(n, p + 1, data)?;
    let y = ds.target();

    let solution = lstsq(&design, y).map_err(|err| match err {
        NumericsError::RankDeficient { column } => RegressionError::RankDeficient {
            feature: if column == 0 {
                "intercept".to_string()
            } else {
                ds.feature_names()[column - 1].clone()
            },
        },
        other => RegressionError::Numerics(other),
    })?;

    let df_resid = n - p - 1;
    let rss = solution.residual_sum_squares;
    let sigma2 = rss / df_resid as f64;

    let std_errors: Vec<f64> = solution
        .xtx_inverse_diagonal
        .iter()
        .map(|d| (sigma2 * d).max(0.0).sqrt())
        .collect();
    let t_stats: Vec<f64> = solution
        .coefficients
        .iter()
        .zip(&std_errors)
        .map(|(&c, &se)| {
            if se > 0.0 {
                c / se
            } else if c == 0.0 {
                0.0
            } else {
                f64::INFINITY.copysign(c)
            }
        })
        .collect();
    let p_values: Vec<f64> = t_stats
        .iter()
        .map(|&t| 2.0 * (1.0 - student_t_cdf(t.abs(), df_resid as u32)))
        .collect();

    let mean_y = y.iter().sum::<f64>() / n as f64;
    let tss: f64 = y.iter().map(|v| (v - mean_y) * (v - mean_y)).sum();
    let (r_squared, adj_r_squared, f_statistic, f_pvalue) = if p == 0 {
        // Intercept-only model: nothing is explained, no overall test.
        (0.0, 0.0, 0.0, 1.0)
    } else if tss <= 0.0 {
        (0.0, 0.0, 0.0, 1.0)
    } else {
        let r2 = 1.0 - rss / tss;
        let adj = 1.0 - (1.0 - r2) * (n as f64 - 1.0) / df_resid as f64;
        let f = (r2 / p as f64) / ((1.0 - r2) / df_resid as f64);
        let fp = 1.0 - f_cdf(f, p as u32, df_resid as u32);
        (r2, adj, f, fp)
    };

    Ok(RegressionFit {
        feature_names: ds.feature_names().to_vec(),
        k0: solution.coefficients[0],
        coefficients: solution.coefficients[1..].to_vec(),
        std_errors,
        t_stats,
        p_values,
        r_squared,
        adj_r_squared,
        f_statistic,
        f_pvalue,
        n_obs: n,
        df_resid,
    })
}

impl RegressionFit {
    /// Evaluate `k0 + Σ ki·xi` on a feature vector.
    pub fn predict(&self, x: &[f64]) -> Result<f64, RegressionError> {
        if x.len() != self.coefficients.len() {
            return Err(RegressionError::DimensionMismatch {
                expected: self.coefficients.len(),
                found: x.len(),
            });
        }
        Ok(self.k0 + self.coefficients.iter().zip(x).map(|(k, v)| k * v).sum::<f64>())
    }

    /// Slope p-values, i.e. every term except the intercept.
    pub fn feature_p_values(&self) -> &[f64] {
        &self.p_values[1..]
    }

    /// Fixed-width text summary: one row per term, intercept first, then a
    /// footer with the fit diagnostics. Byte-stable for identical fits;
    /// p-values below 1e-15 print as 0 while the stored values stay exact.
    pub fn summary(&self) -> String {
        const NUM_W: usize = 14;
        // Wide enough for every term name and every footer label.
        let name_w = self
            .feature_names
            .iter()
            .map(String::len)
            .chain(std::iter::once("adj_r_squared".len()))
            .max()
            .unwrap_or(13);
        let rule_w = name_w + 4 * NUM_W;

        let display_p = |p: f64| format_sig(if p < 1e-15 { 0.0 } else { p }, 6);

        let mut out = String::new();
        out.push_str(&format!(
            "{:<name_w$}{:>NUM_W$}{:>NUM_W$}{:>NUM_W$}{:>NUM_W$}\n",
            "term", "coefficient", "std error", "t", "p"
        ));
        out.push_str(&"-".repeat(rule_w));
        out.push('\n');

        let terms = std::iter::once(("intercept", self.k0))
            .chain(
                self.feature_names
                    .iter()
                    .map(String::as_str)
                    .zip(self.coefficients.iter().copied()),
            )
            .enumerate();
        for (i, (name, coef)) in terms {
            out.push_str(&format!(
                "{:<name_w$}{:>NUM_W$}{:>NUM_W$}{:>NUM_W$}{:>NUM_W$}\n",
                name,
                format_sig(coef, 6),
                format_sig(self.std_errors[i], 6),
                format_sig(self.t_stats[i], 6),
                display_p(self.p_values[i]),
            ));
        }

        out.push_str(&"-".repeat(rule_w));
        out.push('\n');
        let footer: [(&str, String); 6] = [
            ("n_obs", self.n_obs.to_string()),
            ("df_resid", self.df_resid.to_string()),
            ("r_squared", format_sig(self.r_squared, 6)),
            ("adj_r_squared", format_sig(self.adj_r_squared, 6)),
            ("f_statistic", format_sig(self.f_statistic, 6)),
            ("f_pvalue", display_p(self.f_pvalue)),
        ];
        for (label, value) in footer {
            out.push_str(&format!("{label:<name_w$}{value:>NUM_W$}\n"));
        }
        out
    }
}
