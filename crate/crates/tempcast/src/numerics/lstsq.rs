//! Linear least squares via Householder QR.
//!
//! The design matrices produced by lagged weather features are strongly
//! collinear, so the solve goes through an orthogonal decomposition instead
//! of the normal equations (which would square the condition number). The
//! normal-equations route exists only as an independent oracle in the test
//! suite.

use super::{Matrix, NumericsError};

/// Relative rank tolerance: `|R_kk| < RANK_TOL * max_j |R_jj|` marks column
/// `k` as linearly dependent on its predecessors.
const RANK_TOL: f64 = 1e-10;

/// Output of [`lstsq`].
#[derive(Debug, Clone, PartialEq)]
pub struct LeastSquaresSolution {
    /// Minimizer of `‖y − X·k‖²`, length `p`.
    pub coefficients: Vec<f64>,
    /// The minimum value of the objective.
    pub residual_sum_squares: f64,
    /// Numerical column rank (equals `p` on success).
    pub rank: usize,
    /// `diag((XᵀX)⁻¹)`, obtained from the triangular factor as the squared
    /// row norms of `R⁻¹` — the normal-equations matrix is never formed.
    pub xtx_inverse_diagonal: Vec<f64>,
}

/// Solve `min ‖y − X·k‖²` for a full-column-rank `X` (`n ≥ p ≥ 1`).
///
/// Rank deficiency is reported as an error carrying the offending column
/// index so callers can name the collinear feature; for duplicated columns
/// the later copy is the one reported.
pub fn lstsq(x: &Matrix, y: &[f64]) -> Result<LeastSquaresSolution, NumericsError> {
    let n = x.rows();
    let p = x.cols();
    if p == 0 || n < p {
        return Err(NumericsError::InvalidLeastSquaresShape { rows: n, cols: p });
    }
    if y.len() != n {
        return Err(NumericsError::VectorLengthMismatch {
            expected: n,
            found: y.len(),
        });
    }
    if let Some(pos) = y.iter().position(|v| !v.is_finite()) {
        return Err(NumericsError::NonFiniteEntry { row: pos, col: 0 });
    }

    // Householder factorization, LINPACK storage: the upper triangle of `qr`
    // holds R minus its diagonal, `r_diag` holds the diagonal, and each
    // column below the diagonal holds the (rescaled) reflection vector.
    let mut qr = x.as_slice().to_vec();
    let mut r_diag = vec![0.0; p];
    let at = |i: usize, j: usize| i * p + j;

    for k in 0..p {
        let mut norm = 0.0;
        for i in k..n {
            norm = f64::hypot(norm, qr[at(i, k)]);
        }
        if norm == 0.0 {
            r_diag[k] = 0.0;
            continue;
        }
        if qr[at(k, k)] > 0.0 {
            norm = -norm;
        }
        for i in k..n {
            qr[at(i, k)] /= -norm;
        }
        qr[at(k, k)] += 1.0;

        for j in (k + 1)..p {
            let mut s = 0.0;
            for i in k..n {
                s += qr[at(i, k)] * qr[at(i, j)];
            }
            s = -s / qr[at(k, k)];
            for i in k..n {
                let v = qr[at(i, k)];
                qr[at(i, j)] += s * v;
            }
        }
        r_diag[k] = norm;
    }

    let max_diag = r_diag.iter().fold(0.0_f64, |m, d| m.max(d.abs()));
    let rank = r_diag.iter().filter(|d| d.abs() >= RANK_TOL * max_diag).count();
    if rank < p || max_diag == 0.0 {
        let column = r_diag
            .iter()
            .position(|d| d.abs() < RANK_TOL * max_diag || max_diag == 0.0)
            .unwrap_or(0);
        return Err(NumericsError::RankDeficient { column });
    }

    // Apply the reflections to y, giving Qᵀy in place.
    let mut qty = y.to_vec();
    for k in 0..p {
        let mut s = 0.0;
        for i in k..n {
            s += qr[at(i, k)] * qty[i];
        }
        s = -s / qr[at(k, k)];
        for i in k..n {
            qty[i] += s * qr[at(i, k)];
        }
    }

    // Back substitution: R·k = (Qᵀy)[..p].
    let mut coefficients = qty[..p].to_vec();
    for i in (0..p).rev() {
        for j in (i + 1)..p {
            coefficients[i] -= qr[at(i, j)] * coefficients[j];
        }
        coefficients[i] /= r_diag[i];
    }

    // The tail of Qᵀy is orthogonal to the column space: its squared norm
    // is exactly the minimized objective.
    let residual_sum_squares = qty[p..].iter().map(|v| v * v).sum();

    // diag((XᵀX)⁻¹) = squared row norms of R⁻¹, one column of R⁻¹ at a time.
    let mut diag = vec![0.0; p];
    let mut col = vec![0.0; p];
    for j in 0..p {
        for v in col.iter_mut() {
            *v = 0.0;
        }
        col[j] = 1.0;
        for i in (0..=j).rev() {
            for m in (i + 1)..=j {
                col[i] -= qr[at(i, m)] * col[m];
            }
            col[i] /= r_diag[i];
        }
        for i in 0..=j {
            diag[i] += col[i] * col[i];
        }
    }

    Ok(LeastSquaresSolution {
        coefficients,
        residual_sum_squares,
        rank,
        xtx_inverse_diagonal: diag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn simple_design() -> Matrix {
        Matrix::new(3, 2, vec![1.0, 0.0, 1.0, 1.0, 1.0, 2.0]).unwrap()
    }

    #[test]
    fn exact_affine_fit() {
        let sol = lstsq(&simple_design(), &[1.0, 3.0, 5.0]).unwrap();
        assert_abs_diff_eq!(sol.coefficients[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(sol.coefficients[1], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(sol.residual_sum_squares, 0.0, epsilon = 1e-12);
        assert_eq!(sol.rank, 2);
    }

    #[test]
    fn overdetermined_fit_matches_closed_form() {
        // slope = Sxy/Sxx = 1/2, intercept = ȳ − slope·x̄ = 1/6, RSS = 1/6.
        let sol = lstsq(&simple_design(), &[0.0, 1.0, 1.0]).unwrap();
        assert_abs_diff_eq!(sol.coefficients[0], 1.0 / 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(sol.coefficients[1], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(sol.residual_sum_squares, 1.0 / 6.0, epsilon = 1e-12);
    }

    #[test]
    fn xtx_inverse_diagonal_matches_hand_inverse() {
        // XᵀX = [[3,3],[3,5]] ⇒ (XᵀX)⁻¹ diag = [5/6, 1/2].
        let sol = lstsq(&simple_design(), &[0.0, 1.0, 1.0]).unwrap();
        assert_abs_diff_eq!(sol.xtx_inverse_diagonal[0], 5.0 / 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(sol.xtx_inverse_diagonal[1], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn duplicated_column_is_rank_deficient() {
        let x = Matrix::new(4, 3, vec![
            1.0, 2.0, 2.0,
            1.0, 3.0, 3.0,
            1.0, 5.0, 5.0,
            1.0, 7.0, 7.0,
        ])
        .unwrap();
        let err = lstsq(&x, &[1.0, 2.0, 3.0, 4.0]).unwrap_err();
        // The later duplicate is the one flagged.
        assert!(matches!(err, NumericsError::RankDeficient { column: 2 }));
    }

    #[test]
    fn zero_matrix_is_rank_deficient() {
        let x = Matrix::zeros(3, 2);
        let err = lstsq(&x, &[1.0, 2.0, 3.0]).unwrap_err();
        assert!(matches!(err, NumericsError::RankDeficient { column: 0 }));
    }

    #[test]
    fn shape_errors() {
        let x = simple_design();
        assert!(matches!(
            lstsq(&x, &[1.0, 2.0]).unwrap_err(),
            NumericsError::VectorLengthMismatch { expected: 3, found: 2 }
        ));
        let wide = Matrix::new(2, 3, vec![1.0; 6]).unwrap();
        assert!(matches!(
            lstsq(&wide, &[1.0, 2.0]).unwrap_err(),
            NumericsError::InvalidLeastSquaresShape { rows: 2, cols: 3 }
        ));
    }

    #[test]
    fn residuals_orthogonal_to_columns() {
        let x = Matrix::new(5, 3, vec![
            1.0, 0.4, -1.2,
            1.0, 1.1, 0.3,
            1.0, -0.6, 0.9,
            1.0, 2.2, -0.4,
            1.0, 0.9, 1.7,
        ])
        .unwrap();
        let y = [0.3, 1.9, -0.2, 3.4, 2.8];
        let sol = lstsq(&x, &y).unwrap();
        let fitted = x.mul_vec(&sol.coefficients);
        let resid: Vec<f64> = y.iter().zip(&fitted).map(|(a, b)| a - b).collect();
        for g in x.transpose_mul_vec(&resid) {
            assert_abs_diff_eq!(g, 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn appending_a_column_never_increases_rss() {
        let base = Matrix::new(6, 2, vec![
            1.0, 0.5,
            1.0, 1.5,
            1.0, 2.0,
            1.0, 3.5,
            1.0, 4.0,
            1.0, 5.5,
        ])
        .unwrap();
        let y = [0.0, 2.2, 1.8, 4.1, 3.9, 6.2];
        let rss_base = lstsq(&base, &y).unwrap().residual_sum_squares;

        let mut rows = Vec::new();
        for r in 0..base.rows() {
            let mut row = base.row(r).to_vec();
            let extra = (r as f64).sin();
            row.push(extra);
            rows.push(row);
        }
        let wider = Matrix::from_rows(&rows).unwrap();
        let rss_wider = lstsq(&wider, &y).unwrap().residual_sum_squares;
        assert!(rss_wider <= rss_base + 1e-12);
    }
}
