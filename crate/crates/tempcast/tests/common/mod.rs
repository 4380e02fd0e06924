//! Independent oracles for the acceptance suite.
//!
//! Nothing here may reuse the library's solve or CDF paths: least squares
//! goes through explicitly formed normal equations with Gaussian
//! elimination, and the t distribution is integrated numerically with an
//! exactly computed normalizing constant.

#![allow(dead_code)]

/// Solve `A·x = b` by Gaussian elimination with partial pivoting.
/// Returns `None` when a pivot collapses (singular system).
#[allow(clippy::needless_range_loop)] // indexed form mirrors the textbook algorithm
pub fn gaussian_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|row| row.len() == n));

    for k in 0..n {
        let pivot_row = (k..n)
            .max_by(|&i, &j| a[i][k].abs().partial_cmp(&a[j][k].abs()).unwrap())
            .unwrap();
        if a[pivot_row][k].abs() < 1e-12 {
            return None;
        }
        a.swap(k, pivot_row);
        b.swap(k, pivot_row);

        for i in (k + 1)..n {
            let factor = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= factor * a[k][j];
            }
            b[i] -= factor * b[k];
        }
    }

    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut acc = b[i];
        for j in (i + 1)..n {
            acc -= a[i][j] * x[j];
        }
        x[i] = acc / a[i][i];
    }
    Some(x)
}

/// Least-squares coefficients via the normal equations `XᵀX·k = Xᵀy`,
/// with `design` given as rows.
pub fn normal_equations_coefficients(design: &[Vec<f64>], y: &[f64]) -> Option<Vec<f64>> {
    let n = design.len();
    let p = design[0].len();
    assert_eq!(y.len(), n);

    let mut xtx = vec![vec![0.0; p]; p];
    let mut xty = vec![0.0; p];
    for (row, &yi) in design.iter().zip(y) {
        for i in 0..p {
            for j in 0..p {
                xtx[i][j] += row[i] * row[j];
            }
            xty[i] += row[i] * yi;
        }
    }
    gaussian_solve(xtx, xty)
}

/// Full inference through the normal-equations route: coefficients,
/// standard errors and two-sided p-values (the latter via numerically
/// integrated t tails).
pub struct OracleFit {
    pub coefficients: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub p_values: Vec<f64>,
}

pub fn normal_equations_inference(design: &[Vec<f64>], y: &[f64]) -> Option<OracleFit> {
    let n = design.len();
    let p = design[0].len();
    if n <= p {
        return None;
    }
    let coefficients = normal_equations_coefficients(design, y)?;

    let rss: f64 = design
        .iter()
        .zip(y)
        .map(|(row, &yi)| {
            let fitted: f64 = row.iter().zip(&coefficients).map(|(x, k)| x * k).sum();
            (yi - fitted) * (yi - fitted)
        })
        .sum();
    let df = n - p;
    let sigma2 = rss / df as f64;

    // diag((XᵀX)⁻¹) by solving against unit vectors.
    let mut xtx = vec![vec![0.0; p]; p];
    for row in design {
        for i in 0..p {
            for j in 0..p {
                xtx[i][j] += row[i] * row[j];
            }
        }
    }
    let mut std_errors = Vec::with_capacity(p);
    for j in 0..p {
        let mut e = vec![0.0; p];
        e[j] = 1.0;
        let col = gaussian_solve(xtx.clone(), e)?;
        std_errors.push((sigma2 * col[j]).sqrt());
    }

    let p_values = coefficients
        .iter()
        .zip(&std_errors)
        .map(|(&c, &se)| {
            if se == 0.0 {
                return if c == 0.0 { 1.0 } else { 0.0 };
            }
            let t = (c / se).abs();
            2.0 * (1.0 - simpson_t_cdf(t, df as u32))
        })
        .collect();

    Some(OracleFit {
        coefficients,
        std_errors,
        p_values,
    })
}

/// `Γ((ν+1)/2) / Γ(ν/2)` by the exact half-integer recurrence
/// (no Lanczos, no shared code with the library).
fn gamma_half_ratio(df: u32) -> f64 {
    let sqrt_pi = std::f64::consts::PI.sqrt();
    match df {
        1 => 1.0 / sqrt_pi,
        2 => sqrt_pi / 2.0,
        _ => (df as f64 - 1.0) / (df as f64 - 2.0) * gamma_half_ratio(df - 2),
    }
}

/// Student-t density with the exactly computed constant.
fn t_density(x: f64, df: u32) -> f64 {
    let v = df as f64;
    let constant = gamma_half_ratio(df) / (v * std::f64::consts::PI).sqrt();
    constant * (1.0 + x * x / v).powf(-(v + 1.0) / 2.0)
}

/// Student-t CDF by adaptive Simpson quadrature of the density over
/// `[0, |t|]`, using symmetry about zero.
pub fn simpson_t_cdf(t: f64, df: u32) -> f64 {
    if t == 0.0 {
        return 0.5;
    }
    let tail = adaptive_simpson(&|x| t_density(x, df), 0.0, t.abs(), 1e-10);
    if t > 0.0 {
        0.5 + tail
    } else {
        0.5 - tail
    }
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    let c = 0.5 * (a + b);
    let (fa, fb, fc) = (f(a), f(b), f(c));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fc + fb);
    simpson_step(f, a, b, fa, fb, fc, whole, eps, 40)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    fc: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let c = 0.5 * (a + b);
    let d = 0.5 * (a + c);
    let e = 0.5 * (c + b);
    let (fd, fe) = (f(d), f(e));
    let left = (c - a) / 6.0 * (fa + 4.0 * fd + fc);
    let right = (b - c) / 6.0 * (fc + 4.0 * fe + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, c, fa, fc, fd, left, eps / 2.0, depth - 1)
            + simpson_step(f, c, b, fc, fb, fe, right, eps / 2.0, depth - 1)
    }
}

/// One pass/fail line per acceptance criterion; panics on failure so the
/// test harness records it too.
pub fn criterion(name: &str, ok: bool) {
    println!("ACCEPTANCE {name}: {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "acceptance criterion '{name}' failed");
}
