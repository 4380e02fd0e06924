//! Special functions behind the p-values: log-gamma, the regularized
//! incomplete beta function, and the Student-t / F distribution CDFs.

use super::NumericsError;

/// Lanczos approximation (g = 7, 9 terms) for `ln Γ(z)`, `z > 0`.
///
/// Relative accuracy is around 1e-13 over the arguments used here, far
/// inside the 1e-10 budget of the incomplete beta evaluation.
pub fn ln_gamma(z: f64) -> f64 {
    assert!(z > 0.0, "ln_gamma requires a positive argument, got {z}");
    const G: f64 = 7.0;
    #[allow(clippy::excessive_precision)] // published coefficients, kept verbatim
    const COEFFS: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];

    let z = z - 1.0;
    let mut acc = COEFFS[0];
    for (i, &c) in COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Regularized incomplete beta function `I_x(a, b)`.
///
/// Continued-fraction evaluation (modified Lentz) with the symmetry switch
/// `I_x(a,b) = 1 - I_{1-x}(b,a)` applied when `x > (a+1)/(a+b+2)`, which
/// keeps the fraction in its rapidly converging regime. Absolute accuracy
/// is better than 1e-10 across the parameter range used by the CDFs.
pub fn regularized_incomplete_beta(a: f64, b: f64, x: f64) -> Result<f64, NumericsError> {
    if !(a > 0.0 && a.is_finite()) || !(b > 0.0 && b.is_finite()) {
        return Err(NumericsError::BetaDomain { a, b, x });
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(NumericsError::BetaDomain { a, b, x });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }

    // ln of x^a (1-x)^b / B(a,b), the prefactor of both fraction branches.
    let ln_prefix =
        ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln();
    let prefix = ln_prefix.exp();

    let value = if x < (a + 1.0) / (a + b + 2.0) {
        prefix * beta_continued_fraction(a, b, x) / a
    } else {
        1.0 - prefix * beta_continued_fraction(b, a, 1.0 - x) / b
    };
    // Clamp away rounding spill just outside [0, 1].
    Ok(value.clamp(0.0, 1.0))
}

/// Continued fraction for the incomplete beta (modified Lentz algorithm).
fn beta_continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    const MAX_ITER: usize = 300;
    const EPS: f64 = 1e-15;
    const FPMIN: f64 = 1e-300;

    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;

    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < FPMIN {
        d = FPMIN;
    }
    d = 1.0 / d;
    let mut h = d;

    for m in 1..=MAX_ITER {
        let m_f = m as f64;
        let m2 = 2.0 * m_f;

        // Even step.
        let aa = m_f * (b - m_f) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        h *= d * c;

        // Odd step.
        let aa = -(a + m_f) * (qab + m_f) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;

        if (delta - 1.0).abs() < EPS {
            break;
        }
    }

    h
}

/// CDF of Student's t distribution with `df` degrees of freedom.
///
/// Expressed through the incomplete beta with `x = df / (df + t²)`; the
/// construction makes `F(-t) = 1 - F(t)` hold exactly.
pub fn student_t_cdf(t: f64, df: u32) -> f64 {
    assert!(df >= 1, "degrees of freedom must be at least 1");
    if t.is_nan() {
        return f64::NAN;
    }
    let v = f64::from(df);
    let x = if t.is_infinite() { 0.0 } else { v / (v + t * t) };
    let ib = regularized_incomplete_beta(0.5 * v, 0.5, x)
        .expect("arguments are inside the beta domain by construction");
    if t >= 0.0 {
        1.0 - 0.5 * ib
    } else {
        0.5 * ib
    }
}

/// CDF of the F distribution with `df1` and `df2` degrees of freedom.
pub fn f_cdf(x: f64, df1: u32, df2: u32) -> f64 {
    assert!(df1 >= 1 && df2 >= 1, "degrees of freedom must be at least 1");
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 {
        return 0.0;
    }
    if x.is_infinite() {
        return 1.0;
    }
    let (d1, d2) = (f64::from(df1), f64::from(df2));
    let z = d1 * x / (d1 * x + d2);
    regularized_incomplete_beta(0.5 * d1, 0.5 * d2, z)
        .expect("arguments are inside the beta domain by construction")
}
