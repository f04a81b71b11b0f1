//! Spherical functions and Plancherel integrals on the real hyperbolic
//! plane (the rank-one AI space).
//!
//! The spherical function is
//! `phi_lambda(t) = 2F1((1 + i lambda)/4, (1 - i lambda)/4; 1; -sinh^2 t)`,
//! equal to the Legendre function `P_{-1/2 + i lambda / 2}(cosh t)`.
//! Two evaluation routes are combined: the Gauss series (after a Pfaff
//! transformation mapping the argument into [0,1)) for moderate
//! `lambda * arctan(sinh t)`, and the descending Harish-Chandra
//! expansion for the oscillatory regime, where the series would lose
//! `~lambda * arctan(sinh t) / ln 10` digits to cancellation.
//!
//! On the Plancherel side, the inverse-square of the Harish-Chandra
//! c-function is `4 pi lambda tanh(pi lambda)` up to the fixed
//! normalization checked against its large-lambda limit, and the
//! truncated integrals `F(Lambda) = int_1^Lambda |phi_lambda(t)|^(2k)
//! |c(lambda)|^-2 dlambda` are classified as convergent or
//! logarithmically divergent from their growth across checkpoints.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum Rank1Error {
    #[error("t must be nonnegative, got {0}")]
    NegativeT(f64),
    #[error("hypergeometric argument {0} is outside the supported range z <= 0")]
    BadArgument(f64),
    #[error("series failed to converge within {0} terms")]
    NoConvergence(usize),
    #[error("lambda must be positive, got {0}")]
    NonPositiveLambda(f64),
    #[error("quadrature failed to reach tolerance {tol} (error estimate {err})")]
    QuadratureFailure { tol: f64, err: f64 },
    #[error("power k must be in 1..=6, got {0}")]
    BadPower(u32),
    #[error("t must lie in [0.1, 3] for divergence classification, got {0}")]
    BadT(f64),
    #[error(
        "divergence classification inconclusive: slope {slope}, relative residual {residual}, \
         increment ratios {ratios:?}"
    )]
    Inconclusive { slope: f64, residual: f64, ratios: Vec<f64> },
}

// --- complex log-gamma (Lanczos, g = 7) --------------------------------

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Principal branch of `log Gamma(z)`.  Arguments left of `Re z = 0.5`
/// are shifted right by the recurrence `log Gamma(z) = log Gamma(z+1) -
/// log z`, which (unlike the reflection formula) cannot overflow for the
/// near-imaginary-axis arguments used here.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        return ln_gamma(z + Complex64::new(1.0, 0.0)) - z.ln();
    }
    let z = z - Complex64::new(1.0, 0.0);
    let mut x = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        x += Complex64::new(c, 0.0) / (z + Complex64::new(i as f64, 0.0));
    }
    let t = z + Complex64::new(LANCZOS_G + 0.5, 0.0);
    0.5 * (2.0 * PI).ln() + (z + Complex64::new(0.5, 0.0)) * t.ln() - t + x.ln()
}

// --- Gauss hypergeometric series ----------------------------------------

/// `2F1(a, b; c; z)` for real `z <= 0`, via the defining series after a
/// Pfaff transformation `z -> z/(z-1)` that maps the argument into
/// `[0, 1)`.
pub fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64, Rank1Error> {
    if z > 0.0 {
        return Err(Rank1Error::BadArgument(z));
    }
    if z == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    // Pfaff: 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)).
    let w = z / (z - 1.0); // in (0, 1)
    let series = gauss_series(a, c - b, c, w)?;
    let factor = Complex64::new(1.0 - z, 0.0).powc(-a);
    Ok(factor * series)
}

fn gauss_series(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    w: f64,
) -> Result<Complex64, Rank1Error> {
    let max_terms = 200_000usize;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut settled = 0;
    for m in 0..max_terms {
        let mf = m as f64;
        let ratio = (a + mf) * (b + mf) / ((c + mf) * (mf + 1.0)) * w;
        term *= ratio;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm().max(1e-300) {
            settled += 1;
            if settled >= 3 {
                return Ok(sum);
            }
        } else {
            settled = 0;
        }
    }
    Err(Rank1Error::NoConvergence(max_terms))
}

// --- spherical function ---------------------------------------------------

/// Beyond this value of `lambda * arctan(sinh t)` the Gauss series loses
/// too many digits to cancellation and the asymptotic route takes over.
const OSCILLATION_BUDGET: f64 = 25.0;

/// Spherical function `phi_lambda(t)` of the hyperbolic plane.  Real,
/// even in `lambda`, and `phi_lambda(0) = 1`.
pub fn phi(lambda: f64, t: f64) -> Result<f64, Rank1Error> {
    if t < 0.0 {
        return Err(Rank1Error::NegativeT(t));
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    let lam = lambda.abs();
    let oscillation = lam * t.sinh().atan();
    let value = if oscillation <= OSCILLATION_BUDGET {
        let il = Complex64::new(0.0, lam);
        let one = Complex64::new(1.0, 0.0);
        let a = (one + il) / 4.0;
        let b = (one - il) / 4.0;
        let sh = t.sinh();
        hyp2f1(a, b, one, -sh * sh)?.re
    } else {
        hc_expansion(lam, t)?
    };
    Ok(value)
}

/// Descending Harish-Chandra expansion, valid for `t > 0` and
/// `lambda != 0`:
/// `phi = 2 Re[ gamma(lambda) e^{-(1+i lambda) t / 2} sum_m G_m e^{-2 m t} ]`
/// with `gamma = Gamma(-i lambda / 2) / (sqrt(pi) Gamma(1/2 - i lambda/2))`
/// and the recursion
/// `4 m (m + i lambda / 2) G_m = -2 sum_{j=1..m} G_{m-j} (sigma - 2(m-j))`,
/// `sigma = -i lambda / 2 - 1/2`, `G_0 = 1`.
fn hc_expansion(lambda: f64, t: f64) -> Result<f64, Rank1Error> {
    let il2 = Complex64::new(0.0, lambda / 2.0);
    let gamma = (ln_gamma(-il2) - ln_gamma(Complex64::new(0.5, 0.0) - il2)).exp()
        / PI.sqrt();
    let sigma = -il2 - 0.5;
    let decay = (-2.0 * t).exp();
    let max_terms = 2000usize;
    let mut coefs: Vec<Complex64> = vec![Complex64::new(1.0, 0.0)];
    let mut sum = Complex64::new(1.0, 0.0);
    let mut weight = 1.0f64;
    for m in 1..max_terms {
        let mf = m as f64;
        let mut rhs = Complex64::new(0.0, 0.0);
        for (j, g) in coefs.iter().enumerate() {
            rhs += g * (sigma - 2.0 * j as f64);
        }
        let gm = -2.0 * rhs / (4.0 * mf * (mf + il2));
        coefs.push(gm);
        weight *= decay;
        let contrib = gm * weight;
        sum += contrib;
        if contrib.norm() <= 1e-16 * sum.norm().max(1e-300) && m >= 4 {
            let phase = (Complex64::new(-0.5, -lambda / 2.0) * t).exp();
            return Ok(2.0 * (gamma * phase * sum).re);
        }
    }
    Err(Rank1Error::NoConvergence(max_terms))
}

// --- adaptive Gauss-Kronrod quadrature -----------------------------------

// 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1].
const KRONROD_NODES: [f64; 15] = [
    -0.991455371120813,
    -0.949107912342759,
    -0.864864423359769,
    -0.741531185599394,
    -0.586087235467691,
    -0.405845151377397,
    -0.207784955007898,
    0.0,
    0.207784955007898,
    0.405845151377397,
    0.586087235467691,
    0.741531185599394,
    0.864864423359769,
    0.949107912342759,
    0.991455371120813,
];
const KRONROD_WEIGHTS: [f64; 15] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
    0.204432940075298,
    0.190350578064785,
    0.169004726639267,
    0.140653259715525,
    0.104790010322250,
    0.063092092629979,
    0.022935322010529,
];
const GAUSS_WEIGHTS: [f64; 7] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
    0.381830050505119,
    0.279705391489277,
    0.129484966168870,
];

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut kron = Complex64::new(0.0, 0.0);
    let mut gauss = Complex64::new(0.0, 0.0);
    for (i, (&x, &wk)) in KRONROD_NODES.iter().zip(&KRONROD_WEIGHTS).enumerate() {
        let v = f(mid + half * x);
        kron += wk * v;
        if i % 2 == 1 {
            gauss += GAUSS_WEIGHTS[i / 2] * v;
        }
    }
    kron *= half;
    gauss *= half;
    (kron, (kron - gauss).norm())
}

/// Adaptive Gauss-Kronrod integration of a complex-valued integrand.
fn adaptive_quad<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<Complex64, Rank1Error> {
    // Interval stack with per-interval error budget proportional to width.
    let mut total = Complex64::new(0.0, 0.0);
    let mut stack = vec![(a, b, 0u32)];
    let max_depth = 40;
    while let Some((lo, hi, depth)) = stack.pop() {
        let (val, err) = gk15(f, lo, hi);
        let budget = tol * (hi - lo) / (b - a);
        if err <= budget || depth >= max_depth {
            if err > budget {
                return Err(Rank1Error::QuadratureFailure { tol: budget, err });
            }
            total += val;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    Ok(total)
}

/// Independent integral-formula evaluation of the spherical function:
/// `phi_lambda(t) = (1/2pi) int_0^{2pi}
///     (e^t cos^2 th + e^{-t} sin^2 th)^{(i lambda - 1)/2} d th`.
pub fn phi_oracle(lambda: f64, t: f64) -> Result<f64, Rank1Error> {
    if t < 0.0 {
        return Err(Rank1Error::NegativeT(t));
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    let exponent = Complex64::new(-0.5, lambda / 2.0);
    let f = move |theta: f64| -> Complex64 {
        let c = theta.cos();
        let s = theta.sin();
        let g = t.exp() * c * c + (-t).exp() * s * s;
        (exponent * g.ln()).exp()
    };
    // The integrand has period pi and is symmetric about pi/2: integrate
    // a quarter period.  Split into panels fine enough for the
    // oscillation in log g.
    let quarter = 0.5 * PI;
    let panels = ((lambda.abs() * t).ceil() as usize).clamp(8, 4000);
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..panels {
        let lo = quarter * i as f64 / panels as f64;
        let hi = quarter * (i + 1) as f64 / panels as f64;
        sum += adaptive_quad(&f, lo, hi, 1e-12)?;
    }
    Ok((4.0 * sum / (2.0 * PI)).re)
}

/// Inverse square of the Harish-Chandra c-function:
/// `|c(lambda)|^{-2} = 4 pi |Gamma(1/2 + i lambda) / Gamma(i lambda)|^2
///                   = 4 pi lambda tanh(pi lambda)`
/// evaluated through log-gamma differences so that no intermediate
/// overflows, with the constant fixed by the normalization
/// `|c(lambda)|^{-2} / (4 pi lambda) -> 1` as `lambda -> infinity`.
pub fn c_inv_sq(lambda: f64) -> Result<f64, Rank1Error> {
    if lambda <= 0.0 {
        return Err(Rank1Error::NonPositiveLambda(lambda));
    }
    let il = Complex64::new(0.0, lambda);
    let diff = ln_gamma(Complex64::new(0.5, lambda)) - ln_gamma(il);
    Ok(4.0 * PI * (2.0 * diff.re).exp())
}

/// Truncated Plancherel-type integral
/// `F(Lambda) = int_1^Lambda |phi_lambda(t)|^{2k} |c(lambda)|^{-2} d lambda`
/// evaluated at each requested cutoff (ascending).  Panels of width at
/// most `pi / (4 t)` resolve the `2 pi / t`-periodic oscillation of the
/// spherical function.
pub fn plancherel_checkpoints(
    k: u32,
    t: f64,
    cutoffs: &[f64],
) -> Result<Vec<f64>, Rank1Error> {
    if !(1..=6).contains(&k) {
        return Err(Rank1Error::BadPower(k));
    }
    if t <= 0.0 {
        return Err(Rank1Error::NegativeT(t));
    }
    let f = |lambda: f64| -> Result<f64, Rank1Error> {
        let p = phi(lambda, t)?;
        Ok(p.abs().powi(2 * k as i32) * c_inv_sq(lambda)?)
    };
    let panel_width = (PI / (4.0 * t)).min(2.0);
    let mut out = Vec::with_capacity(cutoffs.len());
    let mut acc = 0.0f64;
    let mut lo = 1.0f64;
    for &cut in cutoffs {
        assert!(cut > lo, "cutoffs must be ascending and > 1");
        let span = cut - lo;
        let panels = (span / panel_width).ceil() as usize;
        for i in 0..panels {
            let a = lo + span * i as f64 / panels as f64;
            let b = lo + span * (i + 1) as f64 / panels as f64;
            // Fixed-order rule per panel: the panel width already
            // resolves the oscillation, and errors are relative to the
            // accumulated (growing) integral.
            let (val, _err) = gk15(
                &|x: f64| Complex64::new(f(x).unwrap_or(f64::NAN), 0.0),
                a,
                b,
            );
            acc += val.re;
        }
        lo = cut;
        out.push(acc);
    }
    Ok(out)
}

/// Single-cutoff variant of [`plancherel_checkpoints`].
pub fn plancherel_truncated(k: u32, t: f64, cutoff: f64) -> Result<f64, Rank1Error> {
    Ok(plancherel_checkpoints(k, t, &[cutoff])?[0])
}

/// Divergence classification of the truncated Plancherel integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Divergence {
    Convergent,
    LogDivergent,
}

impl std::fmt::Display for Divergence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Divergence::Convergent => "CONVERGENT",
            Divergence::LogDivergent => "LOG_DIVERGENT",
        };
        f.write_str(s)
    }
}

/// Diagnostics of the divergence classification.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DivergenceReport {
    pub k: u32,
    pub t: f64,
    pub cutoffs: Vec<f64>,
    pub values: Vec<f64>,
    /// Ratios of successive increments of F across the cutoffs.
    pub increment_ratios: Vec<f64>,
    /// Least-squares slope of F against ln Lambda.
    pub log_slope: f64,
    /// Relative residual of the log-linear fit.
    pub log_residual: f64,
    pub verdict: Divergence,
}

/// Classifies the growth of `F(Lambda)` for `Lambda` up to `10^4`:
/// convergent when the checkpoint increments decay geometrically (all
/// successive ratios below 1/2); divergent when `F` grows (positive
/// log-slope) either log-linearly (relative residual below 0.1) or at
/// least linearly in `Lambda` (increment ratios staying near 1).
/// Anything else is reported as inconclusive.
pub fn classify_divergence(k: u32, t: f64) -> Result<DivergenceReport, Rank1Error> {
    if !(0.1..=3.0).contains(&t) {
        return Err(Rank1Error::BadT(t));
    }
    let cutoffs: Vec<f64> = [2.0, 2.5, 3.0, 3.5, 4.0]
        .iter()
        .map(|e| 10f64.powf(*e))
        .collect();
    let values = plancherel_checkpoints(k, t, &cutoffs)?;
    let increments: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let ratios: Vec<f64> = increments.windows(2).map(|w| w[1] / w[0]).collect();

    // Log-linear fit F = s * ln Lambda + b.
    let xs: Vec<f64> = cutoffs.iter().map(|c| c.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = values.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&values).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let ss_res: f64 = xs
        .iter()
        .zip(&values)
        .map(|(x, y)| {
            let fit = my + slope * (x - mx);
            (y - fit) * (y - fit)
        })
        .sum();
    let ss_tot: f64 = values.iter().map(|y| (y - my) * (y - my)).sum();
    let residual = (ss_res / ss_tot.max(1e-300)).sqrt();

    let verdict = if ratios.iter().all(|&r| r < 0.5) {
        Divergence::Convergent
    } else if slope > 0.0 && (residual < 0.1 || ratios.iter().all(|&r| r >= 0.8)) {
        Divergence::LogDivergent
    } else {
        return Err(Rank1Error::Inconclusive { slope, residual, ratios });
    };
    Ok(DivergenceReport {
        k,
        t,
        cutoffs,
        values,
        increment_ratios: ratios,
        log_slope: slope,
        log_residual: residual,
        verdict,
    })
}
