//! Time-domain maximum likelihood estimation of H via the Durbin-Levinson
//! recursion.
//!
//! Each objective evaluation runs the O(n^2) recursion on the theoretical fGn
//! autocovariance to get one-step predictors eta_t and innovation variances
//! v_t, then returns the sigma^2-profiled (concentrated) negative
//! log-likelihood, which makes the estimator scale-invariant.

use crate::error::{Error, Result};
use crate::optimize::{minimize_scalar_bounded, ScalarSearchOptions};
use crate::spectral::{fgn_autocovariance, HurstParam};
use crate::synth::SeriesKind;
use crate::whittle::{default_search, prepare_increments};

/// Options for [`estimate_hurst_tdml`].
#[derive(Debug, Clone, Copy)]
pub struct TdmlOptions {
    pub search: ScalarSearchOptions,
    pub input_kind: SeriesKind,
}

impl Default for TdmlOptions {
    fn default() -> Self {
        TdmlOptions {
            search: default_search(),
            input_kind: SeriesKind::Path,
        }
    }
}

/// Reusable scratch for the recursion, to bound allocation across the many
/// objective evaluations of one minimization.
#[derive(Default)]
pub struct DlScratch {
    phi: Vec<f64>,
}

/// Concentrated negative log-likelihood of demeaned increments `y` under fGn
/// with the given H:
/// (1/2) [ sum_t log v_t + n log( (1/n) sum_t (y_t - eta_t)^2 / v_t ) ].
pub fn durbin_levinson_nll(hurst: HurstParam, y: &[f64]) -> Result<f64> {
    durbin_levinson_nll_with(hurst, y, &mut DlScratch::default())
}

pub fn durbin_levinson_nll_with(
    hurst: HurstParam,
    y: &[f64],
    scratch: &mut DlScratch,
) -> Result<f64> {
    let n = y.len();
    // the estimator enforces n >= 16; the likelihood itself only needs n >= 2,
    // which the dense-oracle equivalence checks exercise
    if n < 2 {
        return Err(Error::TooShort { need: 2, got: n });
    }
    let gamma = fgn_autocovariance(hurst, n - 1, 1.0);

    let phi = &mut scratch.phi;
    phi.clear();

    let mut v = gamma[0]; // v_1 = gamma(0) = 1
    let mut sum_log_v = 0.0;
    let mut sum_weighted_sq = 0.0;

    for t in 1..=n {
        // predictor of y_t from the previous t-1 observations
        let p = t - 1;
        let eta: f64 = phi[..p]
            .iter()
            .zip(y[..p].iter().rev())
            .map(|(a, b)| a * b)
            .sum();
        let resid = y[p] - eta;
        sum_log_v += v.ln();
        sum_weighted_sq += resid * resid / v;

        if t == n {
            break;
        }
        // advance the coefficients to order t
        let num: f64 = phi[..p]
            .iter()
            .zip(gamma[1..t].iter().rev())
            .map(|(a, g)| a * g)
            .sum();
        let k = (gamma[t] - num) / v;
        // phi_new[j] = phi[j] - k phi[p-1-j], updated in place from both ends
        let (lo, hi) = phi.split_at_mut(p / 2);
        let mid = hi.len() - lo.len(); // 1 if p odd, 0 if even
        for (a, b) in lo.iter_mut().zip(hi[mid..].iter_mut().rev()) {
            let (x, z) = (*a, *b);
            *a = x - k * z;
            *b = z - k * x;
        }
        if mid == 1 {
            hi[0] *= 1.0 - k;
        }
        phi.push(k);
        v *= 1.0 - k * k;
        if v.is_nan() || v <= 0.0 {
            return Err(Error::VarianceBreakdown {
                step: t + 1,
                hurst: hurst.h(),
            });
        }
    }

    let n_f = n as f64;
    Ok(0.5 * (sum_log_v + n_f * (sum_weighted_sq / n_f).ln()))
}

/// Estimate H by minimizing the concentrated Durbin-Levinson likelihood.
pub fn estimate_hurst_tdml(series: &[f64], opts: &TdmlOptions) -> Result<f64> {
    let inc = prepare_increments(series, opts.input_kind)?;
    let mut scratch = DlScratch::default();
    let mut inner_err = None;
    let outcome = minimize_scalar_bounded(
        |h| {
            match HurstParam::new(h)
                .and_then(|hp| durbin_levinson_nll_with(hp, &inc, &mut scratch))
            {
                Ok(v) => v,
                Err(e) => {
                    inner_err = Some(e);
                    f64::NAN
                }
            }
        },
        opts.search,
    );
    match outcome {
        Ok(m) => Ok(m.argmin),
        Err(e) => Err(inner_err.unwrap_or(e)),
    }
}
