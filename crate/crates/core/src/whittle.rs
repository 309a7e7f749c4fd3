//! Whittle's likelihood estimator of the Hurst exponent.
//!
//! Minimizes L(H) = sum_j I(lambda_j) / f*_H(lambda_j) over H in (0,1),
//! where f* is the geometric-mean-normalized theoretical spectral density
//! of the chosen model and I is the periodogram of the demeaned increments.

use crate::error::{Error, Result};
use crate::optimize::{minimize_scalar_bounded, ScalarSearchOptions};
use crate::spectral::{fgn_spectral_density, normalize_by_geometric_mean, HurstParam, SpectrumModel};
use crate::synth::SeriesKind;
use crate::transform::{periodogram, Periodogram};

pub const MIN_INCREMENTS: usize = 16;

/// Options for [`estimate_hurst_whittle`].
#[derive(Debug, Clone, Copy)]
pub struct WhittleOptions {
    pub model: SpectrumModel,
    pub search: ScalarSearchOptions,
    pub input_kind: SeriesKind,
}

impl Default for WhittleOptions {
    fn default() -> Self {
        WhittleOptions {
            model: SpectrumModel::FgnPaxson(10),
            search: default_search(),
            input_kind: SeriesKind::Path,
        }
    }
}

/// Search bounds clamped just inside (0,1), where the densities degenerate.
pub fn default_search() -> ScalarSearchOptions {
    ScalarSearchOptions::new(1e-4, 1.0 - 1e-4)
}

/// The Whittle objective at a given H for a fixed periodogram.
pub fn whittle_objective(hurst: HurstParam, pg: &Periodogram, model: SpectrumModel) -> Result<f64> {
    let density = fgn_spectral_density(hurst, &pg.frequencies, 1.0, model)?;
    let normalized = normalize_by_geometric_mean(&density)?;
    Ok(pg
        .ordinates
        .iter()
        .zip(&normalized)
        .map(|(i, f)| i / f)
        .sum())
}

/// Difference (if needed), demean, and validate a series into increments
/// ready for a likelihood estimator.
pub(crate) fn prepare_increments(series: &[f64], input_kind: SeriesKind) -> Result<Vec<f64>> {
    let mut inc: Vec<f64> = match input_kind {
        SeriesKind::Increments => series.to_vec(),
        SeriesKind::Path => series.windows(2).map(|w| w[1] - w[0]).collect(),
    };
    if inc.len() < MIN_INCREMENTS {
        return Err(Error::TooShort {
            need: MIN_INCREMENTS,
            got: inc.len(),
        });
    }
    if let Some(bad) = inc.iter().find(|v| !v.is_finite()) {
        return Err(Error::Domain(format!("non-finite sample: {bad}")));
    }
    let mean = inc.iter().sum::<f64>() / inc.len() as f64;
    for v in &mut inc {
        *v -= mean;
    }
    if inc.iter().all(|&v| v == 0.0) {
        return Err(Error::DegenerateSeries);
    }
    Ok(inc)
}

/// Estimate H by minimizing the Whittle objective.
pub fn estimate_hurst_whittle(series: &[f64], opts: &WhittleOptions) -> Result<f64> {
    opts.model.validate()?;
    let inc = prepare_increments(series, opts.input_kind)?;
    let pg = periodogram(&inc)?;
    let mut inner_err = None;
    let outcome = minimize_scalar_bounded(
        |h| match HurstParam::new(h).and_then(|hp| whittle_objective(hp, &pg, opts.model)) {
            Ok(v) => v,
            Err(e) => {
                inner_err = Some(e);
                f64::NAN
            }
        },
        opts.search,
    );
    match outcome {
        Ok(m) => Ok(m.argmin),
        Err(e) => Err(inner_err.unwrap_or(e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{generate_fgn_davies_harte, GenModel, GenSpec};

    fn fgn(h: f64, n: usize, seed: u64, stream: u64) -> Vec<f64> {
        let mut spec = GenSpec::new(GenModel::Fgn, h, n, seed);
        spec.stream_index = stream;
        generate_fgn_davies_harte(&spec).unwrap().values
    }

    fn inc_opts(model: SpectrumModel) -> WhittleOptions {
        WhittleOptions {
            model,
            input_kind: SeriesKind::Increments,
            ..WhittleOptions::default()
        }
    }

    #[test]
    fn objective_zero_for_zero_periodogram() {
        let pg = periodogram(&[1.0; 32]).unwrap();
        for &h in &[0.1, 0.5, 0.9] {
            let v = whittle_objective(
                HurstParam::new(h).unwrap(),
                &pg,
                SpectrumModel::FgnHurwitz,
            )
            .unwrap();
            assert!(v.abs() < 1e-25);
        }
    }

    #[test]
    fn objective_prefers_truth_on_white_noise() {
        // L(0.5) < L(0.9) on white noise, checked over many seeds
        let mut wins = 0;
        let trials = 300;
        for i in 0..trials {
            let y = fgn(0.5, 4096, 2024, i);
            let pg = periodogram(&prepare_increments(&y, SeriesKind::Increments).unwrap()).unwrap();
            let at = |h: f64| {
                whittle_objective(HurstParam::new(h).unwrap(), &pg, SpectrumModel::FgnHurwitz)
                    .unwrap()
            };
            if at(0.5) < at(0.9) {
                wins += 1;
            }
        }
        assert_eq!(wins, trials);
    }

    #[test]
    fn objective_scales_quadratically() {
        let y = fgn(0.7, 256, 5, 0);
        let scaled: Vec<f64> = y.iter().map(|v| 4.0 * v).collect();
        let pg = periodogram(&y).unwrap();
        let pg_scaled = periodogram(&scaled).unwrap();
        let h = HurstParam::new(0.6).unwrap();
        let a = whittle_objective(h, &pg, SpectrumModel::FgnPaxson(10)).unwrap();
        let b = whittle_objective(h, &pg_scaled, SpectrumModel::FgnPaxson(10)).unwrap();
        assert_eq!(16.0 * a, b);
    }

    #[test]
    fn estimate_white_noise_near_half() {
        let y = fgn(0.5, 4096, 31, 0);
        let h = estimate_hurst_whittle(&y, &inc_opts(SpectrumModel::FgnHurwitz)).unwrap();
        assert!((h - 0.5).abs() < 0.05, "h = {h}");
    }

    #[test]
    fn estimate_scale_invariant_bit_exact() {
        // power-of-two scale: bit-identical estimate
        let y = fgn(0.3, 1024, 17, 0);
        let opts = inc_opts(SpectrumModel::FgnPaxson(10));
        let base = estimate_hurst_whittle(&y, &opts).unwrap();
        let scaled: Vec<f64> = y.iter().map(|v| 8.0 * v).collect();
        assert_eq!(base, estimate_hurst_whittle(&scaled, &opts).unwrap());
        // general scale stays within tolerance
        let scaled: Vec<f64> = y.iter().map(|v| 3.7 * v).collect();
        let other = estimate_hurst_whittle(&scaled, &opts).unwrap();
        assert!((base - other).abs() < 1e-5);
    }

    #[test]
    fn estimate_mean_shift_invariant() {
        let y = fgn(0.7, 1024, 23, 0);
        let opts = inc_opts(SpectrumModel::FgnHurwitz);
        let base = estimate_hurst_whittle(&y, &opts).unwrap();
        let shifted: Vec<f64> = y.iter().map(|v| v + 42.0).collect();
        let other = estimate_hurst_whittle(&shifted, &opts).unwrap();
        assert!((base - other).abs() < 1e-9);
    }

    #[test]
    fn estimate_low_h_long_series() {
        let y = fgn(0.2, 32768, 99, 0);
        let h = estimate_hurst_whittle(&y, &inc_opts(SpectrumModel::FgnHurwitz)).unwrap();
        assert!((h - 0.2).abs() < 0.02, "h = {h}");
    }

    #[test]
    fn estimate_path_kind_differences_first() {
        let inc = fgn(0.6, 2048, 55, 0);
        let mut path = Vec::with_capacity(inc.len());
        let mut acc = 0.0;
        for v in &inc {
            acc += v;
            path.push(acc);
        }
        let h_inc = estimate_hurst_whittle(&inc, &inc_opts(SpectrumModel::FgnPaxson(10))).unwrap();
        let h_path = estimate_hurst_whittle(&path, &WhittleOptions::default()).unwrap();
        // path loses one increment; estimates agree closely but not exactly
        assert!((h_inc - h_path).abs() < 0.02);
    }

    #[test]
    fn estimate_rejects_bad_input() {
        assert!(matches!(
            estimate_hurst_whittle(&[1.0; 64], &WhittleOptions::default()),
            Err(Error::DegenerateSeries)
        ));
        assert!(matches!(
            estimate_hurst_whittle(&[1.0, 2.0, 3.0], &WhittleOptions::default()),
            Err(Error::TooShort { .. })
        ));
    }

    #[test]
    fn rmse_decreases_with_length() {
        // Monte-Carlo consistency sweep for Hurwitz and Paxson(2)
        for model in [SpectrumModel::FgnHurwitz, SpectrumModel::FgnPaxson(2)] {
            let mut prev = f64::INFINITY;
            for (bin, &n) in [128usize, 512, 2048, 8192].iter().enumerate() {
                let m = 120;
                let mut sq = 0.0;
                for i in 0..m {
                    let mut master = crate::synth::GaussianStream::new(500 + bin as u64, i);
                    let h_true = 0.02 + 0.96 * master.next_open_unit();
                    let y = fgn(h_true, n, 600 + bin as u64, 1000 + i);
                    let h = estimate_hurst_whittle(&y, &inc_opts(model)).unwrap();
                    sq += (h - h_true) * (h - h_true);
                }
                let rmse = (sq / m as f64).sqrt();
                assert!(rmse < prev, "{model:?} n={n}: rmse {rmse} !< {prev}");
                prev = rmse;
            }
        }
    }
}
