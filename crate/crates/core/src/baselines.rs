//! Classical Hurst estimators used as benchmark comparators: rescaled range,
//! Higuchi's fractal dimension, detrended fluctuation analysis, and the
//! madogram/variogram. All four reduce to a log-log least-squares slope and
//! are scale- and translation-invariant.

use crate::error::{Error, Result};

/// Least-squares line through (x, y) points with its R^2.
#[derive(Debug, Clone, Copy)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

pub fn fit_line(xs: &[f64], ys: &[f64]) -> Result<RegressionFit> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::Domain("regression needs at least 2 points".into()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 {
        return Err(Error::Domain("regression needs distinct abscissae".into()));
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    Ok(RegressionFit {
        slope,
        intercept: my - slope * mx,
        r2,
    })
}

/// A baseline estimate: the raw log-log slope readout and its clamp to [0,1].
#[derive(Debug, Clone, Copy)]
pub struct BaselineEstimate {
    pub h: f64,
    pub raw: f64,
}

fn clamped(raw: f64) -> BaselineEstimate {
    BaselineEstimate {
        h: raw.clamp(0.0, 1.0),
        raw,
    }
}

fn differences(path: &[f64]) -> Vec<f64> {
    path.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Chunk sizes 'start, 2*start, 4*start, ...' not exceeding `max`.
fn geometric_grid(start: usize, max: usize) -> Vec<usize> {
    let mut grid = Vec::new();
    let mut w = start;
    while w <= max {
        grid.push(w);
        w *= 2;
    }
    grid
}

/// Rescaled-range (R/S) analysis on a path.
///
/// For each chunk size w the increments are split into floor(n/w) chunks;
/// each chunk contributes R/S with R the range of its mean-adjusted
/// cumulative sums and S its standard deviation. H is the slope of
/// log(mean R/S) against log w.
pub fn estimate_rs(path: &[f64], min_chunk: usize) -> Result<BaselineEstimate> {
    if path.len() < 32 {
        return Err(Error::TooShort {
            need: 32,
            got: path.len(),
        });
    }
    let inc = differences(path);
    let n = inc.len();
    let grid = geometric_grid(min_chunk.max(2), n / 2);
    let mut log_w = Vec::new();
    let mut log_rs = Vec::new();
    for &w in &grid {
        let chunks = n / w;
        let mut acc = 0.0;
        let mut used = 0usize;
        for c in 0..chunks {
            let chunk = &inc[c * w..(c + 1) * w];
            let mean = chunk.iter().sum::<f64>() / w as f64;
            let var = chunk.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / w as f64;
            if var <= 0.0 {
                continue; // flat chunk carries no information
            }
            let mut cum = 0.0;
            let mut min = f64::INFINITY;
            let mut max = f64::NEG_INFINITY;
            for &v in chunk {
                cum += v - mean;
                min = min.min(cum);
                max = max.max(cum);
            }
            acc += (max - min) / var.sqrt();
            used += 1;
        }
        if used > 0 {
            log_w.push((w as f64).ln());
            log_rs.push((acc / used as f64).ln());
        }
    }
    if log_w.len() < 2 {
        return Err(Error::DegenerateSeries);
    }
    Ok(clamped(fit_line(&log_w, &log_rs)?.slope))
}

/// Higuchi's fractal-dimension method on a path; returns H = 2 - D.
pub fn estimate_higuchi(path: &[f64], kmax: usize) -> Result<BaselineEstimate> {
    let n = path.len();
    if kmax < 2 {
        return Err(Error::Domain("kmax must be at least 2".into()));
    }
    if n < 10 * kmax {
        return Err(Error::TooShort {
            need: 10 * kmax,
            got: n,
        });
    }
    let mut log_inv_k = Vec::with_capacity(kmax);
    let mut log_len = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let mut total = 0.0;
        for m in 0..k {
            let steps = (n - 1 - m) / k;
            if steps == 0 {
                continue;
            }
            let mut sum = 0.0;
            for i in 1..=steps {
                sum += (path[m + i * k] - path[m + (i - 1) * k]).abs();
            }
            // standard Higuchi normalization
            total += sum * (n - 1) as f64 / ((steps * k) as f64) / k as f64;
        }
        let mean_len = total / k as f64;
        if mean_len <= 0.0 {
            return Err(Error::DegenerateSeries);
        }
        log_inv_k.push(-(k as f64).ln());
        log_len.push(mean_len.ln());
    }
    let dim = fit_line(&log_inv_k, &log_len)?.slope;
    Ok(clamped(2.0 - dim))
}

/// Detrended fluctuation analysis on a path; the increments are cumulated
/// into a demeaned profile, per-window linear trends are removed, and H is
/// the slope of log F(w) against log w.
pub fn estimate_dfa(path: &[f64], min_window: usize) -> Result<BaselineEstimate> {
    if path.len() < 64 {
        return Err(Error::TooShort {
            need: 64,
            got: path.len(),
        });
    }
    let inc = differences(path);
    let n = inc.len();
    let mean = inc.iter().sum::<f64>() / n as f64;
    let mut profile = Vec::with_capacity(n);
    let mut acc = 0.0;
    for &v in &inc {
        acc += v - mean;
        profile.push(acc);
    }

    let grid = geometric_grid(min_window.max(4), n / 4);
    let mut log_w = Vec::new();
    let mut log_f = Vec::new();
    let xs_cache: Vec<f64> = (0..*grid.last().unwrap_or(&0)).map(|t| t as f64).collect();
    for &w in &grid {
        let segments = n / w;
        let mut sq = 0.0;
        let mut count = 0usize;
        let xs = &xs_cache[..w];
        let mx = (w as f64 - 1.0) / 2.0;
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        for s in 0..segments {
            let seg = &profile[s * w..(s + 1) * w];
            let my = seg.iter().sum::<f64>() / w as f64;
            let sxy: f64 = xs.iter().zip(seg).map(|(x, y)| (x - mx) * (y - my)).sum();
            let slope = sxy / sxx;
            for (x, y) in xs.iter().zip(seg) {
                let r = y - (my + slope * (x - mx));
                sq += r * r;
            }
            count += w;
        }
        let f = (sq / count as f64).sqrt();
        if f <= 0.0 {
            return Err(Error::DegenerateSeries);
        }
        log_w.push((w as f64).ln());
        log_f.push(f.ln());
    }
    if log_w.len() < 2 {
        return Err(Error::TooShort {
            need: 8 * min_window,
            got: path.len(),
        });
    }
    Ok(clamped(fit_line(&log_w, &log_f)?.slope))
}

/// Variogram of order p (p=1: madogram) on a path: H is the log-log slope of
/// V_p(l) = mean |y_{t+l} - y_t|^p across the given lags, divided by p.
pub fn estimate_variogram(path: &[f64], p: f64, lags: &[usize]) -> Result<BaselineEstimate> {
    if path.len() < 16 {
        return Err(Error::TooShort {
            need: 16,
            got: path.len(),
        });
    }
    if lags.len() < 2 || lags.contains(&0) {
        return Err(Error::Domain("need at least two nonzero lags".into()));
    }
    let mut log_l = Vec::with_capacity(lags.len());
    let mut log_v = Vec::with_capacity(lags.len());
    for &lag in lags {
        if lag >= path.len() {
            return Err(Error::TooShort {
                need: lag + 1,
                got: path.len(),
            });
        }
        let count = path.len() - lag;
        let v = (0..count)
            .map(|t| (path[t + lag] - path[t]).abs().powf(p))
            .sum::<f64>()
            / count as f64;
        if v <= 0.0 {
            return Err(Error::DegenerateSeries);
        }
        log_l.push((lag as f64).ln());
        log_v.push(v.ln());
    }
    Ok(clamped(fit_line(&log_l, &log_v)?.slope / p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{generate, path_from_increments, GenModel, GenSpec};

    fn fbm_path(h: f64, n: usize, seed: u64, stream: u64) -> Vec<f64> {
        let mut spec = GenSpec::new(GenModel::Fbm, h, n, seed);
        spec.stream_index = stream;
        generate(&spec).unwrap().values
    }

    #[test]
    fn rs_white_noise_near_half() {
        let path = fbm_path(0.5, 8192, 3, 0);
        let est = estimate_rs(&path, 8).unwrap();
        assert!((est.h - 0.5).abs() < 0.15, "h = {}", est.h);
    }

    #[test]
    fn rs_deterministic() {
        let path = fbm_path(0.7, 1024, 5, 0);
        let a = estimate_rs(&path, 8).unwrap();
        let b = estimate_rs(&path, 8).unwrap();
        assert_eq!(a.h, b.h);
    }

    #[test]
    fn rs_rejects_flat() {
        assert!(matches!(
            estimate_rs(&vec![1.0; 256], 8),
            Err(Error::DegenerateSeries)
        ));
    }

    #[test]
    fn higuchi_ramp_is_smooth() {
        let path: Vec<f64> = (0..512).map(|t| t as f64).collect();
        let est = estimate_higuchi(&path, 10).unwrap();
        assert!((est.h - 1.0).abs() < 0.02, "h = {}", est.h);
        assert!((est.raw - 1.0).abs() < 0.02);
    }

    #[test]
    fn higuchi_too_short() {
        assert!(matches!(
            estimate_higuchi(&vec![0.0; 50], 10),
            Err(Error::TooShort { .. })
        ));
    }

    #[test]
    fn dfa_white_noise_near_half() {
        let path = fbm_path(0.5, 4096, 9, 0);
        let est = estimate_dfa(&path, 8).unwrap();
        assert!((est.h - 0.5).abs() < 0.1, "h = {}", est.h);
    }

    #[test]
    fn dfa_linear_ramp_degenerate() {
        // constant increments are removed exactly by the linear detrend
        let path: Vec<f64> = (0..256).map(|t| 2.0 * t as f64).collect();
        assert!(matches!(
            estimate_dfa(&path, 8),
            Err(Error::DegenerateSeries)
        ));
    }

    #[test]
    fn variogram_linear_ramp() {
        let path: Vec<f64> = (0..64).map(|t| 3.0 * t as f64).collect();
        let est = estimate_variogram(&path, 1.0, &[1, 2]).unwrap();
        assert!((est.h - 1.0).abs() < 1e-12);
    }

    #[test]
    fn variogram_fbm_scaling_law() {
        // E V_1(2)/V_1(1) = 2^H for fBm increments
        let h = 0.3;
        let path = fbm_path(h, 32768, 13, 0);
        let v = |lag: usize| {
            (0..path.len() - lag)
                .map(|t| (path[t + lag] - path[t]).abs())
                .sum::<f64>()
                / (path.len() - lag) as f64
        };
        let ratio = v(2) / v(1);
        let want = 2f64.powf(h);
        assert!((ratio / want - 1.0).abs() < 0.05, "ratio {ratio}, want {want}");
    }

    #[test]
    fn variogram_rejects_flat() {
        assert!(matches!(
            estimate_variogram(&vec![5.0; 64], 1.0, &[1, 2]),
            Err(Error::DegenerateSeries)
        ));
    }

    #[test]
    fn all_baselines_scale_and_shift_invariant() {
        let path = fbm_path(0.6, 2048, 21, 0);
        let transformed: Vec<f64> = path.iter().map(|v| 3.25 * v + 100.0).collect();
        let close = |a: f64, b: f64| (a - b).abs() < 1e-9;
        assert!(close(
            estimate_rs(&path, 8).unwrap().h,
            estimate_rs(&transformed, 8).unwrap().h
        ));
        assert!(close(
            estimate_higuchi(&path, 10).unwrap().h,
            estimate_higuchi(&transformed, 10).unwrap().h
        ));
        assert!(close(
            estimate_dfa(&path, 8).unwrap().h,
            estimate_dfa(&transformed, 8).unwrap().h
        ));
        assert!(close(
            estimate_variogram(&path, 1.0, &[1, 2]).unwrap().h,
            estimate_variogram(&transformed, 1.0, &[1, 2]).unwrap().h
        ));
    }

    #[test]
    fn baselines_track_h_roughly() {
        // sanity: persistent vs anti-persistent paths are separated
        for est in [
            |p: &[f64]| estimate_rs(p, 8).unwrap().h,
            |p: &[f64]| estimate_higuchi(p, 10).unwrap().h,
            |p: &[f64]| estimate_dfa(p, 8).unwrap().h,
            |p: &[f64]| estimate_variogram(p, 1.0, &[1, 2]).unwrap().h,
        ] {
            let low = est(&fbm_path(0.2, 8192, 31, 0));
            let high = est(&fbm_path(0.8, 8192, 31, 1));
            assert!(high > low + 0.2, "low {low}, high {high}");
        }
    }

    #[test]
    fn fit_line_requires_distinct_points() {
        assert!(fit_line(&[1.0], &[2.0]).is_err());
        assert!(fit_line(&[1.0, 1.0], &[2.0, 3.0]).is_err());
        let f = fit_line(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12);
        assert!((f.intercept - 1.0).abs() < 1e-12);
        assert!((f.r2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn path_from_increments_helper_consistency() {
        // guard against kind mix-ups feeding baselines
        let s = crate::synth::Series::increments(vec![1.0, -1.0, 2.0]);
        let p = path_from_increments(&s).unwrap();
        assert_eq!(p.values, vec![1.0, 0.0, 2.0]);
    }
}
