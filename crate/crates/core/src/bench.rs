//! Monte-Carlo benchmark harness: draw H ~ U(0,1), generate fBm paths by
//! Davies-Harte, run every configured estimator, and emit global/local/timing
//! CSV tables.
//!
//! Reproducibility: each (bin, sample) task owns two RNG streams derived from
//! its task index, so estimates are bit-identical for any worker count.
//! Timings are summed wall time across workers and should be read
//! comparatively.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use crate::baselines::{estimate_dfa, estimate_higuchi, estimate_rs, estimate_variogram};
use crate::error::Result;
use crate::synth::{
    path_from_increments, GaussianStream, GenModel, GenSpec, Series, SeriesKind,
};
use crate::tdml::{estimate_hurst_tdml, TdmlOptions};
use crate::whittle::{estimate_hurst_whittle, WhittleOptions};

/// One estimator configuration with a stable id for CSV output.
#[derive(Debug, Clone)]
pub enum MethodSpec {
    Whittle(WhittleOptions),
    Tdml(TdmlOptions),
    Rs { min_chunk: usize },
    Higuchi { kmax: usize },
    Dfa { min_window: usize },
    Variogram { p: f64, lags: Vec<usize> },
}

impl MethodSpec {
    pub fn id(&self) -> String {
        match self {
            MethodSpec::Whittle(o) => format!("whittle_{}", o.model.id()),
            MethodSpec::Tdml(_) => "tdml".into(),
            MethodSpec::Rs { .. } => "rs".into(),
            MethodSpec::Higuchi { .. } => "higuchi".into(),
            MethodSpec::Dfa { .. } => "dfa".into(),
            MethodSpec::Variogram { .. } => "variogram".into(),
        }
    }

    /// Run the estimator on raw values of the given kind.
    pub fn estimate(&self, values: &[f64], kind: SeriesKind) -> Result<f64> {
        match self {
            MethodSpec::Whittle(opts) => {
                let opts = WhittleOptions {
                    input_kind: kind,
                    ..*opts
                };
                estimate_hurst_whittle(values, &opts)
            }
            MethodSpec::Tdml(opts) => {
                let opts = TdmlOptions {
                    input_kind: kind,
                    ..*opts
                };
                estimate_hurst_tdml(values, &opts)
            }
            baseline => {
                let owned;
                let path: &[f64] = match kind {
                    SeriesKind::Path => values,
                    SeriesKind::Increments => {
                        owned = path_from_increments(&Series::increments(values.to_vec()))?.values;
                        &owned
                    }
                };
                Ok(match baseline {
                    MethodSpec::Rs { min_chunk } => estimate_rs(path, *min_chunk)?.h,
                    MethodSpec::Higuchi { kmax } => estimate_higuchi(path, *kmax)?.h,
                    MethodSpec::Dfa { min_window } => estimate_dfa(path, *min_window)?.h,
                    MethodSpec::Variogram { p, lags } => estimate_variogram(path, *p, lags)?.h,
                    _ => unreachable!(),
                })
            }
        }
    }
}

/// Benchmark configuration; defaults follow the evaluation protocol
/// (length bins 2^7..2^15, paths drawn with H ~ U(0,1)).
#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub lengths: Vec<usize>,
    pub samples_per_bin: usize,
    pub methods: Vec<MethodSpec>,
    pub workers: usize,
    pub seed: u64,
}

impl BenchConfig {
    pub fn default_lengths() -> Vec<usize> {
        (7..=15).map(|k| 1usize << k).collect()
    }
}

/// One estimator invocation on one generated path.
#[derive(Debug, Clone)]
pub struct EstimateRecord {
    pub method: String,
    pub n: usize,
    pub h_true: f64,
    /// NaN when the estimator failed; see `error`.
    pub h_est: f64,
    pub error: Option<String>,
    pub seconds: f64,
}

/// Windowed error metrics around one grid point h.
#[derive(Debug, Clone)]
pub struct LocalMetrics {
    pub h: f64,
    pub count: usize,
    pub rmse: f64,
    pub bias: f64,
    pub std: f64,
}

/// Root mean squared error over successful records.
pub fn global_rmse(records: &[EstimateRecord]) -> f64 {
    let mut sq = 0.0;
    let mut count = 0usize;
    for r in records {
        if r.h_est.is_finite() {
            sq += (r.h_est - r.h_true) * (r.h_est - r.h_true);
            count += 1;
        }
    }
    if count == 0 {
        f64::NAN
    } else {
        (sq / count as f64).sqrt()
    }
}

/// RMSE/bias/std over H-windows [h-dh, h+dh] for h on a uniform grid.
///
/// std uses the population convention (divide by count), so
/// rmse^2 = bias^2 + std^2 holds exactly.
pub fn local_metrics(records: &[EstimateRecord], dh: f64, grid_step: f64) -> Vec<LocalMetrics> {
    let points = (1.0 / grid_step).round() as usize;
    let mut out = Vec::with_capacity(points + 1);
    for i in 0..=points {
        let h = i as f64 * grid_step;
        let lo = h - dh;
        let hi = h + dh;
        let errs: Vec<f64> = records
            .iter()
            .filter(|r| r.h_est.is_finite() && r.h_true >= lo && r.h_true <= hi)
            .map(|r| r.h_est - r.h_true)
            .collect();
        let count = errs.len();
        if count == 0 {
            out.push(LocalMetrics {
                h,
                count: 0,
                rmse: f64::NAN,
                bias: f64::NAN,
                std: f64::NAN,
            });
            continue;
        }
        let bias = errs.iter().sum::<f64>() / count as f64;
        let msq = errs.iter().map(|e| e * e).sum::<f64>() / count as f64;
        let var = (msq - bias * bias).max(0.0);
        out.push(LocalMetrics {
            h,
            count,
            rmse: msq.sqrt(),
            bias,
            std: var.sqrt(),
        });
    }
    out
}

/// Run closure `f` over task indices 0..tasks on `workers` threads, collecting
/// results in task order.
pub(crate) fn parallel_map<T, F>(tasks: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = workers.max(1).min(tasks.max(1));
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<T>>> = (0..tasks).map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= tasks {
                    break;
                }
                let value = f(i);
                *slots[i].lock().unwrap() = Some(value);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().unwrap().unwrap())
        .collect()
}

/// Draw the (H, path) pair for task `task_id` under master seed `seed`.
///
/// Stream 2*task_id drives the H draw, 2*task_id+1 the path noise, so the
/// pairing is independent of worker scheduling.
pub fn draw_benchmark_path(seed: u64, task_id: u64, n: usize) -> (f64, Vec<f64>) {
    let mut h_stream = GaussianStream::new(seed, 2 * task_id);
    let h = loop {
        let u = h_stream.next_open_unit();
        if u < 1.0 && u > 0.0 {
            break u;
        }
    };
    let mut spec = GenSpec::new(GenModel::Fbm, h, n, seed);
    spec.stream_index = 2 * task_id + 1;
    let path = crate::synth::generate(&spec).expect("valid generation spec");
    (h, path.values)
}

/// Run the full benchmark, returning all records ordered by
/// (method, bin, sample).
pub fn run_benchmark_records(cfg: &BenchConfig) -> Vec<EstimateRecord> {
    let m = cfg.samples_per_bin;
    let mut records: Vec<EstimateRecord> =
        Vec::with_capacity(cfg.lengths.len() * m * cfg.methods.len());
    for (bin_idx, &n) in cfg.lengths.iter().enumerate() {
        let per_task = parallel_map(m, cfg.workers, |sample| {
            let task_id = (bin_idx * m + sample) as u64;
            let (h_true, path) = draw_benchmark_path(cfg.seed, task_id, n);
            cfg.methods
                .iter()
                .map(|method| {
                    let start = Instant::now();
                    let outcome = method.estimate(&path, SeriesKind::Path);
                    let seconds = start.elapsed().as_secs_f64();
                    match outcome {
                        Ok(h_est) => EstimateRecord {
                            method: method.id(),
                            n,
                            h_true,
                            h_est,
                            error: None,
                            seconds,
                        },
                        Err(e) => EstimateRecord {
                            method: method.id(),
                            n,
                            h_true,
                            h_est: f64::NAN,
                            error: Some(e.to_string()),
                            seconds,
                        },
                    }
                })
                .collect::<Vec<_>>()
        });
        for (mi, _) in cfg.methods.iter().enumerate() {
            for task in &per_task {
                records.push(task[mi].clone());
            }
        }
    }
    records
}

fn fmt_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else {
        String::new()
    }
}

/// CSV tables produced by one benchmark run.
pub struct BenchTables {
    pub global_csv: String,
    pub local_csv: String,
    pub timings_csv: String,
}

/// Build the three CSV tables from benchmark records.
pub fn build_tables(cfg: &BenchConfig, records: &[EstimateRecord]) -> BenchTables {
    let mut global_csv = String::from("method,n,samples,rmse,failure_rate\n");
    let mut local_csv = String::from("method,n,h,count,rmse,bias,std\n");
    let mut timings_csv =
        String::from("method,n,samples,workers,total_seconds,per_sequence_seconds\n");

    for method in &cfg.methods {
        let id = method.id();
        for &n in &cfg.lengths {
            let group: Vec<EstimateRecord> = records
                .iter()
                .filter(|r| r.method == id && r.n == n)
                .cloned()
                .collect();
            let m = group.len();
            let failures = group.iter().filter(|r| !r.h_est.is_finite()).count();
            let rmse = global_rmse(&group);
            writeln!(
                global_csv,
                "{id},{n},{m},{},{}",
                fmt_float(rmse),
                fmt_float(failures as f64 / m.max(1) as f64)
            )
            .unwrap();

            for lm in local_metrics(&group, 0.05, 0.001) {
                writeln!(
                    local_csv,
                    "{id},{n},{},{},{},{},{}",
                    fmt_float(lm.h),
                    lm.count,
                    fmt_float(lm.rmse),
                    fmt_float(lm.bias),
                    fmt_float(lm.std)
                )
                .unwrap();
            }

            let summed: f64 = group.iter().map(|r| r.seconds).sum();
            // T approximates wall time across w workers; t = w*T/m
            let total = summed / cfg.workers as f64;
            let per_seq = cfg.workers as f64 * total / m.max(1) as f64;
            writeln!(
                timings_csv,
                "{id},{n},{m},{},{},{}",
                cfg.workers,
                fmt_float(total),
                fmt_float(per_seq)
            )
            .unwrap();
        }
    }
    BenchTables {
        global_csv,
        local_csv,
        timings_csv,
    }
}

/// Run the benchmark and write global.csv, local.csv, timings.csv to out_dir.
pub fn run_benchmark(cfg: &BenchConfig, out_dir: &Path) -> Result<Vec<EstimateRecord>> {
    let records = run_benchmark_records(cfg);
    let tables = build_tables(cfg, &records);
    std::fs::create_dir_all(out_dir)?;
    std::fs::write(out_dir.join("global.csv"), tables.global_csv)?;
    std::fs::write(out_dir.join("local.csv"), tables.local_csv)?;
    std::fs::write(out_dir.join("timings.csv"), tables.timings_csv)?;
    Ok(records)
}

/// Estimate H on sliding windows of a series; failed windows carry an error
/// tag instead of an estimate.
pub fn apply_sliding(
    series: &Series,
    window_len: usize,
    stride: usize,
    method: &MethodSpec,
) -> Result<Vec<(usize, std::result::Result<f64, String>)>> {
    if stride == 0 {
        return Err(crate::error::Error::Domain("stride must be positive".into()));
    }
    if window_len > series.values.len() {
        return Err(crate::error::Error::TooShort {
            need: window_len,
            got: series.values.len(),
        });
    }
    let mut out = Vec::new();
    let mut start = 0usize;
    while start + window_len <= series.values.len() {
        let window = &series.values[start..start + window_len];
        let res = method
            .estimate(window, series.kind)
            .map_err(|e| e.to_string());
        out.push((start, res));
        start += stride;
    }
    Ok(out)
}
