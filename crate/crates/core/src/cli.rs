//! Command-line interface: generate | estimate | bench | sliding.

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{apply_sliding, run_benchmark, BenchConfig, MethodSpec};
use crate::error::{Error, Result};
use crate::spectral::SpectrumModel;
use crate::synth::{GenModel, GenSpec, Series, SeriesKind};
use crate::tdml::TdmlOptions;
use crate::whittle::WhittleOptions;

#[derive(Parser, Debug)]
#[command(
    name = "hurstlab",
    about = "Hurst exponent estimation, synthetic generators, and Monte-Carlo benchmarks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a synthetic series and write it as a single-column CSV
    Generate(GenerateArgs),
    /// Estimate the Hurst exponent of a series file
    Estimate(EstimateArgs),
    /// Run the Monte-Carlo benchmark harness
    Bench(BenchArgs),
    /// Estimate H on sliding windows of a series file
    Sliding(SlidingArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ModelArg {
    Fbm,
    Fgn,
    Arfima,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum MethodArg {
    Whittle,
    Tdml,
    Rs,
    Higuchi,
    Dfa,
    Variogram,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum SpectrumArg {
    Paxson,
    Hurwitz,
    Truncation,
    Taylor,
    Arfima,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum InputKindArg {
    Path,
    Increments,
}

impl From<InputKindArg> for SeriesKind {
    fn from(v: InputKindArg) -> Self {
        match v {
            InputKindArg::Path => SeriesKind::Path,
            InputKindArg::Increments => SeriesKind::Increments,
        }
    }
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    #[arg(long)]
    pub hurst: f64,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Output file; standard output when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Start fBm paths at zero instead of at the first increment
    #[arg(long, default_value_t = false)]
    pub prepend_zero: bool,
}

#[derive(Args, Debug)]
pub struct EstimateArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::Whittle)]
    pub method: MethodArg,
    /// Spectral model for the Whittle estimator
    #[arg(long, value_enum, default_value_t = SpectrumArg::Paxson)]
    pub spectrum: SpectrumArg,
    /// Truncation order for the paxson/truncation spectra
    #[arg(long = "K")]
    pub k: Option<u32>,
    #[arg(long, value_enum, default_value_t = InputKindArg::Path)]
    pub input_kind: InputKindArg,
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Comma-separated length bins
    #[arg(long, value_delimiter = ',', default_values_t = BenchConfig::default_lengths())]
    pub lengths: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Comma-separated estimators, e.g. whittle:paxson:10,tdml,higuchi
    #[arg(long, value_delimiter = ',', default_value = "whittle:paxson:10")]
    pub methods: Vec<String>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct SlidingArgs {
    #[arg(long)]
    pub window: usize,
    #[arg(long)]
    pub stride: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Whittle)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = SpectrumArg::Paxson)]
    pub spectrum: SpectrumArg,
    #[arg(long = "K")]
    pub k: Option<u32>,
    #[arg(long, value_enum, default_value_t = InputKindArg::Path)]
    pub input_kind: InputKindArg,
    #[arg(long)]
    pub input: PathBuf,
}

fn spectrum_model(spectrum: SpectrumArg, k: Option<u32>) -> SpectrumModel {
    match spectrum {
        SpectrumArg::Paxson => SpectrumModel::FgnPaxson(k.unwrap_or(10)),
        SpectrumArg::Hurwitz => SpectrumModel::FgnHurwitz,
        SpectrumArg::Truncation => SpectrumModel::FgnTruncation(k.unwrap_or(200)),
        SpectrumArg::Taylor => SpectrumModel::FgnTaylor,
        SpectrumArg::Arfima => SpectrumModel::Arfima,
    }
}

fn method_spec(method: MethodArg, spectrum: SpectrumArg, k: Option<u32>) -> MethodSpec {
    match method {
        MethodArg::Whittle => MethodSpec::Whittle(WhittleOptions {
            model: spectrum_model(spectrum, k),
            ..WhittleOptions::default()
        }),
        MethodArg::Tdml => MethodSpec::Tdml(TdmlOptions::default()),
        MethodArg::Rs => MethodSpec::Rs { min_chunk: 8 },
        MethodArg::Higuchi => MethodSpec::Higuchi { kmax: 10 },
        MethodArg::Dfa => MethodSpec::Dfa { min_window: 8 },
        MethodArg::Variogram => MethodSpec::Variogram {
            p: 1.0,
            lags: vec![1, 2],
        },
    }
}

/// Parse a bench method token like "whittle:hurwitz" or "whittle:paxson:10".
pub fn parse_method_token(token: &str) -> Result<MethodSpec> {
    let parts: Vec<&str> = token.split(':').collect();
    let bad = || Error::Parse(format!("unknown method spec '{token}'"));
    match parts[0] {
        "whittle" => {
            let model = match parts.get(1).copied() {
                None | Some("paxson") => {
                    SpectrumModel::FgnPaxson(parse_k(parts.get(2), 10, token)?)
                }
                Some("hurwitz") => SpectrumModel::FgnHurwitz,
                Some("truncation") => {
                    SpectrumModel::FgnTruncation(parse_k(parts.get(2), 200, token)?)
                }
                Some("taylor") => SpectrumModel::FgnTaylor,
                Some("arfima") => SpectrumModel::Arfima,
                _ => return Err(bad()),
            };
            Ok(MethodSpec::Whittle(WhittleOptions {
                model,
                ..WhittleOptions::default()
            }))
        }
        "tdml" if parts.len() == 1 => Ok(MethodSpec::Tdml(TdmlOptions::default())),
        "rs" if parts.len() == 1 => Ok(MethodSpec::Rs { min_chunk: 8 }),
        "higuchi" if parts.len() == 1 => Ok(MethodSpec::Higuchi { kmax: 10 }),
        "dfa" if parts.len() == 1 => Ok(MethodSpec::Dfa { min_window: 8 }),
        "variogram" if parts.len() == 1 => Ok(MethodSpec::Variogram {
            p: 1.0,
            lags: vec![1, 2],
        }),
        _ => Err(bad()),
    }
}

fn parse_k(part: Option<&&str>, default: u32, token: &str) -> Result<u32> {
    match part {
        None => Ok(default),
        Some(s) => s
            .parse()
            .map_err(|_| Error::Parse(format!("bad truncation order in '{token}'"))),
    }
}

/// Read a single-column series CSV; a non-numeric first line is a header.
pub fn read_series_csv(path: &std::path::Path, kind: SeriesKind) -> Result<Series> {
    let text = std::fs::read_to_string(path)?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        match line.parse::<f64>() {
            Ok(v) => values.push(v),
            Err(_) if i == 0 => continue, // header row
            Err(_) => {
                return Err(Error::Parse(format!(
                    "{}:{}: not a number: '{line}'",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Ok(Series {
        values,
        kind,
        meta: None,
    })
}

fn write_series_csv(out: &mut dyn std::io::Write, values: &[f64]) -> Result<()> {
    writeln!(out, "value")?;
    for v in values {
        writeln!(out, "{v}")?;
    }
    Ok(())
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate(args) => {
            let model = match args.model {
                ModelArg::Fbm => GenModel::Fbm,
                ModelArg::Fgn => GenModel::Fgn,
                ModelArg::Arfima => GenModel::Arfima,
            };
            let mut spec = GenSpec::new(model, args.hurst, args.n, args.seed);
            spec.sigma = args.sigma;
            let series = crate::synth::generate(&spec)?;
            let mut values = series.values;
            if args.prepend_zero && model == GenModel::Fbm {
                values.insert(0, 0.0);
            }
            match args.out {
                Some(path) => {
                    let mut file = std::fs::File::create(path)?;
                    write_series_csv(&mut file, &values)?;
                }
                None => write_series_csv(&mut std::io::stdout().lock(), &values)?,
            }
            Ok(())
        }
        Command::Estimate(args) => {
            let series = read_series_csv(&args.input, args.input_kind.into())?;
            let method = method_spec(args.method, args.spectrum, args.k);
            let h = method.estimate(&series.values, series.kind)?;
            println!("H_est={h}");
            Ok(())
        }
        Command::Bench(args) => {
            let methods = args
                .methods
                .iter()
                .map(|t| parse_method_token(t))
                .collect::<Result<Vec<_>>>()?;
            let cfg = BenchConfig {
                lengths: args.lengths,
                samples_per_bin: args.samples,
                methods,
                workers: args.workers.max(1),
                seed: args.seed,
            };
            run_benchmark(&cfg, &args.out)?;
            Ok(())
        }
        Command::Sliding(args) => {
            let series = read_series_csv(&args.input, args.input_kind.into())?;
            let method = method_spec(args.method, args.spectrum, args.k);
            let rows = apply_sliding(&series, args.window, args.stride, &method)?;
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            writeln!(out, "start,h_est,error")?;
            for (start, res) in rows {
                match res {
                    Ok(h) => writeln!(out, "{start},{h},")?,
                    Err(tag) => writeln!(out, "{start},,{tag}")?,
                }
            }
            Ok(())
        }
    }
}
