//! Hurst exponent estimation toolkit.
//!
//! Estimators: Whittle's likelihood (four fGn spectral approximations plus
//! the ARFIMA spectrum), time-domain maximum likelihood via Durbin-Levinson,
//! and four classical baselines (R/S, Higuchi, DFA, variogram). Synthetic
//! fGn/fBm/ARFIMA generators and a reproducible Monte-Carlo benchmark
//! harness round out the toolkit.

pub mod baselines;
pub mod bench;
pub mod cli;
pub mod error;
pub mod optimize;
pub mod spectral;
pub mod synth;
pub mod tdml;
pub mod transform;
pub mod whittle;

pub use error::{Error, Result};
pub use spectral::{HurstParam, SpectrumModel};
pub use synth::{GenModel, GenSpec, Series, SeriesKind};
pub use whittle::{estimate_hurst_whittle, WhittleOptions};
