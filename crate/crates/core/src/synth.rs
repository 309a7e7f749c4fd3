//! Reproducible synthetic data: fGn/fBm via Davies-Harte circulant embedding,
//! ARFIMA(0, d, 0) via truncated fractional integration.
//!
//! Randomness comes from ChaCha8 keyed by a 64-bit seed, with independent
//! streams selected by a stream index; normal deviates use the ziggurat
//! transform from `rand_distr::StandardNormal`. Cross-language ports can only
//! reproduce streams bit-for-bit by matching both choices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{fgn_autocovariance, HurstParam};
use crate::transform::dft_complex_inplace;

/// Whether a series holds stationary increments (fGn-like) or a path (fBm-like).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Increments,
    Path,
}

impl SeriesKind {
    pub fn name(&self) -> &'static str {
        match self {
            SeriesKind::Increments => "increments",
            SeriesKind::Path => "path",
        }
    }
}

/// Provenance of a generated series, when known.
#[derive(Debug, Clone)]
pub struct SeriesMeta {
    pub h_true: f64,
    pub model: String,
    pub seed: u64,
}

/// A real-valued time series tagged with its kind.
#[derive(Debug, Clone)]
pub struct Series {
    pub values: Vec<f64>,
    pub kind: SeriesKind,
    pub meta: Option<SeriesMeta>,
}

impl Series {
    pub fn increments(values: Vec<f64>) -> Self {
        Series {
            values,
            kind: SeriesKind::Increments,
            meta: None,
        }
    }

    pub fn path(values: Vec<f64>) -> Self {
        Series {
            values,
            kind: SeriesKind::Path,
            meta: None,
        }
    }
}

/// Generator model for [`GenSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenModel {
    Fgn,
    Fbm,
    Arfima,
}

impl GenModel {
    pub fn name(&self) -> &'static str {
        match self {
            GenModel::Fgn => "fgn",
            GenModel::Fbm => "fbm",
            GenModel::Arfima => "arfima",
        }
    }
}

/// Everything needed to generate one synthetic series reproducibly.
#[derive(Debug, Clone, Copy)]
pub struct GenSpec {
    pub model: GenModel,
    pub hurst: f64,
    pub n: usize,
    pub seed: u64,
    pub sigma: f64,
    /// RNG stream selector; parallel workers use disjoint indices.
    pub stream_index: u64,
}

impl GenSpec {
    pub fn new(model: GenModel, hurst: f64, n: usize, seed: u64) -> Self {
        GenSpec {
            model,
            hurst,
            n,
            seed,
            sigma: 1.0,
            stream_index: 0,
        }
    }

    fn validate(&self) -> Result<HurstParam> {
        if self.n < 2 {
            return Err(Error::TooShort {
                need: 2,
                got: self.n,
            });
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(Error::Domain(format!("sigma must be positive, got {}", self.sigma)));
        }
        HurstParam::new(self.hurst)
    }
}

/// Deterministic stream of standard normal deviates for (seed, stream_index).
pub struct GaussianStream {
    rng: ChaCha8Rng,
}

impl GaussianStream {
    pub fn new(seed: u64, stream_index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_index);
        GaussianStream { rng }
    }

    #[inline]
    pub fn next_normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Uniform draw on the open interval (0, 1).
    pub fn next_open_unit(&mut self) -> f64 {
        loop {
            let u: f64 = self.rng.gen();
            if u > 0.0 {
                return u;
            }
        }
    }
}

/// Generate fGn by Davies-Harte circulant embedding: exact Gaussian law with
/// the theoretical fGn covariance, O(n log n).
pub fn generate_fgn_davies_harte(spec: &GenSpec) -> Result<Series> {
    let hurst = spec.validate()?;
    let n = spec.n;
    let m = 2 * n;

    // circulant first row [g0, g1, .., g(n-1), g(n), g(n-1), .., g1]
    let gamma = fgn_autocovariance(hurst, n, 1.0);
    let mut row: Vec<Complex64> = Vec::with_capacity(m);
    for g in &gamma[..=n] {
        row.push(Complex64::new(*g, 0.0));
    }
    for g in gamma[1..n].iter().rev() {
        row.push(Complex64::new(*g, 0.0));
    }
    dft_complex_inplace(&mut row);

    let max_eig = row.iter().map(|c| c.re).fold(f64::NEG_INFINITY, f64::max);
    let mut eigs = Vec::with_capacity(m);
    for (i, c) in row.iter().enumerate() {
        if c.re < -1e-9 * max_eig {
            return Err(Error::EmbeddingNotNonnegative {
                index: i,
                eigenvalue: c.re,
            });
        }
        eigs.push(c.re.max(0.0));
    }

    // Hermitian-symmetric Gaussian amplitudes; interior modes carry
    // sqrt(eig/(4n)), the two real modes sqrt(eig/(2n)).
    let mut rng = GaussianStream::new(spec.seed, spec.stream_index);
    let mut modes = vec![Complex64::new(0.0, 0.0); m];
    modes[0] = Complex64::new((eigs[0] / (2.0 * n as f64)).sqrt() * rng.next_normal(), 0.0);
    for j in 1..n {
        let scale = (eigs[j] / (4.0 * n as f64)).sqrt();
        let re = scale * rng.next_normal();
        let im = scale * rng.next_normal();
        modes[j] = Complex64::new(re, im);
        modes[m - j] = Complex64::new(re, -im);
    }
    modes[n] = Complex64::new((eigs[n] / (2.0 * n as f64)).sqrt() * rng.next_normal(), 0.0);

    dft_complex_inplace(&mut modes);
    let values: Vec<f64> = modes[..n].iter().map(|c| spec.sigma * c.re).collect();

    Ok(Series {
        values,
        kind: SeriesKind::Increments,
        meta: Some(SeriesMeta {
            h_true: spec.hurst,
            model: GenModel::Fgn.name().into(),
            seed: spec.seed,
        }),
    })
}

/// Cumulate increments into a path (no prepended zero: the path starts one
/// step in).
pub fn path_from_increments(s: &Series) -> Result<Series> {
    if s.kind != SeriesKind::Increments {
        return Err(Error::WrongKind {
            expected: "increments",
            got: s.kind.name(),
        });
    }
    let mut acc = 0.0;
    let values = s
        .values
        .iter()
        .map(|&v| {
            acc += v;
            acc
        })
        .collect();
    Ok(Series {
        values,
        kind: SeriesKind::Path,
        meta: s.meta.clone(),
    })
}

/// First-difference a path back to increments (the initial level is lost).
pub fn increments_from_path(s: &Series) -> Result<Series> {
    if s.kind != SeriesKind::Path {
        return Err(Error::WrongKind {
            expected: "path",
            got: s.kind.name(),
        });
    }
    let mut values = Vec::with_capacity(s.values.len());
    if let Some(&first) = s.values.first() {
        values.push(first);
        for w in s.values.windows(2) {
            values.push(w[1] - w[0]);
        }
    }
    Ok(Series {
        values,
        kind: SeriesKind::Increments,
        meta: s.meta.clone(),
    })
}

/// Generate ARFIMA(0, d, 0) increments with d = H - 0.5 by the truncated
/// MA(infinity) representation; the first `trunc` burn-in samples are dropped.
pub fn generate_arfima(spec: &GenSpec, trunc: Option<usize>) -> Result<Series> {
    spec.validate()?;
    let d = spec.hurst - 0.5;
    let n = spec.n;
    let trunc = trunc.unwrap_or(n);

    // psi_0 = 1, psi_j = psi_{j-1} (j - 1 + d) / j
    let mut psi = Vec::with_capacity(trunc + 1);
    psi.push(1.0);
    for j in 1..=trunc {
        let prev = psi[j - 1];
        psi.push(prev * (j as f64 - 1.0 + d) / j as f64);
    }

    let mut rng = GaussianStream::new(spec.seed, spec.stream_index);
    let noise: Vec<f64> = (0..n + trunc).map(|_| rng.next_normal()).collect();

    // outputs t = trunc .. n+trunc-1 use a full psi window
    let mut values = Vec::with_capacity(n);
    for t in trunc..n + trunc {
        let window = &noise[t - trunc..=t];
        let mut acc = 0.0;
        for (j, &p) in psi.iter().enumerate() {
            acc += p * window[trunc - j];
        }
        values.push(spec.sigma * acc);
    }

    Ok(Series {
        values,
        kind: SeriesKind::Increments,
        meta: Some(SeriesMeta {
            h_true: spec.hurst,
            model: GenModel::Arfima.name().into(),
            seed: spec.seed,
        }),
    })
}

/// Generate a series per the spec's model: fGn increments, fBm path, or
/// ARFIMA increments.
pub fn generate(spec: &GenSpec) -> Result<Series> {
    match spec.model {
        GenModel::Fgn => generate_fgn_davies_harte(spec),
        GenModel::Fbm => {
            let mut s = path_from_increments(&generate_fgn_davies_harte(spec)?)?;
            if let Some(meta) = &mut s.meta {
                meta.model = GenModel::Fbm.name().into();
            }
            Ok(s)
        }
        GenModel::Arfima => generate_arfima(spec, None),
    }
}
