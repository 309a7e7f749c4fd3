//! Discrete Fourier transform and periodogram.
//!
//! Backed by rustfft, which provides O(n log n) transforms for any length
//! (radix-2 for powers of two, mixed-radix/Bluestein otherwise).

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Fourier frequencies and empirical spectral ordinates of a series.
#[derive(Debug, Clone)]
pub struct Periodogram {
    /// Length of the underlying series.
    pub n: usize,
    /// lambda_j = 2 pi j / n for j = 1..floor(n/2).
    pub frequencies: Vec<f64>,
    /// I(lambda_j) = |X[j]|^2, unnormalized.
    pub ordinates: Vec<f64>,
}

fn check_signal(signal: &[f64], min_len: usize) -> Result<()> {
    if signal.len() < min_len {
        return Err(Error::TooShort {
            need: min_len,
            got: signal.len(),
        });
    }
    if let Some(bad) = signal.iter().find(|v| !v.is_finite()) {
        return Err(Error::Domain(format!("non-finite sample in signal: {bad}")));
    }
    Ok(())
}

/// Forward DFT: X[j] = sum_t y_t e^(-2 pi i j t / n).
pub fn dft(signal: &[f64]) -> Result<Vec<Complex64>> {
    check_signal(signal, 2)?;
    let mut buf: Vec<Complex64> = signal.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    Ok(buf)
}

/// Inverse DFT, scaled so that inverse_dft(dft(y)) == y.
pub fn inverse_dft(spectrum: &[Complex64]) -> Result<Vec<Complex64>> {
    if spectrum.len() < 2 {
        return Err(Error::TooShort {
            need: 2,
            got: spectrum.len(),
        });
    }
    let mut buf = spectrum.to_vec();
    FftPlanner::new().plan_fft_inverse(buf.len()).process(&mut buf);
    let scale = 1.0 / buf.len() as f64;
    for v in &mut buf {
        *v *= scale;
    }
    Ok(buf)
}

/// Forward DFT of an already-complex buffer, in place.
pub(crate) fn dft_complex_inplace(buf: &mut [Complex64]) {
    FftPlanner::new().plan_fft_forward(buf.len()).process(buf);
}

/// Periodogram at the Fourier frequencies j = 1..floor(n/2).
///
/// The j = 0 ordinate is excluded and no 1/(2 pi n) scaling is applied; the
/// Whittle argmin is invariant to both. The sample mean is NOT removed here.
pub fn periodogram(signal: &[f64]) -> Result<Periodogram> {
    check_signal(signal, 4)?;
    let n = signal.len();
    let spectrum = dft(signal)?;
    let half = n / 2;
    let frequencies = (1..=half)
        .map(|j| 2.0 * std::f64::consts::PI * j as f64 / n as f64)
        .collect();
    let ordinates = spectrum[1..=half].iter().map(|c| c.norm_sqr()).collect();
    Ok(Periodogram {
        n,
        frequencies,
        ordinates,
    })
}
