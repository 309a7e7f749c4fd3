//! Bounded scalar minimization (Brent: golden section + parabolic steps).

use crate::error::{Error, Result};

/// Search interval and stopping controls for [`minimize_scalar_bounded`].
#[derive(Debug, Clone, Copy)]
pub struct ScalarSearchOptions {
    pub lo: f64,
    pub hi: f64,
    pub xtol: f64,
    pub max_iter: usize,
}

impl ScalarSearchOptions {
    pub fn new(lo: f64, hi: f64) -> Self {
        ScalarSearchOptions {
            lo,
            hi,
            xtol: 1e-6,
            max_iter: 500,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return Err(Error::Domain(format!(
                "invalid search interval [{}, {}]",
                self.lo, self.hi
            )));
        }
        if !(self.xtol > 0.0 && self.xtol < self.hi - self.lo) {
            return Err(Error::Domain(format!(
                "xtol must lie in (0, hi-lo), got {}",
                self.xtol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::Domain("max_iter must be positive".into()));
        }
        Ok(())
    }
}

/// Result of a bounded scalar minimization.
#[derive(Debug, Clone, Copy)]
pub struct ScalarMinimum {
    pub argmin: f64,
    pub min_value: f64,
    pub evals: usize,
}

const GOLDEN_MEAN: f64 = 0.381_966_011_250_105_1; // (3 - sqrt(5)) / 2

/// Minimize `f` on [lo, hi] by Brent's bounded method.
///
/// Alternates golden-section steps with successive parabolic interpolation;
/// never evaluates outside the interval. Errors if the objective returns a
/// non-finite value or the tolerance is not reached within `max_iter`
/// evaluations.
pub fn minimize_scalar_bounded<F>(mut f: F, opts: ScalarSearchOptions) -> Result<ScalarMinimum>
where
    F: FnMut(f64) -> f64,
{
    opts.validate()?;
    let sqrt_eps = f64::EPSILON.sqrt();
    let (mut a, mut b) = (opts.lo, opts.hi);

    let mut eval = |x: f64, evals: &mut usize| -> Result<f64> {
        let v = f(x);
        *evals += 1;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::ObjectiveNotFinite { x })
        }
    };
    let mut evals = 0usize;

    let mut xf = a + GOLDEN_MEAN * (b - a);
    let mut nfc = xf; // second-best point
    let mut fulc = xf; // third-best point
    let mut rat = 0.0f64;
    let mut e = 0.0f64;
    let mut fx = eval(xf, &mut evals)?;
    let mut fnfc = fx;
    let mut ffulc = fx;

    let mut xm = 0.5 * (a + b);
    let mut tol1 = sqrt_eps * xf.abs() + opts.xtol / 3.0;
    let mut tol2 = 2.0 * tol1;

    while (xf - xm).abs() > tol2 - 0.5 * (b - a) {
        let mut golden = true;
        if e.abs() > tol1 {
            // try a parabolic fit through (xf, nfc, fulc)
            golden = false;
            let r = (xf - nfc) * (fx - ffulc);
            let mut q = (xf - fulc) * (fx - fnfc);
            let mut p = (xf - fulc) * q - (xf - nfc) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let r_prev = e;
            e = rat;
            if p.abs() < (0.5 * q * r_prev).abs() && p > q * (a - xf) && p < q * (b - xf) {
                rat = p / q;
                let x = xf + rat;
                if (x - a) < tol2 || (b - x) < tol2 {
                    rat = if xm >= xf { tol1 } else { -tol1 };
                }
            } else {
                golden = true;
            }
        }
        if golden {
            e = if xf >= xm { a - xf } else { b - xf };
            rat = GOLDEN_MEAN * e;
        }

        let step = if rat >= 0.0 {
            rat.abs().max(tol1)
        } else {
            -rat.abs().max(tol1)
        };
        let x = xf + step;
        let fu = eval(x, &mut evals)?;

        if fu <= fx {
            if x >= xf {
                a = xf;
            } else {
                b = xf;
            }
            fulc = nfc;
            ffulc = fnfc;
            nfc = xf;
            fnfc = fx;
            xf = x;
            fx = fu;
        } else {
            if x < xf {
                a = x;
            } else {
                b = x;
            }
            if fu <= fnfc || nfc == xf {
                fulc = nfc;
                ffulc = fnfc;
                nfc = x;
                fnfc = fu;
            } else if fu <= ffulc || fulc == xf || fulc == nfc {
                fulc = x;
                ffulc = fu;
            }
        }

        xm = 0.5 * (a + b);
        tol1 = sqrt_eps * xf.abs() + opts.xtol / 3.0;
        tol2 = 2.0 * tol1;

        if evals >= opts.max_iter {
            return Err(Error::NoConvergence {
                max_iter: opts.max_iter,
                best_x: xf,
            });
        }
    }

    Ok(ScalarMinimum {
        argmin: xf,
        min_value: fx,
        evals,
    })
}
