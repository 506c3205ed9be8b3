use serde::{Deserialize, Serialize};

use crate::conformal::ConformalFactor;
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Values of a function on the uniform grid `u_i = u0 + i h`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniformSamples {
    pub u0: f64,
    pub h: f64,
    pub values: Vec<f64>,
}

impl UniformSamples {
    pub fn new(u0: f64, h: f64, values: Vec<f64>) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) || !u0.is_finite() {
            return Err(Error::invalid(format!(
                "uniform grid needs finite origin and positive spacing (u0 = {u0}, h = {h})"
            )));
        }
        Ok(UniformSamples { u0, h, values })
    }

    /// Samples `f` at `n` points spanning `[lo, hi]`.
    pub fn from_fn(
        lo: f64,
        hi: f64,
        n: usize,
        exec: Execution,
        f: impl Fn(f64) -> Result<f64> + Sync + Send,
    ) -> Result<Self> {
        if n < 2 || !(hi > lo) {
            return Err(Error::invalid(format!(
                "need at least two points on a nonempty interval (n = {n}, [{lo}, {hi}])"
            )));
        }
        let h = (hi - lo) / (n - 1) as f64;
        let values = exec.try_map(n, |i| f(grid_point(lo, hi, n, i)))?;
        UniformSamples::new(lo, h, values)
    }

    /// `lambda` of a conformal factor on `n` points spanning `[lo, hi]`.
    pub fn conformal_factor(
        factor: &dyn ConformalFactor,
        lo: f64,
        hi: f64,
        n: usize,
        exec: Execution,
    ) -> Result<Self> {
        Self::from_fn(lo, hi, n, exec, |u| factor.value(u))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn u(&self, i: usize) -> f64 {
        self.u0 + i as f64 * self.h
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        UniformSamples {
            u0: self.u0,
            h: self.h,
            values: self.values.iter().map(|&x| f(x)).collect(),
        }
    }

    /// Every `stride`-th sample, starting from the first.
    pub fn subsample(&self, stride: usize) -> Self {
        assert!(stride > 0);
        UniformSamples {
            u0: self.u0,
            h: self.h * stride as f64,
            values: self.values.iter().step_by(stride).copied().collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// The `i`-th of `n` equispaced points in `[lo, hi]`, hitting both ends exactly.
pub(crate) fn grid_point(lo: f64, hi: f64, n: usize, i: usize) -> f64 {
    if i + 1 == n {
        hi
    } else {
        lo + (hi - lo) * (i as f64 / (n - 1) as f64)
    }
}

/// Ordinary least-squares line `y ~ intercept + slope x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub intercept: f64,
    pub slope: f64,
    /// Largest `|y_i - (intercept + slope x_i)|`.
    pub max_residual: f64,
}

pub fn fit_line(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if n < 2 {
        return Err(Error::precondition("line fit needs at least two points"));
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 {
        return Err(Error::precondition("line fit needs distinct abscissae"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_residual = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).abs())
        .fold(0.0, f64::max);
    Ok(LineFit {
        intercept,
        slope,
        max_residual,
    })
}
