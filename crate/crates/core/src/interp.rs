//! Interpolation and finite-difference helpers for sampled (possibly
//! non-uniform) data.

use crate::error::{Error, Result};

/// Monotone piecewise-cubic Hermite interpolant (Fritsch–Carlson slopes with
/// the Fritsch–Butland weighted harmonic mean).
///
/// Monotone data give a monotone interpolant; no overshoot at extrema.
#[derive(Debug, Clone)]
pub struct Pchip {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl Pchip {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(Error::invalid(
                "interpolation needs at least two (x, y) pairs of equal length",
            ));
        }
        if let Some(i) = xs.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(Error::invalid(format!(
                "interpolation abscissae must be strictly increasing (index {})",
                i + 1
            )));
        }
        let slopes = pchip_slopes(&xs, &ys);
        Ok(Pchip { xs, ys, slopes })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.xs[0], *self.xs.last().unwrap())
    }

    /// Evaluates the interpolant; arguments outside the data range are
    /// extrapolated with the end cubic.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let i = match self.xs.partition_point(|&xi| xi <= x) {
            0 => 0,
            p if p >= n => n - 2,
            p => p - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.ys[i] + h10 * h * self.slopes[i] + h01 * self.ys[i + 1] + h11 * h * self.slopes[i + 1]
    }
}

fn pchip_slopes(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<f64> = (0..n - 1).map(|k| (ys[k + 1] - ys[k]) / h[k]).collect();
    if n == 2 {
        return vec![delta[0]; 2];
    }
    let mut d = vec![0.0; n];
    for k in 1..n - 1 {
        let (a, b) = (delta[k - 1], delta[k]);
        if a == 0.0 || b == 0.0 || a.signum() != b.signum() {
            continue;
        }
        let w1 = 2.0 * h[k] + h[k - 1];
        let w2 = h[k] + 2.0 * h[k - 1];
        d[k] = (w1 + w2) / (w1 / a + w2 / b);
    }
    d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    d
}

fn end_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if d.signum() != d0.signum() {
        0.0
    } else if d0.signum() != d1.signum() && d.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        d
    }
}

/// Finite-difference weights (Fornberg 1988): `weights[k][j]` multiplies
/// `f(nodes[j])` in the approximation of the `k`-th derivative at `z`.
pub fn fornberg_weights(z: f64, nodes: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - z;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - z;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] *= c4 / c3;
        }
        c1 = c2;
    }
    c
}

/// Value and derivatives up to `order` at `x` of the polynomial through the
/// `width` nodes nearest to `x` (clamped at the ends of the data).
pub fn local_polynomial(xs: &[f64], ys: &[f64], x: f64, width: usize, order: usize) -> Vec<f64> {
    let n = xs.len();
    let width = width.min(n);
    let i = xs.partition_point(|&xi| xi <= x).saturating_sub(1);
    let start = (i + 1).saturating_sub(width / 2).min(n - width);
    let w = fornberg_weights(x, &xs[start..start + width], order);
    w.iter()
        .map(|wk| wk.iter().zip(&ys[start..start + width]).map(|(a, b)| a * b).sum())
        .collect()
}

/// Start index of the `width`-point window centred on `i` and clamped into
/// `0..n`.
fn window(i: usize, width: usize, n: usize) -> usize {
    let half = width / 2;
    i.saturating_sub(half).min(n - width)
}

/// First derivative at every node from a 5-point stencil (fewer if fewer
/// nodes), one-sided near the ends.
pub fn derivative(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let width = n.min(5);
    (0..n)
        .map(|i| {
            let start = window(i, width, n);
            let w = fornberg_weights(xs[i], &xs[start..start + width], 1);
            w[1].iter().zip(&ys[start..start + width]).map(|(a, b)| a * b).sum()
        })
        .collect()
}

/// Running integral `int_{x_0}^{x_i} y dx` at every node, integrating the
/// local cubic through four neighbouring nodes exactly (two-point Gauss).
pub fn cumulative_integral(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    let width = n.min(4);
    let g = 0.5 / 3.0_f64.sqrt();
    for i in 0..n - 1 {
        // Nodes i-1..=i+2 when available.
        let start = i.saturating_sub(1).min(n - width);
        let nodes = &xs[start..start + width];
        let vals = &ys[start..start + width];
        let (a, b) = (xs[i], xs[i + 1]);
        let mid = 0.5 * (a + b);
        let half = b - a;
        let mut piece = 0.0;
        for z in [mid - g * half, mid + g * half] {
            let w = fornberg_weights(z, nodes, 0);
            piece += w[0].iter().zip(vals).map(|(a, b)| a * b).sum::<f64>();
        }
        out[i + 1] = out[i] + 0.5 * half * piece;
    }
    out
}
