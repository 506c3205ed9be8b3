//! Finite-difference certification of the Ricci condition
//!
//! ```text
//! Delta log sqrt(-2b^2 - K) = 2K,   Delta f = (f_uu + f_vv) / lambda^2,
//! ```
//!
//! on sampled metrics, plus the affine-log normalization property
//! `log(lambda^2 sqrt(-2b^2 - K)) = log sqrt(c1) + c2 u` that any special
//! Liouville solution of the condition must have.
//!
//! All stencils are second order (5-point Laplacian, 3-point second
//! derivative). Boundary layers are trimmed instead of using one-sided
//! stencils, so the error model is uniform and the observed convergence order
//! is meaningful.

use serde::{Deserialize, Serialize};

use crate::conformal::ConformalFactor;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::samples::{fit_line, grid_point, UniformSamples};

/// Residuals below this are treated as underflow and excluded from order fits.
pub const RESIDUAL_FLOOR: f64 = 1e-13;

/// Accepted band for the observed convergence order of family members.
pub const ORDER_BAND: (f64, f64) = (1.8, 2.2);

/// Minimum number of samples for the one-dimensional stencils.
pub const MIN_SAMPLES_1D: usize = 7;

/// Rectangle `[u_lo, u_hi] x [v_lo, v_hi]` with `nu x nv` points and square
/// cells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub u_lo: f64,
    pub u_hi: f64,
    pub v_lo: f64,
    pub v_hi: f64,
    pub nu: usize,
    pub nv: usize,
}

impl GridSpec {
    pub fn new(u_lo: f64, u_hi: f64, v_lo: f64, v_hi: f64, nu: usize, nv: usize) -> Result<Self> {
        if ![u_lo, u_hi, v_lo, v_hi].iter().all(|x| x.is_finite()) {
            return Err(Error::invalid("grid bounds must be finite"));
        }
        if !(u_lo < u_hi && v_lo < v_hi) {
            return Err(Error::invalid(format!(
                "grid needs u_lo < u_hi and v_lo < v_hi (got [{u_lo}, {u_hi}] x [{v_lo}, {v_hi}])"
            )));
        }
        if nu < 2 || nv < 2 {
            return Err(Error::invalid(format!("grid needs at least 2 x 2 points (got {nu} x {nv})")));
        }
        let hu = (u_hi - u_lo) / (nu - 1) as f64;
        let hv = (v_hi - v_lo) / (nv - 1) as f64;
        if (hu - hv).abs() > 1e-12 * hu.max(hv) {
            return Err(Error::invalid(format!(
                "grid cells must be square (du = {hu}, dv = {hv})"
            )));
        }
        Ok(GridSpec { u_lo, u_hi, v_lo, v_hi, nu, nv })
    }

    /// Grid with spacing `h`; both extents must be whole multiples of `h`.
    pub fn with_spacing(u_lo: f64, u_hi: f64, v_lo: f64, v_hi: f64, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::invalid(format!("grid spacing must be positive (got {h})")));
        }
        let count = |lo: f64, hi: f64, axis: &str| -> Result<usize> {
            let cells = (hi - lo) / h;
            let rounded = cells.round();
            if (cells - rounded).abs() > 1e-9 * cells.max(1.0) || rounded < 1.0 {
                return Err(Error::invalid(format!(
                    "{axis} extent {} is not a whole multiple of h = {h}",
                    hi - lo
                )));
            }
            Ok(rounded as usize + 1)
        };
        let nu = count(u_lo, u_hi, "u")?;
        let nv = count(v_lo, v_hi, "v")?;
        GridSpec::new(u_lo, u_hi, v_lo, v_hi, nu, nv)
    }

    pub fn h(&self) -> f64 {
        (self.u_hi - self.u_lo) / (self.nu - 1) as f64
    }

    pub fn u(&self, i: usize) -> f64 {
        grid_point(self.u_lo, self.u_hi, self.nu, i)
    }

    pub fn v(&self, j: usize) -> f64 {
        grid_point(self.v_lo, self.v_hi, self.nv, j)
    }

    /// Same rectangle at half the spacing.
    pub fn refined(&self) -> Self {
        GridSpec {
            nu: 2 * self.nu - 1,
            nv: 2 * self.nv - 1,
            ..*self
        }
    }
}

/// Sampled `lambda`, `K` and Ricci residual over a [`GridSpec`], stored
/// row-major with `u` as the slow index.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricGrid {
    pub spec: GridSpec,
    pub lambda: Vec<f64>,
    pub curvature: Vec<f64>,
    /// `None` until [`ricci_residual_grid`] runs; NaN on the trimmed boundary.
    pub residual: Option<Vec<f64>>,
}

impl MetricGrid {
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.spec.nv + j
    }

    /// The `v = v_j` column as samples along `u`.
    pub fn column(&self, field: &[f64], j: usize) -> UniformSamples {
        let values = (0..self.spec.nu).map(|i| field[self.index(i, j)]).collect();
        UniformSamples {
            u0: self.spec.u_lo,
            h: self.spec.h(),
            values,
        }
    }
}

/// Fills `lambda` and `K` from the analytic factor.
pub fn sample_grid(factor: &dyn ConformalFactor, spec: &GridSpec, exec: Execution) -> Result<MetricGrid> {
    let (lo, hi) = factor.domain();
    if !(spec.u_lo > lo && spec.u_hi < hi) {
        return Err(Error::OutsideDomain {
            u: if spec.u_hi >= hi { spec.u_hi } else { spec.u_lo },
            u_max: if spec.u_hi >= hi { hi } else { lo },
        });
    }
    let rows = exec.try_map(spec.nu, |i| {
        let u = spec.u(i);
        Ok((factor.value(u)?, factor.curvature(u)?))
    })?;
    let mut lambda = Vec::with_capacity(spec.nu * spec.nv);
    let mut curvature = Vec::with_capacity(spec.nu * spec.nv);
    for (l, k) in rows {
        lambda.extend(std::iter::repeat_n(l, spec.nv));
        curvature.extend(std::iter::repeat_n(k, spec.nv));
    }
    Ok(MetricGrid {
        spec: *spec,
        lambda,
        curvature,
        residual: None,
    })
}

/// `log sqrt(-2b^2 - K)`, or the bound violation.
fn half_log_gap(k: f64, b: f64, index: usize, u: f64) -> Result<f64> {
    let gap = -2.0 * b * b - k;
    if gap > 0.0 {
        Ok(0.5 * gap.ln())
    } else {
        Err(Error::CurvatureBound { index, u, value: gap })
    }
}

/// Evaluates `Delta log sqrt(-2b^2 - K) - 2K` with the 5-point stencil on the
/// interior of the grid, stores the field, and returns its max magnitude.
pub fn ricci_residual_grid(grid: &mut MetricGrid, b: f64, exec: Execution) -> Result<f64> {
    let spec = grid.spec;
    if spec.nu < 5 || spec.nv < 5 {
        return Err(Error::precondition(format!(
            "Ricci residual needs at least a 5 x 5 grid (got {} x {})",
            spec.nu, spec.nv
        )));
    }
    let nv = spec.nv;
    let f: Vec<f64> = grid
        .curvature
        .iter()
        .enumerate()
        .map(|(idx, &k)| half_log_gap(k, b, idx, spec.u(idx / nv)))
        .collect::<Result<_>>()?;

    let h2 = spec.h() * spec.h();
    let lambda = &grid.lambda;
    let curvature = &grid.curvature;
    let rows = exec.map(spec.nu, |i| {
        let mut row = vec![f64::NAN; nv];
        if i == 0 || i + 1 == spec.nu {
            return row;
        }
        for j in 1..nv - 1 {
            let c = i * nv + j;
            let d_uu = f[c + nv] - 2.0 * f[c] + f[c - nv];
            let d_vv = f[c + 1] - 2.0 * f[c] + f[c - 1];
            let laplacian = (d_uu + d_vv) / h2;
            row[j] = laplacian / (lambda[c] * lambda[c]) - 2.0 * curvature[c];
        }
        row
    });
    let residual: Vec<f64> = rows.into_iter().flatten().collect();
    let max = residual.iter().filter(|r| !r.is_nan()).fold(0.0_f64, |m, r| m.max(r.abs()));
    grid.residual = Some(residual);
    Ok(max)
}

/// One-dimensional Ricci residual for `lambda(u)` with curvature supplied
/// (e.g. analytically), on points `1..n-1`.
pub fn ricci_residual_1d_with_curvature(lambda: &UniformSamples, curvature: &[f64], b: f64) -> Result<UniformSamples> {
    let n = lambda.len();
    if n != curvature.len() || n < 3 {
        return Err(Error::precondition(
            "need matching lambda and curvature samples, at least three",
        ));
    }
    let f: Vec<f64> = curvature
        .iter()
        .enumerate()
        .map(|(i, &k)| half_log_gap(k, b, i, lambda.u(i)))
        .collect::<Result<_>>()?;
    let h2 = lambda.h * lambda.h;
    let values = (1..n - 1)
        .map(|i| {
            let d_uu = f[i + 1] - 2.0 * f[i] + f[i - 1];
            let l = lambda.values[i];
            d_uu / h2 / (l * l) - 2.0 * curvature[i]
        })
        .collect();
    Ok(UniformSamples {
        u0: lambda.u(1),
        h: lambda.h,
        values,
    })
}

/// `K_i = -phi''_i exp(-2 phi_i)` by central differences on points `1..n-1`.
fn curvature_from_log(phi: &UniformSamples) -> Vec<f64> {
    let h2 = phi.h * phi.h;
    let p = &phi.values;
    (1..p.len() - 1)
        .map(|i| -(p[i + 1] - 2.0 * p[i] + p[i - 1]) / h2 * (-2.0 * p[i]).exp())
        .collect()
}

fn check_1d_len(n: usize) -> Result<()> {
    if n < MIN_SAMPLES_1D {
        return Err(Error::precondition(format!(
            "one-dimensional stencils need at least {MIN_SAMPLES_1D} samples (got {n})"
        )));
    }
    Ok(())
}

/// Ricci residual for a `u`-only metric given `phi = log lambda` on a uniform
/// grid. `K` is itself obtained by central differences, so two layers are
/// trimmed on each side; the result lives on points `2..n-2`.
///
/// Fails with [`Error::CurvatureBound`] at the first interior point where
/// `-2b^2 - K <= 0`, which is a definite "not in the family" verdict.
pub fn ricci_residual_1d(phi: &UniformSamples, b: f64) -> Result<UniformSamples> {
    let n = phi.len();
    check_1d_len(n)?;
    let k = curvature_from_log(phi);
    // g[i] sits at sample i + 1.
    let g: Vec<f64> = k
        .iter()
        .enumerate()
        .map(|(i, &k)| half_log_gap(k, b, i + 1, phi.u(i + 1)))
        .collect::<Result<_>>()?;
    let h2 = phi.h * phi.h;
    let values = (1..g.len() - 1)
        .map(|i| {
            let d = g[i + 1] - 2.0 * g[i] + g[i - 1];
            d / h2 * (-2.0 * phi.values[i + 1]).exp() - 2.0 * k[i]
        })
        .collect();
    Ok(UniformSamples {
        u0: phi.u(2),
        h: phi.h,
        values,
    })
}

/// Affine fit of `F(u) = log(lambda^2 sqrt(-2b^2 - K))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizationFit {
    /// `exp(2 F(0))`, comparable with `c1` in `lambda^4 (-2b^2 - K) = c1`.
    pub c1_fit: f64,
    /// Slope of `F`; zero for the closed-form family.
    pub c2_fit: f64,
    /// Largest deviation of `F` from the fitted line.
    pub max_affine_residual: f64,
}

pub fn fit_normalization(lambda: &UniformSamples, b: f64) -> Result<NormalizationFit> {
    check_1d_len(lambda.len())?;
    let phi = lambda.map(f64::ln);
    let k = curvature_from_log(&phi);
    let mut us = Vec::with_capacity(k.len());
    let mut fs = Vec::with_capacity(k.len());
    for (i, &k) in k.iter().enumerate() {
        let u = phi.u(i + 1);
        fs.push(2.0 * phi.values[i + 1] + half_log_gap(k, b, i + 1, u)?);
        us.push(u);
    }
    let line = fit_line(&us, &fs)?;
    Ok(NormalizationFit {
        c1_fit: (2.0 * line.intercept).exp(),
        c2_fit: line.slope,
        max_affine_residual: line.max_residual,
    })
}

/// Residuals at successively halved spacings and the fitted order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStudy {
    pub spacings: Vec<f64>,
    pub residuals: Vec<f64>,
    /// Least-squares slope of `log residual` against `log h` over the levels
    /// whose residual is above [`RESIDUAL_FLOOR`].
    pub order: f64,
    /// Largest `(4 r_h - r_2h) / 3` over the interior points of the second
    /// finest grid, which the finest grid shares.
    pub extrapolated_residual: f64,
}

impl ConvergenceStudy {
    pub fn finest(&self) -> (f64, f64) {
        let i = self.spacings.len() - 1;
        (self.spacings[i], self.residuals[i])
    }

    /// [`in_family`] applied to the extrapolated residual at the finest spacing.
    pub fn in_family(&self) -> bool {
        in_family(self.extrapolated_residual, self.finest().0, self.order)
    }
}

/// Fits the convergence order from `(h, residual)` pairs.
pub fn order_from_levels(spacings: &[f64], residuals: &[f64]) -> Result<f64> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = spacings
        .iter()
        .zip(residuals)
        .filter(|(_, &r)| r >= RESIDUAL_FLOOR && r.is_finite())
        .map(|(h, r)| (h.ln(), r.ln()))
        .unzip();
    if xs.len() < 2 {
        return Err(Error::precondition(format!(
            "fewer than two refinement levels with residual above {RESIDUAL_FLOOR}"
        )));
    }
    Ok(fit_line(&xs, &ys)?.slope)
}

/// Runs [`ricci_residual_grid`] at `h, h/2, ..` (`levels` grids) and fits the
/// observed order.
pub fn convergence_order(
    factor: &dyn ConformalFactor,
    b: f64,
    base: &GridSpec,
    levels: usize,
    exec: Execution,
) -> Result<ConvergenceStudy> {
    if levels < 2 {
        return Err(Error::invalid(format!("convergence study needs at least 2 levels (got {levels})")));
    }
    let mut spec = *base;
    let mut spacings = Vec::with_capacity(levels);
    let mut residuals = Vec::with_capacity(levels);
    let mut previous: Option<MetricGrid> = None;
    let mut extrapolated = 0.0;
    for _ in 0..levels {
        let mut grid = sample_grid(factor, &spec, exec)?;
        residuals.push(ricci_residual_grid(&mut grid, b, exec)?);
        spacings.push(spec.h());
        if let Some(coarse) = &previous {
            extrapolated = extrapolate(coarse, &grid);
        }
        previous = Some(grid);
        spec = spec.refined();
    }
    let order = order_from_levels(&spacings, &residuals)?;
    Ok(ConvergenceStudy {
        spacings,
        residuals,
        order,
        extrapolated_residual: extrapolated,
    })
}

fn extrapolate(coarse: &MetricGrid, fine: &MetricGrid) -> f64 {
    let (Some(rc), Some(rf)) = (&coarse.residual, &fine.residual) else {
        return f64::NAN;
    };
    let mut m = 0.0_f64;
    for i in 1..coarse.spec.nu - 1 {
        for j in 1..coarse.spec.nv - 1 {
            let c = rc[coarse.index(i, j)];
            let f = rf[fine.index(2 * i, 2 * j)];
            m = m.max(((4.0 * f - c) / 3.0).abs());
        }
    }
    m
}

/// Membership rule: residual below `max(1e-6, 10 h^2)` and observed order
/// inside [`ORDER_BAND`]. Callers pass the Richardson-extrapolated residual.
pub fn in_family(residual: f64, h: f64, order: f64) -> bool {
    residual < residual_threshold(h) && (ORDER_BAND.0..=ORDER_BAND.1).contains(&order)
}

pub fn residual_threshold(h: f64) -> f64 {
    (10.0 * h * h).max(1e-6)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Verdict {
    InFamily,
    NotInFamily { reason: String },
    Rejected { reason: String },
}

impl Verdict {
    pub fn is_positive(&self) -> bool {
        matches!(self, Verdict::InFamily)
    }
}

/// Result of classifying sampled `lambda(u)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub b: f64,
    /// Finest first.
    pub spacings: Vec<f64>,
    /// Largest residual of each level over the interior points of the
    /// coarsest level, which every level shares.
    pub residuals: Vec<f64>,
    /// Largest Richardson-extrapolated residual `(4 r_h - r_2h) / 3` over the
    /// shared points: `O(h^4)` for a genuine solution, the defect otherwise.
    pub extrapolated_residual: Option<f64>,
    pub order: Option<f64>,
    pub fit: Option<NormalizationFit>,
}

/// Decides whether sampled `lambda(u)` belongs to the Ricci family for this
/// `b`, from the 1D residual at strides `1, 2, .., 2^(levels-1)` and the
/// normalization fit at full resolution.
///
/// All levels are compared on the same points. The membership rule of
/// [`in_family`] is applied to the extrapolated residual, since the
/// curvature enters through a second difference and the raw residual
/// carries an `O(h^2)` term scaled by `lambda^4 / c1`.
pub fn classify_samples(lambda: &UniformSamples, b: f64, levels: usize) -> Result<Classification> {
    if levels < 2 {
        return Err(Error::invalid("classification needs at least 2 levels"));
    }
    if let Some(i) = lambda.values.iter().position(|&l| !(l > 0.0 && l.is_finite())) {
        return Err(Error::invalid(format!("lambda must be positive (sample {i} = {})", lambda.values[i])));
    }
    let coarsest = 1usize << (levels - 1);
    let coarse_len = lambda.subsample(coarsest).len();
    check_1d_len(coarse_len)?;
    // Shared points, as indices into `lambda`.
    let shared: Vec<usize> = (2..coarse_len - 2).map(|j| j * coarsest).collect();

    let mut spacings = Vec::new();
    let mut fields = Vec::new();
    for level in 0..levels {
        let stride = 1usize << level;
        let sub = lambda.subsample(stride);
        match ricci_residual_1d(&sub.map(f64::ln), b) {
            Ok(r) => {
                spacings.push(sub.h);
                fields.push(shared.iter().map(|&i| r.values[i / stride - 2]).collect::<Vec<f64>>());
            }
            Err(e @ Error::CurvatureBound { .. }) => {
                let residuals = fields.iter().map(|f| max_abs(f)).collect();
                return Ok(Classification {
                    verdict: Verdict::Rejected {
                        reason: format!("K >= -2b^2: {e}"),
                    },
                    b,
                    spacings,
                    residuals,
                    extrapolated_residual: None,
                    order: None,
                    fit: None,
                });
            }
            Err(e) => return Err(e),
        }
    }
    let residuals: Vec<f64> = fields.iter().map(|f| max_abs(f)).collect();
    let extrapolated = fields[0]
        .iter()
        .zip(&fields[1])
        .fold(0.0_f64, |m, (f, c)| m.max(((4.0 * f - c) / 3.0).abs()));
    let fit = fit_normalization(lambda, b)?;
    let order = order_from_levels(&spacings, &residuals).ok();
    let h = spacings[0];
    let verdict = match order {
        Some(o) if in_family(extrapolated, h, o) => Verdict::InFamily,
        Some(o) => Verdict::NotInFamily {
            reason: format!(
                "extrapolated residual {extrapolated:.3e} (threshold {:.3e}) with observed order {o:.3}",
                residual_threshold(h)
            ),
        },
        None if residuals[0] < RESIDUAL_FLOOR => Verdict::InFamily,
        None => Verdict::NotInFamily {
            reason: "residual did not refine consistently".into(),
        },
    };
    Ok(Classification {
        verdict,
        b,
        spacings,
        residuals,
        extrapolated_residual: Some(extrapolated),
        order,
        fit: Some(fit),
    })
}

fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::{Constant, Hyperbolic};
    use crate::metric::{LiouvilleMetric, MetricParams};

    fn example() -> LiouvilleMetric {
        LiouvilleMetric::new(MetricParams::new(1.0 / 6.0_f64.sqrt(), 1.0, -11.0 / 6.0).unwrap()).unwrap()
    }

    #[test]
    fn grid_spec_validation() {
        assert!(GridSpec::new(0.0, 1.0, 0.0, 1.0, 11, 11).is_ok());
        assert!(GridSpec::new(0.0, 1.0, 0.0, 0.5, 11, 11).is_err());
        assert!(GridSpec::new(1.0, 0.0, 0.0, 1.0, 11, 11).is_err());
        assert!(GridSpec::new(0.0, 1.0, 0.0, 1.0, 1, 11).is_err());
        let g = GridSpec::with_spacing(-0.5, 0.5, 0.0, 0.04, 0.01).unwrap();
        assert_eq!((g.nu, g.nv), (101, 5));
        assert!(GridSpec::with_spacing(0.0, 0.105, 0.0, 0.04, 0.01).is_err());
        assert_eq!(g.refined().h(), 0.005);
    }

    #[test]
    fn trivial_grid_is_constant_along_v() {
        let g = GridSpec::new(-0.1, 0.1, 0.0, 0.2, 2, 2).unwrap();
        let m = sample_grid(&example(), &g, Execution::Sequential).unwrap();
        assert_eq!(m.lambda.len(), 4);
        assert_eq!(m.lambda[0], m.lambda[1]);
        assert_eq!(m.lambda[2], m.lambda[3]);
    }

    #[test]
    fn grid_outside_domain_is_rejected() {
        let metric = example();
        let u_max = metric.constants().u_max;
        let g = GridSpec::new(-0.1, u_max, 0.0, 0.1 + u_max, 11, 11).unwrap();
        assert!(matches!(
            sample_grid(&metric, &g, Execution::Sequential),
            Err(Error::OutsideDomain { .. })
        ));
    }

    #[test]
    fn small_grids_and_bound_violations() {
        let g = GridSpec::new(0.0, 0.3, 0.0, 0.3, 4, 4).unwrap();
        let mut m = sample_grid(&example(), &g, Execution::Sequential).unwrap();
        assert!(ricci_residual_grid(&mut m, 1.0 / 6.0_f64.sqrt(), Execution::Sequential).is_err());

        // flat metric violates K < -2b^2
        let g = GridSpec::new(0.0, 0.4, 0.0, 0.4, 5, 5).unwrap();
        let mut m = sample_grid(&Constant(1.0), &g, Execution::Sequential).unwrap();
        assert!(matches!(
            ricci_residual_grid(&mut m, 0.5, Execution::Sequential),
            Err(Error::CurvatureBound { .. })
        ));
    }

    #[test]
    fn hyperbolic_metric_has_constant_nonzero_residual() {
        // K = -a^2 constant, so the Laplacian term vanishes and residual = 2a^2.
        let a = 2.0;
        let g = GridSpec::with_spacing(0.5, 1.5, 0.0, 0.1, 0.02).unwrap();
        let mut m = sample_grid(&Hyperbolic { a }, &g, Execution::Sequential).unwrap();
        let r = ricci_residual_grid(&mut m, 0.5, Execution::Sequential).unwrap();
        assert!((r - 2.0 * a * a).abs() < 1e-9);
    }

    #[test]
    fn two_level_order_is_log2_ratio() {
        let o = order_from_levels(&[0.02, 0.01], &[3.2e-4, 1.0e-4]).unwrap();
        assert!((o - (3.2_f64).log2()).abs() < 1e-12);
        assert!(order_from_levels(&[0.02, 0.01], &[1e-14, 1e-4]).is_err());
    }

    #[test]
    fn flat_samples_are_rejected_by_the_1d_residual() {
        let s = UniformSamples::new(0.0, 0.1, vec![0.3; 10]).unwrap();
        assert!(matches!(ricci_residual_1d(&s, 0.5), Err(Error::CurvatureBound { index: 1, .. })));
        let short = UniformSamples::new(0.0, 0.1, vec![0.3; 6]).unwrap();
        assert!(matches!(ricci_residual_1d(&short, 0.5), Err(Error::Precondition(_))));
    }

    #[test]
    fn residual_1d_has_two_trimmed_layers() {
        let metric = example();
        let lambda = UniformSamples::conformal_factor(&metric, -0.4, 0.4, 81, Execution::Sequential).unwrap();
        let r = ricci_residual_1d(&lambda.map(f64::ln), metric.params().b()).unwrap();
        assert_eq!(r.len(), 77);
        assert!((r.u0 - lambda.u(2)).abs() < 1e-15);
        assert!(r.max_abs() < 1e-2);
    }
}
