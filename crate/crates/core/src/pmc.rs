//! The subfamily `b = 1/sqrt 6` attached to parallel mean curvature surfaces
//! in the complex hyperbolic plane of holomorphic sectional curvature `-2`.
//!
//! For `c1 in (0, 3/2)` the low branch takes `c2 = c1/6 - 2`; for `c1 > 3/2`
//! the high branch takes `c2 = 2 - c1/6`. Throughout, `rho = -3 b^2 = -1/2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::metric::{LiouvilleMetric, MetricParams};
use crate::samples::grid_point;
use crate::verify::{in_family, ricci_residual_grid, sample_grid, GridSpec};

/// `b` for the subfamily (`6 b^2 = 1`).
pub fn subfamily_b() -> f64 {
    1.0 / 6.0_f64.sqrt()
}

/// `rho = -3 b^2`, the only curvature constant admitting general-type
/// surfaces.
pub fn rho(b: f64) -> f64 {
    -3.0 * b * b
}

/// Boundary between the branches.
pub const BRANCH_SPLIT: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Low,
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubfamilyBranch {
    c1: f64,
    branch: Branch,
}

impl SubfamilyBranch {
    pub fn new(c1: f64) -> Result<Self> {
        if !(c1 > 0.0 && c1.is_finite()) {
            return Err(Error::invalid(format!("c1 must be positive (got {c1})")));
        }
        if c1 == BRANCH_SPLIT {
            return Err(Error::invalid("c1 = 3/2 separates the two branches and belongs to neither"));
        }
        let branch = if c1 < BRANCH_SPLIT { Branch::Low } else { Branch::High };
        Ok(SubfamilyBranch { c1, branch })
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn c2(&self) -> f64 {
        match self.branch {
            Branch::Low => self.c1 / 6.0 - 2.0,
            Branch::High => 2.0 - self.c1 / 6.0,
        }
    }

    pub fn params(&self) -> MetricParams {
        MetricParams::new(subfamily_b(), self.c1, self.c2()).expect("subfamily parameters are valid")
    }

    pub fn metric(&self) -> Result<LiouvilleMetric> {
        LiouvilleMetric::new(self.params())
    }
}

/// `(b, c1, c2)` of the subfamily member.
pub fn subfamily_params(s: &SubfamilyBranch) -> MetricParams {
    s.params()
}

/// `theta'^2 - (right-hand side of the amplitude equation)` with
/// `theta' = s dn(s u, k)`.
///
/// Low branch: `2 + c1/6 - (c1/6) sin^2 theta`. High branch: the general form
/// `sqrt(disc) - ((c2 + sqrt(disc)) / 2) sin^2 theta` with `c2 = 2 - c1/6`.
pub fn amplitude_equation_check(s: &SubfamilyBranch, u: f64) -> Result<f64> {
    let metric = s.metric()?;
    let theta = metric.theta(u)?;
    let dtheta = metric.theta_derivative(u)?;
    let sin2 = theta.sin().powi(2);
    let rhs = match s.branch {
        Branch::Low => {
            let p = s.c1 / 6.0;
            2.0 + p - p * sin2
        }
        Branch::High => {
            let c = metric.constants();
            c.sqrt_disc - 0.5 * (s.c2() + c.sqrt_disc) * sin2
        }
    };
    Ok(dtheta * dtheta - rhs)
}

/// Kaehler angle `alpha = arccos(-sin theta / 3)` in `(0, pi)` (low branch).
pub fn kaehler_angle(s: &SubfamilyBranch, u: f64) -> Result<f64> {
    if s.branch != Branch::Low {
        return Err(Error::precondition(
            "the Kaehler angle relation 3 cos(alpha) = -sin(theta) is defined on the low branch only",
        ));
    }
    let theta = s.metric()?.theta(u)?;
    Ok((-theta.sin() / 3.0).acos())
}

/// Norm of the second fundamental form piece `c` from the Gauss equation with
/// `rho = -3 b^2`: `|c|^2 = (-2b^2 - K) / 4`.
pub fn second_fundamental_norm(k: f64, b: f64) -> Result<f64> {
    let gap = -2.0 * b * b - k;
    if gap < 0.0 {
        return Err(Error::invalid(format!(
            "K = {k} exceeds -2b^2 = {}; the Gauss equation has no real solution",
            -2.0 * b * b
        )));
    }
    Ok((0.25 * gap).sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PmcReport {
    pub c1: f64,
    pub branch: Branch,
    pub b: f64,
    pub c2: f64,
    pub k2: f64,
    pub lambda_plus: f64,
    #[serde(rename = "H_norm")]
    pub h_norm: f64,
    #[serde(rename = "K_min")]
    pub k_min: f64,
    #[serde(rename = "K_max")]
    pub k_max: f64,
    /// `None` on the high branch, where the angle relation is not defined.
    pub alpha_min: Option<f64>,
    pub alpha_max: Option<f64>,
    pub c_norm_min: f64,
    pub c_norm_max: f64,
    pub amplitude_max_residual: f64,
    /// `None` when fewer than 5 samples make the stencil impossible.
    pub ricci_max_residual: Option<f64>,
    pub verdict: String,
}

pub const VERDICT_SATISFIED: &str = "hypotheses satisfied at sampled resolution";

/// Samples the subfamily member at `n` points of `u_interval` and aggregates
/// curvature, Kaehler angle, `|c|`, amplitude and Ricci residuals.
pub fn pmc_report(s: &SubfamilyBranch, u_interval: (f64, f64), n: usize, exec: Execution) -> Result<PmcReport> {
    let (lo, hi) = u_interval;
    if n == 0 || !(hi >= lo) {
        return Err(Error::invalid(format!("need n >= 1 and u_lo <= u_hi (n = {n}, [{lo}, {hi}])")));
    }
    if n > 1 && hi == lo {
        return Err(Error::invalid("a degenerate interval takes exactly one sample"));
    }
    let metric = s.metric()?;
    let params = *metric.params();
    let b = params.b();
    let us: Vec<f64> = if n == 1 { vec![lo] } else { (0..n).map(|i| grid_point(lo, hi, n, i)).collect() };

    let rows = exec.try_map(us.len(), |i| {
        let u = us[i];
        let k = metric.gaussian_curvature(u)?;
        let c = second_fundamental_norm(k, b)?;
        let alpha = match s.branch {
            Branch::Low => Some(kaehler_angle(s, u)?),
            Branch::High => None,
        };
        let amp = amplitude_equation_check(s, u)?;
        Ok((k, c, alpha, amp))
    })?;

    let range = |it: &mut dyn Iterator<Item = f64>| {
        it.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)))
    };
    let (k_min, k_max) = range(&mut rows.iter().map(|r| r.0));
    let (c_min, c_max) = range(&mut rows.iter().map(|r| r.1));
    let (alpha_min, alpha_max) = match s.branch {
        Branch::Low => {
            let (a, b) = range(&mut rows.iter().filter_map(|r| r.2));
            (Some(a), Some(b))
        }
        Branch::High => (None, None),
    };
    let amplitude_max_residual = rows.iter().fold(0.0_f64, |m, r| m.max(r.3.abs()));

    let bound_ok = k_max < -2.0 * b * b;
    let (ricci, ricci_ok) = if n >= 5 {
        let h = (hi - lo) / (n - 1) as f64;
        let spec = GridSpec::new(lo, hi, 0.0, 4.0 * h, n, 5)?;
        let mut grid = sample_grid(&metric, &spec, exec)?;
        let r = ricci_residual_grid(&mut grid, b, exec)?;
        // A single spacing: apply the residual threshold with the
        // second-order band assumed.
        (Some(r), in_family(r, h, 2.0))
    } else {
        (None, true)
    };
    let verdict = match (bound_ok, ricci, ricci_ok) {
        (false, _, _) => "hypotheses violated: K >= -2b^2 at a sample".to_string(),
        (true, Some(_), true) => VERDICT_SATISFIED.to_string(),
        (true, Some(r), false) => format!("hypotheses violated: Ricci residual {r:.3e} above threshold"),
        (true, None, _) => "curvature bound satisfied; Ricci residual not evaluated (fewer than 5 samples)".to_string(),
    };

    let c = metric.constants();
    Ok(PmcReport {
        c1: s.c1,
        branch: s.branch,
        b,
        c2: params.c2(),
        k2: c.k_squared,
        lambda_plus: c.lambda_plus,
        h_norm: 2.0 * b,
        k_min,
        k_max,
        alpha_min,
        alpha_max,
        c_norm_min: c_min,
        c_norm_max: c_max,
        amplitude_max_residual,
        ricci_max_residual: ricci,
        verdict,
    })
}
