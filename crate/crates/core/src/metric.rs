//! The two-parameter family of special Liouville metrics
//! `lambda(u)^2 (du^2 + dv^2)` whose curvature satisfies
//! `Delta log sqrt(-2b^2 - K) = 2K`.
//!
//! For parameters `(b, c1, c2)` the conformal factor solves
//!
//! ```text
//! lambda'^2 = -c1 + c2 lambda^2 + 2 b^2 lambda^4
//! ```
//!
//! and is given in closed form by `lambda(u) = sqrt(lambda_+) / cn(s u, k)`
//! with
//!
//! ```text
//! disc     = c2^2 + 8 b^2 c1
//! s        = disc^(1/4)
//! k^2      = (c2 + sqrt disc) / (2 sqrt disc)
//! lambda_+ = (-c2 + sqrt disc) / (4 b^2)
//! ```
//!
//! The metric lives on `|u| < u_max = K(k) / s`, the interval between the two
//! zeros of `cn` around the minimum of `lambda` at `u = 0`.

use serde::{Deserialize, Serialize};

use crate::conformal::{ConformalFactor, Jet};
use crate::elliptic::{complete_elliptic_k, jacobi_am, jacobi_sn_cn_dn, Modulus};
use crate::error::{Error, Result};

/// Default guard band kept between sample points and the poles at `+-u_max`.
pub const DEFAULT_DOMAIN_MARGIN: f64 = 1e-9;

/// `(b, c1, c2)`: half the mean curvature norm and the two integration
/// constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricParams {
    b: f64,
    c1: f64,
    c2: f64,
}

impl MetricParams {
    pub fn new(b: f64, c1: f64, c2: f64) -> Result<Self> {
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::invalid(format!("b must be positive (got {b})")));
        }
        if !(c1 > 0.0 && c1.is_finite()) {
            return Err(Error::invalid(format!("c1 must be positive (got {c1})")));
        }
        if !c2.is_finite() {
            return Err(Error::invalid(format!("c2 must be finite (got {c2})")));
        }
        Ok(MetricParams { b, c1, c2 })
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    /// `-c1 + c2 t + 2 b^2 t^2`, the right-hand side of the first-order
    /// equation as a polynomial in `t = lambda^2`.
    pub fn quartic_rhs(&self, t: f64) -> f64 {
        -self.c1 + self.c2 * t + 2.0 * self.b * self.b * t * t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedConstants {
    /// `c2^2 + 8 b^2 c1`.
    pub disc: f64,
    pub sqrt_disc: f64,
    /// Argument scaling `disc^(1/4)`.
    pub s: f64,
    #[serde(rename = "k")]
    pub modulus: Modulus,
    #[serde(rename = "k2")]
    pub k_squared: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// `K(k)`.
    pub quarter_period: f64,
    /// Half-width of the maximal domain, `K(k) / s`.
    pub u_max: f64,
}

/// Computes the constants of the closed-form solution.
///
/// Both roots and both `k^2`, `1 - k^2` are evaluated in cancellation-free
/// form, whatever the sign of `c2`.
pub fn derive_constants(p: &MetricParams) -> Result<DerivedConstants> {
    let b2 = p.b * p.b;
    let prod = 8.0 * b2 * p.c1;
    let disc = p.c2 * p.c2 + prod;
    let sqrt_disc = disc.sqrt();
    let s = sqrt_disc.sqrt();

    // c2 + sqrt(disc) and sqrt(disc) - c2, one of which cancels.
    let (plus, minus) = if p.c2 >= 0.0 {
        let plus = p.c2 + sqrt_disc;
        (plus, prod / plus)
    } else {
        let minus = sqrt_disc - p.c2;
        (prod / minus, minus)
    };
    let k_squared = plus / (2.0 * sqrt_disc);
    let modulus = Modulus::from_parameters(k_squared, minus / (2.0 * sqrt_disc))?;
    let lambda_plus = minus / (4.0 * b2);
    let lambda_minus = -plus / (4.0 * b2);

    if !(lambda_plus > 0.0 && lambda_minus < 0.0 && k_squared > 0.0 && k_squared < 1.0) {
        return Err(Error::invalid(format!(
            "degenerate constants for {p:?}: lambda+ = {lambda_plus}, lambda- = {lambda_minus}, k^2 = {k_squared}"
        )));
    }

    let quarter_period = complete_elliptic_k(modulus)?;
    Ok(DerivedConstants {
        disc,
        sqrt_disc,
        s,
        modulus,
        k_squared,
        lambda_plus,
        lambda_minus,
        quarter_period,
        u_max: quarter_period / s,
    })
}

/// One member of the family, with its derived constants cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiouvilleMetric {
    params: MetricParams,
    constants: DerivedConstants,
    margin: f64,
}

impl LiouvilleMetric {
    pub fn new(params: MetricParams) -> Result<Self> {
        Ok(LiouvilleMetric {
            params,
            constants: derive_constants(&params)?,
            margin: DEFAULT_DOMAIN_MARGIN,
        })
    }

    /// Overrides the guard band kept away from `+-u_max`.
    pub fn with_margin(mut self, margin: f64) -> Result<Self> {
        if !(margin >= 0.0 && margin < self.constants.u_max) {
            return Err(Error::invalid(format!(
                "domain margin {margin} must lie in [0, u_max = {})",
                self.constants.u_max
            )));
        }
        self.margin = margin;
        Ok(self)
    }

    pub fn params(&self) -> &MetricParams {
        &self.params
    }

    pub fn constants(&self) -> &DerivedConstants {
        &self.constants
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    /// `u_max - margin`: the largest `|u|` accepted by the evaluators.
    pub fn usable_half_width(&self) -> f64 {
        self.constants.u_max - self.margin
    }

    fn guard(&self, u: f64) -> Result<()> {
        if u.abs() < self.usable_half_width() {
            Ok(())
        } else {
            Err(Error::OutsideDomain {
                u,
                u_max: self.constants.u_max,
            })
        }
    }

    fn jacobi(&self, u: f64) -> Result<crate::elliptic::JacobiTriple> {
        self.guard(u)?;
        jacobi_sn_cn_dn(self.constants.s * u, self.constants.modulus)
    }

    /// `lambda(u) = sqrt(lambda_+) / cn(s u, k)`.
    pub fn conformal_factor(&self, u: f64) -> Result<f64> {
        let t = self.jacobi(u)?;
        Ok(self.constants.lambda_plus.sqrt() / t.cn)
    }

    /// `(lambda, lambda', lambda'')`. The second derivative comes from the
    /// differentiated first-order equation, `lambda'' = c2 lambda + 4 b^2 lambda^3`.
    pub fn conformal_factor_derivatives(&self, u: f64) -> Result<Jet> {
        let t = self.jacobi(u)?;
        let root = self.constants.lambda_plus.sqrt();
        let value = root / t.cn;
        let d1 = root * self.constants.s * t.sn * t.dn / (t.cn * t.cn);
        let b2 = self.params.b * self.params.b;
        let d2 = self.params.c2 * value + 4.0 * b2 * value * value * value;
        Ok(Jet { value, d1, d2 })
    }

    /// `K(u) = -2 b^2 - c1 / lambda(u)^4`.
    pub fn gaussian_curvature(&self, u: f64) -> Result<f64> {
        let l = self.conformal_factor(u)?;
        let l2 = l * l;
        Ok(-2.0 * self.params.b * self.params.b - self.params.c1 / (l2 * l2))
    }

    /// `theta(u) = am(s u, k)`, so that `cos theta = sqrt(lambda_+) / lambda`.
    pub fn theta(&self, u: f64) -> Result<f64> {
        self.guard(u)?;
        jacobi_am(self.constants.s * u, self.constants.modulus)
    }

    /// `theta'(u) = s dn(s u, k)`.
    pub fn theta_derivative(&self, u: f64) -> Result<f64> {
        Ok(self.constants.s * self.jacobi(u)?.dn)
    }

    /// `lambda'^2 - (-c1 + c2 lambda^2 + 2 b^2 lambda^4)` with the analytic
    /// `lambda`, `lambda'`.
    pub fn ode_residual(&self, u: f64) -> Result<f64> {
        let j = self.conformal_factor_derivatives(u)?;
        Ok(j.d1 * j.d1 - self.params.quartic_rhs(j.value * j.value))
    }
}

impl ConformalFactor for LiouvilleMetric {
    fn domain(&self) -> (f64, f64) {
        let h = self.usable_half_width();
        (-h, h)
    }

    fn jet(&self, u: f64) -> Result<Jet> {
        self.conformal_factor_derivatives(u)
    }

    fn value(&self, u: f64) -> Result<f64> {
        self.conformal_factor(u)
    }

    fn curvature(&self, u: f64) -> Result<f64> {
        self.gaussian_curvature(u)
    }
}
