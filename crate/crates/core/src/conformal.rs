//! Conformal factors `lambda(u)` of special Liouville metrics
//! `lambda(u)^2 (du^2 + dv^2)`.
//!
//! [`ConformalFactor`] is the common interface consumed by the grid
//! verification and the surface-of-revolution code. Besides the elliptic
//! family in [`crate::metric`], a few closed-form factors are provided here
//! as controls (flat, catenoid, sphere, hyperbolic) together with a
//! perturbation wrapper.

use crate::error::{Error, Result};

/// `(lambda, lambda', lambda'')` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    /// Gaussian curvature of `lambda^2 (du^2 + dv^2)`:
    /// `K = (-lambda lambda'' + lambda'^2) / lambda^4`.
    pub fn curvature(&self) -> f64 {
        let l2 = self.value * self.value;
        (-self.value * self.d2 + self.d1 * self.d1) / (l2 * l2)
    }
}

pub trait ConformalFactor: Sync {
    /// Open interval `(lo, hi)` on which the factor is defined and positive.
    fn domain(&self) -> (f64, f64);

    fn jet(&self, u: f64) -> Result<Jet>;

    fn value(&self, u: f64) -> Result<f64> {
        Ok(self.jet(u)?.value)
    }

    fn curvature(&self, u: f64) -> Result<f64> {
        Ok(self.jet(u)?.curvature())
    }

    /// Errors unless `u` lies strictly inside [`ConformalFactor::domain`].
    fn check_domain(&self, u: f64) -> Result<()> {
        let (lo, hi) = self.domain();
        if u > lo && u < hi {
            Ok(())
        } else {
            Err(Error::OutsideDomain {
                u,
                u_max: if u >= hi { hi } else { lo },
            })
        }
    }
}

impl<T: ConformalFactor + ?Sized> ConformalFactor for &T {
    fn domain(&self) -> (f64, f64) {
        (**self).domain()
    }
    fn jet(&self, u: f64) -> Result<Jet> {
        (**self).jet(u)
    }
    fn value(&self, u: f64) -> Result<f64> {
        (**self).value(u)
    }
    fn curvature(&self, u: f64) -> Result<f64> {
        (**self).curvature(u)
    }
}

/// `lambda = c`: the flat metric; the cylinder of radius `c` as a surface.
#[derive(Debug, Clone, Copy)]
pub struct Constant(pub f64);

impl ConformalFactor for Constant {
    fn domain(&self) -> (f64, f64) {
        (f64::NEG_INFINITY, f64::INFINITY)
    }
    fn jet(&self, _u: f64) -> Result<Jet> {
        Ok(Jet {
            value: self.0,
            d1: 0.0,
            d2: 0.0,
        })
    }
}

/// `lambda = cosh u`: the catenoid.
#[derive(Debug, Clone, Copy)]
pub struct Catenoid;

impl ConformalFactor for Catenoid {
    fn domain(&self) -> (f64, f64) {
        (f64::NEG_INFINITY, f64::INFINITY)
    }
    fn jet(&self, u: f64) -> Result<Jet> {
        let c = u.cosh();
        Ok(Jet {
            value: c,
            d1: u.sinh(),
            d2: c,
        })
    }
}

/// `lambda = sech u`: the unit sphere (`K = +1`).
#[derive(Debug, Clone, Copy)]
pub struct Sphere;

impl ConformalFactor for Sphere {
    fn domain(&self) -> (f64, f64) {
        (f64::NEG_INFINITY, f64::INFINITY)
    }
    fn jet(&self, u: f64) -> Result<Jet> {
        let s = 1.0 / u.cosh();
        let t = u.tanh();
        Ok(Jet {
            value: s,
            d1: -s * t,
            d2: s * (t * t - s * s),
        })
    }
    fn curvature(&self, _u: f64) -> Result<f64> {
        Ok(1.0)
    }
}

/// `lambda = 1 / (a u)` on `u > 0`: the hyperbolic metric of curvature `-a^2`.
///
/// Not a member of the Ricci family for any `b`; used as a negative control.
#[derive(Debug, Clone, Copy)]
pub struct Hyperbolic {
    pub a: f64,
}

impl ConformalFactor for Hyperbolic {
    fn domain(&self) -> (f64, f64) {
        (0.0, f64::INFINITY)
    }
    fn jet(&self, u: f64) -> Result<Jet> {
        self.check_domain(u)?;
        let value = 1.0 / (self.a * u);
        Ok(Jet {
            value,
            d1: -value / u,
            d2: 2.0 * value / (u * u),
        })
    }
    fn curvature(&self, u: f64) -> Result<f64> {
        self.check_domain(u)?;
        Ok(-self.a * self.a)
    }
}

/// `lambda(u) (1 + eps u^2)`: a smooth perturbation of another factor.
#[derive(Debug, Clone, Copy)]
pub struct Perturbed<F> {
    pub base: F,
    pub eps: f64,
}

impl<F: ConformalFactor> ConformalFactor for Perturbed<F> {
    fn domain(&self) -> (f64, f64) {
        self.base.domain()
    }
    fn jet(&self, u: f64) -> Result<Jet> {
        let j = self.base.jet(u)?;
        let g = 1.0 + self.eps * u * u;
        let g1 = 2.0 * self.eps * u;
        let g2 = 2.0 * self.eps;
        Ok(Jet {
            value: j.value * g,
            d1: j.d1 * g + j.value * g1,
            d2: j.d2 * g + 2.0 * j.d1 * g1 + j.value * g2,
        })
    }
}
