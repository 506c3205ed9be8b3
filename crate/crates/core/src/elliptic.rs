//! Complete elliptic integral of the first kind and the Jacobi elliptic
//! functions `am`, `sn`, `cn`, `dn`.
//!
//! All functions take the modulus `k`, never the parameter `m = k^2`. Where a
//! formula needs `m` it is computed internally from `k`, and the complementary
//! modulus `k' = sqrt(1 - k^2)` is carried alongside `k` so that it stays
//! accurate when `k` is close to 1.
//!
//! * `K(k)` uses the arithmetic-geometric mean, `K = pi / (2 AGM(1, k'))`.
//! * `am(u, k)` uses the AGM backward recurrence (Abramowitz & Stegun 16.4).
//! * `sn`, `cn`, `dn` use the descending Landen (Gauss) transformation
//!   (A&S 16.12), so `cn` keeps full relative precision near its zeros.
//! * `k = 1` is handled by the hyperbolic closed forms.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Iteration cap for the AGM and Landen recurrences.
pub const MAX_ITERATIONS: usize = 64;

/// AGM stopping threshold: successive means closer than 4 ulp (relative).
const AGM_TOLERANCE: f64 = 4.0 * f64::EPSILON;

/// Jacobi modulus `k` in `[0, 1]`, together with its complement `k'`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Modulus {
    k: f64,
    kc: f64,
}

impl Modulus {
    pub fn new(k: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k) {
            return Err(Error::invalid(format!("modulus k = {k} is outside [0, 1]")));
        }
        let kc = ((1.0 - k) * (1.0 + k)).sqrt();
        Ok(Modulus { k, kc })
    }

    /// Builds the modulus from `m = k^2` and `m1 = 1 - k^2` supplied
    /// separately, for callers that have a cancellation-free expression for
    /// both.
    pub fn from_parameters(m: f64, m1: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&m) || !(0.0..=1.0).contains(&m1) {
            return Err(Error::invalid(format!(
                "parameter pair (m, 1 - m) = ({m}, {m1}) is outside [0, 1]"
            )));
        }
        if ((m + m1) - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!(
                "m = {m} and 1 - m = {m1} do not sum to 1"
            )));
        }
        Ok(Modulus {
            k: m.sqrt(),
            kc: m1.sqrt(),
        })
    }

    #[inline]
    pub fn k(self) -> f64 {
        self.k
    }

    /// The complementary modulus `k' = sqrt(1 - k^2)`.
    #[inline]
    pub fn complementary(self) -> f64 {
        self.kc
    }

    /// The parameter `m = k^2`.
    #[inline]
    pub fn m(self) -> f64 {
        self.k * self.k
    }

    fn is_one(self) -> bool {
        self.kc == 0.0
    }
}

impl TryFrom<f64> for Modulus {
    type Error = Error;

    fn try_from(k: f64) -> Result<Self> {
        Modulus::new(k)
    }
}

impl From<Modulus> for f64 {
    fn from(m: Modulus) -> f64 {
        m.k
    }
}

/// `(sn, cn, dn)` evaluated at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

/// Arithmetic-geometric mean of `a` and `b` (both nonnegative).
pub fn agm(mut a: f64, mut b: f64) -> Result<f64> {
    for _ in 0..MAX_ITERATIONS {
        if (a - b).abs() <= AGM_TOLERANCE * a {
            return Ok(0.5 * (a + b));
        }
        let mean = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = mean;
    }
    Err(Error::NoConvergence {
        what: "arithmetic-geometric mean",
        iterations: MAX_ITERATIONS,
    })
}

/// Quarter period `K(k) = int_0^{pi/2} dtheta / sqrt(1 - k^2 sin^2 theta)`.
///
/// Rejects `k = 1`, where the integral diverges.
pub fn complete_elliptic_k(k: Modulus) -> Result<f64> {
    if k.is_one() {
        return Err(Error::invalid(
            "complete elliptic integral K(k) diverges at k = 1",
        ));
    }
    if k.k == 0.0 {
        return Ok(FRAC_PI_2);
    }
    Ok(FRAC_PI_2 / agm(1.0, k.kc)?)
}

/// Jacobi amplitude `am(u, k)`.
pub fn jacobi_am(u: f64, k: Modulus) -> Result<f64> {
    if k.k == 0.0 {
        return Ok(u);
    }
    if k.is_one() {
        // Gudermannian.
        return Ok(u.sinh().atan());
    }

    // Forward AGM sweep, remembering c_n / a_n.
    let mut ratios = [0.0_f64; MAX_ITERATIONS];
    let mut a = 1.0_f64;
    let mut b = k.kc;
    let mut n = 0;
    loop {
        if (a - b).abs() <= AGM_TOLERANCE * a {
            break;
        }
        if n == MAX_ITERATIONS {
            return Err(Error::NoConvergence {
                what: "Jacobi amplitude AGM",
                iterations: MAX_ITERATIONS,
            });
        }
        let c = 0.5 * (a - b);
        let mean = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = mean;
        ratios[n] = c / a;
        n += 1;
    }

    // phi_N = 2^N a_N u, then phi_{n-1} = (phi_n + asin((c_n/a_n) sin phi_n)) / 2.
    let mut phi = (n as f64).exp2() * a * u;
    for &r in ratios[..n].iter().rev() {
        phi = 0.5 * (phi + (r * phi.sin()).asin());
    }
    Ok(phi)
}

/// Jacobi `sn`, `cn`, `dn` by the descending Landen transformation.
pub fn jacobi_sn_cn_dn(u: f64, k: Modulus) -> Result<JacobiTriple> {
    if k.k == 0.0 {
        let (sn, cn) = u.sin_cos();
        return Ok(JacobiTriple { sn, cn, dn: 1.0 });
    }
    if k.is_one() {
        let sech = 1.0 / u.cosh();
        return Ok(JacobiTriple {
            sn: u.tanh(),
            cn: sech,
            dn: sech,
        });
    }

    // Descend: m -> mu = ((1 - k')/(1 + k'))^2, u -> u / (1 + sqrt(mu)),
    // carrying both m and 1 - m in cancellation-free form.
    let mut roots = [0.0_f64; MAX_ITERATIONS];
    let mut m = k.m();
    let mut kc = k.kc;
    let mut v = u;
    let mut n = 0;
    while m > f64::EPSILON {
        if n == MAX_ITERATIONS {
            return Err(Error::NoConvergence {
                what: "descending Landen transformation",
                iterations: MAX_ITERATIONS,
            });
        }
        let one_plus = 1.0 + kc;
        let root_mu = m / (one_plus * one_plus);
        roots[n] = root_mu;
        n += 1;
        v /= 1.0 + root_mu;
        m = root_mu * root_mu;
        kc = 2.0 * kc.sqrt() / one_plus;
    }

    // Small-parameter expansions (A&S 16.13), first order in m.
    let (s, c) = v.sin_cos();
    let t = 0.25 * m * (v - s * c);
    let mut sn = s - t * c;
    let mut cn = c + t * s;
    let mut dn = 1.0 - 0.5 * m * s * s;

    for &r in roots[..n].iter().rev() {
        let rs2 = r * sn * sn;
        let denom = 1.0 + rs2;
        let next_sn = (1.0 + r) * sn / denom;
        let next_cn = cn * dn / denom;
        let next_dn = (1.0 - rs2) / denom;
        sn = next_sn;
        cn = next_cn;
        dn = next_dn;
    }
    Ok(JacobiTriple { sn, cn, dn })
}
