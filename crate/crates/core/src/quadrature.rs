//! Adaptive Simpson quadrature with Richardson correction.
//!
//! Subdivision is driven by an absolute tolerance, which matters for
//! integrands like `sqrt(lambda^2 - lambda'^2)` that have a square-root zero at
//! an endpoint: the bisection concentrates there on its own.

use crate::error::{Error, Result};

/// Maximum number of accepted subintervals (2^20).
pub const MAX_SUBINTERVALS: usize = 1 << 20;

/// Recursion depth beyond which intervals are accepted as-is.
const MAX_DEPTH: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Sum of the local `|S2 - S1| / 15` estimates.
    pub error_estimate: f64,
    pub subintervals: usize,
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<Quadrature>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("quadrature tolerance must be positive (got {tol})")));
    }
    if a > b {
        let q = adaptive_simpson(f, b, a, tol)?;
        return Ok(Quadrature { value: -q.value, ..q });
    }
    if a == b {
        return Ok(Quadrature {
            value: 0.0,
            error_estimate: 0.0,
            subintervals: 0,
        });
    }
    let fa = f(a)?;
    let fb = f(b)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let mut stack = vec![Panel {
        a,
        b,
        fa,
        fm,
        fb,
        whole: (b - a) / 6.0 * (fa + 4.0 * fm + fb),
        tol,
        depth: 0,
    }];

    let mut value = 0.0;
    let mut error_estimate = 0.0;
    let mut accepted = 0usize;
    while let Some(p) = stack.pop() {
        let m = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + m);
        let rm = 0.5 * (m + p.b);
        let flm = f(lm)?;
        let frm = f(rm)?;
        let left = (m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
        let right = (p.b - m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
        let delta = left + right - p.whole;
        if delta.abs() <= 15.0 * p.tol || p.depth >= MAX_DEPTH || m <= p.a || m >= p.b {
            value += left + right + delta / 15.0;
            error_estimate += delta.abs() / 15.0;
            accepted += 1;
            continue;
        }
        if accepted + stack.len() + 2 > MAX_SUBINTERVALS {
            return Err(Error::NoConvergence {
                what: "adaptive Simpson quadrature",
                iterations: MAX_SUBINTERVALS,
            });
        }
        // Right first so the left half is processed first; the summation
        // order is then left to right.
        stack.push(Panel {
            a: m,
            b: p.b,
            fa: p.fm,
            fm: frm,
            fb: p.fb,
            whole: right,
            tol: 0.5 * p.tol,
            depth: p.depth + 1,
        });
        stack.push(Panel {
            a: p.a,
            b: m,
            fa: p.fa,
            fm: flm,
            fb: p.fm,
            whole: left,
            tol: 0.5 * p.tol,
            depth: p.depth + 1,
        });
    }
    Ok(Quadrature {
        value,
        error_estimate,
        subintervals: accepted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomials_are_exact() {
        let q = adaptive_simpson(|x| Ok(x * x * x - 2.0 * x), -1.0, 2.0, 1e-12).unwrap();
        assert!((q.value - (4.0 - 0.25 - (4.0 - 1.0))).abs() < 1e-13);
    }

    #[test]
    fn square_root_endpoint() {
        // int_0^1 sqrt(1 - x) dx = 2/3
        let q = adaptive_simpson(|x| Ok((1.0 - x).max(0.0).sqrt()), 0.0, 1.0, 1e-12).unwrap();
        assert!((q.value - 2.0 / 3.0).abs() < 1e-11, "{}", q.value);
        assert!(q.subintervals > 10);
        // quarter circle
        let q = adaptive_simpson(|x| Ok((1.0 - x * x).max(0.0).sqrt()), 0.0, 1.0, 1e-12).unwrap();
        assert!((q.value - PI / 4.0).abs() < 1e-11);
    }

    #[test]
    fn reversed_and_empty_intervals() {
        let q = adaptive_simpson(|x| Ok(x.cos()), 1.0, 0.0, 1e-12).unwrap();
        assert!((q.value + 1.0_f64.sin()).abs() < 1e-12);
        assert_eq!(adaptive_simpson(Ok, 2.0, 2.0, 1e-9).unwrap().value, 0.0);
        assert!(adaptive_simpson(Ok, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn errors_propagate() {
        let r = adaptive_simpson(
            |x| {
                if x > 0.5 {
                    Err(Error::precondition("boom"))
                } else {
                    Ok(x)
                }
            },
            0.0,
            1.0,
            1e-9,
        );
        assert!(r.is_err());
    }
}
