//! Brute-force reference computations for the test suites.
//!
//! Nothing here shares code with the library: ODEs are integrated with an
//! adaptive Dormand–Prince 5(4) pair and integrals by Romberg extrapolation.
//! They are slow and generic on purpose.

/// Right-hand side `y' = f(t, y)`.
pub trait Rhs: Fn(f64, &[f64]) -> Vec<f64> {}
impl<F: Fn(f64, &[f64]) -> Vec<f64>> Rhs for F {}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrates from `t0` to each of `outputs` (all on the same side of `t0`,
/// sorted away from it), returning the state at each.
fn integrate_one_side(f: &impl Rhs, t0: f64, y0: &[f64], outputs: &[f64], rtol: f64, atol: f64) -> Vec<Vec<f64>> {
    let n = y0.len();
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut out = Vec::with_capacity(outputs.len());
    let span = outputs.iter().fold(0.0_f64, |m, &x| m.max((x - t0).abs()));
    let mut h = (span * 1e-3).max(1e-6);
    for &target in outputs {
        let dir = if target >= t { 1.0 } else { -1.0 };
        while (target - t).abs() > 1e-15 * t.abs().max(1.0) {
            let step = h.min((target - t).abs()) * dir;
            let mut k: Vec<Vec<f64>> = Vec::with_capacity(7);
            for s in 0..7 {
                let ys: Vec<f64> = (0..n)
                    .map(|i| y[i] + step * (0..s).map(|j| A[s][j] * k[j][i]).sum::<f64>())
                    .collect();
                k.push(f(t + C[s] * step, &ys));
            }
            // The seventh stage is evaluated at the 5th-order solution.
            let y5: Vec<f64> = (0..n).map(|i| y[i] + step * (0..6).map(|j| A[6][j] * k[j][i]).sum::<f64>()).collect();
            let y4: Vec<f64> = (0..n).map(|i| y[i] + step * (0..7).map(|j| B4[j] * k[j][i]).sum::<f64>()).collect();
            let err = ((0..n)
                .map(|i| {
                    let scale = atol + rtol * y[i].abs().max(y5[i].abs());
                    ((y5[i] - y4[i]) / scale).powi(2)
                })
                .sum::<f64>()
                / n as f64)
                .sqrt();
            if err <= 1.0 {
                t += step;
                y = y5;
            }
            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            h = step.abs() * factor;
            assert!(h > 1e-14, "oracle step size underflow at t = {t}");
        }
        t = target;
        out.push(y.clone());
    }
    out
}

/// States at every `ts` (any order, either side of `t0`) of the solution of
/// `y' = f(t, y)`, `y(t0) = y0`.
pub fn solve(f: impl Rhs, t0: f64, y0: &[f64], ts: &[f64], rtol: f64, atol: f64) -> Vec<Vec<f64>> {
    let mut order: Vec<usize> = (0..ts.len()).collect();
    order.sort_by(|&a, &b| ts[a].partial_cmp(&ts[b]).unwrap());
    let (below, above): (Vec<usize>, Vec<usize>) = order.into_iter().partition(|&i| ts[i] < t0);
    let mut result = vec![Vec::new(); ts.len()];
    let up: Vec<f64> = above.iter().map(|&i| ts[i]).collect();
    for (i, y) in above.iter().zip(integrate_one_side(&f, t0, y0, &up, rtol, atol)) {
        result[*i] = y;
    }
    let down: Vec<f64> = below.iter().rev().map(|&i| ts[i]).collect();
    for (i, y) in below.iter().rev().zip(integrate_one_side(&f, t0, y0, &down, rtol, atol)) {
        result[*i] = y;
    }
    result
}

/// Romberg integration of `f` over `[a, b]` to relative tolerance `tol`.
pub fn romberg(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let mut rows: Vec<Vec<f64>> = vec![vec![0.5 * (b - a) * (f(a) + f(b))]];
    for level in 1..=24 {
        let n = 1usize << (level - 1);
        let h = (b - a) / n as f64;
        let mid: f64 = (0..n).map(|i| f(a + (i as f64 + 0.5) * h)).sum();
        let mut row = vec![0.5 * (rows[level - 1][0] + h * mid)];
        for j in 1..=level {
            let p = 4.0_f64.powi(j as i32);
            row.push((p * row[j - 1] - rows[level - 1][j - 1]) / (p - 1.0));
        }
        let best = row[level];
        let prev = rows[level - 1][level - 1];
        rows.push(row);
        if level > 4 && (best - prev).abs() <= tol * best.abs().max(1e-300) {
            return best;
        }
    }
    rows.last().unwrap().last().copied().unwrap()
}

/// Incomplete elliptic integral of the first kind, `F(phi, k)`, by quadrature.
pub fn incomplete_f(phi: f64, k: f64) -> f64 {
    romberg(|t| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, phi, 1e-15)
}

/// `(sn, cn, dn)(u, k)` from the defining ODE system.
pub fn jacobi_by_ode(us: &[f64], k: f64) -> Vec<[f64; 3]> {
    let m = k * k;
    solve(
        |_, y: &[f64]| vec![y[1] * y[2], -y[0] * y[2], -m * y[0] * y[1]],
        0.0,
        &[0.0, 1.0, 1.0],
        us,
        1e-13,
        1e-15,
    )
    .into_iter()
    .map(|y| [y[0], y[1], y[2]])
    .collect()
}

/// Positive root `lambda_+` of `2 b^2 t^2 + c2 t - c1 = 0` (as `t = lambda^2`).
pub fn lambda_plus(b: f64, c1: f64, c2: f64) -> f64 {
    let a = 2.0 * b * b;
    let disc = (c2 * c2 + 4.0 * a * c1).sqrt();
    if c2 > 0.0 {
        2.0 * c1 / (c2 + disc)
    } else {
        (disc - c2) / (2.0 * a)
    }
}

/// `(lambda, lambda')` at each `u` from `lambda'' = c2 lambda + 4 b^2 lambda^3`,
/// the derivative of `lambda'^2 = -c1 + c2 lambda^2 + 2 b^2 lambda^4`, started
/// at its turning point `lambda(0) = sqrt(lambda_+)`, `lambda'(0) = 0`.
pub fn lambda_by_ode(b: f64, c1: f64, c2: f64, us: &[f64]) -> Vec<[f64; 2]> {
    let y0 = [lambda_plus(b, c1, c2).sqrt(), 0.0];
    let q = 4.0 * b * b;
    solve(move |_, y: &[f64]| vec![y[1], c2 * y[0] + q * y[0].powi(3)], 0.0, &y0, us, 1e-13, 1e-15)
        .into_iter()
        .map(|y| [y[0], y[1]])
        .collect()
}

/// The Ricci condition for `lambda = e^phi` written as a fourth-order ODE.
///
/// With `E = e^{-2 phi}` and `q = phi'' E - 2b^2 = -2b^2 - K`, the condition
/// `(1/2 log q)'' E = 2K` is `q'' = q'^2 / q - 4 phi'' q`, solved for `phi''''`.
pub fn ricci_fourth_order(b: f64) -> impl Fn(f64, &[f64]) -> Vec<f64> {
    move |_, y: &[f64]| {
        let (p1, p2, p3) = (y[1], y[2], y[3]);
        let e = (-2.0 * y[0]).exp();
        let q = p2 * e - 2.0 * b * b;
        let dq = e * (p3 - 2.0 * p1 * p2);
        let ddq = dq * dq / q - 4.0 * p2 * q;
        let p4 = ddq / e + 4.0 * p1 * p3 + 2.0 * p2 * p2 - 4.0 * p1 * p1 * p2;
        vec![p1, p2, p3, p4]
    }
}

/// `phi` at each `u` for the fourth-order Ricci ODE with initial data
/// `(phi, phi', phi'', phi''')(0)`.
pub fn ricci_solution(b: f64, initial: [f64; 4], us: &[f64]) -> Vec<f64> {
    solve(ricci_fourth_order(b), 0.0, &initial, us, 1e-13, 1e-15)
        .into_iter()
        .map(|y| y[0])
        .collect()
}

/// Slope of `F = 2 phi + 1/2 log(-2b^2 - K)` at 0 for the given initial data.
pub fn ricci_initial_slope(b: f64, initial: [f64; 4]) -> f64 {
    let [p0, p1, p2, p3] = initial;
    let e = (-2.0 * p0).exp();
    let q = p2 * e - 2.0 * b * b;
    let dq = e * (p3 - 2.0 * p1 * p2);
    2.0 * p1 + 0.5 * dq / q
}

/// Uniform grid of `n` points spanning `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}
