//! Surfaces of revolution `(x(u), y(u) cos v, y(u) sin v)` in Euclidean space
//! whose first fundamental form is `lambda(u)^2 (du^2 + dv^2)`.
//!
//! Forward: `y = lambda`, `x = int sqrt(lambda^2 - lambda'^2) du`, which needs
//! `lambda^2 >= lambda'^2`. Backward: from an arc-length profile `(x(s), y(s))`,
//! `u = int ds / y` and `lambda(u) = y(s(u))`.

use std::collections::HashSet;
use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::conformal::ConformalFactor;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::interp::{cumulative_integral, derivative, local_polynomial, Pchip};
use crate::metric::{LiouvilleMetric, MetricParams};
use crate::quadrature::adaptive_simpson;
use crate::samples::{grid_point, UniformSamples};

/// Tolerance on `|(x', y')| = 1` for arc-length input profiles.
pub const ARC_LENGTH_TOLERANCE: f64 = 1e-6;

const LOCAL_WIDTH: usize = 8;

/// Rounding allowance for `lambda^2 - lambda'^2` before it counts as negative.
const EMBED_ROUNDING: f64 = 1e-12;

fn embed_gap(factor: &dyn ConformalFactor, u: f64) -> Result<(f64, f64)> {
    let j = factor.jet(u)?;
    Ok((j.value * j.value - j.d1 * j.d1, j.value * j.value))
}

/// Largest interval around `u = 0`, inside `search`, on which
/// `lambda^2 >= lambda'^2`. `None` if the condition already fails at 0.
///
/// Each side is found by bisection on `lambda^2 - lambda'^2`, assuming a
/// single sign change per side.
pub fn embeddable_interval(factor: &dyn ConformalFactor, search: (f64, f64)) -> Result<Option<(f64, f64)>> {
    let (lo, hi) = search;
    if !(lo <= 0.0 && hi >= 0.0) {
        return Err(Error::invalid(format!("search range [{lo}, {hi}] must contain 0")));
    }
    if embed_gap(factor, 0.0)?.0 < 0.0 {
        return Ok(None);
    }
    let gap = |u: f64| -> Result<f64> {
        match embed_gap(factor, u) {
            Ok((g, _)) => Ok(g),
            Err(Error::OutsideDomain { .. }) => Ok(f64::NEG_INFINITY),
            Err(e) => Err(e),
        }
    };
    let edge = |end: f64| -> Result<f64> {
        if gap(end)? >= 0.0 {
            return Ok(end);
        }
        let (mut good, mut bad) = (0.0_f64, end);
        for _ in 0..200 {
            let mid = 0.5 * (good + bad);
            if mid == good || mid == bad {
                break;
            }
            if gap(mid)? >= 0.0 {
                good = mid;
            } else {
                bad = mid;
            }
        }
        Ok(good)
    };
    Ok(Some((edge(lo)?, edge(hi)?)))
}

/// [`embeddable_interval`] searched over the whole domain of a family member.
pub fn metric_embeddable_interval(metric: &LiouvilleMetric) -> Result<(f64, f64)> {
    let (lo, hi) = metric.domain();
    // lambda'(0) = 0, so the condition holds at the origin.
    Ok(embeddable_interval(metric, (lo, hi))?.expect("lambda'(0) = 0 for family members"))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    pub u: f64,
    pub x: f64,
    pub y: f64,
}

/// Plane curve `(x(u), y(u))`, `y > 0`, sampled at strictly increasing `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileCurve {
    samples: Vec<ProfileSample>,
    monotone: bool,
    source: Option<MetricParams>,
}

impl ProfileCurve {
    pub fn new(samples: Vec<ProfileSample>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::invalid("profile needs at least two samples"));
        }
        if let Some(s) = samples.iter().find(|s| !(s.y > 0.0)) {
            return Err(Error::invalid(format!("profile radius must be positive (y = {} at u = {})", s.y, s.u)));
        }
        if let Some(i) = samples.windows(2).position(|w| !(w[1].u > w[0].u)) {
            return Err(Error::invalid(format!("profile parameter must increase strictly (sample {})", i + 1)));
        }
        let monotone = samples.windows(2).all(|w| w[1].x >= w[0].x);
        Ok(ProfileCurve {
            samples,
            monotone,
            source: None,
        })
    }

    pub fn samples(&self) -> &[ProfileSample] {
        &self.samples
    }

    /// Whether `x` is nondecreasing along the curve.
    pub fn is_monotone(&self) -> bool {
        self.monotone
    }

    /// Parameters of the family metric this profile was built from, if any.
    pub fn source(&self) -> Option<&MetricParams> {
        self.source.as_ref()
    }
}

/// Forward construction for any conformal factor: `y = lambda(u)` and
/// `x = int_{lo}^{u} sqrt(lambda^2 - lambda'^2)` by adaptive Simpson at `n`
/// equispaced nodes, with total absolute tolerance `tol`.
pub fn profile_from_factor(
    factor: &dyn ConformalFactor,
    interval: (f64, f64),
    n: usize,
    tol: f64,
    exec: Execution,
) -> Result<ProfileCurve> {
    let (lo, hi) = interval;
    if n < 2 || !(hi > lo) {
        return Err(Error::invalid(format!("profile needs n >= 2 nodes on a nonempty interval (n = {n}, [{lo}, {hi}])")));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("quadrature tolerance must be positive (got {tol})")));
    }
    let integrand = |u: f64| -> Result<f64> {
        let (gap, scale) = embed_gap(factor, u)?;
        if gap < -EMBED_ROUNDING * scale.max(1.0) {
            return Err(Error::NotEmbeddable { u, value: gap });
        }
        Ok(gap.max(0.0).sqrt())
    };
    let piece_tol = tol / (n - 1) as f64;
    let pieces = exec.try_map(n - 1, |i| {
        let a = grid_point(lo, hi, n, i);
        let b = grid_point(lo, hi, n, i + 1);
        Ok(adaptive_simpson(integrand, a, b, piece_tol)?.value)
    })?;
    let ys = exec.try_map(n, |i| factor.value(grid_point(lo, hi, n, i)))?;
    let mut x = 0.0;
    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 {
            x += pieces[i - 1];
        }
        samples.push(ProfileSample {
            u: grid_point(lo, hi, n, i),
            x,
            y: ys[i],
        });
    }
    ProfileCurve::new(samples)
}

/// [`profile_from_factor`] for a family member; the interval must sit inside
/// the embeddable interval, and the profile remembers its parameters.
pub fn profile_from_metric(
    metric: &LiouvilleMetric,
    interval: (f64, f64),
    n: usize,
    tol: f64,
    exec: Execution,
) -> Result<ProfileCurve> {
    let (elo, ehi) = metric_embeddable_interval(metric)?;
    if interval.0 < elo || interval.1 > ehi {
        return Err(Error::precondition(format!(
            "profile interval [{}, {}] leaves the embeddable interval [{elo}, {ehi}]",
            interval.0, interval.1
        )));
    }
    let mut profile = profile_from_factor(metric, interval, n, tol, exec)?;
    profile.source = Some(*metric.params());
    Ok(profile)
}

/// Profile samples `(x(s), y(s))` at increasing arc length `s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcLengthProfile {
    pub s: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl ArcLengthProfile {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }
}

/// Reparametrizes the forward profile of `factor` over `interval` by arc
/// length, at `n` equispaced values of `s` starting from `s = 0`.
///
/// Uses `ds/du = lambda`: `u(s)` is found by Newton's method on the running
/// integral, then `x`, `y` are evaluated there.
pub fn arc_length_profile(
    factor: &dyn ConformalFactor,
    interval: (f64, f64),
    n: usize,
    tol: f64,
    exec: Execution,
) -> Result<ArcLengthProfile> {
    let (lo, hi) = interval;
    let nodes = n.max(2);
    // Coarse tables of s(u) and x(u) at the nodes.
    let coarse = profile_from_factor(factor, interval, nodes, tol, exec)?;
    let piece_tol = tol / nodes as f64;
    let s_pieces = exec.try_map(nodes - 1, |i| {
        let a = grid_point(lo, hi, nodes, i);
        let b = grid_point(lo, hi, nodes, i + 1);
        Ok(adaptive_simpson(|u| factor.value(u), a, b, piece_tol)?.value)
    })?;
    let mut s_nodes = vec![0.0; nodes];
    for i in 1..nodes {
        s_nodes[i] = s_nodes[i - 1] + s_pieces[i - 1];
    }
    let total = s_nodes[nodes - 1];
    let speed = |u: f64| -> Result<f64> {
        let (gap, _) = embed_gap(factor, u)?;
        Ok(gap.max(0.0).sqrt())
    };

    let points = exec.try_map(n, |k| {
        let s = grid_point(0.0, total, n, k);
        let i = match s_nodes.partition_point(|&t| t <= s) {
            0 => 0,
            p => (p - 1).min(nodes - 2),
        };
        let (a, b) = (grid_point(lo, hi, nodes, i), grid_point(lo, hi, nodes, i + 1));
        let target = s - s_nodes[i];
        // Newton with bisection safeguard on g(u) = int_a^u lambda - target.
        let (mut left, mut right) = (a, b);
        let mut u = a + (b - a) * (target / s_pieces[i]).clamp(0.0, 1.0);
        for _ in 0..60 {
            let g = adaptive_simpson(|t| factor.value(t), a, u, piece_tol)?.value - target;
            if g.abs() <= 1e-15 * total.max(1.0) {
                break;
            }
            if g > 0.0 {
                right = u;
            } else {
                left = u;
            }
            let next = u - g / factor.value(u)?;
            u = if next > left && next < right { next } else { 0.5 * (left + right) };
            if right - left <= 4.0 * f64::EPSILON * u.abs().max(1.0) {
                break;
            }
        }
        let x = coarse.samples[i].x + adaptive_simpson(speed, a, u, piece_tol)?.value;
        Ok((s, x, factor.value(u)?))
    })?;
    let mut out = ArcLengthProfile {
        s: Vec::with_capacity(n),
        x: Vec::with_capacity(n),
        y: Vec::with_capacity(n),
    };
    for (s, x, y) in points {
        out.s.push(s);
        out.x.push(x);
        out.y.push(y);
    }
    Ok(out)
}

/// Backward construction: conformal factor of the surface generated by an
/// arc-length profile, resampled on `resample_n` equispaced values of
/// `u = u_start + int ds / y`.
pub fn metric_from_profile(profile: &ArcLengthProfile, resample_n: usize, u_start: f64) -> Result<UniformSamples> {
    let n = profile.len();
    if profile.x.len() != n || profile.y.len() != n {
        return Err(Error::invalid("profile columns differ in length"));
    }
    if n < 5 {
        return Err(Error::invalid(format!("profile needs at least 5 samples (got {n})")));
    }
    if resample_n < 2 {
        return Err(Error::invalid("resample count must be at least 2"));
    }
    if let Some(i) = profile.y.iter().position(|&y| !(y > 0.0)) {
        return Err(Error::invalid(format!("profile radius must be positive (y = {} at sample {i})", profile.y[i])));
    }
    if let Some(i) = profile.s.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(Error::invalid(format!("arc length must increase strictly (sample {})", i + 1)));
    }

    let dx = derivative(&profile.s, &profile.x);
    let dy = derivative(&profile.s, &profile.y);
    let (worst, deviation) = dx
        .iter()
        .zip(&dy)
        .map(|(a, b)| (a.hypot(*b) - 1.0).abs())
        .enumerate()
        .fold((0, 0.0), |acc, (i, d)| if d > acc.1 { (i, d) } else { acc });
    if deviation > ARC_LENGTH_TOLERANCE {
        return Err(Error::ArcLength {
            index: worst,
            speed: dx[worst].hypot(dy[worst]),
        });
    }

    let inv_y: Vec<f64> = profile.y.iter().map(|y| 1.0 / y).collect();
    let u: Vec<f64> = cumulative_integral(&profile.s, &inv_y).into_iter().map(|t| u_start + t).collect();
    let s_of_u = Pchip::new(u.clone(), profile.s.clone())?;
    let (lo, hi) = (u[0], u[n - 1]);
    // The monotone interpolant brackets s(u); Newton on the local degree-7
    // interpolant of u(s) then removes its O(ds^3) ripple, which the
    // fourth-order derivatives of the Ricci residual would amplify.
    UniformSamples::from_fn(lo, hi, resample_n, Execution::Sequential, |t| {
        let k = u.partition_point(|&x| x <= t).clamp(1, n - 1) - 1;
        let (a, b) = (profile.s[k], profile.s[k + 1]);
        let mut s = s_of_u.eval(t).clamp(a, b);
        for _ in 0..20 {
            let w = local_polynomial(&profile.s, &u, s, LOCAL_WIDTH, 1);
            let next = (s - (w[0] - t) / w[1]).clamp(a, b);
            let done = (next - s).abs() <= 4.0 * f64::EPSILON * s.abs().max(b - a);
            s = next;
            if done {
                break;
            }
        }
        Ok(local_polynomial(&profile.s, &profile.y, s, LOCAL_WIDTH, 0)[0])
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeshVertex {
    pub position: [f64; 3],
    pub u: f64,
    pub v: f64,
}

/// Structured `nu x nv` tessellation of a surface of revolution.
#[derive(Debug, Clone, PartialEq)]
pub struct RevolutionMesh {
    pub vertices: Vec<MeshVertex>,
    /// Counter-clockwise seen from outside (positive-`y` side of the profile).
    pub faces: Vec<[usize; 3]>,
    pub nu: usize,
    pub nv: usize,
    /// Whether the `v` direction wraps around a full turn.
    pub closed: bool,
    pub source: Option<MetricParams>,
}

impl RevolutionMesh {
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.nv + j
    }

    pub fn edge_count(&self) -> usize {
        let mut edges = HashSet::with_capacity(3 * self.faces.len());
        for f in &self.faces {
            for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                edges.insert((a.min(b), a.max(b)));
            }
        }
        edges.len()
    }

    /// `V - E + F`: 0 for a closed tube, 1 for an open strip.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_count() as i64 + self.faces.len() as i64
    }

    pub fn face_normal(&self, f: &[usize; 3]) -> [f64; 3] {
        let p = |i: usize| self.vertices[f[i]].position;
        cross(sub(p(1), p(0)), sub(p(2), p(0)))
    }

    /// Area-weighted unit vertex normals.
    pub fn vertex_normals(&self) -> Vec<[f64; 3]> {
        let mut acc = vec![[0.0; 3]; self.vertices.len()];
        for f in &self.faces {
            let n = self.face_normal(f);
            for &i in f {
                for c in 0..3 {
                    acc[i][c] += n[c];
                }
            }
        }
        acc.into_iter()
            .map(|n| {
                let len = dot(n, n).sqrt();
                if len > 0.0 {
                    [n[0] / len, n[1] / len, n[2] / len]
                } else {
                    n
                }
            })
            .collect()
    }

    fn v_step(&self) -> f64 {
        let (v0, v1) = (self.vertices[0].v, self.vertices[1].v);
        v1 - v0
    }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Rotates the profile about the `x` axis. A `v` range of exactly `2 pi`
/// produces a closed tube with `nv` distinct columns; anything else an open
/// strip with `nv` columns including both ends.
pub fn tessellate(profile: &ProfileCurve, v_lo: f64, v_hi: f64, nv: usize) -> Result<RevolutionMesh> {
    if nv < 3 {
        return Err(Error::invalid(format!("tessellation needs nv >= 3 (got {nv})")));
    }
    if !(v_hi > v_lo) || (v_hi - v_lo) > TAU + 1e-12 {
        return Err(Error::invalid(format!("v range [{v_lo}, {v_hi}] must be nonempty and at most 2 pi")));
    }
    let closed = (v_hi - v_lo - TAU).abs() <= 1e-12;
    let vs: Vec<f64> = if closed {
        (0..nv).map(|j| v_lo + TAU * j as f64 / nv as f64).collect()
    } else {
        (0..nv).map(|j| grid_point(v_lo, v_hi, nv, j)).collect()
    };
    let nu = profile.samples.len();
    let mut vertices = Vec::with_capacity(nu * nv);
    for s in &profile.samples {
        for &v in &vs {
            let (sin, cos) = v.sin_cos();
            vertices.push(MeshVertex {
                position: [s.x, s.y * cos, s.y * sin],
                u: s.u,
                v,
            });
        }
    }
    let cols = if closed { nv } else { nv - 1 };
    let mut faces = Vec::with_capacity(2 * (nu - 1) * cols);
    for i in 0..nu - 1 {
        for j in 0..cols {
            let jn = (j + 1) % nv;
            let p00 = i * nv + j;
            let p01 = i * nv + jn;
            let p10 = (i + 1) * nv + j;
            let p11 = (i + 1) * nv + jn;
            faces.push([p00, p01, p11]);
            faces.push([p00, p11, p10]);
        }
    }
    Ok(RevolutionMesh {
        vertices,
        faces,
        nu,
        nv,
        closed,
        source: profile.source,
    })
}

/// Largest relative deviation between squared grid-edge lengths and
/// `lambda(u_mid)^2 (du^2 or dv^2)`.
pub fn induced_metric_deviation(mesh: &RevolutionMesh, factor: &dyn ConformalFactor, exec: Execution) -> Result<f64> {
    let nv = mesh.nv;
    let dv = if mesh.closed { TAU / nv as f64 } else { mesh.v_step() };
    let v_edges = if mesh.closed { nv } else { nv - 1 };
    let rows = exec.try_map(mesh.nu, |i| {
        let mut worst = 0.0_f64;
        let u = mesh.vertices[mesh.index(i, 0)].u;
        let l = factor.value(u)?;
        for j in 0..v_edges {
            let a = mesh.vertices[mesh.index(i, j)].position;
            let b = mesh.vertices[mesh.index(i, (j + 1) % nv)].position;
            let d = sub(b, a);
            let expected = l * l * dv * dv;
            worst = worst.max((dot(d, d) - expected).abs() / expected);
        }
        if i + 1 < mesh.nu {
            let u1 = mesh.vertices[mesh.index(i + 1, 0)].u;
            let lm = factor.value(0.5 * (u + u1))?;
            let du = u1 - u;
            let expected = lm * lm * du * du;
            for j in 0..nv {
                let a = mesh.vertices[mesh.index(i, j)].position;
                let b = mesh.vertices[mesh.index(i + 1, j)].position;
                let d = sub(b, a);
                worst = worst.max((dot(d, d) - expected).abs() / expected);
            }
        }
        Ok(worst)
    })?;
    Ok(rows.into_iter().fold(0.0, f64::max))
}

/// [`induced_metric_deviation`] for a mesh built from `metric`'s own profile.
pub fn induced_metric_check(mesh: &RevolutionMesh, metric: &LiouvilleMetric, exec: Execution) -> Result<f64> {
    match &mesh.source {
        Some(p) if p == metric.params() => induced_metric_deviation(mesh, metric, exec),
        Some(p) => Err(Error::Provenance(format!(
            "mesh was built from {p:?}, not {:?}",
            metric.params()
        ))),
        None => Err(Error::Provenance("mesh carries no metric parameters".into())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VertexCurvature {
    pub index: usize,
    pub u: f64,
    pub v: f64,
    /// Angle defect `2 pi - sum of incident angles`.
    pub defect: f64,
    /// Mixed Voronoi area.
    pub area: f64,
    /// `defect / area`.
    pub curvature: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngleDefects {
    pub estimates: Vec<VertexCurvature>,
    /// Interior vertices skipped because an incident triangle is degenerate.
    pub skipped: Vec<usize>,
}

impl AngleDefects {
    /// Discrete total curvature, the sum of interior angle defects.
    pub fn total_defect(&self) -> f64 {
        self.estimates.iter().map(|e| e.defect).sum()
    }
}

struct FaceGeometry {
    angles: [f64; 3],
    areas: [f64; 3],
    degenerate: bool,
}

fn face_geometry(p: [[f64; 3]; 3]) -> FaceGeometry {
    let e = [sub(p[2], p[1]), sub(p[0], p[2]), sub(p[1], p[0])];
    let len2 = [dot(e[0], e[0]), dot(e[1], e[1]), dot(e[2], e[2])];
    let n = cross(e[2], sub(p[2], p[0]));
    let twice_area = dot(n, n).sqrt();
    let area = 0.5 * twice_area;
    if !(twice_area > 1e-14 * len2.iter().fold(0.0_f64, |a, &b| a.max(b))) {
        return FaceGeometry {
            angles: [0.0; 3],
            areas: [0.0; 3],
            degenerate: true,
        };
    }
    // angle at corner c is between the two edges leaving it
    let mut angles = [0.0; 3];
    let mut cots = [0.0; 3];
    for c in 0..3 {
        let a = sub(p[(c + 1) % 3], p[c]);
        let b = sub(p[(c + 2) % 3], p[c]);
        let cosine = dot(a, b);
        angles[c] = twice_area.atan2(cosine);
        cots[c] = cosine / twice_area;
    }
    let obtuse = angles.iter().position(|&a| a > 0.5 * PI);
    let mut areas = [0.0; 3];
    for c in 0..3 {
        areas[c] = match obtuse {
            None => {
                // |e_{c+1}|^2 cot(angle c+1) + |e_{c+2}|^2 cot(angle c+2), with e_k
                // opposite corner k
                let (c1, c2) = ((c + 1) % 3, (c + 2) % 3);
                (len2[c2] * cots[c2] + len2[c1] * cots[c1]) / 8.0
            }
            Some(o) if o == c => 0.5 * area,
            Some(_) => 0.25 * area,
        };
    }
    FaceGeometry {
        angles,
        areas,
        degenerate: false,
    }
}

/// Angle-defect Gaussian curvature at every interior vertex (full triangle
/// fan), normalized by the mixed Voronoi area.
pub fn angle_defect_curvature(mesh: &RevolutionMesh, exec: Execution) -> AngleDefects {
    let geometry = exec.map(mesh.faces.len(), |f| {
        let face = mesh.faces[f];
        face_geometry([0, 1, 2].map(|c| mesh.vertices[face[c]].position))
    });
    let nvert = mesh.vertices.len();
    let mut angle_sum = vec![0.0; nvert];
    let mut area = vec![0.0; nvert];
    let mut degenerate = vec![false; nvert];
    for (face, g) in mesh.faces.iter().zip(&geometry) {
        for c in 0..3 {
            angle_sum[face[c]] += g.angles[c];
            area[face[c]] += g.areas[c];
            degenerate[face[c]] |= g.degenerate;
        }
    }

    let (j_lo, j_hi) = if mesh.closed { (0, mesh.nv) } else { (1, mesh.nv - 1) };
    let mut estimates = Vec::new();
    let mut skipped = Vec::new();
    for i in 1..mesh.nu.saturating_sub(1) {
        for j in j_lo..j_hi {
            let idx = mesh.index(i, j);
            if degenerate[idx] || area[idx] <= 0.0 {
                skipped.push(idx);
                continue;
            }
            let defect = TAU - angle_sum[idx];
            estimates.push(VertexCurvature {
                index: idx,
                u: mesh.vertices[idx].u,
                v: mesh.vertices[idx].v,
                defect,
                area: area[idx],
                curvature: defect / area[idx],
            });
        }
    }
    AngleDefects { estimates, skipped }
}

/// `int int K dA = v_width * int_{u_lo}^{u_hi} K lambda^2 du`.
pub fn total_curvature(factor: &dyn ConformalFactor, u_range: (f64, f64), v_width: f64, tol: f64) -> Result<f64> {
    let q = adaptive_simpson(
        |u| {
            let l = factor.value(u)?;
            Ok(factor.curvature(u)? * l * l)
        },
        u_range.0,
        u_range.1,
        tol,
    )?;
    Ok(v_width * q.value)
}
