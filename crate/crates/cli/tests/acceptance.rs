//! Acceptance suite: one line per criterion, then a single verdict.

use std::f64::consts::{PI, TAU};
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use oracles::{lambda_by_ode, linspace, ricci_initial_slope, ricci_solution};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use ricci_liouville::conformal::Perturbed;
use ricci_liouville::elliptic::{jacobi_sn_cn_dn, Modulus};
use ricci_liouville::pmc::{amplitude_equation_check, second_fundamental_norm, subfamily_b, SubfamilyBranch};
use ricci_liouville::revolution::{
    angle_defect_curvature, arc_length_profile, metric_from_profile, profile_from_metric, tessellate, total_curvature,
    ArcLengthProfile,
};
use ricci_liouville::sweep::{triples, SweepGrid};
use ricci_liouville::verify::{convergence_order, fit_normalization};
use ricci_liouville::{derive_constants, Execution, LiouvilleMetric, MetricParams, UniformSamples};

const BIN: &str = env!("CARGO_BIN_EXE_ricci-liouville");
const EXEC: Execution = Execution::Parallel;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn sweep_params() -> Vec<MetricParams> {
    triples(&[subfamily_b(), 0.5, 1.0], &[0.25, 1.0, 4.0], &[-2.0, 0.0, 3.0])
        .into_iter()
        .map(|(b, c1, c2)| MetricParams::new(b, c1, c2).unwrap())
        .collect()
}

fn example() -> LiouvilleMetric {
    LiouvilleMetric::new(MetricParams::new(subfamily_b(), 1.0, -11.0 / 6.0).unwrap()).unwrap()
}

fn elliptic_identities() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let start = Instant::now();
    let mut worst = 0.0_f64;
    for _ in 0..10_000 {
        let u = rng.random_range(-50.0..50.0);
        let k = rng.random_range(0.0..=1.0);
        let t = jacobi_sn_cn_dn(u, Modulus::new(k).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        worst = worst
            .max((t.sn * t.sn + t.cn * t.cn - 1.0).abs())
            .max((t.dn * t.dn + k * k * t.sn * t.sn - 1.0).abs());
    }
    let elapsed = start.elapsed();
    check(
        worst < 1e-12 && elapsed < Duration::from_secs(1),
        format!("max identity defect {worst:.2e} over 10^4 pairs in {elapsed:.2?}"),
    )
}

fn closed_form_vs_ode() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    for p in sweep_params() {
        let metric = LiouvilleMetric::new(p).map_err(|e| e.to_string())?;
        let w = 0.95 * metric.constants().u_max;
        let us = linspace(-w, w, 201);
        for (u, r) in us.iter().zip(lambda_by_ode(p.b(), p.c1(), p.c2(), &us)) {
            let l = metric.conformal_factor(*u).map_err(|e| e.to_string())?;
            worst = worst.max((l - r[0]).abs() / r[0]);
        }
    }
    let elapsed = start.elapsed();
    check(
        worst < 1e-8 && elapsed < Duration::from_secs(10),
        format!("max relative deviation {worst:.2e} on 27 triples over 95% of the domain in {elapsed:.2?}"),
    )
}

fn first_integral() -> Outcome {
    let mut worst = 0.0_f64;
    for p in sweep_params() {
        let metric = LiouvilleMetric::new(p).map_err(|e| e.to_string())?;
        let w = 0.95 * metric.constants().u_max;
        for u in linspace(-w, w, 101) {
            let l = metric.conformal_factor(u).map_err(|e| e.to_string())?;
            let k = metric.gaussian_curvature(u).map_err(|e| e.to_string())?;
            let c1 = l.powi(4) * (-2.0 * p.b() * p.b() - k);
            worst = worst.max((c1 - p.c1()).abs() / p.c1());
        }
    }
    check(worst < 1e-9, format!("max relative deviation of lambda^4 (-2b^2 - K) from c1: {worst:.2e}"))
}

fn ricci_convergence() -> Outcome {
    let grid = SweepGrid::default();
    let (mut lo, mut hi, mut members) = (f64::INFINITY, f64::NEG_INFINITY, 0);
    let mut control_max = f64::NEG_INFINITY;
    for p in sweep_params() {
        let metric = LiouvilleMetric::new(p).map_err(|e| e.to_string())?;
        let spec = grid.base_spec(&metric).map_err(|e| e.to_string())?;
        let study = convergence_order(&metric, p.b(), &spec, 3, EXEC).map_err(|e| e.to_string())?;
        if study.spacings.iter().zip([0.02, 0.01, 0.005]).any(|(h, e)| (h - e).abs() > 1e-12) {
            return Err(format!("unexpected spacings {:?}", study.spacings));
        }
        lo = lo.min(study.order);
        hi = hi.max(study.order);
        members += study.in_family() as usize;
        let control = Perturbed { base: metric, eps: 0.01 };
        let study = convergence_order(&control, p.b(), &spec, 3, EXEC).map_err(|e| e.to_string())?;
        control_max = control_max.max(study.order);
    }
    check(
        (lo - 2.0).abs() <= 0.2 && (hi - 2.0).abs() <= 0.2 && control_max < 0.5,
        format!("orders in [{lo:.3}, {hi:.3}] ({members}/27 in family); perturbed controls at most {control_max:.3}"),
    )
}

fn low_branch_closed_forms() -> Outcome {
    let (mut constants, mut amplitude) = (0.0_f64, 0.0_f64);
    for c1 in [0.1, 0.5, 1.0, 1.4] {
        let s = SubfamilyBranch::new(c1).map_err(|e| e.to_string())?;
        let c = derive_constants(&s.params()).map_err(|e| e.to_string())?;
        constants = constants.max((c.k_squared - c1 / (c1 + 12.0)).abs()).max((c.lambda_plus - 6.0).abs());
        let w = 0.99 * c.u_max;
        for u in linspace(-w, w, 201) {
            amplitude = amplitude.max(amplitude_equation_check(&s, u).map_err(|e| e.to_string())?.abs());
        }
    }
    check(
        constants < 1e-12 && amplitude < 1e-9,
        format!("k^2 and lambda_+ within {constants:.2e}; amplitude residual {amplitude:.2e}"),
    )
}

fn gauss_spot_value() -> Outcome {
    let k = example().gaussian_curvature(0.0).map_err(|e| e.to_string())?;
    let c = second_fundamental_norm(k, subfamily_b()).map_err(|e| e.to_string())?;
    let (dk, dc) = ((k + 13.0 / 36.0).abs(), (c - 1.0 / 12.0).abs());
    check(dk < 1e-12 && dc < 1e-12, format!("K(0) = {k:.15}, |c| = {c:.15} (errors {dk:.1e}, {dc:.1e})"))
}

fn roundtrips() -> Outcome {
    let metric = example();
    let profile = arc_length_profile(&metric, (-0.4, 0.4), 2001, 1e-10, EXEC).map_err(|e| e.to_string())?;
    let lambda = metric_from_profile(&profile, 161, -0.4).map_err(|e| e.to_string())?;
    let mut family = 0.0_f64;
    for (i, l) in lambda.values.iter().enumerate() {
        let exact = metric.conformal_factor(lambda.u(i).clamp(-0.4, 0.4)).map_err(|e| e.to_string())?;
        family = family.max((l - exact).abs());
    }

    let (s0, s1, n) = (0.5, PI - 0.5, 2001);
    let s: Vec<f64> = linspace(s0, s1, n);
    let sphere = ArcLengthProfile {
        x: s.iter().map(|t| -t.cos()).collect(),
        y: s.iter().map(|t| t.sin()).collect(),
        s,
    };
    let lambda = metric_from_profile(&sphere, 201, (0.5 * s0).tan().ln()).map_err(|e| e.to_string())?;
    let mut sech = 0.0_f64;
    for (i, l) in lambda.values.iter().enumerate() {
        sech = sech.max((l - 1.0 / lambda.u(i).cosh()).abs());
    }
    let phi = lambda.map(f64::ln);
    let h2 = phi.h * phi.h;
    let mut curvature = 0.0_f64;
    for i in 1..phi.len() - 1 {
        let k = -(phi.values[i + 1] - 2.0 * phi.values[i] + phi.values[i - 1]) / h2 / lambda.values[i].powi(2);
        curvature = curvature.max((k - 1.0).abs());
    }
    check(
        family < 1e-5 && sech < 1e-6 && curvature < 0.01,
        format!("family roundtrip {family:.2e}; sphere sech {sech:.2e}; sphere K off by {:.3}%", 100.0 * curvature),
    )
}

fn mesh_curvature() -> Outcome {
    let metric = example();
    let d = 0.01;
    let profile = profile_from_metric(&metric, (-0.4, 0.4), 81, 1e-10, EXEC).map_err(|e| e.to_string())?;
    let mesh = tessellate(&profile, 0.0, TAU, (TAU / d).round() as usize).map_err(|e| e.to_string())?;
    let defects = angle_defect_curvature(&mesh, EXEC);
    let mut pointwise = 0.0_f64;
    for e in &defects.estimates {
        let k = metric.gaussian_curvature(e.u).map_err(|e| e.to_string())?;
        pointwise = pointwise.max(((e.curvature - k) / k).abs());
    }
    let total = total_curvature(&metric, (-0.4 + d / 2.0, 0.4 - d / 2.0), TAU, 1e-12).map_err(|e| e.to_string())?;
    let integrated = ((defects.total_defect() - total) / total).abs();
    check(
        pointwise < 0.05 && integrated < 0.02 && defects.skipped.is_empty(),
        format!(
            "{} interior vertices: pointwise {:.3}%, Gauss-Bonnet {:.4}%",
            defects.estimates.len(),
            100.0 * pointwise,
            100.0 * integrated
        ),
    )
}

fn normalization_fit() -> Outcome {
    let b = subfamily_b();
    let h = 0.0025;
    let lambda = UniformSamples::conformal_factor(&example(), -0.4, 0.4, 321, EXEC).map_err(|e| e.to_string())?;
    let fit = fit_normalization(&lambda, b).map_err(|e| e.to_string())?;
    let closed = fit.c2_fit.abs() < 10.0 * h * h && (fit.c1_fit - 1.0).abs() < 1e-4;

    let initial = [0.0, 0.0, 1.0, 0.4];
    let slope = ricci_initial_slope(b, initial);
    let us = linspace(-0.25, 0.25, 201);
    let phi = ricci_solution(b, initial, &us);
    let samples = UniformSamples::new(us[0], us[1] - us[0], phi.iter().map(|p| p.exp()).collect()).map_err(|e| e.to_string())?;
    let ode = fit_normalization(&samples, b).map_err(|e| e.to_string())?;
    let recovered = (ode.c2_fit - slope).abs() < 1e-3;
    check(
        closed && recovered,
        format!(
            "closed form (h = {h}): slope {:.1e}, c1 {:.8}; oracle slope {:.6} vs {slope}",
            fit.c2_fit, fit.c1_fit, ode.c2_fit
        ),
    )
}

fn cli(args: &[&str], out: &Path) -> Result<Vec<(String, Vec<u8>)>, String> {
    let status = Command::new(BIN)
        .args(args)
        .arg("--out")
        .arg(out)
        .env("SOURCE_DATE_EPOCH", "0")
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(format!("{args:?} failed: {}", String::from_utf8_lossy(&status.stderr)));
    }
    let mut files: Vec<_> = fs::read_dir(out)
        .map_err(|e| e.to_string())?
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().into_string().unwrap(), fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    Ok(files)
}

fn cli_determinism() -> Outcome {
    let verify = ["verify", "--c1", "1", "--c2", "-1.8333333333333333", "--u-lo", "-0.5", "--u-hi", "0.5", "--h", "0.02"];
    let mesh = ["mesh", "--c1", "1", "--c2", "-1.8333333333333333", "--u-lo", "-0.4", "--u-hi", "0.4", "--format", "both"];
    let mut identical = true;
    let mut count = 0;
    for args in [&verify[..], &mesh[..]] {
        let runs: Vec<_> = (0..2)
            .map(|_| {
                let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
                cli(args, dir.path())
            })
            .collect::<Result<_, _>>()?;
        identical &= runs[0] == runs[1];
        count += runs[0].len();
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let sweep = cli(&["sweep"], dir.path())?;
    let elapsed = start.elapsed();
    let rows = sweep
        .iter()
        .find(|(n, _)| n == "sweep.csv")
        .map(|(_, b)| b.iter().filter(|&&c| c == b'\n').count() - 1)
        .unwrap_or(0);
    check(
        identical && rows == 27 && elapsed < Duration::from_secs(60),
        format!("{count} files byte-identical across repeats: {identical}; default sweep of {rows} rows in {elapsed:.2?}"),
    )
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("elliptic identities", elliptic_identities),
        ("closed form against the ODE", closed_form_vs_ode),
        ("first integral", first_integral),
        ("Ricci residual convergence", ricci_convergence),
        ("subfamily closed forms", low_branch_closed_forms),
        ("Gauss equation spot value", gauss_spot_value),
        ("profile roundtrips", roundtrips),
        ("mesh curvature", mesh_curvature),
        ("normalization fit", normalization_fit),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
