use std::path::Path;

use ricci_liouville::conformal::ConformalFactor;
use ricci_liouville::export;
use ricci_liouville::interp::cumulative_integral;
use ricci_liouville::pmc::{pmc_report, SubfamilyBranch, VERDICT_SATISFIED};
use ricci_liouville::revolution::{
    arc_length_profile, induced_metric_check, metric_embeddable_interval, profile_from_metric, tessellate,
};
use ricci_liouville::sweep::{run_sweep, triples, RowStatus, SweepGrid, URange};
use ricci_liouville::verify::{
    classify_samples, convergence_order, fit_normalization, residual_threshold, ricci_residual_grid,
    sample_grid, GridSpec,
};
use ricci_liouville::{derive_constants, Error, Execution, LiouvilleMetric, MetricParams, Result};
use serde::Serialize;
use serde_json::json;

use crate::output::{json_bytes, timestamp, RunManifest, Staged};
use crate::{
    ClassifyArgs, Command, DeriveArgs, MeshArgs, MeshFormat, MetricArgs, Outcome, PmcArgs, SweepArgs, VerifyArgs,
};

struct Run {
    name: &'static str,
    argv: Vec<String>,
    exec: Execution,
}

impl Run {
    fn manifest<P: Serialize>(&self, params: &P, summary: &impl Serialize) -> Result<RunManifest> {
        Ok(RunManifest {
            command: self.name.to_string(),
            argv: self.argv.clone(),
            parameters: to_value(params)?,
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            parallel: self.exec.is_parallel() && cfg!(feature = "parallel"),
            timestamp: timestamp(),
            outputs: Vec::new(),
            summary: to_value(summary)?,
        })
    }

    fn commit<P: Serialize>(&self, staged: Staged, dir: &Path, params: &P, summary: &impl Serialize) -> Result<()> {
        staged.commit(dir, self.manifest(params, summary)?)?;
        Ok(())
    }
}

fn to_value<T: Serialize + ?Sized>(value: &T) -> Result<serde_json::Value> {
    serde_json::to_value(value).map_err(|e| Error::Malformed(e.to_string()))
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let bytes = json_bytes(value)?;
    print!("{}", String::from_utf8_lossy(&bytes));
    Ok(())
}

fn finite(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::InvalidParameter(format!("--{name} must be finite (got {x})")))
    }
}

fn params(m: &MetricArgs) -> Result<MetricParams> {
    MetricParams::new(m.b, m.c1, m.c2)
}

fn interval(lo: f64, hi: f64) -> Result<(f64, f64)> {
    let (lo, hi) = (finite("u-lo", lo)?, finite("u-hi", hi)?);
    if !(lo < hi) {
        return Err(Error::InvalidParameter(format!("--u-lo must be below --u-hi (got {lo}, {hi})")));
    }
    Ok((lo, hi))
}

pub fn dispatch(command: Command, exec: Execution, argv: Vec<String>) -> Result<Outcome> {
    let run = Run {
        name: command.name(),
        argv,
        exec,
    };
    match command {
        Command::Derive(a) => derive(&run, &a),
        Command::Verify(a) => verify(&run, &a),
        Command::Mesh(a) => mesh(&run, &a),
        Command::Classify(a) => classify(&run, &a),
        Command::Sweep(a) => sweep(&run, &a),
        Command::Pmc(a) => pmc(&run, &a),
        Command::Replay(_) => unreachable!("replay is resolved before dispatch"),
    }
}

fn derive(run: &Run, a: &DeriveArgs) -> Result<Outcome> {
    let constants = derive_constants(&params(&a.metric)?)?;
    print_json(&constants)?;
    if let Some(dir) = &a.out {
        let mut staged = Staged::default();
        staged.add_json("constants.json", &constants)?;
        run.commit(staged, dir, a, &constants)?;
    }
    Ok(Outcome::Positive)
}

fn verify(run: &Run, a: &VerifyArgs) -> Result<Outcome> {
    let p = params(&a.metric)?;
    let (lo, hi) = interval(a.u_lo, a.u_hi)?;
    let h = finite("h", a.h)?;
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(format!("--h must be positive (got {h})")));
    }
    if a.levels < 2 {
        return Err(Error::InvalidParameter("--levels must be at least 2".into()));
    }
    let v_cells = match a.v_cells {
        Some(n) if n < 4 => return Err(Error::InvalidParameter("--v-cells must be at least 4".into())),
        Some(n) => n,
        None => ((hi - lo) / h).round().max(4.0) as usize,
    };
    let spec = GridSpec::with_spacing(lo, hi, 0.0, v_cells as f64 * h, h)?;
    if spec.nu < 5 {
        return Err(Error::InvalidParameter("the u range must span at least 4 cells".into()));
    }
    let metric = LiouvilleMetric::new(p)?;
    metric.check_domain(lo)?;
    metric.check_domain(hi)?;

    let b = p.b();
    let mut grid = sample_grid(&metric, &spec, run.exec)?;
    let base_residual = ricci_residual_grid(&mut grid, b, run.exec)?;
    let study = convergence_order(&metric, b, &spec, a.levels, run.exec)?;
    let fit = fit_normalization(&grid.column(&grid.lambda, 0), b).ok();
    let (hf, _) = study.finest();
    let positive = study.in_family();

    let summary = json!({
        "params": p,
        "constants": metric.constants(),
        "grid": spec,
        "max_residual": base_residual,
        "spacings": study.spacings,
        "residuals": study.residuals,
        "extrapolated_residual": study.extrapolated_residual,
        "order": study.order,
        "threshold": residual_threshold(hf),
        "in_family": positive,
        "fit": fit,
    });
    let mut csv = Vec::new();
    export::write_grid_csv(&mut csv, &grid)?;
    let mut staged = Staged::default();
    staged.add("residual.csv", csv);
    staged.add_json("summary.json", &summary)?;
    run.commit(staged, &a.out, a, &summary)?;
    print_json(&summary)?;
    Ok(if positive { Outcome::Positive } else { Outcome::Negative })
}

fn mesh(run: &Run, a: &MeshArgs) -> Result<Outcome> {
    let p = params(&a.metric)?;
    let range = interval(a.u_lo, a.u_hi)?;
    let (v_lo, v_hi) = (finite("v-lo", a.v_lo)?, finite("v-hi", a.v_hi)?);
    if !(v_lo < v_hi) {
        return Err(Error::InvalidParameter(format!("--v-lo must be below --v-hi (got {v_lo}, {v_hi})")));
    }
    if a.nu < 2 || a.nv < 3 || a.arc_samples < 5 {
        return Err(Error::InvalidParameter("need --nu >= 2, --nv >= 3 and --arc-samples >= 5".into()));
    }
    if !(finite("tol", a.tol)? > 0.0) {
        return Err(Error::InvalidParameter(format!("--tol must be positive (got {})", a.tol)));
    }
    let metric = LiouvilleMetric::new(p)?;
    let embeddable = metric_embeddable_interval(&metric)?;

    let profile = profile_from_metric(&metric, range, a.nu, a.tol, run.exec)?;
    let mesh = tessellate(&profile, v_lo, v_hi, a.nv)?;
    let deviation = induced_metric_check(&mesh, &metric, run.exec)?;
    let arc = arc_length_profile(&metric, range, a.arc_samples, a.tol, run.exec)?;

    let mut staged = Staged::default();
    if matches!(a.format, MeshFormat::Obj | MeshFormat::Both) {
        let mut buf = Vec::new();
        export::write_obj(&mut buf, &mesh)?;
        staged.add("mesh.obj", buf);
    }
    if matches!(a.format, MeshFormat::Ply | MeshFormat::Both) {
        let mut buf = Vec::new();
        export::write_ply(&mut buf, &mesh)?;
        staged.add("mesh.ply", buf);
    }
    let mut buf = Vec::new();
    export::write_profile_csv(&mut buf, &profile)?;
    staged.add("profile.csv", buf);
    let mut buf = Vec::new();
    export::write_arc_length_csv(&mut buf, &arc)?;
    staged.add("arc_length.csv", buf);

    let last = profile.samples()[profile.samples().len() - 1];
    let summary = json!({
        "params": p,
        "embeddable_interval": [embeddable.0, embeddable.1],
        "monotone": profile.is_monotone(),
        "x_extent": last.x,
        "arc_length": arc.s[arc.len() - 1],
        "vertices": mesh.vertices.len(),
        "faces": mesh.faces.len(),
        "closed": mesh.closed,
        "euler_characteristic": mesh.euler_characteristic(),
        "induced_metric_deviation": deviation,
    });
    run.commit(staged, &a.out, a, &summary)?;
    print_json(&summary)?;
    Ok(Outcome::Positive)
}

fn classify(run: &Run, a: &ClassifyArgs) -> Result<Outcome> {
    let b = finite("b", a.b)?;
    let h = finite("h", a.h)?;
    if !(b > 0.0) || !(h > 0.0) {
        return Err(Error::InvalidParameter("--b and --h must be positive".into()));
    }
    let file = std::fs::File::open(&a.profile).map_err(|e| Error::Io(format!("{}: {e}", a.profile.display())))?;
    let profile = export::read_arc_length_csv(std::io::BufReader::new(file))?;
    if let Some(i) = profile.y.iter().position(|&y| !(y > 0.0)) {
        return Err(Error::InvalidParameter(format!("profile radius must be positive (y = {} at row {})", profile.y[i], i + 2)));
    }
    let inv_y: Vec<f64> = profile.y.iter().map(|y| 1.0 / y).collect();
    let span = cumulative_integral(&profile.s, &inv_y).last().copied().unwrap_or(0.0);
    let n = (span / h).round() as usize + 1;
    let lambda = ricci_liouville::revolution::metric_from_profile(&profile, n.max(2), 0.0)?;
    let classification = classify_samples(&lambda, b, a.levels)?;

    let report = json!({
        "profile": a.profile.display().to_string(),
        "profile_samples": profile.len(),
        "u_range": [lambda.u0, lambda.u(lambda.len() - 1)],
        "h": lambda.h,
        "verdict": classification.verdict,
        "b": classification.b,
        "spacings": classification.spacings,
        "residuals": classification.residuals,
        "extrapolated_residual": classification.extrapolated_residual,
        "order": classification.order,
        "fit": classification.fit,
    });
    if let Some(dir) = &a.out {
        let mut staged = Staged::default();
        staged.add_json("verdict.json", &report)?;
        run.commit(staged, dir, a, &report)?;
    }
    print_json(&report)?;
    Ok(if classification.verdict.is_positive() {
        Outcome::Positive
    } else {
        Outcome::Negative
    })
}

/// `a,b,c`, `lo:hi:n` (n equispaced values) or empty.
pub fn parse_range(flag: &str, text: &str) -> Result<Vec<f64>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let number = |s: &str| -> Result<f64> {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| Error::InvalidParameter(format!("--{flag}: '{s}' is not a finite number")))
    };
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [lo, hi, n] => {
            let (lo, hi) = (number(lo)?, number(hi)?);
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("--{flag}: '{n}' is not a count")))?;
            Ok(match n {
                0 => Vec::new(),
                1 => vec![lo],
                _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
            })
        }
        [_] => text.split(',').map(number).collect(),
        _ => Err(Error::InvalidParameter(format!("--{flag}: expected 'a,b,c' or 'lo:hi:n' (got '{text}')"))),
    }
}

fn sweep(run: &Run, a: &SweepArgs) -> Result<Outcome> {
    let bs = match &a.b {
        Some(text) => parse_range("b", text)?,
        None => vec![ricci_liouville::pmc::subfamily_b(), 0.5, 1.0],
    };
    let c1s = parse_range("c1", &a.c1)?;
    let c2s = parse_range("c2", &a.c2)?;
    let u_range = match (a.u_lo, a.u_hi) {
        (Some(lo), Some(hi)) => {
            let (lo, hi) = interval(lo, hi)?;
            URange::Fixed { lo, hi }
        }
        _ => {
            let f = finite("fraction", a.fraction)?;
            if !(f > 0.0 && f < 1.0) {
                return Err(Error::InvalidParameter(format!("--fraction must lie in (0, 1) (got {f})")));
            }
            URange::Auto { fraction: f }
        }
    };
    let grid = SweepGrid {
        u_range,
        v_cells: a.v_cells,
        h: finite("h", a.h)?,
        levels: a.levels,
    };
    let points = triples(&bs, &c1s, &c2s);
    let rows = run_sweep(&points, &grid, run.exec)?;

    let ok = rows.iter().filter(|r| r.status == RowStatus::Ok).count();
    let members = rows.iter().filter(|r| r.in_family == Some(true)).count();
    let summary = json!({
        "rows": rows.len(),
        "studied": ok,
        "in_family": members,
        "flagged": rows.len() - ok,
    });
    let mut csv = Vec::new();
    export::write_sweep_csv(&mut csv, &rows)?;
    let mut staged = Staged::default();
    staged.add("sweep.csv", csv);
    run.commit(staged, &a.out, a, &summary)?;
    print_json(&summary)?;
    Ok(if members == ok { Outcome::Positive } else { Outcome::Negative })
}

fn pmc(run: &Run, a: &PmcArgs) -> Result<Outcome> {
    let s = SubfamilyBranch::new(finite("c1", a.c1)?)?;
    let (lo, hi) = (finite("u-lo", a.u_lo)?, finite("u-hi", a.u_hi)?);
    let report = pmc_report(&s, (lo, hi), a.n, run.exec)?;
    if let Some(dir) = &a.out {
        let mut staged = Staged::default();
        staged.add_json("report.json", &report)?;
        run.commit(staged, dir, a, &report)?;
    }
    print_json(&report)?;
    Ok(if report.verdict == VERDICT_SATISFIED {
        Outcome::Positive
    } else {
        Outcome::Negative
    })
}
