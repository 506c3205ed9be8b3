//! Parameter sweeps of the grid convergence study.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::metric::{LiouvilleMetric, MetricParams};
use crate::verify::{convergence_order, GridSpec};

/// The `u` extent of each sweep grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum URange {
    /// Symmetric `[-w, w]` with `w` the largest multiple of `h` not exceeding
    /// `fraction * u_max`.
    Auto { fraction: f64 },
    Fixed { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub u_range: URange,
    /// Width of the `v` strip, in units of the base spacing.
    pub v_cells: usize,
    /// Coarsest spacing; each level halves it.
    pub h: f64,
    pub levels: usize,
}

impl Default for SweepGrid {
    fn default() -> Self {
        SweepGrid {
            u_range: URange::Auto { fraction: 0.5 },
            v_cells: 4,
            h: 0.02,
            levels: 3,
        }
    }
}

impl SweepGrid {
    /// Base grid for one parameter triple.
    pub fn base_spec(&self, metric: &LiouvilleMetric) -> Result<GridSpec> {
        let h = self.h;
        let (lo, hi) = match self.u_range {
            URange::Auto { fraction } => {
                let cells = (fraction * metric.constants().u_max / h).floor();
                if cells < 2.0 {
                    return Err(Error::invalid(format!(
                        "spacing h = {h} is too coarse for the domain half-width {}",
                        metric.constants().u_max
                    )));
                }
                (-cells * h, cells * h)
            }
            URange::Fixed { lo, hi } => (lo, hi),
        };
        GridSpec::with_spacing(lo, hi, 0.0, self.v_cells as f64 * h, h)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    DomainViolation,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub c1: f64,
    pub c2: f64,
    pub b: f64,
    /// Residual at the coarsest level.
    pub residual: Option<f64>,
    pub order: Option<f64>,
    pub in_family: Option<bool>,
    pub status: RowStatus,
    pub message: Option<String>,
}

/// Cartesian product `b x c1 x c2` (c2 fastest).
pub fn triples(bs: &[f64], c1s: &[f64], c2s: &[f64]) -> Vec<(f64, f64, f64)> {
    let mut out = Vec::with_capacity(bs.len() * c1s.len() * c2s.len());
    for &b in bs {
        for &c1 in c1s {
            for &c2 in c2s {
                out.push((b, c1, c2));
            }
        }
    }
    out
}

/// Runs the convergence study for one triple. Invalid parameters are an
/// error; domain problems become a flagged row.
pub fn sweep_point(b: f64, c1: f64, c2: f64, grid: &SweepGrid, exec: Execution) -> Result<SweepRow> {
    let params = MetricParams::new(b, c1, c2)?;
    let metric = LiouvilleMetric::new(params)?;
    let mut row = SweepRow {
        c1,
        c2,
        b,
        residual: None,
        order: None,
        in_family: None,
        status: RowStatus::Ok,
        message: None,
    };
    let study = grid
        .base_spec(&metric)
        .and_then(|spec| convergence_order(&metric, b, &spec, grid.levels, exec));
    match study {
        Ok(study) => {
            row.residual = Some(study.residuals[0]);
            row.order = Some(study.order);
            row.in_family = Some(study.in_family());
        }
        Err(e @ Error::OutsideDomain { .. }) => {
            row.status = RowStatus::DomainViolation;
            row.message = Some(e.to_string());
        }
        Err(e) if e.is_numerical() => return Err(e),
        Err(e) => {
            row.status = RowStatus::Failed;
            row.message = Some(e.to_string());
        }
    }
    Ok(row)
}

/// Sweeps every triple; rows come back in input order whatever the mode.
/// Inner grid loops run sequentially so the parallelism is over points.
pub fn run_sweep(points: &[(f64, f64, f64)], grid: &SweepGrid, exec: Execution) -> Result<Vec<SweepRow>> {
    if grid.levels < 2 {
        return Err(Error::invalid("sweep needs at least 2 refinement levels"));
    }
    if !(grid.h > 0.0) || grid.v_cells < 4 {
        return Err(Error::invalid("sweep needs h > 0 and a v strip of at least 4 cells"));
    }
    for &(b, c1, c2) in points {
        MetricParams::new(b, c1, c2)?;
    }
    exec.try_map(points.len(), |i| {
        let (b, c1, c2) = points[i];
        sweep_point(b, c1, c2, grid, Execution::Sequential)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triple_order_is_b_then_c1_then_c2() {
        let t = triples(&[1.0, 2.0], &[3.0], &[4.0, 5.0]);
        assert_eq!(t, vec![(1.0, 3.0, 4.0), (1.0, 3.0, 5.0), (2.0, 3.0, 4.0), (2.0, 3.0, 5.0)]);
        assert!(triples(&[], &[1.0], &[1.0]).is_empty());
    }

    #[test]
    fn domain_violation_is_flagged_not_fatal() {
        let grid = SweepGrid {
            u_range: URange::Fixed { lo: -2.0, hi: 2.0 },
            ..SweepGrid::default()
        };
        let rows = run_sweep(&[(1.0, 4.0, 3.0)], &grid, Execution::Sequential).unwrap();
        assert_eq!(rows[0].status, RowStatus::DomainViolation);
        assert!(rows[0].order.is_none());
    }

    #[test]
    fn invalid_parameters_are_fatal() {
        let r = run_sweep(&[(1.0, -1.0, 0.0)], &SweepGrid::default(), Execution::Sequential);
        assert!(r.is_err());
    }
}
