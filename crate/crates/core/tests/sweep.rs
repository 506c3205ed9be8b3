use ricci_liouville::export::write_sweep_csv;
use ricci_liouville::pmc::subfamily_b;
use ricci_liouville::sweep::{run_sweep, triples, RowStatus, SweepGrid, URange};
use ricci_liouville::verify::ORDER_BAND;
use ricci_liouville::Execution;

fn default_points() -> Vec<(f64, f64, f64)> {
    triples(&[subfamily_b(), 0.5, 1.0], &[0.25, 1.0, 4.0], &[-2.0, 0.0, 3.0])
}

#[test]
fn default_sweep_is_in_family_at_second_order() {
    let rows = run_sweep(&default_points(), &SweepGrid::default(), Execution::Parallel).unwrap();
    assert_eq!(rows.len(), 27);
    for row in &rows {
        assert_eq!(row.status, RowStatus::Ok, "{row:?}");
        let order = row.order.unwrap();
        assert!(order >= ORDER_BAND.0 && order <= ORDER_BAND.1, "{row:?}");
        assert_eq!(row.in_family, Some(true), "{row:?}");
    }
}

#[test]
fn modes_agree_and_rows_keep_input_order() {
    let points = default_points();
    let grid = SweepGrid::default();
    let seq = run_sweep(&points, &grid, Execution::Sequential).unwrap();
    let par = run_sweep(&points, &grid, Execution::Parallel).unwrap();
    let mut a = Vec::new();
    let mut b = Vec::new();
    write_sweep_csv(&mut a, &seq).unwrap();
    write_sweep_csv(&mut b, &par).unwrap();
    assert_eq!(a, b);
    for (row, p) in seq.iter().zip(&points) {
        assert_eq!((row.b, row.c1, row.c2), *p);
    }
}

#[test]
fn domain_violations_are_flagged() {
    let grid = SweepGrid {
        u_range: URange::Fixed { lo: -2.0, hi: 2.0 },
        ..SweepGrid::default()
    };
    let rows = run_sweep(&[(1.0, 4.0, 3.0), (0.5, 0.25, -2.0)], &grid, Execution::Sequential).unwrap();
    assert_eq!(rows[0].status, RowStatus::DomainViolation);
    assert!(rows[0].message.is_some() && rows[0].order.is_none());
    assert!(run_sweep(&[(0.0, 1.0, 1.0)], &grid, Execution::Sequential).is_err());
}

#[test]
fn empty_sweep() {
    let rows = run_sweep(&[], &SweepGrid::default(), Execution::Sequential).unwrap();
    assert!(rows.is_empty());
    let mut csv = Vec::new();
    write_sweep_csv(&mut csv, &rows).unwrap();
    assert_eq!(String::from_utf8(csv).unwrap().lines().count(), 1);
}
