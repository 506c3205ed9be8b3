use oracles::linspace;
use ricci_liouville::pmc::{
    amplitude_equation_check, kaehler_angle, pmc_report, second_fundamental_norm, subfamily_b, Branch, SubfamilyBranch,
    VERDICT_SATISFIED,
};
use ricci_liouville::verify::ricci_residual_1d_with_curvature;
use ricci_liouville::{derive_constants, Execution, UniformSamples};

#[test]
fn low_branch_closed_forms() {
    for c1 in [0.1, 0.5, 1.0, 1.4] {
        let s = SubfamilyBranch::new(c1).unwrap();
        assert_eq!(s.branch(), Branch::Low);
        let c = derive_constants(&s.params()).unwrap();
        assert!((c.k_squared - c1 / (c1 + 12.0)).abs() < 1e-12, "c1 = {c1}");
        assert!((c.lambda_plus - 6.0).abs() < 1e-12, "c1 = {c1}");
        let metric = s.metric().unwrap();
        let w = 0.99 * metric.constants().u_max;
        for u in linspace(-w, w, 199) {
            assert!(amplitude_equation_check(&s, u).unwrap().abs() < 1e-9, "c1 = {c1}, u = {u}");
        }
    }
}

#[test]
fn high_branch_closed_forms() {
    for c1 in [1.6, 3.0, 6.0, 20.0] {
        let s = SubfamilyBranch::new(c1).unwrap();
        assert_eq!(s.branch(), Branch::High);
        let c = derive_constants(&s.params()).unwrap();
        assert!((c.sqrt_disc - (2.0 + c1 / 6.0)).abs() < 1e-12);
        assert!((c.k_squared - 12.0 / (12.0 + c1)).abs() < 1e-12, "c1 = {c1}");
        assert!((c.lambda_plus - c1 / 2.0).abs() < 1e-12, "c1 = {c1}");
        let w = 0.99 * c.u_max;
        for u in linspace(-w, w, 99) {
            assert!(amplitude_equation_check(&s, u).unwrap().abs() < 1e-9);
        }
        assert!(kaehler_angle(&s, 0.0).is_err());
    }
}

#[test]
fn gauss_equation_at_the_origin() {
    let b = subfamily_b();
    let metric = SubfamilyBranch::new(1.0).unwrap().metric().unwrap();
    let k = metric.gaussian_curvature(0.0).unwrap();
    assert!((k + 13.0 / 36.0).abs() < 1e-12);
    let c = second_fundamental_norm(k, b).unwrap();
    assert!((c - 1.0 / 12.0).abs() < 1e-12);
}

#[test]
fn log_norm_of_c_satisfies_the_same_stencil() {
    // log|c| = log sqrt(-2b^2 - K) - log 2, so its Laplacian stencil repeats the Ricci residual.
    let b = subfamily_b();
    let metric = SubfamilyBranch::new(1.0).unwrap().metric().unwrap();
    let n = 41;
    let lambda = UniformSamples::conformal_factor(&metric, -0.4, 0.4, n, Execution::Sequential).unwrap();
    let curvature: Vec<f64> = (0..n).map(|i| metric.gaussian_curvature(lambda.u(i)).unwrap()).collect();
    let log_c: Vec<f64> = curvature.iter().map(|&k| second_fundamental_norm(k, b).unwrap().ln()).collect();
    let ricci = ricci_residual_1d_with_curvature(&lambda, &curvature, b).unwrap();
    let h2 = lambda.h * lambda.h;
    for i in 1..n - 1 {
        let d = (log_c[i + 1] - 2.0 * log_c[i] + log_c[i - 1]) / h2;
        let r = d / lambda.values[i].powi(2) - 2.0 * curvature[i];
        assert!((r - ricci.values[i - 1]).abs() < 1e-12);
    }
}

#[test]
fn reports() {
    let s = SubfamilyBranch::new(1.0).unwrap();
    let report = pmc_report(&s, (-0.5, 0.5), 401, Execution::Sequential).unwrap();
    assert_eq!(report.verdict, VERDICT_SATISFIED);
    assert!((report.k_min + 13.0 / 36.0).abs() < 1e-12);
    assert!(report.k_max < -1.0 / 3.0);
    assert!((report.c_norm_max - 1.0 / 12.0).abs() < 1e-12);
    assert!((report.h_norm - 2.0 * subfamily_b()).abs() < 1e-15);
    let (a_lo, a_hi) = (report.alpha_min.unwrap(), report.alpha_max.unwrap());
    assert!(a_lo > 0.0 && a_hi < std::f64::consts::PI && a_lo <= a_hi);
    assert_eq!(report, pmc_report(&s, (-0.5, 0.5), 401, Execution::Parallel).unwrap());

    let high = pmc_report(&SubfamilyBranch::new(6.0).unwrap(), (-0.3, 0.3), 201, Execution::Sequential).unwrap();
    assert_eq!(high.verdict, VERDICT_SATISFIED);
    assert!(high.alpha_min.is_none() && high.alpha_max.is_none());
    assert!(pmc_report(&s, (0.5, -0.5), 11, Execution::Sequential).is_err());
    let u_max = s.metric().unwrap().constants().u_max;
    assert!(pmc_report(&s, (-u_max, 0.0), 11, Execution::Sequential).is_err());
}
