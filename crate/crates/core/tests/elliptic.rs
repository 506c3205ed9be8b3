use oracles::{incomplete_f, jacobi_by_ode, linspace};
use proptest::prelude::*;
use ricci_liouville::elliptic::{agm, complete_elliptic_k, jacobi_am, jacobi_sn_cn_dn, Modulus};

#[test]
fn quarter_period_matches_quadrature() {
    for k in [0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999] {
        let ours = complete_elliptic_k(Modulus::new(k).unwrap()).unwrap();
        let reference = incomplete_f(std::f64::consts::FRAC_PI_2, k);
        assert!((ours - reference).abs() < 1e-12 * reference, "k = {k}: {ours} vs {reference}");
    }
}

#[test]
fn jacobi_functions_match_their_ode() {
    let us = linspace(-4.0, 4.0, 161);
    for k in [0.0, 0.2, 0.6, 0.9, 0.99] {
        let modulus = Modulus::new(k).unwrap();
        let reference = jacobi_by_ode(&us, k);
        for (u, r) in us.iter().zip(&reference) {
            let t = jacobi_sn_cn_dn(*u, modulus).unwrap();
            assert!((t.sn - r[0]).abs() < 1e-10, "sn({u}, {k})");
            assert!((t.cn - r[1]).abs() < 1e-10, "cn({u}, {k})");
            assert!((t.dn - r[2]).abs() < 1e-10, "dn({u}, {k})");
        }
    }
}

#[test]
fn amplitude_inverts_the_incomplete_integral() {
    for k in [0.0, 0.4, 0.8, 0.95] {
        let modulus = Modulus::new(k).unwrap();
        for phi in [-1.4, -0.6, 0.0, 0.3, 1.1, 1.5] {
            let u = incomplete_f(phi, k);
            let am = jacobi_am(u, modulus).unwrap();
            assert!((am - phi).abs() < 1e-12, "am(F({phi}), {k}) = {am}");
        }
    }
}

#[test]
fn limiting_moduli() {
    let zero = Modulus::new(0.0).unwrap();
    let one = Modulus::new(1.0).unwrap();
    for u in [-2.0_f64, -0.5, 0.0, 0.7, 3.0] {
        let t = jacobi_sn_cn_dn(u, zero).unwrap();
        assert!((t.sn - u.sin()).abs() < 1e-15 && (t.cn - u.cos()).abs() < 1e-15 && t.dn == 1.0);
        let t = jacobi_sn_cn_dn(u, one).unwrap();
        assert!((t.sn - u.tanh()).abs() < 1e-15);
        assert!((t.cn - 1.0 / u.cosh()).abs() < 1e-15);
        assert!((t.dn - 1.0 / u.cosh()).abs() < 1e-15);
    }
    assert!(complete_elliptic_k(one).is_err());
    assert!(Modulus::new(1.1).is_err());
    assert!(Modulus::new(-0.1).is_err());
    assert!(Modulus::new(f64::NAN).is_err());
}

#[test]
fn agm_of_one_and_root_two() {
    // Gauss's constant is 1 / agm(1, sqrt 2).
    let g = 1.0 / agm(1.0, 2.0_f64.sqrt()).unwrap();
    assert!((g - 0.834_626_841_674_073_2).abs() < 1e-15);
}

proptest! {
    #[test]
    fn pythagorean_identities(u in -50.0..50.0_f64, k in 0.0..=1.0_f64) {
        let modulus = Modulus::new(k).unwrap();
        let t = jacobi_sn_cn_dn(u, modulus).unwrap();
        prop_assert!((t.sn * t.sn + t.cn * t.cn - 1.0).abs() < 1e-12);
        prop_assert!((t.dn * t.dn + k * k * t.sn * t.sn - 1.0).abs() < 1e-12);
    }

    #[test]
    fn amplitude_agrees_with_sn_and_cn(u in -10.0..10.0_f64, k in 0.0..0.999_f64) {
        let modulus = Modulus::new(k).unwrap();
        let t = jacobi_sn_cn_dn(u, modulus).unwrap();
        let am = jacobi_am(u, modulus).unwrap();
        prop_assert!((am.sin() - t.sn).abs() < 1e-11);
        prop_assert!((am.cos() - t.cn).abs() < 1e-11);
    }

    #[test]
    fn cn_vanishes_at_the_quarter_period(k in 0.0..0.9999_f64) {
        let modulus = Modulus::new(k).unwrap();
        let big_k = complete_elliptic_k(modulus).unwrap();
        let t = jacobi_sn_cn_dn(big_k, modulus).unwrap();
        prop_assert!(t.cn.abs() < 1e-10);
        prop_assert!((t.sn - 1.0).abs() < 1e-12);
    }
}
