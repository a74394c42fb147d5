mod common;

use common::reference::{E1, GAMMA, MITTAG_LEFFLER};
use sonine_core::specfun::{
    exp_integral_e1, gamma_fn, mittag_leffler, ml_asymptotic, MittagLeffler, MlConfig, MlOrder,
};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn gamma_matches_reference() {
    for &(x, g) in GAMMA {
        let v = gamma_fn(x).unwrap();
        assert!(rel(v, g) <= 1e-12, "Gamma({x}) = {v}, want {g}");
    }
}

#[test]
fn mittag_leffler_matches_reference() {
    let mut worst = 0.0f64;
    for &(a, b, z, e) in MITTAG_LEFFLER {
        let v = mittag_leffler(MlOrder::new(a, b).unwrap(), z).unwrap();
        let r = rel(v, e);
        worst = worst.max(r);
        assert!(r <= 1e-10, "E_{{{a},{b}}}({z}) = {v}, want {e} (rel {r:e})");
    }
    eprintln!("worst relative error {worst:e}");
}

#[test]
fn e1_matches_reference() {
    for &(x, e) in E1 {
        let v = exp_integral_e1(x).unwrap();
        assert!(rel(v, e) <= 1e-10, "E1({x}) = {v}, want {e}");
    }
}

#[test]
fn branches_agree_at_both_seams() {
    let cfg = MlConfig::default();
    for a in [0.25, 0.5, 0.75] {
        for b in [a, 1.0, a + 1.0] {
            let ml = MittagLeffler::new(MlOrder::new(a, b).unwrap());
            let x_lo = cfg.series_limit.powf(a);
            let series = ml.series_cached(-x_lo);
            let contour = ml.contour(x_lo);
            assert!(
                rel(series, contour) <= 1e-8,
                "lower seam a={a} b={b}: {series} vs {contour}"
            );
            let x_hi = cfg.asymptotic_start.powf(a);
            let asym = ml_asymptotic(MlOrder::new(a, b).unwrap(), x_hi).unwrap();
            let contour = ml.contour(x_hi);
            assert!(
                rel(asym, contour) <= 1e-8,
                "upper seam a={a} b={b}: {asym} vs {contour}"
            );
        }
    }
}
