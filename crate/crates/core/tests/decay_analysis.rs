use num_complex::Complex64;
use sonine_core::analysis::{fit_decay_exponent, lp_norm, predict_decay_rate, sobolev_norm, sup_bound};
use sonine_core::cli::commands::random_state;
use sonine_core::kernels::{make_pair, KernelSpec, SoninePair};
use sonine_core::spectral::{make_symbol, FieldState, SpaceGrid, SpectralEvolver, SymbolKind};
use sonine_core::volterra::TimeGrid;

fn fractional(alpha: f64) -> SoninePair {
    make_pair(&KernelSpec::Fractional { alpha }).unwrap()
}

fn nodes_in(tg: &TimeGrid, lo: f64, hi: f64, stride: usize) -> Vec<f64> {
    tg.nodes()
        .iter()
        .cloned()
        .filter(|&t| t >= lo && t <= hi)
        .step_by(stride)
        .collect()
}

#[test]
fn single_mode_decays_like_inverse_cumulative_kernel() {
    let p = fractional(0.5);
    let grid = SpaceGrid::torus(1, 16).unwrap();
    let u0 = FieldState::from_fn(grid, 0.0, |x| Complex64::new(0.0, x[0]).exp()).unwrap();
    let tg = TimeGrid::for_pair(100.0, 1024, &p).unwrap();
    let times = nodes_in(&tg, 10.0, 100.0, 8);
    let ev = SpectralEvolver::new(&p, &make_symbol(SymbolKind::Laplacian, 1).unwrap(), &tg).unwrap();
    let series: Vec<(f64, f64)> = ev
        .evolve_homogeneous(&u0, &times)
        .unwrap()
        .iter()
        .map(|u| (u.time, lp_norm(u, 2.0).unwrap()))
        .collect();
    let fit = fit_decay_exponent(&series, &p, (10.0, 100.0)).unwrap();
    assert!(
        (fit.fitted_exponent + 1.0).abs() <= 0.05,
        "slope {}",
        fit.fitted_exponent
    );
}

#[test]
fn sobolev_ratio_stays_under_inverse_cumulative_kernel() {
    let p = fractional(0.5);
    let symbol = make_symbol(SymbolKind::Laplacian, 2).unwrap();
    let grid = SpaceGrid::torus(2, 32).unwrap();
    let tg = TimeGrid::for_pair(50.0, 512, &p).unwrap();
    let times = nodes_in(&tg, 0.5, 50.0, 4);
    let ev = SpectralEvolver::new(&p, &symbol, &tg).unwrap();
    for seed in 0..5 {
        let u0 = random_state(&grid, seed, 6, true).unwrap();
        let base = sobolev_norm(&u0, 0.0, &symbol).unwrap();
        assert!((base - lp_norm(&u0, 2.0).unwrap()).abs() <= 1e-12 * base);
        let mut series = Vec::new();
        for u in ev.evolve_homogeneous(&u0, &times).unwrap() {
            let ratio = sobolev_norm(&u, 2.0, &symbol).unwrap() / base;
            let bound = 1.0 / p.cumulative_l(u.time).unwrap();
            assert!(ratio <= 1.01 * bound, "seed {seed} t={}: {ratio} > {bound}", u.time);
            series.push((u.time, ratio));
        }
        let fit = fit_decay_exponent(&series, &p, (0.5, 50.0)).unwrap();
        assert!(
            fit.fitted_exponent >= -1.0,
            "seed {seed}: slope {}",
            fit.fitted_exponent
        );
    }
}

#[test]
fn random_state_parseval() {
    let grid = SpaceGrid::torus(2, 32).unwrap();
    for seed in [1, 7, 42] {
        let u = random_state(&grid, seed, 8, true).unwrap();
        let grid_l2 = lp_norm(&u, 2.0).unwrap();
        let vol = grid.period * grid.period;
        let freq_l2 = (vol * u.coefficients().iter().map(|c| c.norm_sqr()).sum::<f64>()).sqrt();
        assert!((grid_l2 - freq_l2).abs() <= 1e-12 * freq_l2);
        assert!(u.max_imag() < 1e-14);
        assert!(u.coefficients()[0].norm() < 1e-15);
    }
}

#[test]
fn sup_bound_scales_with_cumulative_kernel() {
    let a = sup_bound(1.0, 2.0, 3.0).unwrap().value;
    let b = sup_bound(1.0, 2.0, 6.0).unwrap().value;
    assert!((b / a - 2f64.powf(-0.5)).abs() <= 1e-10);
    for ratio in [0.1, 0.3, 0.5, 0.7, 0.9] {
        for big_l in [1e-3, 1.0, 1e3] {
            let s = sup_bound(ratio, 1.0, big_l).unwrap();
            assert!(
                s.relative_difference <= 1e-6,
                "{ratio} {big_l}: {}",
                s.relative_difference
            );
        }
    }
}

#[test]
fn heisenberg_prediction() {
    let p = fractional(0.4);
    let pred = predict_decay_rate(4.0 / 3.0, 4.0, 4.0, 2.0, &p).unwrap();
    assert!((pred.exponent + 1.0).abs() < 1e-15);
    assert!((pred.pure_power.unwrap() + 0.4).abs() < 1e-15);
}
