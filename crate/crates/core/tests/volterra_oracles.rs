use sonine_core::kernels::{make_pair, KernelSpec, SoninePair};
use sonine_core::specfun::{mittag_leffler, mv_mittag_leffler, power_kernel, MlOrder, MvMlOrder};
use sonine_core::volterra::{invert_sonine, refinement_error, TimeGrid, VolterraSolver};

fn pair(spec: KernelSpec) -> SoninePair {
    make_pair(&spec).unwrap()
}

fn families() -> Vec<SoninePair> {
    vec![
        pair(KernelSpec::Fractional { alpha: 0.5 }),
        pair(KernelSpec::TwoTerm { alpha: 0.3, beta: 0.7 }),
        pair(KernelSpec::Tempered { alpha: 0.5, gamma: 1.0 }),
        pair(KernelSpec::DistributedOrder),
        pair(KernelSpec::MultiTerm {
            alphas: vec![0.8, 0.4],
            truncation: 80,
        }),
    ]
}

/// Largest relative error of the recovered `l` at midpoints in `[lo, hi]`;
/// `eta` is the exponent of `k` at 0.
fn inversion_error(
    k: &(dyn Fn(f64) -> f64 + Sync),
    eta: f64,
    n: usize,
    grading: f64,
    l: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
) -> f64 {
    let grid = TimeGrid::graded(2.0, n, grading).unwrap();
    let inv = invert_sonine(k, eta, &grid).unwrap();
    assert!(inv.max_residual <= 1e-4, "residual {}", inv.max_residual);
    inv.midpoints
        .iter()
        .zip(&inv.values)
        .filter(|(&t, _)| t >= lo && t <= hi)
        .map(|(&t, &v)| ((v - l(t)) / l(t)).abs())
        .fold(0.0, f64::max)
}

#[test]
fn inverting_g07_gives_g03() {
    let err = inversion_error(
        &|t| power_kernel(0.7, t),
        0.3,
        1024,
        2.0,
        |t| power_kernel(0.3, t),
        0.1,
        1.5,
    );
    assert!(err < 1e-4, "{err:e}");
}

#[test]
fn inverting_multi_term_k_gives_the_multivariate_form() {
    let p = pair(KernelSpec::MultiTerm {
        alphas: vec![0.8, 0.4],
        truncation: 80,
    });
    let k = |t: f64| power_kernel(0.2, t) + power_kernel(0.6, t);
    let err = inversion_error(&k, 0.8, 2048, 2.0, |t| p.l(t), 0.05, 1.0);
    assert!(err < 1e-4, "{err:e}");
}

#[test]
fn two_variable_multivariate_value_matches_inverted_kernel() {
    // t^{b-1} E_{(a1,a2),b}(-c1 t^a1, -c2 t^a2) is the partner of
    // g_{1-b} + c1 g_{1-b+a1} + c2 g_{1-b+a2}; at t = 1 this is the series at (-c1, -c2).
    let (a1, a2, b, c1, c2) = (0.3, 0.7, 0.7, 0.5, 0.25);
    let order = MvMlOrder::new(vec![a1, a2], b).unwrap();
    let want = mv_mittag_leffler(&order, &[-c1, -c2], 60).unwrap().value;
    let k = move |t: f64| {
        power_kernel(1.0 - b, t) + c1 * power_kernel(1.0 - b + a1, t) + c2 * power_kernel(1.0 - b + a2, t)
    };
    let grid = TimeGrid::graded(2.0, 1024, 2.0).unwrap();
    let inv = invert_sonine(&k, b, &grid).unwrap();
    let got = inv.value_at(1.0);
    assert!(((got - want) / want).abs() < 1e-4, "{got} vs {want}");
}

#[test]
fn fractional_resolvent_example() {
    let p = pair(KernelSpec::Fractional { alpha: 0.5 });
    let grid = TimeGrid::for_pair(1.0, 1024, &p).unwrap();
    let r = VolterraSolver::new(&p, &grid).unwrap().resolvent(1.0).unwrap();
    let i = grid.intervals();
    let want = mittag_leffler(MlOrder::new(0.5, 0.5).unwrap(), -1.0).unwrap();
    assert!((r.values[i] - want).abs() < 1e-4, "{} vs {want}", r.values[i]);
}

#[test]
fn resolvent_at_zero_mu_is_l() {
    let p = pair(KernelSpec::TwoTerm { alpha: 0.3, beta: 0.7 });
    let grid = TimeGrid::for_pair(10.0, 64, &p).unwrap();
    let r = VolterraSolver::new(&p, &grid).unwrap().resolvent(0.0).unwrap();
    for (i, &t) in grid.nodes().iter().enumerate().skip(1) {
        assert!((r.values[i] - p.l(t)).abs() <= 1e-14 * p.l(t));
    }
}

#[test]
#[allow(clippy::needless_range_loop)]
fn resolvent_is_positive_nonincreasing_and_bounded() {
    for p in families() {
        let grid = TimeGrid::for_pair(10.0, 512, &p).unwrap();
        let solver = VolterraSolver::new(&p, &grid).unwrap();
        for mu in [0.1, 1.0, 10.0] {
            let r = solver.resolvent(mu).unwrap();
            let (_, upper) = r.bounds(&p).unwrap();
            for i in 1..r.values.len() {
                assert!(r.values[i] > 0.0, "{} mu={mu}: r <= 0 at node {i}", p.name());
                if i > 1 {
                    assert!(
                        r.values[i] <= r.values[i - 1] * (1.0 + 1e-12),
                        "{} mu={mu}: r increases at node {i}",
                        p.name()
                    );
                }
                assert!(
                    r.values[i] <= upper[i] * (1.0 + 1e-3),
                    "{} mu={mu}: r = {} above l/(1+mu L) = {} at t = {}",
                    p.name(),
                    r.values[i],
                    upper[i],
                    grid.nodes()[i]
                );
            }
        }
    }
}

#[test]
fn relaxation_converges_under_refinement() {
    for p in families() {
        let mus = [1.0, 10.0];
        let solve = |n: usize| {
            let grid = TimeGrid::for_pair(10.0, n, &p).unwrap();
            VolterraSolver::new(&p, &grid).unwrap().relaxation_sweep(&mus).unwrap()
        };
        let (s128, s256, s512) = (solve(128), solve(256), solve(512));
        let e1 = refinement_error(&s256, &s128);
        let e2 = refinement_error(&s512, &s256);
        for (a, b) in e1.iter().zip(&e2) {
            let order = (a / b).log2();
            assert!(order >= 1.0, "{}: observed order {order:.2} ({a:e} -> {b:e})", p.name());
        }
    }
}

#[test]
fn relaxation_is_monotone_in_mu() {
    for p in families() {
        let grid = TimeGrid::for_pair(10.0, 256, &p).unwrap();
        let sols = VolterraSolver::new(&p, &grid)
            .unwrap()
            .relaxation_sweep(&[0.1, 1.0, 10.0, 100.0])
            .unwrap();
        for w in sols.windows(2) {
            for (a, b) in w[0].values.iter().zip(&w[1].values) {
                assert!(a >= b, "{}: s not monotone in mu", p.name());
            }
        }
        for s in &sols {
            assert_eq!(s.values[0], 1.0);
            assert!(s.values.windows(2).all(|w| w[1] <= w[0] && w[1] >= 0.0));
        }
    }
}
