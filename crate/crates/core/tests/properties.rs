//! Randomized invariants. Each property is a statement the code must hold
//! over a whole parameter region, not at hand-picked points.

use ndarray::Array2;
use proptest::prelude::*;

use noisebound::channels::{probe_output, thermal_state, tmsv, ChannelSpec};
use noisebound::divergences::{fidelity, qfi_finite_difference, relative_entropy, relative_entropy_variance};
use noisebound::gaussian::{apply_symplectic, marginal, symplectic_eigenvalues, williamson, GaussianState};
use noisebound::linalg;
use noisebound::strategy::{bound_gap_report, decoupling_symplectic, exact_binary_test, StrategySpec};
use noisebound::channels::ProbeSpec;
use noisebound::thermal::{renyi_thermal, thermal_divergences, ThermalPair};

fn probe_pair(eta: f64, nb1: f64, nb2: f64, n_s: f64) -> (GaussianState, GaussianState) {
    (
        probe_output(&ChannelSpec::thermal(eta, nb1).unwrap(), n_s).unwrap(),
        probe_output(&ChannelSpec::thermal(eta, nb2).unwrap(), n_s).unwrap(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // D, V, F are unitary invariants: conjugating both states by one
    // symplectic cannot move them
    #[test]
    fn divergences_are_symplectic_invariants(
        eta in 0.05f64..0.95,
        nb1 in 0.05f64..2.0,
        shift in 0.1f64..1.5,
        n_s in 0.0f64..20.0,
        mix_eta in 0.1f64..0.9,
        mix_ns in 0.1f64..5.0,
    ) {
        let nb2 = nb1 + shift;
        let (s1, s2) = probe_pair(eta, nb1, nb2, n_s);
        let s = decoupling_symplectic(&ChannelSpec::thermal(mix_eta, 0.0).unwrap(), mix_ns).unwrap();
        let t1 = apply_symplectic(&s, &s1).unwrap();
        let t2 = apply_symplectic(&s, &s2).unwrap();

        let d0 = relative_entropy(&s1, &s2).unwrap();
        let d1 = relative_entropy(&t1, &t2).unwrap();
        prop_assert!((d0 - d1).abs() < 1e-9 * (1.0 + d0.abs()));

        let v0 = relative_entropy_variance(&s1, &s2).unwrap();
        let v1 = relative_entropy_variance(&t1, &t2).unwrap();
        prop_assert!((v0 - v1).abs() < 1e-9 * (1.0 + v0.abs()));

        let f0 = fidelity(&s1, &s2).unwrap();
        let f1 = fidelity(&t1, &t2).unwrap();
        prop_assert!((f0 - f1).abs() < 1e-8);
    }

    // adjoining the same thermal spectator mode changes nothing
    #[test]
    fn spectator_mode_is_invisible(
        n1 in 0.05f64..3.0,
        shift in 0.1f64..2.0,
        // strictly thermal: a pure spectator leaves the joint second argument
        // rank-deficient, which the Gibbs form rejects by design
        spectator in 0.05f64..4.0,
    ) {
        let n2 = n1 + shift;
        let join = |n: f64| {
            let mut cov = Array2::zeros((4, 4));
            for (i, v) in [n + 0.5, spectator + 0.5, n + 0.5, spectator + 0.5]
                .into_iter()
                .enumerate()
            {
                cov[[i, i]] = v;
            }
            GaussianState::from_cov(cov).unwrap()
        };
        let d_small = relative_entropy(&thermal_state(n1).unwrap(), &thermal_state(n2).unwrap()).unwrap();
        let d_big = relative_entropy(&join(n1), &join(n2)).unwrap();
        prop_assert!((d_small - d_big).abs() < 1e-10 * (1.0 + d_small));

        let f_small = fidelity(&thermal_state(n1).unwrap(), &thermal_state(n2).unwrap()).unwrap();
        let f_big = fidelity(&join(n1), &join(n2)).unwrap();
        prop_assert!((f_small - f_big).abs() < 1e-9);
    }

    // D ≥ −ln F: relative entropy dominates the order-1/2 Rényi divergence
    #[test]
    fn relative_entropy_dominates_log_fidelity(
        eta in 0.05f64..0.95,
        nb1 in 0.05f64..2.0,
        shift in 0.05f64..2.0,
        n_s in 0.0f64..30.0,
    ) {
        let (s1, s2) = probe_pair(eta, nb1, nb1 + shift, n_s);
        let d = relative_entropy(&s1, &s2).unwrap();
        let f = fidelity(&s1, &s2).unwrap();
        prop_assert!(d >= -f.ln() - 1e-9);
    }

    #[test]
    fn fidelity_is_symmetric_and_bounded(
        eta in 0.05f64..0.95,
        nb1 in 0.0f64..2.0,
        nb2 in 0.0f64..2.0,
        n_s in 0.0f64..50.0,
    ) {
        let (s1, s2) = probe_pair(eta, nb1, nb2, n_s);
        let f12 = fidelity(&s1, &s2).unwrap();
        let f21 = fidelity(&s2, &s1).unwrap();
        prop_assert!((0.0..=1.0).contains(&f12));
        prop_assert!((f12 - f21).abs() < 1e-9);
    }

    // the two finite-difference estimators agree to O(δ²): halving the step
    // must cut their split by roughly four
    #[test]
    fn qfi_estimator_split_shrinks_quadratically(
        nb in 0.5f64..3.0,
        delta in 0.05f64..0.2,
    ) {
        let family = |n: f64| thermal_state(n);
        let coarse = qfi_finite_difference(family, nb, delta).unwrap();
        let fine = qfi_finite_difference(family, nb, delta / 2.0).unwrap();
        let split = |e: &noisebound::divergences::QfiEstimate| (e.from_sqrt - e.from_log).abs();
        prop_assert!(split(&coarse) > 0.0);
        prop_assert!(split(&fine) < 0.5 * split(&coarse) + 1e-9);
    }

    #[test]
    fn williamson_round_trips_on_probe_outputs(
        eta in 0.05f64..0.95,
        nb in 0.0f64..3.0,
        n_s in 0.0f64..100.0,
    ) {
        let st = probe_output(&ChannelSpec::thermal(eta, nb).unwrap(), n_s).unwrap();
        let w = williamson(st.cov()).unwrap();
        let mut diag = Array2::zeros((4, 4));
        for (j, &nu) in w.nus.iter().enumerate() {
            diag[[j, j]] = nu;
            diag[[2 + j, 2 + j]] = nu;
        }
        let resid = linalg::max_abs_diff(&w.s.mat().dot(st.cov()).dot(&w.s.mat().t()), &diag);
        prop_assert!(resid < 1e-9 * linalg::max_abs(st.cov()).max(1.0));
        let direct = symplectic_eigenvalues(st.cov()).unwrap();
        for (a, b) in w.nus.iter().zip(&direct) {
            prop_assert!((a - b).abs() < 1e-9 * b.max(1.0));
        }
        // physicality and the purity boundary
        prop_assert!(w.nus.iter().all(|&nu| nu >= 0.5 - 1e-9));
    }

    #[test]
    fn purifications_are_pure_and_their_marginals_thermal(n_s in 0.0f64..200.0) {
        let s = tmsv(n_s).unwrap();
        for nu in s.symplectic_eigenvalues().unwrap() {
            prop_assert!((nu - 0.5).abs() < 1e-8 * (1.0 + n_s));
        }
        let arm = marginal(&s, &[0]).unwrap();
        prop_assert!((arm.cov()[[0, 0]] - (n_s + 0.5)).abs() < 1e-12 * (1.0 + n_s));
    }

    // classical data processing: counting one mode of the probe can never
    // distinguish better than holding the environment pair itself
    #[test]
    fn strategy_respects_data_processing(
        eta in 0.0f64..0.95,
        nb1 in 0.01f64..1.5,
        shift in 0.1f64..1.5,
        n_s in 0.0f64..500.0,
        m in 1u32..60,
        eps in 0.02f64..0.9,
    ) {
        let spec = StrategySpec::new(
            ChannelSpec::thermal(eta, nb1).unwrap(),
            ChannelSpec::thermal(eta, nb1 + shift).unwrap(),
            ProbeSpec::new(n_s, m).unwrap(),
            eps,
        )
        .unwrap();
        let r = bound_gap_report(&spec, n_s).unwrap();
        prop_assert!(r.gap >= -1e-9);
        prop_assert!(r.n_eff_1 < r.n_eff_2);
    }

    // the engine's type-II exponent is monotone in the budget: more allowed
    // type-I error can only shrink β
    #[test]
    fn np_power_is_monotone_in_epsilon(
        m in 1u64..40,
        n1 in 0.0f64..3.0,
        shift in 0.1f64..3.0,
        eps in 0.05f64..0.8,
    ) {
        let n2 = n1 + shift;
        let loose = exact_binary_test(m, n1, n2, eps + 0.1).unwrap();
        let tight = exact_binary_test(m, n1, n2, eps).unwrap();
        prop_assert!(loose.dh >= tight.dh - 1e-9);
    }

    #[test]
    fn renyi_approaches_relative_entropy(
        n1 in 0.05f64..3.0,
        shift in 0.1f64..2.0,
    ) {
        let pair = ThermalPair::new(n1, n1 + shift).unwrap();
        let d = thermal_divergences(pair).unwrap().d;
        for alpha in [1.0 - 1e-6, 1.0 + 1e-6] {
            let r = renyi_thermal(alpha, pair).unwrap();
            prop_assert!((r - d).abs() < 1e-4 * (1.0 + d));
        }
        // monotone in α across the computed orders
        let lo = renyi_thermal(0.5, pair).unwrap();
        let hi = renyi_thermal(2.0, pair).unwrap();
        prop_assert!(lo <= d + 1e-12 && d <= hi + 1e-12);
    }
}
