//! Exercises the C surface from Rust: status discipline, handle lifecycle,
//! agreement with the underlying library.

use std::ffi::CStr;
use std::ptr;

use noisebound::channels::{probe_output, ChannelSpec};
use noisebound::divergences::fidelity;
use noisebound_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(nb_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

unsafe fn thermal_channel(eta: f64, n_b: f64) -> *mut NbChannel {
    let mut c = ptr::null_mut();
    assert_eq!(nb_channel_thermal(eta, n_b, &mut c), NbStatus::Ok);
    assert!(!c.is_null());
    c
}

#[test]
fn version_is_a_nonempty_c_string() {
    let v = unsafe { CStr::from_ptr(nb_version()) };
    assert!(!v.to_bytes().is_empty());
}

#[test]
fn handle_round_trip_reproduces_the_covariance() {
    unsafe {
        let c = thermal_channel(0.6, 0.1);
        let mut s = ptr::null_mut();
        assert_eq!(nb_probe_output(c, 0.5, &mut s), NbStatus::Ok);

        let mut modes = 0usize;
        assert_eq!(nb_state_mode_count(s, &mut modes), NbStatus::Ok);
        assert_eq!(modes, 2);

        let mut cov = [0.0f64; 16];
        assert_eq!(nb_state_covariance(s, cov.as_mut_ptr(), cov.len()), NbStatus::Ok);
        let expect = probe_output(&ChannelSpec::thermal(0.6, 0.1).unwrap(), 0.5).unwrap();
        for (k, &x) in expect.cov().iter().enumerate() {
            assert_eq!(cov[k], x);
        }

        // wrong buffer size is refused before any write
        assert_eq!(nb_state_covariance(s, cov.as_mut_ptr(), 9), NbStatus::NullPointer);
        assert!(last_error().contains("16"));

        nb_state_free(s);
        nb_channel_free(c);
    }
}

#[test]
fn divergences_agree_with_the_library_in_process() {
    unsafe {
        let c1 = thermal_channel(0.6, 0.1);
        let c2 = thermal_channel(0.6, 0.3);
        let (mut s1, mut s2) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(nb_probe_output(c1, 0.5, &mut s1), NbStatus::Ok);
        assert_eq!(nb_probe_output(c2, 0.5, &mut s2), NbStatus::Ok);

        let mut f = 0.0;
        assert_eq!(nb_fidelity(s1, s2, &mut f), NbStatus::Ok);
        let g1 = probe_output(&ChannelSpec::thermal(0.6, 0.1).unwrap(), 0.5).unwrap();
        let g2 = probe_output(&ChannelSpec::thermal(0.6, 0.3).unwrap(), 0.5).unwrap();
        assert_eq!(f, fidelity(&g1, &g2).unwrap());

        let (mut d, mut dv) = (0.0, 0.0);
        assert_eq!(nb_relative_entropy(s1, s2, &mut d), NbStatus::Ok);
        assert_eq!(nb_relative_entropy_variance(s1, s2, &mut dv), NbStatus::Ok);
        assert!(d > 0.0 && dv > 0.0);

        nb_state_free(s1);
        nb_state_free(s2);
        nb_channel_free(c1);
        nb_channel_free(c2);
    }
}

#[test]
fn thermal_closed_forms_hit_known_values() {
    unsafe {
        let (mut d, mut v, mut f) = (0.0, 0.0, 0.0);
        assert_eq!(nb_thermal_divergences(1.0, 2.0, &mut d, &mut v, &mut f), NbStatus::Ok);
        assert!((d - (9.0f64 / 8.0).ln()).abs() < 1e-15);
        assert!((f - 0.9330127018922199).abs() < 1e-15);

        let mut q = 0.0;
        assert_eq!(nb_qfi_thermal(1.0, &mut q), NbStatus::Ok);
        assert_eq!(q, 0.5);

        let mut cr = 0.0;
        assert_eq!(nb_cramer_rao(4, 1.0, &mut cr), NbStatus::Ok);
        assert_eq!(cr, 0.5);
    }
}

#[test]
fn binary_test_matches_the_frozen_optimum() {
    unsafe {
        let mut t = std::mem::zeroed::<NbBinaryTest>();
        assert_eq!(nb_exact_binary_test(100, 1.0, 2.0, 0.05, &mut t), NbStatus::Ok);
        assert_eq!(t.threshold, 124);
        assert!(t.accept_below);
        assert!((t.randomization - 0.5923030552474269).abs() < 1e-12);
        assert!((t.dh - 8.251593064569147).abs() < 1e-9);
        assert_eq!(t.size, 0.05);
    }
}

#[test]
fn bound_gap_reproduces_the_strategy_report() {
    unsafe {
        let c1 = thermal_channel(0.5, 0.1);
        let c2 = thermal_channel(0.5, 0.3);
        let mut r = std::mem::zeroed::<NbStrategyReport>();
        assert_eq!(nb_bound_gap(c1, c2, 1000.0, 50, 0.1, &mut r), NbStatus::Ok);
        assert!(r.gap > 0.0);
        assert!(r.dh_strategy <= r.dh_environment);

        let mut n_eff = 0.0;
        assert_eq!(nb_effective_thermal_mean(c1, 1000.0, 0.1, &mut n_eff), NbStatus::Ok);
        assert_eq!(n_eff, r.n_eff_1);

        let mut so = 0.0;
        assert_eq!(nb_second_order_dh(50, 0.1, 0.05, 0.1, &mut so), NbStatus::Ok);
        assert!((so - (50.0 * 0.1 + (50.0f64 * 0.05).sqrt() * -1.2815515655446004)).abs() < 1e-9);

        nb_channel_free(c1);
        nb_channel_free(c2);
    }
}

#[test]
fn failures_set_the_status_and_the_message() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(nb_channel_thermal(1.5, 0.1, &mut c), NbStatus::InvalidArgument);
        assert!(c.is_null(), "out pointer untouched on failure");
        assert!(last_error().contains("1.5"), "{}", last_error());

        // vacuum alternative at high order diverges
        let mut r = 0.0;
        assert_eq!(nb_renyi_thermal(2.0, 0.2, 0.0, &mut r), NbStatus::Divergent);

        // relative entropy against a pure state is infinite
        let (mut s1, mut s2) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(nb_state_thermal(0.5, &mut s1), NbStatus::Ok);
        assert_eq!(nb_state_thermal(0.0, &mut s2), NbStatus::Ok);
        let mut d = 0.0;
        assert_eq!(nb_relative_entropy(s1, s2, &mut d), NbStatus::Unphysical);

        // mismatched mode counts
        let mut pair = ptr::null_mut();
        assert_eq!(nb_state_tmsv(1.0, &mut pair), NbStatus::Ok);
        let mut f = 0.0;
        assert_eq!(nb_fidelity(s1, pair, &mut f), NbStatus::InvalidArgument);

        // null pointers are reported, not dereferenced
        assert_eq!(nb_fidelity(ptr::null(), pair, &mut f), NbStatus::NullPointer);
        assert_eq!(nb_qfi_thermal(1.0, ptr::null_mut()), NbStatus::NullPointer);

        nb_state_free(s1);
        nb_state_free(s2);
        nb_state_free(pair);
        // frees ignore NULL
        nb_state_free(ptr::null_mut());
        nb_channel_free(ptr::null_mut());
    }
}
