use num_traits::One;
use proptest::prelude::*;
use sumrule_core::exactalg::{apply_h, int, scaled_overlap};
use sumrule_core::hydrogen::{
    bound_bound_z2, bound_free_z2, bound_state, continuum_wave, continuum_z2_1s, ground_to_np_z2, Channel, WaveGrid,
};
use sumrule_core::potentials::Potential;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn bound_states_are_normalized_eigenfunctions(n in 1u32..=30, l_frac in 0.0f64..1.0) {
        let l = ((f64::from(n) * l_frac) as u32).min(n - 1);
        let s = bound_state(n, l).unwrap();
        prop_assert!(scaled_overlap(&s.radial, &s.radial).unwrap().is_one());
        prop_assert!(apply_h(&s.radial.poly, l, &s.ksq, &Potential::Coulomb).unwrap().is_empty());
    }
}

#[test]
fn ground_to_np_closed_form_for_all_n() {
    let ground = bound_state(1, 0).unwrap();
    for n in 2..=200 {
        assert_eq!(bound_bound_z2(&ground, n, &Channel::plus(0)).unwrap(), ground_to_np_z2(n), "n={n}");
    }
}

#[test]
fn degenerate_pair_overlap() {
    let p = bound_state(2, 1).unwrap();
    let minus = Channel::minus(1).unwrap();
    let z2 = bound_bound_z2(&p, 2, &minus).unwrap();
    assert_eq!(z2 / &minus.weight, int(27));
}

#[test]
fn continuum_calibration() {
    let s = bound_state(1, 0).unwrap();
    for q in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let wave = continuum_wave(1, q, WaveGrid::default()).unwrap();
        let z = bound_free_z2(&s, &wave).unwrap();
        assert!((z / continuum_z2_1s(q) - 1.0).abs() < 1e-6, "q={q}");
    }
}
