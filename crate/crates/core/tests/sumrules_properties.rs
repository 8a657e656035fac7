use num_traits::One;
use sumrule_core::exactalg::rational::to_f64;
use sumrule_core::exactalg::{int, rat};
use sumrule_core::hydrogen::{bound_state, Channel};
use sumrule_core::potentials::{grid_sum_rule_total, solve_bound, Potential};
use sumrule_core::sumrules::{closed_form_coulomb, constructive_channel, constructive_total};

const STATES: [(u32, u32); 6] = [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)];

#[test]
fn trk_sum_rule() {
    for (n, l) in STATES {
        assert!(constructive_total(&bound_state(n, l).unwrap(), 1).unwrap().is_one(), "({n},{l})");
    }
    for v0 in [Potential::power_law(int(2)).unwrap(), Potential::Log, Potential::power_law(int(1)).unwrap()] {
        for l in 0..=2 {
            let g = solve_bound(&v0, l, 1).unwrap();
            let s1 = grid_sum_rule_total(&g, &v0, 1).unwrap();
            assert!((s1 - 1.0).abs() < 1e-4, "{v0} l={l}: {s1}");
        }
    }
}

#[test]
fn channel_split_of_trk() {
    for (n, l) in STATES {
        let s = bound_state(n, l).unwrap();
        let li = i64::from(l);
        let plus = constructive_channel(&s, &Channel::plus(l), 1).unwrap();
        assert_eq!(plus, rat((li + 1) * (li + 1), 2 * li + 1));
        if l > 0 {
            let minus = constructive_channel(&s, &Channel::minus(l).unwrap(), 1).unwrap();
            assert_eq!(minus, rat(-li * li, 2 * li + 1));
        }
    }
}

#[test]
fn third_order_for_s_states() {
    for m in 1..=5u32 {
        let s3 = constructive_total(&bound_state(m, 0).unwrap(), 3).unwrap();
        assert_eq!(s3, rat(16, 3 * i64::from(m).pow(3)));
    }
}

#[test]
fn constructive_equals_closed_form() {
    for (n, l) in STATES {
        let s = bound_state(n, l).unwrap();
        for j in 0..=4 {
            match (closed_form_coulomb(n, l, j), constructive_total(&s, j)) {
                (Ok(a), Ok(b)) => assert_eq!(a, b, "({n},{l}) J={j}"),
                (Err(_), Err(_)) => {}
                other => panic!("({n},{l}) J={j}: {other:?}"),
            }
        }
    }
}

/// Successive negative orders approach the nearest-level ratio 4/3 from below, monotonically;
/// the slowest correction decays as (27/32)^J.
#[test]
fn negative_order_ratio_increases_toward_four_thirds() {
    let s = bound_state(1, 0).unwrap();
    let values: Vec<f64> = (1..=24).map(|j| to_f64(&constructive_total(&s, -j).unwrap())).collect();
    let ratios: Vec<f64> = values.windows(2).map(|w| w[1] / w[0]).collect();
    assert!(ratios.windows(2).all(|r| r[0] < r[1] && r[1] < 4.0 / 3.0));
    assert!((ratios.last().unwrap() - 4.0 / 3.0).abs() < 1e-3);
}
