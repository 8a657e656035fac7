use num_traits::Zero;
use sumrule_core::exactalg::rational::{rat, to_f64};
use sumrule_core::exactalg::{apply_h, overlap};
use sumrule_core::hydrogen::{bound_state, Channel};
use sumrule_core::ladder::{greens_negative_order, wronskian_at_origin, LadderFamily, WronskianLimit};
use sumrule_core::potentials::Potential;
use sumrule_core::sumrules::constructive_channel;
use sumrule_core::Error;

fn families() -> Vec<LadderFamily> {
    let mut out = Vec::new();
    for (n, l) in [(1, 0), (2, 0), (2, 1), (3, 1), (3, 2)] {
        for ch in Channel::all(l) {
            out.push(LadderFamily::new(&bound_state(n, l).unwrap(), &ch).unwrap());
        }
    }
    out
}

#[test]
fn negative_chain_is_exact() {
    for mut fam in families() {
        fam.extend_negative(4).unwrap();
        let l = fam.target_l();
        let ksq = fam.state.ksq.clone();
        for j in 1..=4 {
            let below = fam.g_rung(j - 1).unwrap().clone();
            let g = fam.g_rung(j).unwrap();
            assert_eq!(g.norm_sq, below.norm_sq);
            let image = apply_h(&g.poly, l, &ksq, &Potential::Coulomb).unwrap();
            // The image is the projected lower rung.
            let residual = match &fam.homogeneous {
                Some(h) => {
                    image.sub(&below.project_out(h).unwrap().poly).unwrap()
                }
                None => image.sub(&below.poly).unwrap(),
            };
            assert!(residual.is_empty(), "n={} {:?} j={j}", fam.state.n, fam.channel.direction);
        }
    }
}

#[test]
fn degenerate_channels_are_orthogonal() {
    for mut fam in families() {
        let Some(h) = fam.homogeneous.clone() else { continue };
        fam.extend_positive(2).unwrap();
        fam.extend_negative(3).unwrap();
        for j in 1..=2 {
            // Irrational joint norms cannot change a zero, so compare the bare polynomials.
            assert!(overlap(&h.poly, &fam.positive[j].poly).unwrap().is_zero());
        }
        for j in 0..=3 {
            assert!(overlap(&h.poly, &fam.g_rung(j).unwrap().poly).unwrap().is_zero());
        }
    }
}

/// Every split of orders up to 4 either agrees with its neighbour up to the origin Wronskian or diverges.
#[test]
fn pairings_differ_only_by_boundary_terms() {
    for (n, l) in [(1, 0), (2, 0), (2, 1)] {
        for ch in Channel::all(l) {
            let mut fam = LadderFamily::new(&bound_state(n, l).unwrap(), &ch).unwrap();
            fam.extend_positive(4).unwrap();
            for order in 1..=4i64 {
                for j in 0..order {
                    let a = fam.pairing(j, order - j);
                    let b = fam.pairing(j + 1, order - j - 1);
                    match (a, b, wronskian_at_origin(&fam, j, order - j - 1).unwrap()) {
                        (Ok(a), Ok(b), WronskianLimit::Finite(w)) => assert_eq!(a, b + w.value),
                        (Err(Error::DivergentAtOrigin(_)), _, _) | (_, Err(Error::DivergentAtOrigin(_)), _) => {}
                        other => panic!("({n},{l}) J={order} j={j}: {other:?}"),
                    }
                }
            }
        }
    }
}

#[test]
fn greens_function_route_matches_exact_ladder() {
    let s = bound_state(1, 0).unwrap();
    for j in 1..=4 {
        let exact = to_f64(&constructive_channel(&s, &Channel::plus(0), -j).unwrap());
        let green = greens_negative_order(j as usize).unwrap();
        assert!((green - exact).abs() < 1e-8 * exact, "j={j}: {green} vs {exact}");
    }
}

/// P states, plus channel, fourth order: the (1,2) boundary term vanishes and the (0,3)
/// term is 160(m^2-1)/(3m^5), derived here from the Laurent data alone.
#[test]
fn p_plus_fourth_order_boundary_term() {
    for m in 2..=6i64 {
        let mut fam = LadderFamily::new(&bound_state(m as u32, 1).unwrap(), &Channel::plus(1)).unwrap();
        fam.ensure_order(4).unwrap();
        let w12 = wronskian_at_origin(&fam, 1, 2).unwrap();
        let w03 = wronskian_at_origin(&fam, 0, 3).unwrap();
        assert!(w12.value().unwrap().is_zero(), "m={m}");
        assert_eq!(w03.value(), Some(&rat(-160 * (m * m - 1), 3 * m.pow(5))), "m={m}");
        let (p22, p13, p04) = (fam.pairing(2, 2).unwrap(), fam.pairing(1, 3).unwrap(), fam.pairing(0, 4).unwrap());
        assert_eq!(p22, p13);
        assert_eq!(p13, p04 - w03.value().unwrap());
    }
}
