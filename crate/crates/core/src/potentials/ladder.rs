use super::{grid_overlap, GridFunction, Potential};
use crate::error::{Error, Result};
use crate::hydrogen::{Channel, Direction};

/// Grid rung `F_j` for `j = 0..=3` from the explicit first-order forms.
///
/// With `c = l+1` (plus) or `-l` (minus):
/// `F_0 = rho u`, `F_1 = 2(c/rho - d)u`, `F_2 = 4 v0' u`,
/// `F_3 = 8(c v0'/rho^2 - v0'''/2 - v0'' d)u`.
pub fn grid_f_ladder(state: &GridFunction, v0: &Potential, channel: &Channel, j: u32) -> Result<GridFunction> {
    let l = state.l;
    let c = match channel.direction {
        Direction::Plus => f64::from(l) + 1.0,
        Direction::Minus => -f64::from(l),
    };
    // v0' ~ rho^(g-1), so F_2 ~ rho^(g+l) and F_3 ~ rho^(g+l-2) at the origin.
    let g = v0.gamma_f64().unwrap_or(0.0);
    let origin_exponent = match j {
        0 | 1 => f64::from(l),
        2 => g + f64::from(l),
        3 => g + f64::from(l) - 2.0,
        _ => return Err(Error::InvalidOrder(i64::from(j))),
    };
    if origin_exponent < 0.0 {
        return Err(Error::SingularDerivative(format!("F_{j} for {v0}, l={l}")));
    }
    let rho = state.rho();
    let u = &state.values;
    let values: Vec<f64> = match j {
        0 => u.iter().zip(rho).map(|(u, r)| r * u).collect(),
        1 => {
            let du = state.derivative();
            (0..u.len()).map(|i| 2.0 * (c / rho[i] * u[i] - du[i])).collect()
        }
        2 => (0..u.len()).map(|i| 4.0 * v0.derivative(1, rho[i]) * u[i]).collect(),
        _ => {
            let du = state.derivative();
            (0..u.len())
                .map(|i| {
                    let r = rho[i];
                    let (d1, d2, d3) = (v0.derivative(1, r), v0.derivative(2, r), v0.derivative(3, r));
                    8.0 * ((c * d1 / (r * r) - 0.5 * d3) * u[i] - d2 * du[i])
                })
                .collect()
        }
    };
    Ok(state.with_values(values))
}

/// Channel sum rule `weight <F_K|F_(J-K)>` with `K = J/2`, for `J = 0..=6`.
pub fn grid_sum_rule(state: &GridFunction, v0: &Potential, channel: &Channel, order: u32) -> Result<f64> {
    let k = order / 2;
    let a = grid_f_ladder(state, v0, channel, k)?;
    let b = grid_f_ladder(state, v0, channel, order - k)?;
    Ok(channel.weight_f64() * grid_overlap(&a, &b))
}

/// Sum of [`grid_sum_rule`] over the open channels.
pub fn grid_sum_rule_total(state: &GridFunction, v0: &Potential, order: u32) -> Result<f64> {
    Channel::all(state.l).iter().map(|ch| grid_sum_rule(state, v0, ch, order)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, to_f64};
    use crate::hydrogen::bound_state;
    use crate::ladder::build_f_ladder;
    use crate::potentials::solve_bound;

    #[test]
    fn oscillator_first_orders() {
        let v = Potential::PowerLaw(int(2));
        let s = solve_bound(&v, 0, 0).unwrap();
        assert!((grid_sum_rule_total(&s, &v, 1).unwrap() - 1.0).abs() < 1e-6);
        assert!((grid_sum_rule_total(&s, &v, 2).unwrap() - 2.0).abs() < 1e-6);
    }

    #[test]
    fn coulomb_ground_matches_exact_ladder() {
        let s = solve_bound(&Potential::Coulomb, 0, 0).unwrap();
        let ch = Channel::plus(0);
        let fam = build_f_ladder(&bound_state(1, 0).unwrap(), &ch, 1).unwrap();
        for (j, k) in [(0, 0), (0, 1), (1, 1)] {
            let a = grid_f_ladder(&s, &Potential::Coulomb, &ch, j).unwrap();
            let b = grid_f_ladder(&s, &Potential::Coulomb, &ch, k).unwrap();
            let exact = to_f64(&fam.pairing(i64::from(j), i64::from(k)).unwrap());
            assert!((grid_overlap(&a, &b) - exact).abs() < 1e-6, "({j},{k})");
        }
    }

    #[test]
    fn coulomb_s_state_second_rung_is_singular() {
        let s = solve_bound(&Potential::Coulomb, 0, 0).unwrap();
        let err = grid_f_ladder(&s, &Potential::Coulomb, &Channel::plus(0), 2).unwrap_err();
        assert!(matches!(err, Error::SingularDerivative(_)));
    }
}
