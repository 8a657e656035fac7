use crate::error::{Error, Result};
use crate::exactalg::rational::{int, rat};
use crate::exactalg::Rational;
use crate::hydrogen::check_quantum_numbers;
use crate::potentials::{grid_expectation, GridFunction, Potential};

/// `(2 lambda - 1)/(4 lambda - 3)`, the angular average shared by the even orders.
fn angular_factor(l: u32) -> Rational {
    let lam = i64::from(l) * (i64::from(l) + 1);
    rat(2 * lam - 1, 4 * lam - 3)
}

/// Coulomb totals for `J = 0..=4` in terms of `m` and `lambda = l(l+1)`.
///
/// The odd-order forms carry `1/sqrt(4 lambda + 1) = 1/(2l+1)`.
pub fn closed_form_coulomb(n: u32, l: u32, order: i64) -> Result<Rational> {
    check_quantum_numbers(n, l)?;
    let (m, li) = (i64::from(n), i64::from(l));
    let lam = li * (li + 1);
    let a = angular_factor(l);
    match order {
        0 => Ok(rat(m * m * (5 * m * m + 1 - 3 * lam), 2) * a),
        1 => Ok(int(1)),
        2 => Ok(rat(4, m * m) * a),
        3 => Ok(rat(-16, m * m * m * (4 * lam - 3) * (2 * li + 1))),
        4 if l >= 1 => {
            let lead = rat(64 * (3 * m * m - lam), m * m * m * m * m);
            Ok(lead * rat(2 * lam - 1, lam * (4 * lam - 3) * (4 * lam - 3) * (2 * li + 1)))
        }
        _ => Err(Error::InvalidOrder(order)),
    }
}

/// The odd-order Coulomb forms with `1/sqrt(4 lambda^2 + 1)` as typeset; kept as a negative control.
pub fn closed_form_coulomb_printed(n: u32, l: u32, order: i64) -> Result<f64> {
    let corrected = crate::exactalg::rational::to_f64(&closed_form_coulomb(n, l, order)?);
    let lam = f64::from(l * (l + 1));
    match order {
        3 | 4 => Ok(corrected * f64::from(2 * l + 1) / (4.0 * lam * lam + 1.0).sqrt()),
        _ => Ok(corrected),
    }
}

/// `<rho^p>` on a grid state, rejecting powers that are not integrable against `u^2 ~ rho^(2l+2)`.
fn integrable_power(state: &GridFunction, p: f64) -> Result<f64> {
    if p + 2.0 * f64::from(state.l) + 2.0 <= -1.0 {
        return Err(Error::DivergentExpectation(format!("<rho^{p}> for l={}", state.l)));
    }
    Ok(grid_expectation(state, |r| r.powf(p)))
}

/// Total sum rules of order 0..=4 for the power-law family and the logarithm.
pub fn closed_form_power_law(state: &GridFunction, v0: &Potential, order: i64) -> Result<f64> {
    let a = crate::exactalg::rational::to_f64(&angular_factor(state.l));
    let lam = f64::from(state.l * (state.l + 1));
    match (v0, order) {
        (_, 0) => Ok(a * integrable_power(state, 2.0)?),
        (_, 1) => Ok(1.0),
        (Potential::Log, 2) => Ok(4.0 * a),
        (Potential::Log, 3) => Ok(4.0 / (3.0 - 4.0 * lam) * integrable_power(state, -2.0)?),
        (Potential::Log, 4) => Ok(16.0 * a * integrable_power(state, -2.0)?),
        (_, 2) => {
            // Virial theorem: <rho v0'> = gamma <v0> = 2 gamma eps / (gamma + 2).
            let g = v0.gamma_f64().unwrap();
            Ok(4.0 * a * 2.0 * g / (g + 2.0) * state.energy)
        }
        (_, 3) => {
            let g = v0.gamma_f64().unwrap();
            Ok(4.0 * (a * (g - 2.0) + 1.0) * integrable_power(state, g - 2.0)?)
        }
        (_, 4) => {
            let g = v0.gamma_f64().unwrap();
            Ok(16.0 * a * integrable_power(state, 2.0 * g - 2.0)?)
        }
        _ => Err(Error::InvalidOrder(order)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::{grid_sum_rule_total, solve_bound};
    use crate::sumrules::constructive_total;
    use crate::hydrogen::bound_state;

    #[test]
    fn coulomb_examples() {
        assert_eq!(closed_form_coulomb(2, 0, 0).unwrap(), int(14));
        assert_eq!(closed_form_coulomb(2, 1, 3).unwrap(), rat(-2, 15));
        assert_eq!(closed_form_coulomb(2, 1, 4).unwrap(), rat(2, 5));
        assert_eq!(closed_form_coulomb(1, 0, 2).unwrap(), rat(4, 3));
        assert_eq!(closed_form_coulomb(1, 0, 4).unwrap_err(), Error::InvalidOrder(4));
    }

    #[test]
    fn coulomb_closed_forms_match_ladders() {
        for (n, l) in [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2), (4, 3), (5, 2)] {
            let s = bound_state(n, l).unwrap();
            let top = if l == 0 { 3 } else { 4 };
            for j in 0..=top {
                assert_eq!(constructive_total(&s, j).unwrap(), closed_form_coulomb(n, l, j).unwrap(), "({n},{l}) J={j}");
            }
        }
    }

    #[test]
    fn printed_variant_misses_two_p() {
        let s3 = closed_form_coulomb_printed(2, 1, 3).unwrap();
        assert!((s3 + 2.0 / 15.0).abs() > 1e-3);
        // Both agree when lambda = 0.
        assert_eq!(closed_form_coulomb_printed(2, 0, 3).unwrap(), 2.0 / 3.0);
    }

    #[test]
    fn oscillator_matches_grid_ladders() {
        let v = Potential::PowerLaw(int(2));
        for l in [0, 1, 2] {
            let s = solve_bound(&v, l, 0).unwrap();
            for j in 0..=4 {
                let ladder = grid_sum_rule_total(&s, &v, j as u32).unwrap();
                let closed = closed_form_power_law(&s, &v, j).unwrap();
                assert!((ladder - closed).abs() < 1e-5 * closed.abs().max(1.0), "l={l} J={j}: {ladder} vs {closed}");
            }
        }
        let s = solve_bound(&v, 0, 0).unwrap();
        assert!((closed_form_power_law(&s, &v, 2).unwrap() - 2.0).abs() < 1e-8);
        let r2 = grid_expectation(&s, |r| r * r);
        assert!((closed_form_power_law(&s, &v, 4).unwrap() - 16.0 / 3.0 * r2).abs() < 1e-9);
    }

    #[test]
    fn log_orders_three_and_four_are_proportional() {
        for l in [0u32, 1, 2] {
            let s = solve_bound(&Potential::Log, l, 1).unwrap();
            let s3 = closed_form_power_law(&s, &Potential::Log, 3).unwrap();
            let s4 = closed_form_power_law(&s, &Potential::Log, 4).unwrap();
            let lam = f64::from(l * (l + 1));
            assert!((s4 / s3 - 4.0 * (1.0 - 2.0 * lam)).abs() < 1e-12);
        }
    }
}
