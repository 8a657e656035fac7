use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::rational::{int, rat, to_f64};
use crate::exactalg::{moment, overlap, PolyExp, Rational};
use crate::hydrogen::{expectation_rho_power, BoundState};
use crate::potentials::{grid_expectation, GridFunction, Potential};

/// Test functions `f` for the generalized Kramers identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FChoice {
    Const,
    Rho,
    Rho2,
    Rho3,
    RSquared,
    V0,
    V0Prime,
    RhoV0DoublePrime,
}

impl FChoice {
    pub const ALL: [FChoice; 8] = [
        FChoice::Const,
        FChoice::Rho,
        FChoice::Rho2,
        FChoice::Rho3,
        FChoice::RSquared,
        FChoice::V0,
        FChoice::V0Prime,
        FChoice::RhoV0DoublePrime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FChoice::Const => "const",
            FChoice::Rho => "rho",
            FChoice::Rho2 => "rho^2",
            FChoice::Rho3 => "rho^3",
            FChoice::RSquared => "R^2",
            FChoice::V0 => "v0",
            FChoice::V0Prime => "v0'",
            FChoice::RhoV0DoublePrime => "rho v0''",
        }
    }
}

/// Exact Coulomb state or numerically solved state.
#[derive(Clone, Copy, Debug)]
pub enum StateRef<'a> {
    Exact(&'a BoundState),
    Grid(&'a GridFunction),
}

impl StateRef<'_> {
    pub fn l(&self) -> u32 {
        match self {
            StateRef::Exact(s) => s.l,
            StateRef::Grid(g) => g.l,
        }
    }
}

type Laurent = BTreeMap<i32, Rational>;

fn add_term(map: &mut Laurent, power: i32, c: Rational) {
    let slot = map.entry(power).or_insert_with(Rational::zero);
    *slot += c;
}

/// `d^k/drho^k (-1/rho) = (-1)^(k+1) k! rho^(-k-1)` as `(coefficient, power)`.
fn coulomb_derivative(k: u32) -> (Rational, i32) {
    let fact: i64 = (1..=i64::from(k)).product();
    let sign = if k.is_multiple_of(2) { -1 } else { 1 };
    (int(sign * fact), -(k as i32) - 1)
}

/// `<sum c_p rho^p>`; powers the state cannot integrate are reported as divergent.
fn exact_expectation(state: &BoundState, map: &Laurent) -> Result<Rational> {
    let mut total = Rational::zero();
    for (&p, c) in map {
        if c.is_zero() {
            continue;
        }
        total += c * expectation_rho_power(state, p).map_err(|_| {
            Error::DivergentExpectation(format!("<rho^{p}> for n={}, l={}", state.n, state.l))
        })?;
    }
    Ok(total)
}

/// `C_l^2` with `u -> C_l rho^(l+1)` at the origin.
pub fn exact_origin_coefficient_sq(state: &BoundState) -> Rational {
    let c = state.radial.poly.coefficient(state.l as i32 + 1);
    &c * &c * &state.radial.norm_sq
}

/// `(b, q)` of `f -> b rho^q` at the origin; `None` when `f` has no power-law onset.
fn origin_behaviour(f: FChoice, v0: &Potential) -> Option<(f64, f64)> {
    let g = v0.gamma_f64().unwrap_or(0.0);
    match f {
        FChoice::Const => Some((1.0, 0.0)),
        FChoice::Rho => Some((1.0, 1.0)),
        FChoice::Rho2 => Some((1.0, 2.0)),
        FChoice::Rho3 => Some((1.0, 3.0)),
        FChoice::RSquared => None,
        FChoice::V0 => v0.origin_power(),
        FChoice::V0Prime => Some((1.0, g - 1.0)),
        FChoice::RhoV0DoublePrime => Some((g - 1.0, g - 1.0)),
    }
}

/// Applies the integrability rule `q + 2l >= 0` and returns the origin delta term `(b/2) C^2 (2l+1)^2`.
fn delta_weight(f: FChoice, v0: &Potential, l: u32) -> Result<Option<f64>> {
    let lf = f64::from(l);
    if f == FChoice::V0 && *v0 == Potential::Log && l == 0 {
        return Err(Error::DivergentExpectation("f = log rho with l = 0".into()));
    }
    match origin_behaviour(f, v0) {
        Some((_, q)) if q + 2.0 * lf < -1e-12 => {
            Err(Error::DivergentExpectation(format!("f ~ rho^{q} with l={l}")))
        }
        Some((b, q)) if (q + 2.0 * lf).abs() <= 1e-12 => Ok(Some(0.5 * b * (2.0 * lf + 1.0).powi(2))),
        _ => Ok(None),
    }
}

/// Left side minus right side of the generalized Kramers identity
/// `-<f'''>/4 + k^2 <f'> + <(v0 f^2)'/f> + lambda <(f/rho)'/rho> = (b/2) C^2 (2l+1)^2 delta(q, -2l)`.
pub fn kramers_general(state: StateRef<'_>, v0: &Potential, f: FChoice) -> Result<f64> {
    match state {
        StateRef::Exact(s) => kramers_general_exact(s, v0, f).map(|r| to_f64(&r)),
        StateRef::Grid(g) => kramers_general_grid(g, v0, f),
    }
}

/// Exact residual for a Coulomb eigenstate.
pub fn kramers_general_exact(state: &BoundState, v0: &Potential, f: FChoice) -> Result<Rational> {
    if *v0 != Potential::Coulomb {
        return Err(Error::InvalidPotential(format!("exact states are Coulomb, got {v0}")));
    }
    let l = state.l;
    let lam = int(i64::from(l) * (i64::from(l) + 1));
    if f == FChoice::RSquared {
        return r_squared_exact(state, &lam);
    }
    let delta = delta_weight(f, v0, l)?;
    // Every other choice is a single monomial b rho^q for the Coulomb potential.
    let (b, q) = match f {
        FChoice::Const => (int(1), 0),
        FChoice::Rho => (int(1), 1),
        FChoice::Rho2 => (int(1), 2),
        FChoice::Rho3 => (int(1), 3),
        FChoice::V0 => coulomb_derivative(0),
        FChoice::V0Prime => coulomb_derivative(1),
        FChoice::RhoV0DoublePrime => {
            let (c, p) = coulomb_derivative(2);
            (c, p + 1)
        }
        FChoice::RSquared => unreachable!(),
    };
    let qr = int(i64::from(q));
    let mut w = Laurent::new();
    // -f'''/4 + lambda (f'/rho^2 - f/rho^3) share the power q - 3.
    let third = &b * &qr * (&qr - int(1)) * (&qr - int(2));
    add_term(&mut w, q - 3, -third / int(4) + &lam * &b * (&qr - int(1)));
    add_term(&mut w, q - 1, &state.ksq * &b * &qr);
    // v0' f + 2 v0 f' with v0 = -1/rho.
    add_term(&mut w, q - 2, &b - int(2) * &b * &qr);
    w.retain(|_, c| !c.is_zero());
    let lhs = exact_expectation(state, &w)?;
    let rhs = match delta {
        Some(_) => {
            let two_l1 = int(2 * i64::from(l) + 1);
            &b / int(2) * exact_origin_coefficient_sq(state) * &two_l1 * &two_l1
        }
        None => Rational::zero(),
    };
    Ok(lhs - rhs)
}

/// `f = u^2` is itself an exponential polynomial, so every term is an exact overlap.
fn r_squared_exact(state: &BoundState, lam: &Rational) -> Result<Rational> {
    let p = &state.radial.poly;
    let n = &state.radial.norm_sq;
    let p2 = PolyExp::from_terms(p.laurent_product(p), p.rate() * int(2))?;
    let d1 = p2.differentiate();
    let d3 = d1.differentiate().differentiate();
    let mut total = -overlap(&p2, &d3)? / int(4);
    total += &state.ksq * overlap(&p2, &d1)?;
    total += moment(&p2, &p2, -2)? - int(2) * moment(&p2, &d1, -1)?;
    total += lam * (moment(&p2, &d1, -2)? - moment(&p2, &p2, -3)?);
    Ok(total * n * n)
}

fn kramers_general_grid(state: &GridFunction, v0: &Potential, f: FChoice) -> Result<f64> {
    let l = state.l;
    let lam = f64::from(l * (l + 1));
    let ksq = state.ksq();
    let d = |k: u32, r: f64| v0.derivative(k, r);
    if f == FChoice::RSquared {
        let du = state.derivative();
        let u = &state.values;
        let rho = state.rho();
        let integrand: Vec<f64> = (0..u.len())
            .map(|i| {
                let r = rho[i];
                let q = lam / (r * r) + ksq + 2.0 * d(0, r);
                let dq = -2.0 * lam / (r * r * r) + 2.0 * d(1, r);
                let f0 = u[i] * u[i];
                let f1 = 2.0 * u[i] * du[i];
                let f3 = 8.0 * q * u[i] * du[i] + 2.0 * dq * f0;
                let w = -0.25 * f3 + ksq * f1 + d(1, r) * f0 + 2.0 * d(0, r) * f1 + lam * (f1 / (r * r) - f0 / (r * r * r));
                f0 * w
            })
            .collect();
        return Ok(state.grid.integrate(&integrand));
    }
    let delta = delta_weight(f, v0, l)?;
    // (f, f', f''') for each monomial or potential-derived choice.
    let derivs = move |r: f64| -> (f64, f64, f64) {
        match f {
            FChoice::Const => (1.0, 0.0, 0.0),
            FChoice::Rho => (r, 1.0, 0.0),
            FChoice::Rho2 => (r * r, 2.0 * r, 0.0),
            FChoice::Rho3 => (r * r * r, 3.0 * r * r, 6.0),
            FChoice::V0 => (d(0, r), d(1, r), d(3, r)),
            FChoice::V0Prime => (d(1, r), d(2, r), d(4, r)),
            FChoice::RhoV0DoublePrime => (r * d(2, r), d(2, r) + r * d(3, r), 3.0 * d(4, r) + r * d(5, r)),
            FChoice::RSquared => unreachable!(),
        }
    };
    let lhs = grid_expectation(state, |r| {
        let (f0, f1, f3) = derivs(r);
        -0.25 * f3 + ksq * f1 + d(1, r) * f0 + 2.0 * d(0, r) * f1 + lam * (f1 / (r * r) - f0 / (r * r * r))
    });
    let rhs = delta.map_or(0.0, |w| w * state.origin_coefficient().powi(2));
    Ok(lhs - rhs)
}

/// Three-term recurrence among `<rho^J>`, `<rho^(J-1)>`, `<rho^(J-2)>`; exact residual.
pub fn kramers_recurrence(state: &BoundState, order: i64) -> Result<Rational> {
    let l = i64::from(state.l);
    if order < -2 * l {
        return Err(Error::OutOfValidityRange { j: order, min: -2 * l });
    }
    let j = order as i32;
    let e = |p: i32| expectation_rho_power(state, p);
    let c2 = rat(order * (2 * l + 1 + order) * (2 * l + 1 - order), 4);
    let mut res = int(order + 1) * &state.ksq * e(j)? - int(2 * order + 1) * e(j - 1)?;
    if !c2.is_zero() {
        res += c2 * e(j - 2)?;
    }
    Ok(res)
}

/// `<rho v0'> - 2 <eps - v0>`.
pub fn virial_residual(state: StateRef<'_>, v0: &Potential) -> Result<f64> {
    match state {
        StateRef::Exact(s) => Ok(to_f64(&virial_residual_exact(s)?)),
        StateRef::Grid(g) => {
            let eps = g.energy;
            Ok(grid_expectation(g, |r| r * v0.derivative(1, r) - 2.0 * (eps - v0.v0(r))))
        }
    }
}

/// Coulomb virial residual `<1/rho> - 2<eps + 1/rho>` with `eps = -k^2/2`.
pub fn virial_residual_exact(state: &BoundState) -> Result<Rational> {
    let inv = expectation_rho_power(state, -1)?;
    Ok(&inv + &state.ksq - int(2) * &inv)
}

/// `<dV_eff/drho> - (C_l^2/2) delta(l, 0)`.
pub fn force_rule_residual(state: StateRef<'_>, v0: &Potential) -> Result<f64> {
    match state {
        StateRef::Exact(s) => kramers_general_exact(s, v0, FChoice::Const).map(|r| to_f64(&r)),
        StateRef::Grid(g) => {
            let lam = f64::from(g.l * (g.l + 1));
            let force = grid_expectation(g, |r| v0.derivative(1, r) - lam / (r * r * r));
            let c = if g.l == 0 { 0.5 * g.origin_coefficient().powi(2) } else { 0.0 };
            Ok(force - c)
        }
    }
}

/// `<(v0')^2>` three ways for a Coulomb state: directly, through `f = v0'`, and through `f = rho v0''`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourthOrderForms {
    pub direct: Rational,
    pub via_force_derivative: Rational,
    pub via_curvature: Rational,
}

/// Requires `l >= 1`, where `<rho^-4>` converges.
///
/// The curvature route carries `(b/2) C^2 (2l+1)^3` with `b` taken from `v0' -> b rho^q`:
/// the two single-choice delta terms differ by a factor `2 - gamma`, which equals `2l+1`
/// whenever `q = gamma - 1 = -2l`.
pub fn fourth_order_forms(state: &BoundState) -> Result<FourthOrderForms> {
    let l = i64::from(state.l);
    let lam = int(l * (l + 1));
    let k2 = state.ksq.clone();
    let dv = |k: u32| coulomb_derivative(k);
    let mut direct = Laurent::new();
    let (c1, p1) = dv(1);
    add_term(&mut direct, 2 * p1, &c1 * &c1);

    // -(k^2 + 2 v0 + lambda/rho^2) v0'' + lambda v0'/rho^3 + v0''''/4
    let mut via_f = Laurent::new();
    let (c2, p2) = dv(2);
    let (c4, p4) = dv(4);
    add_term(&mut via_f, p2, -&k2 * &c2);
    add_term(&mut via_f, p2 - 1, int(2) * &c2);
    add_term(&mut via_f, p2 - 2, -&lam * &c2);
    add_term(&mut via_f, p1 - 3, &lam * &c1);
    add_term(&mut via_f, p4, &c4 / int(4));

    // rho [(k^2 + 2v0) v0''' + v0' v0'' + lambda/rho^2 (v0''' - v0''/rho + v0'/rho^2) - v0^(5)/4 - v0''''/(2 rho)]
    let mut via_c = Laurent::new();
    let (c3, p3) = dv(3);
    let (c5, p5) = dv(5);
    add_term(&mut via_c, p3 + 1, &k2 * &c3);
    add_term(&mut via_c, p3, int(-2) * &c3);
    add_term(&mut via_c, p1 + p2 + 1, &c1 * &c2);
    add_term(&mut via_c, p3 - 1, &lam * &c3);
    add_term(&mut via_c, p2 - 2, -&lam * &c2);
    add_term(&mut via_c, p1 - 3, &lam * &c1);
    add_term(&mut via_c, p5 + 1, -&c5 / int(4));
    add_term(&mut via_c, p4, -&c4 / int(2));

    let c_sq = exact_origin_coefficient_sq(state);
    // v0' = rho^-2, so b = 1 and the delta fires only for l = 1.
    let (delta2, delta3) = if l == 1 {
        (&c_sq / int(2) * int(9), &c_sq / int(2) * int(27))
    } else {
        (Rational::zero(), Rational::zero())
    };
    Ok(FourthOrderForms {
        direct: exact_expectation(state, &direct)?,
        via_force_derivative: exact_expectation(state, &via_f)? + delta2,
        via_curvature: exact_expectation(state, &via_c)? + delta3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hydrogen::bound_state;
    use crate::potentials::solve_bound;

    #[test]
    fn virial_is_exact_for_coulomb() {
        for (n, l) in [(1, 0), (2, 0), (2, 1), (3, 2), (5, 4)] {
            let s = bound_state(n, l).unwrap();
            assert!(virial_residual_exact(&s).unwrap().is_zero());
            assert!(kramers_general_exact(&s, &Potential::Coulomb, FChoice::Rho).unwrap().is_zero());
        }
    }

    #[test]
    fn rho_cubed_identity_value() {
        // <3 rho^2 (k^2 + 2 v0) + rho^3 v0'> = -(2l-1)(2l+3)/2 for (2,1).
        let s = bound_state(2, 1).unwrap();
        let k2 = s.ksq.clone();
        let lhs = int(3) * &k2 * expectation_rho_power(&s, 2).unwrap() - int(5) * expectation_rho_power(&s, 1).unwrap();
        assert_eq!(lhs, rat(-5, 2));
        assert!(kramers_general_exact(&s, &Potential::Coulomb, FChoice::Rho3).unwrap().is_zero());
    }

    #[test]
    fn all_choices_close_on_coulomb_states() {
        for (n, l) in [(1, 0), (2, 0), (2, 1), (3, 2), (4, 1)] {
            let s = bound_state(n, l).unwrap();
            for f in FChoice::ALL {
                match kramers_general_exact(&s, &Potential::Coulomb, f) {
                    Ok(r) => assert!(r.is_zero(), "({n},{l}) {f:?}: {r}"),
                    Err(Error::DivergentExpectation(_)) => assert_eq!(l, 0, "({n},{l}) {f:?}"),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn delta_term_for_inverse_square() {
        // f = rho^-2 on 2P: the left side equals (1/2) C^2 9 = 3/16.
        let s = bound_state(2, 1).unwrap();
        assert_eq!(exact_origin_coefficient_sq(&s) * rat(9, 2), rat(3, 16));
        assert!(kramers_general_exact(&s, &Potential::Coulomb, FChoice::V0Prime).unwrap().is_zero());
    }

    #[test]
    fn divergent_choice_is_reported() {
        let s = bound_state(1, 0).unwrap();
        let err = kramers_general_exact(&s, &Potential::Coulomb, FChoice::V0Prime).unwrap_err();
        assert!(matches!(err, Error::DivergentExpectation(_)));
    }

    #[test]
    fn recurrence_examples() {
        let s = bound_state(3, 2).unwrap();
        assert!(kramers_recurrence(&s, -3).unwrap().is_zero());
        let e = |p| expectation_rho_power(&s, p).unwrap();
        assert_eq!(int(5) * e(-4), rat(2, 729));
        assert_eq!(rat(2, 9) * e(-3) + int(12) * e(-5), rat(2, 729));
        let p = bound_state(2, 1).unwrap();
        assert!(kramers_recurrence(&p, 1).unwrap().is_zero());
        assert_eq!(kramers_recurrence(&p, -3).unwrap_err(), Error::OutOfValidityRange { j: -3, min: -2 });
    }

    #[test]
    fn fourth_order_forms_agree() {
        for (n, l) in [(2, 1), (3, 1), (3, 2), (4, 3)] {
            let s = bound_state(n, l).unwrap();
            let f = fourth_order_forms(&s).unwrap();
            assert_eq!(f.direct, f.via_force_derivative, "({n},{l})");
            assert_eq!(f.direct, f.via_curvature, "({n},{l})");
        }
        // 2P: the curvature route needs exactly the 9/16 boundary term.
        let f = fourth_order_forms(&bound_state(2, 1).unwrap()).unwrap();
        assert_eq!(f.direct, rat(1, 24));
    }

    #[test]
    fn numeric_states_satisfy_identities() {
        let osc = Potential::PowerLaw(int(2));
        let s = solve_bound(&osc, 0, 0).unwrap();
        for f in FChoice::ALL {
            let r = kramers_general(StateRef::Grid(&s), &osc, f).unwrap();
            assert!(r.abs() < 1e-5, "{f:?}: {r}");
        }
        assert!(virial_residual(StateRef::Grid(&s), &osc).unwrap().abs() < 1e-6);
        assert!(force_rule_residual(StateRef::Grid(&s), &osc).unwrap().abs() < 1e-5);
        let c = solve_bound(&Potential::Coulomb, 1, 0).unwrap();
        for f in FChoice::ALL {
            let r = kramers_general(StateRef::Grid(&c), &Potential::Coulomb, f).unwrap();
            assert!(r.abs() < 1e-5, "coulomb 2p {f:?}: {r}");
        }
    }
}
