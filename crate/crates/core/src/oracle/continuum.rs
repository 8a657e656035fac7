use std::f64::consts::FRAC_PI_2;

use super::quadrature::integrate;
use super::{ContinuumRoute, QuadratureSpec};
use crate::error::{Error, Result};
use crate::hydrogen::{
    bound_free_z2, bound_free_z2_analytic, continuum_wave, continuum_z2_1s, BoundState, Channel, WaveGrid,
};

/// The continuum falls off fast enough only for `J < l + 4`.
pub fn continuum_is_divergent(state: &BoundState, order: i64) -> bool {
    order >= i64::from(state.l) + 4
}

fn z2_at(state: &BoundState, channel: &Channel, q: f64, route: ContinuumRoute) -> Result<f64> {
    if state.n == 1 {
        return Ok(continuum_z2_1s(q));
    }
    match route {
        ContinuumRoute::Analytic => Ok(bound_free_z2_analytic(state, channel, q)),
        ContinuumRoute::Numerov => {
            let n = f64::from(state.n);
            let grid = WaveGrid { rho_max: Some(n * (40.0 + 2.0 * n)), step: None, skip_envelope: true };
            let wave = continuum_wave(channel.target_l(), q, grid)?;
            bound_free_z2(state, &wave)
        }
    }
}

/// `(k_m^2 + q^2)^J |<m|z|q>|^2` at wavenumber `q`.
pub fn continuum_integrand(state: &BoundState, channel: &Channel, order: i64, q: f64) -> f64 {
    let ksq = 1.0 / f64::from(state.n * state.n);
    (ksq + q * q).powi(order as i32) * z2_at(state, channel, q, ContinuumRoute::Analytic).unwrap_or(f64::NAN)
}

/// Continuum part over `q = k_m tan u`, `u` in `[0, pi/2)`; returns `(value, error estimate)`.
pub fn continuum_integral(
    state: &BoundState,
    channel: &Channel,
    order: i64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    if continuum_is_divergent(state, order) {
        return Err(Error::DivergentSumRule { j: order, l: i64::from(state.l) });
    }
    if spec.continuum_route == ContinuumRoute::Numerov && state.n != 1 {
        return numerov_integral(state, channel, order, spec);
    }
    let k = 1.0 / f64::from(state.n);
    let f = |u: f64| {
        let (s, c) = u.sin_cos();
        let q = k * s / c;
        if !q.is_finite() || c <= 0.0 {
            return 0.0;
        }
        // (k^2 + q^2)^J dq = k^(2J+1) sec^(2J+2) u du
        let z2 = z2_at(state, channel, q, ContinuumRoute::Analytic).unwrap_or(f64::NAN);
        if z2 == 0.0 {
            return 0.0;
        }
        z2 * k.powi(2 * order as i32 + 1) * c.powi(-(2 * order as i32 + 2))
    };
    integrate(&f, 0.0, FRAC_PI_2, spec.u_panels, spec.abs_tol)
}

/// Cutoff of the Numerov route; beyond it the tail is extrapolated from the local power law.
const NUMEROV_Q_MAX: f64 = 30.0;

fn numerov_integral(state: &BoundState, channel: &Channel, order: i64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let ksq = 1.0 / f64::from(state.n * state.n);
    let eval = |q: f64| -> Result<f64> {
        Ok((ksq + q * q).powi(order as i32) * z2_at(state, channel, q, ContinuumRoute::Numerov)?)
    };
    let f = |q: f64| eval(q).unwrap_or(f64::NAN);
    let (body, err) = integrate(&f, 0.0, NUMEROV_Q_MAX, spec.u_panels, spec.abs_tol)?;
    let (half, end) = (eval(NUMEROV_Q_MAX / 2.0)?, eval(NUMEROV_Q_MAX)?);
    let p = (half / end).ln() / 2f64.ln();
    if !(p > 1.0) {
        return Err(Error::QuadratureNotConverged(format!("continuum tail falls off as q^-{p:.2}")));
    }
    let tail = end * NUMEROV_Q_MAX / (p - 1.0);
    Ok((body + tail, err + 0.1 * tail.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hydrogen::bound_state;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn ground_state_examples() {
        let s = bound_state(1, 0).unwrap();
        let ch = Channel::plus(0);
        let (v, _) = continuum_integral(&s, &ch, 3, &spec()).unwrap();
        assert!((v - 4.972492).abs() < 1e-4, "{v}");
        let (v, _) = continuum_integral(&s, &ch, 0, &spec()).unwrap();
        assert!((v - 0.283412).abs() < 1e-5, "{v}");
        assert_eq!(continuum_integral(&s, &ch, 4, &spec()).unwrap_err(), Error::DivergentSumRule { j: 4, l: 0 });
    }

    #[test]
    fn two_p_plus_fourth_order() {
        let p = bound_state(2, 1).unwrap();
        let (v, _) = continuum_integral(&p, &Channel::plus(1), 4, &spec()).unwrap();
        assert!((v - 0.17307).abs() < 1e-3, "{v}");
        assert!(continuum_integral(&p, &Channel::plus(1), 5, &spec()).is_err());
    }

    #[test]
    fn numerov_route_agrees_with_series() {
        let s = bound_state(2, 0).unwrap();
        let ch = Channel::plus(0);
        let numerov = QuadratureSpec { continuum_route: ContinuumRoute::Numerov, abs_tol: 1e-9, ..spec() };
        let (a, _) = continuum_integral(&s, &ch, 0, &spec()).unwrap();
        let (b, _) = continuum_integral(&s, &ch, 0, &numerov).unwrap();
        assert!((a - 0.823193).abs() < 2e-4, "{a}");
        assert!((a - b).abs() < 1e-6, "{a} vs {b}");
    }
}
