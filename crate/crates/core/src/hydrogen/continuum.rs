use std::f64::consts::PI;

use num_complex::Complex64;

use super::bound::{BoundState, Channel};
use super::matrix::ln_factorial;
use crate::error::{Error, Result};
use crate::exactalg::rational::to_f64;

/// `|<1S| z |q, l=1>|^2` for the energy-normalized continuum.
pub fn continuum_z2_1s(q: f64) -> f64 {
    if q <= 0.0 {
        return 0.0;
    }
    let sommerfeld = 1.0 / -(-2.0 * PI / q).exp_m1();
    256.0 / 3.0 * q / (1.0 + q * q).powi(5) * (-4.0 * q.atan() / q).exp() * sommerfeld
}

/// `sqrt(2/pi) C_L(eta) q^(L+1)` with `eta = -1/q`; the origin slope of `u_q / rho^(L+1)`.
///
/// Written as `2^L sqrt(2 pi q / (1 - e^(-2pi/q)) prod (1 + t^2 q^2)) / (2L+1)!` so neither
/// the `q -> 0` nor the `q -> inf` end overflows.
pub fn origin_coefficient(l: u32, q: f64) -> f64 {
    let mut prod = 2.0 * PI * q / -(-2.0 * PI / q).exp_m1();
    for t in 1..=l {
        let tq = f64::from(t) * q;
        prod *= 1.0 + tq * tq;
    }
    let ln = f64::from(l) * 2f64.ln() + 0.5 * prod.ln() - ln_factorial(2 * l + 1);
    (2.0 / PI).sqrt() * ln.exp()
}

/// `int rho R(rho) u_q(rho) drho` with `u_q` the regular energy-normalized Coulomb wave of
/// angular momentum `target_l`, by term-wise Laplace transform of the confluent series.
///
/// Each `rho^c e^(-s rho) M(a, b, 2iq rho)` integral is written with the Euler-transformed,
/// terminating hypergeometric polynomial, which stays well conditioned as `q -> 0`.
pub fn bound_free_amplitude(from: &BoundState, target_l: u32, q: f64) -> f64 {
    let m = f64::from(from.n);
    let b = f64::from(2 * target_l + 2);
    let a = Complex64::new(f64::from(target_l + 1), 1.0 / q);
    let s = Complex64::new(1.0 / m, q);
    let z = Complex64::new(0.0, 2.0 * q) / s;
    let ln_s = s.ln();
    let ln_one_minus_z = (Complex64::new(1.0, 0.0) - z).ln();
    let mut total = Complex64::new(0.0, 0.0);
    for (i, c) in from.radial.poly.terms() {
        let j = (i + 1 - target_l as i32) as u32;
        // 2F1(b - a, -j; b; z), a polynomial of degree j.
        let mut poly = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        for t in 0..=j {
            poly += term;
            let tf = f64::from(t);
            term = term * (b - a + tf) * (tf - f64::from(j)) / ((b + tf) * (tf + 1.0)) * z;
        }
        let ln_gamma = ln_factorial(2 * target_l + 1 + j);
        let log_mag = ln_gamma - (b + f64::from(j)) * ln_s - (a + f64::from(j)) * ln_one_minus_z;
        total += to_f64(c) * log_mag.exp() * poly;
    }
    to_f64(&from.radial.norm_sq).sqrt() * origin_coefficient(target_l, q) * total.norm()
}

pub fn bound_free_z2_analytic(from: &BoundState, channel: &Channel, q: f64) -> f64 {
    let a = bound_free_amplitude(from, channel.target_l(), q);
    channel.weight_f64() * a * a
}

/// Grid controls for [`continuum_wave`]; `None` picks the defaults.
#[derive(Clone, Copy, Debug, Default)]
pub struct WaveGrid {
    pub rho_max: Option<f64>,
    pub step: Option<f64>,
    /// Skip the envelope fit, for grids cut at the bound state's extent rather than in the asymptotic region.
    pub skip_envelope: bool,
}

impl WaveGrid {
    pub fn resolve(&self, q: f64) -> (f64, f64) {
        let rho_max = self.rho_max.unwrap_or(60f64.max(60.0 / q));
        let step = self.step.unwrap_or((1.0 / 200.0f64).min(1.0 / (40.0 * q)));
        (rho_max, step)
    }
}

/// Regular Coulomb wave `u_q`, energy normalized (`u -> sqrt(2/pi) sin(...)`).
#[derive(Clone, Debug)]
pub struct ContinuumWave {
    pub l: u32,
    pub q: f64,
    pub step: f64,
    /// Samples at `rho = step * (i + 1)`.
    pub values: Vec<f64>,
    /// Amplitude read off the asymptotic envelope; `None` when the fit was skipped.
    pub fitted_amplitude: Option<f64>,
}

impl ContinuumWave {
    pub fn rho(&self, i: usize) -> f64 {
        self.step * (i + 1) as f64
    }

    pub fn rho_max(&self) -> f64 {
        self.rho(self.values.len() - 1)
    }
}

/// Outward Numerov integration of `u'' = (l(l+1)/rho^2 - 2/rho - q^2) u`.
///
/// Started from the regular Frobenius series with the analytic origin coefficient; the
/// asymptotic envelope fit is kept as a consistency diagnostic.
pub fn continuum_wave(l: u32, q: f64, grid: WaveGrid) -> Result<ContinuumWave> {
    if !(q > 0.0) {
        return Err(Error::NonPositiveQ(q));
    }
    let (rho_max, h) = grid.resolve(q);
    let n = (rho_max / h).ceil() as usize;
    let lam = f64::from(l * (l + 1));
    let g = |r: f64| lam / (r * r) - 2.0 / r - q * q;
    let c0 = origin_coefficient(l, q);
    let series = |r: f64| {
        // a_k k (k + 2l + 1) = -2 a_(k-1) - q^2 a_(k-2)
        let (mut a2, mut a1) = (0.0, 1.0);
        let mut sum = 1.0;
        let mut rk = 1.0;
        for k in 1..60 {
            let kf = f64::from(k);
            let ak = (-2.0 * a1 - q * q * a2) / (kf * (kf + 2.0 * f64::from(l) + 1.0));
            rk *= r;
            sum += ak * rk;
            if (ak * rk).abs() < 1e-18 * sum.abs() {
                break;
            }
            a2 = a1;
            a1 = ak;
        }
        c0 * r.powi(l as i32 + 1) * sum
    };
    let mut u = Vec::with_capacity(n);
    u.push(series(h));
    u.push(series(2.0 * h));
    let h12 = h * h / 12.0;
    for i in 1..n - 1 {
        let (r0, r1, r2) = (h * i as f64, h * (i + 1) as f64, h * (i + 2) as f64);
        let next = (2.0 * u[i] * (1.0 + 5.0 * h12 * g(r1)) - u[i - 1] * (1.0 - h12 * g(r0)))
            / (1.0 - h12 * g(r2));
        u.push(next);
    }
    let wave = ContinuumWave { l, q, step: h, values: u, fitted_amplitude: None };
    if grid.skip_envelope {
        return Ok(wave);
    }
    let fitted = envelope_amplitude(&wave)?;
    Ok(ContinuumWave { fitted_amplitude: Some(fitted), ..wave })
}

/// WKB envelope `A^2 = (p/q)(u^2 + u'^2/p^2)` averaged over the last three wavelengths.
fn envelope_amplitude(w: &ContinuumWave) -> Result<f64> {
    let h = w.step;
    let wavelength = 2.0 * PI / w.q;
    let window = (3.0 * wavelength / h).ceil() as usize;
    let len = w.values.len();
    if window * 2 + 4 > len {
        return Err(Error::GridTooShort(format!(
            "rho_max={:.1} holds fewer than six wavelengths at q={}",
            w.rho_max(),
            w.q
        )));
    }
    let lam = f64::from(w.l * (w.l + 1));
    let amp = |lo: usize, hi: usize| {
        let mut acc = 0.0;
        for i in lo..hi {
            let r = w.rho(i);
            let du = (w.values[i - 2] - 8.0 * w.values[i - 1] + 8.0 * w.values[i + 1] - w.values[i + 2])
                / (12.0 * h);
            let p = (w.q * w.q + 2.0 / r - lam / (r * r)).sqrt();
            acc += (p / w.q) * (w.values[i] * w.values[i] + du * du / (p * p));
        }
        (acc / (hi - lo) as f64).sqrt()
    };
    let last = amp(len - 2 - window, len - 2);
    let before = amp(len - 2 - 2 * window, len - 2 - window);
    if (last - before).abs() > 1e-2 * last {
        return Err(Error::GridTooShort(format!("envelope drifts from {before} to {last}")));
    }
    Ok(last)
}

/// `|<from| z |wave>|^2` with the channel weight, by Simpson quadrature on the wave grid.
pub fn bound_free_z2(from: &BoundState, wave: &ContinuumWave) -> Result<f64> {
    let channel = Channel::between(from.l, wave.l)?;
    let h = wave.step;
    // Prepend the origin (integrand 0) so the grid has an even number of intervals.
    let mut f: Vec<f64> = std::iter::once(0.0)
        .chain(wave.values.iter().enumerate().map(|(i, u)| {
            let r = wave.rho(i);
            r * from.radial.eval(r) * u
        }))
        .collect();
    if f.len().is_multiple_of(2) {
        f.pop();
    }
    let last = f.len() - 1;
    let mut s = f[0] + f[last];
    for (i, v) in f.iter().enumerate().take(last).skip(1) {
        s += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    let integral = s * h / 3.0;
    Ok(channel.weight_f64() * integral * integral)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hydrogen::bound::bound_state;

    #[test]
    fn closed_form_values() {
        let at1 = 8.0 / 3.0 * (-PI).exp() / (1.0 - (-2.0 * PI).exp());
        assert!((continuum_z2_1s(1.0) - at1).abs() < 1e-15);
        assert!((at1 - 0.115453).abs() < 1e-6);
        assert!(continuum_z2_1s(1e6) < 1e-25);
        let tiny = 1e-9;
        let lim = 256.0 / 3.0 * tiny * (-4.0f64).exp();
        assert!((continuum_z2_1s(tiny) / lim - 1.0).abs() < 1e-9);
    }

    #[test]
    fn analytic_route_reproduces_ground_state_formula() {
        let s = bound_state(1, 0).unwrap();
        let ch = Channel::plus(0);
        for q in [1e-3, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0] {
            let a = bound_free_z2_analytic(&s, &ch, q);
            let b = continuum_z2_1s(q);
            assert!((a / b - 1.0).abs() < 1e-12, "q={q}: {a} vs {b}");
        }
    }

    #[test]
    fn numerov_wave_matches_ground_state_formula() {
        let s = bound_state(1, 0).unwrap();
        for q in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
            let w = continuum_wave(1, q, WaveGrid::default()).unwrap();
            let z = bound_free_z2(&s, &w).unwrap();
            let exact = continuum_z2_1s(q);
            assert!((z / exact - 1.0).abs() < 1e-6, "q={q}: {z} vs {exact}");
        }
    }

    #[test]
    fn fitted_amplitude_is_energy_normalized() {
        let w = continuum_wave(0, 2.0, WaveGrid::default()).unwrap();
        let target = (2.0 / PI).sqrt();
        let a = w.fitted_amplitude.unwrap();
        assert!((a / target - 1.0).abs() < 1e-3, "{a}");
    }

    #[test]
    fn wave_is_orthogonal_to_bound_state_of_same_l() {
        let p2 = bound_state(2, 1).unwrap();
        let w = continuum_wave(1, 0.7, WaveGrid { rho_max: Some(90.0), ..WaveGrid::default() }).unwrap();
        let mut acc = 0.0;
        for (i, u) in w.values.iter().enumerate() {
            acc += p2.radial.eval(w.rho(i)) * u * w.step;
        }
        assert!(acc.abs() < 1e-6, "{acc}");
    }

    #[test]
    fn short_grid_is_reported() {
        let err = continuum_wave(1, 0.05, WaveGrid { rho_max: Some(100.0), ..WaveGrid::default() });
        assert!(matches!(err, Err(Error::GridTooShort(_))));
        assert!(matches!(continuum_wave(1, 0.0, WaveGrid::default()), Err(Error::NonPositiveQ(_))));
    }

    #[test]
    fn wave_from_wrong_channel_is_rejected() {
        let s = bound_state(2, 0).unwrap();
        let w = continuum_wave(2, 1.0, WaveGrid::default()).unwrap();
        assert!(matches!(bound_free_z2(&s, &w), Err(Error::ChannelMismatch { .. })));
    }
}
