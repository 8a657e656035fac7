use std::sync::OnceLock;

use super::bound::{bound_state, check_quantum_numbers, BoundState, Channel};
use crate::error::{Error, Result};
use crate::exactalg::rational::{int, powi, rat, to_f64};
use crate::exactalg::{scaled_moment, squared_moment, Rational};

/// `|<from| z |to_n, l'>|^2` including the angular weight, exact.
pub fn bound_bound_z2(from: &BoundState, to_n: u32, channel: &Channel) -> Result<Rational> {
    let target = bound_state(to_n, channel.target_l())?;
    Ok(&channel.weight * squared_moment(&from.radial, &target.radial, 1)?)
}

/// Closed form for the ground state to `nP`: `(2^8/3) n^7 (n-1)^(2n-5) / (n+1)^(2n+5)`.
pub fn ground_to_np_z2(n: u32) -> Rational {
    let n = i64::from(n);
    let num = int(256) * powi(&int(n), 7) * powi(&int(n - 1), (2 * n - 5) as i32);
    num / (int(3) * powi(&int(n + 1), (2 * n + 5) as i32))
}

/// `<rho^p>` in a bound state, exact.
pub fn expectation_rho_power(state: &BoundState, p: i32) -> Result<Rational> {
    scaled_moment(&state.radial, &state.radial, p)
}

/// Bound-bound squared dipole element in floating point, for targets up to `n ~ 10^4`.
///
/// Uses the Laplace transform of the target Laguerre polynomial expanded about `p = 1`,
/// evaluated in log space. The initial state is small, so its coefficients come from the
/// exact construction.
pub struct DipoleTable {
    m: u32,
    target_l: u32,
    weight: f64,
    norm_sq: f64,
    coefficients: Vec<(i32, f64)>,
}

impl DipoleTable {
    pub fn new(from: &BoundState, channel: &Channel) -> DipoleTable {
        DipoleTable {
            m: from.n,
            target_l: channel.target_l(),
            weight: channel.weight_f64(),
            norm_sq: to_f64(&from.radial.norm_sq),
            coefficients: from.radial.poly.terms().map(|(e, c)| (e, to_f64(c))).collect(),
        }
    }

    pub fn target_l(&self) -> u32 {
        self.target_l
    }

    /// Overlap `<m,l| rho |n,L>` up to the sign convention of the target.
    pub fn amplitude(&self, n: u32) -> f64 {
        let l_t = self.target_l;
        debug_assert!(n > l_t);
        let (m, nf) = (f64::from(self.m), f64::from(n));
        let k = n - l_t - 1;
        let al = 2 * l_t + 1;
        let beta = f64::from(k + al + 1);
        let p = (m + nf) / (2.0 * m);
        let q = p - 1.0;
        let ln_norm = 0.5
            * (3.0 * (2.0 / nf).ln() + ln_factorial(k) - (2.0 * nf).ln() - ln_factorial(n + l_t));
        let ln_pref = ln_norm + ln_factorial(k + al);
        let mut total = 0.0;
        for &(i, c) in &self.coefficients {
            let j = i + 1 - l_t as i32;
            debug_assert!(j >= 0);
            let j = j as u32;
            let base = c.abs().ln() + ln_pref + f64::from(i as u32 + 3) * (nf / 2.0).ln();
            for t in 0..=j.min(k) {
                if q == 0.0 && k != t {
                    continue;
                }
                let mut lm = base + ln_binomial(j, t) - ln_factorial(k - t);
                if k > t {
                    lm += f64::from(k - t) * q.abs().ln();
                }
                let r = f64::from(j - t);
                lm += ln_factorial((beta + r) as u32 - 1) - ln_factorial(beta as u32 - 1);
                lm -= (beta + r) * p.ln();
                let mut sign = c.signum();
                if t % 2 == 1 {
                    sign = -sign;
                }
                if q < 0.0 && (k - t) % 2 == 1 {
                    sign = -sign;
                }
                total += sign * lm.exp();
            }
        }
        total
    }

    pub fn z2(&self, n: u32) -> f64 {
        let a = self.amplitude(n);
        self.weight * self.norm_sq * a * a
    }
}

/// `ln n!`, tabulated by summation up to 4096 and Stirling beyond.
pub fn ln_factorial(n: u32) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = vec![0.0f64; 4097];
        for k in 1..t.len() {
            t[k] = t[k - 1] + (k as f64).ln();
        }
        t
    });
    match table.get(n as usize) {
        Some(v) => *v,
        None => {
            let n = f64::from(n);
            n * n.ln() - n + 0.5 * (2.0 * std::f64::consts::PI * n).ln() + 1.0 / (12.0 * n)
                - 1.0 / (360.0 * n.powi(3))
        }
    }
}

fn ln_binomial(n: u32, k: u32) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Validity bound `p >= -(2l+2)` for `<rho^p>`; outside it the integral diverges.
pub fn check_moment_order(state: &BoundState, p: i32) -> Result<()> {
    if p < -(2 * state.l as i32 + 2) {
        return Err(Error::DivergentAtOrigin(p + 2 * state.l as i32 + 2));
    }
    Ok(())
}

/// Known expectation values of the Coulomb problem for `p` in -4..=-1, when applicable.
pub fn pauling_wilson(n: u32, l: u32, p: i32) -> Option<Rational> {
    check_quantum_numbers(n, l).ok()?;
    let (m, li) = (i64::from(n), i64::from(l));
    let m3 = rat(1, m * m * m);
    match p {
        -1 => Some(rat(1, m * m)),
        -2 => Some(m3 * rat(2, 2 * li + 1)),
        -3 if l >= 1 => Some(m3 * rat(2, li * (li + 1) * (2 * li + 1))),
        -4 if l >= 1 => {
            let lam = li * (li + 1);
            let bracket = int(3) - rat(lam, m * m);
            Some(m3 * bracket * rat(4, lam * (2 * li + 3) * (2 * li + 1) * (2 * li - 1)))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::to_f64;
    use num_bigint::BigInt;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn ground_to_2p_is_known_fraction() {
        let s = bound_state(1, 0).unwrap();
        let z = bound_bound_z2(&s, 2, &Channel::plus(0)).unwrap();
        assert_eq!(z, Rational::new(big(1 << 15), big(59049)));
        assert_eq!(ground_to_np_z2(2), z);
    }

    #[test]
    fn degenerate_2p_to_2s() {
        let s = bound_state(2, 1).unwrap();
        assert_eq!(bound_bound_z2(&s, 2, &Channel::minus(1).unwrap()).unwrap(), int(9));
    }

    #[test]
    fn float_table_matches_exact() {
        for (m, l) in [(1u32, 0u32), (2, 0), (2, 1), (3, 1), (3, 2), (4, 3)] {
            let s = bound_state(m, l).unwrap();
            for ch in Channel::all(l) {
                let table = DipoleTable::new(&s, &ch);
                for n in (ch.target_l() + 1)..=12 {
                    let exact = to_f64(&bound_bound_z2(&s, n, &ch).unwrap());
                    let fast = table.z2(n);
                    assert!(
                        (exact - fast).abs() <= 1e-11 * exact.abs().max(1e-6),
                        "m={m} l={l} {:?} n={n}: {exact} vs {fast}",
                        ch.direction
                    );
                }
            }
        }
    }

    #[test]
    fn float_table_tracks_closed_form_far_out() {
        let s = bound_state(1, 0).unwrap();
        let table = DipoleTable::new(&s, &Channel::plus(0));
        for n in [50u32, 400, 2000] {
            let exact = to_f64(&ground_to_np_z2(n));
            assert!((table.z2(n) / exact - 1.0).abs() < 1e-8, "n={n} {} {exact}", table.z2(n));
        }
    }

    #[test]
    fn expectation_examples() {
        let s21 = bound_state(2, 1).unwrap();
        assert_eq!(expectation_rho_power(&s21, -3).unwrap(), rat(1, 24));
        let s32 = bound_state(3, 2).unwrap();
        assert_eq!(expectation_rho_power(&s32, -4).unwrap(), rat(2, 3645));
        assert_eq!(expectation_rho_power(&s32, 0).unwrap(), int(1));
    }
}
