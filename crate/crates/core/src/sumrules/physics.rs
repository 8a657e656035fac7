use crate::error::{Error, Result};
use crate::exactalg::rational::{int, rat, to_f64};
use crate::exactalg::Rational;
use crate::hydrogen::{bound_state, ground_to_np_z2, Channel};
use crate::sumrules::constructive_channel;

/// Fixed physical constants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Constants {
    pub fine_structure: f64,
    /// Electron rest energy in eV.
    pub electron_mass_ev: f64,
    pub hbar_ev_s: f64,
    pub hbar_c_gev_fm: f64,
}

pub const CONSTANTS: Constants = Constants {
    fine_structure: 7.2973525693e-3,
    electron_mass_ev: 510998.95,
    hbar_ev_s: 6.582119569e-16,
    hbar_c_gev_fm: 0.1973269804,
};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EinsteinSystem {
    /// Isotropic oscillator `1s -> 1p` with quantum `hbar omega` in eV.
    Oscillator { hbar_omega_ev: f64 },
    Hydrogen2P,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EinsteinInputs {
    pub fine_structure: f64,
    pub system: EinsteinSystem,
    pub mass_energy_ev: f64,
}

impl EinsteinInputs {
    pub fn hydrogen() -> EinsteinInputs {
        EinsteinInputs {
            fine_structure: CONSTANTS.fine_structure,
            system: EinsteinSystem::Hydrogen2P,
            mass_energy_ev: CONSTANTS.electron_mass_ev,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EinsteinRate {
    /// Spontaneous emission rate in 1/s.
    pub rate: f64,
    pub lifetime: f64,
    /// Classical radiation damping rate, for the oscillator.
    pub classical_rate: Option<f64>,
}

/// `|r_ba|^2 / lambda^2` for the oscillator with `lambda = sqrt(hbar/(M omega))`.
///
/// Tracks the Gaussian integrals as a rational times a power of `sqrt(pi)`.
pub fn oscillator_dipole_ratio() -> Rational {
    // N_a^2 N_b^2 = 2 pi^-3, angular (4 pi/3)^2, radial (int r^4 e^-r^2)^2 = (3 sqrt(pi)/8)^2.
    let coefficient = int(2) * rat(4, 3) * rat(4, 3) * rat(3, 8) * rat(3, 8);
    let half_powers_of_pi = -6 + 4 + 2;
    assert_eq!(half_powers_of_pi, 0);
    coefficient
}

/// Quantum over classical oscillator rate, `2 |r_ba|^2 / lambda^2`.
pub fn oscillator_rate_ratio() -> Rational {
    rat(4, 3) * oscillator_dipole_ratio() / rat(2, 3)
}

/// Spontaneous rate `A = (4/3) alpha omega (omega |r| / c)^2` and lifetime.
pub fn einstein_rates(inputs: &EinsteinInputs) -> EinsteinRate {
    let alpha = inputs.fine_structure;
    match inputs.system {
        EinsteinSystem::Oscillator { hbar_omega_ev } => {
            let omega = hbar_omega_ev / CONSTANTS.hbar_ev_s;
            let x = hbar_omega_ev / inputs.mass_energy_ev;
            let classical = 2.0 / 3.0 * alpha * x * omega;
            let rate = 4.0 / 3.0 * alpha * x * omega * to_f64(&oscillator_dipole_ratio());
            EinsteinRate { rate, lifetime: 1.0 / rate, classical_rate: Some(classical) }
        }
        EinsteinSystem::Hydrogen2P => {
            // omega = (k_1^2 - k_2^2)/2 alpha^2 Mc^2/hbar and omega a0 / c = (3/8) alpha.
            let level = to_f64(&rat(3, 8));
            let omega = level * alpha * alpha * inputs.mass_energy_ev / CONSTANTS.hbar_ev_s;
            let r2 = to_f64(&ground_to_np_z2(2));
            let rate = 4.0 / 3.0 * alpha * (level * alpha).powi(2) * r2 * omega;
            EinsteinRate { rate, lifetime: 1.0 / rate, classical_rate: None }
        }
    }
}

/// Leptonic width `4 (hbar c/a) (alpha e_q hbar c / (M_V c^2 a))^2 C_0^2` in GeV,
/// with `M_V` in GeV and `a` in fm.
pub fn decay_width(m_v: f64, e_q: f64, a: f64, c0_sq: f64, inputs: &EinsteinInputs) -> Result<f64> {
    if m_v <= 0.0 || a <= 0.0 || c0_sq < 0.0 {
        return Err(Error::NonPositiveScale(format!("M_V={m_v}, a={a}, C0^2={c0_sq}")));
    }
    let hc = CONSTANTS.hbar_c_gev_fm;
    let coupling = inputs.fine_structure * e_q * hc / (m_v * a);
    Ok(4.0 * hc / a * coupling * coupling * c0_sq)
}

/// `alpha_0 / a_0^3 = 4 S_-1^+` for the ground state.
pub fn polarizability_1s() -> Result<Rational> {
    let s = constructive_channel(&bound_state(1, 0)?, &Channel::plus(0), -1)?;
    Ok(int(4) * s)
}
