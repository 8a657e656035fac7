//! Coulomb bound and continuum states with `rho = r/a0` and `k_m^2 = 1/m^2`.

mod bound;
mod continuum;
mod matrix;

pub use bound::{bound_state, check_quantum_numbers, BoundState, Channel, Direction};
pub use continuum::{
    bound_free_amplitude, bound_free_z2, bound_free_z2_analytic, continuum_wave, continuum_z2_1s,
    origin_coefficient, ContinuumWave, WaveGrid,
};
pub use matrix::{
    bound_bound_z2, check_moment_order, expectation_rho_power, ground_to_np_z2, ln_factorial, pauling_wilson,
    DipoleTable,
};
