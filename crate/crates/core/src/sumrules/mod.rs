//! Sum-rule values from ladders, closed forms, and the identity checks built on them.

mod closed_form;
mod constructive;
mod equivalence;
mod identities;
mod physics;
mod value;

pub use closed_form::{closed_form_coulomb, closed_form_coulomb_printed, closed_form_power_law};
pub use constructive::{constructive_channel, constructive_total, sum_rule_constructive, sum_rule_pairing};
pub use equivalence::{
    equivalence_suite, p_minus_boundary_term, s_state_boundary_term, EquivalenceReport, LinkStatus, PairingLink,
};
pub use identities::{
    exact_origin_coefficient_sq, force_rule_residual, fourth_order_forms, kramers_general, kramers_general_exact,
    kramers_recurrence, virial_residual, virial_residual_exact, FChoice, FourthOrderForms, StateRef,
};
pub use physics::{
    decay_width, einstein_rates, oscillator_dipole_ratio, oscillator_rate_ratio, polarizability_1s, Constants,
    EinsteinInputs, EinsteinRate, EinsteinSystem, CONSTANTS,
};
pub use value::{ChannelSelector, StateLabel, SumRuleValue};
