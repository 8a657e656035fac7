//! Dimensionless potential family, a shooting solver and grid-based ladders.

mod ladder;
mod potential;
mod solver;

pub use ladder::{grid_f_ladder, grid_sum_rule, grid_sum_rule_total};
pub use potential::Potential;
pub use solver::{
    default_step, grid_expectation, grid_for, grid_overlap, solve_bound, solve_bound_refined,
    solve_bound_with_step, solve_spectrum, GridFunction, XGrid,
};
