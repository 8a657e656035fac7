//! Brute-force sum rules: truncated discrete sums plus continuum quadrature, checked
//! against the constructive values.

mod compare;
mod continuum;
mod contour;
mod discrete;
pub mod quadrature;

pub use compare::{compare, compare_potential};
pub use continuum::{continuum_integral, continuum_integrand, continuum_is_divergent};
pub use contour::{contour_check, contour_integrand, ContourReport, ResidueCheck};
pub use discrete::{discrete_sum, discrete_terms, tail_estimate};

use crate::error::{Error, Result};
use crate::hydrogen::{BoundState, Channel};

/// How bound-free elements for states other than 1S are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ContinuumRoute {
    /// Terminating confluent series, term-wise Laplace transform.
    #[default]
    Analytic,
    /// Numerov waves integrated against the bound state, for cross-checks.
    Numerov,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub n_max: u32,
    /// Starting panels on `u` in `q = k_m tan u`.
    pub u_panels: usize,
    pub abs_tol: f64,
    pub tail_extrapolation: bool,
    pub continuum_route: ContinuumRoute,
    /// Pass threshold used by [`compare`].
    pub tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            n_max: 2000,
            u_panels: 16,
            abs_tol: 1e-8,
            tail_extrapolation: true,
            continuum_route: ContinuumRoute::Analytic,
            tolerance: 2e-4,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_max < 2 {
            return Err(Error::InvalidOrder(i64::from(self.n_max)));
        }
        if !(self.abs_tol > 0.0) || !(self.tolerance > 0.0) || self.u_panels == 0 {
            return Err(Error::NonPositiveScale(format!(
                "abs_tol={}, tolerance={}, u_panels={}",
                self.abs_tol, self.tolerance, self.u_panels
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplitResult {
    pub discrete: f64,
    pub continuum: f64,
    pub total: f64,
    pub estimated_error: f64,
}

/// Discrete part, continuum part and their sum for one channel.
pub fn split(state: &BoundState, channel: &Channel, order: i64, spec: &QuadratureSpec) -> Result<SplitResult> {
    spec.validate()?;
    let terms = discrete_terms(state, channel, order, spec.n_max);
    let discrete = quadrature::pairwise_sum(&terms);
    let (continuum, quad_err) = continuum_integral(state, channel, order, spec)?;
    let tail = if spec.tail_extrapolation { tail_estimate(&terms, spec.n_max).abs() } else { 0.0 };
    Ok(SplitResult { discrete, continuum, total: discrete + continuum, estimated_error: tail + quad_err })
}
