use rayon::prelude::*;

use super::quadrature::pairwise_sum;
use super::QuadratureSpec;
use crate::hydrogen::{BoundState, Channel, DipoleTable};

/// `(k_m^2 - k_n^2)^J |<m,l|z|n,l'>|^2` for `n = l'+1 ..= n_max`, in order of `n`.
///
/// The degenerate term `n = m` has weight 1 at `J = 0`, 0 above, and is dropped below.
pub fn discrete_terms(state: &BoundState, channel: &Channel, order: i64, n_max: u32) -> Vec<f64> {
    let table = DipoleTable::new(state, channel);
    let m = i64::from(state.n);
    let first = channel.target_l() + 1;
    (first..=n_max.max(first))
        .into_par_iter()
        .map(|n| {
            let ni = i64::from(n);
            if ni == m {
                return if order == 0 { table.z2(n) } else { 0.0 };
            }
            let gap = (ni * ni - m * m) as f64 / (m * m * ni * ni) as f64;
            gap.powi(order as i32) * table.z2(n)
        })
        .collect()
}

pub fn discrete_sum(state: &BoundState, channel: &Channel, order: i64, spec: &QuadratureSpec) -> f64 {
    pairwise_sum(&discrete_terms(state, channel, order, spec.n_max))
}

/// Terms fall off as `n^-3`, so the omitted tail is about `t_N N / 2`.
pub fn tail_estimate(terms: &[f64], n_max: u32) -> f64 {
    terms.last().map_or(0.0, |t| t * f64::from(n_max) / 2.0)
}
