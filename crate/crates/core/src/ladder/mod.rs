//! Constructive ladders: `F_(J+1) = (h + k^2) F_J` upward, projected Dalgarno-Lewis solves downward.

mod green;

pub use green::{
    decaying_derivative, decaying_solution, greens_negative_order, greens_pair, regular_derivative, regular_solution,
    unreduced_wronskian, GreenGrid,
};

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{apply_h, joint_norm, scaled_overlap, solve_inhomogeneous, Rational, ScaledPolyExp};
use crate::hydrogen::{bound_state, BoundState, Channel};
use crate::potentials::Potential;

/// Highest positive rung built exactly; beyond it l = 0 functions leave the exponent floor.
pub const MAX_POSITIVE_RUNG: usize = 4;

#[derive(Clone, Debug)]
pub struct LadderFamily {
    pub state: BoundState,
    pub channel: Channel,
    /// `F_0 = rho R`, never projected.
    pub seed: ScaledPolyExp,
    /// `G_0`: the seed with the homogeneous component removed when the target shell has one.
    pub projected: ScaledPolyExp,
    /// `F_0`, `F_1`, ...
    pub positive: Vec<ScaledPolyExp>,
    /// `G_1`, `G_2`, ...
    pub negative: Vec<ScaledPolyExp>,
    /// Normalizable solution of `(h_L + k^2) R = 0`, when the target shell has one.
    pub homogeneous: Option<ScaledPolyExp>,
}

impl LadderFamily {
    pub fn new(state: &BoundState, channel: &Channel) -> Result<LadderFamily> {
        let seed = state.radial.map_poly(|p| p.shift(1))?;
        let target_l = channel.target_l();
        let homogeneous = if target_l < state.n {
            Some(bound_state(state.n, target_l)?.radial)
        } else {
            None
        };
        let projected = match &homogeneous {
            Some(h) => seed.project_out(h)?,
            None => seed.clone(),
        };
        Ok(LadderFamily {
            state: state.clone(),
            channel: channel.clone(),
            positive: vec![seed.clone()],
            seed,
            projected,
            negative: Vec::new(),
            homogeneous,
        })
    }

    pub fn target_l(&self) -> u32 {
        self.channel.target_l()
    }

    /// Signed rung index: `F_j` for `j >= 0`, `G_|j|` for `j < 0`.
    pub fn rung(&self, j: i64) -> Option<&ScaledPolyExp> {
        if j >= 0 {
            self.positive.get(j as usize)
        } else {
            self.negative.get((-j - 1) as usize)
        }
    }

    /// `G_j` for `j >= 0`, with `G_0` the projected seed.
    pub fn g_rung(&self, j: usize) -> Option<&ScaledPolyExp> {
        if j == 0 {
            Some(&self.projected)
        } else {
            self.negative.get(j - 1)
        }
    }

    pub fn extend_positive(&mut self, max_j: usize) -> Result<()> {
        if max_j > MAX_POSITIVE_RUNG {
            return Err(Error::InvalidOrder(max_j as i64));
        }
        let l = self.target_l();
        while self.positive.len() <= max_j {
            let last = self.positive.last().unwrap();
            let next = last.map_poly(|p| apply_h(p, l, &self.state.ksq, &Potential::Coulomb))?;
            self.positive.push(next);
        }
        Ok(())
    }

    pub fn extend_negative(&mut self, max_j: usize) -> Result<()> {
        let l = self.target_l();
        let hom = self.homogeneous.as_ref().map(|h| h.poly.clone());
        while self.negative.len() < max_j {
            let last = self.negative.last().unwrap_or(&self.projected);
            let next = last.map_poly(|p| {
                solve_inhomogeneous(p, l, &self.state.ksq, &Potential::Coulomb, hom.as_ref())
            })?;
            self.negative.push(next);
        }
        Ok(())
    }

    /// `<rung(j)|rung(k)>` without the angular weight; index 0 paired with a negative
    /// index means the projected `G_0`.
    pub fn pairing(&self, j: i64, k: i64) -> Result<Rational> {
        let negative_side = j < 0 || k < 0;
        let pick = |i: i64| {
            let r = if negative_side { self.g_rung(i.unsigned_abs() as usize) } else { self.rung(i) };
            r.ok_or(Error::InvalidOrder(i))
        };
        scaled_overlap(pick(j)?, pick(k)?)
    }

    /// Builds whatever rungs order `order` needs under every pairing.
    pub fn ensure_order(&mut self, order: i64) -> Result<()> {
        if order > 0 {
            self.extend_positive(order as usize)
        } else {
            self.extend_negative(order.unsigned_abs() as usize)
        }
    }
}

pub fn build_f_ladder(state: &BoundState, channel: &Channel, max_j: usize) -> Result<LadderFamily> {
    let mut fam = LadderFamily::new(state, channel)?;
    fam.extend_positive(max_j)?;
    Ok(fam)
}

pub fn build_g_ladder(state: &BoundState, channel: &Channel, max_j: usize) -> Result<LadderFamily> {
    let mut fam = LadderFamily::new(state, channel)?;
    fam.extend_negative(max_j)?;
    Ok(fam)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WronskianValue {
    pub j: i64,
    pub k: i64,
    pub channel: Channel,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WronskianLimit {
    Finite(WronskianValue),
    Infinite,
}

impl WronskianLimit {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            WronskianLimit::Finite(w) => Some(&w.value),
            WronskianLimit::Infinite => None,
        }
    }
}

/// `lim_(rho -> 0) (F_j F_k' - F_k F_j')`, read off the Laurent coefficients.
///
/// For equal rates the exponential factors cancel inside the bracket, leaving
/// `p_j p_k' - p_k p_j'` times `e^(-2a rho) -> 1`.
pub fn wronskian_at_origin(family: &LadderFamily, j: i64, k: i64) -> Result<WronskianLimit> {
    let fj = family.rung(j).ok_or(Error::InvalidOrder(j))?;
    let fk = family.rung(k).ok_or(Error::InvalidOrder(k))?;
    // p_j p_k' - p_k p_j' = sum c_a c_b (e_b - e_a) rho^(e_a + e_b - 1)
    let mut w: BTreeMap<i32, Rational> = BTreeMap::new();
    for (ea, ca) in fj.poly.terms() {
        for (eb, cb) in fk.poly.terms() {
            if ea != eb {
                let slot = w.entry(ea + eb - 1).or_insert_with(Rational::zero);
                *slot += ca * cb * Rational::from_integer((eb - ea).into());
            }
        }
    }
    w.retain(|_, c| !c.is_zero());
    if w.keys().next().is_some_and(|&e| e < 0) {
        return Ok(WronskianLimit::Infinite);
    }
    let value = w.get(&0).cloned().unwrap_or_else(Rational::zero) * joint_norm(fj, fk)?;
    Ok(WronskianLimit::Finite(WronskianValue { j, k, channel: family.channel.clone(), value }))
}
