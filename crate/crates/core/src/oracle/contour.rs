//! The 1S discrete and continuum parts as two contours of one integrand in `v = 1/n`.
//!
//! `I_J(v) = -f(v) (1 - v^2)^J / (v^2 (1 - e^(-2 pi i / v)))` with
//! `f(v) = (2^8/3) v^3 (1 - v^2)^-5 ((1 - v)/(1 + v))^(2/v)`. The kernel has unit-residue
//! poles at `v = 1/n`, so a small circle there returns the `n`-th discrete term, and on
//! `v = i q` the integrand times `dv` is the continuum integrand in `q`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::quadrature::integrate;
use super::{continuum_integral, QuadratureSpec};
use crate::error::{Error, Result};
use crate::exactalg::rational::to_f64;
use crate::hydrogen::{bound_state, ground_to_np_z2, Channel};

const TOLERANCE: f64 = 1e-6;
const CIRCLE_POINTS: usize = 128;

pub fn contour_integrand(order: i64, v: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let vsq = v * v;
    let log_ratio = (one - v).ln() - (one + v).ln();
    let f = 256.0 / 3.0 * v * vsq / (one - vsq).powi(5) * (2.0 / v * log_ratio).exp();
    let kernel = one - (Complex64::new(0.0, -2.0 * PI) / v).exp();
    -f * (one - vsq).powi(order as i32) / (vsq * kernel)
}

fn circle_integral(order: i64, centre: f64, radius: f64) -> Complex64 {
    let step = 2.0 * PI / CIRCLE_POINTS as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..CIRCLE_POINTS {
        let e = Complex64::from_polar(radius, step * k as f64);
        acc += contour_integrand(order, centre + e) * Complex64::new(0.0, 1.0) * e;
    }
    acc * step
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidueCheck {
    pub n: u32,
    pub residue: f64,
    pub expected: f64,
    /// Change in the residue when the circle radius is halved.
    pub radius_sensitivity: f64,
}

impl ResidueCheck {
    pub fn passed(&self) -> bool {
        (self.residue - self.expected).abs() <= TOLERANCE && self.radius_sensitivity < 1e-8
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContourReport {
    pub order: i64,
    pub residues: Vec<ResidueCheck>,
    pub line_integral: f64,
    pub continuum: f64,
}

impl ContourReport {
    pub fn passed(&self) -> bool {
        self.residues.iter().all(ResidueCheck::passed) && (self.line_integral - self.continuum).abs() <= TOLERANCE
    }
}

/// Residues at `v = 1/n` for `n = 2..=10` and the line integral up the imaginary axis,
/// set against the ground-state discrete terms and continuum integral.
pub fn contour_check(order: i64, spec: &QuadratureSpec) -> Result<ContourReport> {
    if !(0..=3).contains(&order) {
        return Err(Error::InvalidOrder(order));
    }
    spec.validate()?;
    let mut residues = Vec::new();
    for n in 2..=10u32 {
        let nf = f64::from(n);
        let radius = 0.25 / (nf * (nf + 1.0));
        let a = circle_integral(order, 1.0 / nf, radius);
        let b = circle_integral(order, 1.0 / nf, 0.5 * radius);
        if a.im.abs() > TOLERANCE {
            return Err(Error::QuadratureNotConverged(format!("residue at v=1/{n} has imaginary part {}", a.im)));
        }
        let expected = to_f64(&ground_to_np_z2(n)) * (1.0 - 1.0 / (nf * nf)).powi(order as i32);
        residues.push(ResidueCheck { n, residue: a.re, expected, radius_sensitivity: (a - b).norm() });
    }
    // v = i tan(u): dv = i sec^2(u) du.
    let line = |u: f64| {
        let (s, c) = u.sin_cos();
        if c <= 0.0 {
            return 0.0;
        }
        let v = Complex64::new(0.0, s / c);
        let w = contour_integrand(order, v) * Complex64::new(0.0, 1.0 / (c * c));
        if w.re.is_finite() {
            w.re
        } else {
            0.0
        }
    };
    let (line_integral, _) = integrate(&line, 0.0, FRAC_PI_2, spec.u_panels, spec.abs_tol)?;
    let ground = bound_state(1, 0)?;
    let (continuum, _) = continuum_integral(&ground, &Channel::plus(0), order, spec)?;
    Ok(ContourReport { order, residues, line_integral, continuum })
}
