//! Exact rational arithmetic over `p(rho) e^(-a rho)` with Laurent `p`.

pub mod linsolve;
pub mod polyexp;
pub mod rational;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::potentials::Potential;
pub use polyexp::{
    joint_norm, moment, overlap, scaled_moment, scaled_overlap, squared_moment, PolyExp, ScaledPolyExp,
    EXPONENT_FLOOR,
};
pub use rational::{int, rat, Rational};

/// `(-d^2/drho^2 + l(l+1)/rho^2 + 2 v0 + ksq) f`, exact.
pub fn apply_h(f: &PolyExp, l: u32, ksq: &Rational, v0: &Potential) -> Result<PolyExp> {
    let (ve, vc) = v0.doubled_monomial()?;
    let lam = int(i64::from(l) * (i64::from(l) + 1));
    let second = f.differentiate().differentiate();
    let mut terms: Vec<(i32, Rational)> = Vec::new();
    terms.extend(second.terms().map(|(e, c)| (e, -c.clone())));
    terms.extend(f.terms().map(|(e, c)| (e - 2, c * &lam)));
    terms.extend(f.terms().map(|(e, c)| (e + ve, c * &vc)));
    terms.extend(f.terms().map(|(e, c)| (e, c * ksq)));
    PolyExp::from_terms(terms, f.rate().clone())
}

/// Unique `G` with `(h_l + ksq) G = rhs`, regular at the origin and decaying at infinity.
///
/// When `homogeneous` is given it must be the normalizable solution of the homogeneous
/// equation; `rhs` must already be orthogonal to it and `G` is made orthogonal to it too.
pub fn solve_inhomogeneous(
    rhs: &PolyExp,
    l: u32,
    ksq: &Rational,
    v0: &Potential,
    homogeneous: Option<&PolyExp>,
) -> Result<PolyExp> {
    v0.doubled_monomial()?;
    let rate = rhs.rate().clone();
    if let Some(h) = homogeneous {
        let c = overlap(h, rhs)?;
        if !c.is_zero() {
            return Err(Error::ResonanceUnprojected(c.to_string()));
        }
    }
    if rhs.is_zero() {
        return PolyExp::zero(rate);
    }
    let low = l as i32 + 1;
    let mut top = rhs.max_exponent().unwrap() + 2;
    if homogeneous.is_some() {
        top += 1;
    }
    if top < low {
        return Err(Error::NoPolynomialSolution(top));
    }
    let basis: Vec<PolyExp> = (low..=top)
        .map(|k| PolyExp::monomial(int(1), k, rate.clone()))
        .collect::<Result<_>>()?;
    let images: Vec<PolyExp> = basis.iter().map(|b| apply_h(b, l, ksq, v0)).collect::<Result<_>>()?;

    let mut exponents: Vec<i32> = images.iter().flat_map(|p| p.terms().map(|(e, _)| e)).collect();
    exponents.extend(rhs.terms().map(|(e, _)| e));
    exponents.sort_unstable();
    exponents.dedup();

    let mut a: Vec<Vec<Rational>> = exponents
        .iter()
        .map(|&e| images.iter().map(|p| p.coefficient(e)).collect())
        .collect();
    let mut b: Vec<Rational> = exponents.iter().map(|&e| rhs.coefficient(e)).collect();
    if let Some(h) = homogeneous {
        a.push(basis.iter().map(|p| overlap(h, p)).collect::<Result<_>>()?);
        b.push(Rational::zero());
    }
    let x = linsolve::solve(a, b).map_err(|failure| match failure {
        linsolve::SolveFailure::Inconsistent => Error::NoPolynomialSolution(top),
        linsolve::SolveFailure::Underdetermined(k) => Error::AmbiguousSolution(k),
    })?;
    PolyExp::from_terms((low..=top).zip(x), rate)
}
