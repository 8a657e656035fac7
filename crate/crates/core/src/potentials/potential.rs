use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactalg::rational::{int, to_f64, Rational};

/// Dimensionless central potential `v0(rho)`, energies in units of `hbar^2/(M a^2)`.
///
/// Coulomb is `-1/rho`, power law is `rho^gamma / gamma`, log is `ln rho`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Potential {
    Coulomb,
    PowerLaw(Rational),
    Log,
}

impl Potential {
    pub fn power_law(gamma: Rational) -> Result<Potential> {
        if gamma.is_zero() || gamma <= int(-2) {
            return Err(Error::InvalidPotential(format!("gamma={gamma} needs gamma != 0, gamma > -2")));
        }
        Ok(Potential::PowerLaw(gamma))
    }

    pub fn gamma_f64(&self) -> Option<f64> {
        match self {
            Potential::Coulomb => Some(-1.0),
            Potential::PowerLaw(g) => Some(to_f64(g)),
            Potential::Log => None,
        }
    }

    /// `2 v0` as a single Laurent monomial `(exponent, coefficient)` when one exists.
    pub fn doubled_monomial(&self) -> Result<(i32, Rational)> {
        match self {
            Potential::Coulomb => Ok((-1, int(-2))),
            Potential::PowerLaw(g) if g.is_integer() && *g >= int(-1) => {
                let e = g.to_integer().to_i32().ok_or_else(|| Error::NonPolynomialPotential(self.to_string()))?;
                Ok((e, int(2) / g))
            }
            _ => Err(Error::NonPolynomialPotential(self.to_string())),
        }
    }

    pub fn v0(&self, rho: f64) -> f64 {
        match self {
            Potential::Coulomb => -1.0 / rho,
            Potential::PowerLaw(g) => {
                let g = to_f64(g);
                rho.powf(g) / g
            }
            Potential::Log => rho.ln(),
        }
    }

    /// `d^k v0 / d rho^k` for any order.
    pub fn derivative(&self, k: u32, rho: f64) -> f64 {
        if k == 0 {
            return self.v0(rho);
        }
        // Every kind has v0' = rho^(g-1), so higher derivatives are falling factorials of g-1.
        let g = match self {
            Potential::Log => 0.0,
            _ => self.gamma_f64().unwrap(),
        };
        let mut coef = 1.0;
        for i in 1..k {
            coef *= g - i as f64;
        }
        coef * rho.powf(g - k as f64)
    }

    /// Origin behaviour `v0 -> b rho^q`; `None` for the logarithm.
    pub fn origin_power(&self) -> Option<(f64, f64)> {
        match self {
            Potential::Coulomb => Some((-1.0, -1.0)),
            Potential::PowerLaw(g) => {
                let g = to_f64(g);
                Some((1.0 / g, g))
            }
            Potential::Log => None,
        }
    }

    pub fn is_confining(&self) -> bool {
        match self {
            Potential::Coulomb => false,
            Potential::PowerLaw(g) => g.is_positive(),
            Potential::Log => true,
        }
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Potential::Coulomb => write!(f, "coulomb"),
            Potential::PowerLaw(g) => write!(f, "gamma={g}"),
            Potential::Log => write!(f, "log"),
        }
    }
}

impl FromStr for Potential {
    type Err = Error;

    fn from_str(s: &str) -> Result<Potential> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "coulomb" => return Ok(Potential::Coulomb),
            "log" | "ln" => return Ok(Potential::Log),
            _ => {}
        }
        let value = s
            .strip_prefix("gamma=")
            .or_else(|| s.strip_prefix("power="))
            .ok_or_else(|| Error::InvalidPotential(s.clone()))?;
        let gamma = crate::exactalg::rational::parse_fraction(value)
            .ok_or_else(|| Error::InvalidPotential(s.clone()))?;
        if gamma == -Rational::one() {
            return Ok(Potential::Coulomb);
        }
        Potential::power_law(gamma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat;

    #[test]
    fn parses_all_kinds() {
        assert_eq!("coulomb".parse::<Potential>().unwrap(), Potential::Coulomb);
        assert_eq!("log".parse::<Potential>().unwrap(), Potential::Log);
        assert_eq!("gamma=2".parse::<Potential>().unwrap(), Potential::PowerLaw(int(2)));
        assert_eq!("gamma=1/2".parse::<Potential>().unwrap(), Potential::PowerLaw(rat(1, 2)));
        assert!("gamma=0".parse::<Potential>().is_err());
        assert!("gamma=-3".parse::<Potential>().is_err());
        assert!("yukawa".parse::<Potential>().is_err());
    }

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        let h = 1e-4;
        for v in [Potential::Coulomb, Potential::PowerLaw(int(2)), Potential::PowerLaw(rat(1, 2)), Potential::Log] {
            for k in 0..3 {
                let x = 1.3;
                let fd = (v.derivative(k, x + h) - v.derivative(k, x - h)) / (2.0 * h);
                assert!((fd - v.derivative(k + 1, x)).abs() < 1e-6, "{v} k={k}");
            }
        }
    }

    #[test]
    fn doubled_monomial_only_for_integer_gamma() {
        assert_eq!(Potential::Coulomb.doubled_monomial().unwrap(), (-1, int(-2)));
        assert_eq!(Potential::PowerLaw(int(2)).doubled_monomial().unwrap(), (2, int(1)));
        assert!(Potential::Log.doubled_monomial().is_err());
        assert!(Potential::PowerLaw(rat(1, 2)).doubled_monomial().is_err());
    }
}
