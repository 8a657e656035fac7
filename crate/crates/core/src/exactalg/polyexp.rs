use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{factorial, powi, sqrt_exact, to_f64, Rational};
use crate::error::{Error, Result};

/// Lowest Laurent exponent any stored function may carry.
pub const EXPONENT_FLOOR: i32 = -4;

/// `p(rho) * exp(-rate * rho)` with a Laurent polynomial `p` over the rationals.
///
/// Zero coefficients are never stored, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyExp {
    terms: BTreeMap<i32, Rational>,
    rate: Rational,
}

impl PolyExp {
    pub fn zero(rate: Rational) -> Result<Self> {
        if !rate.is_positive() {
            return Err(Error::NonPositiveRate(rate.to_string()));
        }
        Ok(PolyExp { terms: BTreeMap::new(), rate })
    }

    pub fn from_terms<I>(terms: I, rate: Rational) -> Result<Self>
    where
        I: IntoIterator<Item = (i32, Rational)>,
    {
        let mut out = PolyExp::zero(rate)?;
        for (e, c) in terms {
            out.accumulate(e, c);
        }
        out.check_floor()?;
        Ok(out)
    }

    pub fn monomial(coefficient: Rational, exponent: i32, rate: Rational) -> Result<Self> {
        Self::from_terms([(exponent, coefficient)], rate)
    }

    pub fn rate(&self) -> &Rational {
        &self.rate
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coefficient(&self, exponent: i32) -> Rational {
        self.terms.get(&exponent).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, e: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn check_floor(&self) -> Result<()> {
        match self.min_exponent() {
            Some(e) if e < EXPONENT_FLOOR => Err(Error::ExponentFloorExceeded(e)),
            _ => Ok(()),
        }
    }

    fn same_rate(&self, other: &PolyExp) -> Result<()> {
        if self.rate != other.rate {
            return Err(Error::RateMismatch {
                left: self.rate.to_string(),
                right: other.rate.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyExp) -> Result<PolyExp> {
        self.same_rate(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.accumulate(e, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PolyExp) -> Result<PolyExp> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> PolyExp {
        if s.is_zero() {
            return PolyExp { terms: BTreeMap::new(), rate: self.rate.clone() };
        }
        PolyExp {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
            rate: self.rate.clone(),
        }
    }

    /// Multiplies by `rho^k`.
    pub fn shift(&self, k: i32) -> Result<PolyExp> {
        let out = PolyExp {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            rate: self.rate.clone(),
        };
        out.check_floor()?;
        Ok(out)
    }

    /// Exact `d/drho`: `(p' - a p) e^(-a rho)`.
    ///
    /// The result may sit one exponent below its input; callers that store it re-check the floor.
    pub fn differentiate(&self) -> PolyExp {
        let mut out = PolyExp { terms: BTreeMap::new(), rate: self.rate.clone() };
        for (e, c) in self.terms() {
            if e != 0 {
                out.accumulate(e - 1, c * Rational::from_integer(BigInt::from(e)));
            }
            out.accumulate(e, -(c * &self.rate));
        }
        out
    }

    pub fn eval(&self, rho: f64) -> f64 {
        let p: f64 = self.terms().map(|(e, c)| to_f64(c) * rho.powi(e)).sum();
        p * (-to_f64(&self.rate) * rho).exp()
    }

    /// Laurent part only (no exponential) of `self * other`.
    pub fn laurent_product(&self, other: &PolyExp) -> BTreeMap<i32, Rational> {
        let mut out: BTreeMap<i32, Rational> = BTreeMap::new();
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                let slot = out.entry(i + j).or_insert_with(Rational::zero);
                *slot += a * b;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// `int_0^inf rho^p f g drho`, exact.
pub fn moment(f: &PolyExp, g: &PolyExp, p: i32) -> Result<Rational> {
    let rate = f.rate() + g.rate();
    let product = f.laurent_product(g);
    if let Some((&e, _)) = product.iter().next() {
        if e + p <= -1 {
            return Err(Error::DivergentAtOrigin(e + p));
        }
    }
    let mut total = Rational::zero();
    for (e, c) in product {
        let n = (e + p) as u32;
        total += c * Rational::from_integer(factorial(n)) / powi(&rate, n as i32 + 1);
    }
    Ok(total)
}

/// `int_0^inf f g drho` via `int rho^n e^(-a rho) = n!/a^(n+1)`.
pub fn overlap(f: &PolyExp, g: &PolyExp) -> Result<Rational> {
    moment(f, g, 0)
}

impl fmt::Display for PolyExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "(")?;
            for (k, (e, c)) in self.terms.iter().rev().enumerate() {
                let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
                if k == 0 {
                    if sign == "-" {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, " {sign} ")?;
                }
                match (*e, mag.is_one()) {
                    (0, _) => write!(f, "{mag}")?,
                    (1, true) => write!(f, "rho")?,
                    (1, false) => write!(f, "{mag} rho")?,
                    (_, true) => write!(f, "rho^{e}")?,
                    (_, false) => write!(f, "{mag} rho^{e}")?,
                }
            }
            write!(f, ")")?;
        }
        write!(f, " exp(-{} rho)", self.rate)
    }
}

/// A physical function `sqrt(norm_sq) * poly`; the square root stays symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledPolyExp {
    pub poly: PolyExp,
    pub norm_sq: Rational,
}

impl ScaledPolyExp {
    pub fn new(poly: PolyExp, norm_sq: Rational) -> Self {
        ScaledPolyExp { poly, norm_sq }
    }

    pub fn unit(poly: PolyExp) -> Self {
        ScaledPolyExp { poly, norm_sq: Rational::one() }
    }

    pub fn rate(&self) -> &Rational {
        self.poly.rate()
    }

    pub fn eval(&self, rho: f64) -> f64 {
        to_f64(&self.norm_sq).sqrt() * self.poly.eval(rho)
    }

    pub fn differentiate(&self) -> ScaledPolyExp {
        ScaledPolyExp { poly: self.poly.differentiate(), norm_sq: self.norm_sq.clone() }
    }

    pub fn map_poly<F>(&self, op: F) -> Result<ScaledPolyExp>
    where
        F: FnOnce(&PolyExp) -> Result<PolyExp>,
    {
        Ok(ScaledPolyExp { poly: op(&self.poly)?, norm_sq: self.norm_sq.clone() })
    }

    /// Removes the component along a normalized `unit` function: `f - unit <unit|f>`.
    pub fn project_out(&self, unit: &ScaledPolyExp) -> Result<ScaledPolyExp> {
        // sqrt(nf) [P_f - nu <P_u|P_f> P_u]; the sqrt(nf) factor is untouched.
        let c = overlap(&unit.poly, &self.poly)? * &unit.norm_sq;
        Ok(ScaledPolyExp {
            poly: self.poly.sub(&unit.poly.scale(&c))?,
            norm_sq: self.norm_sq.clone(),
        })
    }
}

/// Combined prefactor `sqrt(n_f n_g)`, required to be rational.
pub fn joint_norm(f: &ScaledPolyExp, g: &ScaledPolyExp) -> Result<Rational> {
    let prod = &f.norm_sq * &g.norm_sq;
    sqrt_exact(&prod).ok_or_else(|| Error::IrrationalNormalization(prod.to_string()))
}

pub fn scaled_moment(f: &ScaledPolyExp, g: &ScaledPolyExp, p: i32) -> Result<Rational> {
    Ok(joint_norm(f, g)? * moment(&f.poly, &g.poly, p)?)
}

pub fn scaled_overlap(f: &ScaledPolyExp, g: &ScaledPolyExp) -> Result<Rational> {
    scaled_moment(f, g, 0)
}

/// Squared overlap `<f|rho^p|g>^2`, rational even when the joint norm is not.
pub fn squared_moment(f: &ScaledPolyExp, g: &ScaledPolyExp, p: i32) -> Result<Rational> {
    let m = moment(&f.poly, &g.poly, p)?;
    Ok(&m * &m * &f.norm_sq * &g.norm_sq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    fn pe(terms: &[(i32, i64)], rate: Rational) -> PolyExp {
        PolyExp::from_terms(terms.iter().map(|&(e, c)| (e, int(c))), rate).unwrap()
    }

    #[test]
    fn add_cancels_to_empty() {
        let f = pe(&[(2, 2)], int(1));
        let sum = f.add(&f.scale(&int(-1))).unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn add_merges_coefficients() {
        let f = pe(&[(3, 1), (2, -2)], rat(1, 2));
        let g = pe(&[(2, 3)], rat(1, 2));
        assert_eq!(f.add(&g).unwrap(), pe(&[(3, 1), (2, 1)], rat(1, 2)));
    }

    #[test]
    fn add_rejects_mixed_rates() {
        let f = pe(&[(1, 1)], int(1));
        let g = pe(&[(1, 1)], rat(1, 2));
        assert!(matches!(f.add(&g), Err(Error::RateMismatch { .. })));
    }

    #[test]
    fn derivative_examples() {
        let f = pe(&[(2, 2)], int(1));
        assert_eq!(f.differentiate(), pe(&[(1, 4), (2, -2)], int(1)));
        assert_eq!(pe(&[(0, 1)], int(1)).differentiate(), pe(&[(0, -1)], int(1)));
        assert_eq!(pe(&[(-1, 1)], int(1)).differentiate(), pe(&[(-2, -1), (-1, -1)], int(1)));
    }

    #[test]
    fn overlap_examples() {
        let f = pe(&[(2, 2)], int(1));
        assert_eq!(overlap(&f, &f).unwrap(), int(3));
        let g = pe(&[(4, 1)], int(1));
        assert_eq!(overlap(&g, &pe(&[(0, 1)], int(1))).unwrap(), rat(3, 4));
        let a = pe(&[(1, 4)], int(1));
        let b = pe(&[(-2, 8)], int(1));
        assert_eq!(overlap(&a, &b), Err(Error::DivergentAtOrigin(-1)));
    }

    #[test]
    fn floor_is_enforced() {
        assert_eq!(
            PolyExp::monomial(int(1), -5, int(1)),
            Err(Error::ExponentFloorExceeded(-5))
        );
        assert!(PolyExp::zero(int(0)).is_err());
        assert!(pe(&[(-3, 1)], int(1)).shift(-2).is_err());
    }

    #[test]
    fn display_is_readable() {
        let f = pe(&[(3, 1), (2, -2)], rat(1, 2));
        assert_eq!(f.to_string(), "(rho^3 - 2 rho^2) exp(-1/2 rho)");
    }
}
