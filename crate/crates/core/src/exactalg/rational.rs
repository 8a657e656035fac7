use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Integer power with a possibly negative exponent.
pub fn powi(base: &Rational, e: i32) -> Rational {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

/// Exact square root when both numerator and denominator are perfect squares.
pub fn sqrt_exact(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    // Large numerators/denominators overflow f64 individually, so fall back to logs.
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    sign * (ln_bigint(&x.numer().abs()) - ln_bigint(x.denom())).exp()
}

fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Renders as `p/q`, including a unit denominator.
pub fn to_fraction_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_fraction(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_square_fraction() {
        assert_eq!(sqrt_exact(&rat(9, 64)), Some(rat(3, 8)));
        assert_eq!(sqrt_exact(&rat(1, 8)), None);
        assert_eq!(sqrt_exact(&rat(-4, 1)), None);
    }

    #[test]
    fn lowest_terms_and_sign() {
        let r = rat(6, -8);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(4));
        assert_eq!(to_fraction_string(&r), "-3/4");
        assert_eq!(to_fraction_string(&int(14)), "14/1");
    }

    #[test]
    fn fraction_round_trip() {
        for s in ["9673/4608", "-2/15", "371/1"] {
            assert_eq!(to_fraction_string(&parse_fraction(s).unwrap()), s);
        }
        assert_eq!(parse_fraction("19"), Some(int(19)));
        assert_eq!(parse_fraction("1/0"), None);
    }

    #[test]
    fn huge_values_convert_through_logs() {
        let big = Rational::from_integer(factorial(400));
        let v = to_f64(&(big.clone() / (big * int(3))));
        assert!((v - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }
}
