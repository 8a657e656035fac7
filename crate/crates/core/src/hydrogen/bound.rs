use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::rational::{binomial, factorial, powi, rat, sqrt_exact};
use crate::exactalg::{PolyExp, Rational, ScaledPolyExp};

/// Normalized Coulomb eigenstate with `k^2 = 1/n^2` in units of the Bohr radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundState {
    pub n: u32,
    pub l: u32,
    pub ksq: Rational,
    /// Reduced radial function `u = rho R`, with `int u^2 = 1`.
    pub radial: ScaledPolyExp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Plus,
    Minus,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Plus => "plus",
            Direction::Minus => "minus",
        }
    }
}

/// Dipole branch `l -> l+1` or `l -> l-1` with its angular weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Channel {
    pub direction: Direction,
    pub l: u32,
    pub weight: Rational,
}

impl Channel {
    pub fn new(direction: Direction, l: u32) -> Result<Channel> {
        let li = i64::from(l);
        let weight = match direction {
            Direction::Plus => rat((li + 1) * (li + 1), (2 * li + 1) * (2 * li + 3)),
            Direction::Minus if l == 0 => return Err(Error::NoMinusChannel),
            Direction::Minus => rat(li * li, (2 * li + 1) * (2 * li - 1)),
        };
        Ok(Channel { direction, l, weight })
    }

    pub fn plus(l: u32) -> Channel {
        Channel::new(Direction::Plus, l).expect("plus channel always exists")
    }

    pub fn minus(l: u32) -> Result<Channel> {
        Channel::new(Direction::Minus, l)
    }

    /// Channels open from `l`: plus always, minus for `l >= 1`.
    pub fn all(l: u32) -> Vec<Channel> {
        let mut out = vec![Channel::plus(l)];
        if let Ok(m) = Channel::minus(l) {
            out.push(m);
        }
        out
    }

    /// Channel connecting `l` to `target_l`, if dipole-allowed.
    pub fn between(l: u32, target_l: u32) -> Result<Channel> {
        if target_l == l + 1 {
            Ok(Channel::plus(l))
        } else if target_l + 1 == l {
            Channel::minus(l)
        } else {
            Err(Error::ChannelMismatch { wave: i64::from(target_l), expected: i64::from(l) + 1 })
        }
    }

    pub fn target_l(&self) -> u32 {
        match self.direction {
            Direction::Plus => self.l + 1,
            Direction::Minus => self.l - 1,
        }
    }

    pub fn weight_f64(&self) -> f64 {
        crate::exactalg::rational::to_f64(&self.weight)
    }
}

pub fn check_quantum_numbers(n: u32, l: u32) -> Result<()> {
    if n == 0 || l >= n {
        return Err(Error::InvalidQuantumNumbers { n: i64::from(n), l: i64::from(l) });
    }
    Ok(())
}

/// Exact normalized `R_{nl}` built from the associated Laguerre recurrence coefficients.
pub fn bound_state(n: u32, l: u32) -> Result<BoundState> {
    check_quantum_numbers(n, l)?;
    let k = n - l - 1;
    let alpha = 2 * l + 1;
    let two_over_n = rat(2, i64::from(n));
    // u = (2rho/n)^(l+1) L_k^(2l+1)(2rho/n) e^(-rho/n), int u^2 = n^2 (n+l)!/(n-l-1)!.
    let terms = (0..=k).map(|r| {
        let mut c = Rational::from_integer(binomial(k + alpha, k - r)) / Rational::from_integer(factorial(r));
        if r % 2 == 1 {
            c = -c;
        }
        let e = (l + 1 + r) as i32;
        (e, c * powi(&two_over_n, e))
    });
    let poly = PolyExp::from_terms(terms, rat(1, i64::from(n)))?;
    let norm_sq = Rational::new(
        factorial(k),
        BigInt::from(n) * BigInt::from(n) * factorial(n + l),
    );
    let radial = canonicalize(poly, norm_sq);
    Ok(BoundState { n, l, ksq: rat(1, i64::from(n) * i64::from(n)), radial })
}

/// Primitive integer polynomial with positive leading coefficient; rational norms folded in.
fn canonicalize(poly: PolyExp, norm_sq: Rational) -> ScaledPolyExp {
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    for (_, c) in poly.terms() {
        lcm = lcm.lcm(c.denom());
        gcd = gcd.gcd(c.numer());
    }
    let lead_negative = poly.max_exponent().is_some_and(|e| poly.coefficient(e).is_negative());
    let mut s = Rational::new(lcm, gcd);
    if lead_negative {
        s = -s;
    }
    let poly = poly.scale(&s);
    let norm_sq = norm_sq / (&s * &s);
    match sqrt_exact(&norm_sq) {
        Some(root) => ScaledPolyExp::unit(poly.scale(&root)),
        None => ScaledPolyExp::new(poly, norm_sq),
    }
}
