use std::fmt;

use crate::exactalg::rational::to_f64;
use crate::exactalg::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChannelSelector {
    Plus,
    Minus,
    Total,
}

impl fmt::Display for ChannelSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChannelSelector::Plus => "plus",
            ChannelSelector::Minus => "minus",
            ChannelSelector::Total => "total",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StateLabel {
    Hydrogen { n: u32, l: u32 },
    Potential { potential: String, nodes: u32, l: u32 },
}

/// One row of a sum-rule table.
#[derive(Clone, Debug, PartialEq)]
pub struct SumRuleValue {
    pub state: StateLabel,
    pub order: i64,
    pub channel: ChannelSelector,
    pub discrete: Option<f64>,
    /// `None` when the continuum diverges or the spectrum is purely discrete.
    pub continuum: Option<f64>,
    pub estimated_error: f64,
    pub constructive: Option<Rational>,
    pub closed_form: Option<Rational>,
    /// Grid-ladder value, for states without exact arithmetic.
    pub constructive_numeric: Option<f64>,
    pub closed_form_numeric: Option<f64>,
    pub divergent: bool,
    pub tolerance: f64,
    pub pass: bool,
}

impl SumRuleValue {
    pub fn total(&self) -> Option<f64> {
        if self.divergent {
            return None;
        }
        self.discrete.map(|d| d + self.continuum.unwrap_or(0.0))
    }

    /// Best available reference: exact constructive, then exact closed form, then numeric.
    pub fn reference(&self) -> Option<f64> {
        self.constructive
            .as_ref()
            .or(self.closed_form.as_ref())
            .map(to_f64)
            .or(self.constructive_numeric)
            .or(self.closed_form_numeric)
    }

    /// Recomputes `pass`: the brute-force total must meet every reference within
    /// `max(tolerance, estimated_error)`; a divergent row passes only if no finite reference exists.
    pub fn evaluate(mut self) -> SumRuleValue {
        let budget = self.tolerance.max(self.estimated_error);
        self.pass = match self.total() {
            None => self.divergent && self.reference().is_none(),
            Some(total) => {
                let refs = [
                    self.constructive.as_ref().map(to_f64),
                    self.closed_form.as_ref().map(to_f64),
                    self.constructive_numeric,
                    self.closed_form_numeric,
                ];
                let exact_agree = match (&self.constructive, &self.closed_form) {
                    (Some(a), Some(b)) => a == b,
                    _ => true,
                };
                refs.iter().any(Option::is_some)
                    && exact_agree
                    && refs.iter().flatten().all(|r| (total - r).abs() <= budget)
            }
        };
        self
    }
}
