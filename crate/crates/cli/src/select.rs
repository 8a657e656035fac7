//! Parsing of state, order and channel selectors into core types.

use std::ops::RangeInclusive;

use sumrule_core::hydrogen::{bound_state, BoundState};
use sumrule_core::potentials::Potential;
use sumrule_core::sumrules::ChannelSelector;

use crate::cli::{ChannelArg, StateArgs};
use crate::CliError;

const LETTERS: &str = "spdfghik";

#[derive(Clone, Debug)]
pub enum Target {
    Hydrogen(BoundState),
    Solved { potential: Potential, nodes: u32, l: u32 },
}

impl Target {
    pub fn l(&self) -> u32 {
        match self {
            Target::Hydrogen(s) => s.l,
            Target::Solved { l, .. } => *l,
        }
    }
}

/// `1s`, `2p`, `3d`, ... or `n,l`.
pub fn parse_hydrogen(text: &str) -> Result<(u32, u32), CliError> {
    let t = text.trim().to_ascii_lowercase();
    let bad = || CliError::Usage(format!("invalid state {text:?}; expected e.g. 1s, 2p or n,l"));
    if let Some((n, l)) = t.split_once(',') {
        return Ok((n.trim().parse().map_err(|_| bad())?, l.trim().parse().map_err(|_| bad())?));
    }
    let letter = t.chars().last().ok_or_else(bad)?;
    let l = LETTERS.find(letter).ok_or_else(bad)? as u32;
    let n = t[..t.len() - letter.len_utf8()].parse().map_err(|_| bad())?;
    Ok((n, l))
}

pub fn resolve(args: &StateArgs) -> Result<Target, CliError> {
    match (&args.state, &args.potential) {
        (Some(_), Some(_)) => Err(CliError::Usage("--state and --potential are exclusive".into())),
        (None, None) => Err(CliError::Usage("one of --state or --potential is required".into())),
        (Some(s), None) => {
            if args.nodes.is_some() || args.l.is_some() {
                return Err(CliError::Usage("--nodes and --l go with --potential".into()));
            }
            let (n, l) = parse_hydrogen(s)?;
            Ok(Target::Hydrogen(bound_state(n, l).map_err(|e| CliError::Usage(e.to_string()))?))
        }
        (None, Some(p)) => {
            let potential: Potential = p.parse().map_err(|e: sumrule_core::Error| CliError::Usage(e.to_string()))?;
            Ok(Target::Solved { potential, nodes: args.nodes.unwrap_or(0), l: args.l.unwrap_or(0) })
        }
    }
}

/// `A..B` inclusive, or a single order; the range must be nonempty.
pub fn parse_orders(text: &str) -> Result<RangeInclusive<i64>, CliError> {
    let bad = || CliError::Usage(format!("invalid order range {text:?}; expected A..B"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let j = text.trim().parse().map_err(|_| bad())?;
            (j, j)
        }
    };
    if a > b {
        return Err(CliError::Usage(format!("empty order range {a}..{b}")));
    }
    Ok(a..=b)
}

/// Channels a table shows; `all` adds the total only when both channels exist.
pub fn selectors(arg: ChannelArg, l: u32) -> Result<Vec<ChannelSelector>, CliError> {
    let minus = || {
        if l == 0 {
            Err(CliError::Usage("the minus channel does not exist for l = 0".into()))
        } else {
            Ok(ChannelSelector::Minus)
        }
    };
    Ok(match arg {
        ChannelArg::Plus => vec![ChannelSelector::Plus],
        ChannelArg::Minus => vec![minus()?],
        ChannelArg::Total => vec![ChannelSelector::Total],
        ChannelArg::All if l == 0 => vec![ChannelSelector::Plus],
        ChannelArg::All => vec![ChannelSelector::Minus, ChannelSelector::Plus, ChannelSelector::Total],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectroscopic_and_pair_forms() {
        assert_eq!(parse_hydrogen("1s").unwrap(), (1, 0));
        assert_eq!(parse_hydrogen("2P").unwrap(), (2, 1));
        assert_eq!(parse_hydrogen("4f").unwrap(), (4, 3));
        assert_eq!(parse_hydrogen("5, 2").unwrap(), (5, 2));
        assert!(parse_hydrogen("2x").is_err());
        assert!(parse_hydrogen("s").is_err());
    }

    #[test]
    fn order_ranges() {
        assert_eq!(parse_orders("-4..3").unwrap(), -4..=3);
        assert_eq!(parse_orders("2").unwrap(), 2..=2);
        assert!(parse_orders("3..1").is_err());
        assert!(parse_orders("a..1").is_err());
    }
}
