use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{scaled_overlap, Rational};
use crate::hydrogen::{BoundState, Channel};
use crate::ladder::LadderFamily;

/// `weight <F_K|F_(J-K)>` (or the `G` analogue for `J < 0`) for an explicit split `K`.
///
/// `J = 0` always pairs the unprojected seed with itself.
pub fn sum_rule_pairing(family: &mut LadderFamily, order: i64, k: i64) -> Result<Rational> {
    let weight = family.channel.weight.clone();
    if order == 0 {
        return Ok(weight * scaled_overlap(&family.seed, &family.seed)?);
    }
    let (a, b) = if order > 0 { (k, order - k) } else { (-k, order + k) };
    if a.signum() * b.signum() < 0 || k < 0 || k > order.abs() {
        return Err(Error::InvalidOrder(order));
    }
    family.ensure_order(order)?;
    Ok(weight * family.pairing(a, b)?)
}

/// Channel value with the canonical split `K = |J|/2`.
pub fn sum_rule_constructive(family: &mut LadderFamily, order: i64) -> Result<Rational> {
    sum_rule_pairing(family, order, order.abs() / 2)
}

pub fn constructive_channel(state: &BoundState, channel: &Channel, order: i64) -> Result<Rational> {
    let mut family = LadderFamily::new(state, channel)?;
    sum_rule_constructive(&mut family, order)
}

/// Sum over the open channels.
pub fn constructive_total(state: &BoundState, order: i64) -> Result<Rational> {
    let mut total = Rational::zero();
    for channel in Channel::all(state.l) {
        total += constructive_channel(state, &channel, order)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};
    use crate::hydrogen::bound_state;

    #[test]
    fn ground_state_orders() {
        let s = bound_state(1, 0).unwrap();
        let expect = [(3, rat(16, 3)), (2, rat(4, 3)), (1, int(1)), (0, int(1)), (-1, rat(9, 8))];
        for (j, v) in expect {
            assert_eq!(constructive_total(&s, j).unwrap(), v, "J={j}");
        }
        assert_eq!(constructive_total(&s, -2).unwrap(), rat(43, 32));
        assert_eq!(constructive_total(&s, -3).unwrap(), rat(319, 192));
        assert_eq!(constructive_total(&s, -4).unwrap(), rat(9673, 4608));
    }

    #[test]
    fn two_s_table_totals() {
        let s = bound_state(2, 0).unwrap();
        let expect = [(0, int(14)), (1, int(1)), (2, rat(1, 3)), (3, rat(2, 3)), (-1, int(30)), (-2, int(195))];
        for (j, v) in expect {
            assert_eq!(constructive_total(&s, j).unwrap(), v, "J={j}");
        }
        assert!(matches!(constructive_total(&s, 4), Err(Error::DivergentAtOrigin(_))));
    }

    #[test]
    fn two_p_channel_totals() {
        let s = bound_state(2, 1).unwrap();
        let minus = Channel::minus(1).unwrap();
        let plus = Channel::plus(1);
        let m = [(0, int(10)), (1, rat(-1, 3)), (2, rat(1, 3)), (3, rat(-2, 9)), (4, rat(2, 9)), (-1, int(2)), (-2, int(19))];
        let p = [(0, int(8)), (1, rat(4, 3)), (2, rat(4, 15)), (3, rat(4, 45)), (4, rat(8, 45)), (-1, int(52)), (-2, int(352))];
        for (j, v) in m {
            assert_eq!(constructive_channel(&s, &minus, j).unwrap(), v, "minus J={j}");
        }
        for (j, v) in p {
            assert_eq!(constructive_channel(&s, &plus, j).unwrap(), v, "plus J={j}");
        }
        assert_eq!(constructive_total(&s, 0).unwrap(), int(18));
        assert_eq!(constructive_total(&s, -2).unwrap(), int(371));
    }

    #[test]
    fn pairings_of_one_order_agree_for_regular_rungs() {
        let s = bound_state(3, 2).unwrap();
        let mut fam = LadderFamily::new(&s, &Channel::plus(2)).unwrap();
        let a = sum_rule_pairing(&mut fam, 4, 2).unwrap();
        for k in [0, 1, 3, 4] {
            assert_eq!(sum_rule_pairing(&mut fam, 4, k).unwrap(), a, "K={k}");
        }
        let g = sum_rule_pairing(&mut fam, -3, 1).unwrap();
        assert_eq!(sum_rule_pairing(&mut fam, -3, 0).unwrap(), g);
    }
}
