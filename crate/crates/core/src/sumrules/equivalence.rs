use crate::error::{Error, Result};
use crate::exactalg::rational::rat;
use crate::exactalg::Rational;
use crate::ladder::{wronskian_at_origin, LadderFamily, WronskianLimit};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkStatus {
    /// `<F_j|F_(k+1)> = <F_(j+1)|F_k> + W(F_j, F_k)|_0` holds exactly.
    Closed,
    /// Both pairings diverge at the origin, so there is nothing to reconcile.
    Divergent,
    Failed,
}

/// One step of the pairing chain at fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingLink {
    pub left: (i64, i64),
    pub right: (i64, i64),
    pub left_value: Option<Rational>,
    pub right_value: Option<Rational>,
    pub wronskian: Option<Rational>,
    pub status: LinkStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub n: u32,
    pub l: u32,
    pub target_l: u32,
    pub order: i64,
    pub links: Vec<PairingLink>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.links.iter().all(|k| k.status != LinkStatus::Failed)
    }
}

fn finite_pairing(family: &LadderFamily, j: i64, k: i64) -> Result<Option<Rational>> {
    match family.pairing(j, k) {
        Ok(v) => Ok(Some(v)),
        Err(Error::DivergentAtOrigin(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Walks `<F_0|F_J>`, `<F_1|F_(J-1)>`, ... (unweighted) and checks each step against the boundary term.
pub fn equivalence_suite(family: &mut LadderFamily, order: i64) -> Result<EquivalenceReport> {
    if order < 1 {
        return Err(Error::InvalidOrder(order));
    }
    family.ensure_order(order)?;
    let mut links = Vec::new();
    for j in 0..(order + 1) / 2 {
        let (left, right) = ((j, order - j), (j + 1, order - j - 1));
        let left_value = finite_pairing(family, left.0, left.1)?;
        let right_value = finite_pairing(family, right.0, right.1)?;
        let wronskian = match wronskian_at_origin(family, j, order - j - 1)? {
            WronskianLimit::Finite(w) => Some(w.value),
            WronskianLimit::Infinite => None,
        };
        let status = match (&left_value, &right_value, &wronskian) {
            (Some(a), Some(b), Some(w)) if *a == b + w => LinkStatus::Closed,
            (None, None, _) => LinkStatus::Divergent,
            _ => LinkStatus::Failed,
        };
        links.push(PairingLink { left, right, left_value, right_value, wronskian, status });
    }
    Ok(EquivalenceReport {
        n: family.state.n,
        l: family.state.l,
        target_l: family.target_l(),
        order,
        links,
    })
}

/// `W(F_0, F_2)|_0 = -48/m^3` for S states in the plus channel.
pub fn s_state_boundary_term(m: u32) -> Rational {
    rat(-48, i64::from(m).pow(3))
}

/// `W(F_1, F_2)|_0 = 32(m^2-1)/(3 m^5)` for P states in the minus channel.
pub fn p_minus_boundary_term(m: u32) -> Rational {
    let m = i64::from(m);
    rat(32 * (m * m - 1), 3 * m.pow(5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;
    use crate::hydrogen::{bound_state, Channel};

    fn family(n: u32, l: u32, ch: Channel) -> LadderFamily {
        LadderFamily::new(&bound_state(n, l).unwrap(), &ch).unwrap()
    }

    #[test]
    fn s_states_order_three() {
        for m in 1..=5 {
            let mut fam = family(m, 0, Channel::plus(0));
            let r = equivalence_suite(&mut fam, 3).unwrap();
            assert!(r.passed(), "{r:?}");
            let first = &r.links[0];
            assert_eq!(first.wronskian, Some(s_state_boundary_term(m)));
        }
        let mut fam = family(2, 0, Channel::plus(0));
        let r = equivalence_suite(&mut fam, 3).unwrap();
        let first = &r.links[0];
        assert_eq!(first.left_value, Some(int(-4)));
        assert_eq!(first.right_value, Some(int(2)));
    }

    #[test]
    fn p_states_minus_channel() {
        for m in 2..=5 {
            let mut fam = family(m, 1, Channel::minus(1).unwrap());
            let r = equivalence_suite(&mut fam, 4).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.links[1].wronskian, Some(p_minus_boundary_term(m)));
        }
        let mut fam = family(2, 1, Channel::minus(1).unwrap());
        let r = equivalence_suite(&mut fam, 4).unwrap();
        assert_eq!(r.links[1].wronskian, Some(int(1)));
        assert_eq!(r.links[1].left_value, Some(rat(5, 3)));
        assert_eq!(r.links[1].right_value, Some(rat(2, 3)));
    }

    #[test]
    fn two_p_plus_pairings_agree() {
        let mut fam = family(2, 1, Channel::plus(1));
        let r = equivalence_suite(&mut fam, 4).unwrap();
        assert!(r.passed());
        assert_eq!(r.links[1].left_value, Some(rat(2, 3)));
        assert_eq!(r.links[1].right_value, Some(rat(2, 3)));
        assert_eq!(&rat(2, 3) * &fam.channel.weight, rat(8, 45));
    }

    #[test]
    fn d_state_has_no_boundary_terms() {
        for ch in Channel::all(2) {
            let mut fam = family(3, 2, ch);
            let r = equivalence_suite(&mut fam, 4).unwrap();
            assert!(r.links.iter().all(|k| k.status == LinkStatus::Closed && k.wronskian == Some(int(0))), "{r:?}");
        }
    }

    #[test]
    fn ground_state_order_four_diverges() {
        let mut fam = family(1, 0, Channel::plus(0));
        let r = equivalence_suite(&mut fam, 4).unwrap();
        assert!(r.passed());
        assert_eq!(r.links[1].status, LinkStatus::Divergent);
    }
}
