//! Client-side mechanisms: the least workable budget and a descending
//! first-price coalition auction.

use crate::decentralized::validate_coalition;
use crate::error::Result;
use crate::instance::Instance;
use crate::model::{format_coalition, Coalition, Money};
use crate::oracle::{ffc, FfcQuery};

/// Least budget at which some coalition is feasible, or `None` if even the
/// instance budget is not enough.
pub fn find_vstar(inst: &Instance) -> Option<i64> {
    let at = |b: i64| ffc(inst, &FfcQuery::<i64>::new(inst).with_budget(b));
    at(inst.budget)?;
    let (mut lo, mut hi) = (0i64, inst.budget);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if at(mid).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    debug_assert!({
        let tight = inst.with_budget(lo);
        let c = crate::centralized::fcfc::<i64>(&tight).unwrap();
        crate::decentralized::strongly_winning_check(&tight, &c).unwrap_or(false)
    });
    Some(lo)
}

/// No feasible rival is strictly cheaper while paying every member of `c`
/// at least its salary in `c`.
pub fn auction_winning_check<M: Money>(inst: &Instance, c: &Coalition<M>) -> Result<bool> {
    validate_coalition(inst, c)?;
    let mut q = FfcQuery::new(inst).with_budget(c.cost.clone());
    for (m, s) in c.members.iter().zip(&c.salaries) {
        q = q.pin(*m, s.clone());
    }
    Ok(ffc(inst, &q).is_none_or(|w| w.cost >= c.cost))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuctionRound<M> {
    pub asking: M,
    pub standing: Coalition<M>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuctionTrace<M> {
    pub rounds: Vec<AuctionRound<M>>,
}

impl<M: Money> AuctionTrace<M> {
    pub fn winner(&self) -> &Coalition<M> {
        &self.rounds.last().expect("a trace has at least one round").standing
    }

    /// One line per round, then the winner.
    pub fn render(&self, inst: &Instance) -> String {
        let mut out = String::new();
        for (k, r) in self.rounds.iter().enumerate() {
            out.push_str(&format!(
                "round {} asking={} standing {}\n",
                k + 1,
                r.asking,
                format_coalition(&inst.agents, &r.standing)
            ));
        }
        out.push_str(&format!("winner {}\n", format_coalition(&inst.agents, self.winner())));
        out
    }
}

/// Runs the auction: the client asks for a cheaper offer until no coalition
/// can undercut the standing one while keeping its members' salaries.
pub fn auction_run(inst: &Instance) -> Option<AuctionTrace<i64>> {
    let first = ffc(inst, &FfcQuery::<i64>::new(inst))?;
    let mut rounds = vec![AuctionRound { asking: inst.budget, standing: first }];
    loop {
        let standing = &rounds.last().unwrap().standing;
        let asking = standing.cost - 1;
        let mut q = FfcQuery::new(inst).with_budget(asking);
        for (m, s) in standing.members.iter().zip(&standing.salaries) {
            q = q.pin(*m, *s);
        }
        match ffc(inst, &q) {
            Some(next) => rounds.push(AuctionRound { asking, standing: next }),
            None => return Some(AuctionTrace { rounds }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{AgentId, AgentTable, SalaryModel};
    use crate::oracle::{CommodityOracle, OracleSpec};

    fn e1(mins: Vec<i64>) -> Instance {
        let oracle = CommodityOracle::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        Instance::new(AgentTable::with_minima(mins).unwrap(), 5, SalaryModel::Project, OracleSpec::Commodity(oracle))
            .unwrap()
    }

    #[test]
    fn vstar_on_e1() {
        assert_eq!(find_vstar(&e1(vec![2, 2, 2])), Some(4));
        assert_eq!(find_vstar(&e1(vec![2, 2, 2]).with_budget(3)), None);
    }

    #[test]
    fn auction_checks() {
        let inst = e1(vec![2, 2, 2]);
        let c = |s: Vec<i64>| Coalition::new(&inst.agents, vec![AgentId(0), AgentId(1)], s, inst.model, None).unwrap();
        assert!(auction_winning_check(&inst, &c(vec![2, 2])).unwrap());
        assert!(!auction_winning_check(&inst, &c(vec![2, 3])).unwrap());
    }

    #[test]
    fn single_round_auction() {
        let t = auction_run(&e1(vec![2, 2, 3])).unwrap();
        assert_eq!(t.rounds.len(), 1);
        assert_eq!(t.winner().cost, 4);
        assert_eq!(t.winner().members, vec![AgentId(0), AgentId(1)]);
    }
}
