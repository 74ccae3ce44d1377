use crate::error::{Error, Result};
use crate::model::{AgentId, AgentSet, Money};

use super::{Candidate, FfcQuery};

const MAX_ITEMS: usize = 64;

/// The project needs every item; each agent brings the items it owns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommodityOracle {
    items: Vec<String>,
    owns: Vec<u64>,
}

impl CommodityOracle {
    /// `ownership[i]` lists item indices owned by agent `i`.
    pub fn new(items: Vec<String>, ownership: Vec<Vec<usize>>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::InvalidInstance("commodity oracle needs at least one item".into()));
        }
        if items.len() > MAX_ITEMS {
            return Err(Error::CapExceeded { what: "item count", cap: MAX_ITEMS });
        }
        let mut owns = Vec::with_capacity(ownership.len());
        for list in ownership {
            let mut mask = 0u64;
            for j in list {
                if j >= items.len() {
                    return Err(Error::InvalidInstance(format!("item index {j} out of range")));
                }
                mask |= 1 << j;
            }
            owns.push(mask);
        }
        Ok(CommodityOracle { items, owns })
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    /// Item indices owned by an agent.
    pub fn owned(&self, id: AgentId) -> Vec<usize> {
        let mask = self.owns.get(id.0).copied().unwrap_or(0);
        (0..self.items.len()).filter(|j| mask & (1 << j) != 0).collect()
    }

    fn all_items(&self) -> u64 {
        if self.items.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.items.len()) - 1
        }
    }

    pub(crate) fn validate(&self, n: usize) -> Result<()> {
        if self.owns.len() != n {
            return Err(Error::InvalidInstance(format!(
                "ownership lists {} agents, instance has {n}",
                self.owns.len()
            )));
        }
        Ok(())
    }

    pub fn covers(&self, members: AgentSet) -> bool {
        let got = members.iter().fold(0u64, |acc, m| acc | self.owns[m.0]);
        got & self.all_items() == self.all_items()
    }

    /// Branch and bound: branch on the uncovered item with the fewest owners.
    pub(crate) fn cheapest<M: Money>(
        &self,
        query: &FfcQuery<M>,
        eligible: AgentSet,
    ) -> Option<Candidate<M>> {
        let sal = &query.min_salaries;
        let start = query.required;
        let covered = start.iter().fold(0u64, |acc, m| acc | self.owns[m.0]);
        let cost = start.iter().fold(M::zero(), |acc, m| acc + sal[m.0].clone());
        let mut best = None;
        let mut search = Search { oracle: self, sal, eligible, budget: &query.budget, best: &mut best };
        search.run(start, covered, cost);
        best
    }
}

struct Search<'a, M> {
    oracle: &'a CommodityOracle,
    sal: &'a [M],
    eligible: AgentSet,
    budget: &'a M,
    best: &'a mut Option<Candidate<M>>,
}

impl<M: Money> Search<'_, M> {
    fn run(&mut self, chosen: AgentSet, covered: u64, cost: M) {
        if &cost > self.budget {
            return;
        }
        if let Some(b) = self.best.as_ref() {
            if cost > b.cost {
                return;
            }
        }
        let all = self.oracle.all_items();
        if covered & all == all {
            if !chosen.is_empty() {
                Candidate::offer(self.best, Candidate { cost, members: chosen, schedule: None });
            }
            return;
        }
        let open = self.eligible.difference(chosen);
        let mut pick: Option<(usize, AgentSet)> = None;
        for j in 0..self.oracle.items.len() {
            if covered & (1 << j) != 0 {
                continue;
            }
            let owners = AgentSet::from_ids(open.iter().filter(|m| self.oracle.owns[m.0] & (1 << j) != 0));
            if owners.is_empty() {
                return;
            }
            if pick.is_none_or(|(_, o)| owners.len() < o.len()) {
                pick = Some((j, owners));
            }
        }
        let Some((_, owners)) = pick else { return };
        for a in owners.iter() {
            self.run(chosen.with(a), covered | self.oracle.owns[a.0], cost.clone() + self.sal[a.0].clone());
        }
    }
}
