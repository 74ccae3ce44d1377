//! Literal definitional scans over the bounded coalition space. Slow, and
//! only meant to cross-check the solvers on small instances.

use crate::decentralized::{endangers, EndangermentKind};
use crate::error::Result;
use crate::instance::Instance;
use crate::model::{AgentId, Coalition};
use crate::space::{enumerate_with, CoalitionTable};

/// Every feasible coalition with salaries at most the budget.
pub struct Space<'a> {
    inst: &'a Instance,
    pub table: CoalitionTable,
    pub profiles: Vec<Coalition<i64>>,
}

impl<'a> Space<'a> {
    pub fn build(inst: &'a Instance) -> Result<Self> {
        let table = CoalitionTable::build(inst)?;
        let profiles = enumerate_with(inst, &table, inst.budget)?;
        Ok(Space { inst, table, profiles })
    }

    fn endangered(&self, c: &Coalition<i64>, kinds: &[EndangermentKind]) -> bool {
        self.profiles.iter().any(|p| kinds.iter().any(|&k| endangers(self.inst, p, c, k)))
    }

    pub fn rsne(&self, c: &Coalition<i64>) -> bool {
        !self.endangered(c, &[EndangermentKind::Explicit, EndangermentKind::Implicit])
    }

    pub fn strong(&self, c: &Coalition<i64>) -> bool {
        !self.endangered(c, &[EndangermentKind::Explicit, EndangermentKind::StrictImplicit])
    }

    pub fn weak(&self, c: &Coalition<i64>) -> bool {
        !self.endangered(c, &[EndangermentKind::Explicit])
            && self
                .profiles
                .iter()
                .all(|p| !endangers(self.inst, p, c, EndangermentKind::Implicit) || !self.rsne(p))
    }

    /// No rival strictly cheaper than `c` pays the members it shares with `c`
    /// at least their salaries in `c`.
    pub fn auction(&self, c: &Coalition<i64>) -> bool {
        !self.profiles.iter().any(|p| {
            p.cost < c.cost
                && p.members.iter().zip(&p.salaries).all(|(m, s)| c.salary_of(*m).is_none_or(|x| s >= x))
        })
    }

    /// The coalition hired at a full salary profile, by scanning every set.
    pub fn winner(&self, profile: &[i64]) -> Option<Coalition<i64>> {
        self.table.winner(profile).map(|(k, _)| self.table.coalition(k, profile))
    }

    fn payoff(&self, profile: &[i64], who: AgentId) -> i64 {
        match self.winner(profile) {
            Some(w) if w.member_set().contains(who) => profile[who.0],
            _ => 0,
        }
    }

    /// Strong Nash equilibrium by trying every joint deviation: each agent
    /// either keeps its ask or picks any ask in `[min, v]`.
    pub fn sne(&self, profile: &[i64]) -> bool {
        let n = profile.len();
        let base: Vec<i64> = (0..n).map(|i| self.payoff(profile, AgentId(i))).collect();
        let mins = self.inst.agents.min_salaries();
        let v = self.inst.budget;
        let mut dev = profile.to_vec();
        !self.deviation(profile, &base, mins, v, 0, &mut dev)
    }

    fn deviation(&self, profile: &[i64], base: &[i64], mins: &[i64], v: i64, i: usize, dev: &mut Vec<i64>) -> bool {
        if i == profile.len() {
            let changed: Vec<usize> = (0..profile.len()).filter(|&k| dev[k] != profile[k]).collect();
            return !changed.is_empty()
                && changed.iter().all(|&k| self.payoff(dev, AgentId(k)) > base[k]);
        }
        let mut values: Vec<i64> = (mins[i]..=v.max(mins[i])).collect();
        if !values.contains(&profile[i]) {
            values.push(profile[i]);
        }
        for x in values {
            dev[i] = x;
            if self.deviation(profile, base, mins, v, i + 1, dev) {
                dev[i] = profile[i];
                return true;
            }
        }
        dev[i] = profile[i];
        false
    }
}
