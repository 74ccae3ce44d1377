//! Explicit enumeration of feasible member sets and bounded salary profiles.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::model::{AgentSet, Coalition, Money, SalaryModel, Time};
use crate::oracle::hourly_cost;

/// Agent count up to which member sets are enumerated.
pub const SPACE_AGENT_CAP: usize = 16;

/// Profile count above which enumeration gives up.
pub const PROFILE_CAP: usize = 500_000;

/// Every feasible member set with its feasible schedules, in tie-break order.
#[derive(Debug, Clone)]
pub struct CoalitionTable {
    pub model: SalaryModel,
    pub budget: i64,
    pub entries: Vec<(AgentSet, Vec<Vec<Time>>)>,
}

impl CoalitionTable {
    pub fn build(inst: &Instance) -> Result<Self> {
        let n = inst.n();
        if n > SPACE_AGENT_CAP {
            return Err(Error::CapExceeded { what: "agent count for enumeration", cap: SPACE_AGENT_CAP });
        }
        let mut entries: Vec<(AgentSet, Vec<Vec<Time>>)> = (1u64..(1u64 << n))
            .filter_map(|bits| {
                let s = AgentSet::from_bits(bits);
                let sch = inst.oracle.schedules(s);
                (!sch.is_empty()).then_some((s, sch))
            })
            .collect();
        entries.sort_by(|a, b| a.0.tie_cmp(b.0));
        Ok(CoalitionTable { model: inst.model, budget: inst.budget, entries })
    }

    /// Cheapest schedule cost of entry `k` at the given salaries.
    pub fn cost<M: Money>(&self, k: usize, salary_of: &[M]) -> (M, Option<Vec<Time>>) {
        let (members, schedules) = &self.entries[k];
        match self.model {
            SalaryModel::Project => {
                (members.iter().fold(M::zero(), |a, m| a + salary_of[m.0].clone()), None)
            }
            SalaryModel::Hourly => schedules
                .iter()
                .map(|t| (hourly_cost(*members, salary_of, t), t.clone()))
                .min()
                .map(|(c, t)| (c, Some(t)))
                .expect("entries have at least one schedule"),
        }
    }

    /// Client's choice at a salary profile: cheapest within budget, ties by members.
    pub fn winner<M: Money>(&self, salary_of: &[M]) -> Option<(usize, M)> {
        let v = M::from_int(self.budget);
        let mut best: Option<(usize, M)> = None;
        for k in 0..self.entries.len() {
            let (c, _) = self.cost(k, salary_of);
            if c > v {
                continue;
            }
            let better = match &best {
                None => true,
                Some((bk, bc)) => {
                    c.cmp(bc).then_with(|| self.entries[k].0.tie_cmp(self.entries[*bk].0))
                        == Ordering::Less
                }
            };
            if better {
                best = Some((k, c));
            }
        }
        best
    }

    pub fn coalition<M: Money>(&self, k: usize, salary_of: &[M]) -> Coalition<M> {
        let (cost, schedule) = self.cost(k, salary_of);
        Coalition::from_parts(self.entries[k].0, salary_of, cost, schedule)
    }

    /// Smallest time each member of entry `k` can work.
    fn min_times(&self, k: usize) -> Vec<Time> {
        let (members, schedules) = &self.entries[k];
        match self.model {
            SalaryModel::Project => vec![1; members.len()],
            SalaryModel::Hourly => (0..members.len())
                .map(|p| schedules.iter().map(|t| t[p]).min().unwrap_or(1))
                .collect(),
        }
    }
}

/// All feasible coalitions whose salaries lie in `[min, cap]` and whose cost
/// fits the budget, ordered by members then salaries.
pub fn enumerate_profiles(inst: &Instance, cap: i64) -> Result<Vec<Coalition<i64>>> {
    let table = CoalitionTable::build(inst)?;
    enumerate_with(inst, &table, cap)
}

pub fn enumerate_with(inst: &Instance, table: &CoalitionTable, cap: i64) -> Result<Vec<Coalition<i64>>> {
    let mut out = Vec::new();
    let mins = inst.agents.min_salaries();
    for k in 0..table.entries.len() {
        let members = table.entries[k].0.to_vec();
        let tmin = table.min_times(k);
        let floor: Vec<i64> = members.iter().map(|m| mins[m.0]).collect();
        if floor.iter().any(|&f| f > cap) {
            continue;
        }
        let mut sal = vec![0i64; inst.n()];
        for m in &members {
            sal[m.0] = mins[m.0];
        }
        // lower bound contribution of positions p.. at their minima
        let mut rest = vec![0i64; members.len() + 1];
        for p in (0..members.len()).rev() {
            rest[p] = rest[p + 1] + floor[p] * tmin[p] as i64;
        }
        fill(inst, table, k, &members, &tmin, &rest, cap, 0, 0, &mut sal, &mut out)?;
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn fill(
    inst: &Instance,
    table: &CoalitionTable,
    k: usize,
    members: &[crate::model::AgentId],
    tmin: &[Time],
    rest: &[i64],
    cap: i64,
    p: usize,
    partial: i64,
    sal: &mut Vec<i64>,
    out: &mut Vec<Coalition<i64>>,
) -> Result<()> {
    if p == members.len() {
        let (cost, schedule) = table.cost(k, sal);
        if cost <= inst.budget {
            if out.len() >= PROFILE_CAP {
                return Err(Error::CapExceeded { what: "profile count", cap: PROFILE_CAP });
            }
            out.push(Coalition::from_parts(table.entries[k].0, sal, cost, schedule));
        }
        return Ok(());
    }
    let m = members[p];
    let lo = inst.agents.min_salary(m);
    for s in lo..=cap {
        if partial + s * tmin[p] as i64 + rest[p + 1] > inst.budget {
            break;
        }
        sal[m.0] = s;
        fill(inst, table, k, members, tmin, rest, cap, p + 1, partial + s * tmin[p] as i64, sal, out)?;
    }
    sal[m.0] = lo;
    Ok(())
}
