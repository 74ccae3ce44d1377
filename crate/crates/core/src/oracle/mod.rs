//! Feasibility oracles and the FFC query.

mod commodity;
mod path;
mod predicate;

use std::cmp::Ordering;

pub use commodity::CommodityOracle;
pub use path::PathOracle;
pub use predicate::{PredicateEntry, PredicateOracle};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::model::{AgentId, AgentSet, Coalition, Money, SalaryModel, Time};
use crate::scheduling::{self, TaskSystem};

/// Default limit on eligible agents for exhaustive subset enumeration.
pub const BRUTE_FORCE_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleSpec {
    Commodity(CommodityOracle),
    Path(PathOracle),
    Predicate(PredicateOracle),
    Scheduling(TaskSystem),
}

impl OracleSpec {
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            OracleSpec::Commodity(c) => c.validate(n),
            OracleSpec::Path(p) => p.validate(n),
            OracleSpec::Predicate(p) => p.validate(n),
            OracleSpec::Scheduling(t) => t.validate(n),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            OracleSpec::Commodity(_) => "commodity",
            OracleSpec::Path(_) => "path",
            OracleSpec::Predicate(_) => "predicate",
            OracleSpec::Scheduling(_) => "sched",
        }
    }

    /// Whether these members, with no budget limit, can complete the project.
    pub fn membership_feasible(&self, members: AgentSet) -> bool {
        if members.is_empty() {
            return false;
        }
        match self {
            OracleSpec::Commodity(c) => c.covers(members),
            OracleSpec::Path(p) => p.connects(members),
            OracleSpec::Predicate(p) => p.entries.iter().any(|e| e.members == members),
            OracleSpec::Scheduling(t) => !scheduling::exact_member_loads(t, members, true).is_empty(),
        }
    }

    /// Every feasible schedule for exactly `members`, one time per member in
    /// id order. Oracles without a notion of time give each member one unit.
    pub fn schedules(&self, members: AgentSet) -> Vec<Vec<Time>> {
        if members.is_empty() {
            return Vec::new();
        }
        match self {
            OracleSpec::Predicate(p) => p
                .entries
                .iter()
                .filter(|e| e.members == members)
                .map(|e| e.times.clone().unwrap_or_else(|| vec![1; members.len()]))
                .collect(),
            OracleSpec::Scheduling(t) => scheduling::exact_member_loads(t, members, false),
            _ => {
                if self.membership_feasible(members) {
                    vec![vec![1; members.len()]]
                } else {
                    Vec::new()
                }
            }
        }
    }
}

/// Cheapest way for exactly `members` to complete the project at the given
/// per-agent salaries. Returns the cost and, in the hourly model, the schedule.
pub fn evaluate<M: Money>(
    oracle: &OracleSpec,
    model: SalaryModel,
    members: AgentSet,
    salary_of: &[M],
) -> Option<(M, Option<Vec<Time>>)> {
    let schedules = oracle.schedules(members);
    if schedules.is_empty() {
        return None;
    }
    match model {
        SalaryModel::Project => {
            let cost = members.iter().fold(M::zero(), |acc, m| acc + salary_of[m.0].clone());
            Some((cost, None))
        }
        SalaryModel::Hourly => schedules
            .into_iter()
            .map(|t| (hourly_cost(members, salary_of, &t), t))
            .min()
            .map(|(c, t)| (c, Some(t))),
    }
}

pub(crate) fn hourly_cost<M: Money>(members: AgentSet, salary_of: &[M], times: &[Time]) -> M {
    members
        .iter()
        .zip(times)
        .fold(M::zero(), |acc, (m, &t)| acc + salary_of[m.0].times(t))
}

/// One FFC question: budget, effective minimal salaries and agent filters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FfcQuery<M> {
    pub budget: M,
    pub min_salaries: Vec<M>,
    pub restricted_to: Option<AgentSet>,
    pub excluded: AgentSet,
    /// Agents every witness must contain.
    pub required: AgentSet,
}

impl<M: Money> FfcQuery<M> {
    /// The instance's own budget and minima, no filters.
    pub fn new(inst: &Instance) -> Self {
        FfcQuery {
            budget: inst.v(),
            min_salaries: inst.minima(),
            restricted_to: None,
            excluded: AgentSet::EMPTY,
            required: AgentSet::EMPTY,
        }
    }

    pub fn with_budget(mut self, budget: M) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_minima(mut self, minima: Vec<M>) -> Self {
        self.min_salaries = minima;
        self
    }

    pub fn pin(mut self, id: AgentId, salary: M) -> Self {
        self.min_salaries[id.0] = salary;
        self
    }

    pub fn restrict(mut self, set: AgentSet) -> Self {
        self.restricted_to = Some(set);
        self
    }

    pub fn exclude(mut self, set: AgentSet) -> Self {
        self.excluded = self.excluded.union(set);
        self
    }

    pub fn require(mut self, set: AgentSet) -> Self {
        self.required = self.required.union(set);
        self
    }

    pub fn eligible(&self, n: usize) -> AgentSet {
        self.restricted_to.unwrap_or(AgentSet::full(n)).difference(self.excluded)
    }

    pub fn admits(&self, n: usize, members: AgentSet) -> bool {
        members.is_subset(self.eligible(n)) && self.required.is_subset(members)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.min_salaries.len() != n {
            return Err(Error::InvalidInstance("query minima must cover every agent".into()));
        }
        if let Some(r) = self.restricted_to {
            if !r.is_disjoint(self.excluded) {
                return Err(Error::InvalidInstance(
                    "restricted and excluded sets overlap".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Search result before it is turned into a coalition.
#[derive(Debug, Clone)]
pub(crate) struct Candidate<M> {
    pub cost: M,
    pub members: AgentSet,
    pub schedule: Option<Vec<Time>>,
}

impl<M: Money> Candidate<M> {
    pub fn order(&self, other: &Candidate<M>) -> Ordering {
        self.cost
            .cmp(&other.cost)
            .then_with(|| self.members.tie_cmp(other.members))
            .then_with(|| self.schedule.cmp(&other.schedule))
    }

    pub fn offer(best: &mut Option<Candidate<M>>, cand: Candidate<M>) {
        let better = match best {
            None => true,
            Some(b) => cand.order(b) == Ordering::Less,
        };
        if better {
            *best = Some(cand);
        }
    }

    fn into_coalition(self, salary_of: &[M]) -> Coalition<M> {
        Coalition::from_parts(self.members, salary_of, self.cost, self.schedule)
    }
}

/// Cheapest feasible coalition within the query's budget, ties broken by the
/// member order. Salaries are the query's effective minima.
pub fn ffc<M: Money>(inst: &Instance, query: &FfcQuery<M>) -> Option<Coalition<M>> {
    let n = inst.n();
    debug_assert!(query.validate(n).is_ok());
    let eligible = query.eligible(n);
    if eligible.is_empty() || !query.required.is_subset(eligible) || query.budget < M::zero() {
        return None;
    }
    let unit_times = |c: Candidate<M>| match inst.model {
        SalaryModel::Project => c,
        SalaryModel::Hourly => Candidate { schedule: Some(vec![1; c.members.len()]), ..c },
    };
    let best = match &inst.oracle {
        OracleSpec::Commodity(c) => c.cheapest(query, eligible).map(unit_times),
        OracleSpec::Path(p) => p.cheapest(query, eligible).map(unit_times),
        OracleSpec::Predicate(p) => p.cheapest(query, eligible, inst.model),
        OracleSpec::Scheduling(t) => scheduling::cheapest(t, inst.model, query, eligible),
    }?;
    Some(best.into_coalition(&query.min_salaries))
}

/// Reference FFC by exhaustive subset enumeration.
pub fn brute_force_ffc<M: Money>(
    inst: &Instance,
    query: &FfcQuery<M>,
    cap: usize,
) -> Result<Option<Coalition<M>>> {
    let n = inst.n();
    let eligible = query.eligible(n);
    if eligible.len() > cap {
        return Err(Error::CapExceeded { what: "eligible agent count", cap });
    }
    let ids = eligible.to_vec();
    let mut best: Option<Candidate<M>> = None;
    for mask in 1u64..(1u64 << ids.len()) {
        let members = AgentSet::from_ids(
            ids.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, &a)| a),
        );
        if !query.required.is_subset(members) {
            continue;
        }
        if let Some((cost, schedule)) =
            evaluate(&inst.oracle, inst.model, members, &query.min_salaries)
        {
            if cost <= query.budget {
                Candidate::offer(&mut best, Candidate { cost, members, schedule });
            }
        }
    }
    Ok(best.map(|b| b.into_coalition(&query.min_salaries)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::AgentTable;

    pub(crate) fn e1() -> Instance {
        let oracle = CommodityOracle::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        Instance::new(
            AgentTable::with_minima(vec![2, 2, 2]).unwrap(),
            5,
            SalaryModel::Project,
            OracleSpec::Commodity(oracle),
        )
        .unwrap()
    }

    #[test]
    fn e1_cheapest_pair() {
        let inst = e1();
        let c = ffc(&inst, &FfcQuery::<i64>::new(&inst)).unwrap();
        assert_eq!(c.members, vec![AgentId(0), AgentId(1)]);
        assert_eq!(c.cost, 4);
        assert!(ffc(&inst, &FfcQuery::<i64>::new(&inst).with_budget(3)).is_none());
    }

    #[test]
    fn override_moves_witness() {
        let inst = e1();
        let q = FfcQuery::<i64>::new(&inst).with_budget(4).pin(AgentId(0), 3);
        let c = brute_force_ffc(&inst, &q, BRUTE_FORCE_CAP).unwrap().unwrap();
        assert_eq!(c.members, vec![AgentId(1), AgentId(2)]);
        assert_eq!(ffc(&inst, &q), Some(c));
    }

    #[test]
    fn required_and_excluded_filters() {
        let inst = e1();
        let q = FfcQuery::<i64>::new(&inst).require(AgentSet::singleton(AgentId(2)));
        assert_eq!(ffc(&inst, &q).unwrap().members, vec![AgentId(0), AgentId(2)]);
        let q = FfcQuery::<i64>::new(&inst).exclude(AgentSet::singleton(AgentId(0)));
        assert_eq!(ffc(&inst, &q).unwrap().members, vec![AgentId(1), AgentId(2)]);
    }

    #[test]
    fn empty_set_is_infeasible() {
        assert!(!e1().oracle.membership_feasible(AgentSet::EMPTY));
    }
}
