use crate::error::{Error, Result};
use crate::model::{AgentSet, Money, SalaryModel, Time};

use super::{hourly_cost, Candidate, FfcQuery};

/// One listed feasible member set, optionally with the hours each member works.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredicateEntry {
    pub members: AgentSet,
    pub times: Option<Vec<Time>>,
}

/// Feasibility given by an explicit list of member sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredicateOracle {
    pub entries: Vec<PredicateEntry>,
}

impl PredicateOracle {
    pub fn new(entries: Vec<PredicateEntry>) -> Result<Self> {
        for e in &entries {
            if e.members.is_empty() {
                return Err(Error::InvalidInstance("feasible sets must be nonempty".into()));
            }
            if let Some(t) = &e.times {
                if t.len() != e.members.len() {
                    return Err(Error::InvalidInstance(
                        "feasible set needs one time per member".into(),
                    ));
                }
                if t.contains(&0) {
                    return Err(Error::InvalidInstance("member times must be positive".into()));
                }
            }
        }
        Ok(PredicateOracle { entries })
    }

    pub(crate) fn validate(&self, n: usize) -> Result<()> {
        let all = AgentSet::full(n);
        if self.entries.iter().any(|e| !e.members.is_subset(all)) {
            return Err(Error::InvalidInstance("feasible set names an unknown agent".into()));
        }
        Ok(())
    }

    pub(crate) fn cheapest<M: Money>(
        &self,
        query: &FfcQuery<M>,
        eligible: AgentSet,
        model: SalaryModel,
    ) -> Option<Candidate<M>> {
        let sal = &query.min_salaries;
        let mut best = None;
        for e in &self.entries {
            if !e.members.is_subset(eligible) || !query.required.is_subset(e.members) {
                continue;
            }
            let times = e.times.clone().unwrap_or_else(|| vec![1; e.members.len()]);
            let (cost, schedule) = match model {
                SalaryModel::Project => {
                    (e.members.iter().fold(M::zero(), |a, m| a + sal[m.0].clone()), None)
                }
                SalaryModel::Hourly => (hourly_cost(e.members, sal, &times), Some(times)),
            };
            if cost <= query.budget {
                Candidate::offer(&mut best, Candidate { cost, members: e.members, schedule });
            }
        }
        best
    }
}
