//! Independent indivisible tasks on unrelated agents with a deadline and a budget.

mod dp;
mod generators;
mod ip;

use std::cmp::Ordering;

pub use dp::{dp_two_agents, DP_DEADLINE_CAP};
pub use generators::{generate_hard_instance, HardKind, SourceInstance};
pub use ip::{ip_build, ip_solve, IpModel, IpRhs, IpRow, IpSense, IpSolution, IpVar, RowKind};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::model::{AgentId, AgentSet, AgentTable, Coalition, Money, SalaryModel, Time};
use crate::oracle::{Candidate, FfcQuery, OracleSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Skill {
    Finite(Time),
    Infinite,
}

impl Skill {
    pub fn time(self) -> Option<Time> {
        match self {
            Skill::Finite(t) => Some(t),
            Skill::Infinite => None,
        }
    }
}

/// Tasks, the agent-by-task skill matrix and the deadline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskSystem {
    pub task_labels: Vec<u32>,
    /// `skills[agent][task]`
    pub skills: Vec<Vec<Skill>>,
    pub deadline: Time,
}

impl TaskSystem {
    pub fn new(skills: Vec<Vec<Skill>>, deadline: Time) -> Result<Self> {
        let q = skills.first().map_or(0, |r| r.len());
        let sys = TaskSystem { task_labels: (1..=q as u32).collect(), skills, deadline };
        sys.validate(sys.skills.len())?;
        Ok(sys)
    }

    pub fn tasks(&self) -> usize {
        self.task_labels.len()
    }

    pub fn agents(&self) -> usize {
        self.skills.len()
    }

    pub fn skill(&self, agent: AgentId, task: usize) -> Skill {
        self.skills[agent.0][task]
    }

    pub(crate) fn validate(&self, n: usize) -> Result<()> {
        let q = self.tasks();
        if q == 0 {
            return Err(Error::InvalidInstance("scheduling needs at least one task".into()));
        }
        if self.deadline == 0 {
            return Err(Error::InvalidInstance("deadline must be positive".into()));
        }
        if self.skills.len() != n {
            return Err(Error::InvalidInstance(format!(
                "skill matrix has {} rows, instance has {n} agents",
                self.skills.len()
            )));
        }
        for row in &self.skills {
            if row.len() != q {
                return Err(Error::InvalidInstance("skill matrix rows must cover every task".into()));
            }
            if row.contains(&Skill::Finite(0)) {
                return Err(Error::InvalidInstance("skill times must be positive".into()));
            }
        }
        Ok(())
    }
}

/// Task-to-agent map, indexed by task.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(pub Vec<AgentId>);

impl Assignment {
    pub fn loads(&self, sys: &TaskSystem) -> Vec<Time> {
        let mut loads = vec![0; sys.agents()];
        for (j, a) in self.0.iter().enumerate() {
            loads[a.0] += sys.skill(*a, j).time().expect("assignment uses an infinite skill");
        }
        loads
    }

    pub fn members(&self) -> AgentSet {
        AgentSet::from_ids(self.0.iter().copied())
    }

    /// Finite skills and every load within the deadline.
    pub fn is_valid(&self, sys: &TaskSystem) -> bool {
        self.0.len() == sys.tasks()
            && self.0.iter().enumerate().all(|(j, a)| sys.skill(*a, j) != Skill::Infinite)
            && self.loads(sys).iter().all(|&l| l <= sys.deadline)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchedulingInstance<M> {
    pub system: TaskSystem,
    pub min_salaries: Vec<M>,
    pub budget: M,
    pub model: SalaryModel,
}

impl<M: Money> SchedulingInstance<M> {
    pub fn cost_of(&self, assignment: &Assignment) -> M {
        let loads = assignment.loads(&self.system);
        assignment_cost(self.model, &self.min_salaries, assignment.members(), &loads)
    }
}

impl SchedulingInstance<i64> {
    /// Wraps the system as a scheduling-oracle instance with agents labelled 1..n.
    pub fn to_instance(&self) -> Result<Instance> {
        let agents = AgentTable::with_minima(self.min_salaries.clone())?;
        Instance::new(agents, self.budget, self.model, OracleSpec::Scheduling(self.system.clone()))
    }
}

fn assignment_cost<M: Money>(model: SalaryModel, sal: &[M], members: AgentSet, loads: &[Time]) -> M {
    match model {
        SalaryModel::Project => members.iter().fold(M::zero(), |a, m| a + sal[m.0].clone()),
        SalaryModel::Hourly => {
            members.iter().fold(M::zero(), |a, m| a + sal[m.0].times(loads[m.0]))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleSolution<M> {
    pub members: AgentSet,
    pub assignment: Assignment,
    /// Per agent, zero for non-members.
    pub loads: Vec<Time>,
    pub cost: M,
}

/// Distinct load vectors (in member order) over assignments that use exactly
/// `members`, each member getting at least one task.
pub(crate) fn exact_member_loads(sys: &TaskSystem, members: AgentSet, first_only: bool) -> Vec<Vec<Time>> {
    fn go(
        sys: &TaskSystem,
        ids: &[AgentId],
        j: usize,
        loads: &mut [Time],
        used: usize,
        out: &mut Vec<Vec<Time>>,
        first_only: bool,
    ) -> bool {
        let q = sys.tasks();
        if j == q {
            if used == ids.len() {
                out.push(loads.to_vec());
                return first_only;
            }
            return false;
        }
        if ids.len() - used > q - j {
            return false;
        }
        for (k, a) in ids.iter().enumerate() {
            let Some(t) = sys.skill(*a, j).time() else { continue };
            if loads[k] + t > sys.deadline {
                continue;
            }
            let fresh = loads[k] == 0;
            loads[k] += t;
            let stop = go(sys, ids, j + 1, loads, used + fresh as usize, out, first_only);
            loads[k] -= t;
            if stop {
                return true;
            }
        }
        false
    }
    let ids = members.to_vec();
    if ids.is_empty() || ids.iter().any(|a| a.0 >= sys.agents()) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut loads = vec![0; ids.len()];
    go(sys, &ids, 0, &mut loads, 0, &mut out, first_only);
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum TieRule {
    Assignment,
    LoadsThenAssignment,
}

struct Bnb<'a, M> {
    sys: &'a TaskSystem,
    model: SalaryModel,
    sal: &'a [M],
    budget: &'a M,
    required: AgentSet,
    task_order: Vec<usize>,
    agent_order: Vec<AgentId>,
    /// Cheapest hourly cost of each task over eligible agents, suffix-summed in task order.
    tail: Vec<M>,
    tie: TieRule,
    loads: Vec<Time>,
    assign: Vec<Option<AgentId>>,
    best: Option<(M, AgentSet, Vec<Time>, Vec<AgentId>)>,
}

impl<M: Money> Bnb<'_, M> {
    fn better(&self, cost: &M, used: AgentSet, assign: &[AgentId]) -> bool {
        let Some((bc, bm, bl, ba)) = &self.best else { return true };
        let ord = cost.cmp(bc).then_with(|| used.tie_cmp(*bm));
        let ord = match self.tie {
            TieRule::Assignment => ord,
            TieRule::LoadsThenAssignment => ord.then_with(|| {
                let mine: Vec<Time> = used.iter().map(|m| self.loads[m.0]).collect();
                mine.cmp(bl)
            }),
        };
        ord.then_with(|| assign.cmp(ba)) == Ordering::Less
    }

    fn run(&mut self, depth: usize, used: AgentSet, cost: M) {
        let q = self.task_order.len();
        let missing = self.required.difference(used);
        if missing.len() > q - depth {
            return;
        }
        let lb = match self.model {
            SalaryModel::Project => {
                missing.iter().fold(cost.clone(), |a, m| a + self.sal[m.0].clone())
            }
            SalaryModel::Hourly => cost.clone() + self.tail[depth].clone(),
        };
        if &lb > self.budget {
            return;
        }
        if let Some((bc, ..)) = &self.best {
            if &lb > bc {
                return;
            }
        }
        if depth == q {
            if !missing.is_empty() {
                return;
            }
            let assign: Vec<AgentId> = self.assign.iter().map(|a| a.unwrap()).collect();
            if self.better(&cost, used, &assign) {
                let loads = used.iter().map(|m| self.loads[m.0]).collect();
                self.best = Some((cost, used, loads, assign));
            }
            return;
        }
        let j = self.task_order[depth];
        for k in 0..self.agent_order.len() {
            let a = self.agent_order[k];
            let Some(t) = self.sys.skill(a, j).time() else { continue };
            if self.loads[a.0] + t > self.sys.deadline {
                continue;
            }
            let added = match self.model {
                SalaryModel::Project if used.contains(a) => M::zero(),
                SalaryModel::Project => self.sal[a.0].clone(),
                SalaryModel::Hourly => self.sal[a.0].times(t),
            };
            self.loads[a.0] += t;
            self.assign[j] = Some(a);
            self.run(depth + 1, used.with(a), cost.clone() + added);
            self.loads[a.0] -= t;
            self.assign[j] = None;
        }
    }
}

fn solve<M: Money>(
    sys: &TaskSystem,
    model: SalaryModel,
    sal: &[M],
    budget: &M,
    eligible: AgentSet,
    required: AgentSet,
    tie: TieRule,
) -> Option<(M, AgentSet, Vec<Time>, Vec<AgentId>)> {
    let q = sys.tasks();
    let mut agent_order: Vec<AgentId> = eligible.iter().filter(|a| a.0 < sys.agents()).collect();
    agent_order.sort_by(|a, b| sal[a.0].cmp(&sal[b.0]).then(a.cmp(b)));

    let min_time = |j: usize| agent_order.iter().filter_map(|a| sys.skill(*a, j).time()).min();
    let mut task_order: Vec<usize> = (0..q).collect();
    if task_order.iter().any(|&j| min_time(j).is_none()) {
        return None;
    }
    task_order.sort_by_key(|&j| (std::cmp::Reverse(min_time(j)), j));

    let mut tail = vec![M::zero(); q + 1];
    for d in (0..q).rev() {
        let j = task_order[d];
        let cheapest = agent_order
            .iter()
            .filter_map(|a| sys.skill(*a, j).time().map(|t| sal[a.0].times(t)))
            .min()
            .unwrap_or_else(M::zero);
        tail[d] = tail[d + 1].clone() + cheapest;
    }

    let mut bnb = Bnb {
        sys,
        model,
        sal,
        budget,
        required,
        task_order,
        agent_order,
        tail,
        tie,
        loads: vec![0; sys.agents()],
        assign: vec![None; q],
        best: None,
    };
    bnb.run(0, AgentSet::EMPTY, M::zero());
    bnb.best
}

/// Minimum-cost subset and assignment meeting the deadline and the budget.
/// Ties go to the earlier member sequence, then the earlier assignment.
pub fn ffcsm_solve<M: Money>(inst: &SchedulingInstance<M>) -> Option<ScheduleSolution<M>> {
    let n = inst.system.agents();
    let (cost, members, _, assign) = solve(
        &inst.system,
        inst.model,
        &inst.min_salaries,
        &inst.budget,
        AgentSet::full(n),
        AgentSet::EMPTY,
        TieRule::Assignment,
    )?;
    let assignment = Assignment(assign);
    let loads = assignment.loads(&inst.system);
    Some(ScheduleSolution { members, assignment, loads, cost })
}

/// Oracle backend: a witness whose schedule is the members' loads.
pub(crate) fn cheapest<M: Money>(
    sys: &TaskSystem,
    model: SalaryModel,
    query: &FfcQuery<M>,
    eligible: AgentSet,
) -> Option<Candidate<M>> {
    let (cost, members, loads, _) = solve(
        sys,
        model,
        &query.min_salaries,
        &query.budget,
        eligible,
        query.required,
        TieRule::LoadsThenAssignment,
    )?;
    let schedule = match model {
        SalaryModel::Project => None,
        SalaryModel::Hourly => Some(loads),
    };
    Some(Candidate { cost, members, schedule })
}

/// The scheduling solver as an FFC backend with the usual overrides.
pub fn ffc_via_scheduling<M: Money>(
    inst: &SchedulingInstance<M>,
    budget_override: Option<M>,
    min_salary_overrides: &[(AgentId, M)],
    restricted_to: Option<AgentSet>,
    excluded: AgentSet,
) -> Option<Coalition<M>> {
    let mut sal = inst.min_salaries.clone();
    for (a, s) in min_salary_overrides {
        sal[a.0] = s.clone();
    }
    let query = FfcQuery {
        budget: budget_override.unwrap_or_else(|| inst.budget.clone()),
        min_salaries: sal,
        restricted_to,
        excluded,
        required: AgentSet::EMPTY,
    };
    let eligible = query.eligible(inst.system.agents());
    let c = cheapest(&inst.system, inst.model, &query, eligible)?;
    Some(Coalition::from_parts(c.members, &query.min_salaries, c.cost, c.schedule))
}

/// Every (subset, assignment) pair, for cross-checking. Returns the optimum
/// under the same tie rule as [`ffcsm_solve`].
pub fn exhaustive_solve<M: Money>(inst: &SchedulingInstance<M>) -> Option<ScheduleSolution<M>> {
    let n = inst.system.agents();
    let q = inst.system.tasks();
    let mut best: Option<ScheduleSolution<M>> = None;
    let mut digits = vec![0usize; q];
    loop {
        let assignment = Assignment(digits.iter().map(|&d| AgentId(d)).collect());
        if assignment.is_valid(&inst.system) {
            let cost = inst.cost_of(&assignment);
            let members = assignment.members();
            if cost <= inst.budget {
                let better = match &best {
                    None => true,
                    Some(b) => cost
                        .cmp(&b.cost)
                        .then_with(|| members.tie_cmp(b.members))
                        .then_with(|| assignment.cmp(&b.assignment))
                        == Ordering::Less,
                };
                if better {
                    let loads = assignment.loads(&inst.system);
                    best = Some(ScheduleSolution { members, assignment, loads, cost });
                }
            }
        }
        let mut k = 0;
        loop {
            if k == q {
                return best;
            }
            digits[k] += 1;
            if digits[k] < n {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identical(times: &[Time], agents: usize, d: Time) -> SchedulingInstance<i64> {
        let row: Vec<Skill> = times.iter().map(|&t| Skill::Finite(t)).collect();
        SchedulingInstance {
            system: TaskSystem::new(vec![row; agents], d).unwrap(),
            min_salaries: vec![1; agents],
            budget: 100,
            model: SalaryModel::Project,
        }
    }

    #[test]
    fn partition_split_found() {
        let inst = identical(&[3, 1, 2, 2], 2, 4);
        let sol = ffcsm_solve(&inst).unwrap();
        assert_eq!(sol.loads, vec![4, 4]);
        assert_eq!(sol.cost, 2);
    }

    #[test]
    fn no_subset_hits_deadline() {
        assert!(ffcsm_solve(&identical(&[2, 2, 2], 2, 3)).is_none());
    }

    #[test]
    fn single_forced_task() {
        let mut inst = identical(&[1], 1, 1);
        inst.budget = 1;
        assert_eq!(ffcsm_solve(&inst).unwrap().cost, 1);
    }

    #[test]
    fn hourly_cost_is_weighted_load() {
        let mut inst = identical(&[2, 3], 2, 5);
        inst.model = SalaryModel::Hourly;
        inst.min_salaries = vec![3, 1];
        let sol = ffcsm_solve(&inst).unwrap();
        assert_eq!(sol.cost, 5);
        assert_eq!(sol.members, AgentSet::singleton(AgentId(1)));
        assert_eq!(exhaustive_solve(&inst), Some(sol));
    }

    #[test]
    fn members_need_a_task() {
        let sys = TaskSystem::new(vec![vec![Skill::Finite(1)]; 2], 1).unwrap();
        assert!(exact_member_loads(&sys, AgentSet::full(2), false).is_empty());
        assert_eq!(exact_member_loads(&sys, AgentSet::singleton(AgentId(1)), false), vec![vec![1]]);
    }
}
