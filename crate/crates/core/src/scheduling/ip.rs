//! 0-1 integer program for the scheduling model and a small exact solver.

use crate::model::{AgentId, SalaryModel, Time};

use super::{SchedulingInstance, Skill};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IpVar {
    /// a_i: agent i is selected.
    Select(AgentId),
    /// x_ij: task j goes to agent i.
    Assign(AgentId, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IpSense {
    Le,
    Eq,
}

/// Right-hand sides that depend on the query are kept symbolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IpRhs {
    Budget,
    Deadline,
    Const(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Budget,
    Linking,
    Load,
    Assignment,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpRow {
    pub kind: RowKind,
    pub terms: Vec<(usize, i64)>,
    pub sense: IpSense,
    pub rhs: IpRhs,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpModel {
    pub vars: Vec<IpVar>,
    /// Variables forced to zero (assignments with infinite skill).
    pub fixed_zero: Vec<bool>,
    pub rows: Vec<IpRow>,
    /// Cost coefficient per variable; minimized at fixed budget and deadline.
    pub objective: Vec<i64>,
    pub agents: usize,
    pub tasks: usize,
}

impl IpModel {
    pub fn count(&self, kind: RowKind) -> usize {
        self.rows.iter().filter(|r| r.kind == kind).count()
    }

    pub fn select_var(&self, agent: AgentId) -> usize {
        agent.0
    }

    pub fn assign_var(&self, agent: AgentId, task: usize) -> usize {
        self.agents + task * self.agents + agent.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpSolution {
    pub a: Vec<bool>,
    /// `x[agent][task]`
    pub x: Vec<Vec<bool>>,
    pub cost: i64,
}

/// Builds the program: budget row, linking x_ij <= a_i, per-agent load within
/// the deadline, and each task assigned exactly once.
pub fn ip_build(inst: &SchedulingInstance<i64>) -> IpModel {
    let sys = &inst.system;
    let (n, q) = (sys.agents(), sys.tasks());
    let mut vars: Vec<IpVar> = (0..n).map(|i| IpVar::Select(AgentId(i))).collect();
    for j in 0..q {
        for i in 0..n {
            vars.push(IpVar::Assign(AgentId(i), j));
        }
    }
    let mut model = IpModel {
        fixed_zero: vec![false; vars.len()],
        objective: vec![0; vars.len()],
        vars,
        rows: Vec::new(),
        agents: n,
        tasks: q,
    };
    for i in 0..n {
        for j in 0..q {
            if sys.skill(AgentId(i), j) == Skill::Infinite {
                let v = model.assign_var(AgentId(i), j);
                model.fixed_zero[v] = true;
            }
        }
    }
    let time = |i: usize, j: usize| sys.skill(AgentId(i), j).time().unwrap_or(0) as i64;

    match inst.model {
        SalaryModel::Project => {
            for i in 0..n {
                model.objective[i] = inst.min_salaries[i];
            }
        }
        SalaryModel::Hourly => {
            for i in 0..n {
                for j in 0..q {
                    let v = model.assign_var(AgentId(i), j);
                    model.objective[v] = inst.min_salaries[i] * time(i, j);
                }
            }
        }
    }
    let budget_terms = (0..model.vars.len())
        .filter(|&v| model.objective[v] != 0)
        .map(|v| (v, model.objective[v]))
        .collect();
    model.rows.push(IpRow {
        kind: RowKind::Budget,
        terms: budget_terms,
        sense: IpSense::Le,
        rhs: IpRhs::Budget,
    });
    for i in 0..n {
        for j in 0..q {
            model.rows.push(IpRow {
                kind: RowKind::Linking,
                terms: vec![(model.assign_var(AgentId(i), j), 1), (model.select_var(AgentId(i)), -1)],
                sense: IpSense::Le,
                rhs: IpRhs::Const(0),
            });
        }
    }
    for i in 0..n {
        model.rows.push(IpRow {
            kind: RowKind::Load,
            terms: (0..q)
                .filter(|&j| time(i, j) > 0)
                .map(|j| (model.assign_var(AgentId(i), j), time(i, j)))
                .collect(),
            sense: IpSense::Le,
            rhs: IpRhs::Deadline,
        });
    }
    for j in 0..q {
        model.rows.push(IpRow {
            kind: RowKind::Assignment,
            terms: (0..n).map(|i| (model.assign_var(AgentId(i), j), 1)).collect(),
            sense: IpSense::Eq,
            rhs: IpRhs::Const(1),
        });
    }
    model
}

/// Terms, sense and right-hand side with the budget and deadline filled in.
type DenseRow = (Vec<(usize, i64)>, IpSense, i64);

/// Exact branch and bound with bound propagation; minimizes the objective.
pub fn ip_solve(model: &IpModel, budget: i64, deadline: Time) -> Option<IpSolution> {
    let rows: Vec<DenseRow> = model
        .rows
        .iter()
        .map(|r| {
            let rhs = match r.rhs {
                IpRhs::Budget => budget,
                IpRhs::Deadline => deadline as i64,
                IpRhs::Const(c) => c,
            };
            (r.terms.clone(), r.sense, rhs)
        })
        .collect();
    let mut watch: Vec<Vec<usize>> = vec![Vec::new(); model.vars.len()];
    for (k, (terms, _, _)) in rows.iter().enumerate() {
        for &(v, _) in terms {
            watch[v].push(k);
        }
    }
    let mut values: Vec<Option<bool>> =
        model.fixed_zero.iter().map(|&z| if z { Some(false) } else { None }).collect();
    let mut solver = Solver { rows: &rows, watch: &watch, objective: &model.objective, best: None };
    if solver.propagate(&mut values) {
        solver.branch(values);
    }
    let (cost, vals) = solver.best?;
    let (n, q) = (model.agents, model.tasks);
    let a = (0..n).map(|i| vals[model.select_var(AgentId(i))]).collect();
    let x = (0..n)
        .map(|i| (0..q).map(|j| vals[model.assign_var(AgentId(i), j)]).collect())
        .collect();
    Some(IpSolution { a, x, cost })
}

struct Solver<'a> {
    rows: &'a [DenseRow],
    watch: &'a [Vec<usize>],
    objective: &'a [i64],
    best: Option<(i64, Vec<bool>)>,
}

impl Solver<'_> {
    fn activity(&self, k: usize, values: &[Option<bool>]) -> (i64, i64) {
        let (terms, _, _) = &self.rows[k];
        let (mut lo, mut hi) = (0, 0);
        for &(v, c) in terms {
            match values[v] {
                Some(true) => {
                    lo += c;
                    hi += c;
                }
                Some(false) => {}
                None if c > 0 => hi += c,
                None => lo += c,
            }
        }
        (lo, hi)
    }

    /// Fixes forced variables; false on conflict.
    fn propagate(&self, values: &mut [Option<bool>]) -> bool {
        let mut queue: Vec<usize> = (0..self.rows.len()).collect();
        while let Some(k) = queue.pop() {
            let (terms, sense, rhs) = &self.rows[k];
            let (lo, hi) = self.activity(k, values);
            if lo > *rhs || (*sense == IpSense::Eq && hi < *rhs) {
                return false;
            }
            for &(v, c) in terms {
                if values[v].is_some() {
                    continue;
                }
                let forced = if c > 0 && lo + c > *rhs {
                    Some(false)
                } else if (c < 0 && lo - c > *rhs) || (*sense == IpSense::Eq && c > 0 && hi - c < *rhs) {
                    Some(true)
                } else if *sense == IpSense::Eq && c < 0 && hi + c < *rhs {
                    Some(false)
                } else {
                    None
                };
                if let Some(val) = forced {
                    values[v] = Some(val);
                    queue.extend(&self.watch[v]);
                }
            }
            if terms.iter().any(|&(v, _)| values[v].is_some()) {
                let (lo, hi) = self.activity(k, values);
                if lo > *rhs || (*sense == IpSense::Eq && hi < *rhs) {
                    return false;
                }
            }
        }
        true
    }

    fn branch(&mut self, values: Vec<Option<bool>>) {
        let fixed_cost: i64 = values
            .iter()
            .zip(self.objective)
            .filter(|(v, _)| **v == Some(true))
            .map(|(_, c)| *c)
            .sum();
        if self.best.as_ref().is_some_and(|(b, _)| fixed_cost >= *b) {
            return;
        }
        let Some(pick) = values.iter().position(|v| v.is_none()) else {
            let vals = values.into_iter().map(|v| v.unwrap()).collect();
            self.best = Some((fixed_cost, vals));
            return;
        };
        for choice in [true, false] {
            let mut next = values.clone();
            next[pick] = Some(choice);
            if self.propagate(&mut next) {
                self.branch(next);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheduling::TaskSystem;

    #[test]
    fn single_task_single_agent() {
        let inst = SchedulingInstance {
            system: TaskSystem::new(vec![vec![Skill::Finite(1)]], 1).unwrap(),
            min_salaries: vec![1],
            budget: 1,
            model: SalaryModel::Project,
        };
        let m = ip_build(&inst);
        assert_eq!(m.vars.len(), 2);
        assert_eq!(
            [RowKind::Budget, RowKind::Linking, RowKind::Load, RowKind::Assignment].map(|k| m.count(k)),
            [1, 1, 1, 1]
        );
        let sol = ip_solve(&m, 1, 1).unwrap();
        assert!(sol.a[0] && sol.x[0][0]);
        assert_eq!(sol.cost, 1);
    }

    #[test]
    fn infeasible_deadline() {
        let row = vec![Skill::Finite(2); 3];
        let inst = SchedulingInstance {
            system: TaskSystem::new(vec![row.clone(), row], 3).unwrap(),
            min_salaries: vec![1, 1],
            budget: 10,
            model: SalaryModel::Project,
        };
        assert!(ip_solve(&ip_build(&inst), 10, 3).is_none());
    }
}
