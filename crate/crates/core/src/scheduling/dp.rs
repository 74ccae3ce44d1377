use crate::error::{Error, Result};
use crate::model::{AgentId, SalaryModel, Time};

use super::{Assignment, SchedulingInstance};

/// Largest deadline the reachable-load table will allocate.
pub const DP_DEADLINE_CAP: Time = 1_000_000;

/// Two-agent feasibility by dynamic programming over (task, load of agent 1),
/// keeping the least load of agent 2 for every reachable state.
pub fn dp_two_agents(inst: &SchedulingInstance<i64>) -> Result<Option<Assignment>> {
    let sys = &inst.system;
    if sys.agents() != 2 {
        return Err(Error::Unsupported(format!(
            "the two-agent program needs exactly 2 agents, got {}",
            sys.agents()
        )));
    }
    if sys.deadline > DP_DEADLINE_CAP {
        return Err(Error::CapExceeded { what: "deadline", cap: DP_DEADLINE_CAP as usize });
    }
    let d = sys.deadline as usize;
    let q = sys.tasks();
    let (a, b) = (AgentId(0), AgentId(1));

    // table[j][l1] = least load of agent 2 after the first j tasks
    let mut table: Vec<Vec<Option<Time>>> = vec![vec![None; d + 1]; q + 1];
    table[0][0] = Some(0);
    for j in 0..q {
        let (ta, tb) = (sys.skill(a, j).time(), sys.skill(b, j).time());
        for l1 in 0..=d {
            let Some(l2) = table[j][l1] else { continue };
            if let Some(t) = ta {
                let nl = l1 + t as usize;
                if nl <= d && table[j + 1][nl].is_none_or(|old| l2 < old) {
                    table[j + 1][nl] = Some(l2);
                }
            }
            if let Some(t) = tb {
                let nl2 = l2 + t;
                if nl2 <= sys.deadline && table[j + 1][l1].is_none_or(|old| nl2 < old) {
                    table[j + 1][l1] = Some(nl2);
                }
            }
        }
    }

    let (s1, s2) = (inst.min_salaries[0], inst.min_salaries[1]);
    let cost = |l1: Time, l2: Time| match inst.model {
        SalaryModel::Project => s1 * (l1 > 0) as i64 + s2 * (l2 > 0) as i64,
        SalaryModel::Hourly => s1 * l1 as i64 + s2 * l2 as i64,
    };
    let end = (0..=d)
        .filter_map(|l1| table[q][l1].map(|l2| (cost(l1 as Time, l2), l1)))
        .filter(|&(c, _)| c <= inst.budget)
        .min();
    let Some((_, mut l1)) = end else { return Ok(None) };

    let mut l2 = table[q][l1].unwrap();
    let mut tasks = vec![a; q];
    for j in (0..q).rev() {
        let via_a = sys
            .skill(a, j)
            .time()
            .filter(|&t| t as usize <= l1 && table[j][l1 - t as usize] == Some(l2));
        if let Some(t) = via_a {
            tasks[j] = a;
            l1 -= t as usize;
            continue;
        }
        let t = sys.skill(b, j).time().expect("dp state reached without a predecessor");
        tasks[j] = b;
        l2 -= t;
        debug_assert!(table[j][l1].is_some_and(|x| x <= l2));
    }
    Ok(Some(Assignment(tasks)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheduling::{Skill, TaskSystem};

    fn inst(rows: Vec<Vec<Skill>>, d: Time) -> SchedulingInstance<i64> {
        let n = rows.len();
        SchedulingInstance {
            system: TaskSystem::new(rows, d).unwrap(),
            min_salaries: vec![1; n],
            budget: 100,
            model: SalaryModel::Project,
        }
    }

    #[test]
    fn partition_example() {
        let row: Vec<Skill> = [3, 1, 2, 2].iter().map(|&t| Skill::Finite(t)).collect();
        let i = inst(vec![row.clone(), row], 4);
        let asg = dp_two_agents(&i).unwrap().unwrap();
        assert!(asg.is_valid(&i.system));
    }

    #[test]
    fn oversized_task() {
        let i = inst(vec![vec![Skill::Finite(5)], vec![Skill::Infinite]], 4);
        assert_eq!(dp_two_agents(&i).unwrap(), None);
    }

    #[test]
    fn rejects_three_agents() {
        let i = inst(vec![vec![Skill::Finite(1)]; 3], 1);
        assert!(dp_two_agents(&i).is_err());
    }
}
