//! Scheduling instances built from classic hard combinatorial problems.

use crate::error::{Error, Result};
use crate::model::{SalaryModel, Time};

use super::{SchedulingInstance, Skill, TaskSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HardKind {
    /// Two identical unit-cost agents; deadline half the total.
    Partition,
    /// One agent per 3-set, unit skills on its elements, deadline 3.
    ExactCover3,
    /// Hourly variant with dummy tasks and dummy agents, deadline 6.
    FfchsExactCover,
    /// Bins become identical agents, items become tasks.
    UnaryBinPacking,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceInstance {
    Numbers(Vec<u64>),
    /// Elements are `0..elements`; every set has exactly three of them.
    SetSystem { elements: usize, sets: Vec<Vec<usize>> },
    BinPacking { sizes: Vec<u64>, bins: usize, capacity: u64, model: SalaryModel },
}

fn gen_err(msg: impl Into<String>) -> Error {
    Error::Generator(msg.into())
}

fn check_sets(elements: usize, sets: &[Vec<usize>]) -> Result<()> {
    if elements == 0 {
        return Err(gen_err("set system needs at least one element"));
    }
    if !elements.is_multiple_of(3) {
        return Err(gen_err(format!("element count {elements} is not divisible by 3")));
    }
    let mut seen = vec![0usize; elements];
    for s in sets {
        let mut sorted = s.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != 3 || s.len() != 3 {
            return Err(gen_err("every set must have exactly three distinct elements"));
        }
        for &e in s {
            if e >= elements {
                return Err(gen_err(format!("element {e} out of range")));
            }
            seen[e] += 1;
        }
    }
    if seen.iter().any(|&k| k > 3) {
        return Err(gen_err("an element appears in more than three sets"));
    }
    Ok(())
}

pub fn generate_hard_instance(
    kind: HardKind,
    source: &SourceInstance,
) -> Result<SchedulingInstance<i64>> {
    match (kind, source) {
        (HardKind::Partition, SourceInstance::Numbers(nums)) => {
            if nums.is_empty() || nums.contains(&0) {
                return Err(gen_err("partition numbers must be positive"));
            }
            let total: u64 = nums.iter().sum();
            if !total.is_multiple_of(2) {
                return Err(gen_err(format!("odd total {total} has no integral half")));
            }
            let row: Vec<Skill> = nums.iter().map(|&x| Skill::Finite(x)).collect();
            Ok(SchedulingInstance {
                system: TaskSystem::new(vec![row.clone(), row], total / 2)?,
                min_salaries: vec![1, 1],
                budget: 2,
                model: SalaryModel::Project,
            })
        }
        (HardKind::ExactCover3, SourceInstance::SetSystem { elements, sets }) => {
            check_sets(*elements, sets)?;
            if sets.is_empty() {
                return Err(gen_err("set system needs at least one set"));
            }
            let skills = sets
                .iter()
                .map(|s| {
                    (0..*elements)
                        .map(|e| if s.contains(&e) { Skill::Finite(1) } else { Skill::Infinite })
                        .collect()
                })
                .collect();
            Ok(SchedulingInstance {
                system: TaskSystem::new(skills, 3)?,
                min_salaries: vec![1; sets.len()],
                budget: (*elements / 3) as i64,
                model: SalaryModel::Project,
            })
        }
        (HardKind::FfchsExactCover, SourceInstance::SetSystem { elements, sets }) => {
            check_sets(*elements, sets)?;
            let (q, n) = (*elements, sets.len());
            if n == 0 {
                return Err(gen_err("set system needs at least one set"));
            }
            let mut skills = vec![vec![Skill::Infinite; q + n]; 2 * n];
            for (i, s) in sets.iter().enumerate() {
                for &e in s {
                    skills[i][e] = Skill::Finite(2);
                }
                skills[i][q + i] = Skill::Finite(5);
                skills[n + i][q + i] = Skill::Finite(6);
            }
            Ok(SchedulingInstance {
                system: TaskSystem::new(skills, 6)?,
                min_salaries: vec![1; 2 * n],
                budget: (7 * q / 3 + 5 * n) as i64,
                model: SalaryModel::Hourly,
            })
        }
        (HardKind::UnaryBinPacking, SourceInstance::BinPacking { sizes, bins, capacity, model }) => {
            if sizes.is_empty() || sizes.contains(&0) {
                return Err(gen_err("item sizes must be positive"));
            }
            if *bins == 0 || *capacity == 0 {
                return Err(gen_err("need at least one bin of positive capacity"));
            }
            let row: Vec<Skill> = sizes.iter().map(|&s| Skill::Finite(s as Time)).collect();
            let budget = match model {
                SalaryModel::Project => *bins as i64,
                SalaryModel::Hourly => sizes.iter().sum::<u64>() as i64,
            };
            Ok(SchedulingInstance {
                system: TaskSystem::new(vec![row; *bins], *capacity)?,
                min_salaries: vec![1; *bins],
                budget,
                model: *model,
            })
        }
        _ => Err(gen_err(format!("{kind:?} cannot be built from this source"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheduling::ffcsm_solve;

    #[test]
    fn single_set_cover() {
        let src = SourceInstance::SetSystem { elements: 3, sets: vec![vec![0, 1, 2]] };
        let inst = generate_hard_instance(HardKind::ExactCover3, &src).unwrap();
        assert_eq!((inst.system.agents(), inst.system.deadline, inst.budget), (1, 3, 1));
        assert!(ffcsm_solve(&inst).is_some());
    }

    #[test]
    fn partition_parity() {
        let inst = generate_hard_instance(HardKind::Partition, &SourceInstance::Numbers(vec![2, 2])).unwrap();
        assert_eq!(inst.system.deadline, 2);
        assert!(ffcsm_solve(&inst).is_some());
        assert!(generate_hard_instance(HardKind::Partition, &SourceInstance::Numbers(vec![1, 1, 1])).is_err());
    }

    #[test]
    fn ffchs_budget_formula() {
        let src = SourceInstance::SetSystem { elements: 3, sets: vec![vec![0, 1, 2], vec![0, 1, 2]] };
        let inst = generate_hard_instance(HardKind::FfchsExactCover, &src).unwrap();
        assert_eq!(inst.system.tasks(), 5);
        assert_eq!(inst.system.agents(), 4);
        assert_eq!(inst.budget, 7 + 10);
        assert!(ffcsm_solve(&inst).is_some());
    }
}
