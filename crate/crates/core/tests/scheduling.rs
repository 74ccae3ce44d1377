use coalauct::scheduling::{
    dp_two_agents, exhaustive_solve, ffc_via_scheduling, ffcsm_solve, generate_hard_instance, ip_build,
    ip_solve, HardKind, RowKind, SchedulingInstance, Skill, SourceInstance, TaskSystem,
};
use coalauct::{AgentId, AgentSet, SalaryModel};

fn identical(times: &[u64], agents: usize, deadline: u64, budget: i64) -> SchedulingInstance<i64> {
    let row: Vec<Skill> = times.iter().map(|&t| Skill::Finite(t)).collect();
    SchedulingInstance {
        system: TaskSystem::new(vec![row; agents], deadline).unwrap(),
        min_salaries: vec![1; agents],
        budget,
        model: SalaryModel::Project,
    }
}

#[test]
fn partition_split() {
    let s = identical(&[3, 1, 2, 2], 2, 4, 100);
    let sol = ffcsm_solve(&s).unwrap();
    assert_eq!(sol.loads, vec![4, 4]);
    assert_eq!(exhaustive_solve(&s).map(|x| x.cost), Some(sol.cost));
    assert!(dp_two_agents(&s).unwrap().is_some());
    assert!(ffc_via_scheduling(&s, None, &[], None, AgentSet::default()).is_some());
    assert!(ffc_via_scheduling(&s, None, &[], None, AgentSet::singleton(AgentId(1))).is_none());
}

#[test]
fn no_split_reaches_deadline() {
    let s = identical(&[2, 2, 2], 2, 3, 100);
    assert!(ffcsm_solve(&s).is_none());
    assert!(dp_two_agents(&s).unwrap().is_none());
    assert!(ip_solve(&ip_build(&s), s.budget, 3).is_none());
}

#[test]
fn oversized_single_task() {
    let s = SchedulingInstance {
        system: TaskSystem::new(vec![vec![Skill::Finite(5)], vec![Skill::Infinite]], 4).unwrap(),
        min_salaries: vec![1, 1],
        budget: 10,
        model: SalaryModel::Project,
    };
    assert!(dp_two_agents(&s).unwrap().is_none());
    assert!(ffcsm_solve(&s).is_none());
}

#[test]
fn ip_shape_for_single_task() {
    let s = identical(&[1], 1, 1, 1);
    let m = ip_build(&s);
    assert_eq!(m.count(RowKind::Assignment), 1);
    let sol = ip_solve(&m, 1, 1).unwrap();
    assert_eq!(sol.cost, 1);
}

#[test]
fn exact_cover_selects_a_third() {
    let src = SourceInstance::SetSystem { elements: 6, sets: vec![vec![0, 1, 2], vec![1, 2, 3], vec![3, 4, 5]] };
    let s = generate_hard_instance(HardKind::ExactCover3, &src).unwrap();
    let sol = ffcsm_solve(&s).unwrap();
    assert_eq!((sol.members.len(), sol.cost), (2, 2));
    assert_eq!(ip_solve(&ip_build(&s), s.budget, s.system.deadline).map(|x| x.cost), Some(2));
    let s = generate_hard_instance(HardKind::Partition, &SourceInstance::Numbers(vec![2, 2])).unwrap();
    assert_eq!(s.system.deadline, 2);
    assert!(ffcsm_solve(&s).is_some());
    assert!(generate_hard_instance(HardKind::Partition, &SourceInstance::Numbers(vec![1, 1, 1])).is_err());
}
