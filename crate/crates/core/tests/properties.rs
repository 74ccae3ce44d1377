use coalauct::centralized::{fcfc, sne_check, sne_find};
use coalauct::corpus::{random_instance, rng_for};
use coalauct::decentralized::{
    find_endangering, rsne_check, rsne_find, strongly_winning_check, weakly_winning_check,
    weakly_winning_find, EndangermentKind,
};
use coalauct::format::{emit_instance, parse_instance};
use coalauct::lp::{solve_feasible, Comparator, Constraint, LinearSystem};
use coalauct::mechanisms::{auction_run, auction_winning_check, find_vstar};
use coalauct::model::{Coalition, NumericMode, Rational};
use coalauct::reference::Space;
use coalauct::{AgentId, SalaryModel};
use proptest::prelude::*;

fn small(seed: u64) -> coalauct::Instance {
    random_instance(&mut rng_for(seed, 0), 4, 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rsne_implies_strong(seed in any::<u64>()) {
        let inst = small(seed);
        let space = Space::build(&inst).unwrap();
        for c in space.profiles.iter().step_by(3).take(20) {
            let r = rsne_check(&inst, c).unwrap();
            prop_assert!(!r || strongly_winning_check(&inst, c).unwrap(), "{c:?}");
        }
    }

    // With whole-unit salaries a strongly winning coalition can still be
    // implicitly endangered by a stable rival; see integer_strong_not_weak.
    #[test]
    fn rational_strong_implies_weak(seed in any::<u64>()) {
        let mut inst = small(seed);
        prop_assume!(inst.model == SalaryModel::Project);
        let profiles = Space::build(&inst).unwrap().profiles;
        inst.numeric = NumericMode::Rational;
        for c in profiles.iter().step_by(2).take(20) {
            let salaries = c.salaries.iter().map(|&x| Rational::from_integer(x.into())).collect();
            let c = Coalition::new(&inst.agents, c.members.clone(), salaries, inst.model, None).unwrap();
            let s = strongly_winning_check(&inst, &c).unwrap();
            prop_assert!(!s || weakly_winning_check(&inst, &c).unwrap(), "{c:?}");
        }
    }

    #[test]
    fn project_rsne_spends_budget_on_preferred_set(seed in any::<u64>()) {
        let inst = small(seed);
        prop_assume!(inst.model == SalaryModel::Project);
        if let Some(c) = rsne_find(&inst).unwrap() {
            let top = fcfc::<i64>(&inst).unwrap();
            prop_assert_eq!(&c.members, &top.members);
            prop_assert_eq!(c.cost, inst.budget);
        }
    }

    #[test]
    fn preferred_coalition_is_never_explicitly_endangered(seed in any::<u64>()) {
        let inst = small(seed);
        if let Some(top) = fcfc::<i64>(&inst) {
            prop_assert!(find_endangering(&inst, &top, EndangermentKind::Explicit).unwrap().is_none());
        }
    }

    #[test]
    fn found_equilibria_pass_their_checks(seed in any::<u64>()) {
        let inst = small(seed);
        let space = Space::build(&inst).unwrap();
        if let Some(c) = weakly_winning_find(&inst).unwrap() {
            prop_assert!(weakly_winning_check(&inst, &c).unwrap());
            prop_assert!(space.weak(&c));
        }
        if let Some(c) = rsne_find(&inst).unwrap() {
            prop_assert!(space.rsne(&c));
        }
    }

    #[test]
    fn sne_find_agrees_with_joint_deviation_scan(seed in any::<u64>()) {
        let inst = random_instance(&mut rng_for(seed, 1), 3, 5);
        let space = Space::build(&inst).unwrap();
        if let Some(p) = sne_find(&inst).unwrap() {
            prop_assert!(sne_check(&inst, &p).unwrap());
            prop_assert!(space.sne(&p), "{p:?}");
        }
    }

    #[test]
    fn vstar_is_least_feasible_budget(seed in any::<u64>()) {
        let inst = small(seed);
        match find_vstar(&inst) {
            Some(v) => {
                prop_assert!(fcfc::<i64>(&inst.with_budget(v)).is_some());
                prop_assert!(v == 0 || fcfc::<i64>(&inst.with_budget(v - 1)).is_none());
            }
            None => prop_assert!(fcfc::<i64>(&inst).is_none()),
        }
    }

    #[test]
    fn auction_prices_fall_and_winner_survives(seed in any::<u64>()) {
        let inst = small(seed);
        if let Some(trace) = auction_run(&inst) {
            let asks: Vec<i64> = trace.rounds.iter().map(|r| r.asking).collect();
            prop_assert!(asks.windows(2).all(|w| w[1] < w[0]));
            prop_assert!(auction_winning_check(&inst, trace.winner()).unwrap());
            prop_assert!(Space::build(&inst).unwrap().auction(trace.winner()));
        }
    }

    #[test]
    fn emitted_text_parses_back(seed in any::<u64>()) {
        let inst = random_instance(&mut rng_for(seed, 2), 6, 20);
        let text = emit_instance(&inst);
        let back = parse_instance(&text).unwrap();
        // Path vertices may be renumbered, so compare behaviour and text.
        prop_assert_eq!(emit_instance(&back), text);
        prop_assert_eq!(fcfc::<i64>(&back), fcfc::<i64>(&inst));
        prop_assert_eq!(rsne_find(&back).unwrap(), rsne_find(&inst).unwrap());
    }

    #[test]
    fn lex_max_matches_vertex_enumeration(
        dim in 1usize..=3,
        rows in prop::collection::vec((prop::collection::vec(-3i64..=3, 3), -4i64..=10), 0..5)
    ) {
        let rows: Vec<(Vec<i64>, i64)> = rows
            .into_iter()
            .map(|(a, c)| (a[..dim].to_vec(), c))
            .filter(|(a, _)| a.iter().any(|&x| x != 0))
            .collect();
        let sys = boxed_system(dim, &rows);
        let got = solve_feasible(&sys).unwrap();
        if let Some(p) = &got {
            prop_assert!(sys.satisfied_by(p));
        }
        prop_assert_eq!(got, vertex_lex_max(&sys));
    }

    #[test]
    fn cuts_only_shrink_the_region(
        rows in prop::collection::vec((prop::collection::vec(-3i64..=3, 2), -4i64..=10), 1..6)
    ) {
        let mut sys = boxed_system(2, &[]);
        let mut was_feasible = true;
        for (a, c) in rows {
            let before = solve_feasible(&sys).unwrap();
            sys.push(Constraint::new(a.iter().map(|&x| int(x)).collect(), Comparator::Le, int(c)));
            let after = solve_feasible(&sys).unwrap();
            prop_assert!(was_feasible || after.is_none());
            // The new optimum cannot beat the old one.
            if let (Some(b), Some(a)) = (&before, &after) {
                prop_assert!(a <= b);
            }
            was_feasible = after.is_some();
        }
    }
}

fn int(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

/// `rows` inside the box `[0, 10]^dim`.
fn boxed_system(dim: usize, rows: &[(Vec<i64>, i64)]) -> LinearSystem {
    let mut sys = LinearSystem::new((0..dim).map(|i| format!("x{i}")).collect());
    for i in 0..dim {
        let unit = |s: i64| (0..dim).map(|j| int(if j == i { s } else { 0 })).collect::<Vec<_>>();
        sys.push(Constraint::new(unit(1), Comparator::Le, int(10)));
        sys.push(Constraint::new(unit(-1), Comparator::Le, int(0)));
    }
    for (a, c) in rows {
        sys.push(Constraint::new(a.iter().map(|&x| int(x)).collect(), Comparator::Le, int(*c)));
    }
    sys
}

/// Solves a square system by Gauss-Jordan elimination.
fn solve_square(mut m: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r][col] != int(0))?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        m[col].iter_mut().for_each(|x| *x /= p.clone());
        for r in 0..n {
            if r != col {
                let f = m[r][col].clone();
                let row = m[col].clone();
                m[r].iter_mut().zip(&row).for_each(|(x, y)| *x -= f.clone() * y);
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Best feasible intersection of `dim` boundary hyperplanes. The box keeps
/// the region bounded, so the lexicographic maximum sits at one of these.
fn vertex_lex_max(sys: &LinearSystem) -> Option<Vec<Rational>> {
    let dim = sys.vars.len();
    let cs = &sys.constraints;
    let mut best: Option<Vec<Rational>> = None;
    let mut pick = vec![0usize; dim];
    fn next(pick: &mut [usize], n: usize) -> bool {
        let k = pick.len();
        for i in (0..k).rev() {
            if pick[i] < n - k + i {
                pick[i] += 1;
                for j in i + 1..k {
                    pick[j] = pick[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }
    for (i, p) in pick.iter_mut().enumerate() {
        *p = i;
    }
    loop {
        let m = pick.iter().map(|&r| cs[r].coeffs.iter().cloned().chain([cs[r].rhs.clone()]).collect()).collect();
        if let Some(p) = solve_square(m) {
            if sys.satisfied_by(&p) && best.as_ref().is_none_or(|b| p > *b) {
                best = Some(p);
            }
        }
        if !next(&mut pick, cs.len()) {
            return best;
        }
    }
}

#[test]
fn integer_strong_not_weak() {
    let text = "format 1\nmodel project\nbudget 8\nagent 1 3\nagent 2 3\noracle commodity\nitems x y\nowns 1 x\nowns 2 y\n";
    let inst = parse_instance(text).unwrap();
    let c = Coalition::new(&inst.agents, vec![AgentId(0), AgentId(1)], vec![3, 4], inst.model, None).unwrap();
    let space = Space::build(&inst).unwrap();
    assert!(strongly_winning_check(&inst, &c).unwrap() && space.strong(&c));
    assert!(!weakly_winning_check(&inst, &c).unwrap() && !space.weak(&c));
    // (3,5) raises only agent 2, cannot itself be improved, and ends the budget.
    let rival = Coalition::new(&inst.agents, c.members.clone(), vec![3, 5], inst.model, None).unwrap();
    assert!(rsne_check(&inst, &rival).unwrap());
}
