//! Centralized market: agents post asking salaries, the client hires the
//! cheapest feasible coalition.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::lp::{solve_with_separation, Comparator, Constraint, LinearSystem};
use crate::model::{AgentId, AgentSet, Coalition, Money, Rational, SalaryModel};
use crate::oracle::{ffc, FfcQuery};
use crate::space::CoalitionTable;

/// Cheapest feasible coalition, ties broken by the member order.
pub fn fcfc<M: Money>(inst: &Instance) -> Option<Coalition<M>> {
    fcfc_query(inst, &FfcQuery::new(inst))
}

/// FCFC under a query's budget, minima and filters.
///
/// With whole-unit salaries in the project model this is a binary search on
/// the budget followed by the agent-by-agent decrement extraction; otherwise
/// the oracle's own cheapest witness is used.
pub fn fcfc_query<M: Money>(inst: &Instance, query: &FfcQuery<M>) -> Option<Coalition<M>> {
    if !(M::DISCRETE && inst.model == SalaryModel::Project) {
        return ffc(inst, query);
    }
    let top = query.budget.as_integer()?;
    let at = |q: &FfcQuery<M>, b: i64| ffc(inst, &q.clone().with_budget(M::from_int(b)));
    at(query, top)?;
    let (mut lo, mut hi) = (0i64, top);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if at(query, mid).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let vstar = lo;

    let mut work = query.clone();
    let mut budget = vstar;
    let mut chosen = AgentSet::EMPTY;
    for i in query.eligible(inst.n()).iter() {
        let old = work.min_salaries[i.0].clone();
        work.min_salaries[i.0] = old.clone() - M::unit();
        if at(&work, budget - 1).is_some() {
            chosen = chosen.with(i);
            budget -= 1;
        } else {
            work.min_salaries[i.0] = old;
        }
    }
    let cost = chosen.iter().fold(M::zero(), |a, m| a + query.min_salaries[m.0].clone());
    debug_assert_eq!(cost.as_integer(), Some(vstar));
    Some(Coalition::from_parts(chosen, &query.min_salaries, cost, None))
}

/// The coalition the client hires when agents ask `profile`.
pub fn winning_coalition<M: Money>(inst: &Instance, profile: &[M]) -> Result<Option<Coalition<M>>> {
    inst.check_profile(profile)?;
    Ok(fcfc_query(inst, &FfcQuery::new(inst).with_minima(profile.to_vec())))
}

/// The members of `set` keep the client's choice when they ask `profile` and
/// everyone else asks their minimum.
fn holds_against_minima<M: Money>(inst: &Instance, set: AgentSet, profile: &[M]) -> bool {
    let mut minima: Vec<M> = inst.minima();
    for m in set.iter() {
        minima[m.0] = profile[m.0].clone();
    }
    fcfc_query(inst, &FfcQuery::new(inst).with_minima(minima))
        .is_some_and(|c| c.member_set() == set)
}

/// Whether `profile` is a strong Nash equilibrium of the asking game.
pub fn sne_check<M: Money>(inst: &Instance, profile: &[M]) -> Result<bool> {
    inst.check_profile(profile)?;
    let Some(w) = winning_coalition(inst, profile)? else {
        // nobody is hired: any coalition feasible at minima could deviate
        return Ok(ffc(inst, &FfcQuery::<M>::new(inst)).is_none());
    };
    let ws = w.member_set();
    if !holds_against_minima(inst, ws, profile) {
        return Ok(false);
    }
    for i in ws.iter() {
        if can_raise(inst, &w, profile, i)? {
            return Ok(false);
        }
    }
    if inst.model == SalaryModel::Hourly {
        let profile: Vec<i64> = profile
            .iter()
            .map(|s| s.as_integer().ok_or_else(|| Error::Unsupported("rational hourly salaries".into())))
            .collect::<Result<_>>()?;
        let table = CoalitionTable::build(inst)?;
        return Ok(!hourly_deviation_exists(inst, &table, &profile, ws));
    }
    Ok(true)
}

/// Member `i` of the winner can ask a little more and still be hired.
fn can_raise<M: Money>(inst: &Instance, w: &Coalition<M>, profile: &[M], i: AgentId) -> Result<bool> {
    if M::DISCRETE {
        let mut up = profile.to_vec();
        up[i.0] = up[i.0].clone() + M::unit();
        return Ok(winning_coalition(inst, &up)?.is_some_and(|c| c.members == w.members));
    }
    if w.cost >= inst.v() {
        return Ok(false);
    }
    let q = FfcQuery::new(inst).with_minima(profile.to_vec()).exclude(AgentSet::singleton(i));
    Ok(ffc(inst, &q).is_none_or(|r| r.cost > w.cost))
}

/// Exhaustive search for a profitable group deviation in the hourly model.
/// A deviation ends with some set X hired; members of X outside the winner
/// may ask anything, members inside may only ask more, everyone else stays.
fn hourly_deviation_exists(inst: &Instance, table: &CoalitionTable, profile: &[i64], winner: AgentSet) -> bool {
    let v = inst.budget;
    for k in 0..table.entries.len() {
        let x = table.entries[k].0;
        let ids = x.to_vec();
        let lo: Vec<i64> = ids
            .iter()
            .map(|m| if winner.contains(*m) { profile[m.0] } else { inst.agents.min_salary(*m) })
            .collect();
        if lo.iter().any(|&l| l > v) {
            continue;
        }
        let mut sal = profile.to_vec();
        let mut found = false;
        deviate(table, k, &ids, &lo, v, 0, &mut sal, profile, x != winner, &mut found);
        if found {
            return true;
        }
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn deviate(
    table: &CoalitionTable,
    k: usize,
    ids: &[AgentId],
    lo: &[i64],
    v: i64,
    p: usize,
    sal: &mut Vec<i64>,
    profile: &[i64],
    changed_set: bool,
    found: &mut bool,
) {
    if *found {
        return;
    }
    if p == ids.len() {
        if !changed_set && ids.iter().all(|m| sal[m.0] == profile[m.0]) {
            return;
        }
        if table.winner(sal).is_some_and(|(wk, _)| wk == k) {
            *found = true;
        }
        return;
    }
    let m = ids[p];
    for s in lo[p]..=v {
        sal[m.0] = s;
        if table.cost(k, sal).0 > v && p + 1 == ids.len() {
            break;
        }
        deviate(table, k, ids, lo, v, p + 1, sal, profile, changed_set, found);
        if *found {
            break;
        }
    }
    sal[m.0] = profile[m.0];
}

/// Strong Nash equilibrium of the asking game.
///
/// Project model: members of the cheapest coalition raise their asks by
/// coordinate ascent (ascending id, to a fixpoint) while they stay hired
/// against everyone else at minimum; others ask their minima.
/// Hourly model: the lexicographically least equilibrium among profiles where
/// non-winners ask their minima, or `None`.
pub fn sne_find(inst: &Instance) -> Result<Option<Vec<i64>>> {
    match inst.model {
        SalaryModel::Project => Ok(sne_find_project(inst)),
        SalaryModel::Hourly => sne_find_hourly(inst),
    }
}

fn sne_find_project(inst: &Instance) -> Option<Vec<i64>> {
    let star = fcfc::<i64>(inst)?.member_set();
    let mut s: Vec<i64> = inst.minima();
    loop {
        let mut moved = false;
        for i in star.iter() {
            let (mut lo, mut hi) = (s[i.0], inst.budget.max(s[i.0]));
            while lo < hi {
                let mid = lo + (hi - lo + 1) / 2;
                let mut t = s.clone();
                t[i.0] = mid;
                if holds_against_minima(inst, star, &t) {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            if lo > s[i.0] {
                s[i.0] = lo;
                moved = true;
            }
        }
        if !moved {
            return Some(s);
        }
    }
}

/// Non-winners at their minima suffice: if a profile is an equilibrium, so is
/// the profile that lowers every non-winner to its minimum.
fn sne_find_hourly(inst: &Instance) -> Result<Option<Vec<i64>>> {
    let table = CoalitionTable::build(inst)?;
    let mins: Vec<i64> = inst.minima();
    let v = inst.budget;
    let found: Vec<Vec<i64>> = (0..table.entries.len())
        .into_par_iter()
        .filter_map(|k| {
            let ids = table.entries[k].0.to_vec();
            let mut sal = mins.clone();
            let mut best: Option<Vec<i64>> = None;
            candidate_profiles(inst, &table, k, &ids, 0, &mut sal, v, &mut best);
            best
        })
        .collect();
    Ok(found.into_iter().min())
}

#[allow(clippy::too_many_arguments)]
fn candidate_profiles(
    inst: &Instance,
    table: &CoalitionTable,
    k: usize,
    ids: &[AgentId],
    p: usize,
    sal: &mut Vec<i64>,
    v: i64,
    best: &mut Option<Vec<i64>>,
) {
    if p == ids.len() {
        if table.winner(sal).is_some_and(|(wk, _)| wk == k)
            && best.as_ref().is_none_or(|b| *sal < *b)
            && sne_check(inst, sal).unwrap_or(false)
        {
            *best = Some(sal.clone());
        }
        return;
    }
    let m = ids[p];
    let lo = sal[m.0];
    for s in lo..=v.max(lo) {
        sal[m.0] = s;
        candidate_profiles(inst, table, k, ids, p + 1, sal, v, best);
    }
    sal[m.0] = lo;
}

/// Lexicographically least equilibrium over the whole box `[min, v]^n`.
pub fn sne_find_exhaustive(inst: &Instance) -> Result<Option<Vec<i64>>> {
    let mins: Vec<i64> = inst.minima();
    let v = inst.budget;
    let n = inst.n();
    let first_lo = mins[0];
    let first_hi = v.max(first_lo);
    let total: u128 = mins.iter().map(|&m| (v.max(m) - m + 1) as u128).product();
    if total > 50_000_000 {
        return Err(Error::CapExceeded { what: "profile box size", cap: 50_000_000 });
    }
    let hit = (first_lo..=first_hi).into_par_iter().find_map_first(|x0| {
        let mut s = mins.clone();
        s[0] = x0;
        loop {
            if sne_check(inst, &s).unwrap_or(false) {
                return Some(s);
            }
            // odometer over coordinates 1..n, last coordinate fastest
            let mut k = n;
            loop {
                if k == 1 {
                    return None;
                }
                k -= 1;
                if s[k] < v.max(mins[k]) {
                    s[k] += 1;
                    break;
                }
                s[k] = mins[k];
            }
        }
    });
    Ok(hit)
}

/// Rational equilibrium salaries for the cheapest coalition's members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSne {
    pub profile: Vec<Rational>,
    pub rounds: usize,
    pub system: LinearSystem,
}

/// Project model with rational salaries: constraint generation over the
/// inequality system, separated by one FCFC call per round, maximizing the
/// salaries lexicographically by agent id.
pub fn sne_find_rational(inst: &Instance) -> Result<Option<RationalSne>> {
    if inst.model != SalaryModel::Project {
        return Err(Error::Unsupported("rational equilibria need the project model".into()));
    }
    let Some(star) = fcfc::<Rational>(inst) else { return Ok(None) };
    let star_set = star.member_set();
    let ids = star.members.clone();
    let mins: Vec<Rational> = inst.minima();
    let k = ids.len();
    let unit = |p: usize| {
        let mut c = vec![Rational::from_int(0); k];
        c[p] = Rational::from_int(1);
        c
    };

    let mut sys = LinearSystem::new(ids.iter().map(|m| format!("s{}", inst.agents.label(*m))).collect());
    sys.push(Constraint::new(vec![Rational::from_int(1); k], Comparator::Le, inst.v()));
    for (p, m) in ids.iter().enumerate() {
        sys.push(Constraint::new(unit(p), Comparator::Ge, mins[m.0].clone()));
    }

    let to_profile = |point: &[Rational]| {
        let mut prof = mins.clone();
        for (p, m) in ids.iter().enumerate() {
            prof[m.0] = point[p].clone();
        }
        prof
    };
    let separator = |point: &[Rational]| -> Option<Constraint> {
        let prof = to_profile(point);
        let mut minima = mins.clone();
        for m in &ids {
            minima[m.0] = prof[m.0].clone();
        }
        let rival = fcfc_query(inst, &FfcQuery::new(inst).with_minima(minima))?;
        let rs = rival.member_set();
        if rs == star_set {
            return None;
        }
        let coeffs = ids
            .iter()
            .map(|m| Rational::from_int(if rs.contains(*m) { 0 } else { 1 }))
            .collect();
        let rhs = rs.difference(star_set).iter().fold(Rational::from_int(0), |a, m| a + mins[m.0].clone());
        let cmp = if star_set.tie_cmp(rs).is_lt() { Comparator::Le } else { Comparator::Lt };
        Some(Constraint::new(coeffs, cmp, rhs))
    };
    let Some(sep) = solve_with_separation(sys, separator)? else { return Ok(None) };
    let profile = to_profile(&sep.point);
    if !sne_check(inst, &profile)? {
        return Ok(None);
    }
    Ok(Some(RationalSne { profile, rounds: sep.rounds, system: sep.system }))
}
