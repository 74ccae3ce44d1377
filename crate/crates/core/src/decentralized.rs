//! Decentralized market: coalitions form on their own and are stable when no
//! rival endangers them.

use std::cmp::Ordering;
use std::fmt;

use petgraph::algo::is_cyclic_directed;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::EdgeFiltered;
use rayon::prelude::*;

use crate::centralized::fcfc;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::lp::{solve_with_separation, Comparator, Constraint, LinearSystem};
use crate::model::{format_coalition, AgentId, AgentSet, Coalition, Money, Rational, SalaryModel};
use crate::oracle::{evaluate, ffc, FfcQuery};
use crate::space::enumerate_profiles;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EndangermentKind {
    /// A disjoint rival that is cheaper.
    Explicit,
    /// An overlapping rival paying every shared member at least as much.
    Implicit,
    /// An overlapping rival paying every shared member strictly more.
    StrictImplicit,
}

impl fmt::Display for EndangermentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EndangermentKind::Explicit => "explicit",
            EndangermentKind::Implicit => "implicit",
            EndangermentKind::StrictImplicit => "strict-implicit",
        })
    }
}

/// Checks that `c` is a feasible coalition of the instance: known members,
/// salaries at least the minima, a valid schedule and cost within budget.
pub fn validate_coalition<M: Money>(inst: &Instance, c: &Coalition<M>) -> Result<()> {
    let rebuilt = Coalition::new(&inst.agents, c.members.clone(), c.salaries.clone(), inst.model, c.schedule.clone())?;
    if rebuilt.cost != c.cost {
        return Err(Error::InvalidCoalition(format!("stated cost {} differs from {}", c.cost, rebuilt.cost)));
    }
    let set = c.member_set();
    let schedules = inst.oracle.schedules(set);
    let ok = match (&c.schedule, inst.model) {
        (_, SalaryModel::Project) => !schedules.is_empty(),
        (Some(t), SalaryModel::Hourly) => schedules.contains(t),
        (None, SalaryModel::Hourly) => false,
    };
    if !ok || c.cost > inst.v() {
        return Err(Error::InfeasibleCoalition);
    }
    Ok(())
}

/// Definitional test: does `rival` endanger `c` in the given way.
/// Both are assumed to be coalitions of the same instance.
pub fn endangers<M: Money>(inst: &Instance, rival: &Coalition<M>, c: &Coalition<M>, kind: EndangermentKind) -> bool {
    if rival.cost > inst.v() {
        return false;
    }
    let shared = rival.member_set().intersection(c.member_set());
    match kind {
        EndangermentKind::Explicit => shared.is_empty() && rival.is_cheaper_than(c),
        EndangermentKind::Implicit => {
            !shared.is_empty()
                && !rival.same_profile(c)
                && shared.iter().all(|m| rival.salary_of(m) >= c.salary_of(m))
        }
        EndangermentKind::StrictImplicit => {
            !shared.is_empty() && shared.iter().all(|m| rival.salary_of(m) > c.salary_of(m))
        }
    }
}

/// Explicit or implicit, whichever applies; the two are mutually exclusive.
pub fn endangerment_kind<M: Money>(inst: &Instance, rival: &Coalition<M>, c: &Coalition<M>) -> Option<EndangermentKind> {
    [EndangermentKind::Explicit, EndangermentKind::Implicit]
        .into_iter()
        .find(|&k| endangers(inst, rival, c, k))
}

fn witness_order<M: Money>(a: &Coalition<M>, b: &Coalition<M>) -> Ordering {
    a.cost
        .cmp(&b.cost)
        .then_with(|| a.members.cmp(&b.members))
        .then_with(|| a.salaries.cmp(&b.salaries))
}

fn offer<M: Money>(best: &mut Option<Coalition<M>>, cand: Coalition<M>) {
    if best.as_ref().is_none_or(|b| witness_order(&cand, b) == Ordering::Less) {
        *best = Some(cand);
    }
}

/// Minima with `c`'s members pinned to their salaries in `c`.
fn pinned<M: Money>(inst: &Instance, c: &Coalition<M>) -> Vec<M> {
    let mut s: Vec<M> = inst.minima();
    for (m, x) in c.members.iter().zip(&c.salaries) {
        s[m.0] = x.clone();
    }
    s
}

/// Cheapest endangering coalition of the given kind, least by cost, then
/// members, then salaries. For rational salaries the implicit kinds have no
/// cheapest witness in general; a representative one is returned instead.
pub fn find_endangering<M: Money>(inst: &Instance, c: &Coalition<M>, kind: EndangermentKind) -> Result<Option<Coalition<M>>> {
    validate_coalition(inst, c)?;
    Ok(match kind {
        EndangermentKind::Explicit => explicit_witness(inst, c),
        EndangermentKind::Implicit => implicit_witness(inst, c),
        EndangermentKind::StrictImplicit => strict_witness(inst, c),
    })
}

fn explicit_witness<M: Money>(inst: &Instance, c: &Coalition<M>) -> Option<Coalition<M>> {
    ffc(inst, &FfcQuery::new(inst).exclude(c.member_set())).filter(|w| w.is_cheaper_than(c))
}

fn implicit_witness<M: Money>(inst: &Instance, c: &Coalition<M>) -> Option<Coalition<M>> {
    let nc = c.member_set();
    let base = pinned(inst, c);
    let v: M = inst.v();
    let mut best = None;

    // same members, some salary raised
    if M::DISCRETE {
        for i in nc.iter() {
            let mut s = base.clone();
            s[i.0] = s[i.0].clone() + M::unit();
            if let Some((cost, schedule)) = evaluate(&inst.oracle, inst.model, nc, &s) {
                if cost <= v {
                    offer(&mut best, Coalition::from_parts(nc, &s, cost, schedule));
                }
            }
        }
    } else if c.cost < v && inst.model == SalaryModel::Project {
        let last = c.members[c.members.len() - 1];
        let mut s = base.clone();
        s[last.0] = s[last.0].clone() + (v.clone() - c.cost.clone());
        offer(&mut best, Coalition::from_parts(nc, &s, v.clone(), None));
    }

    let q = FfcQuery::new(inst).with_minima(base);
    // some member dropped, another kept
    for j in nc.iter() {
        for i in nc.without(j).iter() {
            let query = q.clone().exclude(AgentSet::singleton(j)).require(AgentSet::singleton(i));
            if let Some(w) = ffc(inst, &query) {
                offer(&mut best, w);
            }
        }
    }
    // everyone kept, someone added
    for k in inst.all().difference(nc).iter() {
        if let Some(w) = ffc(inst, &q.clone().require(nc.with(k))) {
            offer(&mut best, w);
        }
    }
    best
}

fn strict_witness<M: Money>(inst: &Instance, c: &Coalition<M>) -> Option<Coalition<M>> {
    let nc = c.member_set();
    let v: M = inst.v();
    let mut best = None;
    if M::DISCRETE {
        let mut s = pinned(inst, c);
        for m in nc.iter() {
            s[m.0] = s[m.0].clone() + M::unit();
        }
        let q = FfcQuery::new(inst).with_minima(s);
        for i in nc.iter() {
            if let Some(w) = ffc(inst, &q.clone().require(AgentSet::singleton(i))) {
                offer(&mut best, w);
            }
        }
        return best;
    }
    // rational: room below the budget is shared among the common members
    let base = pinned(inst, c);
    let q = FfcQuery::new(inst).with_minima(base.clone());
    for i in nc.iter() {
        let Some(w) = ffc(inst, &q.clone().require(AgentSet::singleton(i))) else { continue };
        if w.cost >= v {
            continue;
        }
        let shared = w.member_set().intersection(nc);
        let bump = (v.clone() - w.cost.clone()).div_int(2 * shared.len() as i64);
        let mut s = base.clone();
        for m in shared.iter() {
            s[m.0] = s[m.0].clone() + bump.clone();
        }
        let cost = w.cost.clone() + bump.times(shared.len() as u64);
        offer(&mut best, Coalition::from_parts(w.member_set(), &s, cost, None));
    }
    best
}

/// Rigorously strongly winning: endangered by nothing.
pub fn rsne_check<M: Money>(inst: &Instance, c: &Coalition<M>) -> Result<bool> {
    validate_coalition(inst, c)?;
    Ok(explicit_witness(inst, c).is_none() && implicit_witness(inst, c).is_none())
}

/// Strongly winning: no explicit and no strictly implicit endangerer.
pub fn strongly_winning_check<M: Money>(inst: &Instance, c: &Coalition<M>) -> Result<bool> {
    validate_coalition(inst, c)?;
    Ok(explicit_witness(inst, c).is_none() && strict_witness(inst, c).is_none())
}

fn to_int(c: &Coalition<impl Money>) -> Result<Coalition<i64>> {
    let conv = |x: &dyn Fn() -> Option<i64>| x().ok_or_else(|| Error::Unsupported("fractional salary in integer mode".into()));
    Ok(Coalition {
        members: c.members.clone(),
        salaries: c.salaries.iter().map(|s| conv(&|| s.as_integer())).collect::<Result<_>>()?,
        cost: conv(&|| c.cost.as_integer())?,
        schedule: c.schedule.clone(),
    })
}

fn to_rat<M: Money>(c: &Coalition<M>) -> Coalition<Rational> {
    Coalition {
        members: c.members.clone(),
        salaries: c.salaries.iter().map(Money::to_rational).collect(),
        cost: c.cost.to_rational(),
        schedule: c.schedule.clone(),
    }
}

/// Weakly winning: not explicitly endangered, and no implicit endangerer is
/// itself rigorously strongly winning.
pub fn weakly_winning_check<M: Money>(inst: &Instance, c: &Coalition<M>) -> Result<bool> {
    validate_coalition(inst, c)?;
    if explicit_witness(inst, c).is_some() {
        return Ok(false);
    }
    if M::DISCRETE {
        return weak_integer(inst, &to_int(c)?);
    }
    weak_rational(inst, &to_rat(c))
}

fn weak_integer(inst: &Instance, c: &Coalition<i64>) -> Result<bool> {
    let star = match inst.model {
        SalaryModel::Project => fcfc::<i64>(inst).map(|w| w.member_set()),
        SalaryModel::Hourly => None,
    };
    let profiles = enumerate_profiles(inst, inst.budget)?;
    let hit = profiles.par_iter().any(|p| {
        if let Some(star) = star {
            // project-model equilibria use exactly the cheapest members at full budget
            if p.member_set() != star || p.cost != inst.budget {
                return false;
            }
        }
        endangers(inst, p, c, EndangermentKind::Implicit) && rsne_check(inst, p).unwrap_or(false)
    });
    Ok(!hit)
}

fn weak_rational(inst: &Instance, c: &Coalition<Rational>) -> Result<bool> {
    if inst.model != SalaryModel::Project {
        return Err(Error::Unsupported("rational salaries require the project model".into()));
    }
    let Some(star) = fcfc::<Rational>(inst) else { return Ok(true) };
    let star_set = star.member_set();
    let nc = c.member_set();
    let shared = star_set.intersection(nc);
    if shared.is_empty() {
        return Ok(true);
    }
    if star_set == nc && c.cost == inst.v() {
        return Ok(true);
    }
    let floors: Vec<(AgentId, Rational)> = shared.iter().map(|m| (m, c.salary_of(m).unwrap().clone())).collect();
    Ok(rsne_lp(inst, star_set, &floors)?.is_none())
}

/// A disjoint rival beats any coalition of `star` priced at the full budget.
fn budget_rival_wins(inst: &Instance, star: AgentSet) -> bool {
    let rival = ffc(inst, &FfcQuery::<Rational>::new(inst).exclude(star));
    rival.is_some_and(|r| {
        let v: Rational = inst.v();
        r.cost < v || (r.cost == v && r.member_set().tie_cmp(star) == Ordering::Less)
    })
}

/// Rational project-model search for an unendangered coalition on `star`
/// at cost `v`, with optional salary floors.
fn rsne_lp(inst: &Instance, star: AgentSet, floors: &[(AgentId, Rational)]) -> Result<Option<Coalition<Rational>>> {
    if budget_rival_wins(inst, star) {
        return Ok(None);
    }
    let ids = star.to_vec();
    let k = ids.len();
    let mins: Vec<Rational> = inst.minima();
    let v: Rational = inst.v();
    let zero = || Rational::from_int(0);
    let unit = |p: usize| (0..k).map(|q| Rational::from_int(i64::from(p == q))).collect::<Vec<_>>();

    let mut sys = LinearSystem::new(ids.iter().map(|m| format!("s{}", inst.agents.label(*m))).collect());
    sys.push(Constraint::new(vec![Rational::from_int(1); k], Comparator::Eq, v.clone()));
    for (p, m) in ids.iter().enumerate() {
        sys.push(Constraint::new(unit(p), Comparator::Ge, mins[m.0].clone()));
    }
    for (m, floor) in floors {
        if let Some(p) = ids.iter().position(|x| x == m) {
            sys.push(Constraint::new(unit(p), Comparator::Ge, floor.clone()));
        }
    }
    let at = |point: &[Rational]| {
        let mut s = mins.clone();
        for (p, m) in ids.iter().enumerate() {
            s[m.0] = point[p].clone();
        }
        Coalition::from_parts(star, &s, v.clone(), None)
    };
    let separator = |point: &[Rational]| -> Option<Constraint> {
        let w = implicit_witness(inst, &at(point))?;
        let rs = w.member_set();
        let coeffs = ids.iter().map(|m| if rs.contains(*m) { Rational::from_int(1) } else { zero() }).collect();
        let outside = rs.difference(star).iter().fold(zero(), |a, m| a + mins[m.0].clone());
        Some(Constraint::new(coeffs, Comparator::Gt, v.clone() - outside))
    };
    let Some(sep) = solve_with_separation(sys, separator)? else { return Ok(None) };
    let c = at(&sep.point);
    Ok(rsne_check(inst, &c)?.then_some(c))
}

/// Lexicographically largest salary vector on `members` summing to `total`
/// with each entry at least its floor, then the next one down.
fn compositions(floors: &[i64], total: i64) -> impl Iterator<Item = Vec<i64>> + '_ {
    let k = floors.len();
    let slack = total - floors.iter().sum::<i64>();
    let mut cur: Option<Vec<i64>> = (slack >= 0 && k > 0).then(|| {
        let mut extra = vec![0i64; k];
        extra[0] = slack;
        extra
    });
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        // predecessor in lex order among non-negative vectors with the same sum
        let mut e = out.clone();
        let mut next = None;
        let mut tail = e[k - 1];
        for p in (0..k - 1).rev() {
            if e[p] > 0 {
                e[p] -= 1;
                e[p + 1] = tail + 1;
                for x in e.iter_mut().skip(p + 2) {
                    *x = 0;
                }
                next = Some(e.clone());
                break;
            }
            tail += e[p];
        }
        cur = next;
        Some(out.iter().zip(floors).map(|(x, f)| x + f).collect())
    })
}

/// Some rigorously strongly winning coalition, or `None`.
///
/// Project model: members of the cheapest coalition at total cost `v`,
/// salary vectors tried from the lexicographically largest. Hourly model:
/// the first unendangered coalition in enumeration order.
pub fn rsne_find(inst: &Instance) -> Result<Option<Coalition<i64>>> {
    match inst.model {
        SalaryModel::Project => {
            let Some(star) = fcfc::<i64>(inst) else { return Ok(None) };
            let star_set = star.member_set();
            if budget_rival_wins(inst, star_set) {
                return Ok(None);
            }
            let floors: Vec<i64> = star.members.iter().map(|m| inst.agents.min_salary(*m)).collect();
            for sal in compositions(&floors, inst.budget) {
                let mut s: Vec<i64> = inst.minima();
                for (m, x) in star.members.iter().zip(&sal) {
                    s[m.0] = *x;
                }
                let c = Coalition::from_parts(star_set, &s, inst.budget, None);
                if rsne_check(inst, &c)? {
                    return Ok(Some(c));
                }
            }
            Ok(None)
        }
        SalaryModel::Hourly => {
            let profiles = enumerate_profiles(inst, inst.budget)?;
            Ok(profiles.into_par_iter().find_first(|p| rsne_check(inst, p).unwrap_or(false)))
        }
    }
}

/// Rational project-model variant of [`rsne_find`] by constraint generation.
pub fn rsne_find_rational(inst: &Instance) -> Result<Option<Coalition<Rational>>> {
    if inst.model != SalaryModel::Project {
        return Err(Error::Unsupported("rational salaries require the project model".into()));
    }
    let Some(star) = fcfc::<Rational>(inst) else { return Ok(None) };
    rsne_lp(inst, star.member_set(), &[])
}

/// The cheapest rival disjoint from `set`.
fn disjoint_rival<M: Money>(inst: &Instance, set: AgentSet) -> Option<Coalition<M>> {
    crate::centralized::fcfc_query(inst, &FfcQuery::new(inst).exclude(set))
}

/// A weakly winning coalition: an unendangered one if it exists, otherwise the
/// cheapest coalition with its salaries raised as far as no disjoint rival
/// allows (project model). `None` iff nothing is feasible.
pub fn weakly_winning_find(inst: &Instance) -> Result<Option<Coalition<i64>>> {
    if let Some(c) = rsne_find(inst)? {
        return Ok(Some(c));
    }
    let Some(w) = fcfc::<i64>(inst) else { return Ok(None) };
    if inst.model == SalaryModel::Hourly {
        return Ok(Some(w));
    }
    let ws = w.member_set();
    let level = match disjoint_rival::<i64>(inst, ws) {
        None => inst.budget,
        Some(r) if ws.tie_cmp(r.member_set()) == Ordering::Less => inst.budget.min(r.cost),
        Some(r) => inst.budget.min(r.cost - 1),
    };
    Ok(Some(lift(&w, level)))
}

/// Rational variant of [`weakly_winning_find`].
pub fn weakly_winning_find_rational(inst: &Instance) -> Result<Option<Coalition<Rational>>> {
    if let Some(c) = rsne_find_rational(inst)? {
        return Ok(Some(c));
    }
    let Some(w) = fcfc::<Rational>(inst) else { return Ok(None) };
    let ws = w.member_set();
    let v: Rational = inst.v();
    let level = match disjoint_rival::<Rational>(inst, ws) {
        None => v,
        Some(r) if v < r.cost => v,
        Some(r) if ws.tie_cmp(r.member_set()) == Ordering::Less => v.min(r.cost),
        Some(r) => (w.cost.clone() + r.cost).div_int(2),
    };
    Ok(Some(lift(&w, level)))
}

/// Gives all slack up to `level` to the lowest-id member.
fn lift<M: Money>(w: &Coalition<M>, level: M) -> Coalition<M> {
    let mut out = w.clone();
    if level > w.cost {
        out.salaries[0] = out.salaries[0].clone() + (level.clone() - w.cost.clone());
        out.cost = level;
    }
    out
}

/// Directed multigraph of endangerment between bounded coalition profiles.
/// An edge runs from a profile to each profile that endangers it.
#[derive(Debug, Clone)]
pub struct EndangermentGraph {
    pub graph: DiGraph<Coalition<i64>, EndangermentKind>,
}

impl EndangermentGraph {
    pub fn vertex_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Profiles nothing endangers, in vertex order.
    pub fn sinks(&self) -> Vec<&Coalition<i64>> {
        self.graph
            .node_indices()
            .filter(|&x| self.graph.neighbors(x).next().is_none())
            .map(|x| &self.graph[x])
            .collect()
    }

    pub fn explicit_acyclic(&self) -> bool {
        let explicit = EdgeFiltered::from_fn(&self.graph, |e| *e.weight() == EndangermentKind::Explicit);
        !is_cyclic_directed(&explicit)
    }

    /// Edge list `from -> to kind`, then a summary and the sinks.
    pub fn export(&self, inst: &Instance) -> String {
        let mut out = String::new();
        let mut edges: Vec<(usize, usize, EndangermentKind)> = self
            .graph
            .raw_edges()
            .iter()
            .map(|e| (e.source().index(), e.target().index(), e.weight))
            .collect();
        edges.sort();
        for (a, b, k) in edges {
            let from = format_coalition(&inst.agents, &self.graph[NodeIndex::new(a)]);
            let to = format_coalition(&inst.agents, &self.graph[NodeIndex::new(b)]);
            out.push_str(&format!("{from} -> {to} {k}\n"));
        }
        let sinks = self.sinks();
        out.push_str(&format!(
            "vertices={} edges={} sinks={}\n",
            self.vertex_count(),
            self.edge_count(),
            sinks.len()
        ));
        for s in sinks {
            out.push_str(&format!("sink {}\n", format_coalition(&inst.agents, s)));
        }
        out
    }
}

/// Builds the graph over every feasible profile with salaries at most `cap`.
pub fn build_endangerment_graph(inst: &Instance, cap: i64) -> Result<EndangermentGraph> {
    let profiles = enumerate_profiles(inst, cap)?;
    let edges: Vec<Vec<(usize, EndangermentKind)>> = profiles
        .par_iter()
        .map(|c| {
            profiles
                .iter()
                .enumerate()
                .filter_map(|(j, r)| endangerment_kind(inst, r, c).map(|k| (j, k)))
                .collect()
        })
        .collect();
    let mut graph = DiGraph::with_capacity(profiles.len(), 0);
    let nodes: Vec<NodeIndex> = profiles.into_iter().map(|p| graph.add_node(p)).collect();
    for (i, out) in edges.into_iter().enumerate() {
        for (j, k) in out {
            graph.add_edge(nodes[i], nodes[j], k);
        }
    }
    Ok(EndangermentGraph { graph })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::AgentTable;
    use crate::oracle::{CommodityOracle, OracleSpec};

    fn commodity(mins: Vec<i64>, v: i64, owners: Vec<Vec<usize>>) -> Instance {
        let count = owners.iter().flatten().max().unwrap() + 1;
        let items = (0..count).map(|k| format!("i{k}")).collect();
        let oracle = CommodityOracle::new(items, owners).unwrap();
        Instance::new(AgentTable::with_minima(mins).unwrap(), v, SalaryModel::Project, OracleSpec::Commodity(oracle))
            .unwrap()
    }

    fn e1() -> Instance {
        commodity(vec![2, 2, 2], 5, vec![vec![0, 2], vec![0, 1], vec![1, 2]])
    }

    fn coal(inst: &Instance, ids: &[usize], sal: &[i64]) -> Coalition<i64> {
        Coalition::new(&inst.agents, ids.iter().map(|&i| AgentId(i)).collect(), sal.to_vec(), inst.model, None)
            .unwrap()
    }

    #[test]
    fn e1_endangerment() {
        let inst = e1();
        let c = coal(&inst, &[0, 1], &[2, 2]);
        assert!(find_endangering(&inst, &c, EndangermentKind::Explicit).unwrap().is_none());
        let w = find_endangering(&inst, &c, EndangermentKind::Implicit).unwrap().unwrap();
        assert!(endangers(&inst, &w, &c, EndangermentKind::Implicit));
        assert!(!rsne_check(&inst, &c).unwrap());
        let c = coal(&inst, &[0, 1], &[2, 3]);
        let s = find_endangering(&inst, &c, EndangermentKind::StrictImplicit).unwrap().unwrap();
        assert_eq!((s.members.clone(), s.salaries.clone()), (vec![AgentId(0), AgentId(2)], vec![3, 2]));
        assert!(weakly_winning_check(&inst, &c).unwrap());
    }

    #[test]
    fn e1_finders() {
        let inst = e1();
        assert!(rsne_find(&inst).unwrap().is_none());
        let w = weakly_winning_find(&inst).unwrap().unwrap();
        assert_eq!(w.salaries, vec![3, 2]);
        assert!(weakly_winning_check(&inst, &w).unwrap());
        assert!(rsne_find_rational(&inst).unwrap().is_none());
        assert!(weakly_winning_find(&inst.with_budget(3)).unwrap().is_none());
    }

    #[test]
    fn expensive_third_agent() {
        let inst = commodity(vec![2, 2, 10], 5, vec![vec![0, 2], vec![0, 1], vec![1, 2]]);
        let c = rsne_find(&inst).unwrap().unwrap();
        assert_eq!((c.salaries.clone(), c.cost), (vec![3, 2], 5));
        let r = rsne_find_rational(&inst).unwrap().unwrap();
        assert_eq!(r.salaries, vec![Rational::from_int(3), Rational::from_int(2)]);
    }

    #[test]
    fn explicit_rival() {
        let inst = commodity(vec![2, 2], 5, vec![vec![0], vec![0]]);
        let c = coal(&inst, &[0], &[3]);
        let w = find_endangering(&inst, &c, EndangermentKind::Explicit).unwrap().unwrap();
        assert_eq!((w.members, w.cost), (vec![AgentId(1)], 2));
        assert!(!weakly_winning_check(&inst, &c).unwrap());
        assert!(!strongly_winning_check(&inst, &c).unwrap());
    }

    #[test]
    fn compositions_descend() {
        let all: Vec<Vec<i64>> = compositions(&[2, 2], 5).collect();
        assert_eq!(all, vec![vec![3, 2], vec![2, 3]]);
        assert_eq!(compositions(&[1, 1, 1], 4).count(), 3);
        assert_eq!(compositions(&[3], 2).count(), 0);
    }

    #[test]
    fn e1_graph() {
        let g = build_endangerment_graph(&e1(), 5).unwrap();
        assert!(g.sinks().is_empty());
        assert!(g.explicit_acyclic());
    }
}
