//! Seeded random instances and the equivalence checks run over them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::centralized::{fcfc, sne_check};
use crate::decentralized::{
    build_endangerment_graph, rsne_check, strongly_winning_check, weakly_winning_check,
};
use crate::error::Result;
use crate::instance::Instance;
use crate::mechanisms::{auction_run, auction_winning_check};
use crate::model::{AgentId, AgentSet, AgentTable, Coalition, SalaryModel, Time};
use crate::oracle::{
    brute_force_ffc, ffc, CommodityOracle, FfcQuery, OracleSpec, PathOracle, PredicateEntry,
    PredicateOracle, BRUTE_FORCE_CAP,
};
use crate::reference::Space;
use crate::scheduling::{SchedulingInstance, Skill, TaskSystem};

pub const DEFAULT_SEED: u64 = 0x5eed_c0a1;

/// Largest agent count and budget for which definitional scans are run.
pub const SCAN_AGENTS: usize = 4;
pub const SCAN_BUDGET: i64 = 8;

/// `COALAUCT_SEED` if set and numeric, else the default.
pub fn seed_from_env() -> u64 {
    std::env::var("COALAUCT_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusConfig {
    pub seed: u64,
    pub count: usize,
    pub n_max: usize,
    pub v_max: i64,
}

/// Independent stream per instance so results do not depend on scheduling.
pub fn rng_for(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> AgentSet {
    AgentSet::from_bits(rng.gen_range(1u64..(1u64 << n)))
}

/// A random commodity, path or predicate instance with `1..=n_max` agents.
pub fn random_instance(rng: &mut ChaCha8Rng, n_max: usize, v_max: i64) -> Instance {
    let n = rng.gen_range(1..=n_max);
    let mins: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
    let budget = rng.gen_range(v_max.min(2)..=v_max);
    let model = if rng.gen_bool(0.3) { SalaryModel::Hourly } else { SalaryModel::Project };
    let oracle = match rng.gen_range(0..3) {
        0 => {
            let items = rng.gen_range(1..=4usize);
            let owns = (0..n)
                .map(|_| (0..items).filter(|_| rng.gen_bool(0.55)).collect())
                .collect();
            OracleSpec::Commodity(
                CommodityOracle::new((0..items).map(|k| format!("i{k}")).collect(), owns).unwrap(),
            )
        }
        1 => {
            let extra = rng.gen_range(0..=2usize);
            let mut names = vec!["s".to_string(), "t".to_string()];
            names.extend((0..n).map(|k| format!("v{k}")));
            names.extend((0..extra).map(|k| format!("w{k}")));
            let mut edges = Vec::new();
            for a in 0..names.len() {
                for b in a + 1..names.len() {
                    if (a, b) != (0, 1) && rng.gen_bool(0.45) {
                        edges.push((a, b));
                    }
                }
            }
            let at = (0..n).map(|k| rng.gen_bool(0.85).then_some(k + 2)).collect();
            OracleSpec::Path(PathOracle::new(names, edges, 0, 1, at).unwrap())
        }
        _ => {
            let count = rng.gen_range(1..=5usize);
            let mut entries: Vec<PredicateEntry> = Vec::new();
            for _ in 0..count {
                let members = random_subset(rng, n);
                if entries.iter().any(|e| e.members == members) {
                    continue;
                }
                let times = (model == SalaryModel::Hourly)
                    .then(|| (0..members.len()).map(|_| rng.gen_range(1..=3)).collect());
                entries.push(PredicateEntry { members, times });
            }
            OracleSpec::Predicate(PredicateOracle::new(entries).unwrap())
        }
    };
    Instance::new(AgentTable::with_minima(mins).unwrap(), budget, model, oracle).unwrap()
}

pub fn corpus(cfg: &CorpusConfig) -> Vec<Instance> {
    (0..cfg.count)
        .into_par_iter()
        .map(|k| random_instance(&mut rng_for(cfg.seed, k), cfg.n_max, cfg.v_max))
        .collect()
}

/// A random scheduling instance with integer salaries.
pub fn random_scheduling(rng: &mut ChaCha8Rng, n_max: usize, q_max: usize, skill_max: Time) -> SchedulingInstance<i64> {
    let n = rng.gen_range(1..=n_max);
    let q = rng.gen_range(1..=q_max);
    let skills = (0..n)
        .map(|_| {
            (0..q)
                .map(|_| if rng.gen_bool(0.2) { Skill::Infinite } else { Skill::Finite(rng.gen_range(1..=skill_max)) })
                .collect()
        })
        .collect();
    let deadline = rng.gen_range(1..=2 * skill_max);
    let model = if rng.gen_bool(0.5) { SalaryModel::Hourly } else { SalaryModel::Project };
    let budget = match model {
        SalaryModel::Project => rng.gen_range(1..=12),
        SalaryModel::Hourly => rng.gen_range(1..=60),
    };
    SchedulingInstance {
        system: TaskSystem::new(skills, deadline).unwrap(),
        min_salaries: (0..n).map(|_| rng.gen_range(1..=4)).collect(),
        budget,
        model,
    }
}

/// Counts and failure descriptions from [`verify_corpus`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub instances: usize,
    pub ffc_queries: usize,
    pub scanned_coalitions: usize,
    pub scanned_profiles: usize,
    pub auctions: usize,
    pub graphs: usize,
    pub failures: Vec<String>,
}

impl Report {
    fn merge(mut self, other: Report) -> Report {
        self.instances += other.instances;
        self.ffc_queries += other.ffc_queries;
        self.scanned_coalitions += other.scanned_coalitions;
        self.scanned_profiles += other.scanned_profiles;
        self.auctions += other.auctions;
        self.graphs += other.graphs;
        self.failures.extend(other.failures);
        self
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "instances={} ffc_queries={} scanned_coalitions={} scanned_profiles={} auctions={} graphs={} failures={}",
            self.instances,
            self.ffc_queries,
            self.scanned_coalitions,
            self.scanned_profiles,
            self.auctions,
            self.graphs,
            self.failures.len()
        )
    }
}

fn key(c: &Option<Coalition<i64>>) -> Option<(i64, Vec<AgentId>)> {
    c.as_ref().map(|c| (c.cost, c.members.clone()))
}

/// FFC and FCFC against subset enumeration under a few random queries.
pub fn check_ffc(inst: &Instance, rng: &mut ChaCha8Rng, rep: &mut Report, tag: &str) {
    let n = inst.n();
    let mut queries = vec![FfcQuery::<i64>::new(inst)];
    for _ in 0..3 {
        let mut q = FfcQuery::new(inst).with_budget(rng.gen_range(0..=inst.budget));
        for id in inst.agents.ids() {
            if rng.gen_bool(0.3) {
                q = q.pin(id, inst.agents.min_salary(id) + rng.gen_range(1..=3));
            }
        }
        if n > 1 && rng.gen_bool(0.4) {
            q = q.exclude(AgentSet::singleton(AgentId(rng.gen_range(0..n))));
        }
        if rng.gen_bool(0.3) {
            let r = AgentId(rng.gen_range(0..n));
            if !q.excluded.contains(r) {
                q = q.require(AgentSet::singleton(r));
            }
        }
        queries.push(q);
    }
    for q in &queries {
        rep.ffc_queries += 1;
        let fast = ffc(inst, q);
        let slow = brute_force_ffc(inst, q, BRUTE_FORCE_CAP).expect("small instance");
        if key(&fast) != key(&slow) {
            rep.failures.push(format!("{tag}: ffc {:?} != brute force {:?} for {q:?}", key(&fast), key(&slow)));
        }
    }
    let top = fcfc::<i64>(inst);
    let slow = brute_force_ffc(inst, &FfcQuery::new(inst), BRUTE_FORCE_CAP).expect("small instance");
    if key(&top) != key(&slow) {
        rep.failures.push(format!("{tag}: fcfc {:?} != brute force {:?}", key(&top), key(&slow)));
    }
}

/// Stability checks, equilibrium checks and the graph against literal scans.
pub fn check_scans(inst: &Instance, rng: &mut ChaCha8Rng, rep: &mut Report, tag: &str) -> Result<()> {
    let space = Space::build(inst)?;
    let mut sample: Vec<&Coalition<i64>> = space.profiles.iter().collect();
    if sample.len() > 24 {
        sample.shuffle(rng);
        sample.truncate(24);
    }
    for c in sample {
        rep.scanned_coalitions += 1;
        let got = [
            rsne_check(inst, c)?,
            strongly_winning_check(inst, c)?,
            weakly_winning_check(inst, c)?,
            auction_winning_check(inst, c)?,
        ];
        let want = [space.rsne(c), space.strong(c), space.weak(c), space.auction(c)];
        for (k, name) in ["rsne", "strong", "weak", "auction"].iter().enumerate() {
            if got[k] != want[k] {
                rep.failures.push(format!("{tag}: {name}-check {} != scan {} on {c:?}", got[k], want[k]));
            }
        }
    }
    let mins = inst.agents.min_salaries();
    for _ in 0..3 {
        let profile: Vec<i64> = mins.iter().map(|&m| rng.gen_range(m..=inst.budget.max(m))).collect();
        rep.scanned_profiles += 1;
        let got = sne_check(inst, &profile)?;
        if got != space.sne(&profile) {
            rep.failures.push(format!("{tag}: sne-check {got} != scan on {profile:?}"));
        }
    }
    let graph = build_endangerment_graph(inst, inst.budget)?;
    rep.graphs += 1;
    if !graph.explicit_acyclic() {
        rep.failures.push(format!("{tag}: explicit endangerment has a cycle"));
    }
    let sinks: Vec<&Coalition<i64>> = graph.sinks();
    let rsne: Vec<&Coalition<i64>> = space.profiles.iter().filter(|p| rsne_check(inst, p).unwrap_or(false)).collect();
    if sinks != rsne {
        rep.failures.push(format!("{tag}: {} sinks vs {} unendangered profiles", sinks.len(), rsne.len()));
    }
    Ok(())
}

/// Auction terminates within the budget's number of rounds and its winner
/// passes the auction check.
pub fn check_auction(inst: &Instance, rep: &mut Report, tag: &str) -> Result<()> {
    let Some(trace) = auction_run(inst) else {
        if ffc(inst, &FfcQuery::<i64>::new(inst)).is_some() {
            rep.failures.push(format!("{tag}: auction found nothing on a feasible instance"));
        }
        return Ok(());
    };
    rep.auctions += 1;
    if trace.rounds.len() as i64 > inst.budget.max(1) {
        rep.failures.push(format!("{tag}: auction took {} rounds", trace.rounds.len()));
    }
    if trace.rounds.windows(2).any(|w| w[1].asking >= w[0].asking) {
        rep.failures.push(format!("{tag}: asking prices did not decrease"));
    }
    if !auction_winning_check(inst, trace.winner())? {
        rep.failures.push(format!("{tag}: auction winner fails the auction check"));
    }
    Ok(())
}

/// Runs every equivalence suite over the seeded corpus. Definitional scans
/// are limited to instances within [`SCAN_AGENTS`] and [`SCAN_BUDGET`].
pub fn verify_corpus(cfg: &CorpusConfig) -> Report {
    (0..cfg.count)
        .into_par_iter()
        .map(|k| {
            let mut rng = rng_for(cfg.seed, k);
            let inst = random_instance(&mut rng, cfg.n_max, cfg.v_max);
            let tag = format!("instance {k}");
            let mut rep = Report { instances: 1, ..Report::default() };
            check_ffc(&inst, &mut rng, &mut rep, &tag);
            let mut run = || -> Result<()> {
                check_auction(&inst, &mut rep, &tag)?;
                if inst.n() <= SCAN_AGENTS && inst.budget <= SCAN_BUDGET {
                    check_scans(&inst, &mut rng, &mut rep, &tag)?;
                }
                Ok(())
            };
            if let Err(e) = run() {
                rep.failures.push(format!("{tag}: {e}"));
            }
            rep
        })
        .reduce(Report::default, Report::merge)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_reproducible() {
        let cfg = CorpusConfig { seed: 7, count: 20, n_max: 4, v_max: 8 };
        assert_eq!(corpus(&cfg), corpus(&cfg));
    }

    #[test]
    fn small_verify_passes() {
        let rep = verify_corpus(&CorpusConfig { seed: 11, count: 30, n_max: 4, v_max: 8 });
        assert!(rep.passed(), "{:#?}", rep.failures);
    }
}
