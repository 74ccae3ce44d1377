//! Acceptance criteria, one pass/fail line each.

use std::time::{Duration, Instant};

use coalauct::centralized::{fcfc, sne_check, sne_find, sne_find_exhaustive, sne_find_rational};
use coalauct::corpus::{
    check_auction, check_ffc, check_scans, corpus, random_instance, random_scheduling, rng_for,
    CorpusConfig, Report,
};
use coalauct::decentralized::{
    build_endangerment_graph, rsne_check, rsne_find, strongly_winning_check, weakly_winning_check,
    weakly_winning_find,
};
use coalauct::format::parse_instance;
use coalauct::mechanisms::{auction_run, find_vstar};
use coalauct::model::{AgentId, Rational};
use coalauct::scheduling::{
    dp_two_agents, exhaustive_solve, ffcsm_solve, generate_hard_instance, ip_build, ip_solve,
    HardKind, SourceInstance,
};
use coalauct::{Instance, SalaryModel};
use rand::Rng;

const SEED: u64 = 20_231_107;

fn fixture(name: &str) -> Instance {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    parse_instance(&std::fs::read_to_string(path).unwrap()).unwrap()
}

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn within(t: Instant, limit: Duration) -> (bool, String) {
    let e = t.elapsed();
    (e <= limit, format!("{:.3}s of {:.0}s", e.as_secs_f64(), limit.as_secs_f64()))
}

fn e1_criterion() -> Outcome {
    let t = Instant::now();
    let inst = fixture("E1.inst");
    let rsne_none = rsne_find(&inst).unwrap().is_none();
    let weak = weakly_winning_find(&inst).unwrap();
    let weak_ok = weak.as_ref().is_some_and(|c| weakly_winning_check(&inst, c).unwrap());
    let sne = sne_find(&inst).unwrap();
    let mut sne_ok = false;
    if let Some(p) = &sne {
        let w = coalauct::centralized::winning_coalition(&inst, p).unwrap().unwrap();
        let payoffs: Vec<i64> = w.members.iter().map(|m| p[m.0]).collect();
        sne_ok = w.members == vec![AgentId(0), AgentId(1)]
            && payoffs == vec![2, 2]
            && sne_check(&inst, p).unwrap()
            && w.members.iter().all(|m| {
                let mut q = p.clone();
                q[m.0] += 1;
                !sne_check(&inst, &q).unwrap()
            });
    }
    let (fast, time) = within(t, Duration::from_secs(1));
    outcome(
        rsne_none && weak_ok && sne_ok && fast,
        format!("rsne-find none={rsne_none} weak-find={weak:?} sne-find={sne:?} {time}"),
    )
}

fn e2_criterion() -> Outcome {
    let inst = fixture("E2.inst");
    let t = Instant::now();
    let full = sne_find_exhaustive(&inst).unwrap();
    let (full_fast, full_time) = within(t, Duration::from_secs(120));
    let t = Instant::now();
    let pruned = sne_find(&inst).unwrap();
    let (pruned_fast, pruned_time) = within(t, Duration::from_secs(5));
    outcome(
        full.is_none() && pruned.is_none() && full_fast && pruned_fast,
        format!("full box {full:?} in {full_time}; pruned {pruned:?} in {pruned_time}"),
    )
}

fn e3_criterion() -> Outcome {
    let t = Instant::now();
    let inst = fixture("E3.inst");
    let top = fcfc::<i64>(&inst).unwrap();
    let bc = inst.coalition_fixture::<i64>("bc").unwrap();
    let rsne = rsne_check(&inst, &bc).unwrap();
    let ok = top.members == vec![AgentId(0), AgentId(1)] && top.cost == 20 && rsne && bc.members != top.members;
    let (fast, time) = within(t, Duration::from_secs(1));
    outcome(ok && fast, format!("fcfc cost {} members {:?}; rsne-check(bc)={rsne} {time}", top.cost, top.members))
}

fn vstar_criterion() -> Outcome {
    let t = Instant::now();
    let inst = fixture("E1.inst");
    let v = find_vstar(&inst);
    let strong = v.is_some_and(|v| {
        let tight = inst.with_budget(v);
        let c = fcfc::<i64>(&tight).unwrap();
        strongly_winning_check(&tight, &c).unwrap()
    });
    let (fast, time) = within(t, Duration::from_secs(1));
    outcome(v == Some(4) && strong && fast, format!("vstar={v:?} strong-check at vstar={strong} {time}"))
}

fn equivalence_criterion() -> Outcome {
    let t = Instant::now();
    let reports: Vec<Report> = (0..500)
        .map(|k| {
            let mut rng = rng_for(SEED, k);
            let inst = random_instance(&mut rng, 6, 20);
            let mut rep = Report::default();
            check_ffc(&inst, &mut rng, &mut rep, &format!("ffc corpus {k}"));
            rep
        })
        .chain((0..500).map(|k| {
            let mut rng = rng_for(SEED + 1, k);
            let inst = random_instance(&mut rng, 4, 8);
            let mut rep = Report::default();
            if let Err(e) = check_scans(&inst, &mut rng, &mut rep, &format!("scan corpus {k}")) {
                rep.failures.push(e.to_string());
            }
            rep
        }))
        .collect();
    let queries: usize = reports.iter().map(|r| r.ffc_queries).sum();
    let scanned: usize = reports.iter().map(|r| r.scanned_coalitions).sum();
    let failures: Vec<&String> = reports.iter().flat_map(|r| &r.failures).collect();
    let (fast, time) = within(t, Duration::from_secs(120));
    outcome(
        failures.is_empty() && fast,
        format!("{queries} ffc queries, {scanned} coalitions scanned, {} mismatches {time} {:?}", failures.len(), failures.first()),
    )
}

fn auction_criterion() -> Outcome {
    let cfg = CorpusConfig { seed: SEED, count: 500, n_max: 6, v_max: 20 };
    let instances = corpus(&cfg);
    let mut rep = Report::default();
    for (k, inst) in instances.iter().enumerate() {
        check_auction(inst, &mut rep, &format!("instance {k}")).unwrap();
    }
    let render = |threads: usize| -> Vec<String> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            use rayon::prelude::*;
            instances
                .par_iter()
                .map(|i| auction_run(i).map(|t| t.render(i)).unwrap_or_default())
                .collect()
        })
    };
    let stable = render(1) == render(1) && render(1) == render(4);
    outcome(
        rep.failures.is_empty() && stable,
        format!("{} auctions, {} failures, traces stable={stable}", rep.auctions, rep.failures.len()),
    )
}

/// Subset sum to half the total.
fn partition_exists(nums: &[u64]) -> bool {
    let total: u64 = nums.iter().sum();
    total.is_multiple_of(2) && (0u32..1 << nums.len()).any(|m| {
        nums.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, x)| x).sum::<u64>() * 2 == total
    })
}

fn exact_cover_exists(elements: usize, sets: &[Vec<usize>]) -> bool {
    (0u32..1 << sets.len()).any(|m| {
        let mut hit = vec![0; elements];
        for (i, s) in sets.iter().enumerate() {
            if m >> i & 1 == 1 {
                for &e in s {
                    hit[e] += 1;
                }
            }
        }
        hit.iter().all(|&h| h == 1)
    })
}

fn packing_exists(sizes: &[u64], bins: usize, capacity: u64) -> bool {
    fn go(sizes: &[u64], k: usize, load: &mut Vec<u64>, cap: u64) -> bool {
        if k == sizes.len() {
            return true;
        }
        for b in 0..load.len() {
            if load[b] + sizes[k] <= cap {
                load[b] += sizes[k];
                if go(sizes, k + 1, load, cap) {
                    return true;
                }
                load[b] -= sizes[k];
            }
        }
        false
    }
    go(sizes, 0, &mut vec![0; bins], capacity)
}

fn scheduling_criterion() -> Outcome {
    let t = Instant::now();
    let mut mismatches = Vec::new();
    let mut dp_cases = 0;
    for k in 0..200 {
        let mut rng = rng_for(SEED + 2, k);
        let s = random_scheduling(&mut rng, 4, 6, 8);
        let bnb = ffcsm_solve(&s).map(|x| x.cost);
        let brute = exhaustive_solve(&s).map(|x| x.cost);
        let ip = ip_solve(&ip_build(&s), s.budget, s.system.deadline).map(|x| x.cost);
        if bnb != brute || ip != brute {
            mismatches.push(format!("instance {k}: bnb {bnb:?} ip {ip:?} exhaustive {brute:?}"));
        }
        if s.system.agents() == 2 {
            dp_cases += 1;
            let dp = dp_two_agents(&s).unwrap();
            let valid = dp.as_ref().is_none_or(|a| a.is_valid(&s.system) && s.cost_of(a) <= s.budget);
            if dp.is_some() != brute.is_some() || !valid {
                mismatches.push(format!("instance {k}: dp {dp:?} exhaustive {brute:?}"));
            }
        }
    }

    let mut sources = 0;
    let mut rng = rng_for(SEED + 3, 0);
    for _ in 0..17 {
        let nums: Vec<u64> = (0..rng.gen_range(2..=6)).map(|_| rng.gen_range(1..=6)).collect();
        if nums.iter().sum::<u64>() % 2 == 1 {
            continue;
        }
        sources += 1;
        let s = generate_hard_instance(HardKind::Partition, &SourceInstance::Numbers(nums.clone())).unwrap();
        if ffcsm_solve(&s).is_some() != partition_exists(&nums) {
            mismatches.push(format!("partition {nums:?}"));
        }
    }
    for _ in 0..17 {
        let elements = if rng.gen_bool(0.5) { 3 } else { 6 };
        let mut sets: Vec<Vec<usize>> = Vec::new();
        let mut uses = vec![0; elements];
        for _ in 0..rng.gen_range(1..=5) {
            let mut s: Vec<usize> = (0..elements).collect();
            rand::seq::SliceRandom::shuffle(&mut s[..], &mut rng);
            s.truncate(3);
            s.sort_unstable();
            if s.iter().all(|&e| uses[e] < 3) {
                s.iter().for_each(|&e| uses[e] += 1);
                sets.push(s);
            }
        }
        sources += 1;
        let src = SourceInstance::SetSystem { elements, sets: sets.clone() };
        let s = generate_hard_instance(HardKind::ExactCover3, &src).unwrap();
        let sol = ffcsm_solve(&s);
        let yes = exact_cover_exists(elements, &sets);
        if sol.is_some() != yes || sol.is_some_and(|x| x.members.len() != elements / 3) {
            mismatches.push(format!("exact cover {sets:?}"));
        }
    }
    for _ in 0..16 {
        let sizes: Vec<u64> = (0..rng.gen_range(1..=5)).map(|_| rng.gen_range(1..=5)).collect();
        let bins = rng.gen_range(1..=3);
        let capacity = rng.gen_range(3..=8);
        let model = if rng.gen_bool(0.5) { SalaryModel::Project } else { SalaryModel::Hourly };
        sources += 1;
        let src = SourceInstance::BinPacking { sizes: sizes.clone(), bins, capacity, model };
        let s = generate_hard_instance(HardKind::UnaryBinPacking, &src).unwrap();
        if ffcsm_solve(&s).is_some() != packing_exists(&sizes, bins, capacity) {
            mismatches.push(format!("bin packing {sizes:?} into {bins}x{capacity}"));
        }
    }
    let (fast, time) = within(t, Duration::from_secs(120));
    outcome(
        mismatches.is_empty() && sources >= 40 && fast,
        format!("200 instances ({dp_cases} two-agent), {sources} generator sources, {} mismatches {time} {:?}", mismatches.len(), mismatches.first()),
    )
}

fn graph_criterion() -> Outcome {
    let inst = fixture("E1.inst");
    let g = build_endangerment_graph(&inst, 5).unwrap();
    let e1_ok = g.sinks().is_empty() && g.explicit_acyclic();
    let mut bad = 0;
    let mut graphs = 0;
    for k in 0..200 {
        let inst = random_instance(&mut rng_for(SEED + 4, k), 4, 8);
        let g = build_endangerment_graph(&inst, inst.budget).unwrap();
        graphs += 1;
        let sinks: Vec<_> = g.sinks().into_iter().cloned().collect();
        let fixpoints: Vec<_> = g
            .graph
            .node_weights()
            .filter(|c| rsne_check(&inst, c).unwrap())
            .cloned()
            .collect();
        if sinks != fixpoints || !g.explicit_acyclic() {
            bad += 1;
        }
    }
    outcome(
        e1_ok && bad == 0,
        format!("E1: {} vertices, {} sinks; {graphs} corpus graphs, {bad} mismatches", g.vertex_count(), g.sinks().len()),
    )
}

fn rational_criterion() -> Outcome {
    let inst = fixture("E1.inst");
    let r = sne_find_rational(&inst).unwrap();
    let Some(r) = r else { return outcome(false, "no rational equilibrium") };
    let point: Vec<Rational> = vec![r.profile[0].clone(), r.profile[1].clone()];
    let two = Rational::from_integer(2.into());
    let exact = r.system.satisfied_by(&point);
    outcome(
        r.rounds <= 3 && point == vec![two.clone(), two] && exact,
        format!("rounds={} point={:?} exact={exact}", r.rounds, point.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 E1 equilibria", e1_criterion),
        ("2 E2 has no strong equilibrium", e2_criterion),
        ("3 E3 budget-exhausting stable coalition", e3_criterion),
        ("4 least budget on E1", vstar_criterion),
        ("5 oracle and check equivalence", equivalence_criterion),
        ("6 auction soundness", auction_criterion),
        ("7 scheduling solvers and generators", scheduling_criterion),
        ("8 endangerment graph", graph_criterion),
        ("9 rational separation on E1", rational_criterion),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let o = run();
        println!("[{}] criterion {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        if !o.ok {
            failed.push(name);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
