//! Command-line front end. Every subcommand prints deterministic text and
//! exits 0 on success, 1 on a `none`/`false` answer and 2 on errors.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::centralized::{fcfc, sne_check, sne_find, sne_find_exhaustive, sne_find_rational, winning_coalition};
use crate::corpus::{seed_from_env, verify_corpus, CorpusConfig};
use crate::decentralized::{
    build_endangerment_graph, rsne_check, rsne_find, rsne_find_rational, strongly_winning_check,
    weakly_winning_check, weakly_winning_find, weakly_winning_find_rational,
};
use crate::error::{Error, Result};
use crate::format::{emit_instance, parse_instance};
use crate::instance::{Fixture, Instance};
use crate::mechanisms::{auction_run, auction_winning_check, find_vstar};
use crate::model::{
    format_coalition, format_money_list, parse_coalition, AgentId, AgentSet, Coalition, Money,
    NumericMode, Rational, SalaryModel,
};
use crate::oracle::{ffc, FfcQuery, OracleSpec};
use crate::scheduling::{
    dp_two_agents, exhaustive_solve, ffcsm_solve, generate_hard_instance, ip_build, ip_solve,
    Assignment, HardKind, SchedulingInstance, SourceInstance,
};

#[derive(Parser, Debug)]
#[command(name = "coalauct", version, about = "Exact solvers for coalitional auctions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct InstanceArg {
    /// Instance file (line format or JSON).
    file: String,
}

#[derive(Args, Debug)]
struct CoalitionArg {
    #[command(flatten)]
    inst: InstanceArg,
    /// Fixture name, or an inline `members=[..] salaries=[..] cost=..` line.
    #[arg(long)]
    coalition: String,
}

#[derive(Args, Debug)]
struct ProfileArg {
    #[command(flatten)]
    inst: InstanceArg,
    /// Fixture name, or comma-separated asks in agent order.
    #[arg(long)]
    profile: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cheapest feasible coalition under optional overrides.
    Ffc {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long)]
        budget: Option<String>,
        /// Comma-separated agent ids to leave out.
        #[arg(long)]
        exclude: Option<String>,
        /// Comma-separated `id=salary` minimal salary overrides.
        #[arg(long)]
        pin: Option<String>,
    },
    /// Cheapest feasible coalition with tie-breaking.
    Fcfc(InstanceArg),
    /// The coalition hired at a salary profile.
    Winner(ProfileArg),
    /// A strong Nash equilibrium of the asking game.
    SneFind {
        #[command(flatten)]
        inst: InstanceArg,
        /// Search the whole salary box instead of the pruned space.
        #[arg(long)]
        exhaustive: bool,
    },
    SneCheck(ProfileArg),
    /// A coalition no rival endangers.
    RsneFind(InstanceArg),
    RsneCheck(CoalitionArg),
    StrongCheck(CoalitionArg),
    WeakFind(InstanceArg),
    WeakCheck(CoalitionArg),
    /// Descending-price auction, one line per round.
    AuctionRun(InstanceArg),
    AuctionCheck(CoalitionArg),
    /// Least budget admitting a feasible coalition.
    Vstar(InstanceArg),
    /// Endangerment graph over profiles with salaries up to the cap.
    Graph {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long)]
        cap: i64,
    },
    /// Solve a scheduling instance directly.
    SchedSolve {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long, value_enum, default_value_t = Method::Bnb)]
        method: Method,
    },
    /// Build a scheduling instance from a hard combinatorial problem.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        /// Comma-separated numbers (partition) or item sizes (bin packing).
        #[arg(long)]
        numbers: Option<String>,
        /// Element count of the set system.
        #[arg(long)]
        elements: Option<usize>,
        /// Sets as `0 1 2;3 4 5`, elements numbered from 0.
        #[arg(long)]
        sets: Option<String>,
        #[arg(long)]
        bins: Option<usize>,
        #[arg(long)]
        capacity: Option<u64>,
        #[arg(long, value_enum, default_value_t = ModelArg::Project)]
        model: ModelArg,
    },
    /// Randomized equivalence suites over a seeded corpus.
    VerifyCorpus {
        /// Defaults to COALAUCT_SEED, then a fixed seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 8)]
        v_max: i64,
        #[arg(long, default_value_t = 500)]
        count: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Bnb,
    Ip,
    Exhaustive,
    Dp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    Partition,
    X3c,
    FfchsX3c,
    BinPacking,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    Project,
    Hourly,
}

struct Out {
    code: i32,
    text: String,
}

impl Out {
    fn ok(text: String) -> Out {
        Out { code: 0, text }
    }

    fn none() -> Out {
        Out { code: 1, text: "none\n".into() }
    }

    fn verdict(b: bool) -> Out {
        Out { code: if b { 0 } else { 1 }, text: format!("{b}\n") }
    }
}

/// Runs one command line (without the program name) and returns the exit
/// code, standard output and standard error.
pub fn run_command<S: AsRef<str>>(argv: &[S]) -> (i32, String, String) {
    let args = std::iter::once("coalauct").chain(argv.iter().map(|s| s.as_ref()));
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (2, String::new(), text) };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => (out.code, out.text, String::new()),
        Err(e) => (2, String::new(), format!("error: {e}\n")),
    }
}

fn load(arg: &InstanceArg) -> Result<Instance> {
    let text = std::fs::read_to_string(&arg.file)
        .map_err(|e| Error::InvalidInstance(format!("cannot read `{}`: {e}", arg.file)))?;
    parse_instance(&text)
}

fn is_rational(inst: &Instance) -> bool {
    inst.numeric == NumericMode::Rational
}

fn coalition_arg<M: Money>(inst: &Instance, spec: &str) -> Result<Coalition<M>> {
    if spec.contains('=') {
        parse_coalition(&inst.agents, inst.model, spec)
    } else {
        inst.coalition_fixture(spec)
    }
}

fn profile_arg<M: Money>(inst: &Instance, spec: &str) -> Result<Vec<M>> {
    if matches!(inst.fixture(spec), Some(Fixture::Profile { .. })) {
        return inst.profile_fixture(spec);
    }
    let bad = || Error::InvalidInstance(format!("`{spec}` is neither a profile fixture nor a salary list"));
    let vals = spec
        .split(',')
        .map(|s| M::parse_money(s.trim()).ok_or_else(bad))
        .collect::<Result<Vec<M>>>()?;
    inst.check_profile(&vals)?;
    Ok(vals)
}

fn ids_arg(inst: &Instance, spec: &str) -> Result<AgentSet> {
    let mut set = AgentSet::EMPTY;
    for part in spec.split(',').filter(|s| !s.trim().is_empty()) {
        set = set.with(label_arg(inst, part)?);
    }
    Ok(set)
}

fn label_arg(inst: &Instance, s: &str) -> Result<AgentId> {
    s.trim()
        .parse::<u32>()
        .ok()
        .and_then(|l| inst.agents.id_of(l))
        .ok_or_else(|| Error::InvalidInstance(format!("unknown agent `{s}`")))
}

fn show<M: Money>(inst: &Instance, c: Option<Coalition<M>>) -> Out {
    match c {
        Some(c) => Out::ok(format!("{}\n", format_coalition(&inst.agents, &c))),
        None => Out::none(),
    }
}

fn ffc_cmd<M: Money>(inst: &Instance, budget: Option<&str>, exclude: Option<&str>, pin: Option<&str>) -> Result<Out> {
    let mut q = FfcQuery::<M>::new(inst);
    if let Some(b) = budget {
        q = q.with_budget(M::parse_money(b).ok_or_else(|| Error::InvalidInstance(format!("bad budget `{b}`")))?);
    }
    if let Some(e) = exclude {
        q = q.exclude(ids_arg(inst, e)?);
    }
    for part in pin.unwrap_or("").split(',').filter(|s| !s.trim().is_empty()) {
        let (id, val) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidInstance(format!("pin `{part}` is not id=salary")))?;
        let id = label_arg(inst, id)?;
        let val = M::parse_money(val.trim()).ok_or_else(|| Error::InvalidInstance(format!("bad salary `{val}`")))?;
        if val < M::from_int(inst.agents.min_salary(id)) {
            return Err(Error::SalaryBelowMinimum { agent: inst.agents.label(id) });
        }
        q = q.pin(id, val);
    }
    Ok(show(inst, ffc(inst, &q)))
}

fn check_cmd<M: Money>(inst: &Instance, spec: &str, which: &str) -> Result<Out> {
    let c = coalition_arg::<M>(inst, spec)?;
    let b = match which {
        "rsne" => rsne_check(inst, &c)?,
        "strong" => strongly_winning_check(inst, &c)?,
        "weak" => weakly_winning_check(inst, &c)?,
        _ => auction_winning_check(inst, &c)?,
    };
    Ok(Out::verdict(b))
}

fn scheduling_of(inst: &Instance) -> Result<SchedulingInstance<i64>> {
    match &inst.oracle {
        OracleSpec::Scheduling(sys) => Ok(SchedulingInstance {
            system: sys.clone(),
            min_salaries: inst.agents.min_salaries().to_vec(),
            budget: inst.budget,
            model: inst.model,
        }),
        other => Err(Error::Unsupported(format!("sched-solve needs a sched oracle, found {}", other.kind()))),
    }
}

fn show_assignment(inst: &Instance, s: &SchedulingInstance<i64>, a: &Assignment) -> String {
    let members: Vec<String> = a.members().iter().map(|m| inst.agents.label(m).to_string()).collect();
    let tasks: Vec<String> = a.0.iter().map(|m| inst.agents.label(*m).to_string()).collect();
    let loads = a.loads(&s.system);
    let member_loads: Vec<String> = a.members().iter().map(|m| loads[m.0].to_string()).collect();
    format!(
        "members=[{}] assignment=[{}] loads=[{}] cost={}\n",
        members.join(","),
        tasks.join(","),
        member_loads.join(","),
        s.cost_of(a)
    )
}

fn sched_cmd(inst: &Instance, method: Method) -> Result<Out> {
    let s = scheduling_of(inst)?;
    let assignment = match method {
        Method::Bnb => ffcsm_solve(&s).map(|x| x.assignment),
        Method::Exhaustive => exhaustive_solve(&s).map(|x| x.assignment),
        Method::Dp => dp_two_agents(&s)?,
        Method::Ip => ip_solve(&ip_build(&s), s.budget, s.system.deadline).map(|sol| {
            Assignment(
                (0..s.system.tasks())
                    .map(|j| AgentId((0..s.system.agents()).find(|&i| sol.x[i][j]).unwrap()))
                    .collect(),
            )
        }),
    };
    Ok(match assignment {
        Some(a) => Out::ok(show_assignment(inst, &s, &a)),
        None => Out::none(),
    })
}

fn list<T: std::str::FromStr>(spec: Option<&str>, what: &str) -> Result<Vec<T>> {
    let spec = spec.ok_or_else(|| Error::Generator(format!("missing --{what}")))?;
    spec.split(',')
        .map(|s| s.trim().parse().map_err(|_| Error::Generator(format!("bad value `{s}` in --{what}"))))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn gen_cmd(
    kind: GenKind,
    numbers: Option<&str>,
    elements: Option<usize>,
    sets: Option<&str>,
    bins: Option<usize>,
    capacity: Option<u64>,
    model: ModelArg,
) -> Result<Out> {
    let set_system = || -> Result<SourceInstance> {
        let elements = elements.ok_or_else(|| Error::Generator("missing --elements".into()))?;
        let sets = sets
            .ok_or_else(|| Error::Generator("missing --sets".into()))?
            .split(';')
            .map(|s| {
                s.split_whitespace()
                    .map(|x| x.parse().map_err(|_| Error::Generator(format!("bad element `{x}`"))))
                    .collect()
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        Ok(SourceInstance::SetSystem { elements, sets })
    };
    let (hard, source) = match kind {
        GenKind::Partition => (HardKind::Partition, SourceInstance::Numbers(list(numbers, "numbers")?)),
        GenKind::X3c => (HardKind::ExactCover3, set_system()?),
        GenKind::FfchsX3c => (HardKind::FfchsExactCover, set_system()?),
        GenKind::BinPacking => (
            HardKind::UnaryBinPacking,
            SourceInstance::BinPacking {
                sizes: list(numbers, "numbers")?,
                bins: bins.ok_or_else(|| Error::Generator("missing --bins".into()))?,
                capacity: capacity.ok_or_else(|| Error::Generator("missing --capacity".into()))?,
                model: match model {
                    ModelArg::Project => SalaryModel::Project,
                    ModelArg::Hourly => SalaryModel::Hourly,
                },
            },
        ),
    };
    let inst = generate_hard_instance(hard, &source)?.to_instance()?;
    Ok(Out::ok(emit_instance(&inst)))
}

fn dispatch(cmd: Command) -> Result<Out> {
    match cmd {
        Command::Ffc { inst, budget, exclude, pin } => {
            let inst = load(&inst)?;
            let (b, e, p) = (budget.as_deref(), exclude.as_deref(), pin.as_deref());
            if is_rational(&inst) {
                ffc_cmd::<Rational>(&inst, b, e, p)
            } else {
                ffc_cmd::<i64>(&inst, b, e, p)
            }
        }
        Command::Fcfc(a) => {
            let inst = load(&a)?;
            Ok(if is_rational(&inst) { show(&inst, fcfc::<Rational>(&inst)) } else { show(&inst, fcfc::<i64>(&inst)) })
        }
        Command::Winner(p) => {
            let inst = load(&p.inst)?;
            if is_rational(&inst) {
                let prof = profile_arg::<Rational>(&inst, &p.profile)?;
                Ok(show(&inst, winning_coalition(&inst, &prof)?))
            } else {
                let prof = profile_arg::<i64>(&inst, &p.profile)?;
                Ok(show(&inst, winning_coalition(&inst, &prof)?))
            }
        }
        Command::SneFind { inst, exhaustive } => {
            let inst = load(&inst)?;
            if is_rational(&inst) {
                return Ok(match sne_find_rational(&inst)? {
                    Some(r) => Out::ok(format!("profile={}\n", format_money_list(&r.profile))),
                    None => Out::none(),
                });
            }
            let found = if exhaustive { sne_find_exhaustive(&inst)? } else { sne_find(&inst)? };
            Ok(match found {
                Some(p) => Out::ok(format!("profile={}\n", format_money_list(&p))),
                None => Out::none(),
            })
        }
        Command::SneCheck(p) => {
            let inst = load(&p.inst)?;
            let b = if is_rational(&inst) {
                sne_check(&inst, &profile_arg::<Rational>(&inst, &p.profile)?)?
            } else {
                sne_check(&inst, &profile_arg::<i64>(&inst, &p.profile)?)?
            };
            Ok(Out::verdict(b))
        }
        Command::RsneFind(a) => {
            let inst = load(&a)?;
            Ok(if is_rational(&inst) { show(&inst, rsne_find_rational(&inst)?) } else { show(&inst, rsne_find(&inst)?) })
        }
        Command::WeakFind(a) => {
            let inst = load(&a)?;
            Ok(if is_rational(&inst) {
                show(&inst, weakly_winning_find_rational(&inst)?)
            } else {
                show(&inst, weakly_winning_find(&inst)?)
            })
        }
        Command::RsneCheck(c) => checked(c, "rsne"),
        Command::StrongCheck(c) => checked(c, "strong"),
        Command::WeakCheck(c) => checked(c, "weak"),
        Command::AuctionCheck(c) => checked(c, "auction"),
        Command::AuctionRun(a) => {
            let inst = load(&a)?;
            Ok(match auction_run(&inst) {
                Some(trace) => Out::ok(trace.render(&inst)),
                None => Out::none(),
            })
        }
        Command::Vstar(a) => {
            let inst = load(&a)?;
            Ok(match find_vstar(&inst) {
                Some(v) => Out::ok(format!("{v}\n")),
                None => Out { code: 1, text: "infeasible\n".into() },
            })
        }
        Command::Graph { inst, cap } => {
            let inst = load(&inst)?;
            let g = build_endangerment_graph(&inst, cap)?;
            let mut text = g.export(&inst);
            if !g.explicit_acyclic() {
                let _ = writeln!(text, "explicit-cycle");
            }
            Ok(Out::ok(text))
        }
        Command::SchedSolve { inst, method } => sched_cmd(&load(&inst)?, method),
        Command::Gen { kind, numbers, elements, sets, bins, capacity, model } => {
            gen_cmd(kind, numbers.as_deref(), elements, sets.as_deref(), bins, capacity, model)
        }
        Command::VerifyCorpus { seed, n_max, v_max, count } => {
            let cfg = CorpusConfig { seed: seed.unwrap_or_else(seed_from_env), count, n_max, v_max };
            let rep = verify_corpus(&cfg);
            let mut text = String::new();
            for f in &rep.failures {
                let _ = writeln!(text, "FAIL {f}");
            }
            let _ = writeln!(text, "seed={} {}", cfg.seed, rep.summary());
            Ok(Out { code: if rep.passed() { 0 } else { 1 }, text })
        }
    }
}

fn checked(c: CoalitionArg, which: &str) -> Result<Out> {
    let inst = load(&c.inst)?;
    if is_rational(&inst) {
        check_cmd::<Rational>(&inst, &c.coalition, which)
    } else {
        check_cmd::<i64>(&inst, &c.coalition, which)
    }
}
