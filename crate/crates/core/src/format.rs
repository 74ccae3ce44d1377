//! Instance files: a line-oriented format with one datum per line, and a JSON
//! encoding of the same content. Output is always the canonical line form.
//!
//! ```text
//! format 1
//! model project
//! numeric int
//! budget 5
//! agent 1 2
//! agent 2 2
//! oracle commodity
//! items x y
//! owns 1 x y
//! owns 2 x y
//! coalition c members 1 salaries 3
//! profile p 2 2
//! ```

use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::instance::{Fixture, Instance};
use crate::model::{
    format_rational, parse_rational, AgentId, AgentSet, AgentTable, NumericMode, Rational,
    SalaryModel, Time,
};
use crate::oracle::{CommodityOracle, OracleSpec, PathOracle, PredicateEntry, PredicateOracle};
use crate::scheduling::{Skill, TaskSystem};

const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy)]
struct Tok<'a> {
    line: usize,
    col: usize,
    text: &'a str,
}

impl Tok<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, column: self.col, message: message.into() }
    }

    fn int<T: std::str::FromStr>(&self, what: &str) -> Result<T> {
        self.text.parse().map_err(|_| self.err(format!("expected {what}, found `{}`", self.text)))
    }

    fn rational(&self) -> Result<Rational> {
        parse_rational(self.text).ok_or_else(|| self.err(format!("expected a number, found `{}`", self.text)))
    }
}

fn tokenize(line_no: usize, line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Tok { line: line_no, col: s + 1, text: &line[s..i] });
                start = None;
            }
            _ => {}
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Commodity,
    Path,
    Predicate,
    Sched,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Commodity => "commodity",
            Kind::Path => "path",
            Kind::Predicate => "predicate",
            Kind::Sched => "sched",
        }
    }
}

#[derive(Default)]
struct Draft<'a> {
    format: Option<u32>,
    model: Option<SalaryModel>,
    numeric: Option<NumericMode>,
    budget: Option<i64>,
    agents: Vec<(Tok<'a>, u32, i64)>,
    oracle: Option<(Tok<'a>, Kind)>,
    items: Option<(Tok<'a>, Vec<Tok<'a>>)>,
    owns: Vec<(Tok<'a>, u32, Vec<Tok<'a>>)>,
    edges: Vec<(Tok<'a>, Tok<'a>)>,
    source: Option<Tok<'a>>,
    target: Option<Tok<'a>>,
    at: Vec<(Tok<'a>, u32, Tok<'a>)>,
    feasible: Vec<(Tok<'a>, Vec<u32>, Option<Vec<Time>>)>,
    deadline: Option<Time>,
    skills: Vec<(Tok<'a>, u32, u32, Skill)>,
    fixtures: Vec<(Tok<'a>, RawFixture)>,
}

enum RawFixture {
    Coalition { name: String, members: Vec<(Tok<'static>, u32)>, salaries: Vec<Rational>, schedule: Option<Vec<Time>> },
    Profile { name: String, salaries: Vec<Rational> },
}

fn set_once<T>(slot: &mut Option<T>, value: T, key: &Tok) -> Result<()> {
    if slot.is_some() {
        return Err(key.err(format!("duplicate `{}` line", key.text)));
    }
    *slot = Some(value);
    Ok(())
}

fn arity(key: &Tok, rest: &[Tok], n: usize) -> Result<()> {
    if rest.len() != n {
        let at = rest.get(n).unwrap_or(key);
        return Err(at.err(format!("`{}` takes {n} value(s), found {}", key.text, rest.len())));
    }
    Ok(())
}

fn need_oracle(d: &Draft, key: &Tok, kind: Kind) -> Result<()> {
    match d.oracle {
        Some((_, k)) if k == kind => Ok(()),
        Some((_, k)) => Err(key.err(format!("`{}` does not belong to a {} oracle", key.text, k.name()))),
        None => Err(key.err(format!("`{}` before any `oracle` line", key.text))),
    }
}

/// Position-free token for values that outlive the input borrow.
fn owned_tok(t: &Tok) -> Tok<'static> {
    Tok { line: t.line, col: t.col, text: "" }
}

/// Parses either encoding; JSON is recognized by a leading `{`.
pub fn parse_instance(text: &str) -> Result<Instance> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_lines(text)
    }
}

pub fn parse_lines(text: &str) -> Result<Instance> {
    let mut d = Draft::default();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokenize(k + 1, line);
        let Some((key, rest)) = toks.split_first() else { continue };
        parse_line(&mut d, key, rest)?;
    }
    build(d, text.lines().count().max(1))
}

fn parse_line<'a>(d: &mut Draft<'a>, key: &Tok<'a>, rest: &[Tok<'a>]) -> Result<()> {
    match key.text {
        "format" => {
            arity(key, rest, 1)?;
            let v: u32 = rest[0].int("a format version")?;
            if v != FORMAT_VERSION {
                return Err(rest[0].err(format!("unsupported format version {v}")));
            }
            set_once(&mut d.format, v, key)
        }
        "model" => {
            arity(key, rest, 1)?;
            let m = match rest[0].text {
                "project" => SalaryModel::Project,
                "hourly" => SalaryModel::Hourly,
                other => return Err(rest[0].err(format!("unknown salary model `{other}`"))),
            };
            set_once(&mut d.model, m, key)
        }
        "numeric" => {
            arity(key, rest, 1)?;
            let m = match rest[0].text {
                "int" => NumericMode::Integer,
                "rat" => NumericMode::Rational,
                other => return Err(rest[0].err(format!("unknown numeric mode `{other}`"))),
            };
            set_once(&mut d.numeric, m, key)
        }
        "budget" => {
            arity(key, rest, 1)?;
            let b: i64 = rest[0].int("an integer budget")?;
            if b < 0 {
                return Err(rest[0].err("budget must be non-negative"));
            }
            set_once(&mut d.budget, b, key)
        }
        "agent" => {
            arity(key, rest, 2)?;
            let id: u32 = rest[0].int("an agent id")?;
            let min: i64 = rest[1].int("an integer minimal salary")?;
            if min <= 0 {
                return Err(rest[1].err(format!("agent {id}: min_salary must be positive")));
            }
            if d.agents.iter().any(|(_, a, _)| *a == id) {
                return Err(rest[0].err(format!("agent {id} listed twice")));
            }
            d.agents.push((*key, id, min));
            Ok(())
        }
        "oracle" => {
            arity(key, rest, 1)?;
            let kind = match rest[0].text {
                "commodity" => Kind::Commodity,
                "path" => Kind::Path,
                "predicate" => Kind::Predicate,
                "sched" => Kind::Sched,
                other => return Err(rest[0].err(format!("unknown oracle `{other}`"))),
            };
            set_once(&mut d.oracle, (*key, kind), key)
        }
        "items" => {
            need_oracle(d, key, Kind::Commodity)?;
            if rest.is_empty() {
                return Err(key.err("`items` needs at least one name"));
            }
            set_once(&mut d.items, (*key, rest.to_vec()), key)
        }
        "owns" => {
            need_oracle(d, key, Kind::Commodity)?;
            let Some((id, names)) = rest.split_first() else { return Err(key.err("`owns` needs an agent id")) };
            d.owns.push((*key, id.int("an agent id")?, names.to_vec()));
            Ok(())
        }
        "edge" => {
            need_oracle(d, key, Kind::Path)?;
            arity(key, rest, 2)?;
            d.edges.push((rest[0], rest[1]));
            Ok(())
        }
        "terminal" => {
            need_oracle(d, key, Kind::Path)?;
            arity(key, rest, 2)?;
            match rest[0].text {
                "s" => set_once(&mut d.source, rest[1], key),
                "t" => set_once(&mut d.target, rest[1], key),
                other => Err(rest[0].err(format!("terminal must be `s` or `t`, found `{other}`"))),
            }
        }
        "at" => {
            need_oracle(d, key, Kind::Path)?;
            arity(key, rest, 2)?;
            d.at.push((*key, rest[0].int("an agent id")?, rest[1]));
            Ok(())
        }
        "feasible" => {
            need_oracle(d, key, Kind::Predicate)?;
            let split = rest.iter().position(|t| t.text == "times").unwrap_or(rest.len());
            let ids = rest[..split].iter().map(|t| t.int("an agent id")).collect::<Result<Vec<u32>>>()?;
            if ids.is_empty() {
                return Err(key.err("`feasible` needs at least one agent"));
            }
            let times = if split < rest.len() {
                let ts = rest[split + 1..].iter().map(|t| t.int("a positive time")).collect::<Result<Vec<Time>>>()?;
                if ts.len() != ids.len() {
                    return Err(rest[split].err("one time per listed agent required"));
                }
                Some(ts)
            } else {
                None
            };
            d.feasible.push((*key, ids, times));
            Ok(())
        }
        "deadline" => {
            need_oracle(d, key, Kind::Sched)?;
            arity(key, rest, 1)?;
            set_once(&mut d.deadline, rest[0].int("a positive deadline")?, key)
        }
        "skill" => {
            need_oracle(d, key, Kind::Sched)?;
            arity(key, rest, 3)?;
            let skill = match rest[2].text {
                "inf" => Skill::Infinite,
                _ => {
                    let t: Time = rest[2].int("a time or `inf`")?;
                    if t == 0 {
                        return Err(rest[2].err("skill times must be positive"));
                    }
                    Skill::Finite(t)
                }
            };
            d.skills.push((*key, rest[0].int("an agent id")?, rest[1].int("a task id")?, skill));
            Ok(())
        }
        "coalition" => {
            let Some((name, body)) = rest.split_first() else { return Err(key.err("`coalition` needs a name")) };
            let mut section = "";
            let (mut members, mut salaries, mut schedule) = (Vec::new(), Vec::new(), None::<Vec<Time>>);
            for t in body {
                match t.text {
                    "members" | "salaries" | "schedule" => {
                        section = t.text;
                        if section == "schedule" {
                            schedule = Some(Vec::new());
                        }
                    }
                    _ => match section {
                        "members" => members.push((owned_tok(t), t.int("an agent id")?)),
                        "salaries" => salaries.push(t.rational()?),
                        "schedule" => schedule.as_mut().unwrap().push(t.int("a positive time")?),
                        _ => return Err(t.err("expected `members`")),
                    },
                }
            }
            if members.len() != salaries.len() {
                return Err(key.err(format!("coalition `{}`: one salary per member required", name.text)));
            }
            let fx = RawFixture::Coalition { name: name.text.to_string(), members, salaries, schedule };
            d.fixtures.push((*key, fx));
            Ok(())
        }
        "profile" => {
            let Some((name, vals)) = rest.split_first() else { return Err(key.err("`profile` needs a name")) };
            let salaries = vals.iter().map(Tok::rational).collect::<Result<Vec<_>>>()?;
            d.fixtures.push((*key, RawFixture::Profile { name: name.text.to_string(), salaries }));
            Ok(())
        }
        other => Err(key.err(format!("unknown key `{other}`"))),
    }
}

fn build(d: Draft, last_line: usize) -> Result<Instance> {
    let eof = Tok { line: last_line, col: 1, text: "" };
    let missing = |what: &str| eof.err(format!("missing `{what}` line"));
    d.format.ok_or_else(|| missing("format"))?;
    let model = d.model.ok_or_else(|| missing("model"))?;
    let numeric = d.numeric.unwrap_or(NumericMode::Integer);
    let budget = d.budget.ok_or_else(|| missing("budget"))?;
    if d.agents.is_empty() {
        return Err(missing("agent"));
    }
    let mut agents = d.agents.clone();
    agents.sort_by_key(|a| a.1);
    let table = AgentTable::new(agents.iter().map(|a| a.1).collect(), agents.iter().map(|a| a.2).collect())?;
    let n = table.len();
    let id_of = |t: &Tok, label: u32| {
        table.id_of(label).ok_or_else(|| t.err(format!("unknown agent {label}")))
    };
    let (okey, kind) = d.oracle.ok_or_else(|| missing("oracle"))?;

    let oracle = match kind {
        Kind::Commodity => {
            let (_, names) = d.items.as_ref().ok_or_else(|| okey.err("commodity oracle needs an `items` line"))?;
            let items: Vec<String> = names.iter().map(|t| t.text.to_string()).collect();
            let distinct: BTreeSet<&String> = items.iter().collect();
            if distinct.len() != items.len() {
                return Err(names[0].err("item names must be distinct"));
            }
            let mut ownership = vec![Vec::new(); n];
            let mut seen = BTreeSet::new();
            for (key, label, owned) in &d.owns {
                let id = id_of(key, *label)?;
                if !seen.insert(id) {
                    return Err(key.err(format!("agent {label} has two `owns` lines")));
                }
                for t in owned {
                    let j = items
                        .iter()
                        .position(|x| x == t.text)
                        .ok_or_else(|| t.err(format!("unknown item `{}`", t.text)))?;
                    ownership[id.0].push(j);
                }
            }
            OracleSpec::Commodity(CommodityOracle::new(items, ownership)?)
        }
        Kind::Path => {
            let mut names: Vec<String> = Vec::new();
            let mut index = |t: &Tok| -> usize {
                match names.iter().position(|x| x == t.text) {
                    Some(k) => k,
                    None => {
                        names.push(t.text.to_string());
                        names.len() - 1
                    }
                }
            };
            let edges: Vec<(usize, usize)> = d.edges.iter().map(|(a, b)| (index(a), index(b))).collect();
            let s = d.source.as_ref().ok_or_else(|| okey.err("path oracle needs `terminal s`"))?;
            let t = d.target.as_ref().ok_or_else(|| okey.err("path oracle needs `terminal t`"))?;
            let (s, t) = (index(s), index(t));
            let mut agent_vertex = vec![None; n];
            for (key, label, v) in &d.at {
                let id = id_of(key, *label)?;
                if agent_vertex[id.0].is_some() {
                    return Err(key.err(format!("agent {label} placed twice")));
                }
                agent_vertex[id.0] = Some(index(v));
            }
            OracleSpec::Path(PathOracle::new(names, edges, s, t, agent_vertex)?)
        }
        Kind::Predicate => {
            let mut entries = Vec::new();
            for (key, labels, times) in &d.feasible {
                let mut pairs: Vec<(AgentId, Option<Time>)> = Vec::new();
                for (k, l) in labels.iter().enumerate() {
                    pairs.push((id_of(key, *l)?, times.as_ref().map(|ts| ts[k])));
                }
                pairs.sort_by_key(|p| p.0);
                if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
                    return Err(key.err("an agent is listed twice"));
                }
                entries.push(PredicateEntry {
                    members: AgentSet::from_ids(pairs.iter().map(|p| p.0)),
                    times: times.as_ref().map(|_| pairs.iter().map(|p| p.1.unwrap()).collect()),
                });
            }
            OracleSpec::Predicate(PredicateOracle::new(entries)?)
        }
        Kind::Sched => {
            let deadline = d.deadline.ok_or_else(|| okey.err("sched oracle needs a `deadline` line"))?;
            let tasks: BTreeSet<u32> = d.skills.iter().map(|s| s.2).collect();
            let task_labels: Vec<u32> = tasks.into_iter().collect();
            let mut skills = vec![vec![Skill::Infinite; task_labels.len()]; n];
            let mut seen = BTreeSet::new();
            for (key, label, task, skill) in &d.skills {
                let id = id_of(key, *label)?;
                if !seen.insert((id, *task)) {
                    return Err(key.err(format!("skill of agent {label} on task {task} given twice")));
                }
                let j = task_labels.binary_search(task).unwrap();
                skills[id.0][j] = *skill;
            }
            let mut sys = TaskSystem::new(skills, deadline)?;
            sys.task_labels = task_labels;
            OracleSpec::Scheduling(sys)
        }
    };

    let mut fixtures = Vec::new();
    let mut names = BTreeSet::new();
    for (key, fx) in d.fixtures {
        let fixture = match fx {
            RawFixture::Coalition { name, members, salaries, schedule } => {
                let mut pairs = Vec::new();
                for ((t, label), s) in members.iter().zip(salaries) {
                    pairs.push((id_of(t, *label)?, s));
                }
                let mut order: Vec<usize> = (0..pairs.len()).collect();
                order.sort_by_key(|&k| pairs[k].0);
                if order.windows(2).any(|w| pairs[w[0]].0 == pairs[w[1]].0) {
                    return Err(key.err(format!("coalition `{name}` lists an agent twice")));
                }
                let schedule = match schedule {
                    Some(ts) if ts.len() != pairs.len() => {
                        return Err(key.err(format!("coalition `{name}`: one schedule time per member required")))
                    }
                    Some(ts) => Some(order.iter().map(|&k| ts[k]).collect()),
                    None => None,
                };
                Fixture::Coalition {
                    name,
                    members: order.iter().map(|&k| pairs[k].0).collect(),
                    salaries: order.iter().map(|&k| pairs[k].1.clone()).collect(),
                    schedule,
                }
            }
            RawFixture::Profile { name, salaries } => {
                if salaries.len() != n {
                    return Err(key.err(format!("profile `{name}` needs one salary per agent")));
                }
                Fixture::Profile { name, salaries }
            }
        };
        let (Fixture::Coalition { salaries, .. } | Fixture::Profile { salaries, .. }) = &fixture;
        if numeric == NumericMode::Integer && salaries.iter().any(|s| !s.is_integer()) {
            return Err(key.err(format!("fixture `{}`: fractional salary in integer mode", fixture.name())));
        }
        if !names.insert(fixture.name().to_string()) {
            return Err(key.err(format!("fixture `{}` defined twice", fixture.name())));
        }
        fixtures.push(fixture);
    }

    let mut inst = Instance::new(table, budget, model, oracle)?;
    inst.numeric = numeric;
    inst.fixtures = fixtures;
    inst.validate()?;
    Ok(inst)
}

/// Canonical line form.
pub fn emit_instance(inst: &Instance) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    let label = |id: AgentId| inst.agents.label(id);
    let join = |xs: Vec<String>| xs.join(" ");
    line(format!("format {FORMAT_VERSION}"));
    line(format!("model {}", match inst.model {
        SalaryModel::Project => "project",
        SalaryModel::Hourly => "hourly",
    }));
    line(format!("numeric {}", match inst.numeric {
        NumericMode::Integer => "int",
        NumericMode::Rational => "rat",
    }));
    line(format!("budget {}", inst.budget));
    for id in inst.agents.ids() {
        line(format!("agent {} {}", label(id), inst.agents.min_salary(id)));
    }
    match &inst.oracle {
        OracleSpec::Commodity(c) => {
            line("oracle commodity".into());
            line(format!("items {}", c.items().join(" ")));
            for id in inst.agents.ids() {
                let owned = c.owned(id);
                if !owned.is_empty() {
                    let names = owned.iter().map(|&j| c.items()[j].clone()).collect();
                    line(format!("owns {} {}", label(id), join(names)));
                }
            }
        }
        OracleSpec::Path(p) => {
            line("oracle path".into());
            let v = p.vertices();
            for &(a, b) in p.edges() {
                line(format!("edge {} {}", v[a], v[b]));
            }
            line(format!("terminal s {}", v[p.source()]));
            line(format!("terminal t {}", v[p.target()]));
            for id in inst.agents.ids() {
                if let Some(x) = p.vertex_of(id) {
                    line(format!("at {} {}", label(id), v[x]));
                }
            }
        }
        OracleSpec::Predicate(p) => {
            line("oracle predicate".into());
            for e in &p.entries {
                let ids = join(e.members.iter().map(|m| label(m).to_string()).collect());
                match &e.times {
                    Some(t) => line(format!("feasible {ids} times {}", join(t.iter().map(|x| x.to_string()).collect()))),
                    None => line(format!("feasible {ids}")),
                }
            }
        }
        OracleSpec::Scheduling(sys) => {
            line("oracle sched".into());
            line(format!("deadline {}", sys.deadline));
            for id in inst.agents.ids() {
                for (j, task) in sys.task_labels.iter().enumerate() {
                    let s = match sys.skill(id, j) {
                        Skill::Finite(t) => t.to_string(),
                        Skill::Infinite => "inf".into(),
                    };
                    line(format!("skill {} {task} {s}", label(id)));
                }
            }
        }
    }
    let money = |xs: &[Rational]| join(xs.iter().map(format_rational).collect());
    for f in &inst.fixtures {
        match f {
            Fixture::Coalition { name, members, salaries, schedule } => {
                let ids = join(members.iter().map(|m| label(*m).to_string()).collect());
                let mut s = format!("coalition {name} members {ids} salaries {}", money(salaries));
                if let Some(t) = schedule {
                    s.push_str(&format!(" schedule {}", join(t.iter().map(|x| x.to_string()).collect())));
                }
                line(s);
            }
            Fixture::Profile { name, salaries } => line(format!("profile {name} {}", money(salaries))),
        }
    }
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonInstance {
    format: u32,
    model: String,
    #[serde(default)]
    numeric: Option<String>,
    budget: i64,
    agents: Vec<JsonAgent>,
    oracle: JsonOracle,
    #[serde(default)]
    fixtures: Vec<JsonFixture>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonAgent {
    id: u32,
    min_salary: i64,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum JsonOracle {
    Commodity { items: Vec<String>, owns: BTreeMap<String, Vec<String>> },
    Path { edges: Vec<(String, String)>, source: String, target: String, at: BTreeMap<String, String> },
    Predicate { feasible: Vec<JsonFeasible> },
    Sched { deadline: Time, skills: Vec<(u32, u32, Value)> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonFeasible {
    members: Vec<u32>,
    #[serde(default)]
    times: Option<Vec<Time>>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum JsonFixture {
    Coalition { name: String, members: Vec<u32>, salaries: Vec<Value>, #[serde(default)] schedule: Option<Vec<Time>> },
    Profile { name: String, salaries: Vec<Value> },
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// JSON encoding; translated to the line form and parsed from there, so both
/// encodings share one set of checks.
pub fn parse_json(text: &str) -> Result<Instance> {
    let j: JsonInstance = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut lines = vec![
        format!("format {}", j.format),
        format!("model {}", j.model),
        format!("numeric {}", j.numeric.as_deref().unwrap_or("int")),
        format!("budget {}", j.budget),
    ];
    lines.extend(j.agents.iter().map(|a| format!("agent {} {}", a.id, a.min_salary)));
    let words = |xs: &[String]| xs.join(" ");
    match &j.oracle {
        JsonOracle::Commodity { items, owns } => {
            lines.push("oracle commodity".into());
            lines.push(format!("items {}", words(items)));
            lines.extend(owns.iter().map(|(id, names)| format!("owns {id} {}", words(names))));
        }
        JsonOracle::Path { edges, source, target, at } => {
            lines.push("oracle path".into());
            lines.extend(edges.iter().map(|(a, b)| format!("edge {a} {b}")));
            lines.push(format!("terminal s {source}"));
            lines.push(format!("terminal t {target}"));
            lines.extend(at.iter().map(|(id, v)| format!("at {id} {v}")));
        }
        JsonOracle::Predicate { feasible } => {
            lines.push("oracle predicate".into());
            for f in feasible {
                let ids: Vec<String> = f.members.iter().map(|x| x.to_string()).collect();
                let mut s = format!("feasible {}", words(&ids));
                if let Some(t) = &f.times {
                    let ts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
                    s.push_str(&format!(" times {}", words(&ts)));
                }
                lines.push(s);
            }
        }
        JsonOracle::Sched { deadline, skills } => {
            lines.push("oracle sched".into());
            lines.push(format!("deadline {deadline}"));
            lines.extend(skills.iter().map(|(a, t, s)| format!("skill {a} {t} {}", scalar(s))));
        }
    }
    for f in &j.fixtures {
        match f {
            JsonFixture::Coalition { name, members, salaries, schedule } => {
                let ids: Vec<String> = members.iter().map(|x| x.to_string()).collect();
                let sal: Vec<String> = salaries.iter().map(scalar).collect();
                let mut s = format!("coalition {name} members {} salaries {}", words(&ids), words(&sal));
                if let Some(t) = schedule {
                    let ts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
                    s.push_str(&format!(" schedule {}", words(&ts)));
                }
                lines.push(s);
            }
            JsonFixture::Profile { name, salaries } => {
                let sal: Vec<String> = salaries.iter().map(scalar).collect();
                lines.push(format!("profile {name} {}", words(&sal)));
            }
        }
    }
    parse_lines(&lines.join("\n")).map_err(|e| match e {
        Error::Parse { message, .. } => Error::InvalidInstance(message),
        other => other,
    })
}
