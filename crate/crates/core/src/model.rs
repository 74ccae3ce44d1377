//! Agents, money, coalitions and the deterministic tie-break.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Time = u64;
pub type Rational = BigRational;

/// Upper bound on the number of agents; agent sets are 64-bit masks.
pub const MAX_AGENTS: usize = 64;

/// Dense internal index of an agent. Ordering matches the tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentId(pub usize);

/// Set of agents as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct AgentSet(u64);

impl AgentSet {
    pub const EMPTY: AgentSet = AgentSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            AgentSet(u64::MAX)
        } else {
            AgentSet((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        AgentSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(id: AgentId) -> Self {
        AgentSet(1u64 << id.0)
    }

    pub fn from_ids<I: IntoIterator<Item = AgentId>>(ids: I) -> Self {
        ids.into_iter().fold(AgentSet::EMPTY, |s, id| s.with(id))
    }

    pub fn contains(self, id: AgentId) -> bool {
        id.0 < 64 && self.0 & (1u64 << id.0) != 0
    }

    pub fn with(self, id: AgentId) -> Self {
        AgentSet(self.0 | (1u64 << id.0))
    }

    pub fn without(self, id: AgentId) -> Self {
        AgentSet(self.0 & !(1u64 << id.0))
    }

    pub fn union(self, other: AgentSet) -> Self {
        AgentSet(self.0 | other.0)
    }

    pub fn intersection(self, other: AgentSet) -> Self {
        AgentSet(self.0 & other.0)
    }

    pub fn difference(self, other: AgentSet) -> Self {
        AgentSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: AgentSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: AgentSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Members in ascending id order.
    pub fn iter(self) -> impl Iterator<Item = AgentId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(AgentId(i))
        })
    }

    pub fn to_vec(self) -> Vec<AgentId> {
        self.iter().collect()
    }

    /// Tie-break comparison of the sorted member sequences.
    pub fn tie_cmp(self, other: AgentSet) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for AgentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|a| a.0)).finish()
    }
}

/// Exact money. Integer units by default, rationals when salaries may be fractional.
pub trait Money:
    Clone
    + Ord
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Zero
    + Send
    + Sync
    + 'static
{
    /// Whether salaries move in whole units.
    const DISCRETE: bool;

    fn from_int(value: i64) -> Self;

    fn times(&self, t: Time) -> Self;

    /// Division by a positive integer; truncates in integer mode.
    fn div_int(&self, k: i64) -> Self;

    fn to_rational(&self) -> Rational;

    /// Exact conversion back from a rational, if representable.
    fn from_rational(r: &Rational) -> Option<Self>;

    /// Integer value, if integral.
    fn as_integer(&self) -> Option<i64>;

    fn unit() -> Self {
        Self::from_int(1)
    }

    fn parse_money(s: &str) -> Option<Self> {
        Self::from_rational(&parse_rational(s)?)
    }
}

impl Money for i64 {
    const DISCRETE: bool = true;

    fn from_int(value: i64) -> Self {
        value
    }

    fn times(&self, t: Time) -> Self {
        self * t as i64
    }

    fn div_int(&self, k: i64) -> Self {
        self / k
    }

    fn to_rational(&self) -> Rational {
        Rational::from_integer(BigInt::from(*self))
    }

    fn from_rational(r: &Rational) -> Option<Self> {
        if r.is_integer() {
            r.to_integer().to_i64()
        } else {
            None
        }
    }

    fn as_integer(&self) -> Option<i64> {
        Some(*self)
    }
}

impl Money for Rational {
    const DISCRETE: bool = false;

    fn from_int(value: i64) -> Self {
        Rational::from_integer(BigInt::from(value))
    }

    fn times(&self, t: Time) -> Self {
        self * Rational::from_integer(BigInt::from(t))
    }

    fn div_int(&self, k: i64) -> Self {
        self / Rational::from_integer(BigInt::from(k))
    }

    fn to_rational(&self) -> Rational {
        self.clone()
    }

    fn from_rational(r: &Rational) -> Option<Self> {
        Some(r.clone())
    }

    fn as_integer(&self) -> Option<i64> {
        if self.is_integer() {
            self.to_integer().to_i64()
        } else {
            None
        }
    }
}

/// Parses `7`, `-3` or `9/2`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().ok()?;
    let den: BigInt = den.trim().parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if r.is_negative() {
        format!("-{}/{}", r.numer().abs(), r.denom())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SalaryModel {
    Project,
    Hourly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NumericMode {
    Integer,
    Rational,
}

/// Agents with their external labels and minimal salaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentTable {
    labels: Vec<u32>,
    min_salary: Vec<i64>,
}

impl AgentTable {
    /// Labels must be strictly increasing so that label order equals id order.
    pub fn new(labels: Vec<u32>, min_salary: Vec<i64>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidInstance("no agents".into()));
        }
        if labels.len() != min_salary.len() {
            return Err(Error::InvalidInstance("label/salary length mismatch".into()));
        }
        if labels.len() > MAX_AGENTS {
            return Err(Error::CapExceeded { what: "agent count", cap: MAX_AGENTS });
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInstance("agent ids must be strictly increasing".into()));
        }
        if let Some(i) = min_salary.iter().position(|&m| m <= 0) {
            return Err(Error::InvalidInstance(format!(
                "agent {}: minimal salary must be positive",
                labels[i]
            )));
        }
        Ok(AgentTable { labels, min_salary })
    }

    /// Agents labelled 1..=n.
    pub fn with_minima(min_salary: Vec<i64>) -> Result<Self> {
        let labels = (1..=min_salary.len() as u32).collect();
        Self::new(labels, min_salary)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = AgentId> {
        (0..self.labels.len()).map(AgentId)
    }

    pub fn all(&self) -> AgentSet {
        AgentSet::full(self.len())
    }

    pub fn label(&self, id: AgentId) -> u32 {
        self.labels[id.0]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn id_of(&self, label: u32) -> Option<AgentId> {
        self.labels.binary_search(&label).ok().map(AgentId)
    }

    pub fn min_salary(&self, id: AgentId) -> i64 {
        self.min_salary[id.0]
    }

    pub fn min_salaries(&self) -> &[i64] {
        &self.min_salary
    }

    pub fn minima<M: Money>(&self) -> Vec<M> {
        self.min_salary.iter().map(|&m| M::from_int(m)).collect()
    }

    pub fn set_min_salary(&mut self, id: AgentId, value: i64) -> Result<()> {
        if value <= 0 {
            return Err(Error::InvalidInstance("minimal salary must be positive".into()));
        }
        self.min_salary[id.0] = value;
        Ok(())
    }
}

/// A coalition: members, their salaries, the total cost, and in the hourly
/// model the time each member works.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coalition<M> {
    pub members: Vec<AgentId>,
    pub salaries: Vec<M>,
    pub cost: M,
    pub schedule: Option<Vec<Time>>,
}

impl<M: Money> Coalition<M> {
    /// Validated constructor; computes the cost.
    pub fn new(
        agents: &AgentTable,
        members: Vec<AgentId>,
        salaries: Vec<M>,
        model: SalaryModel,
        schedule: Option<Vec<Time>>,
    ) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidCoalition("empty coalition".into()));
        }
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidCoalition("members must be sorted and distinct".into()));
        }
        if let Some(m) = members.iter().find(|m| m.0 >= agents.len()) {
            return Err(Error::InvalidCoalition(format!("unknown agent index {}", m.0)));
        }
        if salaries.len() != members.len() {
            return Err(Error::InvalidCoalition("one salary per member required".into()));
        }
        let schedule = match model {
            SalaryModel::Project => None,
            SalaryModel::Hourly => schedule,
        };
        let cost = coalition_cost(agents, &members, &salaries, model, schedule.as_deref())?;
        Ok(Coalition { members, salaries, cost, schedule })
    }

    /// Unchecked constructor for solver output.
    pub(crate) fn from_parts(
        members: AgentSet,
        salary_of: &[M],
        cost: M,
        schedule: Option<Vec<Time>>,
    ) -> Self {
        let members = members.to_vec();
        let salaries = members.iter().map(|m| salary_of[m.0].clone()).collect();
        Coalition { members, salaries, cost, schedule }
    }

    pub fn member_set(&self) -> AgentSet {
        AgentSet::from_ids(self.members.iter().copied())
    }

    pub fn salary_of(&self, id: AgentId) -> Option<&M> {
        self.members.iter().position(|&m| m == id).map(|k| &self.salaries[k])
    }

    /// Full-length salary vector with `fill` for non-members.
    pub fn salary_vector(&self, n: usize, fill: &[M]) -> Vec<M> {
        let mut out = fill[..n].to_vec();
        for (m, s) in self.members.iter().zip(&self.salaries) {
            out[m.0] = s.clone();
        }
        out
    }

    /// Money agent `id` receives: salary, or salary times hours.
    pub fn total_pay(&self, id: AgentId) -> Option<M> {
        let k = self.members.iter().position(|&m| m == id)?;
        Some(match &self.schedule {
            Some(t) => self.salaries[k].times(t[k]),
            None => self.salaries[k].clone(),
        })
    }

    pub fn is_cheaper_than(&self, other: &Coalition<M>) -> bool {
        compare_coalitions(self, other) == Ordering::Less
    }

    /// Same members, same salaries.
    pub fn same_profile(&self, other: &Coalition<M>) -> bool {
        self.members == other.members && self.salaries == other.salaries
    }
}

/// Orders by cost, then by the sorted member sequence.
pub fn compare_coalitions<M: Money>(a: &Coalition<M>, b: &Coalition<M>) -> Ordering {
    a.cost.cmp(&b.cost).then_with(|| a.members.cmp(&b.members))
}

/// Key form of the tie-break for sets that have not been materialized.
pub fn cheaper_key<M: Ord>(a: (&M, AgentSet), b: (&M, AgentSet)) -> Ordering {
    a.0.cmp(b.0).then_with(|| a.1.tie_cmp(b.1))
}

pub fn coalition_cost<M: Money>(
    agents: &AgentTable,
    members: &[AgentId],
    salaries: &[M],
    model: SalaryModel,
    schedule: Option<&[Time]>,
) -> Result<M> {
    for (m, s) in members.iter().zip(salaries) {
        if *s < M::from_int(agents.min_salary(*m)) {
            return Err(Error::SalaryBelowMinimum { agent: agents.label(*m) });
        }
    }
    match model {
        SalaryModel::Project => Ok(salaries.iter().cloned().fold(M::zero(), |a, b| a + b)),
        SalaryModel::Hourly => {
            let times = schedule.ok_or(Error::MissingSchedule)?;
            if times.len() != members.len() {
                return Err(Error::MissingSchedule);
            }
            Ok(salaries.iter().zip(times).fold(M::zero(), |acc, (s, &t)| acc + s.times(t)))
        }
    }
}

pub fn format_money_list<M: Money>(values: &[M]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Canonical single-line form, e.g. `members=[1,2] salaries=[2,2] cost=4`.
pub fn format_coalition<M: Money>(agents: &AgentTable, c: &Coalition<M>) -> String {
    let labels: Vec<String> = c.members.iter().map(|m| agents.label(*m).to_string()).collect();
    let mut out = format!(
        "members=[{}] salaries={} cost={}",
        labels.join(","),
        format_money_list(&c.salaries),
        c.cost
    );
    if let Some(t) = &c.schedule {
        let times: Vec<String> = t.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!(" schedule=[{}]", times.join(",")));
    }
    out
}

/// Inverse of [`format_coalition`]; the stated cost must match the recomputed one.
pub fn parse_coalition<M: Money>(
    agents: &AgentTable,
    model: SalaryModel,
    line: &str,
) -> Result<Coalition<M>> {
    let bad = |msg: &str| Error::InvalidCoalition(format!("{msg}: `{line}`"));
    let mut members = None;
    let mut salaries = None;
    let mut cost = None;
    let mut schedule = None;
    for field in line.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| bad("expected key=value"))?;
        match key {
            "members" | "salaries" | "schedule" => {
                let inner = value
                    .strip_prefix('[')
                    .and_then(|v| v.strip_suffix(']'))
                    .ok_or_else(|| bad("expected bracketed list"))?;
                let items: Vec<&str> =
                    if inner.is_empty() { Vec::new() } else { inner.split(',').collect() };
                match key {
                    "members" => {
                        let ids = items
                            .iter()
                            .map(|s| {
                                let label: u32 = s.parse().map_err(|_| bad("bad agent id"))?;
                                agents.id_of(label).ok_or_else(|| bad("unknown agent id"))
                            })
                            .collect::<Result<Vec<_>>>()?;
                        members = Some(ids);
                    }
                    "salaries" => {
                        let vals = items
                            .iter()
                            .map(|s| M::parse_money(s).ok_or_else(|| bad("bad salary")))
                            .collect::<Result<Vec<_>>>()?;
                        salaries = Some(vals);
                    }
                    _ => {
                        let vals = items
                            .iter()
                            .map(|s| s.parse::<Time>().map_err(|_| bad("bad time")))
                            .collect::<Result<Vec<_>>>()?;
                        schedule = Some(vals);
                    }
                }
            }
            "cost" => cost = Some(M::parse_money(value).ok_or_else(|| bad("bad cost"))?),
            _ => return Err(bad("unknown field")),
        }
    }
    let c = Coalition::new(
        agents,
        members.ok_or_else(|| bad("missing members"))?,
        salaries.ok_or_else(|| bad("missing salaries"))?,
        model,
        schedule,
    )?;
    if let Some(stated) = cost {
        if stated != c.cost {
            return Err(bad("stated cost disagrees with salaries"));
        }
    }
    Ok(c)
}
