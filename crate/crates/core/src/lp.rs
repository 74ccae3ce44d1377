//! Exact linear feasibility over the rationals with lexicographic maximization
//! and constraint generation.
//!
//! Strict inequalities are handled with a symbolic infinitesimal: every value
//! lives in Q(eps), ordered lexicographically, and Fourier-Motzkin elimination
//! runs over that field. Variable order doubles as objective priority.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::model::{format_rational, Rational};

/// Default limit on the number of variables.
pub const VARIABLE_CAP: usize = 16;

/// Default limit on separation rounds.
pub const ROUND_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("{got} variables exceed the cap of {cap}")]
    TooManyVariables { got: usize, cap: usize },
    #[error("constraint has {got} coefficients, system has {expected} variables")]
    Arity { got: usize, expected: usize },
    #[error("variable `{0}` is unbounded above")]
    Unbounded(String),
    #[error("separator returned a constraint the current point already satisfies")]
    StaleCut,
    #[error("no convergence within {0} separation rounds")]
    RoundLimit(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparator {
    Le,
    Lt,
    Eq,
    Ge,
    Gt,
}

impl Comparator {
    fn symbol(self) -> &'static str {
        match self {
            Comparator::Le => "<=",
            Comparator::Lt => "<",
            Comparator::Eq => "=",
            Comparator::Ge => ">=",
            Comparator::Gt => ">",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub cmp: Comparator,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, cmp: Comparator, rhs: Rational) -> Self {
        Constraint { coeffs, cmp, rhs }
    }

    pub fn lhs_at(&self, point: &[Rational]) -> Rational {
        self.coeffs.iter().zip(point).fold(Rational::zero(), |acc, (a, x)| acc + a * x)
    }

    pub fn holds(&self, point: &[Rational]) -> bool {
        let lhs = self.lhs_at(point);
        match self.cmp {
            Comparator::Le => lhs <= self.rhs,
            Comparator::Lt => lhs < self.rhs,
            Comparator::Eq => lhs == self.rhs,
            Comparator::Ge => lhs >= self.rhs,
            Comparator::Gt => lhs > self.rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearSystem {
    pub vars: Vec<String>,
    pub constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(vars: Vec<String>) -> Self {
        LinearSystem { vars, constraints: Vec::new() }
    }

    pub fn push(&mut self, c: Constraint) {
        self.constraints.push(c);
    }

    pub fn satisfied_by(&self, point: &[Rational]) -> bool {
        point.len() == self.vars.len() && self.constraints.iter().all(|c| c.holds(point))
    }
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "maximize lex ({})", self.vars.join(", "))?;
        for c in &self.constraints {
            let mut terms = Vec::new();
            for (a, name) in c.coeffs.iter().zip(&self.vars) {
                if a.is_zero() {
                    continue;
                }
                let coef = if a.is_one() {
                    String::new()
                } else if *a == -Rational::one() {
                    "-".to_string()
                } else {
                    format!("{}*", format_rational(a))
                };
                terms.push(format!("{coef}{name}"));
            }
            let lhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            writeln!(f, "  {lhs} {} {}", c.cmp.symbol(), format_rational(&c.rhs))?;
        }
        Ok(())
    }
}

/// a + b*eps with eps a positive infinitesimal.
#[derive(Debug, Clone, PartialEq, Eq)]
struct EpsRat {
    re: Rational,
    eps: Rational,
}

impl EpsRat {
    fn real(re: Rational) -> Self {
        EpsRat { re, eps: Rational::zero() }
    }

    fn add(&self, o: &EpsRat) -> EpsRat {
        EpsRat { re: &self.re + &o.re, eps: &self.eps + &o.eps }
    }

    fn sub(&self, o: &EpsRat) -> EpsRat {
        EpsRat { re: &self.re - &o.re, eps: &self.eps - &o.eps }
    }

    fn scale(&self, k: &Rational) -> EpsRat {
        EpsRat { re: &self.re * k, eps: &self.eps * k }
    }
}

impl Ord for EpsRat {
    fn cmp(&self, o: &Self) -> Ordering {
        self.re.cmp(&o.re).then_with(|| self.eps.cmp(&o.eps))
    }
}

impl PartialOrd for EpsRat {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// coeffs . x <= rhs
#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<Rational>,
    rhs: EpsRat,
}

fn to_rows(c: &Constraint) -> Vec<Row> {
    let neg: Vec<Rational> = c.coeffs.iter().map(|a| -a).collect();
    let eps = || Rational::one();
    let le = |coeffs: Vec<Rational>, rhs: Rational, strict: bool| Row {
        coeffs,
        rhs: EpsRat { re: rhs, eps: if strict { -eps() } else { Rational::zero() } },
    };
    match c.cmp {
        Comparator::Le => vec![le(c.coeffs.clone(), c.rhs.clone(), false)],
        Comparator::Lt => vec![le(c.coeffs.clone(), c.rhs.clone(), true)],
        Comparator::Ge => vec![le(neg, -&c.rhs, false)],
        Comparator::Gt => vec![le(neg, -&c.rhs, true)],
        Comparator::Eq => vec![le(c.coeffs.clone(), c.rhs.clone(), false), le(neg, -&c.rhs, false)],
    }
}

/// Scales by the first nonzero coefficient's magnitude and keeps the tightest
/// right-hand side per direction. `None` on a violated constant row.
fn normalize(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut best: BTreeMap<Vec<Rational>, EpsRat> = BTreeMap::new();
    for r in rows {
        let Some(lead) = r.coeffs.iter().find(|a| !a.is_zero()).map(|a| a.abs()) else {
            if r.rhs < EpsRat::real(Rational::zero()) {
                return None;
            }
            continue;
        };
        let inv = Rational::one() / lead;
        let coeffs: Vec<Rational> = r.coeffs.iter().map(|a| a * &inv).collect();
        let rhs = r.rhs.scale(&inv);
        match best.get_mut(&coeffs) {
            Some(old) if *old <= rhs => {}
            Some(old) => *old = rhs,
            None => {
                best.insert(coeffs, rhs);
            }
        }
    }
    Some(best.into_iter().map(|(coeffs, rhs)| Row { coeffs, rhs }).collect())
}

/// Eliminates the last variable.
fn eliminate(rows: &[Row]) -> Option<Vec<Row>> {
    let k = rows.first().map_or(0, |r| r.coeffs.len()) - 1;
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for r in rows {
        match r.coeffs[k].cmp(&Rational::zero()) {
            Ordering::Greater => pos.push(r),
            Ordering::Less => neg.push(r),
            Ordering::Equal => out.push(Row { coeffs: r.coeffs[..k].to_vec(), rhs: r.rhs.clone() }),
        }
    }
    for p in &pos {
        let sp = Rational::one() / &p.coeffs[k];
        for q in &neg {
            let sq = Rational::one() / -&q.coeffs[k];
            let coeffs = (0..k).map(|i| &p.coeffs[i] * &sp + &q.coeffs[i] * &sq).collect();
            let rhs = p.rhs.scale(&sp).add(&q.rhs.scale(&sq));
            out.push(Row { coeffs, rhs });
        }
    }
    normalize(out)
}

/// Lexicographically maximal point (first variable has top priority).
///
/// When the supremum is attained the exact maximizer is returned. When it is
/// only approached because of a strict inequality, a concrete feasible point
/// is returned by fixing the infinitesimal to a small positive rational.
pub fn solve_feasible(sys: &LinearSystem) -> Result<Option<Vec<Rational>>, LpError> {
    solve_capped(sys, VARIABLE_CAP)
}

pub fn solve_capped(sys: &LinearSystem, cap: usize) -> Result<Option<Vec<Rational>>, LpError> {
    let n = sys.vars.len();
    if n > cap {
        return Err(LpError::TooManyVariables { got: n, cap });
    }
    for c in &sys.constraints {
        if c.coeffs.len() != n {
            return Err(LpError::Arity { got: c.coeffs.len(), expected: n });
        }
    }
    let rows: Vec<Row> = sys.constraints.iter().flat_map(to_rows).collect();
    let Some(top) = normalize(rows.clone()) else { return Ok(None) };
    if n == 0 {
        return Ok(Some(Vec::new()));
    }

    // levels[k] holds the projection onto the first k variables
    let mut levels: Vec<Vec<Row>> = vec![Vec::new(); n + 1];
    levels[n] = top;
    for k in (1..=n).rev() {
        if levels[k].is_empty() {
            continue;
        }
        match eliminate(&levels[k]) {
            Some(next) => levels[k - 1] = next,
            None => return Ok(None),
        }
    }

    let mut point: Vec<EpsRat> = Vec::with_capacity(n);
    for k in 0..n {
        let mut upper: Option<EpsRat> = None;
        for r in &levels[k + 1] {
            let a = &r.coeffs[k];
            if !a.is_positive() {
                continue;
            }
            let fixed = point
                .iter()
                .zip(&r.coeffs)
                .fold(EpsRat::real(Rational::zero()), |acc, (x, c)| acc.add(&x.scale(c)));
            let bound = r.rhs.sub(&fixed).scale(&(Rational::one() / a));
            if upper.as_ref().is_none_or(|u| bound < *u) {
                upper = Some(bound);
            }
        }
        match upper {
            Some(u) => point.push(u),
            None => return Err(LpError::Unbounded(sys.vars[k].clone())),
        }
    }

    if point.iter().all(|x| x.eps.is_zero()) {
        return Ok(Some(point.into_iter().map(|x| x.re).collect()));
    }
    // pick eps small enough for every row: slack(eps) = c0 + c1*eps >= 0
    let mut eps = Rational::one();
    for r in &rows {
        let lhs = point
            .iter()
            .zip(&r.coeffs)
            .fold(EpsRat::real(Rational::zero()), |acc, (x, c)| acc.add(&x.scale(c)));
        let slack = r.rhs.sub(&lhs);
        if slack.eps.is_negative() {
            let limit = &slack.re / -&slack.eps / Rational::from_integer(2.into());
            if limit < eps {
                eps = limit;
            }
        }
    }
    Ok(Some(point.into_iter().map(|x| x.re + x.eps * &eps).collect()))
}

/// Result of constraint generation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separated {
    pub point: Vec<Rational>,
    /// Separator calls made, including the final one that found nothing.
    pub rounds: usize,
    pub system: LinearSystem,
}

/// Solves, asks the separator for a violated constraint, adds it, repeats.
pub fn solve_with_separation<F>(
    initial: LinearSystem,
    mut separator: F,
) -> Result<Option<Separated>, LpError>
where
    F: FnMut(&[Rational]) -> Option<Constraint>,
{
    let mut system = initial;
    let mut rounds = 0;
    loop {
        let Some(point) = solve_feasible(&system)? else { return Ok(None) };
        rounds += 1;
        match separator(&point) {
            None => return Ok(Some(Separated { point, rounds, system })),
            Some(cut) => {
                if cut.holds(&point) {
                    return Err(LpError::StaleCut);
                }
                system.push(cut);
            }
        }
        if rounds >= ROUND_CAP {
            return Err(LpError::RoundLimit(ROUND_CAP));
        }
    }
}
