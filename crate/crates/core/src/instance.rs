use crate::error::{Error, Result};
use crate::model::{
    AgentId, AgentSet, AgentTable, Coalition, Money, NumericMode, Rational, SalaryModel, Time,
};
use crate::oracle::OracleSpec;

/// Named coalition or salary profile carried by an instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fixture {
    Coalition {
        name: String,
        members: Vec<AgentId>,
        salaries: Vec<Rational>,
        schedule: Option<Vec<Time>>,
    },
    Profile { name: String, salaries: Vec<Rational> },
}

impl Fixture {
    pub fn name(&self) -> &str {
        match self {
            Fixture::Coalition { name, .. } | Fixture::Profile { name, .. } => name,
        }
    }
}

/// A complete problem instance: agents, budget, salary model and oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub agents: AgentTable,
    pub budget: i64,
    pub model: SalaryModel,
    pub numeric: NumericMode,
    pub oracle: OracleSpec,
    pub fixtures: Vec<Fixture>,
}

impl Instance {
    pub fn new(
        agents: AgentTable,
        budget: i64,
        model: SalaryModel,
        oracle: OracleSpec,
    ) -> Result<Self> {
        let inst = Instance {
            agents,
            budget,
            model,
            numeric: NumericMode::Integer,
            oracle,
            fixtures: Vec::new(),
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget < 0 {
            return Err(Error::InvalidInstance("budget must be non-negative".into()));
        }
        if self.numeric == NumericMode::Rational && self.model == SalaryModel::Hourly {
            return Err(Error::Unsupported("rational salaries require the project model".into()));
        }
        self.oracle.validate(self.n())
    }

    pub fn n(&self) -> usize {
        self.agents.len()
    }

    pub fn all(&self) -> AgentSet {
        self.agents.all()
    }

    pub fn with_budget(&self, budget: i64) -> Self {
        Instance { budget, ..self.clone() }
    }

    pub fn with_minima(&self, minima: Vec<i64>) -> Result<Self> {
        let agents = AgentTable::new(self.agents.labels().to_vec(), minima)?;
        Ok(Instance { agents, ..self.clone() })
    }

    pub fn v<M: Money>(&self) -> M {
        M::from_int(self.budget)
    }

    pub fn minima<M: Money>(&self) -> Vec<M> {
        self.agents.minima()
    }

    pub fn fixture(&self, name: &str) -> Option<&Fixture> {
        self.fixtures.iter().find(|f| f.name() == name)
    }

    /// Resolves a named coalition fixture, validating salaries and cost.
    pub fn coalition_fixture<M: Money>(&self, name: &str) -> Result<Coalition<M>> {
        match self.fixture(name) {
            Some(Fixture::Coalition { members, salaries, schedule, .. }) => {
                let salaries = convert_all::<M>(salaries)?;
                Coalition::new(&self.agents, members.clone(), salaries, self.model, schedule.clone())
            }
            _ => Err(Error::InvalidInstance(format!("no coalition fixture named `{name}`"))),
        }
    }

    pub fn profile_fixture<M: Money>(&self, name: &str) -> Result<Vec<M>> {
        match self.fixture(name) {
            Some(Fixture::Profile { salaries, .. }) => convert_all::<M>(salaries),
            _ => Err(Error::InvalidInstance(format!("no profile fixture named `{name}`"))),
        }
    }

    /// Checks a salary profile covers every agent and respects the minima.
    pub fn check_profile<M: Money>(&self, profile: &[M]) -> Result<()> {
        if profile.len() != self.n() {
            return Err(Error::InvalidInstance(format!(
                "profile has {} entries, expected {}",
                profile.len(),
                self.n()
            )));
        }
        for id in self.agents.ids() {
            if profile[id.0] < M::from_int(self.agents.min_salary(id)) {
                return Err(Error::SalaryBelowMinimum { agent: self.agents.label(id) });
            }
        }
        Ok(())
    }
}

fn convert_all<M: Money>(values: &[Rational]) -> Result<Vec<M>> {
    values
        .iter()
        .map(|r| {
            M::from_rational(r).ok_or_else(|| {
                Error::InvalidInstance(format!("salary {r} is not valid in integer mode"))
            })
        })
        .collect()
}
