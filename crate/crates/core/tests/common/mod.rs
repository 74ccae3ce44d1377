#![allow(dead_code)]

use coalauct::format::parse_instance;
use coalauct::model::Rational;
use coalauct::{AgentId, Coalition, Instance, SalaryModel};

pub fn fixture(name: &str) -> Instance {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    parse_instance(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Parses an instance body, adding the `format` header.
pub fn inst(body: &str) -> Instance {
    parse_instance(&format!("format 1\n{body}")).unwrap()
}

/// E1 items and owners with the given minima and budget.
pub fn e1_with(minima: [i64; 3], budget: i64) -> Instance {
    inst(&format!(
        "model project\nbudget {budget}\nagent 1 {}\nagent 2 {}\nagent 3 {}\noracle commodity\nitems x y z\nowns 1 x y\nowns 2 y z\nowns 3 x z\n",
        minima[0], minima[1], minima[2]
    ))
}

pub fn ids(labels: &[usize]) -> Vec<AgentId> {
    labels.iter().map(|l| AgentId(l - 1)).collect()
}

pub fn project(i: &Instance, labels: &[usize], salaries: &[i64]) -> Coalition<i64> {
    Coalition::new(&i.agents, ids(labels), salaries.to_vec(), SalaryModel::Project, None).unwrap()
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
