//! Exact solvers for coalitional auctions on complex projects.
//!
//! Agents with minimal salaries form coalitions that must be feasible under an
//! oracle (commodity, path, explicit list or task scheduling) and fit a budget.
//! The crate answers cheapest-coalition queries, computes equilibria of the
//! centralized bidding game, checks the stability notions of the decentralized
//! game, and simulates a descending coalition auction.

pub mod error;
pub mod format;
pub mod instance;
pub mod lp;
pub mod model;
pub mod oracle;
pub mod scheduling;
pub mod space;
pub mod centralized;
pub mod cli;
pub mod corpus;
pub mod decentralized;
pub mod mechanisms;
pub mod reference;

pub use error::{Error, Result};
pub use instance::{Fixture, Instance};
pub use model::{
    compare_coalitions, coalition_cost, AgentId, AgentSet, AgentTable, Coalition, Money,
    NumericMode, Rational, SalaryModel, Time,
};
pub use oracle::{brute_force_ffc, ffc, FfcQuery, OracleSpec};
