use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::error::{Error, Result};
use crate::model::{AgentId, AgentSet, Money};

use super::{Candidate, FfcQuery};

/// The members' vertices plus the two terminals must connect source to target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathOracle {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    source: usize,
    target: usize,
    agent_vertex: Vec<Option<usize>>,
    vertex_agent: Vec<Option<AgentId>>,
}

impl PathOracle {
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(usize, usize)>,
        source: usize,
        target: usize,
        agent_vertex: Vec<Option<usize>>,
    ) -> Result<Self> {
        let nv = vertices.len();
        if source >= nv || target >= nv {
            return Err(Error::InvalidInstance("terminal vertex out of range".into()));
        }
        if source == target {
            return Err(Error::InvalidInstance("source and target must differ".into()));
        }
        let mut adj = vec![Vec::new(); nv];
        for &(u, v) in &edges {
            if u >= nv || v >= nv {
                return Err(Error::InvalidInstance("edge endpoint out of range".into()));
            }
            if u == v {
                continue;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        if adj[source].contains(&target) {
            return Err(Error::NoAgentsRequired);
        }
        let mut vertex_agent = vec![None; nv];
        for (i, slot) in agent_vertex.iter().enumerate() {
            if let Some(v) = *slot {
                if v >= nv {
                    return Err(Error::InvalidInstance("agent vertex out of range".into()));
                }
                if v == source || v == target {
                    return Err(Error::InvalidInstance("agents cannot sit on terminals".into()));
                }
                if vertex_agent[v].is_some() {
                    return Err(Error::InvalidInstance(format!(
                        "vertex `{}` holds more than one agent",
                        vertices[v]
                    )));
                }
                vertex_agent[v] = Some(AgentId(i));
            }
        }
        Ok(PathOracle { vertices, edges, adj, source, target, agent_vertex, vertex_agent })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn vertex_of(&self, id: AgentId) -> Option<usize> {
        self.agent_vertex.get(id.0).copied().flatten()
    }

    pub(crate) fn validate(&self, n: usize) -> Result<()> {
        if self.agent_vertex.len() != n {
            return Err(Error::InvalidInstance(format!(
                "path placement lists {} agents, instance has {n}",
                self.agent_vertex.len()
            )));
        }
        Ok(())
    }

    fn usable(&self, v: usize, allowed: AgentSet) -> bool {
        v == self.source
            || v == self.target
            || self.vertex_agent[v].is_some_and(|a| allowed.contains(a))
    }

    pub fn connects(&self, members: AgentSet) -> bool {
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([self.source]);
        seen[self.source] = true;
        while let Some(u) = queue.pop_front() {
            if u == self.target {
                return true;
            }
            for &w in &self.adj[u] {
                if !seen[w] && self.usable(w, members) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        false
    }

    /// Simple-path enumeration pruned by a node-weighted distance-to-target bound.
    pub(crate) fn cheapest<M: Money>(
        &self,
        query: &FfcQuery<M>,
        eligible: AgentSet,
    ) -> Option<Candidate<M>> {
        let sal = &query.min_salaries;
        let required = query.required;
        let base = required.iter().fold(M::zero(), |a, m| a + sal[m.0].clone());
        if base > query.budget {
            return None;
        }
        let nv = self.vertices.len();
        let weight: Vec<M> = (0..nv)
            .map(|v| match self.vertex_agent[v] {
                Some(a) if !required.contains(a) => sal[a.0].clone(),
                _ => M::zero(),
            })
            .collect();

        let mut h: Vec<Option<M>> = vec![None; nv];
        let mut heap = BinaryHeap::new();
        h[self.target] = Some(M::zero());
        heap.push(Reverse((M::zero(), self.target)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if h[u].as_ref() != Some(&d) {
                continue;
            }
            let next = d.clone() + weight[u].clone();
            for &w in &self.adj[u] {
                if !self.usable(w, eligible) {
                    continue;
                }
                if h[w].as_ref().is_none_or(|old| &next < old) {
                    h[w] = Some(next.clone());
                    heap.push(Reverse((next.clone(), w)));
                }
            }
        }
        h[self.source].as_ref()?;

        let mut dfs = Dfs {
            oracle: self,
            eligible,
            weight: &weight,
            h: &h,
            limit: query.budget.clone() - base.clone(),
            base,
            required,
            visited: vec![false; nv],
            best: None,
        };
        dfs.visited[self.source] = true;
        dfs.walk(self.source, M::zero(), AgentSet::EMPTY);
        dfs.best
    }
}

struct Dfs<'a, M> {
    oracle: &'a PathOracle,
    eligible: AgentSet,
    weight: &'a [M],
    h: &'a [Option<M>],
    limit: M,
    base: M,
    required: AgentSet,
    visited: Vec<bool>,
    best: Option<Candidate<M>>,
}

impl<M: Money> Dfs<'_, M> {
    fn bound(&self) -> M {
        match &self.best {
            Some(b) => {
                let extra = b.cost.clone() - self.base.clone();
                if extra < self.limit { extra } else { self.limit.clone() }
            }
            None => self.limit.clone(),
        }
    }

    fn walk(&mut self, v: usize, g: M, on_path: AgentSet) {
        if v == self.oracle.target {
            let members = on_path.union(self.required);
            if !members.is_empty() {
                let cost = self.base.clone() + g;
                Candidate::offer(&mut self.best, Candidate { cost, members, schedule: None });
            }
            return;
        }
        for k in 0..self.oracle.adj[v].len() {
            let w = self.oracle.adj[v][k];
            if self.visited[w] || !self.oracle.usable(w, self.eligible) {
                continue;
            }
            let Some(hw) = &self.h[w] else { continue };
            let g2 = g.clone() + self.weight[w].clone();
            if g2.clone() + hw.clone() > self.bound() {
                continue;
            }
            let on = match self.oracle.vertex_agent[w] {
                Some(a) => on_path.with(a),
                None => on_path,
            };
            self.visited[w] = true;
            self.walk(w, g2, on);
            self.visited[w] = false;
        }
    }
}
