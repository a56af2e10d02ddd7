//! Unweighted shortest-path machinery: BFS distances, shortest-path counts,
//! predecessor DAGs, diameter and capped path enumeration.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Distance marker for vertices a BFS did not reach.
pub const UNREACHED: usize = usize::MAX;

/// Single-source BFS result.
#[derive(Debug, Clone, PartialEq)]
pub struct SsspResult {
    pub source: usize,
    /// Hop counts; [`UNREACHED`] for vertices outside the source's component.
    pub dist: Vec<usize>,
    /// Number of shortest paths from the source.
    pub sigma: Vec<f64>,
    /// Shortest-path predecessors, ascending.
    pub preds: Vec<Vec<usize>>,
    /// Vertices in non-decreasing distance order (BFS visit order).
    pub order: Vec<usize>,
}

impl SsspResult {
    pub fn reached(&self) -> usize {
        self.order.len()
    }
}

/// BFS from `source`, visiting neighbors in ascending id order.
pub fn bfs_sssp(g: &Graph, source: usize) -> SsspResult {
    let n = g.n();
    let mut dist = vec![UNREACHED; n];
    let mut sigma = vec![0.0; n];
    let mut preds = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();

    dist[source] = 0;
    sigma[source] = 1.0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &(w, _) in g.neighbors(v) {
            if dist[w] == UNREACHED {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
                preds[w].push(v);
            }
        }
    }
    // BFS order is not id order, so predecessor lists need sorting.
    for p in &mut preds {
        p.sort_unstable();
    }
    SsspResult {
        source,
        dist,
        sigma,
        preds,
        order,
    }
}

/// Exact shortest-path counts from `source`.
pub fn sigma_exact(g: &Graph, source: usize) -> Vec<BigUint> {
    let sssp = bfs_sssp(g, source);
    let mut sigma = vec![BigUint::zero(); g.n()];
    sigma[source] = BigUint::one();
    for &v in sssp.order.iter().skip(1) {
        let mut total = BigUint::zero();
        for &p in &sssp.preds[v] {
            total += &sigma[p];
        }
        sigma[v] = total;
    }
    sigma
}

/// Shortest-path data for every source of a connected graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ApspResult {
    pub sources: Vec<SsspResult>,
    pub diameter: usize,
}

impl ApspResult {
    pub fn n(&self) -> usize {
        self.sources.len()
    }

    pub fn dist(&self, u: usize, v: usize) -> usize {
        self.sources[u].dist[v]
    }

    pub fn sigma(&self, u: usize, v: usize) -> f64 {
        self.sources[u].sigma[v]
    }

    pub fn from(&self, source: usize) -> &SsspResult {
        &self.sources[source]
    }

    /// Total number of shortest paths over unordered pairs.
    pub fn total_paths(&self) -> f64 {
        let n = self.n();
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .map(|(u, v)| self.sigma(u, v))
            .sum()
    }
}

/// BFS from every vertex. Fails if the graph is disconnected.
pub fn apsp(g: &Graph) -> Result<ApspResult> {
    let mut sources = Vec::with_capacity(g.n());
    let mut diameter = 0;
    for s in 0..g.n() {
        let sssp = bfs_sssp(g, s);
        if sssp.reached() < g.n() {
            let vertex = sssp
                .dist
                .iter()
                .position(|&d| d == UNREACHED)
                .expect("some vertex unreached");
            return Err(Error::NotConnected {
                vertex,
                label: g.label(vertex).to_string(),
            });
        }
        diameter = diameter.max(sssp.dist[*sssp.order.last().expect("nonempty")]);
        sources.push(sssp);
    }
    Ok(ApspResult { sources, diameter })
}

/// Lists every shortest `u`–`v` path as a vertex sequence starting at `u`.
///
/// Paths are produced by walking the predecessor DAG backward from `v`,
/// taking predecessors in ascending order. More than `cap` paths is an
/// error rather than a truncated result.
pub fn enumerate_shortest_paths(
    apsp: &ApspResult,
    u: usize,
    v: usize,
    cap: usize,
) -> Result<Vec<Vec<usize>>> {
    if u == v {
        return Err(Error::InvalidParameter(format!(
            "path endpoints must differ, got {u} twice"
        )));
    }
    let sssp = apsp.from(u);
    if sssp.dist[v] == UNREACHED {
        return Err(Error::InvalidParameter(format!(
            "vertex {v} is unreachable from {u}"
        )));
    }
    let mut out = Vec::new();
    let mut stack = vec![v];
    walk_back(sssp, &mut stack, &mut out, cap)?;
    Ok(out)
}

fn walk_back(
    sssp: &SsspResult,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<()> {
    let tip = *stack.last().expect("stack holds the target");
    if tip == sssp.source {
        if out.len() == cap {
            return Err(Error::CapExceeded { cap });
        }
        out.push(stack.iter().rev().copied().collect());
        return Ok(());
    }
    for &p in &sssp.preds[tip] {
        stack.push(p);
        walk_back(sssp, stack, out, cap)?;
        stack.pop();
    }
    Ok(())
}
