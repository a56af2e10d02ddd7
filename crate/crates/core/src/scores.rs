//! Connection-graph-stability edge scores and the bound `n / C_max`.
//!
//! The score of an edge is the total length of the connection paths routed
//! across it, one unit of routing per unordered vertex pair. When a pair has
//! several shortest paths a strategy splits its unit across them and each
//! path contributes its length times its weight.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::paths::{enumerate_shortest_paths, ApspResult};
use crate::strategy::PathStrategy;

/// Total shortest-path count above which brute-force enumeration is refused.
pub const ORACLE_PATH_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyTag {
    SinglePath,
    Uniform,
    Optimized,
    BruteForce,
    External,
}

/// Per-edge scores, indexed by edge id.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeScores {
    pub scores: Vec<f64>,
    pub strategy: StrategyTag,
}

impl EdgeScores {
    pub fn new(scores: Vec<f64>, strategy: StrategyTag) -> Self {
        EdgeScores { scores, strategy }
    }

    /// Largest score and its edge id (smallest id on ties).
    pub fn max(&self) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for (id, &s) in self.scores.iter().enumerate() {
            if best.is_none_or(|(_, b)| s > b) {
                best = Some((id, s));
            }
        }
        best
    }

    pub fn cmax(&self) -> f64 {
        self.max().map_or(0.0, |(_, s)| s)
    }

    pub fn total(&self) -> f64 {
        self.scores.iter().sum()
    }

    /// CSV with header `edge_id,u,v,score`.
    pub fn write_csv<W: Write>(&self, g: &Graph, mut out: W) -> io::Result<()> {
        writeln!(out, "edge_id,u,v,score")?;
        for (id, &s) in self.scores.iter().enumerate() {
            let (u, v) = g.edge(id);
            writeln!(out, "{id},{u},{v},{}", crate::format_real(s))?;
        }
        Ok(())
    }
}

/// The bound `n / C_max` with the edge attaining `C_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CgsBound {
    pub bound: f64,
    pub cmax: f64,
    pub argmax_edge: usize,
}

/// `n / max(scores)`.
pub fn cgs_bound(g: &Graph, scores: &EdgeScores) -> Result<CgsBound> {
    match scores.max() {
        Some((argmax_edge, cmax)) if cmax > 0.0 => Ok(CgsBound {
            bound: g.n() as f64 / cmax,
            cmax,
            argmax_edge,
        }),
        _ => Err(Error::InvalidParameter(
            "scores must be nonempty and positive".into(),
        )),
    }
}

/// Edge on the step `pred -> v`. Panics if the two are not adjacent.
fn edge_between(g: &Graph, a: usize, b: usize) -> usize {
    g.edge_id(a, b)
        .unwrap_or_else(|| panic!("({a}, {b}) is not an edge"))
}

/// One shortest path per unordered pair: walk back from `v` to `u`, always
/// taking the smallest-id predecessor.
pub fn scores_single_path(g: &Graph, apsp: &ApspResult) -> Result<EdgeScores> {
    g.require_connected()?;
    let n = g.n();
    let mut scores = vec![0.0; g.edge_count()];
    for u in 0..n {
        let sssp = apsp.from(u);
        for v in u + 1..n {
            let len = sssp.dist[v] as f64;
            let mut cur = v;
            while cur != u {
                let p = sssp.preds[cur][0];
                scores[edge_between(g, p, cur)] += len;
                cur = p;
            }
        }
    }
    Ok(EdgeScores::new(scores, StrategyTag::SinglePath))
}

/// Scores for the uniform strategy (each of a pair's `σ` shortest paths gets
/// weight `1/σ`) by length-weighted Brandes accumulation, `O(n·|E|)`.
///
/// From each source, `δ(v) = Σ_w σ(v)/σ(w) · (d(w) + δ(w))` over DAG
/// successors `w`; the summand is credited to edge `(v, w)`. Every unordered
/// pair is seen from both endpoints, so the totals are halved.
pub fn scores_uniform(g: &Graph, apsp: &ApspResult) -> Result<EdgeScores> {
    g.require_connected()?;
    let n = g.n();
    let mut scores = vec![0.0; g.edge_count()];
    let mut delta = vec![0.0; n];
    for sssp in &apsp.sources {
        delta.iter_mut().for_each(|d| *d = 0.0);
        for &w in sssp.order.iter().rev() {
            let dw = sssp.dist[w];
            if dw == 0 {
                continue;
            }
            let carried = (dw as f64 + delta[w]) / sssp.sigma[w];
            for &(v, e) in g.neighbors(w) {
                if sssp.dist[v] + 1 == dw {
                    let c = sssp.sigma[v] * carried;
                    scores[e] += c;
                    delta[v] += c;
                }
            }
        }
    }
    scores.iter_mut().for_each(|s| *s *= 0.5);
    Ok(EdgeScores::new(scores, StrategyTag::Uniform))
}

/// Path weights used by [`scores_brute_force`].
#[derive(Debug, Clone, Copy)]
pub enum Weighting<'a> {
    SinglePath,
    Uniform,
    /// Each enumerated path gets the product of its arcs' split fractions
    /// under the strategy's pair flow.
    Strategy(&'a PathStrategy),
}

/// Literal evaluation of the extended score by enumerating every shortest
/// path of every pair.
pub fn scores_brute_force(
    g: &Graph,
    apsp: &ApspResult,
    weighting: Weighting<'_>,
) -> Result<EdgeScores> {
    g.require_connected()?;
    if apsp.total_paths() > ORACLE_PATH_CAP as f64 {
        return Err(Error::CapExceeded {
            cap: ORACLE_PATH_CAP,
        });
    }
    let n = g.n();
    let mut scores = vec![0.0; g.edge_count()];
    for u in 0..n {
        for v in u + 1..n {
            let paths = enumerate_shortest_paths(apsp, u, v, ORACLE_PATH_CAP)?;
            let len = apsp.dist(u, v) as f64;
            for (q, path) in paths.iter().enumerate() {
                let weight = match weighting {
                    Weighting::Uniform => 1.0 / paths.len() as f64,
                    // the enumeration order matches the smallest-predecessor walk
                    Weighting::SinglePath => {
                        if q == 0 {
                            1.0
                        } else {
                            0.0
                        }
                    }
                    Weighting::Strategy(strat) => strat.path_weight(u, v, path)?,
                };
                if weight == 0.0 {
                    continue;
                }
                for step in path.windows(2) {
                    scores[edge_between(g, step[0], step[1])] += len * weight;
                }
            }
        }
    }
    Ok(EdgeScores::new(scores, StrategyTag::BruteForce))
}

/// A caller-chosen connection path with its weight.
#[derive(Debug, Clone, PartialEq)]
pub struct RoutedPath {
    pub vertices: Vec<usize>,
    pub weight: f64,
}

/// Scores from arbitrary caller-supplied paths.
///
/// Paths need not be shortest; each contributes `weight · length` to every
/// edge it uses. The caller is responsible for supplying each unordered pair
/// once and for weights of a pair summing to 1; the bound is only guaranteed
/// under those conditions.
pub fn scores_from_paths(g: &Graph, paths: &[RoutedPath]) -> Result<EdgeScores> {
    let mut scores = vec![0.0; g.edge_count()];
    for p in paths {
        if p.vertices.len() < 2 || p.weight < 0.0 {
            return Err(Error::InvalidParameter(
                "a routed path needs 2+ vertices and nonnegative weight".into(),
            ));
        }
        let len = (p.vertices.len() - 1) as f64;
        for step in p.vertices.windows(2) {
            let e = g.edge_id(step[0], step[1]).ok_or_else(|| {
                Error::InvalidParameter(format!("({}, {}) is not an edge", step[0], step[1]))
            })?;
            scores[e] += len * p.weight;
        }
    }
    Ok(EdgeScores::new(scores, StrategyTag::External))
}
