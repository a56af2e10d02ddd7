//! Path weighting strategies as unit flows on shortest-path DAGs, and the
//! search for a strategy with a small maximum edge score.
//!
//! A pair's weights over its shortest paths are stored as the unit flow they
//! induce on the pair's DAG. Any such flow decomposes back into weighted
//! shortest paths, so the two views give the same edge scores while flows
//! stay polynomial in size.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lp;
use crate::paths::{enumerate_shortest_paths, ApspResult};
use crate::scores::{EdgeScores, StrategyTag, ORACLE_PATH_CAP};

/// Tolerance on flow conservation and flow bounds.
pub const FLOW_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DagArc {
    pub edge: usize,
    pub from: usize,
    pub to: usize,
    pub flow: f64,
}

/// Unit flow from `u` to `v` over the arcs of their shortest-path DAG.
#[derive(Debug, Clone, PartialEq)]
pub struct PairFlow {
    pub u: usize,
    pub v: usize,
    pub dist: usize,
    /// Sorted by distance of `from` from `u`, then `from`, then `to`.
    pub arcs: Vec<DagArc>,
}

impl PairFlow {
    fn arc_flow(&self, from: usize, to: usize) -> Option<f64> {
        self.arcs
            .iter()
            .find(|a| a.from == from && a.to == to)
            .map(|a| a.flow)
    }

    fn out_flow(&self, x: usize) -> f64 {
        self.arcs.iter().filter(|a| a.from == x).map(|a| a.flow).sum()
    }

    /// Worst conservation violation and the vertex where it occurs.
    fn imbalance(&self) -> (usize, f64) {
        let mut worst = (self.u, 0.0);
        let mut net: Vec<(usize, f64)> = Vec::new();
        let mut add = |x: usize, f: f64| match net.iter_mut().find(|(y, _)| *y == x) {
            Some(slot) => slot.1 += f,
            None => net.push((x, f)),
        };
        add(self.u, -1.0);
        add(self.v, 1.0);
        for a in &self.arcs {
            add(a.from, a.flow);
            add(a.to, -a.flow);
        }
        for (x, f) in net {
            if f.abs() > worst.1 {
                worst = (x, f.abs());
            }
        }
        for a in &self.arcs {
            let excess = (-a.flow).max(a.flow - 1.0);
            if excess > worst.1 {
                worst = (a.from, excess);
            }
        }
        worst
    }
}

/// A path weighting strategy for every unordered vertex pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PathStrategy {
    n: usize,
    pairs: Vec<PairFlow>,
    tag: StrategyTag,
}

fn pair_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// Arcs of the `u`→`v` shortest-path DAG with zero flow.
fn dag_arcs(g: &Graph, apsp: &ApspResult, u: usize, v: usize) -> Vec<DagArc> {
    let du = &apsp.from(u).dist;
    let dv = &apsp.from(v).dist;
    let d = du[v];
    let mut arcs = Vec::new();
    for &(x, y) in g.edges() {
        for (from, to) in [(x, y), (y, x)] {
            if du[from] + 1 == du[to] && du[from] + dv[from] == d && du[to] + dv[to] == d {
                arcs.push(DagArc {
                    edge: g.edge_id(from, to).expect("edge"),
                    from,
                    to,
                    flow: 0.0,
                });
            }
        }
    }
    arcs.sort_by_key(|a| (du[a.from], a.from, a.to));
    arcs
}

impl PathStrategy {
    fn build<F>(g: &Graph, apsp: &ApspResult, tag: StrategyTag, mut fill: F) -> Self
    where
        F: FnMut(&mut PairFlow),
    {
        let n = g.n();
        let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                let mut pf = PairFlow {
                    u,
                    v,
                    dist: apsp.dist(u, v),
                    arcs: dag_arcs(g, apsp, u, v),
                };
                fill(&mut pf);
                pairs.push(pf);
            }
        }
        PathStrategy { n, pairs, tag }
    }

    /// Every shortest path of a pair weighted `1/σ`.
    pub fn uniform(g: &Graph, apsp: &ApspResult) -> Self {
        Self::build(g, apsp, StrategyTag::Uniform, |pf| {
            let su = &apsp.from(pf.u).sigma;
            let sv = &apsp.from(pf.v).sigma;
            let total = su[pf.v];
            for a in &mut pf.arcs {
                a.flow = su[a.from] * sv[a.to] / total;
            }
        })
    }

    /// The smallest-predecessor path of each pair carries all its weight.
    pub fn single_path(g: &Graph, apsp: &ApspResult) -> Self {
        Self::build(g, apsp, StrategyTag::SinglePath, |pf| {
            let preds = &apsp.from(pf.u).preds;
            let mut cur = pf.v;
            while cur != pf.u {
                let p = preds[cur][0];
                let arc = pf
                    .arcs
                    .iter_mut()
                    .find(|a| a.from == p && a.to == cur)
                    .expect("predecessor step is a DAG arc");
                arc.flow = 1.0;
                cur = p;
            }
        })
    }

    /// Builds a strategy from caller-supplied flows. `flow(u, v, arc)` is
    /// queried for every arc of every pair DAG; the result is validated.
    pub fn from_fn<F>(g: &Graph, apsp: &ApspResult, mut flow: F) -> Result<Self>
    where
        F: FnMut(usize, usize, &DagArc) -> f64,
    {
        let s = Self::build(g, apsp, StrategyTag::Optimized, |pf| {
            let (u, v) = (pf.u, pf.v);
            for a in &mut pf.arcs {
                a.flow = flow(u, v, a);
            }
        });
        s.validate()?;
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tag(&self) -> StrategyTag {
        self.tag
    }

    pub fn pairs(&self) -> &[PairFlow] {
        &self.pairs
    }

    pub fn pair(&self, u: usize, v: usize) -> &PairFlow {
        let (a, b) = (u.min(v), u.max(v));
        &self.pairs[pair_index(self.n, a, b)]
    }

    /// Largest conservation or bound violation over all pairs.
    pub fn max_imbalance(&self) -> f64 {
        self.pairs
            .iter()
            .map(|p| p.imbalance().1)
            .fold(0.0, f64::max)
    }

    /// Checks flow conservation and `0 ≤ flow ≤ 1` to [`FLOW_TOL`].
    pub fn validate(&self) -> Result<()> {
        for p in &self.pairs {
            let (vertex, imbalance) = p.imbalance();
            if imbalance > FLOW_TOL {
                return Err(Error::InvalidFlow {
                    u: p.u,
                    v: p.v,
                    vertex,
                    imbalance,
                });
            }
        }
        Ok(())
    }

    /// Weight of one shortest `u`–`v` path (a vertex sequence starting at
    /// `u`) in the path decomposition that splits flow at each vertex in
    /// proportion to its outgoing arcs.
    pub fn path_weight(&self, u: usize, v: usize, path: &[usize]) -> Result<f64> {
        let pf = self.pair(u, v);
        // orient the walk from the pair's lower endpoint
        let steps: Vec<usize> = if path.first() == Some(&pf.u) {
            path.to_vec()
        } else {
            path.iter().rev().copied().collect()
        };
        let mut w = 1.0;
        for s in steps.windows(2) {
            let f = pf.arc_flow(s[0], s[1]).ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "({}, {}) is not on a shortest {u}-{v} path",
                    s[0], s[1]
                ))
            })?;
            if f <= 0.0 {
                return Ok(0.0);
            }
            w *= f / pf.out_flow(s[0]);
        }
        Ok(w)
    }

    /// CSV with header `u,v,dag_edge_u,dag_edge_v,flow`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "u,v,dag_edge_u,dag_edge_v,flow")?;
        for p in &self.pairs {
            for a in &p.arcs {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    p.u,
                    p.v,
                    a.from,
                    a.to,
                    crate::format_real(a.flow)
                )?;
            }
        }
        Ok(())
    }
}

/// `C_e(α) = Σ_pairs d(u, v) · flow_uv(e)`.
pub fn strategy_scores(g: &Graph, apsp: &ApspResult, strat: &PathStrategy) -> Result<EdgeScores> {
    g.require_connected()?;
    if strat.n() != g.n() || apsp.n() != g.n() {
        return Err(Error::InvalidParameter(
            "strategy, shortest paths and graph disagree on vertex count".into(),
        ));
    }
    strat.validate()?;
    let mut scores = vec![0.0; g.edge_count()];
    for p in strat.pairs() {
        let d = p.dist as f64;
        for a in &p.arcs {
            scores[a.edge] += d * a.flow;
        }
    }
    Ok(EdgeScores::new(scores, strat.tag()))
}

/// Optimizer settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerOptions {
    /// Relative improvement of the best `C_max` below which a run of passes
    /// counts as converged.
    pub tol: f64,
    pub max_iters: usize,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        OptimizerOptions {
            tol: 1e-6,
            max_iters: 200,
        }
    }
}

/// Result of [`optimize_strategy`].
#[derive(Debug, Clone)]
pub struct OptimizedStrategy {
    pub strategy: PathStrategy,
    pub scores: EdgeScores,
    pub converged: bool,
    pub passes: usize,
    /// Best `C_max` after each pass, starting with the uniform strategy.
    pub history: Vec<f64>,
    /// Largest conservation violation seen over every iterate.
    pub max_imbalance: f64,
}

impl OptimizedStrategy {
    pub fn cmax(&self) -> f64 {
        self.scores.cmax()
    }
}

// Smoothing sharpness, as a multiple of 1 / C_max: grows geometrically
// from BETA_START to BETA_CAP.
const BETA_START: f64 = 5.0;
const BETA_GROWTH: f64 = 1.05;
const BETA_CAP: f64 = 2000.0;
const LINE_SEARCH_TRIES: usize = 40;
const CONVERGENCE_WINDOW: usize = 10;

/// Pair whose DAG offers a choice, with arcs in topological order.
struct FreePair {
    index: usize,
    dist: f64,
    nodes: usize,
    /// `(edge, from, to)` with local node ids; source is 0, sink is 1.
    arcs: Vec<(usize, usize, usize)>,
}

struct Search {
    free: Vec<FreePair>,
    base: Vec<f64>,
    scratch_f: Vec<f64>,
    scratch_b: Vec<f64>,
    scratch_in: Vec<f64>,
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

impl Search {
    fn new(g: &Graph, apsp: &ApspResult, start: &PathStrategy) -> Self {
        let mut base = vec![0.0; g.edge_count()];
        let mut free = Vec::new();
        for (index, p) in start.pairs().iter().enumerate() {
            if apsp.sigma(p.u, p.v) <= 1.0 {
                for a in &p.arcs {
                    base[a.edge] += p.dist as f64 * a.flow;
                }
                continue;
            }
            let mut local: Vec<(usize, usize)> = vec![(p.u, 0), (p.v, 1)];
            let id = |x: usize, local: &mut Vec<(usize, usize)>| {
                if let Some(&(_, l)) = local.iter().find(|(y, _)| *y == x) {
                    l
                } else {
                    local.push((x, local.len()));
                    local.len() - 1
                }
            };
            let arcs = p
                .arcs
                .iter()
                .map(|a| (a.edge, id(a.from, &mut local), id(a.to, &mut local)))
                .collect();
            free.push(FreePair {
                index,
                dist: p.dist as f64,
                nodes: local.len(),
                arcs,
            });
        }
        let widest = free.iter().map(|f| f.nodes).max().unwrap_or(0);
        Search {
            free,
            base,
            scratch_f: vec![0.0; widest],
            scratch_b: vec![0.0; widest],
            scratch_in: vec![0.0; widest],
        }
    }

    fn parameters(&self) -> usize {
        self.free.iter().map(|f| f.arcs.len()).sum()
    }

    /// Arc flows of the product-form weighting `exp(theta)` and the loads
    /// they induce. `flows` is laid out like `theta`.
    fn evaluate(&mut self, theta: &[f64], flows: &mut [f64], loads: &mut [f64]) {
        loads.copy_from_slice(&self.base);
        let mut offset = 0;
        for fp in &self.free {
            let k = fp.arcs.len();
            let th = &theta[offset..offset + k];
            let out = &mut self.scratch_f[..fp.nodes];
            let bw = &mut self.scratch_b[..fp.nodes];
            let inflow = &mut self.scratch_in[..fp.nodes];
            bw.iter_mut().for_each(|x| *x = f64::NEG_INFINITY);
            bw[1] = 0.0;
            for (i, &(_, from, to)) in fp.arcs.iter().enumerate().rev() {
                bw[from] = log_add(bw[from], bw[to] + th[i]);
            }
            // Split fractions at each vertex, renormalised so that pushing a
            // unit of flow forward conserves it to rounding.
            out.iter_mut().for_each(|x| *x = 0.0);
            let fl = &mut flows[offset..offset + k];
            for (i, &(_, from, to)) in fp.arcs.iter().enumerate() {
                fl[i] = (th[i] + bw[to] - bw[from]).exp();
                out[from] += fl[i];
            }
            inflow.iter_mut().for_each(|x| *x = 0.0);
            inflow[0] = 1.0;
            for (i, &(edge, from, to)) in fp.arcs.iter().enumerate() {
                let f = inflow[from] * fl[i] / out[from];
                fl[i] = f;
                inflow[to] += f;
                loads[edge] += fp.dist * f;
            }
            offset += k;
        }
    }

    /// Worst conservation violation of `flows`.
    fn imbalance(&self, flows: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        let mut net = vec![0.0; self.scratch_f.len()];
        let mut offset = 0;
        for fp in &self.free {
            let net = &mut net[..fp.nodes];
            net.iter_mut().for_each(|x| *x = 0.0);
            net[0] = -1.0;
            net[1] = 1.0;
            for (i, &(_, from, to)) in fp.arcs.iter().enumerate() {
                let f = flows[offset + i];
                net[from] += f;
                net[to] -= f;
                worst = worst.max(-f).max(f - 1.0);
            }
            worst = net.iter().fold(worst, |w, x| w.max(x.abs()));
            offset += fp.arcs.len();
        }
        worst
    }

    fn write_back(&self, flows: &[f64], strat: &mut PathStrategy) {
        let mut offset = 0;
        for fp in &self.free {
            let pair = &mut strat.pairs[fp.index];
            for (i, arc) in pair.arcs.iter_mut().enumerate() {
                arc.flow = flows[offset + i];
            }
            offset += fp.arcs.len();
        }
    }
}

fn max_of(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn smooth_max(loads: &[f64], beta: f64, top: f64) -> f64 {
    top + loads.iter().map(|&l| (beta * (l - top)).exp()).sum::<f64>().ln() / beta
}

/// Searches for a strategy with small `C_max(α)`.
///
/// Starts from the uniform strategy and runs exponentiated-gradient steps on
/// a log-sum-exp smoothing of the maximum edge load, sharpening the
/// smoothing every pass. Edges near the current maximum dominate the
/// gradient, so each pair shifts weight off its paths through heavily
/// loaded edges toward its least loaded alternatives. Strategies stay in
/// product form over DAG arcs, so every iterate is a feasible unit flow.
/// A step is accepted when it lowers the smoothed maximum; its length is
/// halved on rejection and grown by half on acceptance.
///
/// The best strategy seen is returned. It is never worse than the uniform
/// or the single-path strategy.
pub fn optimize_strategy(
    g: &Graph,
    apsp: &ApspResult,
    opts: OptimizerOptions,
) -> Result<OptimizedStrategy> {
    g.require_connected()?;
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {}",
            opts.tol
        )));
    }
    let uniform = PathStrategy::uniform(g, apsp);
    let mut search = Search::new(g, apsp, &uniform);
    let k = search.parameters();

    let mut theta = vec![0.0; k];
    let mut flows = vec![0.0; k];
    let mut loads = vec![0.0; g.edge_count()];
    search.evaluate(&theta, &mut flows, &mut loads);

    let mut max_imbalance = search.imbalance(&flows);
    let mut best_cmax = max_of(&loads);
    let mut best_flows = flows.clone();
    let mut history = vec![best_cmax];
    let mut converged = k == 0;
    let mut passes = 0;

    let mut trial_theta = vec![0.0; k];
    let mut trial_flows = vec![0.0; k];
    let mut trial_loads = vec![0.0; g.edge_count()];
    let mut grad = vec![0.0; g.edge_count()];
    let mut eta = 1.0;

    while !converged && passes < opts.max_iters {
        let sharpness = (BETA_START * BETA_GROWTH.powi(passes as i32)).min(BETA_CAP);
        passes += 1;
        let top = max_of(&loads);
        let beta = sharpness / top;
        let current = smooth_max(&loads, beta, top);
        let mut z = 0.0;
        for (gr, &l) in grad.iter_mut().zip(&loads) {
            *gr = (beta * (l - top)).exp();
            z += *gr;
        }
        grad.iter_mut().for_each(|x| *x /= z);

        for _ in 0..LINE_SEARCH_TRIES {
            let mut offset = 0;
            for fp in &search.free {
                for (i, &(edge, _, _)) in fp.arcs.iter().enumerate() {
                    trial_theta[offset + i] = theta[offset + i] - eta * fp.dist * grad[edge];
                }
                offset += fp.arcs.len();
            }
            search.evaluate(&trial_theta, &mut trial_flows, &mut trial_loads);
            let trial_top = max_of(&trial_loads);
            if smooth_max(&trial_loads, beta, trial_top) < current {
                std::mem::swap(&mut theta, &mut trial_theta);
                std::mem::swap(&mut flows, &mut trial_flows);
                std::mem::swap(&mut loads, &mut trial_loads);
                max_imbalance = max_imbalance.max(search.imbalance(&flows));
                if trial_top < best_cmax {
                    best_cmax = trial_top;
                    best_flows.copy_from_slice(&flows);
                }
                eta *= 1.5;
                break;
            }
            eta *= 0.5;
        }
        history.push(best_cmax);

        if sharpness >= BETA_CAP && history.len() > CONVERGENCE_WINDOW {
            let earlier = history[history.len() - 1 - CONVERGENCE_WINDOW];
            if (earlier - best_cmax) <= opts.tol * earlier {
                converged = true;
            }
        }
    }

    let mut strategy = uniform;
    search.write_back(&best_flows, &mut strategy);
    strategy.tag = StrategyTag::Optimized;

    let single = PathStrategy::single_path(g, apsp);
    let single_scores = strategy_scores(g, apsp, &single)?;
    if single_scores.cmax() < best_cmax {
        strategy = single;
        strategy.tag = StrategyTag::Optimized;
        if let Some(last) = history.last_mut() {
            *last = single_scores.cmax();
        }
    }
    let scores = strategy_scores(g, apsp, &strategy)?;
    Ok(OptimizedStrategy {
        strategy,
        scores,
        converged,
        passes,
        history,
        max_imbalance,
    })
}

/// Exact minimum of `C_max(α)` over all path weighting strategies, by
/// enumerating every shortest path and solving the min-max linear program
/// with a dense simplex. Limited to [`ORACLE_PATH_CAP`] paths in total.
pub fn lp_oracle_small(g: &Graph, apsp: &ApspResult) -> Result<f64> {
    g.require_connected()?;
    if apsp.total_paths() > ORACLE_PATH_CAP as f64 {
        return Err(Error::CapExceeded {
            cap: ORACLE_PATH_CAP,
        });
    }
    let n = g.n();
    let m = g.edge_count();
    let mut base = vec![0.0; m];
    // (pair row, length, edges) for every path of a pair with a choice
    let mut columns: Vec<(usize, f64, Vec<usize>)> = Vec::new();
    let mut free_pairs = 0;
    for u in 0..n {
        for v in u + 1..n {
            let paths = enumerate_shortest_paths(apsp, u, v, ORACLE_PATH_CAP)?;
            let d = apsp.dist(u, v) as f64;
            let edge_sets: Vec<Vec<usize>> = paths
                .iter()
                .map(|p| {
                    p.windows(2)
                        .map(|s| g.edge_id(s[0], s[1]).expect("edge"))
                        .collect()
                })
                .collect();
            if edge_sets.len() == 1 {
                for &e in &edge_sets[0] {
                    base[e] += d;
                }
            } else {
                for es in edge_sets {
                    columns.push((free_pairs, d, es));
                }
                free_pairs += 1;
            }
        }
    }
    if columns.is_empty() {
        return Ok(max_of(&base));
    }

    // Variables: path weights, then t, then one slack per edge.
    //   edge rows:  t − Σ d·α − s_e = base_e
    //   pair rows:  Σ α = 1
    let np = columns.len();
    let t_col = np;
    let nvars = np + 1 + m;
    let mut a = vec![vec![0.0; nvars]; m + free_pairs];
    let mut b = vec![0.0; m + free_pairs];
    for e in 0..m {
        a[e][t_col] = 1.0;
        a[e][t_col + 1 + e] = -1.0;
        b[e] = base[e];
    }
    for (j, (pair, d, edges)) in columns.iter().enumerate() {
        for &e in edges {
            a[e][j] -= d;
        }
        a[m + pair][j] = 1.0;
    }
    for r in 0..free_pairs {
        b[m + r] = 1.0;
    }
    let mut c = vec![0.0; nvars];
    c[t_col] = 1.0;
    let (value, _) = lp::minimize(&c, &a, &b)?;
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphFamily};
    use crate::paths::apsp;
    use crate::scores::scores_single_path;

    fn setup(f: GraphFamily) -> (Graph, ApspResult) {
        let g = generate(f).unwrap();
        let a = apsp(&g).unwrap();
        (g, a)
    }

    #[test]
    fn c4_uniform_flow() {
        let (g, a) = setup(GraphFamily::Cycle { n: 4 });
        let s = PathStrategy::uniform(&g, &a);
        assert_eq!(strategy_scores(&g, &a, &s).unwrap().scores, vec![3.0; 4]);
    }

    #[test]
    fn c4_clockwise_routing() {
        let (g, a) = setup(GraphFamily::Cycle { n: 4 });
        // antipodal pairs (0,2) via 1 and (1,3) via 2
        let s = PathStrategy::from_fn(&g, &a, |u, v, arc| match (u, v) {
            (0, 2) => f64::from(u8::from(arc.from == 1 || arc.to == 1)),
            (1, 3) => f64::from(u8::from(arc.from == 2 || arc.to == 2)),
            _ => 1.0,
        })
        .unwrap();
        let mut scores = strategy_scores(&g, &a, &s).unwrap().scores;
        // edges (0,1), (1,2), (2,3), (3,0): pair (0,2) loads (0,1),(1,2);
        // pair (1,3) loads (1,2),(2,3)
        assert_eq!(scores, vec![3.0, 5.0, 3.0, 1.0]);
        scores.sort_by(f64::total_cmp);
        assert_eq!(scores, vec![1.0, 3.0, 3.0, 5.0]);
    }

    #[test]
    fn c4_both_antipodal_pairs_share_an_edge() {
        let (g, a) = setup(GraphFamily::Cycle { n: 4 });
        // (0,2) via 1 and (1,3) via 0 both use edge (0,1)
        let s = PathStrategy::from_fn(&g, &a, |u, v, arc| match (u, v) {
            (0, 2) => f64::from(u8::from(arc.from == 1 || arc.to == 1)),
            (1, 3) => f64::from(u8::from(arc.from == 0 || arc.to == 0)),
            _ => 1.0,
        })
        .unwrap();
        let scores = strategy_scores(&g, &a, &s).unwrap().scores;
        // (0,1) gets 1 + 2 + 2, (1,2) gets 1 + 2, (3,0) gets 1 + 2, (2,3) gets 1
        assert_eq!(scores, vec![5.0, 3.0, 1.0, 3.0]);
    }

    #[test]
    fn invalid_flow_is_rejected() {
        let (g, a) = setup(GraphFamily::Cycle { n: 4 });
        let err = PathStrategy::from_fn(&g, &a, |u, v, _| if (u, v) == (0, 2) { 0.4 } else { 1.0 })
            .unwrap_err();
        assert!(matches!(err, Error::InvalidFlow { u: 0, v: 2, .. }), "{err:?}");
    }

    #[test]
    fn tree_has_one_strategy() {
        let (g, a) = setup(GraphFamily::Path { n: 6 });
        let u = strategy_scores(&g, &a, &PathStrategy::uniform(&g, &a)).unwrap();
        let s = scores_single_path(&g, &a).unwrap();
        assert_eq!(u.scores, s.scores);
        let opt = optimize_strategy(&g, &a, OptimizerOptions::default()).unwrap();
        assert_eq!(opt.scores.scores, s.scores);
        assert!(opt.converged);
    }

    #[test]
    fn optimizer_on_small_families() {
        let (g, a) = setup(GraphFamily::Cycle { n: 4 });
        let opt = optimize_strategy(&g, &a, OptimizerOptions::default()).unwrap();
        assert!((opt.cmax() - 3.0).abs() < 1e-9);
        for n in [3, 6, 9] {
            let (g, a) = setup(GraphFamily::Complete { n });
            let opt = optimize_strategy(&g, &a, OptimizerOptions::default()).unwrap();
            assert_eq!(opt.cmax(), 1.0);
        }
        let (g, a) = setup(GraphFamily::Cycle { n: 5 });
        let opt = optimize_strategy(&g, &a, OptimizerOptions::default()).unwrap();
        assert!((opt.cmax() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn optimizer_history_is_monotone() {
        let g = generate(GraphFamily::ErdosRenyi {
            n: 12,
            p: 0.3,
            seed: 3,
        })
        .unwrap();
        let a = apsp(&g).unwrap();
        let opt = optimize_strategy(&g, &a, OptimizerOptions::default()).unwrap();
        assert!(opt.history.windows(2).all(|w| w[1] <= w[0]));
        assert!(opt.max_imbalance <= FLOW_TOL);
        opt.strategy.validate().unwrap();
    }

    #[test]
    fn optimizer_rejects_bad_tolerance() {
        let (g, a) = setup(GraphFamily::Cycle { n: 4 });
        let opts = OptimizerOptions {
            tol: 0.0,
            max_iters: 10,
        };
        assert!(optimize_strategy(&g, &a, opts).is_err());
    }

    #[test]
    fn lp_oracle_examples() {
        let (g, a) = setup(GraphFamily::Cycle { n: 4 });
        assert!((lp_oracle_small(&g, &a).unwrap() - 3.0).abs() < 1e-9);
        // P5, edge (1,2): pairs {0,1} x {2,3,4} have lengths 2,3,4,1,2,3
        let (g, a) = setup(GraphFamily::Path { n: 5 });
        let single = scores_single_path(&g, &a).unwrap().cmax();
        assert_eq!(single, 15.0);
        assert_eq!(lp_oracle_small(&g, &a).unwrap(), single);
        let (g, a) = setup(GraphFamily::Complete { n: 4 });
        assert_eq!(lp_oracle_small(&g, &a).unwrap(), 1.0);
    }

    #[test]
    fn path_weights_decompose_flow() {
        let (g, a) = setup(GraphFamily::Cycle { n: 6 });
        let s = PathStrategy::uniform(&g, &a);
        let paths = enumerate_shortest_paths(&a, 0, 3, 10).unwrap();
        let w: Vec<f64> = paths
            .iter()
            .map(|p| s.path_weight(0, 3, p).unwrap())
            .collect();
        assert_eq!(w, vec![0.5, 0.5]);
    }

    #[test]
    fn strategy_csv_header() {
        let (g, a) = setup(GraphFamily::Path { n: 3 });
        let mut buf = Vec::new();
        PathStrategy::single_path(&g, &a).write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "u,v,dag_edge_u,dag_edge_v,flow\n0,1,0,1,1\n0,2,0,1,1\n0,2,1,2,1\n1,2,1,2,1\n"
        );
    }
}
