//! End-to-end reports: every bound for one graph, the closed-form
//! comparison table for the standard families, and random-ensemble trials.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{lu_bound, mohar_bound};
use crate::error::{Error, Result};
use crate::graph::{generate, Graph, GraphFamily};
use crate::paths::{apsp, ApspResult};
use crate::scores::{cgs_bound, scores_brute_force, scores_single_path, scores_uniform, EdgeScores, Weighting};
use crate::spectral::{eigen_lambda2, laplacian};
use crate::strategy::{optimize_strategy, OptimizedStrategy, OptimizerOptions};

/// Strategies a report can evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    SinglePath,
    Uniform,
    Optimized,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::SinglePath, Strategy::Uniform, Strategy::Optimized];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::SinglePath => "single_path",
            Strategy::Uniform => "uniform",
            Strategy::Optimized => "optimized",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single_path" | "single" => Ok(Strategy::SinglePath),
            "uniform" => Ok(Strategy::Uniform),
            "optimized" | "opt" => Ok(Strategy::Optimized),
            other => Err(Error::InvalidParameter(format!("unknown strategy `{other}`"))),
        }
    }
}

/// Every bound for one graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: usize,
    pub edge_count: usize,
    pub diameter: usize,
    pub lambda2: f64,
    pub mohar_bound: f64,
    pub lu_bound: f64,
    pub cgs_single_path_bound: Option<f64>,
    pub cgs_uniform_bound: Option<f64>,
    pub cgs_optimized_bound: Option<f64>,
    /// Edge with the largest score under the first computed strategy
    /// (single path, then uniform, then optimized).
    pub argmax_edge: usize,
    pub optimizer_converged: Option<bool>,
}

impl BoundsReport {
    /// Computed connection-graph-stability bounds, in strategy order.
    pub fn cgs_bounds(&self) -> Vec<(Strategy, f64)> {
        [
            (Strategy::SinglePath, self.cgs_single_path_bound),
            (Strategy::Uniform, self.cgs_uniform_bound),
            (Strategy::Optimized, self.cgs_optimized_bound),
        ]
        .into_iter()
        .filter_map(|(s, b)| b.map(|b| (s, b)))
        .collect()
    }

    /// Violated bound orderings; empty when every guarantee holds.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, b) in [("mohar", self.mohar_bound), ("lu", self.lu_bound)] {
            if b > self.lambda2 + 1e-9 {
                out.push(format!("{name} bound {b} exceeds lambda2 {}", self.lambda2));
            }
        }
        for (s, b) in self.cgs_bounds() {
            if b > self.lambda2 + 1e-9 {
                out.push(format!("{s} bound {b} exceeds lambda2 {}", self.lambda2));
            }
        }
        if let Some(single) = self.cgs_single_path_bound {
            if single < self.mohar_bound - 1e-12 {
                out.push(format!("single_path bound {single} below mohar {}", self.mohar_bound));
            }
            if single < self.lu_bound - 1e-12 {
                out.push(format!("single_path bound {single} below lu {}", self.lu_bound));
            }
        }
        if let Some(opt) = self.cgs_optimized_bound {
            for (s, b) in self.cgs_bounds() {
                if opt < b * (1.0 - 1e-9) {
                    out.push(format!("optimized bound {opt} below {s} bound {b}"));
                }
            }
        }
        out
    }
}

/// A report together with the scores behind it.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub report: BoundsReport,
    pub single_path: Option<EdgeScores>,
    pub uniform: Option<EdgeScores>,
    pub optimized: Option<OptimizedStrategy>,
}

impl Analysis {
    pub fn scores(&self, s: Strategy) -> Option<&EdgeScores> {
        match s {
            Strategy::SinglePath => self.single_path.as_ref(),
            Strategy::Uniform => self.uniform.as_ref(),
            Strategy::Optimized => self.optimized.as_ref().map(|o| &o.scores),
        }
    }
}

/// Computes λ₂, the classical bounds and the requested strategy bounds.
pub fn analyze(g: &Graph, strategies: &[Strategy], opts: OptimizerOptions) -> Result<Analysis> {
    g.require_connected()?;
    let paths = apsp(g)?;
    analyze_with(g, &paths, strategies, opts)
}

pub fn analyze_with(
    g: &Graph,
    paths: &ApspResult,
    strategies: &[Strategy],
    opts: OptimizerOptions,
) -> Result<Analysis> {
    let spectrum = eigen_lambda2(&laplacian(g))?;
    let wants = |s| strategies.contains(&s);
    let single_path = wants(Strategy::SinglePath)
        .then(|| scores_single_path(g, paths))
        .transpose()?;
    let uniform = wants(Strategy::Uniform)
        .then(|| scores_uniform(g, paths))
        .transpose()?;
    let optimized = wants(Strategy::Optimized)
        .then(|| optimize_strategy(g, paths, opts))
        .transpose()?;

    let bound_of = |s: Option<&EdgeScores>| s.map(|s| cgs_bound(g, s)).transpose();
    let single_b = bound_of(single_path.as_ref())?;
    let uniform_b = bound_of(uniform.as_ref())?;
    let opt_b = bound_of(optimized.as_ref().map(|o| &o.scores))?;
    let argmax_edge = single_b
        .or(uniform_b)
        .or(opt_b)
        .map_or(0, |b| b.argmax_edge);

    let report = BoundsReport {
        n: g.n(),
        edge_count: g.edge_count(),
        diameter: paths.diameter,
        lambda2: spectrum.lambda2(),
        mohar_bound: mohar_bound(g.n(), paths.diameter),
        lu_bound: lu_bound(g.n(), g.edge_count(), paths.diameter)?,
        cgs_single_path_bound: single_b.map(|b| b.bound),
        cgs_uniform_bound: uniform_b.map(|b| b.bound),
        cgs_optimized_bound: opt_b.map(|b| b.bound),
        argmax_edge,
        optimizer_converged: optimized.as_ref().map(|o| o.converged),
    };
    Ok(Analysis {
        report,
        single_path,
        uniform,
        optimized,
    })
}

/// Closed-form values a table row is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub lambda2: f64,
    pub mohar: f64,
    pub lu: f64,
    pub cgs: f64,
}

/// One row of the standard-family comparison table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub graph: String,
    pub n: usize,
    pub computed: ClosedForm,
    pub expected: ClosedForm,
    /// Closed-form `n / C_max` as tabulated, when it differs from the
    /// enumerated value.
    pub tabulated_cgs: Option<f64>,
    pub matches: bool,
    pub note: Option<String>,
}

/// Agreement threshold between computed and closed-form values.
pub const TABLE_TOL: f64 = 1e-8;

/// Rows for complete(10), path(10), cycle(9), star(10) and Petersen.
pub fn table1() -> Result<Vec<Table1Row>> {
    let nf = 10.0_f64;
    let mut rows = Vec::new();

    // complete: λ₂ = n, Mohar 4/n, Lu n, bound n
    rows.push(row(
        GraphFamily::Complete { n: 10 },
        "complete",
        ClosedForm {
            lambda2: nf,
            mohar: 4.0 / nf,
            lu: nf,
            cgs: nf,
        },
        None,
        None,
    )?);

    // even path: Mohar 4/(n(n−1)), Lu 2n/(2 + (n−2)(n−1)²), bound 8/n²
    rows.push(row(
        GraphFamily::Path { n: 10 },
        "path",
        ClosedForm {
            lambda2: 2.0 * (1.0 - (PI / nf).cos()),
            mohar: 4.0 / (nf * (nf - 1.0)),
            lu: 2.0 * nf / (2.0 + (nf - 2.0) * (nf - 1.0).powi(2)),
            cgs: 8.0 / (nf * nf),
        },
        None,
        None,
    )?);

    // odd cycle: the bound column is checked against path enumeration
    let c = 9.0_f64;
    let cycle = generate(GraphFamily::Cycle { n: 9 })?;
    let cycle_paths = apsp(&cycle)?;
    let enumerated = scores_brute_force(&cycle, &cycle_paths, Weighting::SinglePath)?;
    let tabulated = 24.0 * c / (c * c - 1.0);
    rows.push(row(
        GraphFamily::Cycle { n: 9 },
        "cycle",
        ClosedForm {
            lambda2: 2.0 * (1.0 - (2.0 * PI / c).cos()),
            mohar: 8.0 / (c * (c - 1.0)),
            lu: 2.0 * c / (2.0 + c * (c - 1.0) * ((c - 3.0) / 2.0)),
            cgs: c / enumerated.cmax(),
        },
        Some(tabulated),
        Some(format!(
            "tabulated 24n/(n^2-1) = {} exceeds lambda2; enumeration gives C_max = {} and bound 24/(n^2-1)",
            crate::format_real(tabulated),
            crate::format_real(enumerated.cmax())
        )),
    )?);

    // star: λ₂ = 1, Mohar 2/n, Lu n/(1 + (n−2)(n−1)), bound n/(2n−3)
    rows.push(row(
        GraphFamily::Star { n: 10 },
        "star",
        ClosedForm {
            lambda2: 1.0,
            mohar: 2.0 / nf,
            lu: nf / (1.0 + (nf - 2.0) * (nf - 1.0)),
            cgs: nf / (2.0 * nf - 3.0),
        },
        None,
        None,
    )?);

    // Petersen: tabulated to three figures as 2, 0.2, 0.164, 1.11
    rows.push(row(
        GraphFamily::Petersen,
        "petersen",
        ClosedForm {
            lambda2: 2.0,
            mohar: 0.2,
            lu: 20.0 / 122.0,
            cgs: 10.0 / 9.0,
        },
        None,
        None,
    )?);
    Ok(rows)
}

fn row(
    family: GraphFamily,
    name: &str,
    expected: ClosedForm,
    tabulated_cgs: Option<f64>,
    note: Option<String>,
) -> Result<Table1Row> {
    let g = generate(family)?;
    let a = analyze(&g, &[Strategy::SinglePath], OptimizerOptions::default())?;
    let r = &a.report;
    let computed = ClosedForm {
        lambda2: r.lambda2,
        mohar: r.mohar_bound,
        lu: r.lu_bound,
        cgs: r.cgs_single_path_bound.expect("single path requested"),
    };
    let close = |x: f64, y: f64| (x - y).abs() <= TABLE_TOL;
    let matches = close(computed.lambda2, expected.lambda2)
        && close(computed.mohar, expected.mohar)
        && close(computed.lu, expected.lu)
        && close(computed.cgs, expected.cgs);
    Ok(Table1Row {
        graph: name.to_string(),
        n: g.n(),
        computed,
        expected,
        tabulated_cgs,
        matches,
        note,
    })
}

/// One random-ensemble trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub lambda2: f64,
    pub mohar: f64,
    pub lu: f64,
    pub cgs_single: f64,
    pub cgs_uniform: f64,
    pub cgs_opt: f64,
}

impl BenchRow {
    pub const HEADER: &'static str = "n,p,seed,lambda2,mohar,lu,cgs_single,cgs_uniform,cgs_opt";
}

/// Ranges and trial count for a random-ensemble run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub p_min: f64,
    pub p_max: f64,
    pub trials: usize,
    pub seed: u64,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.n_min < 2 || self.n_min > self.n_max {
            return Err(Error::InvalidParameter(format!(
                "invalid n range {}..{}",
                self.n_min, self.n_max
            )));
        }
        if !(self.p_min > 0.0 && self.p_min <= self.p_max && self.p_max <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "invalid p range {}..{}",
                self.p_min, self.p_max
            )));
        }
        Ok(())
    }

    /// `(n, p, seed)` for every trial, determined by the config alone.
    pub fn plan(&self) -> Result<Vec<(usize, f64, u64)>> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        Ok((0..self.trials)
            .map(|t| {
                let n = rng.gen_range(self.n_min..=self.n_max);
                let p = if self.p_min == self.p_max {
                    self.p_min
                } else {
                    rng.gen_range(self.p_min..=self.p_max)
                };
                (n, p, self.seed.wrapping_add(t as u64))
            })
            .collect())
    }
}

/// Samples a connected G(n, p) and computes every bound for it.
pub fn bench_trial(n: usize, p: f64, seed: u64, opts: OptimizerOptions) -> Result<(BenchRow, BoundsReport)> {
    let g = generate(GraphFamily::ErdosRenyi { n, p, seed })?;
    let a = analyze(&g, &Strategy::ALL, opts)?;
    let r = a.report;
    let row = BenchRow {
        n,
        p,
        seed,
        lambda2: r.lambda2,
        mohar: r.mohar_bound,
        lu: r.lu_bound,
        cgs_single: r.cgs_single_path_bound.expect("requested"),
        cgs_uniform: r.cgs_uniform_bound.expect("requested"),
        cgs_opt: r.cgs_optimized_bound.expect("requested"),
    };
    Ok((row, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategy_names_round_trip() {
        for s in Strategy::ALL {
            assert_eq!(s.name().parse::<Strategy>().unwrap(), s);
        }
        assert!("greedy".parse::<Strategy>().is_err());
    }

    #[test]
    fn petersen_report() {
        let g = generate(GraphFamily::Petersen).unwrap();
        let a = analyze(&g, &Strategy::ALL, OptimizerOptions::default()).unwrap();
        let r = &a.report;
        assert!((r.lambda2 - 2.0).abs() < 1e-10);
        assert_eq!(r.mohar_bound, 0.2);
        assert!((r.lu_bound - 0.16393442622950818).abs() < 1e-15);
        assert!((r.cgs_single_path_bound.unwrap() - 10.0 / 9.0).abs() < 1e-12);
        assert!(r.violations().is_empty());
    }

    #[test]
    fn subset_of_strategies() {
        let g = generate(GraphFamily::Star { n: 10 }).unwrap();
        let a = analyze(&g, &[Strategy::Uniform], OptimizerOptions::default()).unwrap();
        assert_eq!(a.report.cgs_single_path_bound, None);
        assert_eq!(a.report.cgs_uniform_bound, Some(10.0 / 17.0));
        assert_eq!(a.report.optimizer_converged, None);
        assert_eq!(a.report.cgs_bounds(), vec![(Strategy::Uniform, 10.0 / 17.0)]);
    }

    #[test]
    fn disconnected_graph_is_refused() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            analyze(&g, &Strategy::ALL, OptimizerOptions::default()),
            Err(Error::NotConnected { .. })
        ));
    }

    #[test]
    fn bench_plan_is_deterministic() {
        let cfg = BenchConfig {
            n_min: 4,
            n_max: 12,
            p_min: 0.2,
            p_max: 0.8,
            trials: 20,
            seed: 9,
        };
        let a = cfg.plan().unwrap();
        assert_eq!(a, cfg.plan().unwrap());
        assert!(a.iter().all(|&(n, p, _)| (4..=12).contains(&n) && (0.2..=0.8).contains(&p)));
        let bad = BenchConfig { trials: 0, ..cfg };
        assert!(bad.plan().is_err());
    }

    #[test]
    fn k2_trial() {
        let (row, _) = bench_trial(2, 0.5, 1, OptimizerOptions::default()).unwrap();
        assert!((row.lambda2 - 2.0).abs() < 1e-12);
        assert_eq!(row.cgs_single, 2.0);
        assert_eq!(row.cgs_opt, 2.0);
    }

    #[test]
    fn complete_trial() {
        let (row, _) = bench_trial(8, 1.0, 4, OptimizerOptions::default()).unwrap();
        for x in [row.lambda2, row.lu, row.cgs_single, row.cgs_uniform, row.cgs_opt] {
            assert!((x - 8.0).abs() < 1e-9, "{row:?}");
        }
    }
}
