//! Lower bounds on the algebraic connectivity of simple connected graphs.
//!
//! The central quantity is the connection-graph-stability score of an edge:
//! the total length of the shortest connection paths routed across it. With
//! `C_max` the largest score, `λ₂ ≥ n / C_max`, and the bound holds for any
//! way of splitting a pair's routing across its shortest paths. The crate
//! computes these scores (single path, uniform split, optimized split),
//! exact λ₂ by dense Jacobi, and the classical Mohar and Lu bounds that the
//! score bound dominates.

pub mod bounds;
pub mod error;
pub mod graph;
mod lp;
pub mod paths;
pub mod report;
pub mod scores;
pub mod spectral;
pub mod strategy;

pub use bounds::{lu_bound, mohar_bound};
pub use error::{Error, Result};
pub use graph::{generate, parse_edge_list, Graph, GraphFamily};
pub use paths::{apsp, bfs_sssp, enumerate_shortest_paths, sigma_exact, ApspResult, SsspResult};
pub use report::{analyze, table1, Analysis, BenchConfig, BenchRow, BoundsReport, Strategy, Table1Row};
pub use scores::{
    cgs_bound, scores_brute_force, scores_from_paths, scores_single_path, scores_uniform, CgsBound,
    EdgeScores, RoutedPath, StrategyTag, Weighting,
};
pub use spectral::{eigen_lambda2, fiedler_quotient, laplacian, LaplacianMatrix, Spectrum};
pub use strategy::{
    lp_oracle_small, optimize_strategy, strategy_scores, OptimizedStrategy, OptimizerOptions,
    PathStrategy,
};

/// Formats a real at 12 significant digits with the shortest text that
/// round-trips the rounded value.
pub fn format_real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("valid float");
    format!("{rounded}")
}
