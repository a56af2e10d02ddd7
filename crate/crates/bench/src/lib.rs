//! Fixtures shared by the criterion benchmarks.

use cgsbound::{apsp, generate, ApspResult, Graph, GraphFamily};

/// A connected G(n, p) sample together with its all-pairs shortest paths.
pub fn fixture(n: usize, p: f64, seed: u64) -> (Graph, ApspResult) {
    let g = generate(GraphFamily::ErdosRenyi { n, p, seed }).expect("connected sample");
    let a = apsp(&g).expect("connected graph");
    (g, a)
}

/// Sizes benchmarked for the polynomial-time routines.
pub const SIZES: [usize; 3] = [16, 32, 64];
