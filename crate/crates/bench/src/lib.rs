//! Shared fixtures for the benchmarks.

use ctqw_core::{disjoint_union, generate, join, Family, Graph};

/// Erdős–Rényi graph on `n` vertices with `p = 0.3`.
pub fn random_graph(n: usize, seed: u64) -> Graph {
    generate(&Family::ErdosRenyi { n, p: 0.3, seed }).expect("valid family")
}

/// `(K_a ⊔ E_b) ∨ ER(c)`, a graph whose twin partition has a few large
/// blocks and one generic block.
pub fn layered_graph(a: usize, b: usize, c: usize, seed: u64) -> Graph {
    let left = disjoint_union(
        &generate(&Family::Complete(a)).expect("valid family"),
        &Graph::edgeless(b),
    );
    join(&left, &random_graph(c, seed))
}
