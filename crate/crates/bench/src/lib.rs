//! Shared fixtures for the benchmarks.

use reeb_core::digraph::ReebDigraph;

pub fn theta_chain() -> ReebDigraph {
    ReebDigraph::from_edges(
        &["a", "b", "c", "d"],
        &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "b", "c"), ("e4", "c", "d")],
    )
    .unwrap()
}

pub fn x_graph() -> ReebDigraph {
    ReebDigraph::from_edges(
        &["a", "b", "w", "c", "d"],
        &[("e1", "a", "w"), ("e2", "b", "w"), ("e3", "w", "c"), ("e4", "w", "d")],
    )
    .unwrap()
}
