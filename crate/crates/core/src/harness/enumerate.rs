use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count accepted by [`enumerate_graphs`] (2^15 labeled
/// graphs at `n = 6`).
pub const ENUMERATE_MAX_N: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GraphFilter {
    pub bipartite: bool,
    pub connected: bool,
    pub min_edges: usize,
}

impl GraphFilter {
    /// Graphs with at least one edge.
    pub fn with_edges() -> Self {
        GraphFilter {
            min_edges: 1,
            ..Default::default()
        }
    }

    pub fn bipartite(mut self) -> Self {
        self.bipartite = true;
        self
    }

    pub fn accepts(&self, g: &Graph) -> bool {
        g.edge_count() >= self.min_edges
            && (!self.bipartite || g.is_bipartite())
            && (!self.connected || g.is_connected())
    }
}

/// All labeled graphs on `n` vertices passing `filter`. Graph number `m`
/// has edge `e` (in the order `(0,1), (0,2), .., (n-2,n-1)`) iff bit `e` of
/// `m` is set; output follows `m`.
pub fn enumerate_graphs(n: usize, filter: GraphFilter) -> Result<Vec<Graph>> {
    if n > ENUMERATE_MAX_N {
        return Err(Error::input(format!(
            "enumeration supports n ≤ {ENUMERATE_MAX_N}, got {n}"
        )));
    }
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << slots.len() {
        let edges: Vec<(usize, usize)> = slots
            .iter()
            .enumerate()
            .filter(|(e, _)| mask >> e & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let g = Graph::from_edges(n, &edges)?;
        if filter.accepts(&g) {
            out.push(g);
        }
    }
    Ok(out)
}

/// Every graph with an edge on `2..=n_max` vertices, smallest first.
pub fn enumerate_up_to(n_max: usize, filter: GraphFilter) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        out.extend(enumerate_graphs(n, filter)?);
    }
    Ok(out)
}
