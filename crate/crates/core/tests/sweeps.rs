//! Exhaustive sweeps over all labeled graphs on six vertices.

use graphdepth::graph::{ordered_matching_number, Graph};
use graphdepth::graph_ideals::{cover_ideal, cover_ideal_via_dual, edge_ideal};
use graphdepth::harness::{enumerate_graphs, GraphFilter};
use graphdepth::homology::{hochster_reg_edge_ideal, homological_invariants};
use rayon::prelude::*;

fn six() -> Vec<Graph> {
    enumerate_graphs(6, GraphFilter::with_edges()).unwrap()
}

#[test]
fn cover_ideal_routes_agree() {
    six().par_iter().for_each(|g| {
        assert_eq!(cover_ideal(g), cover_ideal_via_dual(g), "{g}");
    });
}

#[test]
fn regularity_routes_agree_and_respect_the_matching_bound() {
    six().par_iter().for_each(|g| {
        let reg = homological_invariants(&edge_ideal(g)).unwrap().reg_quotient;
        assert_eq!(reg, hochster_reg_edge_ideal(g).unwrap() as i64, "{g}");
        assert!(reg <= ordered_matching_number(g) as i64, "{g}");
    });
}
