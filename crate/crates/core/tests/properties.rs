use graphdepth::decomp::{
    colon_transform, construct_cover, construct_cover_power, verify_decomposition, ModuleKind,
};
use graphdepth::graph::{
    matching_number, minimal_vertex_covers, ordered_matching_number, Graph,
};
use graphdepth::graph_ideals::{cover_ideal, symbolic_power_cover, GraphIdealContext};
use graphdepth::harness::{enumerate_graphs, GraphFilter};
use graphdepth::homology::homological_invariants;
use graphdepth::sdepth::{sdepth_exact, DEFAULT_BUDGET};
use proptest::prelude::*;

fn graph_from_mask(n: usize, mask: u32) -> Graph {
    let mut g = Graph::new(n).unwrap();
    let mut e = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> (e % 32) & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
            e += 1;
        }
    }
    g
}

fn graphs(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, any::<u32>())
        .prop_map(|(n, m)| graph_from_mask(n, m))
        .prop_filter("needs an edge", |g| g.edge_count() > 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ordered_matching_bounds(g in graphs(8)) {
        let nu = ordered_matching_number(&g);
        prop_assert!(nu >= 1);
        prop_assert!(nu <= matching_number(&g));
        for v in g.non_isolated() {
            let (h, _) = g.remove_closed_neighborhood(v).unwrap();
            prop_assert!(ordered_matching_number(&h) < nu);
        }
    }

    #[test]
    fn vertex_covers_match_cover_ideal(g in graphs(8)) {
        let covers = minimal_vertex_covers(&g);
        for c in &covers {
            prop_assert!(g.is_vertex_cover(*c));
            prop_assert!(covers.iter().all(|d| d == c || !d.is_subset(*c)));
        }
        let j = cover_ideal(&g);
        let mut from_ideal: Vec<_> = j.generators().iter().map(|m| m.support()).collect();
        let mut want = covers.clone();
        from_ideal.sort_by_key(|s| s.bits());
        want.sort_by_key(|s| s.bits());
        prop_assert_eq!(from_ideal, want);
    }

    #[test]
    fn cover_construction_is_verified(g in graphs(7)) {
        let n = g.n();
        let nu = ordered_matching_number(&g);
        for (kind, bound) in [(ModuleKind::Ideal, n - nu), (ModuleKind::Quotient, n - nu - 1)] {
            let d = construct_cover(&g, kind).unwrap();
            prop_assert_eq!(verify_decomposition(&d).unwrap(), Ok(()));
            prop_assert!(d.sdepth().unwrap() >= bound);
        }
    }

    #[test]
    fn powers_lie_in_symbolic_powers(g in graphs(5), k in 1u32..=3) {
        let p = cover_ideal(&g).power(k).unwrap();
        let s = symbolic_power_cover(&g, k).unwrap();
        prop_assert!(p.is_subset_of(&s).unwrap());
        if g.is_bipartite() {
            prop_assert_eq!(p, s);
        }
    }
}

#[test]
fn colon_chain_maps_power_onto_lower_power() {
    for n in 2..=4 {
        for g in enumerate_graphs(n, GraphFilter::with_edges().bipartite()).unwrap() {
            let u = GraphIdealContext::new(g.clone()).u_full.unwrap();
            for k in 2..=3u32 {
                for kind in [ModuleKind::Ideal, ModuleKind::Quotient] {
                    let mut d = construct_cover_power(&g, k, kind).unwrap();
                    let mut min = d.sdepth().unwrap();
                    for v in u.support() {
                        d = colon_transform(&d, v).unwrap();
                        assert_eq!(verify_decomposition(&d).unwrap(), Ok(()), "{g} k={k}");
                        let m = d.sdepth().unwrap();
                        assert!(m >= min);
                        min = m;
                    }
                    assert_eq!(d.module.ideal, cover_ideal(&g).power(k - 1).unwrap(), "{g} k={k}");
                }
            }
        }
    }
}

#[test]
fn exact_sdepth_is_non_increasing_in_the_power() {
    for n in 2..=4 {
        for g in enumerate_graphs(n, GraphFilter::with_edges().bipartite()).unwrap() {
            for kind in [ModuleKind::Ideal, ModuleKind::Quotient] {
                let vals: Vec<usize> = (1..=3)
                    .map(|k| {
                        let jk = cover_ideal(&g).power(k).unwrap();
                        let out = sdepth_exact(&jk, kind, DEFAULT_BUDGET, None).unwrap();
                        let built = construct_cover_power(&g, k, kind).unwrap().sdepth().unwrap();
                        assert!(out.lower >= built, "{g} k={k} {kind}");
                        out.exact().expect("small cases finish within budget")
                    })
                    .collect();
                assert!(vals.windows(2).all(|w| w[0] >= w[1]), "{g} {kind}: {vals:?}");
            }
        }
    }
}

#[test]
fn cover_depth_bound_on_six_vertices() {
    use rayon::prelude::*;
    let all = enumerate_graphs(6, GraphFilter::with_edges()).unwrap();
    all.par_iter().for_each(|g| {
        let nu = ordered_matching_number(g);
        let depth = homological_invariants(&cover_ideal(g)).unwrap().depth_quotient;
        assert!(depth + nu + 1 >= 6, "{g}");
    });
}
