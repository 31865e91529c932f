//! Multigraded Betti numbers through upper Koszul complexes, the invariants
//! derived from them (projective dimension, depth, regularity), and
//! Hochster's formula for edge ideals as an independent route.

mod betti;
mod complex;
pub mod linalg;

pub use betti::{
    betti_table, betti_table_cross_checked, betti_table_with, homological_invariants,
    homological_invariants_with, upper_koszul_complex, BettiConfig, BettiTable,
    HomologicalInvariants, DEFAULT_MULTIDEGREE_CAP,
};
pub(crate) use betti::{box_points, box_size};
pub use complex::{Field, SimplicialComplex};

use std::collections::BTreeMap;

use crate::bits::VarSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph_ideals::cover_ideal;

/// Independence complex of the subgraph induced on `sigma`.
pub fn induced_independence_complex(g: &Graph, sigma: VarSet) -> SimplicialComplex {
    SimplicialComplex::from_predicate(g.n(), sigma, |f| g.is_independent(f))
}

/// Squarefree Betti numbers of `S/I(G)` by Hochster's formula:
/// `β_{i,σ}(S/I(G)) = dim H̃_{|σ|-i-1}(Ind(G[σ]))`. Keys are `(i, σ)`.
pub fn hochster_betti_edge_quotient(g: &Graph, field: Field) -> Result<BTreeMap<(usize, VarSet), u64>> {
    let mut out = BTreeMap::new();
    for sigma in g.vertices().subsets() {
        let h = induced_independence_complex(g, sigma).reduced_homology(field)?;
        for (s, &r) in h.iter().enumerate() {
            // s = d + 1 with d the homological degree; i = |σ| - d - 1 = |σ| - s
            if r > 0 {
                out.insert((sigma.len() - s, sigma), r as u64);
            }
        }
    }
    Ok(out)
}

/// `reg(S/I(G))` as `max (|σ| - i)` over nonzero Hochster entries.
pub fn hochster_reg_edge_ideal(g: &Graph) -> Result<usize> {
    if g.edge_count() == 0 {
        return Err(Error::domain("edge ideal of an edgeless graph"));
    }
    let table = hochster_betti_edge_quotient(g, Field::Rationals)?;
    Ok(table
        .keys()
        .map(|(i, sigma)| sigma.len() - i)
        .max()
        .unwrap_or(0))
}

/// `depth(S/J(G)^k)` for `k = 1..=k_max`; each entry fails independently
/// when its multidegree box exceeds the cap.
pub fn depth_power_profile(
    g: &Graph,
    k_max: u32,
    cfg: &BettiConfig,
) -> Result<Vec<Result<usize>>> {
    if !g.is_bipartite() {
        return Err(Error::domain("depth profile is defined for bipartite graphs"));
    }
    if g.edge_count() == 0 {
        return Err(Error::domain("graph has no edges"));
    }
    let j = cover_ideal(g);
    Ok((1..=k_max)
        .map(|k| {
            let jk = j.power(k)?;
            Ok(homological_invariants_with(&jk, cfg)?.depth_quotient)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ordered_matching_number;
    use crate::graph_ideals::edge_ideal;

    #[test]
    fn hochster_examples() {
        assert_eq!(hochster_reg_edge_ideal(&Graph::cycle(4).unwrap()).unwrap(), 1);
        assert_eq!(hochster_reg_edge_ideal(&Graph::path(4).unwrap()).unwrap(), 1);
        assert_eq!(hochster_reg_edge_ideal(&Graph::path(2).unwrap()).unwrap(), 1);
        assert!(hochster_reg_edge_ideal(&Graph::new(3).unwrap()).is_err());
    }

    #[test]
    fn hochster_table_matches_koszul_table() {
        for g in [
            Graph::cycle(5).unwrap(),
            Graph::path(5).unwrap(),
            Graph::complete_bipartite(2, 3).unwrap(),
        ] {
            let h = hochster_betti_edge_quotient(&g, Field::Rationals).unwrap();
            let k = betti_table(&edge_ideal(&g)).unwrap().to_quotient();
            let k: BTreeMap<(usize, VarSet), u64> = k
                .entries
                .iter()
                .map(|((i, a), &r)| {
                    let s: VarSet = (0..a.len()).filter(|&v| a[v] > 0).collect();
                    ((*i, s), r)
                })
                .collect();
            assert_eq!(h, k, "{g}");
        }
    }

    #[test]
    fn depth_profile_examples() {
        let cfg = BettiConfig::default();
        let k2 = depth_power_profile(&Graph::path(2).unwrap(), 3, &cfg).unwrap();
        assert_eq!(k2.into_iter().collect::<Result<Vec<_>>>().unwrap(), vec![0, 0, 0]);
        let c4 = depth_power_profile(&Graph::cycle(4).unwrap(), 3, &cfg).unwrap();
        assert_eq!(c4.into_iter().collect::<Result<Vec<_>>>().unwrap(), vec![2, 2, 2]);
        let p3 = Graph::path(3).unwrap();
        let prof = depth_power_profile(&p3, 3, &cfg).unwrap();
        let last = *prof.last().unwrap().as_ref().unwrap();
        assert_eq!(last, 3 - 1 - ordered_matching_number(&p3));
        assert!(depth_power_profile(&Graph::cycle(3).unwrap(), 2, &cfg).is_err());
    }
}
