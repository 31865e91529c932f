//! Recursive Stanley decompositions of `J(G)`, `S/J(G)` and, for bipartite
//! `G`, of `J(G)^k` and `S/J(G)^k`.
//!
//! Subgraphs are never re-indexed here: a recursive call works on the
//! subgraph induced on `ring` and produces a decomposition over `K[ring]`
//! inside the original ambient ring.

use super::transforms::{
    colon_transform, extend_free_variables, multiply_ideal_decomposition,
    multiply_quotient_decomposition, shift_spaces,
};
use super::{ModuleDescriptor, ModuleKind, Rule, StanleyDecomposition, StanleySpace};
use crate::bits::VarSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph_ideals::cover_ideal_on;
use crate::monomial::{Monomial, MonomialIdeal};

/// Decomposition of `J(G)` (ideal) or `S/J(G)` (quotient) with minimum
/// dimension at least `n - ν_o(G)` (resp. `n - ν_o(G) - 1`).
///
/// Picks the lowest non-isolated vertex `x` and splits
/// `J(G) = u·J(G \ N[x])·K[V \ x] ⊕ x·J(G \ x)·S` with `u = ∏ N(x)`.
pub fn construct_cover(g: &Graph, kind: ModuleKind) -> Result<StanleyDecomposition> {
    if g.edge_count() == 0 {
        return Err(Error::domain("cover decomposition needs a graph with an edge"));
    }
    cover_on(g, g.vertices(), kind)
}

fn tag_all(spaces: &mut [StanleySpace], rule: Rule) {
    for s in spaces {
        s.provenance.push(rule);
    }
}

fn multiply(d: &StanleyDecomposition, m: &Monomial, kind: ModuleKind) -> Result<StanleyDecomposition> {
    match kind {
        ModuleKind::Ideal => multiply_ideal_decomposition(d, m),
        ModuleKind::Quotient => multiply_quotient_decomposition(d, m),
    }
}

/// `(1)·K[ring]`: one free space for the ideal, nothing for the quotient.
fn unit_decomposition(n: usize, ring: VarSet, kind: ModuleKind) -> StanleyDecomposition {
    let spaces = match kind {
        ModuleKind::Ideal => vec![StanleySpace::new(Monomial::one(n), ring).tagged(Rule::EdgelessBase)],
        ModuleKind::Quotient => Vec::new(),
    };
    StanleyDecomposition::new(
        ModuleDescriptor::on_ring(MonomialIdeal::unit(n), ring, kind),
        spaces,
    )
}

fn lowest_non_isolated(g: &Graph, ring: VarSet) -> Option<usize> {
    ring.iter()
        .find(|&v| !g.neighbors(v).is_disjoint(ring))
}

fn cover_on(g: &Graph, ring: VarSet, kind: ModuleKind) -> Result<StanleyDecomposition> {
    let n = g.n();
    let edges = g.edges_within(ring);
    if edges.is_empty() {
        return Ok(unit_decomposition(n, ring, kind));
    }
    let ideal = cover_ideal_on(g, ring);
    let module = ModuleDescriptor::on_ring(ideal, ring, kind);
    if let [(x, y)] = edges[..] {
        let spaces = match kind {
            ModuleKind::Ideal => vec![
                StanleySpace::new(Monomial::var(n, x)?, ring),
                StanleySpace::new(Monomial::var(n, y)?, ring.without(x)),
            ],
            ModuleKind::Quotient => {
                vec![StanleySpace::new(Monomial::one(n), ring.without(x).without(y))]
            }
        };
        let spaces = spaces.into_iter().map(|s| s.tagged(Rule::EdgeBase)).collect();
        return Ok(StanleyDecomposition::new(module, spaces));
    }

    let x = lowest_non_isolated(g, ring).expect("ring has an edge");
    let nb = g.neighbors(x).intersection(ring);
    let u = Monomial::squarefree(n, nb);

    let far = cover_on(g, ring.difference(nb).without(x), kind)?;
    let mut avoid_x = multiply(&extend_free_variables(&far, nb)?, &u, kind)?.spaces;
    tag_all(&mut avoid_x, Rule::NeighborhoodBranch);

    let deleted = cover_on(g, ring.without(x), kind)?;
    let deleted = extend_free_variables(&deleted, VarSet::singleton(x))?;
    let mut through_x = shift_spaces(&deleted.spaces, &Monomial::var(n, x)?)?;
    tag_all(&mut through_x, Rule::DeletionBranch);

    avoid_x.extend(through_x);
    Ok(StanleyDecomposition::new(module, avoid_x))
}

/// Decomposition of `J(G)^k` (ideal) or `S/J(G)^k` (quotient) for bipartite
/// `G`, with minimum dimension at least `n - ν_o(G)` (resp. `n - ν_o(G) - 1`).
///
/// Let `x_1 < ... < x_t` be the non-isolated vertices of one side of the
/// bipartition and `J'_i = (J^k : x_1⋯x_i)`. Then
/// `J'_{i-1} = J_i ⊕ x_i·J'_i` where `J_i = J'_{i-1} ∩ K[V \ x_i]`, and
/// `J'_t = J^{k-1}`. Each `J_i` is obtained from
/// `u_i^k·J(G \ N[x_i])^k·K[V \ x_i]` (`u_i = ∏ N(x_i)`) by colons with
/// `x_1, .., x_{i-1}`.
pub fn construct_cover_power(g: &Graph, k: u32, kind: ModuleKind) -> Result<StanleyDecomposition> {
    if k == 0 {
        return Err(Error::domain("power must be positive"));
    }
    if g.edge_count() == 0 {
        return Err(Error::domain("cover decomposition needs a graph with an edge"));
    }
    if !g.is_bipartite() {
        return Err(Error::domain("power decompositions need a bipartite graph"));
    }
    power_on(g, g.vertices(), k, kind)
}

fn power_on(g: &Graph, ring: VarSet, k: u32, kind: ModuleKind) -> Result<StanleyDecomposition> {
    let n = g.n();
    if g.edges_within(ring).is_empty() {
        return Ok(unit_decomposition(n, ring, kind));
    }
    if k == 1 {
        return cover_on(g, ring, kind);
    }
    let (h, map) = g.induced(ring);
    let (side, _) = h.bipartition().expect("subgraphs of bipartite graphs are bipartite");
    let chain: Vec<usize> = side
        .iter()
        .filter(|&v| !h.is_isolated(v))
        .map(|v| map[v])
        .collect();

    let jk = cover_ideal_on(g, ring).power(k)?;

    // D(J'_t) = D(J^{k-1})
    let mut acc = power_on(g, ring, k - 1, kind)?.spaces;
    tag_all(&mut acc, Rule::ChainTerminal);

    for i in (0..chain.len()).rev() {
        let xi = chain[i];
        let prefix = &chain[..i];
        let nb = g.neighbors(xi).intersection(ring);

        // J^k ∩ K[ring \ xi] = u_i^k·J(G \ N[xi])^k
        let far = power_on(g, ring.difference(nb).without(xi), k, kind)?;
        let ui = Monomial::squarefree(n, nb).pow(k)?;
        let mut part = multiply(&extend_free_variables(&far, nb)?, &ui, kind)?;
        for &v in prefix {
            part = colon_transform(&part, v)?;
        }
        let mut branch = part.spaces;
        tag_all(&mut branch, Rule::ChainBranch);

        let shifted = shift_spaces(&acc, &Monomial::var(n, xi)?)?;
        branch.extend(shifted);
        acc = branch;
    }

    Ok(StanleyDecomposition::new(
        ModuleDescriptor::on_ring(jk, ring, kind),
        acc,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::verify_decomposition;
    use crate::graph::ordered_matching_number;

    fn mono(s: &str, n: usize) -> Monomial {
        Monomial::parse(s, n).unwrap()
    }

    fn set(v: &[usize]) -> VarSet {
        v.iter().copied().collect()
    }

    fn check(d: &StanleyDecomposition) {
        assert_eq!(verify_decomposition(d).unwrap(), Ok(()), "{d:#?}");
    }

    #[test]
    fn k2_base_case() {
        let g = Graph::path(2).unwrap();
        let d = construct_cover(&g, ModuleKind::Ideal).unwrap();
        check(&d);
        assert_eq!(
            d.canonical_spaces(),
            vec![(mono("x2", 2), set(&[1])), (mono("x1", 2), set(&[0, 1]))]
        );
        assert_eq!(d.sdepth(), Some(1));
        let q = construct_cover(&g, ModuleKind::Quotient).unwrap();
        check(&q);
        assert_eq!(q.sdepth(), Some(0));
    }

    #[test]
    fn c4_cover() {
        let g = Graph::cycle(4).unwrap();
        let d = construct_cover(&g, ModuleKind::Ideal).unwrap();
        check(&d);
        assert!(d.sdepth().unwrap() >= 3);
        let q = construct_cover(&g, ModuleKind::Quotient).unwrap();
        check(&q);
        assert!(q.sdepth().unwrap() >= 2);
    }

    #[test]
    fn k2_square_matches_hand_derivation() {
        let g = Graph::path(2).unwrap();
        let d = construct_cover_power(&g, 2, ModuleKind::Ideal).unwrap();
        check(&d);
        let mut want = vec![
            (mono("x2^2", 2), set(&[1])),
            (mono("x1^2", 2), set(&[0, 1])),
            (mono("x1*x2", 2), set(&[1])),
        ];
        want.sort();
        assert_eq!(d.canonical_spaces(), want);
    }

    #[test]
    fn c4_powers() {
        let g = Graph::cycle(4).unwrap();
        let nu = ordered_matching_number(&g);
        for k in 1..=3 {
            let d = construct_cover_power(&g, k, ModuleKind::Ideal).unwrap();
            check(&d);
            assert!(d.sdepth().unwrap() >= 4 - nu);
            let q = construct_cover_power(&g, k, ModuleKind::Quotient).unwrap();
            check(&q);
            assert!(q.sdepth().unwrap() >= 4 - nu - 1);
        }
    }

    #[test]
    fn isolated_vertices_are_free() {
        let g = Graph::from_edges(4, &[(1, 2)]).unwrap();
        let d = construct_cover_power(&g, 2, ModuleKind::Ideal).unwrap();
        check(&d);
        assert_eq!(d.sdepth(), Some(3));
        let q = construct_cover_power(&g, 2, ModuleKind::Quotient).unwrap();
        check(&q);
        assert_eq!(q.sdepth(), Some(2));
    }

    #[test]
    fn domain_errors() {
        let tri = Graph::cycle(3).unwrap();
        assert!(construct_cover_power(&tri, 2, ModuleKind::Ideal).is_err());
        assert!(construct_cover(&Graph::new(3).unwrap(), ModuleKind::Ideal).is_err());
        assert!(construct_cover_power(&Graph::path(2).unwrap(), 0, ModuleKind::Ideal).is_err());
    }
}
