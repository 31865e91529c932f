//! Edge ideals, cover ideals and symbolic powers of cover ideals, plus the
//! structural identities relating cover ideals of a graph and of its vertex
//! deletions.
//!
//! Ideals of a subgraph are always re-embedded into the ambient ring of the
//! original graph, so every identity is checked in the same polynomial ring.

use crate::bits::VarSet;
use crate::error::{Error, Result};
use crate::graph::{minimal_vertex_covers, Graph};
use crate::monomial::{Monomial, MonomialIdeal};

/// A graph with its ambient ring and, when bipartite, the bipartition and
/// `u = ∏_{x ∈ U} x`.
#[derive(Debug, Clone)]
pub struct GraphIdealContext {
    pub graph: Graph,
    pub ambient_n: usize,
    pub bipartition: Option<(VarSet, VarSet)>,
    pub u_full: Option<Monomial>,
}

impl GraphIdealContext {
    pub fn new(graph: Graph) -> Self {
        let n = graph.n();
        let bipartition = graph.bipartition();
        let u_full = bipartition.map(|(u, _)| Monomial::squarefree(n, u));
        GraphIdealContext {
            graph,
            ambient_n: n,
            bipartition,
            u_full,
        }
    }
}

/// `I(G) = (x_i x_j : {i,j} ∈ E)`.
pub fn edge_ideal(g: &Graph) -> MonomialIdeal {
    let n = g.n();
    let gens = g
        .edges()
        .into_iter()
        .map(|(u, v)| Monomial::squarefree(n, VarSet::singleton(u).with(v)))
        .collect();
    MonomialIdeal::minimalize(n, gens).expect("generators share the ambient")
}

/// `J(G)`, generated by the squarefree monomials of the minimal vertex
/// covers. The unit ideal for an edgeless graph.
pub fn cover_ideal(g: &Graph) -> MonomialIdeal {
    let n = g.n();
    let gens = minimal_vertex_covers(g)
        .into_iter()
        .map(|c| Monomial::squarefree(n, c))
        .collect();
    MonomialIdeal::minimalize(n, gens).expect("generators share the ambient")
}

/// `J(G)` computed as the Alexander dual of the edge ideal. Independent of
/// [`cover_ideal`]; the two must agree.
pub fn cover_ideal_via_dual(g: &Graph) -> MonomialIdeal {
    edge_ideal(g)
        .alexander_dual()
        .expect("edge ideals are squarefree")
}

/// Cover ideal of the subgraph induced on `ring`, as an ideal of the full
/// ambient ring of `g`.
pub fn cover_ideal_on(g: &Graph, ring: VarSet) -> MonomialIdeal {
    let (h, map) = g.induced(ring);
    cover_ideal(&h)
        .embed(g.n(), &map)
        .expect("induced map stays in range")
}

/// `J(G)^{(k)} = ⋂_{{i,j} ∈ E} (x_i, x_j)^k`.
pub fn symbolic_power_cover(g: &Graph, k: u32) -> Result<MonomialIdeal> {
    if g.edge_count() == 0 {
        return Err(Error::domain("symbolic power needs a graph with an edge"));
    }
    if k == 0 {
        return Err(Error::domain("symbolic power exponent must be positive"));
    }
    let n = g.n();
    let mut acc = MonomialIdeal::unit(n);
    for (u, v) in g.edges() {
        let prime = MonomialIdeal::variables(n, VarSet::singleton(u).with(v));
        acc = acc.intersect(&prime.power(k)?)?;
    }
    Ok(acc)
}

/// Both sides of `J(G) + (x_v) = u·J(G \ N[v]) + (x_v)` with
/// `u = ∏_{w ∈ N(v)} x_w`.
pub fn neighborhood_identity(g: &Graph, v: usize) -> Result<(MonomialIdeal, MonomialIdeal)> {
    g.check_vertex(v)?;
    let n = g.n();
    let xv = MonomialIdeal::principal(Monomial::var(n, v)?);
    let left = cover_ideal(g).sum(&xv)?;
    let (h, map) = g.remove_closed_neighborhood(v)?;
    let u = Monomial::squarefree(n, g.neighbors(v));
    let right = cover_ideal(&h)
        .embed(n, &map)?
        .multiply_monomial(&u)?
        .sum(&xv)?;
    Ok((left, right))
}

/// Both sides of `(J(G) : x_v) = J(G \ v)`, the right side extended to the
/// ambient ring.
pub fn vertex_colon_identity(g: &Graph, v: usize) -> Result<(MonomialIdeal, MonomialIdeal)> {
    g.check_vertex(v)?;
    let n = g.n();
    let left = cover_ideal(g).colon(&Monomial::var(n, v)?)?;
    let (h, map) = g.remove_vertex(v)?;
    let right = cover_ideal(&h).embed(n, &map)?;
    Ok((left, right))
}

/// For bipartite `g` with `u = ∏_{x ∈ U} x`: does `(J^k : u) = J^{k-1}` hold
/// (with `J^0 = (1)`)?
pub fn bipartite_colon_check(g: &Graph, k: u32) -> Result<bool> {
    let ctx = GraphIdealContext::new(g.clone());
    let u = ctx
        .u_full
        .ok_or_else(|| Error::domain("graph is not bipartite"))?;
    if g.edge_count() == 0 {
        return Err(Error::domain("graph has no edges"));
    }
    if k == 0 {
        return Err(Error::domain("power must be positive"));
    }
    let j = cover_ideal(g);
    let left = j.power(k)?.colon(&u)?;
    Ok(left == j.power(k - 1)?)
}
