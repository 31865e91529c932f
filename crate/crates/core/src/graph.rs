//! Simple graphs on `0..n`, with the matching-type invariants used throughout
//! the crate: ordered matchings, maximal matchings, minimal vertex covers and
//! bipartitions.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::{VarSet, MAX_VARS};
use crate::error::{Error, Result};

/// A labeled simple graph. Row `i` of the adjacency is the neighbor set of
/// vertex `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VarSet>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::TooManyVariables {
                got: n,
                max: MAX_VARS,
            });
        }
        Ok(Graph {
            n,
            adj: vec![VarSet::EMPTY; n],
            labels: None,
        })
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::input(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VarSet {
        VarSet::full(self.n)
    }

    pub fn neighbors(&self, v: usize) -> VarSet {
        self.adj[v]
    }

    pub fn closed_neighborhood(&self, v: usize) -> VarSet {
        self.adj[v].with(v)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.adj[v].is_empty()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    pub fn non_isolated(&self) -> VarSet {
        (0..self.n).filter(|&v| !self.is_isolated(v)).collect()
    }

    /// Edges of the subgraph induced on `keep`, in original indices.
    pub fn edges_within(&self, keep: VarSet) -> Vec<(usize, usize)> {
        self.edges()
            .into_iter()
            .filter(|&(u, v)| keep.contains(u) && keep.contains(v))
            .collect()
    }

    /// The induced subgraph on `keep`, re-indexed. The returned map sends new
    /// indices to original ones.
    pub fn induced(&self, keep: VarSet) -> (Graph, Vec<usize>) {
        let keep = keep.intersection(self.vertices());
        let map: Vec<usize> = keep.iter().collect();
        let mut back = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            back[old] = new;
        }
        let mut adj = vec![VarSet::EMPTY; map.len()];
        for (new, &old) in map.iter().enumerate() {
            adj[new] = self.adj[old]
                .intersection(keep)
                .iter()
                .map(|w| back[w])
                .collect();
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| map.iter().map(|&o| l[o].clone()).collect());
        (
            Graph {
                n: map.len(),
                adj,
                labels,
            },
            map,
        )
    }

    /// `G \ A`: drop the vertices of `A` and every edge meeting `A`.
    pub fn remove_vertices(&self, a: VarSet) -> (Graph, Vec<usize>) {
        self.induced(self.vertices().difference(a))
    }

    pub fn remove_vertex(&self, v: usize) -> Result<(Graph, Vec<usize>)> {
        self.check_vertex(v)?;
        Ok(self.remove_vertices(VarSet::singleton(v)))
    }

    /// `G \ N_G[v]`.
    pub fn remove_closed_neighborhood(&self, v: usize) -> Result<(Graph, Vec<usize>)> {
        self.check_vertex(v)?;
        Ok(self.remove_vertices(self.closed_neighborhood(v)))
    }

    pub fn is_independent(&self, set: VarSet) -> bool {
        set.iter().all(|v| self.adj[v].is_disjoint(set))
    }

    pub fn is_vertex_cover(&self, set: VarSet) -> bool {
        self.edges()
            .iter()
            .all(|&(u, v)| set.contains(u) || set.contains(v))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.component_of(0) == self.vertices()
    }

    fn component_of(&self, start: usize) -> VarSet {
        let mut seen = VarSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VarSet::EMPTY;
            for v in frontier {
                next = next.union(self.adj[v]);
            }
            frontier = next.difference(seen);
            seen = seen.union(next);
        }
        seen
    }

    /// A 2-coloring `(U, W)` if the graph is bipartite. The lowest vertex of
    /// every component is placed in `U`.
    pub fn bipartition(&self) -> Option<(VarSet, VarSet)> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                let c = color[v].unwrap();
                for w in self.adj[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let u = (0..self.n).filter(|&v| color[v] == Some(false)).collect();
        let w = (0..self.n).filter(|&v| color[v] == Some(true)).collect();
        Some((u, w))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// `n=4;edges=0-1,1-2` form; also the cache key for a labeled graph.
    pub fn canonical_string(&self) -> String {
        let edges: Vec<String> = self
            .edges()
            .iter()
            .map(|(u, v)| format!("{u}-{v}"))
            .collect();
        format!("n={};edges={}", self.n, edges.join(","))
    }

    // Common families, used by tests, suites and the CLI.

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::input("a cycle needs at least 3 vertices"));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges)
    }

    /// `K_{a,b}` with parts `{0..a}` and `{a..a+b}`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Graph::from_edges(a + b, &edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.canonical_string())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

/// A sequence of pairs `(a_i, b_i)`; see [`is_ordered_matching`].
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OrderedMatching {
    pub pairs: Vec<(usize, usize)>,
}

impl OrderedMatching {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        OrderedMatching { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Checks that `m` is a matching of `g` whose `a`-side is independent and
/// such that `{a_i, b_j} ∈ E` forces `i ≤ j`.
pub fn is_ordered_matching(g: &Graph, m: &OrderedMatching) -> Result<bool> {
    for &(a, b) in &m.pairs {
        g.check_vertex(a)?;
        g.check_vertex(b)?;
    }
    let mut seen = VarSet::EMPTY;
    for &(a, b) in &m.pairs {
        if !g.has_edge(a, b) || seen.contains(a) || seen.contains(b) || a == b {
            return Ok(false);
        }
        seen.insert(a);
        seen.insert(b);
    }
    let a_side: VarSet = m.pairs.iter().map(|p| p.0).collect();
    if !g.is_independent(a_side) {
        return Ok(false);
    }
    for (i, &(a, _)) in m.pairs.iter().enumerate() {
        for (j, &(_, b)) in m.pairs.iter().enumerate() {
            if g.has_edge(a, b) && i > j {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The ordered matching number. Zero for edgeless graphs.
pub fn ordered_matching_number(g: &Graph) -> usize {
    max_ordered_matching(g).len()
}

/// A maximum ordered matching, chosen lowest-index-first among optimal ones.
///
/// The search extends the sequence one pair at a time. A new `a` must avoid
/// every used vertex, every neighbor of an earlier `a` (independence) and
/// every neighbor of an earlier `b` (the triangular condition); the new `b`
/// only has to be an unused neighbor of `a`. The future therefore depends
/// only on `(used, forbidden)`, which is memoized.
pub fn max_ordered_matching(g: &Graph) -> OrderedMatching {
    let mut solver = OrderedMatchingSolver {
        g,
        memo: HashMap::new(),
    };
    let best = solver.best(VarSet::EMPTY, VarSet::EMPTY);
    let mut pairs = Vec::with_capacity(best);
    let (mut used, mut forbidden) = (VarSet::EMPTY, VarSet::EMPTY);
    let mut remaining = best;
    'outer: while remaining > 0 {
        for (a, b, u2, f2) in solver.moves(used, forbidden) {
            if 1 + solver.best(u2, f2) == remaining {
                pairs.push((a, b));
                used = u2;
                forbidden = f2;
                remaining -= 1;
                continue 'outer;
            }
        }
        unreachable!("memoized optimum must be reconstructible");
    }
    OrderedMatching { pairs }
}

struct OrderedMatchingSolver<'g> {
    g: &'g Graph,
    memo: HashMap<(u64, u64), usize>,
}

impl OrderedMatchingSolver<'_> {
    fn moves(&self, used: VarSet, forbidden: VarSet) -> Vec<(usize, usize, VarSet, VarSet)> {
        let g = self.g;
        let mut out = Vec::new();
        for a in g.vertices().difference(used.union(forbidden)) {
            for b in g.neighbors(a).difference(used) {
                let u2 = used.with(a).with(b);
                let f2 = forbidden
                    .union(g.neighbors(a))
                    .union(g.neighbors(b))
                    .union(u2);
                out.push((a, b, u2, f2));
            }
        }
        out
    }

    fn best(&mut self, used: VarSet, forbidden: VarSet) -> usize {
        let key = (used.bits(), forbidden.bits());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let free = self.g.vertices().difference(used).len();
        let mut best = 0;
        for (_, _, u2, f2) in self.moves(used, forbidden) {
            if best == free / 2 {
                break;
            }
            best = best.max(1 + self.best(u2, f2));
        }
        self.memo.insert(key, best);
        best
    }
}

/// Size of a largest matching.
pub fn matching_number(g: &Graph) -> usize {
    fn go(g: &Graph, avail: VarSet) -> usize {
        let Some(v) = avail.iter().find(|&v| !g.neighbors(v).is_disjoint(avail)) else {
            return 0;
        };
        let skip = go(g, avail.without(v));
        let mut best = skip;
        for w in g.neighbors(v).intersection(avail) {
            best = best.max(1 + go(g, avail.without(v).without(w)));
        }
        best
    }
    go(g, g.vertices())
}

/// Minimum size of an inclusion-maximal matching; 0 for edgeless graphs.
pub fn min_maximal_matching(g: &Graph) -> usize {
    let edges = g.edges();
    let mut best = usize::MAX;
    fn go(
        edges: &[(usize, usize)],
        idx: usize,
        used: VarSet,
        size: usize,
        best: &mut usize,
    ) {
        if size >= *best {
            return;
        }
        if idx == edges.len() {
            let maximal = edges
                .iter()
                .all(|&(u, v)| used.contains(u) || used.contains(v));
            if maximal {
                *best = size;
            }
            return;
        }
        let (u, v) = edges[idx];
        if used.contains(u) || used.contains(v) {
            go(edges, idx + 1, used, size, best);
            return;
        }
        go(edges, idx + 1, used.with(u).with(v), size + 1, best);
        go(edges, idx + 1, used, size, best);
    }
    go(&edges, 0, VarSet::EMPTY, 0, &mut best);
    best
}

/// All maximal independent sets, via Bron–Kerbosch with pivoting on the
/// complement graph.
pub fn maximal_independent_sets(g: &Graph) -> Vec<VarSet> {
    let all = g.vertices();
    let non_adj: Vec<VarSet> = (0..g.n())
        .map(|v| all.difference(g.closed_neighborhood(v)))
        .collect();
    let mut out = Vec::new();
    fn bk(r: VarSet, mut p: VarSet, mut x: VarSet, non_adj: &[VarSet], out: &mut Vec<VarSet>) {
        if p.is_empty() && x.is_empty() {
            out.push(r);
            return;
        }
        let pivot = p
            .union(x)
            .iter()
            .max_by_key(|&u| (p.intersection(non_adj[u]).len(), std::cmp::Reverse(u)))
            .unwrap();
        for v in p.difference(non_adj[pivot]) {
            bk(
                r.with(v),
                p.intersection(non_adj[v]),
                x.intersection(non_adj[v]),
                non_adj,
                out,
            );
            p.remove(v);
            x.insert(v);
        }
    }
    bk(VarSet::EMPTY, all, VarSet::EMPTY, &non_adj, &mut out);
    out
}

/// All inclusion-minimal vertex covers, sorted by size and then by their
/// increasing vertex lists.
pub fn minimal_vertex_covers(g: &Graph) -> Vec<VarSet> {
    let all = g.vertices();
    let mut covers: Vec<VarSet> = maximal_independent_sets(g)
        .into_iter()
        .map(|s| all.difference(s))
        .collect();
    covers.sort_by_key(|c| (c.len(), c.iter().collect::<Vec<_>>()));
    covers
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize) -> Graph {
        Graph::path(n).unwrap()
    }

    fn c(n: usize) -> Graph {
        Graph::cycle(n).unwrap()
    }

    fn set(v: &[usize]) -> VarSet {
        v.iter().copied().collect()
    }

    #[test]
    fn ordered_matching_checks() {
        let g = p(4);
        assert!(is_ordered_matching(&g, &OrderedMatching::new(vec![(2, 3), (0, 1)])).unwrap());
        assert!(!is_ordered_matching(&g, &OrderedMatching::new(vec![(0, 1), (2, 3)])).unwrap());
        assert!(is_ordered_matching(&c(5), &OrderedMatching::default()).unwrap());
        assert!(matches!(
            is_ordered_matching(&g, &OrderedMatching::new(vec![(0, 7)])),
            Err(Error::VertexOutOfRange { vertex: 7, n: 4 })
        ));
    }

    #[test]
    fn ordered_matching_number_examples() {
        assert_eq!(ordered_matching_number(&c(4)), 1);
        assert_eq!(ordered_matching_number(&p(4)), 2);
        assert_eq!(ordered_matching_number(&p(2)), 1);
        assert_eq!(ordered_matching_number(&Graph::new(5).unwrap()), 0);
        let w = max_ordered_matching(&p(4));
        assert!(is_ordered_matching(&p(4), &w).unwrap());
    }

    #[test]
    fn bipartition_examples() {
        assert_eq!(c(4).bipartition(), Some((set(&[0, 2]), set(&[1, 3]))));
        assert_eq!(c(3).bipartition(), None);
        assert_eq!(
            Graph::new(3).unwrap().bipartition(),
            Some((set(&[0, 1, 2]), VarSet::EMPTY))
        );
    }

    #[test]
    fn closed_neighborhood_removal() {
        let (h, map) = c(4).remove_closed_neighborhood(0).unwrap();
        assert_eq!((h.n(), h.edge_count(), map), (1, 0, vec![2]));
        let (h, map) = p(4).remove_closed_neighborhood(1).unwrap();
        assert_eq!((h.n(), h.edge_count(), map), (1, 0, vec![3]));
        let (h, _) = p(2).remove_closed_neighborhood(0).unwrap();
        assert_eq!(h.n(), 0);
    }

    #[test]
    fn min_maximal_matching_examples() {
        assert_eq!(min_maximal_matching(&c(4)), 2);
        assert_eq!(min_maximal_matching(&p(4)), 1);
        assert_eq!(min_maximal_matching(&p(2)), 1);
        assert_eq!(min_maximal_matching(&Graph::new(3).unwrap()), 0);
    }

    #[test]
    fn minimal_vertex_cover_examples() {
        assert_eq!(minimal_vertex_covers(&c(4)), vec![set(&[0, 2]), set(&[1, 3])]);
        assert_eq!(minimal_vertex_covers(&p(2)), vec![set(&[0]), set(&[1])]);
        assert_eq!(minimal_vertex_covers(&p(3)), vec![set(&[1]), set(&[0, 2])]);
        assert_eq!(minimal_vertex_covers(&Graph::new(2).unwrap()), vec![VarSet::EMPTY]);
    }

    #[test]
    fn self_loops_rejected() {
        assert_eq!(Graph::from_edges(3, &[(0, 0)]), Err(Error::SelfLoop(0)));
    }
}
