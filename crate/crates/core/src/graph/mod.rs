//! Simple undirected graphs on dense vertex indices.

mod families;
mod graph6;
mod iso;

pub use families::{generalized_star_vertices, Family, GenStarVertices, PETERSEN_MATCHING};
pub use graph6::{encode_graph6, parse_graph6, parse_graph6_lines};
pub use iso::{are_isomorphic, isomorphism, MAX_ISO_ORDER};
pub(crate) use iso::refine;

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_ORDER};

pub type Vertex = usize;

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency is kept as one bitmask per vertex. Optional text labels name
/// vertices for fixtures; they do not take part in equality.
#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::InvalidArgument(format!(
                "order {n} exceeds maximum {MAX_ORDER}"
            )));
        }
        Ok(Graph {
            adj: vec![VertexSet::EMPTY; n],
            labels: None,
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn from_adjacency(adj: Vec<VertexSet>) -> Self {
        debug_assert!(adj.len() <= MAX_ORDER);
        debug_assert!(adj
            .iter()
            .enumerate()
            .all(|(v, nb)| !nb.contains(v) && nb.iter().all(|u| u < adj.len() && adj[u].contains(v))));
        Graph { adj, labels: None }
    }

    /// Adds edge `uv`; adding an existing edge is a no-op.
    pub(crate) fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn with_labels<S: Into<String>>(mut self, labels: Vec<S>) -> Result<Self> {
        if labels.len() != self.order() {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.order()
            )));
        }
        self.labels = Some(labels.into_iter().map(Into::into).collect());
        Ok(self)
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        }
    }

    pub fn check_set(&self, set: VertexSet) -> Result<()> {
        match (set - self.vertices()).first() {
            Some(v) => Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            }),
            None => Ok(()),
        }
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    pub fn neighbors(&self, v: Vertex) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|s| s.len()).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|s| s.len()).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.order() && self.adj[u].contains(v)
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    /// Label of `v`, falling back to its index.
    pub fn display_vertex(&self, v: Vertex) -> String {
        self.label(v).map_or_else(|| v.to_string(), str::to_owned)
    }

    pub fn display_set(&self, set: VertexSet) -> String {
        let names: Vec<String> = set.iter().map(|v| self.display_vertex(v)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<Vertex> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// Vertex set named by labels; fails on an unknown label.
    pub fn labeled_set(&self, labels: &[&str]) -> Result<VertexSet> {
        labels
            .iter()
            .map(|l| {
                self.vertex_by_label(l)
                    .ok_or_else(|| Error::InvalidArgument(format!("no vertex labeled {l:?}")))
            })
            .collect()
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(|s| s.is_empty())
    }

    /// Vertices reachable from `v`.
    pub fn component_of(&self, v: Vertex) -> VertexSet {
        let mut seen = VertexSet::singleton(v);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier {
                next |= self.adj[u];
            }
            frontier = next - seen;
            seen |= frontier;
        }
        seen
    }

    /// Connected components, each listed once, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = left.first() {
            let c = self.component_of(v);
            left -= c;
            out.push(c);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.component_of(0) == self.vertices()
    }

    pub fn is_tree(&self) -> bool {
        self.order() >= 1 && self.size() + 1 == self.order() && self.is_connected()
    }

    pub fn is_path(&self) -> bool {
        self.is_tree() && self.adj.iter().all(|s| s.len() <= 2)
    }

    /// BFS distances from `v`; `None` for unreachable vertices.
    pub fn distances_from(&self, v: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[v] = Some(0);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for w in self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Largest distance between two vertices; `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for v in 0..self.order() {
            for d in self.distances_from(v) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    pub fn metrics(&self) -> Metrics {
        Metrics {
            components: self.component_count(),
            diameter: self.diameter(),
            degrees: self.degrees(),
        }
    }

    /// The subgraph induced by `keep`, with vertices renumbered in increasing
    /// order. Labels are carried over.
    pub fn induced_subgraph(&self, keep: VertexSet) -> Result<Relabeled> {
        self.check_set(keep)?;
        let original: Vec<Vertex> = keep.to_vec();
        let mut index = vec![usize::MAX; self.order()];
        for (new, &old) in original.iter().enumerate() {
            index[old] = new;
        }
        let adj = original
            .iter()
            .map(|&old| (self.adj[old] & keep).iter().map(|u| index[u]).collect())
            .collect();
        let mut graph = Graph::from_adjacency(adj);
        if let Some(labels) = &self.labels {
            graph.labels = Some(original.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok(Relabeled { graph, original })
    }

    /// `G - v`, with the surviving vertices renumbered in order.
    pub fn delete_vertex(&self, v: Vertex) -> Result<Relabeled> {
        self.check_vertex(v)?;
        self.induced_subgraph(self.vertices().without(v))
    }

    pub fn delete_vertices(&self, remove: VertexSet) -> Result<Relabeled> {
        self.check_set(remove)?;
        self.induced_subgraph(self.vertices() - remove)
    }

    /// Image of the graph under the vertex map `perm` (old -> new).
    pub fn permuted(&self, perm: &[Vertex]) -> Result<Graph> {
        MatchingSpec::new(perm.to_vec())?;
        if perm.len() != self.order() {
            return Err(Error::InvalidArgument("permutation length mismatch".into()));
        }
        let mut adj = vec![VertexSet::EMPTY; self.order()];
        for (u, v) in self.edges() {
            adj[perm[u]].insert(perm[v]);
            adj[perm[v]].insert(perm[u]);
        }
        Ok(Graph::from_adjacency(adj))
    }

    /// Disjoint union, with `other` shifted after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.order();
        let mut g = Graph::empty(n + other.order())?;
        for (u, v) in self.edges() {
            g.add_edge(u, v)?;
        }
        for (u, v) in other.edges() {
            g.add_edge(n + u, n + v)?;
        }
        Ok(g)
    }

    /// Adds a new vertex adjacent to every existing vertex.
    pub fn cone(&self) -> Result<Graph> {
        let n = self.order();
        let mut g = self.disjoint_union(&Graph::empty(1)?)?;
        for v in 0..n {
            g.add_edge(v, n)?;
        }
        Ok(g)
    }
}

/// A graph produced from another by keeping a subset of vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeled {
    pub graph: Graph,
    /// `original[new]` is the vertex of the source graph.
    pub original: Vec<Vertex>,
}

impl Relabeled {
    pub fn new_index(&self, old: Vertex) -> Option<Vertex> {
        self.original.iter().position(|&v| v == old)
    }

    pub fn map_set_back(&self, set: VertexSet) -> VertexSet {
        set.iter().map(|v| self.original[v]).collect()
    }

    pub fn map_set_forward(&self, set: VertexSet) -> VertexSet {
        set.iter().filter_map(|v| self.new_index(v)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Metrics {
    pub components: usize,
    /// `None` stands for infinite diameter.
    pub diameter: Option<usize>,
    pub degrees: Vec<usize>,
}

/// A bijection between the vertex sets of two graphs of equal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MatchingSpec(Vec<Vertex>);

impl MatchingSpec {
    pub fn new(targets: Vec<Vertex>) -> Result<Self> {
        let n = targets.len();
        let mut seen = vec![false; n];
        for &t in &targets {
            if t >= n || seen[t] {
                return Err(Error::InvalidArgument(format!(
                    "matching {targets:?} is not a permutation"
                )));
            }
            seen[t] = true;
        }
        Ok(MatchingSpec(targets))
    }

    pub fn identity(n: usize) -> Self {
        MatchingSpec((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.0[v]
    }

    pub fn targets(&self) -> &[Vertex] {
        &self.0
    }

    pub fn inverse(&self) -> MatchingSpec {
        let mut inv = vec![0; self.0.len()];
        for (i, &t) in self.0.iter().enumerate() {
            inv[t] = i;
        }
        MatchingSpec(inv)
    }

    /// Every permutation of `0..n` in lexicographic order.
    pub fn all(n: usize) -> Vec<MatchingSpec> {
        let mut out = Vec::new();
        let mut perm: Vec<Vertex> = (0..n).collect();
        loop {
            out.push(MatchingSpec(perm.clone()));
            // next permutation
            let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
            perm.swap(i - 1, j);
            perm[i..].reverse();
        }
        out
    }
}

/// Cartesian product `G □ H`. Vertex `(g, h)` gets index `h * |G| + g`, so
/// `G □ P_2` is laid out as two consecutive copies of `G`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph> {
    if g.order() == 0 || h.order() == 0 {
        return Err(Error::InvalidArgument("cartesian product of an empty graph".into()));
    }
    let n = g.order();
    let mut out = Graph::empty(n * h.order())?;
    for hv in 0..h.order() {
        for (a, b) in g.edges() {
            out.add_edge(hv * n + a, hv * n + b)?;
        }
    }
    for (x, y) in h.edges() {
        for gv in 0..n {
            out.add_edge(x * n + gv, y * n + gv)?;
        }
    }
    Ok(out)
}

/// The matching graph `(H1, H2, mu)`: `H1` on `0..n`, `H2` on `n..2n`, and
/// the edges `{i, n + mu(i)}`.
pub fn matching_graph(h1: &Graph, h2: &Graph, mu: &MatchingSpec) -> Result<Graph> {
    let n = h1.order();
    if h2.order() != n || mu.len() != n {
        return Err(Error::InvalidArgument(format!(
            "matching graph needs equal orders (got {}, {}, matching of {})",
            n,
            h2.order(),
            mu.len()
        )));
    }
    let mut g = h1.disjoint_union(h2)?;
    for i in 0..n {
        g.add_edge(i, n + mu.apply(i))?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Family::Path(n).build().unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Family::Cycle(n).build().unwrap()
    }

    #[test]
    fn rejects_loops_and_bad_vertices() {
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, order: 3 })
        ));
        let g = Graph::from_edges(3, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.size(), 1);
    }

    #[test]
    fn p2_box_p2_is_c4() {
        let g = cartesian_product(&path(2), &path(2)).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.size(), 4);
        assert!(g.degrees().iter().all(|&d| d == 2));
        assert!(g.is_connected());
    }

    #[test]
    fn c5_box_p2_counts() {
        let g = cartesian_product(&cycle(5), &path(2)).unwrap();
        assert_eq!((g.order(), g.size()), (10, 15));
    }

    #[test]
    fn k1_box_h_is_h() {
        let h = Family::Dart.build().unwrap();
        let g = cartesian_product(&path(1), &h).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn matching_graph_identity_equals_box_p2() {
        let c5 = cycle(5);
        let a = matching_graph(&c5, &c5, &MatchingSpec::identity(5)).unwrap();
        let b = cartesian_product(&c5, &path(2)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn matching_graph_k1_is_p2() {
        let k1 = path(1);
        let g = matching_graph(&k1, &k1, &MatchingSpec::identity(1)).unwrap();
        assert_eq!(g, path(2));
    }

    #[test]
    fn matching_graph_order_mismatch() {
        assert!(matching_graph(&path(2), &path(3), &MatchingSpec::identity(2)).is_err());
        assert!(MatchingSpec::new(vec![0, 0]).is_err());
    }

    #[test]
    fn metrics_examples() {
        let dart = Family::Dart.build().unwrap();
        assert_eq!(dart.diameter(), Some(2));
        let comb = Family::Comb(5).build().unwrap();
        assert_eq!(comb.diameter(), Some(6));
        let e = Graph::empty(3).unwrap().metrics();
        assert_eq!(e.components, 3);
        assert_eq!(e.diameter, None);
    }

    #[test]
    fn delete_vertex_examples() {
        let k2 = path(2);
        let r = k2.delete_vertex(1).unwrap();
        assert_eq!(r.graph, path(1));

        let star = Family::Star(3).build().unwrap();
        let r = star.delete_vertex(0).unwrap();
        assert!(r.graph.is_edgeless());
        assert_eq!(r.graph.order(), 3);
        assert_eq!(r.original, vec![1, 2, 3]);

        // dart minus pendant: K4 minus an edge
        let dart = Family::Dart.build().unwrap();
        let pendant = (0..5).find(|&v| dart.degree(v) == 1).unwrap();
        let r = dart.delete_vertex(pendant).unwrap();
        let k4e = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(r.graph.size(), 5);
        assert!(are_isomorphic(&r.graph, &k4e).unwrap());
        assert!(k2.delete_vertex(2).is_err());
    }

    #[test]
    fn all_permutations() {
        let all = MatchingSpec::all(4);
        assert_eq!(all.len(), 24);
        assert_eq!(all[0].targets(), &[0, 1, 2, 3]);
        assert_eq!(all[23].targets(), &[3, 2, 1, 0]);
        assert_eq!(MatchingSpec::all(0).len(), 1);
    }

    #[test]
    fn structural_predicates() {
        assert!(path(1).is_path());
        assert!(path(5).is_path());
        assert!(!cycle(4).is_path());
        assert!(Family::Star(3).build().unwrap().is_tree());
        assert!(!Graph::empty(2).unwrap().is_connected());
    }
}
