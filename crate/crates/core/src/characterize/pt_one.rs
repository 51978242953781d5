//! Propagation time one: matching graphs, component counts, efficient-set
//! intersections and prime subgraphs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forcing::{force_propagation_time, is_zero_forcing_set, propagate, ForceSet};
use crate::graph::{matching_graph, Graph, MatchingSpec, Relabeled, Vertex};
use crate::search::{analyze, AnalysisReport, Budget};
use crate::vertex_set::{subsets_with_first, VertexSet};

/// A split of `V` into two halves joined by a perfect matching.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingSplit {
    pub side1: VertexSet,
    pub side2: VertexSet,
    /// Matching edges `(x, y)` with `x` in `side1`, sorted by `x`.
    pub pairs: Vec<(Vertex, Vertex)>,
}

/// The edges between `side1` and its complement, if they form a perfect
/// matching between equal halves.
pub fn matching_across(g: &Graph, side1: VertexSet) -> Option<MatchingSplit> {
    let side2 = g.vertices() - side1;
    if side1.len() != side2.len() {
        return None;
    }
    let mut pairs = Vec::with_capacity(side1.len());
    for x in side1 {
        pairs.push((x, (g.neighbors(x) & side2).only()?));
    }
    if side2.iter().any(|y| (g.neighbors(y) & side1).len() != 1) {
        return None;
    }
    Some(MatchingSplit { side1, side2, pairs })
}

/// Finds a matching-graph structure on `g` by trying every half containing
/// vertex 0.
pub fn find_matching_split(g: &Graph) -> Option<MatchingSplit> {
    let n = g.order();
    if n == 0 || n % 2 == 1 {
        return None;
    }
    subsets_with_first(n, n / 2, 0).find_map(|s| matching_across(g, s))
}

/// The three conditions `|G| = 2Z`, `pt = 1` and "matching graph".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingTriangle {
    pub halves_z: bool,
    pub pt_is_1: bool,
    pub is_matching_graph: bool,
    /// A matching structure: read off an efficient set when the first two
    /// conditions hold, otherwise from the direct search.
    pub witness: Option<MatchingSplit>,
}

impl MatchingTriangle {
    /// Any two conditions imply the third.
    pub fn triangle_holds(&self) -> bool {
        let c = [self.halves_z, self.pt_is_1, self.is_matching_graph];
        c.iter().filter(|&&b| b).count() != 2
    }
}

pub fn pt1_matching_analysis(g: &Graph, budget: &Budget) -> Result<MatchingTriangle> {
    let r = analyze(g, budget)?;
    pt1_matching_with(g, &r)
}

pub fn pt1_matching_with(g: &Graph, r: &AnalysisReport) -> Result<MatchingTriangle> {
    let halves_z = g.order() > 0 && g.order() == 2 * r.z;
    let pt_is_1 = r.pt == 1;
    let direct = find_matching_split(g);
    let mut witness = direct.clone();
    if halves_z && pt_is_1 {
        // every efficient vertex forces its unique outside neighbour at time 1
        let b = r.eff[0];
        let split = matching_across(g, b).ok_or_else(|| {
            Error::Violation(format!(
                "{}: efficient set {b} of half the order is not matched to its complement",
                r.graph6
            ))
        })?;
        witness = Some(split);
    }
    Ok(MatchingTriangle {
        halves_z,
        pt_is_1,
        is_matching_graph: direct.is_some(),
        witness,
    })
}

/// Predicted and, when computed, actual `pt((H, K_n, mu)) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingKn {
    /// `H` is connected.
    pub predicted: bool,
    pub direct: bool,
}

/// `pt((H, K_n, mu)) = 1` exactly when `H` is connected; both the
/// prediction and the exhaustive answer are returned.
pub fn decide_matching_kn(h: &Graph, mu: &MatchingSpec, budget: &Budget) -> Result<MatchingKn> {
    let n = h.order();
    let kn = Graph::from_edges(n, (0..n).flat_map(|j| (0..j).map(move |i| (i, j))))?;
    let g = matching_graph(h, &kn, mu)?;
    Ok(MatchingKn {
        predicted: h.is_connected(),
        direct: analyze(&g, budget)?.pt == 1,
    })
}

/// Component counts of `(H1, H2, mu)` and the size `n - 1` forcing set that
/// rules out `pt = 1` when they differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCheck {
    pub c1: usize,
    pub c2: usize,
    pub c: usize,
    pub counts_equal: bool,
    /// A zero forcing set of order `n - 1` in the matching graph.
    pub small_forcing_set: Option<VertexSet>,
    /// `pt` of the matching graph when within budget.
    pub pt: Option<usize>,
}

impl ComponentCheck {
    /// `pt = 1` forces equal component counts.
    pub fn consistent(&self) -> bool {
        self.counts_equal || self.pt != Some(1)
    }
}

/// Vertices of `H2`-components hit by `mu` on `set`.
fn image_components(h2: &Graph, mu: &MatchingSpec, set: VertexSet) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = Vec::new();
    for x in set {
        let c = h2.component_of(mu.apply(x));
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// For a component of `h1` that `mu` spreads over several components of
/// `h2`, returns the two halves `(B1, B2)` of a size `n - 1` forcing set of
/// `(h1, h2, mu)`, each in its own graph's numbering.
fn spread_witness(h1: &Graph, h2: &Graph, mu: &MatchingSpec) -> Option<(VertexSet, VertexSet)> {
    let n = h1.order();
    for c1 in h1.components() {
        if image_components(h2, mu, c1).len() < 2 {
            continue;
        }
        // adjacent u, v in c1 whose images lie in different components
        let (u, v) = h1
            .edges()
            .filter(|&(a, b)| c1.contains(a) && c1.contains(b))
            .flat_map(|(a, b)| [(a, b), (b, a)])
            .find(|&(a, b)| !h2.component_of(mu.apply(a)).contains(mu.apply(b)))?;
        let c_v = h2.component_of(mu.apply(v));
        let pre_c_v: VertexSet = (0..n).filter(|&x| c_v.contains(mu.apply(x))).collect();
        let b1 = c1 - pre_c_v - VertexSet::singleton(u);
        let image_b1: VertexSet = b1.iter().map(|x| mu.apply(x)).collect();
        let b2 = VertexSet::full(n) - image_b1 - VertexSet::singleton(mu.apply(u));
        return Some((b1, b2));
    }
    None
}

pub fn component_necessity_check(h1: &Graph, h2: &Graph, mu: &MatchingSpec, budget: &Budget) -> Result<ComponentCheck> {
    let g = matching_graph(h1, h2, mu)?;
    let n = h1.order();
    let (c1, c2, c) = (h1.component_count(), h2.component_count(), g.component_count());
    let counts_equal = c1 == c2 && c2 == c;
    let mut small_forcing_set = None;
    if !counts_equal {
        let shift = |s: VertexSet| -> VertexSet { s.iter().map(|x| x + n).collect() };
        let set = if let Some((b1, b2)) = spread_witness(h1, h2, mu) {
            b1 | shift(b2)
        } else if let Some((b2, b1)) = spread_witness(h2, h1, &mu.inverse()) {
            b1 | shift(b2)
        } else {
            return Err(Error::Violation(format!(
                "component counts {c1}, {c2}, {c} differ but no component is spread by the matching"
            )));
        };
        if set.len() + 1 != n || !is_zero_forcing_set(&g, set) {
            return Err(Error::Violation(format!(
                "constructed set {set} is not a zero forcing set of order n - 1"
            )));
        }
        small_forcing_set = Some(set);
    }
    let pt = match analyze(&g, budget) {
        Ok(r) => Some(r.pt),
        Err(e) if e.is_budget() => None,
        Err(e) => return Err(e),
    };
    Ok(ComponentCheck {
        c1,
        c2,
        c,
        counts_equal,
        small_forcing_set,
        pt,
    })
}

/// Per-vertex data for a graph with `pt(G) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexRow {
    pub vertex: Vertex,
    pub degree: usize,
    /// `v` lies in every efficient set.
    pub member: bool,
    /// For every efficient `B`, at least two neighbours of `v` are forced in
    /// round one.
    pub two_forced_neighbors: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pt1VertexReport {
    pub connected: bool,
    pub z: usize,
    pub rows: Vec<VertexRow>,
}

impl Pt1VertexReport {
    /// Failures of: membership iff two forced neighbours (connected graphs
    /// only); members have degree at least four (connected graphs only);
    /// degree above `Z` implies membership.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in &self.rows {
            if self.connected && r.member != r.two_forced_neighbors {
                out.push(format!("vertex {}: member={} but two-forced={}", r.vertex, r.member, r.two_forced_neighbors));
            }
            if self.connected && r.member && r.degree < 4 {
                out.push(format!("vertex {}: member of degree {}", r.vertex, r.degree));
            }
            if r.degree > self.z && !r.member {
                out.push(format!("vertex {}: degree {} > Z = {} but not a member", r.vertex, r.degree, self.z));
            }
        }
        out
    }
}

pub fn pt1_vertex_tests(g: &Graph, r: &AnalysisReport) -> Result<Pt1VertexReport> {
    if r.pt != 1 {
        return Err(Error::Precondition(format!("pt(G) = {}, expected 1", r.pt)));
    }
    let first_rounds: Vec<VertexSet> = r
        .eff
        .iter()
        .map(|&b| propagate(g, b).map(|t| t.rounds[1]))
        .collect::<Result<_>>()?;
    let rows = (0..g.order())
        .map(|v| VertexRow {
            vertex: v,
            degree: g.degree(v),
            member: r.eff_intersection.contains(v),
            two_forced_neighbors: first_rounds.iter().all(|&f| (f & g.neighbors(v)).len() >= 2),
        })
        .collect();
    Ok(Pt1VertexReport {
        connected: g.is_connected(),
        z: r.z,
        rows,
    })
}

/// `G' = G - S` with `S` the non-forcing members of an efficient set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSubgraph {
    pub sub: Relabeled,
    /// `B'` in the numbering of `G'`.
    pub base: VertexSet,
    /// `S` in the numbering of `G`.
    pub removed: VertexSet,
    pub split: MatchingSplit,
}

/// Builds the prime subgraph and checks its structure: `|G'| = 2|B'|`,
/// `G'` is the matching graph of `B'` and its complement, both halves are
/// efficient and `pt(G') = 1`.
pub fn prime_subgraph(g: &Graph, b: VertexSet, f: &ForceSet, budget: &Budget) -> Result<PrimeSubgraph> {
    let r = analyze(g, budget)?;
    if r.pt != 1 {
        return Err(Error::Precondition(format!("pt(G) = {}, expected 1", r.pt)));
    }
    if !r.is_efficient(b) {
        return Err(Error::Precondition(format!("{b} is not an efficient zero forcing set")));
    }
    if f.base() != b || force_propagation_time(g, f)?.propagation_time() != 1 {
        return Err(Error::Precondition("forces are not an efficient set of forces of B".into()));
    }
    let removed = b - f.sources();
    let sub = g.delete_vertices(removed)?;
    let gp = &sub.graph;
    let base = sub.map_set_forward(b - removed);
    let fail = |what: &str| Err(Error::Violation(format!("{}: prime subgraph {what}", r.graph6)));
    if sub.map_set_back(gp.vertices() - base) != g.vertices() - b {
        return fail("complement of B' differs from V - B");
    }
    if gp.order() != 2 * base.len() {
        return fail("order is not twice |B'|");
    }
    let Some(split) = matching_across(gp, base) else {
        return fail("is not matched across B'");
    };
    let rp = analyze(gp, budget)?;
    if rp.pt != 1 || !rp.is_efficient(base) || !rp.is_efficient(gp.vertices() - base) {
        return fail("halves are not efficient with propagation time one");
    }
    Ok(PrimeSubgraph {
        sub,
        base,
        removed,
        split,
    })
}

/// `pt` of the graph obtained by adding a vertex adjacent to all others.
pub fn cone_pt(g: &Graph, budget: &Budget) -> Result<usize> {
    let r = analyze(&g.cone()?, budget)?;
    Ok(r.pt)
}
