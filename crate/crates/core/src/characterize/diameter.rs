//! Propagation time against diameter: forcing trails and combs.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forcing::{force_propagation_time, propagate, propagation_time, ForceSet};
use crate::graph::{Family, Graph, Vertex};
use crate::search::{analyze, Budget};
use crate::vertex_set::VertexSet;

/// A trail together with, for each round `t = 1..=pt`, the index `i` such
/// that `vertices[i]` forces `vertices[i + 1]` in round `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trail {
    pub vertices: Vec<Vertex>,
    pub force_index: Vec<usize>,
}

impl Trail {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_path(&self) -> bool {
        let set: VertexSet = self.vertices.iter().collect();
        set.len() == self.vertices.len()
    }
}

/// Builds a trail of length at least `pt(G, B)` by walking back from a
/// vertex forced in the last round.
///
/// `f` must be a set of forces of `B` in which every vertex is forced in the
/// earliest possible round, e.g. from
/// [`record_forces`](crate::forcing::record_forces). Each step back from a
/// force `u -> v` in round `l` goes either to the source of `u` (when `u`
/// was forced in round `l - 1`) or through a neighbour `x != v` of `u`
/// forced in round `l - 1` to the source of `x`.
pub fn build_trail(g: &Graph, b: VertexSet, f: &ForceSet) -> Result<Trail> {
    if f.base() != b {
        return Err(Error::Precondition("force set is not based at B".into()));
    }
    let n = g.order();
    let sync = propagate(g, b)?;
    let pt = sync.propagation_time().ok_or(Error::NotZeroForcing)?;
    let time = force_propagation_time(g, f)?.round_of(n);
    let earliest: Vec<usize> = sync.round_of(n).into_iter().map(|t| t.unwrap()).collect();
    if time != earliest {
        return Err(Error::Precondition("forces do not fire at their earliest rounds".into()));
    }
    if pt == 0 {
        return Ok(Trail {
            vertices: Vec::new(),
            force_index: Vec::new(),
        });
    }
    let source = |w: Vertex| f.source_of(w).expect("forced vertex has a source");

    let v0 = (0..n).find(|&v| time[v] == pt).unwrap();
    // built from the end backwards
    let mut rev = vec![v0, source(v0)];
    let mut forces_at = vec![0; pt + 1];
    forces_at[pt] = 1; // edge (rev[1], rev[0])
    for l in (2..=pt).rev() {
        let u = *rev.last().unwrap();
        let v = rev[rev.len() - 2];
        if !b.contains(u) && time[u] == l - 1 {
            rev.push(source(u));
        } else {
            let x = (g.neighbors(u).without(v))
                .iter()
                .find(|&x| time[x] == l - 1)
                .ok_or_else(|| Error::Violation(format!("force {u}->{v} in round {l} has no cause in round {}", l - 1)))?;
            rev.push(x);
            rev.push(source(x));
        }
        forces_at[l - 1] = rev.len() - 1;
    }
    let len = rev.len();
    let vertices: Vec<Vertex> = rev.into_iter().rev().collect();
    // the edge ending at rev index j starts at forward index len - 1 - j
    let force_index: Vec<usize> = (1..=pt).map(|t| len - 1 - forces_at[t]).collect();
    let trail = Trail { vertices, force_index };
    check_trail(g, f, &time, pt, &trail)?;
    Ok(trail)
}

fn check_trail(g: &Graph, f: &ForceSet, time: &[usize], pt: usize, trail: &Trail) -> Result<()> {
    let fail = |msg: String| Err(Error::Violation(format!("trail {:?}: {msg}", trail.vertices)));
    let mut seen = HashSet::new();
    for w in trail.vertices.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return fail(format!("{}-{} is not an edge", w[0], w[1]));
        }
        if !seen.insert((w[0].min(w[1]), w[0].max(w[1]))) {
            return fail(format!("edge {}-{} repeated", w[0], w[1]));
        }
    }
    if trail.len() < pt {
        return fail(format!("length {} below pt {pt}", trail.len()));
    }
    for (t, &i) in (1..=pt).zip(&trail.force_index) {
        let (a, c) = (trail.vertices[i], trail.vertices[i + 1]);
        if f.source_of(c) != Some(a) || time[c] != t {
            return fail(format!("no force of round {t} at position {i}"));
        }
    }
    Ok(())
}

/// Facts about the `k`-comb for `k` divisible by four.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombReport {
    pub k: usize,
    pub n: usize,
    pub diameter: usize,
    pub leaves: usize,
    /// `ceil(leaves / 2)`: at most two leaves lie on one forcing chain.
    pub leaf_bound: usize,
    /// Leaves numbered `2, 3 mod 4` in path order.
    pub prescribed: VertexSet,
    pub prescribed_pt: usize,
    pub z: usize,
    pub pt: usize,
    /// `Z` and `pt` come from exhaustive search rather than the bounds.
    pub exact: bool,
}

/// Largest `k` analysed by exhaustive search.
pub const COMB_EXACT_MAX_K: usize = 8;

pub fn comb_analysis(k: usize, budget: &Budget) -> Result<CombReport> {
    if k == 0 || !k.is_multiple_of(4) {
        return Err(Error::InvalidArgument(format!("comb size must be a positive multiple of 4, got {k}")));
    }
    let g = Family::Comb(k).build()?;
    let n = g.order();
    let leaves = (0..n).filter(|&v| g.degree(v) == 1).count();
    let leaf_bound = leaves.div_ceil(2);
    // leaf i (1-based) is vertex k + i - 1
    let prescribed: VertexSet = (1..=k).filter(|i| matches!(i % 4, 2 | 3)).map(|i| k + i - 1).collect();
    let prescribed_pt = propagation_time(&g, prescribed)
        .ok_or_else(|| Error::Violation(format!("prescribed set {prescribed} does not force the {k}-comb")))?;
    let diameter = g.diameter().expect("combs are connected");
    let (z, pt, exact) = if k <= COMB_EXACT_MAX_K {
        let r = analyze(&g, budget)?;
        (r.z, r.pt, true)
    } else {
        if prescribed.len() != leaf_bound {
            return Err(Error::Violation(format!(
                "prescribed set has {} vertices, leaf bound is {leaf_bound}",
                prescribed.len()
            )));
        }
        // Z is pinned by the leaf bound; pt >= (n - Z) / Z meets pt(G, B)
        let z = prescribed.len();
        let lower = (n - z).div_ceil(z);
        if lower != prescribed_pt {
            return Err(Error::Violation(format!(
                "bounds do not pin pt: lower {lower}, prescribed time {prescribed_pt}"
            )));
        }
        (z, prescribed_pt, false)
    };
    Ok(CombReport {
        k,
        n,
        diameter,
        leaves,
        leaf_bound,
        prescribed,
        prescribed_pt,
        z,
        pt,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forcing::{record_forces, TieBreak};
    use crate::search::enumerate_min_zfs;

    fn trail_for(g: &Graph, b: VertexSet) -> Trail {
        let f = record_forces(g, b, TieBreak::default()).unwrap();
        build_trail(g, b, &f).unwrap()
    }

    #[test]
    fn path_trail_is_the_path() {
        for n in 2..8 {
            let p = Family::Path(n).build().unwrap();
            let t = trail_for(&p, VertexSet::singleton(0));
            assert_eq!(t.vertices, (0..n).collect::<Vec<_>>());
            assert_eq!(t.len(), n - 1);
        }
    }

    #[test]
    fn tree_trails_are_short_paths() {
        for f in [Family::GeneralizedStar(2, 3, 4), Family::Comb(4), Family::TShaped(7)] {
            let g = f.build().unwrap();
            let diam = g.diameter().unwrap();
            for b in enumerate_min_zfs(&g, &Budget::default()).unwrap() {
                let t = trail_for(&g, b);
                assert!(t.is_path() && t.len() <= diam, "{f:?} {b}");
            }
        }
    }

    #[test]
    fn trails_on_cyclic_graphs() {
        for f in [Family::Dart, Family::Wheel5, Family::Petersen, Family::K4Leaf] {
            let g = f.build().unwrap();
            for b in enumerate_min_zfs(&g, &Budget::default()).unwrap() {
                let t = trail_for(&g, b);
                assert!(t.len() >= propagation_time(&g, b).unwrap());
            }
        }
    }

    #[test]
    fn rejects_late_forces() {
        // in C4 from {0,1}, routing 2 through 3 delays it to round 2
        let g = Family::Cycle(4).build().unwrap();
        let b: VertexSet = [0, 1].iter().collect();
        let late = ForceSet::new(4, b, [(0, 3), (3, 2)]).unwrap();
        assert!(matches!(build_trail(&g, b, &late), Err(Error::Precondition(_))));
        let other = record_forces(&g, VertexSet::singleton(0).with(3), TieBreak::default()).unwrap();
        assert!(build_trail(&g, b, &other).is_err());
    }

    #[test]
    fn combs() {
        let c4 = comb_analysis(4, &Budget::default()).unwrap();
        assert_eq!((c4.z, c4.pt, c4.diameter, c4.exact), (2, 3, 5, true));
        let c8 = comb_analysis(8, &Budget::default()).unwrap();
        assert_eq!((c8.z, c8.pt, c8.diameter), (4, 3, 9));
        let c12 = comb_analysis(12, &Budget::default()).unwrap();
        assert_eq!((c12.prescribed_pt, c12.prescribed.len(), c12.exact), (3, 6, false));
        assert!(comb_analysis(6, &Budget::default()).is_err());
    }
}
