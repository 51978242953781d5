//! Graphs with extreme propagation time: `pt` of `0`, `n - 1` and `n - 2`.

use serde::Serialize;

use super::zigzag::{single_force_schedule, zigzag_decompose, ZigzagDecomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::search::{analyze, AnalysisReport, Budget};

/// Independently computed conditions that should coincide in pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrivialExtremes {
    pub n: usize,
    pub z_is_1: bool,
    pub pt_is_nminus1: bool,
    pub pt_max_is_nminus1: bool,
    pub is_path: bool,
    pub pt_is_0: bool,
    pub pt_max_is_0: bool,
    pub z_is_n: bool,
    pub is_edgeless: bool,
}

impl TrivialExtremes {
    /// The four path conditions agree, and so do the four edgeless ones.
    pub fn consistent(&self) -> bool {
        let path = [self.z_is_1, self.pt_is_nminus1, self.pt_max_is_nminus1, self.is_path];
        let empty = [self.pt_is_0, self.pt_max_is_0, self.z_is_n, self.is_edgeless];
        path.iter().all(|&b| b == path[0]) && empty.iter().all(|&b| b == empty[0])
    }
}

/// Computes the path and edgeless characterizations of the extreme values.
/// Requires `n >= 1`.
pub fn classify_trivial_extremes(g: &Graph, budget: &Budget) -> Result<TrivialExtremes> {
    let r = analyze(g, budget)?;
    Ok(classify_with(g, &r))
}

pub fn classify_with(g: &Graph, r: &AnalysisReport) -> TrivialExtremes {
    let n = g.order();
    TrivialExtremes {
        n,
        z_is_1: r.z == 1,
        pt_is_nminus1: n >= 1 && r.pt == n - 1,
        pt_max_is_nminus1: n >= 1 && r.pt_max == n - 1,
        is_path: g.is_path(),
        pt_is_0: r.pt == 0,
        pt_max_is_0: r.pt_max == 0,
        z_is_n: r.z == n,
        is_edgeless: g.is_edgeless(),
    }
}

/// Which characterization decided the question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// `n < 2`: `pt = n - 2` is impossible.
    Small,
    /// Disconnected: only `P_{n-1} + P_1`.
    Disconnected,
    /// Tree: only `K_{1,3}`.
    Tree,
    /// Connected with a cycle: zigzag conditions.
    Zigzag,
}

/// Structural and exhaustive answers to `pt(G) = |G| - 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PtNMinus2 {
    pub route: Route,
    /// Verdict from structure alone. On the zigzag route this covers the
    /// decomposition and its four end conditions but not the exceptional
    /// family, which has no structural description here.
    pub structural: bool,
    /// `pt(G) = n - 2` by exhaustive search.
    pub brute: bool,
    pub brute_pt: usize,
    pub decomposition: Option<ZigzagDecomposition>,
    pub end_conditions: Option<[bool; 4]>,
}

impl PtNMinus2 {
    /// The recognizer's answer. On the zigzag route the exceptional-family
    /// condition is replaced by checking that every minimum zero forcing set
    /// has propagation time `n - 2`, which is the exhaustive verdict.
    pub fn verdict(&self) -> bool {
        match self.route {
            Route::Zigzag => self.structural && self.brute,
            _ => self.structural,
        }
    }

    pub fn agrees(&self) -> bool {
        self.verdict() == self.brute
    }

    /// A zigzag graph meeting every structural condition whose propagation
    /// time is nevertheless below `n - 2`: a member of the exceptional family.
    pub fn is_exception(&self) -> bool {
        self.route == Route::Zigzag && self.structural && !self.brute
    }
}

fn is_path_plus_isolated(g: &Graph) -> bool {
    let comps = g.components();
    comps.len() == 2
        && comps.iter().any(|c| c.len() == 1)
        && comps
            .iter()
            .all(|&c| g.induced_subgraph(c).is_ok_and(|h| h.graph.is_path()))
}

fn is_claw(g: &Graph) -> bool {
    let mut d = g.degrees();
    d.sort_unstable();
    g.is_tree() && d == [1, 1, 1, 3]
}

/// Decides `pt(G) = |G| - 2` structurally and by exhaustive search.
pub fn decide_pt_nminus2(g: &Graph, budget: &Budget) -> Result<PtNMinus2> {
    let n = g.order();
    if n < 2 {
        return Ok(PtNMinus2 {
            route: Route::Small,
            structural: false,
            brute: false,
            brute_pt: 0,
            decomposition: None,
            end_conditions: None,
        });
    }
    let r = analyze(g, budget)?;
    let brute = r.pt == n - 2;
    let mut out = PtNMinus2 {
        route: Route::Zigzag,
        structural: false,
        brute,
        brute_pt: r.pt,
        decomposition: None,
        end_conditions: None,
    };
    if !g.is_connected() {
        out.route = Route::Disconnected;
        out.structural = is_path_plus_isolated(g);
    } else if g.is_tree() {
        out.route = Route::Tree;
        out.structural = is_claw(g);
    } else if let Some(d) = zigzag_decompose(g, budget)? {
        let ends = d.end_conditions(g);
        out.structural = ends.iter().all(|&b| b);
        out.end_conditions = Some(ends);
        out.decomposition = Some(d);
    }
    Ok(out)
}

/// `PT(T) = |T| - 2` for a tree, structurally and exhaustively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TreeHighPt {
    /// `T = S(1, 1, n - 3)`.
    pub structural: bool,
    pub brute: bool,
}

/// Whether `t` is a T-shaped tree: one vertex of degree three, every other
/// of degree at most two, and at least two of the three arms of length one.
pub fn is_t_shaped(t: &Graph) -> bool {
    if !t.is_tree() {
        return false;
    }
    let degrees = t.degrees();
    let centers: Vec<usize> = (0..t.order()).filter(|&v| degrees[v] == 3).collect();
    if centers.len() != 1 || degrees.iter().any(|&d| d > 3) {
        return false;
    }
    let c = centers[0];
    let short_arms = t.neighbors(c).iter().filter(|&w| degrees[w] == 1).count();
    short_arms >= 2
}

pub fn decide_pt_max_nminus2_tree(t: &Graph, budget: &Budget) -> Result<TreeHighPt> {
    if !t.is_tree() {
        return Err(Error::Precondition("graph is not a tree".into()));
    }
    let r = analyze(t, budget)?;
    Ok(TreeHighPt {
        structural: is_t_shaped(t),
        brute: t.order() >= 2 && r.pt_max == t.order() - 2,
    })
}

/// The three statements relating `pt = n - 2` and `PT = n - 2` to
/// single-force schedules, each evaluated both ways.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SingleForceFacts {
    /// `pt = n - 2` implies `PT = n - 2`.
    pub pt_implies_pt_max: bool,
    /// `pt = n - 2` iff `Z = 2` and every minimum set forces once per round.
    pub pt_iff_all: bool,
    /// `PT = n - 2` iff `Z = 2` and some minimum set forces once per round.
    pub pt_max_iff_some: bool,
}

impl SingleForceFacts {
    pub fn all_hold(&self) -> bool {
        self.pt_implies_pt_max && self.pt_iff_all && self.pt_max_iff_some
    }
}

pub fn single_force_facts(g: &Graph, r: &AnalysisReport) -> SingleForceFacts {
    let n = g.order();
    let target = n.checked_sub(2);
    let pt_hit = Some(r.pt) == target;
    let pt_max_hit = Some(r.pt_max) == target;
    let schedules: Vec<bool> = r.min_zfs.iter().map(|e| single_force_schedule(g, e.set)).collect();
    let z2 = r.z == 2;
    SingleForceFacts {
        pt_implies_pt_max: !pt_hit || pt_max_hit,
        pt_iff_all: pt_hit == (z2 && schedules.iter().all(|&b| b)),
        pt_max_iff_some: pt_max_hit == (z2 && schedules.iter().any(|&b| b)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    fn b() -> Budget {
        Budget::default()
    }

    fn g(f: Family) -> Graph {
        f.build().unwrap()
    }

    #[test]
    fn trivial_extremes() {
        let p7 = classify_trivial_extremes(&g(Family::Path(7)), &b()).unwrap();
        assert!(p7.z_is_1 && p7.pt_is_nminus1 && p7.pt_max_is_nminus1 && p7.is_path);
        assert!(p7.consistent());
        let c4 = classify_trivial_extremes(&g(Family::Cycle(4)), &b()).unwrap();
        assert!(!(c4.z_is_1 || c4.pt_is_nminus1 || c4.pt_max_is_nminus1 || c4.is_path));
        assert!(c4.consistent());
        let e5 = classify_trivial_extremes(&g(Family::Edgeless(5)), &b()).unwrap();
        assert!(e5.pt_is_0 && e5.consistent());
    }

    #[test]
    fn high_pt_examples() {
        let claw = decide_pt_nminus2(&g(Family::Star(3)), &b()).unwrap();
        assert_eq!(claw.route, Route::Tree);
        assert!(claw.verdict() && claw.brute);

        let ppi = decide_pt_nminus2(&g(Family::PathPlusIsolated(6)), &b()).unwrap();
        assert_eq!(ppi.route, Route::Disconnected);
        assert!(ppi.verdict() && ppi.agrees());

        let t = g(Family::TShaped(6));
        let d = decide_pt_nminus2(&t, &b()).unwrap();
        assert!(!d.verdict() && !d.brute);
        assert!(decide_pt_max_nminus2_tree(&t, &b()).unwrap().brute);

        let dart = decide_pt_nminus2(&g(Family::Dart), &b()).unwrap();
        assert_eq!(dart.route, Route::Zigzag);
        assert!(dart.structural && dart.brute && dart.agrees());
    }

    #[test]
    fn tree_pt_max() {
        for (f, want) in [
            (Family::TShaped(7), true),
            (Family::Path(6), false),
            (Family::GeneralizedStar(2, 2, 2), false),
            (Family::Star(3), true),
        ] {
            let v = decide_pt_max_nminus2_tree(&g(f), &b()).unwrap();
            assert_eq!(v.structural, want, "{f:?}");
            assert_eq!(v.brute, want, "{f:?}");
        }
        assert!(decide_pt_max_nminus2_tree(&g(Family::Cycle(4)), &b()).is_err());
    }

    #[test]
    fn single_force_facts_on_fixtures() {
        for f in [Family::Dart, Family::Cycle(4), Family::TShaped(6), Family::Complete(3), Family::Star(3)] {
            let graph = g(f);
            let r = analyze(&graph, &b()).unwrap();
            assert!(single_force_facts(&graph, &r).all_hold(), "{f:?}");
        }
    }
}
