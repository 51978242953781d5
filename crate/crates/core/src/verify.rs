//! Theorem suites run graph by graph over a corpus.
//!
//! Each suite checks one family of proved statements on a single graph and
//! reports an [`Outcome`]. Budget overruns are counted, not fatal.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::characterize::{
    classify_with, component_necessity_check, decide_matching_kn, decide_pt_max_nminus2_tree, decide_pt_nminus2,
    pt1_matching_with, pt1_vertex_tests, prime_subgraph, single_force_facts, build_trail,
};
use crate::error::{Error, Result};
use crate::forcing::{force_propagation_time, is_zero_forcing_set, q_sets, record_forces, TieBreak};
use crate::graph::{encode_graph6, Family, Graph, MatchingSpec};
use crate::search::{analyze, efficient_force_sets, enumerate_force_sets, AnalysisReport, Budget};
use crate::vertex_set::VertexSet;

/// Largest `|H|` for which every matching of `(H, K_n, mu)` is checked.
pub const MATCHING_KN_MAX_ORDER: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// `pt <= PT <= n - Z` and `Z * pt >= n - Z`.
    RemarkBounds,
    /// Connected graphs of order at least two have two efficient sets.
    EffNonunique,
    /// Reversal never slows a set of forces down; reversing an efficient
    /// set of forces gives an efficient one.
    Reversal,
    /// `∩ Eff(G)` equals the intersection of termini of efficient forces.
    Intersection,
    /// A non-forcing member of an efficient set exists iff deleting it keeps
    /// `pt` and lowers `Z` by one.
    VertexDeletion,
    /// Paths and edgeless graphs as the extremes, and single-force schedules.
    Extremes,
    /// Structural and exhaustive answers to `pt = n - 2` agree.
    Zigzag,
    /// Among `Z = n/2`, `pt = 1` and being a matching graph across an
    /// efficient set, any two imply the third.
    Matching,
    /// `pt((H, K_n, mu)) = 1` iff `H` is connected; equal component counts
    /// are necessary for `pt = 1`.
    MatchingKn,
    /// Per-vertex facts and prime subgraphs of `pt = 1` graphs.
    Pt1Vertex,
    /// Every minimum set has a trail at least as long as its time.
    Trail,
    /// `PT(T) <= diam(T)` for trees.
    TreeDiameter,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::RemarkBounds,
        Suite::EffNonunique,
        Suite::Reversal,
        Suite::Intersection,
        Suite::VertexDeletion,
        Suite::Extremes,
        Suite::Zigzag,
        Suite::Matching,
        Suite::MatchingKn,
        Suite::Pt1Vertex,
        Suite::Trail,
        Suite::TreeDiameter,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RemarkBounds => "remark-bounds",
            Suite::EffNonunique => "eff-nonunique",
            Suite::Reversal => "reversal",
            Suite::Intersection => "intersection",
            Suite::VertexDeletion => "vertex-deletion",
            Suite::Extremes => "extremes",
            Suite::Zigzag => "zigzag",
            Suite::Matching => "matching",
            Suite::MatchingKn => "matching-kn",
            Suite::Pt1Vertex => "pt1-vertex",
            Suite::Trail => "trail",
            Suite::TreeDiameter => "tree-diameter",
        }
    }

    /// Parses a comma-separated list; `all` selects every suite.
    pub fn parse_list(text: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if item == "all" {
                out.extend(Suite::ALL);
            } else {
                out.push(item.parse()?);
            }
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(Error::InvalidArgument("no suites selected".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "message", rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Violation(String),
    SkippedBudget,
    NotApplicable,
}

/// A zigzag graph meeting the structural conditions whose propagation time
/// is below `n - 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionRecord {
    pub graph6: String,
    pub n: usize,
    pub structural_pass: bool,
    pub brute_pt: usize,
}

/// Per-graph state shared by the suites, so the analysis runs once.
struct Checker<'a> {
    g: &'a Graph,
    budget: &'a Budget,
    report: Option<Result<AnalysisReport>>,
    exception: Option<ExceptionRecord>,
}

fn violation(msg: impl Into<String>) -> Error {
    Error::Violation(msg.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(violation(msg()))
    }
}

/// What a suite found when it did not fail outright.
enum Verdict {
    Pass,
    /// Checked what fit in the budget without finding a violation.
    Partial,
    NotApplicable,
}

impl<'a> Checker<'a> {
    fn new(g: &'a Graph, budget: &'a Budget) -> Self {
        Checker {
            g,
            budget,
            report: None,
            exception: None,
        }
    }

    fn report(&mut self) -> Result<AnalysisReport> {
        let (g, budget) = (self.g, self.budget);
        self.report.get_or_insert_with(|| analyze(g, budget)).clone()
    }

    fn run(&mut self, suite: Suite) -> Outcome {
        if self.g.order() == 0 {
            return Outcome::NotApplicable;
        }
        let res = match suite {
            Suite::RemarkBounds => self.remark_bounds(),
            Suite::EffNonunique => self.eff_nonunique(),
            Suite::Reversal => self.reversal(),
            Suite::Intersection => self.intersection(),
            Suite::VertexDeletion => self.vertex_deletion(),
            Suite::Extremes => self.extremes(),
            Suite::Zigzag => self.zigzag(),
            Suite::Matching => self.matching(),
            Suite::MatchingKn => self.matching_kn(),
            Suite::Pt1Vertex => self.pt1_vertex(),
            Suite::Trail => self.trail(),
            Suite::TreeDiameter => self.tree_diameter(),
        };
        match res {
            Ok(Verdict::Pass) => Outcome::Pass,
            Ok(Verdict::Partial) => Outcome::SkippedBudget,
            Ok(Verdict::NotApplicable) => Outcome::NotApplicable,
            Err(e) if e.is_budget() => Outcome::SkippedBudget,
            Err(Error::Violation(m)) => Outcome::Violation(m),
            Err(e) => Outcome::Violation(format!("unexpected error: {e}")),
        }
    }

    fn remark_bounds(&mut self) -> Result<Verdict> {
        self.report()?.check_invariants()?;
        Ok(Verdict::Pass)
    }

    fn eff_nonunique(&mut self) -> Result<Verdict> {
        if self.g.order() < 2 || !self.g.is_connected() {
            return Ok(Verdict::NotApplicable);
        }
        let r = self.report()?;
        ensure(r.eff.len() >= 2, || format!("only {} efficient set(s)", r.eff.len()))?;
        Ok(Verdict::Pass)
    }

    fn reversal(&mut self) -> Result<Verdict> {
        let g = self.g;
        let r = self.report()?;
        let mut complete = true;
        let mut termini_of_eff: Vec<VertexSet> = Vec::new();
        for entry in &r.min_zfs {
            let all = enumerate_force_sets(g, entry.set, self.budget)?;
            complete &= all.complete;
            let efficient_base = entry.pt == r.pt;
            for f in &all.sets {
                let t = force_propagation_time(g, f)?.propagation_time();
                let rev = f.reverse();
                let trace = force_propagation_time(g, &rev)
                    .map_err(|e| violation(format!("reversal of {f:?} is not a set of forces: {e}")))?;
                let rt = trace.propagation_time();
                ensure(rt <= t, || format!("reversal of {f:?} takes {rt} > {t}"))?;
                ensure(rev.base() == f.terminus() && rev.reverse() == *f, || {
                    format!("reversal of {f:?} is not an involution onto the terminus")
                })?;
                let term = f.terminus();
                ensure(term.len() == r.z && is_zero_forcing_set(g, term), || {
                    format!("terminus {term} of {f:?} is not a minimum zero forcing set")
                })?;
                let qs = q_sets(g, f)?;
                for (i, q) in qs.iter().enumerate() {
                    ensure(q.is_subset(trace.colored_through(i)), || {
                        format!("Q_{i} of {f:?} escapes the first {i} rounds of its reversal")
                    })?;
                }
                if efficient_base && t == r.pt {
                    ensure(rt == r.pt && r.is_efficient(term), || {
                        format!("reversal of efficient {f:?} is not efficient")
                    })?;
                    if !termini_of_eff.contains(&term) {
                        termini_of_eff.push(term);
                    }
                }
            }
        }
        if !complete {
            return Ok(Verdict::Partial);
        }
        termini_of_eff.sort_by(|a, b| a.lex_cmp(*b));
        let mut eff = r.eff.clone();
        eff.sort_by(|a, b| a.lex_cmp(*b));
        ensure(termini_of_eff == eff, || {
            "some efficient set is not the terminus of efficient forces".into()
        })?;
        Ok(Verdict::Pass)
    }

    fn intersection(&mut self) -> Result<Verdict> {
        let r = self.report()?;
        let forces = efficient_force_sets(self.g, &r, self.budget)?;
        if !forces.complete {
            return Ok(Verdict::Partial);
        }
        let by_termini = forces.all().fold(self.g.vertices(), |acc, f| acc & f.terminus());
        ensure(by_termini == r.eff_intersection, || {
            format!("∩Eff = {} but ∩Term = {by_termini}", r.eff_intersection)
        })?;
        Ok(Verdict::Pass)
    }

    fn vertex_deletion(&mut self) -> Result<Verdict> {
        let g = self.g;
        if g.order() < 2 {
            return Ok(Verdict::NotApplicable);
        }
        let r = self.report()?;
        let forces = efficient_force_sets(g, &r, self.budget)?;
        for v in 0..g.order() {
            let witnessed = forces
                .all()
                .any(|f| f.base().contains(v) && !f.sources().contains(v));
            let sub = analyze(&g.delete_vertex(v)?.graph, self.budget)?;
            let deletion = sub.pt == r.pt && sub.z + 1 == r.z;
            if witnessed && !deletion || !witnessed && deletion && forces.complete {
                return Err(violation(format!(
                    "vertex {v}: non-forcing efficient member {witnessed}, pt(G-v)={} Z(G-v)={}",
                    sub.pt, sub.z
                )));
            }
        }
        Ok(if forces.complete { Verdict::Pass } else { Verdict::Partial })
    }

    fn extremes(&mut self) -> Result<Verdict> {
        let r = self.report()?;
        let ext = classify_with(self.g, &r);
        ensure(ext.consistent(), || format!("extreme characterizations disagree: {ext:?}"))?;
        let facts = single_force_facts(self.g, &r);
        ensure(facts.all_hold(), || format!("single-force facts fail: {facts:?}"))?;
        Ok(Verdict::Pass)
    }

    fn zigzag(&mut self) -> Result<Verdict> {
        let g = self.g;
        if self.report()?.z != 2 {
            return Ok(Verdict::NotApplicable);
        }
        let d = decide_pt_nminus2(g, self.budget)?;
        ensure(d.agrees(), || {
            format!(
                "{:?} route: structural {} but pt = {} (n = {})",
                d.route,
                d.structural,
                d.brute_pt,
                g.order()
            )
        })?;
        if d.is_exception() {
            self.exception = Some(ExceptionRecord {
                graph6: encode_graph6(g)?,
                n: g.order(),
                structural_pass: d.structural,
                brute_pt: d.brute_pt,
            });
        }
        if g.is_tree() {
            let t = decide_pt_max_nminus2_tree(g, self.budget)?;
            ensure(t.structural == t.brute, || format!("tree PT = n - 2: {t:?}"))?;
        }
        Ok(Verdict::Pass)
    }

    fn matching(&mut self) -> Result<Verdict> {
        if self.g.order() < 2 {
            return Ok(Verdict::NotApplicable);
        }
        let r = self.report()?;
        let m = pt1_matching_with(self.g, &r)?;
        ensure(m.triangle_holds(), || format!("two of three without the third: {m:?}"))?;
        Ok(Verdict::Pass)
    }

    fn matching_kn(&mut self) -> Result<Verdict> {
        let h = self.g;
        let n = h.order();
        if n > MATCHING_KN_MAX_ORDER {
            return Ok(Verdict::Partial);
        }
        let kn = Family::Complete(n).build()?;
        for mu in MatchingSpec::all(n) {
            let kn_check = decide_matching_kn(h, &mu, self.budget)?;
            ensure(kn_check.predicted == kn_check.direct, || {
                format!("matching {:?}: H connected {} but pt = 1 is {}", mu.targets(), kn_check.predicted, kn_check.direct)
            })?;
            for other in [&kn, h] {
                let c = component_necessity_check(h, other, &mu, self.budget)?;
                ensure(c.consistent(), || format!("matching {:?}: {c:?}", mu.targets()))?;
            }
        }
        Ok(Verdict::Pass)
    }

    fn pt1_vertex(&mut self) -> Result<Verdict> {
        let g = self.g;
        let r = self.report()?;
        if r.pt != 1 {
            return Ok(Verdict::NotApplicable);
        }
        let rows = pt1_vertex_tests(g, &r)?;
        let bad = rows.violations();
        ensure(bad.is_empty(), || bad.join("; "))?;
        for &b in &r.eff {
            let f = record_forces(g, b, TieBreak::default())?;
            prime_subgraph(g, b, &f, self.budget)?;
            for v in b - f.sources() {
                let pt = analyze(&g.delete_vertex(v)?.graph, self.budget)?.pt;
                ensure(pt == 1, || format!("deleting non-forcing {v} of {b} gives pt {pt}"))?;
            }
        }
        Ok(Verdict::Pass)
    }

    fn trail(&mut self) -> Result<Verdict> {
        let g = self.g;
        for entry in self.report()?.min_zfs {
            let f = record_forces(g, entry.set, TieBreak::default())?;
            let t = build_trail(g, entry.set, &f)?;
            ensure(t.len() >= entry.pt, || format!("trail of {} too short", entry.set))?;
        }
        Ok(Verdict::Pass)
    }

    fn tree_diameter(&mut self) -> Result<Verdict> {
        if !self.g.is_tree() {
            return Ok(Verdict::NotApplicable);
        }
        let r = self.report()?;
        let diam = self.g.diameter().expect("trees are connected");
        ensure(r.pt_max <= diam, || format!("PT = {} > diam = {diam}", r.pt_max))?;
        Ok(Verdict::Pass)
    }
}

/// Outcomes of the selected suites on one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphResult {
    pub graph6: String,
    pub outcomes: Vec<(Suite, Outcome)>,
    pub exception: Option<ExceptionRecord>,
    /// The analysis, when it was computed within budget.
    pub report: Option<AnalysisReport>,
}

pub fn run_suites(g: &Graph, suites: &[Suite], budget: &Budget) -> GraphResult {
    let mut c = Checker::new(g, budget);
    let outcomes = suites.iter().map(|&s| (s, c.run(s))).collect();
    GraphResult {
        graph6: encode_graph6(g).unwrap_or_default(),
        outcomes,
        exception: c.exception,
        report: c.report.and_then(|r| r.ok()),
    }
}

/// Convenience: the outcome of one suite on one graph.
pub fn check(suite: Suite, g: &Graph, budget: &Budget) -> Outcome {
    Checker::new(g, budget).run(suite)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub suite: Option<Suite>,
    pub pass: usize,
    pub violation: usize,
    pub skipped_budget: usize,
    pub not_applicable: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ViolationRecord {
    pub suite: Suite,
    pub graph6: String,
    pub message: String,
    pub report: Option<AnalysisReport>,
}

/// Aggregated results of a corpus sweep, in corpus order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyRun {
    pub graphs: usize,
    pub summaries: Vec<SuiteSummary>,
    pub violations: Vec<ViolationRecord>,
    pub exceptions: Vec<ExceptionRecord>,
}

impl VerifyRun {
    pub fn violation_count(&self) -> usize {
        self.violations.len()
    }

    pub fn summary(&self, suite: Suite) -> Option<&SuiteSummary> {
        self.summaries.iter().find(|s| s.suite == Some(suite))
    }

    pub const CSV_HEADER: [&'static str; 6] = ["suite", "graphs", "pass", "violation", "skipped_budget", "not_applicable"];

    /// One row per suite.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(Self::CSV_HEADER)?;
        for s in &self.summaries {
            let suite = s.suite.map(Suite::name).unwrap_or_default();
            let cells = [self.graphs, s.pass, s.violation, s.skipped_budget, s.not_applicable].map(|x| x.to_string());
            w.write_record(std::iter::once(suite.to_string()).chain(cells))?;
        }
        w.flush()
    }

    /// Exceptional zigzag graphs as newline-terminated graph6 records.
    pub fn exceptions_graph6(&self) -> String {
        self.exceptions.iter().map(|e| format!("{}\n", e.graph6)).collect()
    }

    pub fn exceptions_json(&self) -> String {
        serde_json::to_string_pretty(&self.exceptions).expect("records serialize")
    }
}

/// Runs `suites` on every graph in parallel and merges the results in
/// corpus order.
pub fn verify_corpus(graphs: &[Graph], suites: &[Suite], budget: &Budget) -> VerifyRun {
    let results: Vec<GraphResult> = graphs.par_iter().map(|g| run_suites(g, suites, budget)).collect();
    let mut summaries: Vec<SuiteSummary> = suites
        .iter()
        .map(|&s| SuiteSummary {
            suite: Some(s),
            ..SuiteSummary::default()
        })
        .collect();
    let mut violations = Vec::new();
    let mut exceptions = Vec::new();
    for res in results {
        for (i, (suite, outcome)) in res.outcomes.iter().enumerate() {
            let s = &mut summaries[i];
            match outcome {
                Outcome::Pass => s.pass += 1,
                Outcome::SkippedBudget => s.skipped_budget += 1,
                Outcome::NotApplicable => s.not_applicable += 1,
                Outcome::Violation(m) => {
                    s.violation += 1;
                    violations.push(ViolationRecord {
                        suite: *suite,
                        graph6: res.graph6.clone(),
                        message: m.clone(),
                        report: res.report.clone(),
                    });
                }
            }
        }
        exceptions.extend(res.exception);
    }
    VerifyRun {
        graphs: graphs.len(),
        summaries,
        violations,
        exceptions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::bundled_upto6;

    #[test]
    fn parse_suites() {
        assert_eq!(Suite::parse_list("trail, zigzag").unwrap(), [Suite::Zigzag, Suite::Trail]);
        assert_eq!(Suite::parse_list("all").unwrap().len(), Suite::ALL.len());
        assert!(Suite::parse_list("nope").is_err());
        assert!(Suite::parse_list("").is_err());
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
    }

    #[test]
    fn fixtures_pass() {
        let b = Budget::default();
        for f in [Family::Dart, Family::Wheel5, Family::Cycle(4), Family::Star(3), Family::K4Leaf] {
            let g = f.build().unwrap();
            let res = run_suites(&g, &Suite::ALL, &b);
            for (s, o) in &res.outcomes {
                assert!(!matches!(o, Outcome::Violation(_)), "{f:?} {s}: {o:?}");
            }
        }
    }

    #[test]
    fn applicability() {
        let b = Budget::default();
        let c4 = Family::Cycle(4).build().unwrap();
        assert_eq!(check(Suite::TreeDiameter, &c4, &b), Outcome::NotApplicable);
        assert_eq!(check(Suite::Pt1Vertex, &c4, &b), Outcome::Pass);
        let p3 = Family::Path(3).build().unwrap();
        assert_eq!(check(Suite::Pt1Vertex, &p3, &b), Outcome::NotApplicable);
        assert_eq!(check(Suite::Zigzag, &p3, &b), Outcome::NotApplicable);
        let p7 = Family::Path(7).build().unwrap();
        assert_eq!(check(Suite::Reversal, &p7, &b), Outcome::SkippedBudget);
        assert_eq!(check(Suite::MatchingKn, &p7, &b), Outcome::SkippedBudget);
    }

    #[test]
    fn small_sweep_is_clean_and_deterministic() {
        let graphs: Vec<Graph> = bundled_upto6().into_iter().filter(|g| g.order() <= 4).collect();
        let a = verify_corpus(&graphs, &Suite::ALL, &Budget::default());
        assert_eq!(a.violation_count(), 0, "{:?}", a.violations);
        let b = verify_corpus(&graphs, &Suite::ALL, &Budget::default());
        let (mut x, mut y) = (Vec::new(), Vec::new());
        a.write_csv(&mut x).unwrap();
        b.write_csv(&mut y).unwrap();
        assert_eq!(x, y);
        let s = a.summary(Suite::EffNonunique).unwrap();
        assert_eq!(s.pass + s.not_applicable, graphs.len());
    }
}
