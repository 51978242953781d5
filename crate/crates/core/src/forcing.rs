//! The colour-change rule: synchronous propagation, recorded sets of forces,
//! chains, terminus, reversal and the `Q_t` sets.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::vertex_set::VertexSet;

/// Rounds `B^(0), B^(1), ..` of synchronous propagation from `B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropagationTrace {
    pub rounds: Vec<VertexSet>,
    /// The final colouring is all of `V`.
    pub complete: bool,
}

impl PropagationTrace {
    /// `pt(G, B)`, or `None` if `B` is not a zero forcing set.
    pub fn propagation_time(&self) -> Option<usize> {
        self.complete.then(|| self.rounds.len() - 1)
    }

    pub fn final_coloring(&self) -> VertexSet {
        self.rounds.iter().fold(VertexSet::EMPTY, |acc, &r| acc | r)
    }

    /// Black vertices after round `t` (the union of rounds `0..=t`).
    pub fn colored_through(&self, t: usize) -> VertexSet {
        self.rounds.iter().take(t + 1).fold(VertexSet::EMPTY, |acc, &r| acc | r)
    }

    /// Round in which each vertex turned black.
    pub fn round_of(&self, n: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; n];
        for (t, r) in self.rounds.iter().enumerate() {
            for v in *r {
                out[v] = Some(t);
            }
        }
        out
    }
}

/// Vertices that some black vertex can force given the black set `black`.
fn forceable(g: &Graph, black: VertexSet) -> VertexSet {
    let mut next = VertexSet::EMPTY;
    for v in black {
        if let Some(w) = (g.neighbors(v) - black).only() {
            next.insert(w);
        }
    }
    next
}

/// Runs the colour-change rule with all possible forces performed
/// simultaneously each round.
pub fn propagate(g: &Graph, b: VertexSet) -> Result<PropagationTrace> {
    g.check_set(b)?;
    let mut black = b;
    let mut rounds = vec![b];
    loop {
        let next = forceable(g, black);
        if next.is_empty() {
            break;
        }
        black |= next;
        rounds.push(next);
    }
    Ok(PropagationTrace {
        rounds,
        complete: black == g.vertices(),
    })
}

/// Final colouring of `b`.
pub fn closure(g: &Graph, b: VertexSet) -> VertexSet {
    let mut black = b;
    loop {
        let next = forceable(g, black);
        if next.is_empty() {
            return black;
        }
        black |= next;
    }
}

pub fn is_zero_forcing_set(g: &Graph, b: VertexSet) -> bool {
    b.is_subset(g.vertices()) && closure(g, b) == g.vertices()
}

/// `pt(G, B)`, or `None` when `b` does not force `g`.
pub fn propagation_time(g: &Graph, b: VertexSet) -> Option<usize> {
    propagate(g, b).ok()?.propagation_time()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Force {
    pub source: Vertex,
    pub target: Vertex,
}

impl std::fmt::Display for Force {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}->{}", self.source, self.target)
    }
}

/// A zero forcing set together with an unordered set of forces.
///
/// Construction checks the combinatorial invariants (every non-base vertex
/// is forced exactly once, no vertex forces twice). Whether the forces can be
/// replayed in `G` is checked by [`force_propagation_time`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ForceSet {
    base: VertexSet,
    /// `source_of[w]` for each forced `w`.
    source_of: Vec<Option<Vertex>>,
}

impl ForceSet {
    pub fn new<I>(n: usize, base: VertexSet, forces: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if !base.is_subset(VertexSet::full(n)) {
            return Err(Error::InvalidForceSet(format!("base {base} not within order {n}")));
        }
        let mut source_of = vec![None; n];
        let mut sources = VertexSet::EMPTY;
        for (s, t) in forces {
            if s >= n || t >= n {
                return Err(Error::InvalidForceSet(format!("force {s}->{t} out of range")));
            }
            if base.contains(t) {
                return Err(Error::InvalidForceSet(format!("force {s}->{t} targets a base vertex")));
            }
            if source_of[t].is_some() {
                return Err(Error::InvalidForceSet(format!("vertex {t} forced twice")));
            }
            if sources.contains(s) {
                return Err(Error::InvalidForceSet(format!("vertex {s} forces twice")));
            }
            sources.insert(s);
            source_of[t] = Some(s);
        }
        if let Some(t) = (0..n).find(|&t| !base.contains(t) && source_of[t].is_none()) {
            return Err(Error::InvalidForceSet(format!("vertex {t} is never forced")));
        }
        Ok(ForceSet { base, source_of })
    }

    pub(crate) fn from_sources(base: VertexSet, source_of: Vec<Option<Vertex>>) -> Self {
        ForceSet { base, source_of }
    }

    pub fn order(&self) -> usize {
        self.source_of.len()
    }

    pub fn base(&self) -> VertexSet {
        self.base
    }

    pub fn source_of(&self, target: Vertex) -> Option<Vertex> {
        self.source_of[target]
    }

    /// The vertex forced by `source`, if any.
    pub fn target_of(&self, source: Vertex) -> Option<Vertex> {
        self.source_of.iter().position(|&s| s == Some(source))
    }

    /// Forces sorted by source.
    pub fn forces(&self) -> Vec<Force> {
        let mut out: Vec<Force> = self
            .source_of
            .iter()
            .enumerate()
            .filter_map(|(target, s)| s.map(|source| Force { source, target }))
            .collect();
        out.sort();
        out
    }

    pub fn len(&self) -> usize {
        self.source_of.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn sources(&self) -> VertexSet {
        self.source_of.iter().flatten().collect()
    }

    /// `Term(F)`: vertices that perform no force.
    pub fn terminus(&self) -> VertexSet {
        VertexSet::full(self.order()) - self.sources()
    }

    /// `Rev(F)`: every force flipped, based at the terminus.
    pub fn reverse(&self) -> ForceSet {
        let mut source_of = vec![None; self.order()];
        for f in self.forces() {
            source_of[f.source] = Some(f.target);
        }
        ForceSet {
            base: self.terminus(),
            source_of,
        }
    }

    /// Maximal forcing chains, one per base vertex, ordered by their start.
    pub fn chains(&self) -> Vec<Vec<Vertex>> {
        let mut next = vec![None; self.order()];
        for f in self.forces() {
            next[f.source] = Some(f.target);
        }
        self.base
            .iter()
            .map(|start| {
                let mut chain = vec![start];
                let mut cur = start;
                while let Some(t) = next[cur] {
                    chain.push(t);
                    cur = t;
                }
                chain
            })
            .collect()
    }
}

/// JSON form: `{"base":[...],"forces":[[u,v],...]}`.
#[derive(Serialize, Deserialize)]
struct ForceSetRepr {
    base: Vec<Vertex>,
    forces: Vec<[Vertex; 2]>,
}

impl Serialize for ForceSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ForceSetRepr {
            base: self.base.to_vec(),
            forces: self.forces().iter().map(|f| [f.source, f.target]).collect(),
        }
        .serialize(serializer)
    }
}

impl ForceSet {
    /// Reads the JSON form; the order is needed because it is not stored.
    pub fn from_json(n: usize, text: &str) -> Result<ForceSet> {
        let repr: ForceSetRepr = serde_json::from_str(text)
            .map_err(|e| Error::InvalidForceSet(format!("bad JSON: {e}")))?;
        if let Some(&v) = repr.base.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidForceSet(format!("base vertex {v} out of range")));
        }
        ForceSet::new(
            n,
            repr.base.iter().collect(),
            repr.forces.iter().map(|f| (f[0], f[1])),
        )
    }
}

/// How [`record_forces`] picks among several vertices able to force the same
/// target in one round.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    #[default]
    SmallestSource,
    LargestSource,
}

impl TieBreak {
    fn choose(self, _target: Vertex, candidates: VertexSet) -> Vertex {
        match self {
            TieBreak::SmallestSource => candidates.first().unwrap(),
            TieBreak::LargestSource => candidates.last().unwrap(),
        }
    }
}

/// Records a set of forces in which every force fires at the earliest
/// possible round.
pub fn record_forces(g: &Graph, b: VertexSet, tie_break: TieBreak) -> Result<ForceSet> {
    record_forces_with(g, b, |t, c| tie_break.choose(t, c))
}

/// Like [`record_forces`], with a caller-supplied rule
/// `choose(target, candidate_sources) -> source`.
pub fn record_forces_with<F>(g: &Graph, b: VertexSet, mut choose: F) -> Result<ForceSet>
where
    F: FnMut(Vertex, VertexSet) -> Vertex,
{
    g.check_set(b)?;
    let n = g.order();
    let mut black = b;
    let mut source_of = vec![None; n];
    loop {
        let mut candidates = vec![VertexSet::EMPTY; n];
        let mut round = VertexSet::EMPTY;
        for v in black {
            if let Some(w) = (g.neighbors(v) - black).only() {
                candidates[w].insert(v);
                round.insert(w);
            }
        }
        if round.is_empty() {
            break;
        }
        for w in round {
            let s = choose(w, candidates[w]);
            if !candidates[w].contains(s) {
                return Err(Error::InvalidForce {
                from: s,
                to: w,
                    reason: "tie-break chose a vertex unable to force".into(),
                });
            }
            source_of[w] = Some(s);
        }
        black |= round;
    }
    if black != g.vertices() {
        return Err(Error::NotZeroForcing);
    }
    Ok(ForceSet::from_sources(b, source_of))
}

/// Rounds `F^(0), F^(1), ..` of a constrained force set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForceTrace {
    pub rounds: Vec<VertexSet>,
}

impl ForceTrace {
    /// `pt(G, F)`.
    pub fn propagation_time(&self) -> usize {
        self.rounds.len() - 1
    }

    pub fn colored_through(&self, t: usize) -> VertexSet {
        self.rounds.iter().take(t + 1).fold(VertexSet::EMPTY, |acc, &r| acc | r)
    }

    pub fn round_of(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for (t, r) in self.rounds.iter().enumerate() {
            for v in *r {
                out[v] = t;
            }
        }
        out
    }
}

/// Replays `f` in `g`, performing in each round every force of `f` whose
/// source has its target as only uncoloured neighbour.
pub fn force_propagation_time(g: &Graph, f: &ForceSet) -> Result<ForceTrace> {
    if f.order() != g.order() {
        return Err(Error::InvalidForceSet(format!(
            "force set of order {} for graph of order {}",
            f.order(),
            g.order()
        )));
    }
    let forces = f.forces();
    if let Some(bad) = forces.iter().find(|fc| !g.has_edge(fc.source, fc.target)) {
        return Err(Error::InvalidForce {
                from: bad.source,
                to: bad.target,
            reason: "not an edge".into(),
        });
    }
    let mut black = f.base();
    let mut rounds = vec![black];
    while black != g.vertices() {
        let round: VertexSet = forces
            .iter()
            .filter(|fc| {
                !black.contains(fc.target)
                    && black.contains(fc.source)
                    && (g.neighbors(fc.source) - black).only() == Some(fc.target)
            })
            .map(|fc| fc.target)
            .collect();
        if round.is_empty() {
            let stuck = forces.iter().find(|fc| !black.contains(fc.target)).unwrap();
            return Err(Error::InvalidForce {
                from: stuck.source,
                to: stuck.target,
                reason: "force can never fire".into(),
            });
        }
        black |= round;
        rounds.push(round);
    }
    Ok(ForceTrace { rounds })
}

/// Checks that `f` is a set of forces of its base in `g`.
pub fn validate(g: &Graph, f: &ForceSet) -> Result<()> {
    force_propagation_time(g, f).map(|_| ())
}

/// `Q_0(F), .., Q_pt(F)`, indexed from the end of the replay of `f`.
pub fn q_sets(g: &Graph, f: &ForceSet) -> Result<Vec<VertexSet>> {
    let trace = force_propagation_time(g, f)?;
    let pt = trace.propagation_time();
    let mut out = vec![f.terminus()];
    for t in 1..=pt {
        let landing = trace.rounds[pt - t + 1];
        out.push(landing.iter().filter_map(|w| f.source_of(w)).collect());
    }
    Ok(out)
}

/// Sorted, de-duplicated list of forces; handy for comparisons in tests.
pub fn force_pairs(f: &ForceSet) -> BTreeSet<(Vertex, Vertex)> {
    f.forces().iter().map(|fc| (fc.source, fc.target)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().collect()
    }

    fn c4() -> Graph {
        Family::Cycle(4).build().unwrap()
    }

    /// Sequential closure: fire one force at a time until stuck.
    fn naive_closure(g: &Graph, b: VertexSet) -> VertexSet {
        let mut black = b;
        'outer: loop {
            for v in black {
                let white: Vec<_> = g.neighbors(v).iter().filter(|w| !black.contains(*w)).collect();
                if white.len() == 1 {
                    black.insert(white[0]);
                    continue 'outer;
                }
            }
            return black;
        }
    }

    #[test]
    fn propagate_examples() {
        let p4 = Family::Path(4).build().unwrap();
        let t = propagate(&p4, set(&[0])).unwrap();
        assert_eq!(t.propagation_time(), Some(3));

        let t = propagate(&c4(), set(&[0, 1])).unwrap();
        assert_eq!(t.propagation_time(), Some(1));

        let k3 = Family::Complete(3).build().unwrap();
        let t = propagate(&k3, VertexSet::EMPTY).unwrap();
        assert!(!t.complete);
        assert_eq!(t.rounds, vec![VertexSet::EMPTY]);
    }

    #[test]
    fn zero_forcing_examples() {
        let p3 = Family::Path(3).build().unwrap();
        assert!(!is_zero_forcing_set(&p3, set(&[1])));
        let e = Graph::empty(4).unwrap();
        assert!(is_zero_forcing_set(&e, e.vertices()));
        assert_eq!(propagation_time(&e, e.vertices()), Some(0));
        let s = Family::GeneralizedStar(2, 5, 11).build().unwrap();
        assert!(is_zero_forcing_set(&s, s.labeled_set(&["u2", "u3"]).unwrap()));
    }

    #[test]
    fn closure_agrees_with_sequential_rule() {
        let g = Family::Petersen.build().unwrap();
        for bits in 0u64..1 << 10 {
            let b = VertexSet::from_bits(bits);
            assert_eq!(closure(&g, b), naive_closure(&g, b));
        }
    }

    #[test]
    fn record_forces_examples() {
        let p3 = Family::Path(3).build().unwrap();
        let f = record_forces(&p3, set(&[0]), TieBreak::default()).unwrap();
        assert_eq!(force_pairs(&f), BTreeSet::from([(0, 1), (1, 2)]));

        let f = record_forces(&c4(), set(&[0, 1]), TieBreak::default()).unwrap();
        assert_eq!(force_pairs(&f), BTreeSet::from([(1, 2), (0, 3)]));

        assert_eq!(
            record_forces(&p3, set(&[1]), TieBreak::default()),
            Err(Error::NotZeroForcing)
        );
    }

    #[test]
    fn tie_break_changes_source() {
        // K3 from {0,1}: both can force 2
        let k3 = Family::Complete(3).build().unwrap();
        let lo = record_forces(&k3, set(&[0, 1]), TieBreak::SmallestSource).unwrap();
        let hi = record_forces(&k3, set(&[0, 1]), TieBreak::LargestSource).unwrap();
        assert_eq!(lo.source_of(2), Some(0));
        assert_eq!(hi.source_of(2), Some(1));
    }

    #[test]
    fn constrained_propagation() {
        let p3 = Family::Path(3).build().unwrap();
        let f = record_forces(&p3, set(&[0]), TieBreak::default()).unwrap();
        assert_eq!(force_propagation_time(&p3, &f).unwrap().propagation_time(), 2);

        // serialized schedule on C4
        let f = ForceSet::new(4, set(&[0, 1]), [(1, 2), (2, 3)]).unwrap();
        let trace = force_propagation_time(&c4(), &f).unwrap();
        assert_eq!(trace.propagation_time(), 2);
        assert_eq!(trace.rounds, vec![set(&[0, 1]), set(&[2]), set(&[3])]);
    }

    #[test]
    fn invalid_force_sets() {
        // 0->2 is not an edge of C4
        let f = ForceSet::new(4, set(&[0, 1]), [(0, 2), (1, 3)]).unwrap();
        assert!(matches!(
            force_propagation_time(&c4(), &f),
            Err(Error::InvalidForce {
                from: 0,
                to: 2, .. })
        ));
        // P3 from the middle: 1->0 can never fire
        let p3 = Family::Path(3).build().unwrap();
        let f = ForceSet::new(3, set(&[1]), [(1, 0), (0, 2)]).unwrap();
        assert!(matches!(
            force_propagation_time(&p3, &f),
            Err(Error::InvalidForce {
                from: 0,
                to: 2, .. })
        ));
        // K3 from {0}: 0->1 needs 2 black first, and 1->2 needs 1 black
        let k3 = Family::Complete(3).build().unwrap();
        let f = ForceSet::new(3, set(&[0]), [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            force_propagation_time(&k3, &f),
            Err(Error::InvalidForce {
                from: 0,
                to: 1, .. })
        ));
        let f = ForceSet::new(3, set(&[1, 2]), [(1, 0)]).unwrap();
        assert!(force_propagation_time(&p3, &f).is_ok());
        let f = ForceSet::new(3, set(&[1]), [(1, 0)]);
        assert!(f.is_err());
        assert!(ForceSet::new(3, set(&[0]), [(0, 1), (0, 2)]).is_err());
    }

    #[test]
    fn terminus_reverse_chains() {
        let p3 = Family::Path(3).build().unwrap();
        let f = record_forces(&p3, set(&[0]), TieBreak::default()).unwrap();
        assert_eq!(f.terminus(), set(&[2]));
        let r = f.reverse();
        assert_eq!(r.base(), set(&[2]));
        assert_eq!(force_pairs(&r), BTreeSet::from([(2, 1), (1, 0)]));
        assert_eq!(r.reverse(), f);

        let f = record_forces(&c4(), set(&[0, 1]), TieBreak::default()).unwrap();
        assert_eq!(f.terminus(), set(&[2, 3]));
        let r = f.reverse();
        assert_eq!(r.base(), set(&[2, 3]));
        assert_eq!(force_pairs(&r), BTreeSet::from([(2, 1), (3, 0)]));
        validate(&c4(), &r).unwrap();

        let e = Graph::empty(3).unwrap();
        let f = record_forces(&e, e.vertices(), TieBreak::default()).unwrap();
        assert!(f.is_empty());
        assert_eq!(f.terminus(), e.vertices());
        assert_eq!(f.chains(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn chains_of_path() {
        let p5 = Family::Path(5).build().unwrap();
        let f = record_forces(&p5, set(&[0]), TieBreak::default()).unwrap();
        assert_eq!(f.chains(), vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn q_sets_examples() {
        let p3 = Family::Path(3).build().unwrap();
        let f = record_forces(&p3, set(&[0]), TieBreak::default()).unwrap();
        assert_eq!(q_sets(&p3, &f).unwrap(), vec![set(&[2]), set(&[1]), set(&[0])]);

        let e = Graph::empty(2).unwrap();
        let f = record_forces(&e, e.vertices(), TieBreak::default()).unwrap();
        assert_eq!(q_sets(&e, &f).unwrap(), vec![e.vertices()]);
    }

    #[test]
    fn json_round_trip() {
        let f = record_forces(&c4(), set(&[0, 1]), TieBreak::default()).unwrap();
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(text, r#"{"base":[0,1],"forces":[[0,3],[1,2]]}"#);
        assert_eq!(ForceSet::from_json(4, &text).unwrap(), f);
        assert!(ForceSet::from_json(4, r#"{"base":[0,9],"forces":[]}"#).is_err());
    }
}
