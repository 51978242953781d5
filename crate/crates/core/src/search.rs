//! Exhaustive searches: `Z(G)`, all minimum zero forcing sets, `pt(G)`,
//! `PT(G)`, efficient sets and enumeration of sets of forces.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forcing::{force_propagation_time, propagation_time, is_zero_forcing_set, ForceSet};
use crate::graph::{encode_graph6, Graph, Vertex};
use crate::vertex_set::{binomial, subsets, subsets_with_first, VertexSet};

/// Limits for the exponential searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest order for the subset search behind `Z(G)`.
    pub max_order: usize,
    /// Cap on the number of candidate subsets examined for `Z(G)`.
    pub max_subsets: u64,
    /// Largest order for enumerating sets of forces.
    pub max_force_order: usize,
    /// Cap on source assignments tried while enumerating sets of forces.
    pub max_force_candidates: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_order: 32,
            max_subsets: 1 << 24,
            max_force_order: 6,
            max_force_candidates: 1 << 20,
        }
    }
}

impl Budget {
    pub fn with_force_order(mut self, n: usize) -> Self {
        self.max_force_order = n;
        self
    }
}

fn check_order(g: &Graph, budget: &Budget) -> Result<()> {
    if g.order() > budget.max_order {
        return Err(Error::BudgetExceeded {
            what: "order for exact zero forcing search",
            required: g.order() as u64,
            limit: budget.max_order as u64,
        });
    }
    Ok(())
}

/// Iterates subset sizes `k` from a lower bound upwards, charging each level
/// against the budget, until `level(k)` returns `Some`.
fn search_levels<T>(g: &Graph, budget: &Budget, mut level: impl FnMut(usize) -> Option<T>) -> Result<(usize, T)> {
    check_order(g, budget)?;
    let n = g.order();
    // Z(G) >= min degree, and every nonempty graph needs a black vertex
    let lower = if n == 0 { 0 } else { g.min_degree().max(1) };
    let mut spent: u64 = 0;
    for k in lower..=n {
        spent = spent.saturating_add(binomial(n, k));
        if spent > budget.max_subsets {
            return Err(Error::BudgetExceeded {
                what: "candidate subsets for zero forcing search",
                required: spent,
                limit: budget.max_subsets,
            });
        }
        if let Some(found) = level(k) {
            return Ok((k, found));
        }
    }
    unreachable!("V(G) is always a zero forcing set")
}

fn forcing_subsets_of_size(g: &Graph, k: usize) -> Vec<VertexSet> {
    let n = g.order();
    if k == 0 {
        return subsets(n, 0).filter(|&s| is_zero_forcing_set(g, s)).collect();
    }
    let per_first: Vec<Vec<VertexSet>> = (0..n)
        .into_par_iter()
        .map(|f| subsets_with_first(n, k, f).filter(|&s| is_zero_forcing_set(g, s)).collect())
        .collect();
    per_first.concat()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroForcing {
    pub z: usize,
    /// The lexicographically first minimum zero forcing set.
    pub witness: VertexSet,
}

/// `Z(G)` with a witness.
pub fn zero_forcing_number(g: &Graph, budget: &Budget) -> Result<ZeroForcing> {
    let n = g.order();
    let (z, witness) = search_levels(g, budget, |k| {
        if k == 0 {
            return subsets(n, 0).find(|&s| is_zero_forcing_set(g, s));
        }
        (0..n)
            .into_par_iter()
            .find_map_first(|f| subsets_with_first(n, k, f).find(|&s| is_zero_forcing_set(g, s)))
    })?;
    Ok(ZeroForcing { z, witness })
}

/// Every minimum zero forcing set, in lexicographic order.
pub fn enumerate_min_zfs(g: &Graph, budget: &Budget) -> Result<Vec<VertexSet>> {
    let (_, sets) = search_levels(g, budget, |k| {
        let found = forcing_subsets_of_size(g, k);
        (!found.is_empty()).then_some(found)
    })?;
    Ok(sets)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZfsEntry {
    pub set: VertexSet,
    pub pt: usize,
}

/// `Z`, `pt`, `PT` and the efficient sets of one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    #[serde(rename = "Z")]
    pub z: usize,
    pub pt: usize,
    #[serde(rename = "PT")]
    pub pt_max: usize,
    pub pd: usize,
    pub realized_times: BTreeSet<usize>,
    pub min_zfs: Vec<ZfsEntry>,
    pub eff: Vec<VertexSet>,
    pub eff_intersection: VertexSet,
}

impl AnalysisReport {
    /// `pt(G, B)` for a minimum zero forcing set `b`.
    pub fn time_of(&self, b: VertexSet) -> Option<usize> {
        self.min_zfs.iter().find(|e| e.set == b).map(|e| e.pt)
    }

    pub fn is_efficient(&self, b: VertexSet) -> bool {
        self.eff.contains(&b)
    }

    /// Checks the bounds `pt <= PT <= n - Z` and `Z * pt >= n - Z` and the
    /// consistency of the derived fields.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Violation(format!("{}: {msg}", self.graph6)));
        if !(self.pt <= self.pt_max && self.pt_max + self.z <= self.n) {
            return fail(format!("pt={} PT={} n-Z={}", self.pt, self.pt_max, self.n - self.z));
        }
        if self.z * self.pt + self.z < self.n {
            return fail(format!("Z*pt={} < n-Z={}", self.z * self.pt, self.n - self.z));
        }
        if self.realized_times.first() != Some(&self.pt) || self.realized_times.last() != Some(&self.pt_max) {
            return fail("realized times do not span [pt, PT]".into());
        }
        if self.pd != self.pt_max - self.pt {
            return fail("pd != PT - pt".into());
        }
        let eff: Vec<VertexSet> = self.min_zfs.iter().filter(|e| e.pt == self.pt).map(|e| e.set).collect();
        if eff != self.eff {
            return fail("Eff is not the set of minimum sets with time pt".into());
        }
        let meet = self.eff.iter().fold(VertexSet::full(self.n), |a, &b| a & b);
        if meet != self.eff_intersection {
            return fail("stored intersection differs from recomputed one".into());
        }
        Ok(())
    }

    /// CSV row with columns
    /// `graph6,n,m,Z,pt,PT,pd,realized_times,eff_count,eff_intersection`;
    /// list-valued cells are `;`-separated.
    pub fn csv_record(&self) -> Vec<String> {
        let join = |it: &mut dyn Iterator<Item = usize>| it.map(|v| v.to_string()).collect::<Vec<_>>().join(";");
        vec![
            self.graph6.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.z.to_string(),
            self.pt.to_string(),
            self.pt_max.to_string(),
            self.pd.to_string(),
            join(&mut self.realized_times.iter().copied()),
            self.eff.len().to_string(),
            join(&mut self.eff_intersection.iter()),
        ]
    }

    pub const CSV_HEADER: [&'static str; 10] = [
        "graph6",
        "n",
        "m",
        "Z",
        "pt",
        "PT",
        "pd",
        "realized_times",
        "eff_count",
        "eff_intersection",
    ];
}

/// Writes reports as CSV (header plus one row per report).
pub fn write_csv<W: std::io::Write>(out: W, reports: &[AnalysisReport]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(AnalysisReport::CSV_HEADER)?;
    for r in reports {
        w.write_record(r.csv_record())?;
    }
    w.flush()
}

/// Computes the full [`AnalysisReport`] of `g`.
pub fn analyze(g: &Graph, budget: &Budget) -> Result<AnalysisReport> {
    let sets = enumerate_min_zfs(g, budget)?;
    let min_zfs: Vec<ZfsEntry> = sets
        .iter()
        .map(|&set| ZfsEntry {
            set,
            pt: propagation_time(g, set).expect("minimum sets force"),
        })
        .collect();
    let realized_times: BTreeSet<usize> = min_zfs.iter().map(|e| e.pt).collect();
    let pt = *realized_times.first().unwrap();
    let pt_max = *realized_times.last().unwrap();
    let eff: Vec<VertexSet> = min_zfs.iter().filter(|e| e.pt == pt).map(|e| e.set).collect();
    let eff_intersection = eff.iter().fold(g.vertices(), |a, &b| a & b);
    Ok(AnalysisReport {
        graph6: encode_graph6(g).unwrap_or_default(),
        n: g.order(),
        m: g.size(),
        z: sets[0].len(),
        pt,
        pt_max,
        pd: pt_max - pt,
        realized_times,
        min_zfs,
        eff,
        eff_intersection,
    })
}

/// All sets of forces of `b`, possibly truncated by the budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForceSetEnumeration {
    pub sets: Vec<ForceSet>,
    /// `false` when the candidate cap cut the enumeration short.
    pub complete: bool,
}

/// Enumerates every set of forces of the zero forcing set `b`.
///
/// A set of forces is determined by the source chosen for each vertex
/// outside `b`; each assignment with distinct sources along edges is kept
/// if it replays to completion. Sets come out in a deterministic order.
pub fn enumerate_force_sets(g: &Graph, b: VertexSet, budget: &Budget) -> Result<ForceSetEnumeration> {
    g.check_set(b)?;
    if g.order() > budget.max_force_order {
        return Err(Error::BudgetExceeded {
            what: "order for force-set enumeration",
            required: g.order() as u64,
            limit: budget.max_force_order as u64,
        });
    }
    if !is_zero_forcing_set(g, b) {
        return Err(Error::NotZeroForcing);
    }
    let targets: Vec<Vertex> = (g.vertices() - b).to_vec();
    let mut state = Enumerator {
        g,
        base: b,
        targets: &targets,
        source_of: vec![None; g.order()],
        used: VertexSet::EMPTY,
        tried: 0,
        cap: budget.max_force_candidates,
        out: Vec::new(),
    };
    let complete = state.assign(0);
    Ok(ForceSetEnumeration {
        sets: state.out,
        complete,
    })
}

struct Enumerator<'a> {
    g: &'a Graph,
    base: VertexSet,
    targets: &'a [Vertex],
    source_of: Vec<Option<Vertex>>,
    used: VertexSet,
    tried: u64,
    cap: u64,
    out: Vec<ForceSet>,
}

impl Enumerator<'_> {
    /// Returns `false` once the cap is hit.
    fn assign(&mut self, i: usize) -> bool {
        if i == self.targets.len() {
            self.tried += 1;
            if self.tried > self.cap {
                return false;
            }
            let f = ForceSet::from_sources(self.base, self.source_of.clone());
            if force_propagation_time(self.g, &f).is_ok() {
                self.out.push(f);
            }
            return true;
        }
        let w = self.targets[i];
        for s in self.g.neighbors(w) - self.used {
            self.source_of[w] = Some(s);
            self.used.insert(s);
            let go_on = self.assign(i + 1);
            self.used.remove(s);
            self.source_of[w] = None;
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Efficient sets of forces of each efficient zero forcing set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EfficientForces {
    pub per_set: Vec<(VertexSet, Vec<ForceSet>)>,
    pub complete: bool,
}

impl EfficientForces {
    pub fn all(&self) -> impl Iterator<Item = &ForceSet> {
        self.per_set.iter().flat_map(|(_, fs)| fs.iter())
    }
}

/// `F_eff(G)`, grouped by base. Only efficient sets can carry efficient
/// forces, so only `Eff(G)` is scanned.
pub fn efficient_force_sets(g: &Graph, report: &AnalysisReport, budget: &Budget) -> Result<EfficientForces> {
    let mut per_set = Vec::with_capacity(report.eff.len());
    let mut complete = true;
    for &b in &report.eff {
        let all = enumerate_force_sets(g, b, budget)?;
        complete &= all.complete;
        let eff = all
            .sets
            .into_iter()
            .filter(|f| force_propagation_time(g, f).map(|t| t.propagation_time()).ok() == Some(report.pt))
            .collect();
        per_set.push((b, eff));
    }
    Ok(EfficientForces { per_set, complete })
}

/// `∩ Eff(G)`, cross-checked against the intersection of the termini of all
/// efficient sets of forces when that enumeration fits the budget.
pub fn efficient_intersection(g: &Graph, budget: &Budget) -> Result<VertexSet> {
    let report = analyze(g, budget)?;
    if g.order() <= budget.max_force_order {
        let forces = efficient_force_sets(g, &report, budget)?;
        if forces.complete {
            let by_termini = forces.all().fold(g.vertices(), |acc, f| acc & f.terminus());
            if by_termini != report.eff_intersection {
                return Err(Error::Violation(format!(
                    "{}: intersection of Eff {} differs from intersection of termini {}",
                    report.graph6, report.eff_intersection, by_termini
                )));
            }
        }
    }
    Ok(report.eff_intersection)
}

/// Whether `G` has at least two efficient zero forcing sets.
pub fn verify_nonuniqueness(g: &Graph, budget: &Budget) -> Result<bool> {
    if g.order() < 2 || !g.is_connected() {
        return Err(Error::Precondition(
            "efficient-set non-uniqueness needs a connected graph of order at least 2".into(),
        ));
    }
    Ok(analyze(g, budget)?.eff.len() >= 2)
}

/// `pt(G)` alone.
pub fn min_propagation_time(g: &Graph, budget: &Budget) -> Result<usize> {
    Ok(analyze(g, budget)?.pt)
}
