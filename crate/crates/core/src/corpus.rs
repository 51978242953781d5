//! Small-graph corpora: isomorph-free generation of all graphs, connected
//! graphs and trees of a given order, plus a bundled graph6 file.
//!
//! Graphs of order `n` are produced by adding a vertex to every graph of
//! order `n - 1` in every possible way. Candidates are bucketed by a
//! colour-refinement invariant and deduplicated inside each bucket with
//! exact isomorphism tests.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{encode_graph6, isomorphism, parse_graph6_lines, refine, Graph};
use crate::vertex_set::VertexSet;

/// Largest order [`graphs_up_to`] will generate.
pub const MAX_GENERATED_ORDER: usize = 9;

/// Every graph of order 1 to 6 up to isomorphism, one graph6 record per line.
pub const BUNDLED_UPTO6: &str = include_str!("../data/graphs_upto6.g6");

/// Graphs on at most eight vertices that meet every structural condition
/// for `pt = n - 2` except membership in the exceptional family, which has
/// no structural description here; found by sweeping all graphs with
/// `Z = 2`.
pub const ZIGZAG_EXCEPTIONS_UPTO8: &str = include_str!("../data/zigzag_exceptions_upto8.g6");

pub fn bundled_upto6() -> Vec<Graph> {
    parse_graph6_lines(BUNDLED_UPTO6).expect("bundled corpus parses")
}

/// Parses a corpus file of graph6 records.
pub fn read_corpus(text: &str) -> Result<Vec<Graph>> {
    parse_graph6_lines(text)
}

/// Writes graphs as newline-terminated graph6 records.
pub fn write_corpus(graphs: &[Graph]) -> Result<String> {
    let mut out = String::new();
    for g in graphs {
        out.push_str(&encode_graph6(g)?);
        out.push('\n');
    }
    Ok(out)
}

/// Isomorphism invariant: order, size, and the cell sizes and quotient
/// matrix of the coarsest equitable partition.
fn invariant(g: &Graph) -> Vec<u16> {
    let n = g.order();
    let adj: Vec<VertexSet> = (0..n).map(|v| g.neighbors(v)).collect();
    let cells = refine(&adj, vec![(0..n).collect()]);
    let masks: Vec<VertexSet> = cells.iter().map(|c| c.iter().collect()).collect();
    let mut out = vec![n as u16, g.size() as u16, cells.len() as u16];
    for c in &cells {
        out.push(c.len() as u16);
        for m in &masks {
            out.push((adj[c[0]] & *m).len() as u16);
        }
    }
    out
}

/// Keeps one graph per isomorphism class, in first-seen order within each
/// bucket; the result is sorted by size and then graph6.
fn dedupe(candidates: Vec<Graph>) -> Vec<Graph> {
    let keyed: Vec<(Vec<u16>, Graph)> = candidates.into_par_iter().map(|g| (invariant(&g), g)).collect();
    let mut buckets: BTreeMap<Vec<u16>, Vec<Graph>> = BTreeMap::new();
    for (k, g) in keyed {
        buckets.entry(k).or_default().push(g);
    }
    let buckets: Vec<Vec<Graph>> = buckets.into_values().collect();
    let mut out: Vec<Graph> = buckets
        .into_par_iter()
        .flat_map_iter(|bucket| {
            let mut reps: Vec<Graph> = Vec::new();
            for g in bucket {
                if !reps.iter().any(|r| isomorphism(r, &g).expect("order within budget").is_some()) {
                    reps.push(g);
                }
            }
            reps
        })
        .collect();
    sort_graphs(&mut out);
    out
}

fn sort_graphs(gs: &mut [Graph]) {
    gs.sort_by_cached_key(|g| (g.order(), g.size(), encode_graph6(g).unwrap()));
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_GENERATED_ORDER {
        return Err(Error::BudgetExceeded {
            what: "order for corpus generation",
            required: n as u64,
            limit: MAX_GENERATED_ORDER as u64,
        });
    }
    Ok(())
}

fn extend_all(parents: &[Graph]) -> Vec<Graph> {
    parents
        .par_iter()
        .flat_map_iter(|p| {
            let m = p.order();
            (0u64..1 << m).map(move |mask| {
                let mut edges: Vec<(usize, usize)> = p.edges().collect();
                edges.extend(VertexSet::from_bits(mask).iter().map(|v| (v, m)));
                Graph::from_edges(m + 1, edges).unwrap()
            })
        })
        .collect()
}

/// All graphs of orders `1..=n`, one level per order.
pub fn graphs_up_to(n: usize) -> Result<Vec<Vec<Graph>>> {
    check_order(n)?;
    let mut levels: Vec<Vec<Graph>> = Vec::with_capacity(n);
    for k in 1..=n {
        let level = if k == 1 {
            vec![Graph::empty(1)?]
        } else {
            dedupe(extend_all(&levels[k - 2]))
        };
        levels.push(level);
    }
    Ok(levels)
}

/// Every graph of order `n` up to isomorphism.
pub fn graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 {
        return Ok(vec![Graph::empty(0)?]);
    }
    Ok(graphs_up_to(n)?.pop().unwrap())
}

pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(graphs(n)?.into_iter().filter(Graph::is_connected).collect())
}

/// Every tree of order `n` up to isomorphism, by leaf extension.
pub fn trees(n: usize) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::InvalidArgument("trees need at least one vertex".into()));
    }
    check_order(n)?;
    let mut level = vec![Graph::empty(1)?];
    for _ in 1..n {
        let candidates: Vec<Graph> = level
            .par_iter()
            .flat_map_iter(|t| {
                let m = t.order();
                (0..m).map(move |v| {
                    let mut edges: Vec<(usize, usize)> = t.edges().collect();
                    edges.push((v, m));
                    Graph::from_edges(m + 1, edges).unwrap()
                })
            })
            .collect();
        level = dedupe(candidates);
    }
    Ok(level)
}
