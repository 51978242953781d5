//! Isomorphism testing for small graphs: colour refinement on the disjoint
//! union, then backtracking within colour classes.

use super::{Graph, Vertex};
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Largest order accepted by [`are_isomorphic`].
pub const MAX_ISO_ORDER: usize = 12;

/// Refines an ordered partition until it is equitable. The result depends
/// only on the isomorphism type of `(adj, cells)`.
pub(crate) fn refine(adj: &[VertexSet], mut cells: Vec<Vec<Vertex>>) -> Vec<Vec<Vertex>> {
    loop {
        let masks: Vec<VertexSet> = cells.iter().map(|c| c.iter().collect()).collect();
        let mut next: Vec<Vec<Vertex>> = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, Vertex)> = cell
                .iter()
                .map(|&v| (masks.iter().map(|m| (adj[v] & *m).len()).collect(), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

/// Whether `g` and `h` are isomorphic.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    Ok(isomorphism(g, h)?.is_some())
}

/// An isomorphism `phi` from `g` to `h` (`phi[v]` is the image of `v`), if
/// one exists.
pub fn isomorphism(g: &Graph, h: &Graph) -> Result<Option<Vec<Vertex>>> {
    let n = g.order();
    for order in [n, h.order()] {
        if order > MAX_ISO_ORDER {
            return Err(Error::BudgetExceeded {
                what: "isomorphism order",
                required: order as u64,
                limit: MAX_ISO_ORDER as u64,
            });
        }
    }
    if n != h.order() || g.size() != h.size() {
        return Ok(None);
    }
    let mut gd = g.degrees();
    let mut hd = h.degrees();
    gd.sort_unstable();
    hd.sort_unstable();
    if gd != hd {
        return Ok(None);
    }

    let union = g.disjoint_union(h)?;
    let adj: Vec<VertexSet> = (0..2 * n).map(|v| union.neighbors(v)).collect();
    let cells = refine(&adj, vec![(0..2 * n).collect()]);
    let mut colour = vec![0; 2 * n];
    for (c, cell) in cells.iter().enumerate() {
        let in_g = cell.iter().filter(|&&v| v < n).count();
        if 2 * in_g != cell.len() {
            return Ok(None);
        }
        for &v in cell {
            colour[v] = c;
        }
    }

    // map g's vertices in BFS order so each new vertex usually has a mapped
    // neighbour, which pins its candidates
    let mut order = Vec::with_capacity(n);
    let mut placed = VertexSet::EMPTY;
    while order.len() < n {
        let start = (g.vertices() - placed)
            .iter()
            .min_by_key(|&v| cells[colour[v]].len())
            .unwrap();
        let mut queue = std::collections::VecDeque::from([start]);
        placed.insert(start);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in g.neighbors(v) - placed {
                placed.insert(w);
                queue.push_back(w);
            }
        }
    }

    let mut phi = vec![usize::MAX; n];
    let mut used = VertexSet::EMPTY;
    let found = extend(g, h, n, &colour, &order, 0, &mut phi, &mut used);
    Ok(found.then_some(phi))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    h: &Graph,
    n: usize,
    colour: &[usize],
    order: &[Vertex],
    depth: usize,
    phi: &mut [Vertex],
    used: &mut VertexSet,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    let mapped: Vec<Vertex> = order[..depth].to_vec();
    for w in h.vertices() - *used {
        if colour[n + w] != colour[v] {
            continue;
        }
        let consistent = mapped
            .iter()
            .all(|&u| g.has_edge(u, v) == h.has_edge(phi[u], w));
        if !consistent {
            continue;
        }
        phi[v] = w;
        used.insert(w);
        if extend(g, h, n, colour, order, depth + 1, phi, used) {
            return true;
        }
        used.remove(w);
    }
    phi[v] = usize::MAX;
    false
}
