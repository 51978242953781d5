//! Named graph families used as fixtures.

use super::{matching_graph, Graph, MatchingSpec, Vertex};
use crate::error::{Error, Result};

/// `mu_P = (1 2 3 4 5 -> 1 4 2 5 3)` written 0-based; `(C_5, C_5, mu_P)` is
/// the Petersen graph.
pub const PETERSEN_MATCHING: [Vertex; 5] = [0, 3, 1, 4, 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Edgeless(usize),
    /// `K_{1,r}`, center 0.
    Star(usize),
    /// `S(e1, e2, e3)`: three arms of `e1 <= e2 <= e3` vertices on a center.
    GeneralizedStar(usize, usize, usize),
    /// `S(1, 1, n - 3)` on `n` vertices.
    TShaped(usize),
    /// A path on `k` vertices with a leaf appended to each.
    Comb(usize),
    /// Hub `a` adjacent to every vertex of the 4-cycle `b c d e`.
    Wheel5,
    /// `K_4` minus an edge, plus a pendant on a degree-3 vertex.
    Dart,
    /// `K_4` with a leaf appended to one vertex.
    K4Leaf,
    Hypercube(u32),
    Petersen,
    /// `P_{n-1}` plus an isolated vertex.
    PathPlusIsolated(usize),
}

impl Family {
    /// Looks up a family by name. Names are case-insensitive; several
    /// aliases are accepted.
    pub fn parse(name: &str, params: &[usize]) -> Result<Family> {
        let lower = name.to_ascii_lowercase();
        let want = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!(
                    "family {name} takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let fam = match lower.as_str() {
            "path" | "p" => {
                want(1)?;
                Family::Path(params[0])
            }
            "p2" => {
                want(0)?;
                Family::Path(2)
            }
            "cycle" | "c" => {
                want(1)?;
                Family::Cycle(params[0])
            }
            "complete" | "k" | "kn" => {
                want(1)?;
                Family::Complete(params[0])
            }
            "edgeless" | "empty" => {
                want(1)?;
                Family::Edgeless(params[0])
            }
            "star" => {
                want(1)?;
                Family::Star(params[0])
            }
            "genstar" | "generalized-star" | "s" => {
                want(3)?;
                Family::GeneralizedStar(params[0], params[1], params[2])
            }
            "tshape" | "t-shaped" => {
                want(1)?;
                Family::TShaped(params[0])
            }
            "comb" => {
                want(1)?;
                Family::Comb(params[0])
            }
            "wheel5" | "w5" => {
                want(0)?;
                Family::Wheel5
            }
            "dart" => {
                want(0)?;
                Family::Dart
            }
            "k4leaf" | "k4-leaf" => {
                want(0)?;
                Family::K4Leaf
            }
            "hypercube" | "q" => {
                want(1)?;
                Family::Hypercube(params[0] as u32)
            }
            "petersen" => {
                want(0)?;
                Family::Petersen
            }
            "path-plus-isolated" | "ppi" => {
                want(1)?;
                Family::PathPlusIsolated(params[0])
            }
            _ => return Err(Error::InvalidArgument(format!("unknown family {name:?}"))),
        };
        fam.validate()?;
        Ok(fam)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        match *self {
            Family::Path(n) | Family::Complete(n) if n == 0 => bad(format!("{self:?}: order must be positive")),
            Family::Cycle(n) if n < 3 => bad(format!("cycle needs at least 3 vertices, got {n}")),
            Family::Star(0) => bad("star needs r >= 1".into()),
            Family::GeneralizedStar(a, b, c) if !(1 <= a && a <= b && b <= c) => {
                bad(format!("generalized star needs 1 <= e1 <= e2 <= e3, got ({a},{b},{c})"))
            }
            Family::TShaped(n) if n < 4 => bad(format!("T-shaped tree needs n >= 4, got {n}")),
            Family::Comb(0) => bad("comb needs k >= 1".into()),
            Family::Hypercube(s) if s > 6 => bad(format!("hypercube dimension {s} exceeds 6")),
            Family::PathPlusIsolated(n) if n < 2 => bad(format!("P_(n-1) + P_1 needs n >= 2, got {n}")),
            _ => Ok(()),
        }
    }

    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        match *self {
            Family::Path(n) => Graph::from_edges(n, (1..n).map(|i| (i - 1, i))),
            Family::Cycle(n) => Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))),
            Family::Complete(n) => Graph::from_edges(n, (0..n).flat_map(|j| (0..j).map(move |i| (i, j)))),
            Family::Edgeless(n) => Graph::empty(n),
            Family::Star(r) => Graph::from_edges(r + 1, (1..=r).map(|i| (0, i))),
            Family::GeneralizedStar(a, b, c) => generalized_star(a, b, c),
            Family::TShaped(n) => generalized_star(1, 1, n - 3),
            Family::Comb(k) => {
                let spine = (1..k).map(|i| (i - 1, i));
                let teeth = (0..k).map(|i| (i, k + i));
                let labels = (0..k)
                    .map(|i| format!("p{}", i + 1))
                    .chain((0..k).map(|i| format!("l{}", i + 1)))
                    .collect();
                Graph::from_edges(2 * k, spine.chain(teeth))?.with_labels(labels)
            }
            Family::Wheel5 => Graph::from_edges(
                5,
                [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)],
            )?
            .with_labels(vec!["a", "b", "c", "d", "e"]),
            // 0 and 1 have degree 3 in K4 - {2,3}; the pendant 4 hangs on 0
            Family::Dart => Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (0, 4)]),
            Family::K4Leaf => Graph::from_edges(
                5,
                [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)],
            ),
            Family::Hypercube(s) => {
                let n = 1usize << s;
                Graph::from_edges(
                    n,
                    (0..n).flat_map(|v| (0..s).map(move |b| (v, v ^ (1 << b))).filter(|&(v, w)| v < w)),
                )
            }
            Family::Petersen => {
                let c5 = Family::Cycle(5).build()?;
                matching_graph(&c5, &c5, &MatchingSpec(PETERSEN_MATCHING.to_vec()))
            }
            Family::PathPlusIsolated(n) => Graph::from_edges(n, (1..n - 1).map(|i| (i - 1, i))),
        }
    }

    pub fn name(&self) -> String {
        match *self {
            Family::Path(n) => format!("P{n}"),
            Family::Cycle(n) => format!("C{n}"),
            Family::Complete(n) => format!("K{n}"),
            Family::Edgeless(n) => format!("E{n}"),
            Family::Star(r) => format!("K1,{r}"),
            Family::GeneralizedStar(a, b, c) => format!("S({a},{b},{c})"),
            Family::TShaped(n) => format!("S(1,1,{})", n - 3),
            Family::Comb(k) => format!("comb{k}"),
            Family::Wheel5 => "W5".into(),
            Family::Dart => "dart".into(),
            Family::K4Leaf => "K4+leaf".into(),
            Family::Hypercube(s) => format!("Q{s}"),
            Family::Petersen => "Petersen".into(),
            Family::PathPlusIsolated(n) => format!("P{}+P1", n - 1),
        }
    }
}

/// Named vertices of `S(e1, e2, e3)` as built by [`Family::GeneralizedStar`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenStarVertices {
    pub center: Vertex,
    /// `u_i`: the degree-one vertex of arm `i`.
    pub leaf: [Vertex; 3],
    /// `w_i`: the neighbor of the center on arm `i`.
    pub near: [Vertex; 3],
}

/// Layout: center `v = 0`, then each arm in order from `w_i` out to `u_i`.
pub fn generalized_star_vertices(e: [usize; 3]) -> GenStarVertices {
    let mut near = [0; 3];
    let mut leaf = [0; 3];
    let mut next = 1;
    for i in 0..3 {
        near[i] = next;
        leaf[i] = next + e[i] - 1;
        next += e[i];
    }
    GenStarVertices { center: 0, leaf, near }
}

fn generalized_star(a: usize, b: usize, c: usize) -> Result<Graph> {
    let e = [a, b, c];
    let named = generalized_star_vertices(e);
    let n = 1 + a + b + c;
    let mut edges = Vec::with_capacity(n - 1);
    let mut labels = vec![String::from("v")];
    for (i, &len) in e.iter().enumerate() {
        edges.push((0, named.near[i]));
        for step in 0..len {
            let x = named.near[i] + step;
            if step > 0 {
                edges.push((x - 1, x));
            }
            let label = if step + 1 == len {
                format!("u{}", i + 1)
            } else if step == 0 {
                format!("w{}", i + 1)
            } else {
                format!("a{}.{}", i + 1, step + 1)
            };
            labels.push(label);
        }
    }
    Graph::from_edges(n, edges)?.with_labels(labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_counts() {
        for n in 1..10 {
            let p = Family::Path(n).build().unwrap();
            assert_eq!((p.order(), p.size()), (n, n - 1));
            assert!(p.is_path());
        }
        for s in 1..6u32 {
            let q = Family::Hypercube(s).build().unwrap();
            assert_eq!(q.order(), 1 << s);
            assert_eq!(q.size(), s as usize * (1 << (s - 1)));
        }
        for k in 1..8 {
            let c = Family::Comb(k).build().unwrap();
            assert_eq!((c.order(), c.size()), (2 * k, 2 * k - 1));
        }
        let k5 = Family::Complete(5).build().unwrap();
        assert_eq!(k5.size(), 10);
    }

    #[test]
    fn s_2_5_11() {
        let g = Family::GeneralizedStar(2, 5, 11).build().unwrap();
        assert_eq!((g.order(), g.size()), (19, 18));
        assert!(g.is_tree());
        let named = generalized_star_vertices([2, 5, 11]);
        assert_eq!(g.degree(named.center), 3);
        for i in 0..3 {
            assert_eq!(g.degree(named.leaf[i]), 1);
            assert!(g.has_edge(named.center, named.near[i]));
            assert_eq!(g.vertex_by_label(&format!("u{}", i + 1)), Some(named.leaf[i]));
            assert_eq!(g.vertex_by_label(&format!("w{}", i + 1)), Some(named.near[i]));
        }
    }

    #[test]
    fn p1_and_comb4() {
        let p1 = Family::Path(1).build().unwrap();
        assert_eq!((p1.order(), p1.size()), (1, 0));
        let comb = Family::Comb(4).build().unwrap();
        let leaves = (0..8).filter(|&v| comb.degree(v) == 1).count();
        assert_eq!((comb.order(), comb.size(), leaves), (8, 7, 4));
    }

    #[test]
    fn dart_and_wheel_shapes() {
        let dart = Family::Dart.build().unwrap();
        let mut deg = dart.degrees();
        deg.sort();
        assert_eq!(deg, vec![1, 2, 2, 3, 4]);
        let w = Family::Wheel5.build().unwrap();
        assert_eq!(w.degree(w.vertex_by_label("a").unwrap()), 4);
        assert_eq!(w.size(), 8);
    }

    #[test]
    fn petersen_is_cubic_with_girth_five() {
        let p = Family::Petersen.build().unwrap();
        assert_eq!((p.order(), p.size()), (10, 15));
        assert!(p.degrees().iter().all(|&d| d == 3));
        // no triangles or 4-cycles: adjacent vertices share no neighbor and
        // non-adjacent vertices share exactly one
        for u in 0..10 {
            for v in u + 1..10 {
                let common = (p.neighbors(u) & p.neighbors(v)).len();
                if p.has_edge(u, v) {
                    assert_eq!(common, 0);
                } else {
                    assert_eq!(common, 1);
                }
            }
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(Family::parse("genstar", &[3, 2, 4]).is_err());
        assert!(Family::parse("genstar", &[0, 2, 4]).is_err());
        assert!(Family::parse("comb", &[0]).is_err());
        assert!(Family::parse("cycle", &[2]).is_err());
        assert!(Family::parse("nope", &[]).is_err());
        assert!(Family::parse("dart", &[1]).is_err());
        assert_eq!(Family::parse("Kn", &[3]).unwrap(), Family::Complete(3));
    }

    #[test]
    fn path_plus_isolated() {
        let g = Family::PathPlusIsolated(5).build().unwrap();
        assert_eq!((g.order(), g.size(), g.component_count()), (5, 3, 2));
    }
}
