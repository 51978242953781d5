use std::collections::BTreeSet;

use zfprop::corpus::{bundled_upto6, graphs_up_to};
use zfprop::forcing::{force_pairs, force_propagation_time, record_forces, ForceSet, TieBreak};
use zfprop::graph::{
    are_isomorphic, cartesian_product, encode_graph6, matching_graph, parse_graph6, Family, MatchingSpec,
    PETERSEN_MATCHING,
};
use zfprop::search::{analyze, enumerate_force_sets, enumerate_min_zfs, zero_forcing_number, Budget};
use zfprop::{Graph, Vertex, VertexSet};

fn fam(f: Family) -> Graph {
    f.build().unwrap()
}

/// Plain graph6 writer for orders below 63.
fn graph6_oracle(n: usize, edges: &[(usize, usize)]) -> String {
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(edges.contains(&(i, j)) || edges.contains(&(j, i)));
        }
    }
    let mut out = vec![(n + 63) as u8];
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for k in 0..6 {
            byte = (byte << 1) | chunk.get(k).copied().unwrap_or(false) as u8;
        }
        out.push(byte + 63);
    }
    String::from_utf8(out).unwrap()
}

/// Colours vertices one force at a time until no force applies.
fn sequential_closure(g: &Graph, b: VertexSet) -> VertexSet {
    let mut black = b;
    loop {
        let next = black.iter().find_map(|v| (g.neighbors(v) - black).only());
        match next {
            Some(w) => black.insert(w),
            None => return black,
        }
    }
}

fn min_zfs_oracle(g: &Graph) -> Vec<VertexSet> {
    let n = g.order();
    for k in 0..=n {
        let found: Vec<VertexSet> = (0u64..1 << n)
            .map(VertexSet::from_bits)
            .filter(|s| s.len() == k && sequential_closure(g, *s) == g.vertices())
            .collect();
        if !found.is_empty() {
            let mut found = found;
            found.sort_by(|a, b| a.lex_cmp(*b));
            return found;
        }
    }
    unreachable!()
}

/// Every set of forces reachable by some chronological list of single forces.
fn chronological_force_sets(g: &Graph, b: VertexSet) -> BTreeSet<BTreeSet<(Vertex, Vertex)>> {
    fn go(
        g: &Graph,
        black: VertexSet,
        used: VertexSet,
        pairs: &mut Vec<(Vertex, Vertex)>,
        out: &mut BTreeSet<BTreeSet<(Vertex, Vertex)>>,
    ) {
        if black == g.vertices() {
            out.insert(pairs.iter().copied().collect());
            return;
        }
        for v in black - used {
            if let Some(w) = (g.neighbors(v) - black).only() {
                pairs.push((v, w));
                go(g, black.with(w), used.with(v), pairs, out);
                pairs.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    go(g, b, VertexSet::EMPTY, &mut Vec::new(), &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn graph6_against_independent_writer() {
    let c5 = fam(Family::Cycle(5));
    let c5_edges: Vec<_> = c5.edges().collect();
    assert_eq!(encode_graph6(&c5).unwrap(), graph6_oracle(5, &c5_edges));
    let k4 = fam(Family::Complete(4));
    let k4_edges: Vec<_> = k4.edges().collect();
    let text = graph6_oracle(4, &k4_edges);
    assert_eq!(encode_graph6(&k4).unwrap(), text);
    let parsed = parse_graph6(&text).unwrap();
    assert_eq!((parsed.order(), parsed.size()), (4, 6));
    assert_eq!(parse_graph6("@").unwrap(), Graph::empty(1).unwrap());
    for g in bundled_upto6() {
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(encode_graph6(&g).unwrap(), graph6_oracle(g.order(), &edges));
    }
}

#[test]
fn family_shapes() {
    let s = fam(Family::GeneralizedStar(2, 5, 11));
    assert_eq!((s.order(), s.size()), (19, 18));
    assert!(s.is_tree());
    let comb = fam(Family::Comb(4));
    assert_eq!((comb.order(), comb.size()), (8, 7));
    assert_eq!(comb.degrees().iter().filter(|&&d| d == 1).count(), 4);
    assert_eq!(comb.diameter(), Some(5));
    assert_eq!(fam(Family::Dart).diameter(), Some(2));
    assert_eq!(fam(Family::Edgeless(3)).diameter(), None);
    assert_eq!(fam(Family::Edgeless(3)).component_count(), 3);
    assert!(are_isomorphic(&fam(Family::Star(3)), &fam(Family::GeneralizedStar(1, 1, 1))).unwrap());
    assert!(!are_isomorphic(&fam(Family::Cycle(4)), &fam(Family::Path(4))).unwrap());
}

#[test]
fn products_and_matchings() {
    let p2 = fam(Family::Path(2));
    let c4 = cartesian_product(&p2, &p2).unwrap();
    assert!(are_isomorphic(&c4, &fam(Family::Cycle(4))).unwrap());
    let c5 = fam(Family::Cycle(5));
    let prism = cartesian_product(&c5, &p2).unwrap();
    assert_eq!((prism.order(), prism.size()), (10, 15));
    let k1 = fam(Family::Path(1));
    let dart = fam(Family::Dart);
    assert!(are_isomorphic(&cartesian_product(&k1, &dart).unwrap(), &dart).unwrap());
    let ident = matching_graph(&c5, &c5, &MatchingSpec::identity(5)).unwrap();
    assert!(are_isomorphic(&ident, &prism).unwrap());
    let petersen = matching_graph(&c5, &c5, &MatchingSpec::new(PETERSEN_MATCHING.to_vec()).unwrap()).unwrap();
    assert!(are_isomorphic(&petersen, &fam(Family::Petersen)).unwrap());
    assert_eq!(petersen.degrees(), vec![3; 10]);
    assert!(are_isomorphic(&matching_graph(&k1, &k1, &MatchingSpec::identity(1)).unwrap(), &p2).unwrap());
}

#[test]
fn vertex_deletion() {
    let dart = fam(Family::Dart);
    let pendant = (0..5).find(|&v| dart.degree(v) == 1).unwrap();
    let rest = dart.delete_vertex(pendant).unwrap().graph;
    let k4_minus = Graph::from_edges(4, fam(Family::Complete(4)).edges().filter(|&e| e != (2, 3))).unwrap();
    assert!(are_isomorphic(&rest, &k4_minus).unwrap());
    assert!(fam(Family::Star(3)).delete_vertex(0).unwrap().graph.is_edgeless());
}

#[test]
fn minimum_sets_against_brute_force() {
    let b = Budget::default();
    for g in graphs_up_to(6).unwrap().iter().flatten() {
        let want = min_zfs_oracle(g);
        assert_eq!(enumerate_min_zfs(g, &b).unwrap(), want, "{}", encode_graph6(g).unwrap());
        assert_eq!(zero_forcing_number(g, &b).unwrap().z, want[0].len());
    }
    let k3 = enumerate_min_zfs(&fam(Family::Complete(3)), &b).unwrap();
    assert_eq!(k3.len(), 3);
}

#[test]
fn dart_sets_fall_into_three_classes() {
    let dart = fam(Family::Dart);
    let sets = enumerate_min_zfs(&dart, &Budget::default()).unwrap();
    assert_eq!(sets.len(), 6);
    let autos: Vec<Vec<usize>> = permutations(5)
        .into_iter()
        .filter(|p| dart.edges().all(|(u, v)| dart.has_edge(p[u], p[v])))
        .collect();
    let classes: BTreeSet<Vec<u64>> = sets
        .iter()
        .map(|s| {
            let mut orbit: Vec<u64> = autos.iter().map(|p| s.iter().map(|v| p[v]).collect::<VertexSet>().bits()).collect();
            orbit.sort();
            orbit.dedup();
            orbit
        })
        .collect();
    assert_eq!(classes.len(), 3);
    let r = analyze(&dart, &Budget::default()).unwrap();
    assert_eq!((r.z, r.pt, r.pt_max, r.pd), (2, 3, 3, 0));
    for &e in &r.eff {
        let f = record_forces(&dart, e, TieBreak::default()).unwrap();
        let trace = force_propagation_time(&dart, &f).unwrap();
        assert_eq!(f.len(), 3);
        assert!(trace.rounds[1..].iter().all(|round| round.len() == 1));
    }
}

#[test]
fn force_sets_against_chronologies() {
    let b = Budget::default();
    for g in graphs_up_to(5).unwrap().iter().flatten() {
        for base in enumerate_min_zfs(g, &b).unwrap() {
            let e = enumerate_force_sets(g, base, &b).unwrap();
            assert!(e.complete);
            let ours: BTreeSet<_> = e.sets.iter().map(force_pairs).collect();
            assert_eq!(ours.len(), e.sets.len());
            assert_eq!(ours, chronological_force_sets(g, base), "{} from {base}", encode_graph6(g).unwrap());
        }
    }
}

#[test]
fn cycle_force_set_examples() {
    let c4 = fam(Family::Cycle(4));
    let base: VertexSet = [0, 1].into_iter().collect();
    let sets = enumerate_force_sets(&c4, base, &Budget::default()).unwrap().sets;
    let pairs: Vec<_> = sets.iter().map(force_pairs).collect();
    assert!(pairs.contains(&[(1, 2), (0, 3)].into_iter().collect()));
    assert!(pairs.contains(&[(0, 3), (3, 2)].into_iter().collect()));

    let serial = ForceSet::new(4, base, [(1, 2), (2, 3)]).unwrap();
    assert_eq!(force_propagation_time(&c4, &serial).unwrap().propagation_time(), 2);
    let f = ForceSet::new(4, base, [(1, 2), (0, 3)]).unwrap();
    let rev = f.reverse();
    assert_eq!(f.terminus(), [2, 3].into_iter().collect());
    assert_eq!(rev.base(), f.terminus());
    assert_eq!(force_pairs(&rev), [(2, 1), (3, 0)].into_iter().collect());
}

#[test]
fn analysis_examples() {
    let b = Budget::default();
    let r = analyze(&fam(Family::Edgeless(4)), &b).unwrap();
    assert_eq!((r.z, r.pt, r.pt_max), (4, 0, 0));
    let r = analyze(&fam(Family::Path(2)), &b).unwrap();
    assert_eq!(r.eff.len(), 2);
    assert!(r.eff_intersection.is_empty());
    for g in graphs_up_to(6).unwrap().iter().flatten().filter(|g| g.is_connected() && g.order() >= 2) {
        let r = analyze(g, &b).unwrap();
        if r.pd == 0 {
            assert!(r.eff_intersection.is_empty(), "{}", r.graph6);
        }
    }
}
