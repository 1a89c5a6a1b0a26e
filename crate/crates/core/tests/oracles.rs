use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use satforge::canon::canonical_form;
use satforge::graph::{Diameter, Graph};
use satforge::io::{edgelist_decode, edgelist_encode, graph6_decode, graph6_encode};
use satforge::patterns::{has_clique, has_path_of_order, layer_decompose, subtree_contains};
use satforge::saturation::{check_saturated, contains_member, ForbiddenFamily};
use satforge::search::{enumerate_graphs, enumerate_trees};

fn graph_strategy(max_order: usize) -> impl Strategy<Value = Graph> {
    (1..=max_order).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::new(n, &edges).unwrap()
        })
    })
}

fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

/// Order of the longest path, by dynamic programming over vertex subsets.
fn longest_path_dp(g: &Graph) -> usize {
    let n = g.order();
    if n == 0 {
        return 0;
    }
    // ends[mask] = bitmask of vertices v such that some path covers exactly `mask` and ends at v.
    let mut ends = vec![0u32; 1 << n];
    let mut best = 1;
    for v in 0..n {
        ends[1 << v] |= 1 << v;
    }
    for mask in 1usize..1 << n {
        let e = ends[mask];
        if e == 0 {
            continue;
        }
        best = best.max(mask.count_ones() as usize);
        for v in 0..n {
            if e & (1 << v) == 0 {
                continue;
            }
            for &w in g.neighbors(v) {
                if mask & (1 << w) == 0 {
                    ends[mask | 1 << w] |= 1 << w;
                }
            }
        }
    }
    best
}

fn clique_number(g: &Graph) -> usize {
    let n = g.order();
    (0usize..1 << n)
        .filter(|&m| {
            let vs: Vec<_> = (0..n).filter(|&v| m & (1 << v) != 0).collect();
            vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Injective homomorphism search, vertex by vertex.
fn embeds(host: &Graph, pattern: &Graph) -> bool {
    fn go(host: &Graph, pattern: &Graph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = map.len();
        if i == pattern.order() {
            return true;
        }
        for h in 0..host.order() {
            if used[h] || !(0..i).all(|j| !pattern.has_edge(i, j) || host.has_edge(h, map[j])) {
                continue;
            }
            used[h] = true;
            map.push(h);
            if go(host, pattern, map, used) {
                return true;
            }
            map.pop();
            used[h] = false;
        }
        false
    }
    go(host, pattern, &mut Vec::new(), &mut vec![false; host.order()])
}

fn all_pairs(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let inf = usize::MAX / 2;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trip(g in graph_strategy(70)) {
        prop_assert_eq!(graph6_decode(graph6_encode(&g).as_bytes()).unwrap(), g);
    }

    #[test]
    fn edgelist_round_trip(g in graph_strategy(20)) {
        prop_assert_eq!(edgelist_decode(&edgelist_encode(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph_strategy(11), seed in any::<u64>()) {
        let mut perm: Vec<_> = (0..g.order()).collect();
        perm.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        prop_assert_eq!(canonical_form(&g.permute(&perm)), canonical_form(&g));
    }

    #[test]
    fn join_and_union_edge_counts(a in graph_strategy(8), b in graph_strategy(8)) {
        let j = a.join(&b);
        prop_assert_eq!(j.order(), a.order() + b.order());
        prop_assert_eq!(j.edge_count(), a.edge_count() + b.edge_count() + a.order() * b.order());
        prop_assert_eq!(a.disjoint_union(&b).edge_count(), a.edge_count() + b.edge_count());
    }

    #[test]
    fn distances_match_floyd_warshall(g in graph_strategy(12)) {
        let d = all_pairs(&g);
        for (s, row) in d.iter().enumerate() {
            let bfs = g.distances_from(s);
            for (t, &dist) in row.iter().enumerate() {
                let want = if dist >= usize::MAX / 2 { usize::MAX } else { dist };
                prop_assert_eq!(bfs[t], want);
            }
        }
        let diam = d.iter().flatten().copied().max().unwrap_or(0);
        let expected = if diam >= usize::MAX / 2 { Diameter::Infinite } else { Diameter::Finite(diam) };
        prop_assert_eq!(g.diameter(), expected);
    }

    #[test]
    fn path_detector_matches_subset_dp(g in graph_strategy(10)) {
        let longest = longest_path_dp(&g);
        for k in 1..=g.order() + 1 {
            let w = has_path_of_order(&g, k);
            prop_assert_eq!(w.is_some(), k <= longest, "k={}", k);
            if let Some(w) = w {
                prop_assert!(w.validates(&g));
                prop_assert_eq!(w.vertices().count(), k);
            }
        }
    }

    #[test]
    fn clique_detector_matches_subsets(g in graph_strategy(10)) {
        let omega = clique_number(&g);
        for p in 2..=omega + 1 {
            let w = has_clique(&g, p);
            prop_assert_eq!(w.is_some(), p <= omega, "p={}", p);
            if let Some(w) = w {
                prop_assert!(w.validates(&g));
            }
        }
    }

    #[test]
    fn member_witnesses_validate(g in graph_strategy(9)) {
        for fam in ["K3,P5", "K3+P3", "P2+P2", "K1*[2,2]", "P3+P3+P2"] {
            let fam: ForbiddenFamily = fam.parse().unwrap();
            if let Some(w) = contains_member(&g, &fam) {
                prop_assert!(w.validates(&g));
            }
        }
    }
}

#[test]
fn graph6_round_trips_every_small_graph() {
    for n in 1..=8 {
        for g in enumerate_graphs(n).unwrap().iter() {
            assert_eq!(&graph6_decode(graph6_encode(g).as_bytes()).unwrap(), g);
        }
    }
}

#[test]
fn subtree_detector_matches_generic_embedding() {
    let patterns: Vec<Graph> = (2..=6).flat_map(|n| enumerate_trees(n).unwrap()).collect();
    for n in 2..=10 {
        for host in enumerate_trees(n).unwrap() {
            for p in &patterns {
                let w = subtree_contains(&host, p).unwrap();
                assert_eq!(w.is_some(), embeds(&host, p), "{} in {}", graph6_encode(p), graph6_encode(&host));
                if let Some(w) = w {
                    assert!(w.validates_embedding(&host, p));
                }
            }
        }
    }
}

#[test]
fn layers_follow_the_tree_centre() {
    for n in 3..=12 {
        for t in enumerate_trees(n).unwrap() {
            let Diameter::Finite(diam) = t.diameter() else { unreachable!() };
            if diam < 2 {
                continue;
            }
            let layers = layer_decompose(&t).unwrap();
            let ecc: Vec<_> = (0..n).map(|v| t.distances_from(v).into_iter().max().unwrap()).collect();
            let radius = *ecc.iter().min().unwrap();
            let centre: Vec<_> = (0..n).filter(|&v| ecc[v] == radius).collect();
            assert_eq!(layers.layer_members(1), centre);
            for v in 0..n {
                let d = centre.iter().map(|&c| t.distances_from(c)[v]).min().unwrap();
                assert_eq!(layers.layer(v), d + 1);
            }
            assert_eq!(layers.max_layer(), diam / 2 + 1);
            assert_eq!(layers.reference_path().len(), diam + 1);
            assert_eq!(layers.layer_sizes().iter().sum::<usize>(), n);
        }
    }
}

/// Saturation straight from the definition, with subset-DP paths and
/// triple-loop triangles.
fn saturated_by_definition(g: &Graph, k: usize) -> bool {
    let bad = |h: &Graph| clique_number(h) >= 3 || longest_path_dp(h) >= k;
    !bad(g) && g.non_edges().all(|(u, v)| bad(&g.with_edge(u, v).unwrap()))
}

#[test]
fn checker_matches_the_definition_on_random_graphs() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5a7);
    let mut saturated = 0;
    for _ in 0..600 {
        let n = rng.gen_range(3..=9);
        let p = rng.gen_range(0.1..0.5);
        let g = random_graph(&mut rng, n, p);
        for k in 4..=7 {
            let fam = ForbiddenFamily::triangle_and_path(k);
            let want = saturated_by_definition(&g, k);
            saturated += usize::from(want);
            assert_eq!(check_saturated(&g, &fam).is_saturated(), want, "{} k={k}", graph6_encode(&g));
        }
    }
    assert!(saturated > 0);
}

#[test]
fn diameter_two_means_common_neighbours() {
    for n in 3..=7 {
        for g in enumerate_graphs(n).unwrap().iter() {
            let common = g.non_edges().all(|(u, v)| g.neighbors(u).iter().any(|w| g.has_edge(*w, v)));
            let two = g.diameter() == Diameter::Finite(2);
            assert_eq!(two, common && g.non_edges().next().is_some(), "{}", graph6_encode(g));
        }
    }
}
