use std::collections::BTreeSet;

use satforge::canon::canonical_form;
use satforge::graph::Graph;
use satforge::saturation::{check_saturated, check_saturated_generic, ForbiddenFamily};
use satforge::search::*;

fn prufer_classes(n: usize) -> usize {
    // Every labeled tree is a Prüfer sequence of length n − 2.
    let mut codes = BTreeSet::new();
    let total = n.pow((n - 2) as u32);
    for mut idx in 0..total {
        let mut seq = Vec::with_capacity(n - 2);
        for _ in 0..n - 2 {
            seq.push(idx % n);
            idx /= n;
        }
        let mut degree = vec![1; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::new();
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf, s));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<_> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        codes.insert(canonical_form(&Graph::new(n, &edges).unwrap()));
    }
    codes.len()
}

#[test]
fn trees_match_prufer_oracle() {
    for n in 3..=8 {
        assert_eq!(enumerate_trees(n).unwrap().count(), prufer_classes(n), "n={n}");
    }
}

#[test]
fn trees_match_leaf_attachment_oracle() {
    let mut level: BTreeSet<_> = [canonical_form(&Graph::path(2))].into();
    let mut reps = vec![Graph::path(2)];
    for n in 3..=10 {
        let mut next = Vec::new();
        level.clear();
        for t in &reps {
            for v in 0..t.order() {
                let mut edges: Vec<_> = t.edges().collect();
                edges.push((v, t.order()));
                let g = Graph::new(n, &edges).unwrap();
                if level.insert(canonical_form(&g)) {
                    next.push(g);
                }
            }
        }
        reps = next;
        let enumerated: BTreeSet<_> = enumerate_trees(n).unwrap().map(|t| canonical_form(&t)).collect();
        assert_eq!(enumerated, level, "n={n}");
    }
}

#[test]
fn augmentation_matches_labeled_dedupe() {
    for n in 2..=6 {
        let by_dedupe = labeled_dedupe(n);
        let by_augment = augment(&labeled_dedupe(n - 1));
        assert_eq!(by_augment, by_dedupe, "n={n}");
    }
    let g7 = enumerate_graphs(7).unwrap();
    assert_eq!(g7.len(), 1044);
    assert_eq!(code_set(g7.iter()).len(), 1044);
    assert!(g7.windows(2).all(|w| satforge::io::graph6_encode(&w[0]) < satforge::io::graph6_encode(&w[1])));
}

#[test]
fn eight_vertex_graphs() {
    let g8 = enumerate_graphs_with(8, &Budget::default()).unwrap();
    assert_eq!(g8.len(), 12346);
    assert_eq!(code_set(g8.iter()).len(), 12346);
}

#[test]
fn forest_shortcut_agrees_with_generic_checker() {
    for n in 2..=12 {
        for t in enumerate_trees(n).unwrap() {
            for k in 3..=12 {
                for fam in [ForbiddenFamily::triangle_and_path(k), format!("P{k}").parse().unwrap()] {
                    assert_eq!(check_saturated(&t, &fam), check_saturated_generic(&t, &fam), "n={n} k={k} {fam}");
                }
            }
        }
    }
    // Forests with several components.
    let f = Graph::path(4).disjoint_union(&Graph::path(3)).disjoint_union(&Graph::empty(1));
    for k in 2..=9 {
        let fam = ForbiddenFamily::triangle_and_path(k);
        assert_eq!(check_saturated(&f, &fam), check_saturated_generic(&f, &fam));
    }
}

#[test]
fn sharded_scans_merge_to_the_full_scan() {
    let opts = ScanOptions { prefilter: false, ..ScanOptions::default() };
    let full = scan_saturated_trees(4..=13, 7, &opts).unwrap();
    let mut merged: Option<ScanReport> = None;
    for i in 0..3 {
        let shard = ScanOptions { shard: Shard::new(i, 3).unwrap(), ..opts };
        let part = scan_saturated_trees(4..=13, 7, &shard).unwrap();
        merged = Some(match merged {
            None => part,
            Some(m) => m.merge(part),
        });
    }
    assert_eq!(merged.unwrap(), full);
}

#[test]
fn sharded_tree_streams_partition_the_classes() {
    let all: BTreeSet<_> = enumerate_trees(12).unwrap().map(|t| canonical_form(&t)).collect();
    let mut union = BTreeSet::new();
    let mut total = 0;
    for i in 0..4 {
        let shard = Shard::new(i, 4).unwrap();
        for (_, t) in enumerate_trees(12).unwrap().enumerate().filter(|(j, _)| shard.owns(*j)) {
            union.insert(canonical_form(&t));
            total += 1;
        }
    }
    assert_eq!(total, all.len());
    assert_eq!(union, all);
}

#[test]
fn prefilter_window_holds_at_small_orders() {
    for k in 5..=9 {
        let opts = ScanOptions { prefilter: false, ..ScanOptions::default() };
        let r = scan_saturated_trees(4..=12, k, &opts).unwrap();
        assert_eq!(r.saturated_outside_window, 0, "k={k}");
    }
}

#[test]
fn minimum_saturated_tree_orders() {
    assert_eq!(min_saturated_tree_order(5, 12).unwrap().0, 5);
    assert_eq!(min_saturated_tree_order(9, 16).unwrap().0, 16);
    assert!(matches!(min_saturated_tree_order(9, 12), Err(SearchError::NotFound { .. })));
}

#[test]
fn brute_force_values() {
    for n in 4..=7 {
        assert_eq!(sat_bruteforce(n, &"K3".parse().unwrap()).unwrap().value, n - 1);
    }
    for n in 5..=7 {
        assert_eq!(sat_bruteforce(n, &"K4".parse().unwrap()).unwrap().value, 2 * (n - 2) + 1);
    }
    let r = sat_bruteforce(6, &"K4".parse().unwrap()).unwrap();
    assert_eq!(canonical_form(&r.witnesses[0]), canonical_form(&Graph::complete(2).join(&Graph::empty(4))));
    assert_eq!(sat_bruteforce(6, &"P2+P2".parse().unwrap()).unwrap().value, 3);
    assert!(matches!(sat_bruteforce(9, &"K3".parse().unwrap()), Err(SearchError::OverBudget { .. })));
}

#[test]
fn join_duality_on_small_graphs() {
    let fam_join: ForbiddenFamily = "K1*[2,2]".parse().unwrap();
    let fam_forest: ForbiddenFamily = "P2+P2".parse().unwrap();
    for n in 1..=6 {
        for h in enumerate_graphs(n).unwrap().iter() {
            let joined = Graph::complete(1).join(h);
            assert_eq!(
                check_saturated(&joined, &fam_join).is_saturated(),
                check_saturated(h, &fam_forest).is_saturated(),
                "{}",
                satforge::io::graph6_encode(h)
            );
        }
    }
}

#[test]
fn spill_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g5.g6");
    let g5 = enumerate_graphs(5).unwrap();
    spill_graph6(&path, g5.iter()).unwrap();
    assert_eq!(read_spill(&path).unwrap(), *g5);
}
