use satforge::constructions::*;
use satforge::formulas::{order_constant, sat_k3_pk, OrderKind};
use satforge::graph::{Diameter, Graph};
use satforge::io::graph6_encode;
use satforge::patterns::{has_clique, longest_path_from};
use satforge::saturation::{check_saturated, check_saturated_generic, ForbiddenFamily};

#[test]
fn orders_match_constants() {
    for k in 6..=16 {
        assert_eq!(make_tk(k).unwrap().order(), order_constant(OrderKind::A, k).unwrap());
        assert_eq!(make_t0k(k).unwrap().order(), order_constant(OrderKind::A0, k).unwrap());
    }
    for k in 8..=16 {
        assert_eq!(make_t1k(k).unwrap().order(), order_constant(OrderKind::A1, k).unwrap());
    }
}

#[test]
fn diameters() {
    for k in 6..=16 {
        assert_eq!(make_tk(k).unwrap().diameter(), Diameter::Finite(k - 2));
        assert_eq!(make_t0k(k).unwrap().diameter(), Diameter::Finite(k - 3));
    }
    for k in 8..=16 {
        assert_eq!(make_t1k(k).unwrap().diameter(), Diameter::Finite(k - 2));
    }
}

#[test]
fn zero_tree_has_more_edges() {
    for k in 10..=20 {
        assert!(make_t0k(k).unwrap().edge_count() > make_t1k(k).unwrap().edge_count());
    }
}

#[test]
fn layered_trees_are_saturated() {
    for k in 9..=14 {
        let fam = ForbiddenFamily::triangle_and_path(k);
        for t in [make_t0k(k).unwrap(), make_t1k(k).unwrap()] {
            assert!(check_saturated(&t, &fam).is_saturated(), "k={k}");
            assert_eq!(check_saturated_generic(&t, &fam), check_saturated(&t, &fam));
        }
    }
}

#[test]
fn t1k_root_paths() {
    let t = make_t1k(10).unwrap();
    assert_eq!(longest_path_from(&t, 0).unwrap().parts[0].vertices.len(), 5);
}

#[test]
fn grown_trees() {
    assert_eq!(saturated_tree_of_order(20, 10).unwrap(), make_t1k(10).unwrap());
    let fam = ForbiddenFamily::triangle_and_path(10);
    for n in [21, 23, 30] {
        let t = saturated_tree_of_order(n, 10).unwrap();
        assert!(t.is_tree() && !t.is_star());
        assert_eq!(t.order(), n);
        assert!(check_saturated_generic(&t, &fam).is_saturated());
    }
    assert!(saturated_tree_of_order(19, 10).is_err());
}

#[test]
fn g0_examples() {
    for (n, k) in [(20, 10), (23, 10), (40, 10), (100, 10), (137, 11), (76, 12)] {
        let g = make_g0(n, k).unwrap();
        assert_eq!(g.order(), n);
        assert_eq!(g.edge_count(), sat_k3_pk(n, k).unwrap());
        let fam = ForbiddenFamily::triangle_and_path(k);
        assert!(check_saturated(&g, &fam).is_saturated(), "({n},{k})");
    }
    assert_eq!(make_g0(100, 10).unwrap().connected_components().len(), 5);
    assert_eq!(make_g0(23, 10).unwrap().edge_count(), 22);
}

#[test]
fn h0_edge_count_and_shape() {
    let g = make_h0(200, 10).unwrap();
    assert_eq!(g.order(), 200);
    assert_eq!(g.edge_count(), 196);
    assert_eq!(g.connected_components().len(), 7);
    let q1 = g.induced(&g.connected_components()[0]);
    assert_eq!(q1.order(), 80);
    assert!(has_clique(&q1, 4).is_some());
    assert!(make_h0(100, 10).is_err());
    assert_eq!(h0_with_attachment(120, 10).unwrap().0, 11);
}

#[test]
fn h0_is_saturated() {
    for (n, k) in [(120, 10), (200, 10), (168, 11)] {
        let g = make_h0(n, k).unwrap();
        assert_eq!(g.edge_count(), 6 + sat_k3_pk(n, k).unwrap());
        let fam = ForbiddenFamily::triangle_union_path(k);
        assert_eq!(check_saturated(&g, &fam), satforge::SaturationVerdict::Saturated, "({n},{k})");
    }
}

#[test]
fn simple_saturated_graphs() {
    assert!(check_saturated(&make_star(10).unwrap(), &"K3".parse().unwrap()).is_saturated());
    assert!(check_saturated(&make_erdos_kp(7, 4).unwrap(), &"K4".parse().unwrap()).is_saturated());
    let t1 = make_small_tree(SmallTree::T1);
    assert!(check_saturated(&t1, &"K3,P5".parse().unwrap()).is_saturated());
    for t in [SmallTree::T2, SmallTree::T3] {
        assert!(check_saturated(&make_small_tree(t), &"K3,P6".parse().unwrap()).is_saturated());
    }
    let h = Graph::complete(3).disjoint_union(&Graph::empty(2));
    let j = make_join_extremal(&h);
    assert!(check_saturated(&j, &"K1*[2,2]".parse().unwrap()).is_saturated());
}

#[test]
fn constructions_are_reproducible() {
    for k in 9..=12 {
        assert_eq!(graph6_encode(&make_t1k(k).unwrap()), graph6_encode(&make_t1k(k).unwrap()));
    }
    assert_eq!(graph6_encode(&make_g0(40, 10).unwrap()), graph6_encode(&make_g0(40, 10).unwrap()));
}
