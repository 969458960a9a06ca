mod common;

use biasforge::analysis::{
    committed, committed_by_definition, committed_by_nonbinary, find_lobes, find_shortcut, h_enlarge, is_nongraphic, CommitWitness,
    LobeKind,
};
use biasforge::census::enumerate_labeled;
use biasforge::frame::is_u24_witness;
use biasforge::iso::biased_graph_isomorphic;
use biasforge::transforms::split;
use biasforge::{fixtures, has_u24_minor, matroid_equal, BiasedGraph, EdgeSet, Matroid};
use common::*;

#[test]
fn nonbinary_route_agrees_with_the_definition() {
    let mut r = rng(3);
    for _ in 0..40 {
        let w = three_connected_balancing(&mut r, 6, 11);
        for x in w.graph().vertices() {
            let fast = committed(&w, x).unwrap();
            let slow = committed_by_definition(&w, x).unwrap();
            assert_eq!(fast.committed, slow.committed, "vertex {x}");
            assert_eq!(committed_by_nonbinary(&w, x).unwrap(), slow.committed);
            let rest = Matroid::frame(&w.delete_vertex(x));
            if find_shortcut(&w.delete_vertex(x)).is_some() {
                assert!(has_u24_minor(&rest).unwrap().is_some());
            }
            match fast.witness {
                Some(CommitWitness::Minor(m)) => assert!(is_u24_witness(&rest, &m)),
                Some(CommitWitness::Shortcut { .. }) => assert!(has_u24_minor(&rest).unwrap().is_some()),
                Some(CommitWitness::Nongraphic { hyperplane }) => {
                    assert!(Matroid::frame(&w).is_hyperplane(hyperplane))
                }
                None => assert!(!fast.committed),
            }
        }
    }
}

/// Checks the recorded lobe structure of a plan against `w`.
fn check_plan(w: &BiasedGraph) {
    let plan = find_lobes(w).unwrap();
    let mut covered = EdgeSet::EMPTY;
    for lobe in &plan.lobes {
        assert!(lobe.edges.is_disjoint(covered));
        covered = covered.union(lobe.edges);
        assert!(!lobe.interior.is_empty());
        for x in lobe.interior.iter() {
            assert!(committed(w, x).unwrap().committed);
        }
        let h = w.restrict(lobe.edges);
        match lobe.kind {
            LobeKind::Balanced => {
                assert_eq!(lobe.boundary.len(), 3);
                assert!(h.is_balanced());
            }
            LobeKind::Pinch { vertex } => {
                assert_eq!(lobe.boundary.len(), 2);
                assert!(lobe.boundary.contains(vertex));
                assert!(h.is_signed().is_some() && h.balancing_vertices().contains(vertex));
            }
        }
    }
    assert!(plan.reduced.graph().vertex_count() <= w.graph().vertex_count());
    if let Some(m) = &plan.minor {
        let expected = Matroid::frame(w).minor(m.contract, m.delete).unwrap();
        let got = Matroid::frame(&plan.reduced).relabel(&m.rename_full(&plan.reduced));
        assert!(matroid_equal(&got, &expected).unwrap());
    }
    let back = h_enlarge(&plan, &plan.reduced).unwrap();
    assert!(biased_graph_isomorphic(&back, w).is_some());
}

#[test]
fn plans_on_fixtures_and_random_instances_are_consistent() {
    for w in [fixtures::three_claws(), fixtures::lobe_example(), fixtures::two_class_pinch(), fixtures::apex(&fixtures::complete_graph(4), 3)] {
        check_plan(&w);
    }
    let mut r = rng(8);
    let mut checked = 0;
    while checked < 25 {
        let w = three_connected_balancing(&mut r, 6, 12);
        if !is_nongraphic(&Matroid::frame(&w)).unwrap() {
            continue;
        }
        check_plan(&w);
        checked += 1;
    }
}

/// Whether `h`, the image of a lobe in another representation, is balanced,
/// a pinch, or a rolled-up copy.
fn lobe_image_form(h: &BiasedGraph) -> Option<&'static str> {
    if h.is_balanced() {
        return Some("balanced");
    }
    if h.is_signed().is_some() {
        for s in h.balancing_vertices().iter() {
            if split(h, s).is_ok() {
                return Some("pinch");
            }
        }
    }
    let loops = h.unbalanced_loops();
    if !loops.is_empty() && h.delete_edges(loops).is_balanced() {
        return Some("rolled");
    }
    None
}

#[test]
fn lobes_appear_in_every_representation_in_one_of_the_known_forms() {
    for w in [fixtures::lobe_example(), fixtures::two_class_pinch(), fixtures::three_claws()] {
        let plan = find_lobes(&w).unwrap();
        let target = Matroid::frame(&w);
        for rep in enumerate_labeled(&target, 7).unwrap() {
            for lobe in &plan.lobes {
                let image = rep.restrict(lobe.edges);
                assert!(lobe_image_form(&image).is_some(), "lobe {:?} has an unknown image", lobe.edges);
            }
        }
    }
}

#[test]
fn enlargements_always_keep_the_frame_matroid() {
    for w in [fixtures::lobe_example(), fixtures::two_class_pinch(), fixtures::three_claws()] {
        let plan = find_lobes(&w).unwrap();
        let target = Matroid::frame(&w);
        for psi in enumerate_labeled(&Matroid::frame(&plan.reduced), 7).unwrap() {
            if let Ok(big) = h_enlarge(&plan, &psi) {
                assert!(matroid_equal(&Matroid::frame(&big), &target).unwrap());
            }
        }
    }
}
