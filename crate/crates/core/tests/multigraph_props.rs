mod common;

use biasforge::{Connectivity, VertexId};
use common::*;
use proptest::prelude::*;
use std::collections::BTreeSet;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn all_cycles_are_exactly_the_cycles(spec in spec_strategy(6, 11)) {
        let g = spec.graph();
        let found = g.all_cycles().unwrap();
        let sets: Vec<_> = found.iter().map(|c| c.edges).collect();
        let distinct: BTreeSet<_> = sets.iter().copied().collect();
        prop_assert_eq!(distinct.len(), sets.len());
        for c in &found {
            prop_assert!(is_cycle_by_definition(&g, c.edges));
            prop_assert_eq!(c.vertex_set(), g.vertices_of(c.edges));
        }
        prop_assert_eq!(distinct.into_iter().collect::<Vec<_>>(), cycles_by_subsets(&g));
    }

    #[test]
    fn rerouting_replays_from_p_to_q(spec in connected_spec_strategy(7, 13), seed in any::<u64>()) {
        let g = spec.graph();
        let mut r = rng(seed);
        let n = spec.vertices;
        prop_assume!(n >= 2);
        let u = VertexId(seed as u32 % n);
        let v = VertexId((u.0 + 1 + (seed >> 32) as u32 % (n - 1)) % n);
        let p = random_path(&g, u, v, &mut r).unwrap();
        let q = random_path(&g, u, v, &mut r).unwrap();
        let steps = g.reroute_sequence(&p, &q).unwrap();
        let mut cur = p.clone();
        for s in &steps {
            g.validate_path(&s.result).unwrap();
            prop_assert_eq!(s.result.start(), u);
            prop_assert_eq!(s.result.end(), v);
            // Each step swaps one subpath of the current path for one of q.
            let before: BTreeSet<_> = cur.edges.iter().copied().collect();
            let after: BTreeSet<_> = s.result.edges.iter().copied().collect();
            for e in &s.removed {
                prop_assert!(before.contains(e) && !after.contains(e));
            }
            for e in &s.added {
                prop_assert!(after.contains(e) && q.edges.contains(e));
            }
            cur = s.result.clone();
        }
        prop_assert_eq!(cur, q);
    }

    #[test]
    fn connectivity_matches_exhaustive_separations(spec in connected_spec_strategy(7, 11)) {
        let g = spec.graph();
        let expected = match min_separation_order(&g) {
            Some(k) => Connectivity::Finite(k),
            None if g.vertex_count() >= 3 => Connectivity::Finite(g.vertex_count() - 1),
            None => Connectivity::Unbounded,
        };
        prop_assert_eq!(g.connectivity(), expected);
        if let Some(k) = min_separation_order(&g) {
            prop_assert!(g.is_k_connected(k));
            prop_assert!(!g.is_k_connected(k + 1));
        }
    }
}

#[test]
fn thetas_are_unions_of_two_cycles_with_a_third() {
    let mut r = rng(11);
    for _ in 0..200 {
        let g = Spec::random_connected(&mut r, 5, 9, 0.1).graph();
        let cycles: BTreeSet<_> = cycles_by_subsets(&g).into_iter().collect();
        for t in g.theta_subgraphs().unwrap() {
            let [a, b, c] = t.cycles;
            assert!(cycles.contains(&a) && cycles.contains(&b) && cycles.contains(&c));
            assert_eq!(a.symmetric_difference(b), c);
            assert_eq!(a.union(b).union(c), t.edges());
            assert_eq!(t.paths[0].union(t.paths[1]).union(t.paths[2]), t.edges());
        }
    }
}
