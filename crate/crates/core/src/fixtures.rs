//! Built-in biased graphs used by the examples, tests and CLI.

use crate::bias::{BiasedGraph, Signature};
use crate::frame::Matroid;
use crate::multigraph::MultiGraph;
use crate::sets::{edges, EdgeId, EdgeSet, VertexId};

fn graph(e: &[(u32, u32, u32)]) -> MultiGraph {
    MultiGraph::from_edges(e).expect("fixture graph")
}

/// Four contrabalanced links between two vertices.
pub fn u24_four_links() -> BiasedGraph {
    BiasedGraph::contrabalanced(graph(&[(0, 0, 1), (1, 0, 1), (2, 0, 1), (3, 0, 1)])).unwrap()
}

/// Three contrabalanced links and an unbalanced loop.
pub fn u24_three_links_loop() -> BiasedGraph {
    BiasedGraph::contrabalanced(graph(&[(0, 0, 1), (1, 0, 1), (2, 0, 1), (3, 1, 1)])).unwrap()
}

/// Two contrabalanced links and an unbalanced loop at each end.
pub fn u24_two_links_two_loops() -> BiasedGraph {
    BiasedGraph::contrabalanced(graph(&[(0, 0, 1), (1, 0, 1), (2, 0, 0), (3, 1, 1)])).unwrap()
}

pub fn u24_triple() -> [BiasedGraph; 3] {
    [u24_four_links(), u24_three_links_loop(), u24_two_links_two_loops()]
}

/// Vertex `0` joined by `k` edges to every vertex of `h` (whose vertices are
/// shifted up by one). Class `j` holds the `j`-th edge to each vertex; `h`
/// keeps its edge ids and the apex edges follow.
pub fn apex(h: &MultiGraph, k: usize) -> BiasedGraph {
    let mut g = MultiGraph::new();
    g.add_vertex(VertexId(0)).unwrap();
    for v in h.vertices() {
        g.add_vertex(VertexId(v.0 + 1)).unwrap();
    }
    let mut next = 0;
    for (e, a, b) in h.edges() {
        g.add_edge(e, VertexId(a.0 + 1), VertexId(b.0 + 1)).unwrap();
        next = next.max(e.0 + 1);
    }
    let mut classes = vec![EdgeSet::EMPTY; k];
    for v in h.vertices() {
        for class in classes.iter_mut() {
            g.add_edge(EdgeId(next), VertexId(0), VertexId(v.0 + 1)).unwrap();
            class.insert(EdgeId(next));
            next += 1;
        }
    }
    BiasedGraph::from_signature(g, &Signature::new(classes).unwrap()).unwrap()
}

pub fn complete_graph(n: u32) -> MultiGraph {
    let mut g = MultiGraph::with_vertices(n);
    let mut e = 0;
    for a in 0..n {
        for b in a + 1..n {
            g.add_edge(EdgeId(e), VertexId(a), VertexId(b)).unwrap();
            e += 1;
        }
    }
    g
}

pub fn complete_bipartite(m: u32, n: u32) -> MultiGraph {
    let mut g = MultiGraph::with_vertices(m + n);
    let mut e = 0;
    for a in 0..m {
        for b in m..m + n {
            g.add_edge(EdgeId(e), VertexId(a), VertexId(b)).unwrap();
            e += 1;
        }
    }
    g
}

/// Roll-up example: apex `0` over the triangle `1 2 3` (edges 0, 1, 2), with
/// classes `{3, 4}` and `{5, 6}` at the apex and unbalanced loops 7 at 1 and
/// 8 at 3. This is the rolled form with loops.
pub fn rollup_loops() -> BiasedGraph {
    let g = graph(&[(0, 1, 2), (1, 2, 3), (2, 3, 1), (3, 0, 1), (4, 0, 2), (5, 0, 2), (6, 0, 3), (7, 1, 1), (8, 3, 3)]);
    BiasedGraph::from_signature(g, &Signature::new(vec![edges(&[7, 8]), edges(&[3, 4]), edges(&[5, 6])]).unwrap())
        .unwrap()
}

/// The loops of [`rollup_loops`] unrolled to the apex.
pub fn rollup_base() -> BiasedGraph {
    let g = graph(&[(0, 1, 2), (1, 2, 3), (2, 3, 1), (3, 0, 1), (4, 0, 2), (5, 0, 2), (6, 0, 3), (7, 0, 1), (8, 0, 3)]);
    BiasedGraph::from_signature(g, &Signature::new(vec![edges(&[7, 8]), edges(&[3, 4]), edges(&[5, 6])]).unwrap())
        .unwrap()
}

/// [`rollup_base`] with the class `{5, 6}` rolled up.
pub fn rollup_second_class() -> BiasedGraph {
    let g = graph(&[(0, 1, 2), (1, 2, 3), (2, 3, 1), (3, 0, 1), (4, 0, 2), (5, 2, 2), (6, 3, 3), (7, 0, 1), (8, 0, 3)]);
    BiasedGraph::from_signature(g, &Signature::new(vec![edges(&[5, 6]), edges(&[7, 8]), edges(&[3, 4])]).unwrap())
        .unwrap()
}

/// Three claws sharing their leaves `0 1 2`, centred at `3 4 5`, plus the
/// link `0 1`. Vertex `0` is balancing and each of its four edges is its own
/// class. Claw `i` has edges `3i` (to 0), `3i+1` (to 2) and `3i+2` (to 1);
/// the extra link is edge 9.
pub fn three_claws() -> BiasedGraph {
    let mut e = Vec::new();
    for i in 0..3u32 {
        e.push((3 * i, 0, 3 + i));
        e.push((3 * i + 1, 3 + i, 2));
        e.push((3 * i + 2, 1, 3 + i));
    }
    e.push((9, 0, 1));
    let classes = [0, 3, 6, 9].iter().map(|&i| edges(&[i])).collect();
    BiasedGraph::from_signature(graph(&e), &Signature::new(classes).unwrap()).unwrap()
}

/// A balanced lobe on `0 1 2` around the vertex `3`, closed off by two more
/// classes of `0 1`/`0 2` links and an unbalanced loop at `1`.
pub fn lobe_example() -> BiasedGraph {
    let g = graph(&[
        (0, 0, 3),
        (1, 3, 1),
        (2, 3, 2),
        (3, 1, 2),
        (4, 0, 1),
        (5, 0, 2),
        (6, 0, 1),
        (7, 0, 2),
        (8, 0, 1),
        (9, 0, 2),
        (10, 1, 1),
    ]);
    let classes = vec![edges(&[0, 4, 5]), edges(&[6, 7]), edges(&[8, 9]), edges(&[10])];
    BiasedGraph::from_signature(g, &Signature::new(classes).unwrap()).unwrap()
}

/// `K4` on `0 1 2 3` with doubled links from the balancing vertex `0` to `2`
/// and `3` and a third `0 1` link. The edges off `0 1` form a pinch.
pub fn two_class_pinch() -> BiasedGraph {
    let g = graph(&[(0, 0, 2), (1, 0, 3), (2, 0, 2), (3, 0, 3), (4, 2, 3), (5, 2, 1), (6, 3, 1), (7, 0, 1), (8, 0, 1)]);
    let classes = vec![edges(&[0, 1]), edges(&[2, 3]), edges(&[7]), edges(&[8])];
    BiasedGraph::from_signature(g, &Signature::new(classes).unwrap()).unwrap()
}

fn signed(e: &[(u32, u32, u32)], sigma: &[u32]) -> BiasedGraph {
    BiasedGraph::from_signature(graph(e), &Signature::single(edges(sigma))).unwrap()
}

/// The signed graph whose frame matroid is the bond matroid of
/// [`complete_bipartite`]`(3, 3)`, element `i` being edge `i` there.
/// It is the only representation.
pub fn cographic_k33() -> BiasedGraph {
    signed(
        &[(0, 0, 1), (1, 0, 2), (2, 1, 2), (3, 0, 2), (4, 0, 3), (5, 2, 3), (6, 1, 2), (7, 2, 3), (8, 1, 3)],
        &[3, 5, 6, 8],
    )
}

/// The two signed graphs whose frame matroid is the bond matroid of
/// [`complete_graph`]`(5)`, element `i` being edge `i` there.
pub fn cographic_k5() -> [BiasedGraph; 2] {
    [
        signed(
            &[(0, 0, 1), (1, 0, 2), (2, 1, 3), (3, 2, 3), (4, 0, 3), (5, 1, 4), (6, 3, 4), (7, 3, 5), (8, 2, 5), (9, 4, 5)],
            &[4, 6, 8],
        ),
        signed(
            &[(0, 0, 1), (1, 0, 2), (2, 1, 3), (3, 2, 3), (4, 0, 4), (5, 3, 4), (6, 1, 3), (7, 4, 5), (8, 2, 5), (9, 1, 5)],
            &[5, 6, 9],
        ),
    ]
}

/// Apex over `K5` with three classes: 4-connected and almost balanced.
pub fn apex_k5() -> BiasedGraph {
    apex(&complete_graph(5), 3)
}

/// The Fano plane as a circuit list; it has no biased graph representation.
pub fn fano() -> Matroid {
    let lines = [[0, 1, 3], [1, 2, 4], [2, 3, 5], [3, 4, 6], [4, 5, 0], [5, 6, 1], [6, 0, 2]];
    let ground = edges(&[0, 1, 2, 3, 4, 5, 6]);
    let mut circuits: Vec<EdgeSet> = lines.iter().map(|l| edges(l)).collect();
    circuits.extend(lines.iter().map(|l| ground.difference(edges(l))));
    Matroid::from_circuits(ground, circuits)
}

/// The bond matroid of `g`.
pub fn bond_matroid(g: &MultiGraph) -> Matroid {
    let m = Matroid::cycle_matroid(g).expect("cycle matroid");
    Matroid::from_circuits(m.ground(), m.cocircuits())
}
