//! Random instance generators and brute-force oracles shared by the
//! integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use biasforge::{BiasedGraph, EdgeId, EdgeSet, MultiGraph, Signature, VertexId};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// How the bias of a generated instance is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiasKind {
    Balanced,
    Contrabalanced,
    /// One class, chosen edge by edge.
    Signed,
    /// `k` disjoint classes anywhere in the graph.
    KSigned(u8),
    /// Classes of links at vertex 0 plus every loop as its own unbalanced class.
    AlmostBalanced(u8),
}

/// A reproducible description of a biased graph: edge `i` joins `edges[i]`
/// and `labels[i]` drives its class membership.
#[derive(Clone, Debug)]
pub struct Spec {
    pub vertices: u32,
    pub edges: Vec<(u32, u32)>,
    pub labels: Vec<u8>,
    pub kind: BiasKind,
}

impl Spec {
    pub fn graph(&self) -> MultiGraph {
        let mut g = MultiGraph::with_vertices(self.vertices);
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            g.add_edge(EdgeId(i as u32), VertexId(a), VertexId(b)).unwrap();
        }
        g
    }

    pub fn signature(&self) -> Option<Signature> {
        let g = self.graph();
        let classes: Vec<EdgeSet> = match self.kind {
            BiasKind::Balanced | BiasKind::Contrabalanced => return None,
            BiasKind::Signed => vec![self.with_label(|l| l % 2 == 1)],
            BiasKind::KSigned(k) => (1..=k).map(|j| self.with_label(|l| l % (k + 1) == j)).collect(),
            BiasKind::AlmostBalanced(k) => {
                let at0 = g.links_at(VertexId(0));
                let mut cs: Vec<EdgeSet> =
                    (0..k).map(|j| self.with_label(|l| l % k == j).intersection(at0)).collect();
                cs.push(g.loops());
                cs
            }
        };
        Some(Signature::new(classes.into_iter().filter(|c| !c.is_empty()).collect()).unwrap())
    }

    /// Moves every loop to vertex 0 and makes the bias almost balanced there,
    /// so vertex 0 is balancing.
    pub fn balancing_at_zero(mut self, classes: u8) -> Spec {
        for e in self.edges.iter_mut() {
            if e.0 == e.1 {
                *e = (0, 0);
            }
        }
        self.kind = BiasKind::AlmostBalanced(classes.max(1));
        self
    }

    fn with_label(&self, p: impl Fn(u8) -> bool) -> EdgeSet {
        (0..self.labels.len()).filter(|&i| p(self.labels[i])).map(|i| EdgeId(i as u32)).collect()
    }

    pub fn build(&self) -> BiasedGraph {
        let g = self.graph();
        match self.kind {
            BiasKind::Balanced => BiasedGraph::balanced(g).unwrap(),
            BiasKind::Contrabalanced => BiasedGraph::contrabalanced(g).unwrap(),
            _ => BiasedGraph::from_signature(g, &self.signature().unwrap()).unwrap(),
        }
    }

    /// Vertices `0..n` and `m` random edges; loops appear with the given odds.
    pub fn random(r: &mut ChaCha8Rng, max_vertices: u32, max_edges: usize, loop_odds: f64) -> Spec {
        let vertices = r.gen_range(2..=max_vertices);
        let m = r.gen_range(1..=max_edges);
        let edges = (0..m)
            .map(|_| {
                let a = r.gen_range(0..vertices);
                if r.gen_bool(loop_odds) {
                    (a, a)
                } else {
                    let mut b = r.gen_range(0..vertices - 1);
                    if b >= a {
                        b += 1;
                    }
                    (a.min(b), a.max(b))
                }
            })
            .collect();
        let labels = (0..m).map(|_| r.gen()).collect();
        let kind = match r.gen_range(0..5) {
            0 => BiasKind::Balanced,
            1 => BiasKind::Contrabalanced,
            2 => BiasKind::Signed,
            3 => BiasKind::KSigned(r.gen_range(2..=3)),
            _ => BiasKind::AlmostBalanced(r.gen_range(1..=3)),
        };
        Spec { vertices, edges, labels, kind }
    }

    /// Like [`Spec::random`] but connected: a random spanning tree first.
    pub fn random_connected(r: &mut ChaCha8Rng, max_vertices: u32, max_edges: usize, loop_odds: f64) -> Spec {
        let mut s = Spec::random(r, max_vertices, max_edges, loop_odds);
        let n = s.vertices;
        let tree: Vec<(u32, u32)> = (1..n).map(|v| (r.gen_range(0..v), v)).collect();
        let keep = max_edges.saturating_sub(tree.len());
        s.edges.truncate(keep);
        s.edges.splice(0..0, tree);
        s.labels = (0..s.edges.len()).map(|_| r.gen()).collect();
        s
    }
}

fn kind_strategy() -> impl Strategy<Value = BiasKind> {
    prop_oneof![
        Just(BiasKind::Balanced),
        Just(BiasKind::Contrabalanced),
        Just(BiasKind::Signed),
        (2u8..=3).prop_map(BiasKind::KSigned),
        (1u8..=3).prop_map(BiasKind::AlmostBalanced),
    ]
}

/// Instances on `2..=max_vertices` vertices with `1..=max_edges` edges.
pub fn spec_strategy(max_vertices: u32, max_edges: usize) -> impl Strategy<Value = Spec> {
    (2..=max_vertices, 1..=max_edges, kind_strategy()).prop_flat_map(|(n, m, kind)| {
        (
            prop::collection::vec((0..n, 0..n), m),
            prop::collection::vec(any::<u8>(), m),
        )
            .prop_map(move |(edges, labels)| Spec {
                vertices: n,
                edges: edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect(),
                labels,
                kind,
            })
    })
}

/// Connected instances: vertex `v > 0` is first joined to some smaller vertex.
pub fn connected_spec_strategy(max_vertices: u32, max_edges: usize) -> impl Strategy<Value = Spec> {
    (2..=max_vertices, kind_strategy()).prop_flat_map(move |(n, kind)| {
        let tree = (1..n).map(|v| (0..v).prop_map(move |p| (p, v))).collect::<Vec<_>>();
        let extra = max_edges.saturating_sub(n as usize - 1);
        (tree, prop::collection::vec((0..n, 0..n), 0..=extra)).prop_flat_map(move |(tree, more)| {
            let mut edges: Vec<(u32, u32)> = tree;
            edges.extend(more.into_iter().map(|(a, b)| (a.min(b), a.max(b))));
            let m = edges.len();
            prop::collection::vec(any::<u8>(), m).prop_map(move |labels| Spec {
                vertices: n,
                edges: edges.clone(),
                labels,
                kind,
            })
        })
    })
}

/// Edge ids of `w` in increasing order, for indexing subsets by bitmask.
pub fn ids(w: &BiasedGraph) -> Vec<EdgeId> {
    w.edge_set().ids()
}

pub fn subset(ids: &[EdgeId], mask: u32) -> EdgeSet {
    (0..ids.len()).filter(|i| mask >> i & 1 == 1).map(|i| ids[i]).collect()
}

/// Whether `x` is a cycle by definition: a single loop, or a connected edge
/// set in which every vertex has degree two.
pub fn is_cycle_by_definition(g: &MultiGraph, x: EdgeSet) -> bool {
    if x.len() == 1 {
        return g.is_loop(x.first().unwrap());
    }
    if x.is_empty() || x.iter().any(|e| g.is_loop(e)) {
        return false;
    }
    let mut degree = std::collections::BTreeMap::new();
    for e in x {
        let (a, b) = g.endpoints(e).unwrap();
        *degree.entry(a).or_insert(0) += 1;
        *degree.entry(b).or_insert(0) += 1;
    }
    degree.values().all(|&d| d == 2) && g.components_of(x).len() == 1
}

/// Every cycle of `g`, by testing every edge subset.
pub fn cycles_by_subsets(g: &MultiGraph) -> Vec<EdgeSet> {
    let ids = g.edge_set().ids();
    let mut out: Vec<EdgeSet> =
        (1u32..1 << ids.len()).map(|m| subset(&ids, m)).filter(|&x| is_cycle_by_definition(g, x)).collect();
    out.sort();
    out
}

/// `r(X) = |V(X)| - b(X)` for every subset of the edges, indexed by bitmask
/// over [`ids`]. Balance of a component is decided by its cycles alone.
pub fn rank_table(w: &BiasedGraph) -> Vec<usize> {
    let ids = ids(w);
    let m = ids.len();
    let pos = |e: EdgeId| ids.iter().position(|&f| f == e).unwrap();
    // contains_unbalanced[X]: some unbalanced cycle lies inside X.
    let mut contains_unbalanced = vec![false; 1 << m];
    for c in w.cycles() {
        if !w.balanced_cycles().contains(&c.edges) {
            let mask: usize = c.edges.iter().map(|e| 1usize << pos(e)).sum();
            contains_unbalanced[mask] = true;
        }
    }
    for i in 0..m {
        for x in 0..1usize << m {
            if x >> i & 1 == 1 && contains_unbalanced[x ^ (1 << i)] {
                contains_unbalanced[x] = true;
            }
        }
    }
    let ends: Vec<(u32, u32)> = ids
        .iter()
        .map(|&e| {
            let (a, b) = w.graph().endpoints(e).unwrap();
            (a.0, b.0)
        })
        .collect();
    (0..1usize << m)
        .map(|x| {
            // Components by repeated merging of vertex and edge masks.
            let mut comps: Vec<(u64, usize)> = Vec::new();
            for i in (0..m).filter(|i| x >> i & 1 == 1) {
                let (a, b) = ends[i];
                let mut vm = 1u64 << a | 1u64 << b;
                let mut em = 1usize << i;
                comps.retain(|&(cv, ce)| {
                    if cv & vm != 0 {
                        vm |= cv;
                        em |= ce;
                        false
                    } else {
                        true
                    }
                });
                comps.push((vm, em));
            }
            let vertices: u32 = comps.iter().map(|c| c.0.count_ones()).sum();
            let balanced = comps.iter().filter(|c| !contains_unbalanced[c.1]).count();
            vertices as usize - balanced
        })
        .collect()
}

/// Minimal dependent sets of the rank table.
pub fn circuits_from_rank(w: &BiasedGraph) -> BTreeSet<EdgeSet> {
    let ids = ids(w);
    let r = rank_table(w);
    let mut out = BTreeSet::new();
    for x in 1usize..r.len() {
        let size = x.count_ones() as usize;
        if r[x] < size && (0..ids.len()).filter(|i| x >> i & 1 == 1).all(|i| r[x ^ (1 << i)] == size - 1) {
            out.insert(subset(&ids, x as u32));
        }
    }
    out
}

/// Least order of a proper separation found by trying every edge
/// bipartition, or `None` if there is none. Assumes no isolated vertices.
pub fn min_separation_order(g: &MultiGraph) -> Option<usize> {
    let ids = g.edge_set().ids();
    let mut best: Option<usize> = None;
    for mask in 0u32..1 << ids.len() {
        let x = subset(&ids, mask);
        let y = g.edge_set().difference(x);
        let (vx, vy) = (g.vertices_of(x), g.vertices_of(y));
        if vx.difference(vy).is_empty() || vy.difference(vx).is_empty() {
            continue;
        }
        let order = vx.intersection(vy).len();
        best = Some(best.map_or(order, |b| b.min(order)));
    }
    best
}

/// A random `u`-`v` path found by randomized depth-first search.
pub fn random_path(g: &MultiGraph, u: VertexId, v: VertexId, r: &mut ChaCha8Rng) -> Option<biasforge::Path> {
    fn go(
        g: &MultiGraph,
        cur: VertexId,
        v: VertexId,
        r: &mut ChaCha8Rng,
        vs: &mut Vec<VertexId>,
        es: &mut Vec<EdgeId>,
    ) -> bool {
        if cur == v {
            return true;
        }
        let mut options: Vec<EdgeId> = g.links_at(cur).ids();
        for i in (1..options.len()).rev() {
            options.swap(i, r.gen_range(0..=i));
        }
        for e in options {
            let next = g.other_end(e, cur).unwrap();
            if vs.contains(&next) {
                continue;
            }
            vs.push(next);
            es.push(e);
            if go(g, next, v, r, vs, es) {
                return true;
            }
            vs.pop();
            es.pop();
        }
        false
    }
    let mut vs = vec![u];
    let mut es = Vec::new();
    go(g, u, v, r, &mut vs, &mut es).then_some(biasforge::Path { vertices: vs, edges: es })
}

/// A 3-connected biased graph with balancing vertex 0, no loops and at most
/// `max_edges` edges, unbalanced. Retries until one is found.
pub fn three_connected_balancing(r: &mut ChaCha8Rng, max_vertices: u32, max_edges: usize) -> BiasedGraph {
    loop {
        let k = r.gen_range(1..=4);
        let spec = Spec::random_connected(r, max_vertices, max_edges, 0.0).balancing_at_zero(k);
        if spec.vertices < 4 {
            continue;
        }
        let w = spec.build();
        if !w.is_balanced() && w.graph().is_k_connected(3) {
            return w;
        }
    }
}
