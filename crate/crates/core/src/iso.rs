//! Isomorphism of biased graphs by backtracking over edges.

use std::collections::{BTreeMap, HashSet};

use crate::bias::BiasedGraph;
use crate::sets::{EdgeId, EdgeSet, VertexId, VertexSet};

/// Vertex and edge bijections preserving incidence and bias.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub vertices: BTreeMap<VertexId, VertexId>,
    pub edges: BTreeMap<EdgeId, EdgeId>,
}

type EdgeKey = (bool, bool, (usize, usize), usize, usize);

fn edge_keys(w: &BiasedGraph) -> BTreeMap<EdgeId, EdgeKey> {
    let g = w.graph();
    let deg = |v: VertexId| g.incident(v).len() + g.loops_at(v).len();
    let mut in_cycles: BTreeMap<EdgeId, (usize, usize)> = BTreeMap::new();
    for c in w.cycles() {
        let bal = w.balanced_cycles().contains(&c.edges);
        for e in c.edges {
            let entry = in_cycles.entry(e).or_default();
            entry.0 += 1;
            entry.1 += bal as usize;
        }
    }
    g.edges()
        .map(|(e, a, b)| {
            let (da, db) = (deg(a), deg(b));
            let (c, bc) = in_cycles.get(&e).copied().unwrap_or_default();
            (e, (a == b, w.balanced_cycles().contains(&EdgeSet::singleton(e)), (da.min(db), da.max(db)), c, bc))
        })
        .collect()
}

/// A cheap isomorphism invariant.
pub fn invariant(w: &BiasedGraph) -> (usize, usize, usize, Vec<EdgeKey>) {
    let mut keys: Vec<EdgeKey> = edge_keys(w).into_values().collect();
    keys.sort();
    (w.graph().vertex_count(), w.cycles().len(), w.balanced_cycles().len(), keys)
}

pub fn biased_graph_isomorphic(w1: &BiasedGraph, w2: &BiasedGraph) -> Option<Isomorphism> {
    let (g1, g2) = (w1.graph(), w2.graph());
    if g1.vertex_count() != g2.vertex_count()
        || g1.edge_count() != g2.edge_count()
        || w1.cycles().len() != w2.cycles().len()
        || w1.balanced_cycles().len() != w2.balanced_cycles().len()
    {
        return None;
    }
    let k1 = edge_keys(w1);
    let k2 = edge_keys(w2);
    let mut s1: Vec<&EdgeKey> = k1.values().collect();
    let mut s2: Vec<&EdgeKey> = k2.values().collect();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return None;
    }
    // Order edges so each one after the first touches an earlier one when possible.
    let mut order: Vec<EdgeId> = Vec::new();
    let mut reached = VertexSet::EMPTY;
    let mut left = g1.edge_set();
    while let Some(first) = left.first() {
        let next = left
            .iter()
            .find(|&e| {
                let (a, b) = g1.endpoints(e).unwrap();
                reached.contains(a) || reached.contains(b)
            })
            .unwrap_or(first);
        let (a, b) = g1.endpoints(next).unwrap();
        reached.insert(a);
        reached.insert(b);
        order.push(next);
        left.remove(next);
    }
    let pos: BTreeMap<EdgeId, usize> = order.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut closing: Vec<Vec<(EdgeSet, bool)>> = vec![Vec::new(); order.len()];
    for c in w1.cycles() {
        let last = c.edges.iter().map(|e| pos[&e]).max().unwrap();
        closing[last].push((c.edges, w1.balanced_cycles().contains(&c.edges)));
    }
    let cycles2: HashSet<EdgeSet> = w2.cycles().iter().map(|c| c.edges).collect();

    struct Search<'a> {
        w1: &'a BiasedGraph,
        w2: &'a BiasedGraph,
        k1: &'a BTreeMap<EdgeId, EdgeKey>,
        k2: &'a BTreeMap<EdgeId, EdgeKey>,
        order: &'a [EdgeId],
        closing: &'a [Vec<(EdgeSet, bool)>],
        cycles2: &'a HashSet<EdgeSet>,
        vmap: BTreeMap<VertexId, VertexId>,
        vused: VertexSet,
        emap: BTreeMap<EdgeId, EdgeId>,
        eused: EdgeSet,
    }

    impl Search<'_> {
        fn bind(&mut self, a: VertexId, b: VertexId, added: &mut Vec<VertexId>) -> bool {
            match self.vmap.get(&a) {
                Some(&x) => x == b,
                None => {
                    if self.vused.contains(b) {
                        return false;
                    }
                    self.vmap.insert(a, b);
                    self.vused.insert(b);
                    added.push(a);
                    true
                }
            }
        }

        fn unbind(&mut self, added: &[VertexId]) {
            for a in added {
                let b = self.vmap.remove(a).unwrap();
                self.vused.remove(b);
            }
        }

        fn go(&mut self, i: usize) -> bool {
            if i == self.order.len() {
                return true;
            }
            let e = self.order[i];
            let (a, b) = self.w1.graph().endpoints(e).unwrap();
            let candidates: Vec<EdgeId> =
                self.w2.edge_set().difference(self.eused).iter().filter(|f| self.k2[f] == self.k1[&e]).collect();
            for f in candidates {
                let (x, y) = self.w2.graph().endpoints(f).unwrap();
                for (p, q) in [(x, y), (y, x)] {
                    if x == y && p != x {
                        continue;
                    }
                    let mut added = Vec::new();
                    if self.bind(a, p, &mut added) && self.bind(b, q, &mut added) {
                        self.emap.insert(e, f);
                        self.eused.insert(f);
                        let ok = self.closing[i].iter().all(|&(c, bal)| {
                            let img: EdgeSet = c.iter().map(|t| self.emap[&t]).collect();
                            self.cycles2.contains(&img) && self.w2.balanced_cycles().contains(&img) == bal
                        });
                        if ok && self.go(i + 1) {
                            return true;
                        }
                        self.emap.remove(&e);
                        self.eused.remove(f);
                    }
                    self.unbind(&added);
                    if x == y {
                        break;
                    }
                }
            }
            false
        }
    }

    let mut s = Search {
        w1,
        w2,
        k1: &k1,
        k2: &k2,
        order: &order,
        closing: &closing,
        cycles2: &cycles2,
        vmap: BTreeMap::new(),
        vused: VertexSet::EMPTY,
        emap: BTreeMap::new(),
        eused: EdgeSet::EMPTY,
    };
    if !s.go(0) {
        return None;
    }
    // Isolated vertices pair up in order.
    let free1: Vec<VertexId> = g1.vertices().filter(|v| !s.vmap.contains_key(v)).collect();
    let free2: Vec<VertexId> = g2.vertices().filter(|&v| !s.vused.contains(v)).collect();
    for (a, b) in free1.into_iter().zip(free2) {
        s.vmap.insert(a, b);
    }
    Some(Isomorphism { vertices: s.vmap, edges: s.emap })
}

/// Whether `w1` and `w2` are the same representation: equal up to renaming
/// vertices, with every edge keeping its identity.
pub fn same_representation(w1: &BiasedGraph, w2: &BiasedGraph) -> bool {
    let (g1, g2) = (w1.graph(), w2.graph());
    if g1.vertex_count() != g2.vertex_count()
        || w1.edge_set() != w2.edge_set()
        || w1.balanced_cycles() != w2.balanced_cycles()
    {
        return false;
    }
    fn go(
        order: &[EdgeId],
        g1: &crate::multigraph::MultiGraph,
        g2: &crate::multigraph::MultiGraph,
        vmap: &mut BTreeMap<VertexId, VertexId>,
        vused: &mut VertexSet,
    ) -> bool {
        let Some((&e, rest)) = order.split_first() else { return true };
        let (a, b) = g1.endpoints(e).unwrap();
        let (x, y) = g2.endpoints(e).unwrap();
        if (a == b) != (x == y) {
            return false;
        }
        for (p, q) in [(x, y), (y, x)] {
            let mut added = Vec::new();
            let mut ok = true;
            for (s, t) in [(a, p), (b, q)] {
                match vmap.get(&s) {
                    Some(&img) => ok &= img == t,
                    None if vused.contains(t) => ok = false,
                    None => {
                        vmap.insert(s, t);
                        vused.insert(t);
                        added.push(s);
                    }
                }
            }
            if ok && go(rest, g1, g2, vmap, vused) {
                return true;
            }
            for s in added {
                vused.remove(vmap.remove(&s).unwrap());
            }
            if x == y {
                break;
            }
        }
        false
    }
    let order = w1.edge_set().ids();
    let mut vused = VertexSet::EMPTY;
    go(&order, g1, g2, &mut BTreeMap::new(), &mut vused)
}
