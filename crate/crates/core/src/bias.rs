//! Biased graphs: a multigraph together with a theta-closed set of balanced cycles.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::multigraph::{Cycle, MultiGraph};
use crate::sets::{EdgeId, EdgeSet, VertexId, VertexSet};
use crate::uf::UnionFind;

/// Pairwise disjoint edge classes. A cycle is balanced iff it meets every class evenly.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub classes: Vec<EdgeSet>,
}

impl Signature {
    pub fn new(classes: Vec<EdgeSet>) -> Result<Self> {
        let mut seen = EdgeSet::EMPTY;
        for &c in &classes {
            if let Some(e) = seen.intersection(c).first() {
                return Err(Error::OverlappingSignature(e));
            }
            seen = seen.union(c);
        }
        Ok(Signature { classes })
    }

    pub fn single(sigma: EdgeSet) -> Self {
        Signature { classes: vec![sigma] }
    }

    pub fn is_balanced(&self, cycle: EdgeSet) -> bool {
        self.classes.iter().all(|c| c.intersection(cycle).len() % 2 == 0)
    }

    pub fn support(&self) -> EdgeSet {
        self.classes.iter().fold(EdgeSet::EMPTY, |a, &c| a.union(c))
    }
}

/// Links at a vertex grouped by the balanced cycles that join them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnbalancingPartition {
    pub vertex: VertexId,
    /// Ordered by smallest member.
    pub classes: Vec<EdgeSet>,
}

impl UnbalancingPartition {
    pub fn class_of(&self, e: EdgeId) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(e))
    }
}

#[derive(Clone)]
pub struct BiasedGraph {
    graph: MultiGraph,
    balanced: BTreeSet<EdgeSet>,
    cycles: Arc<Vec<Cycle>>,
}

impl PartialEq for BiasedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.balanced == other.balanced
    }
}

impl Eq for BiasedGraph {}

impl fmt::Debug for BiasedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BiasedGraph")
            .field("edges", &self.graph.edges().collect::<Vec<_>>())
            .field("isolated", &self.graph.vertex_set().difference(self.graph.vertices_of(self.graph.edge_set())))
            .field("balanced", &self.balanced)
            .finish()
    }
}

/// If `c1` and `c2` form a theta, the third cycle of that theta.
pub(crate) fn theta_partner(g: &MultiGraph, c1: &Cycle, v1: VertexSet, c2: &Cycle, v2: VertexSet) -> Option<EdgeSet> {
    if c1.len() < 2 || c2.len() < 2 {
        return None;
    }
    let common = c1.edges.intersection(c2.edges);
    if common.is_empty() || common == c1.edges || common == c2.edges {
        return None;
    }
    let vc = g.vertices_of(common);
    (vc.len() == common.len() + 1 && v1.intersection(v2) == vc).then(|| c1.edges.symmetric_difference(c2.edges))
}

/// Returns a theta with exactly two balanced cycles, if any.
pub(crate) fn find_theta_violation(g: &MultiGraph, cycles: &[Cycle], balanced: &BTreeSet<EdgeSet>) -> Option<[EdgeSet; 3]> {
    let bal: Vec<(&Cycle, VertexSet)> = cycles
        .iter()
        .filter(|c| c.len() >= 2 && balanced.contains(&c.edges))
        .map(|c| (c, c.vertex_set()))
        .collect();
    for i in 0..bal.len() {
        for j in i + 1..bal.len() {
            if let Some(third) = theta_partner(g, bal[i].0, bal[i].1, bal[j].0, bal[j].1) {
                if !balanced.contains(&third) {
                    let mut t = [bal[i].0.edges, bal[j].0.edges, third];
                    t.sort();
                    return Some(t);
                }
            }
        }
    }
    None
}

impl BiasedGraph {
    /// Validated construction from an explicit balanced-cycle list.
    pub fn from_balanced_cycles<I: IntoIterator<Item = EdgeSet>>(graph: MultiGraph, balanced: I) -> Result<Self> {
        let cycles = graph.all_cycles()?;
        let known: BTreeSet<EdgeSet> = cycles.iter().map(|c| c.edges).collect();
        let balanced: BTreeSet<EdgeSet> = balanced.into_iter().collect();
        if let Some(&bad) = balanced.iter().find(|c| !known.contains(c)) {
            return Err(Error::NotACycle(bad));
        }
        if let Some(t) = find_theta_violation(&graph, &cycles, &balanced) {
            return Err(Error::ThetaViolation(t));
        }
        Ok(BiasedGraph { graph, balanced, cycles: Arc::new(cycles) })
    }

    /// Bias by signature parity.
    pub fn from_signature(graph: MultiGraph, sig: &Signature) -> Result<Self> {
        Self::from_predicate(graph, |c| sig.is_balanced(c))
    }

    /// Bias given by a predicate on cycle edge sets, then validated.
    pub fn from_predicate(graph: MultiGraph, mut balanced: impl FnMut(EdgeSet) -> bool) -> Result<Self> {
        let cycles = graph.all_cycles()?;
        let b: BTreeSet<EdgeSet> = cycles.iter().map(|c| c.edges).filter(|&c| balanced(c)).collect();
        if let Some(t) = find_theta_violation(&graph, &cycles, &b) {
            return Err(Error::ThetaViolation(t));
        }
        Ok(BiasedGraph { graph, balanced: b, cycles: Arc::new(cycles) })
    }

    /// Every cycle balanced.
    pub fn balanced(graph: MultiGraph) -> Result<Self> {
        Self::from_predicate(graph, |_| true)
    }

    /// No cycle balanced.
    pub fn contrabalanced(graph: MultiGraph) -> Result<Self> {
        Self::from_predicate(graph, |_| false)
    }

    /// Skips the theta check; the caller guarantees it.
    pub(crate) fn from_parts_unchecked(graph: MultiGraph, cycles: Vec<Cycle>, balanced: BTreeSet<EdgeSet>) -> Self {
        BiasedGraph { graph, balanced, cycles: Arc::new(cycles) }
    }

    /// Re-runs the theta check.
    pub fn validate(&self) -> Result<()> {
        match find_theta_violation(&self.graph, &self.cycles, &self.balanced) {
            Some(t) => Err(Error::ThetaViolation(t)),
            None => Ok(()),
        }
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn balanced_cycles(&self) -> &BTreeSet<EdgeSet> {
        &self.balanced
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn unbalanced_cycles(&self) -> impl Iterator<Item = &Cycle> {
        self.cycles.iter().filter(|c| !self.balanced.contains(&c.edges))
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.graph.edge_set()
    }

    pub fn is_balanced_cycle(&self, c: EdgeSet) -> Result<bool> {
        if self.graph.as_cycle(c).is_none() {
            return Err(Error::NotACycle(c));
        }
        Ok(self.balanced.contains(&c))
    }

    pub fn balanced_loops(&self) -> EdgeSet {
        self.graph.loops().iter().filter(|&e| self.balanced.contains(&EdgeSet::singleton(e))).collect()
    }

    pub fn unbalanced_loops(&self) -> EdgeSet {
        self.graph.loops().difference(self.balanced_loops())
    }

    pub fn is_balanced(&self) -> bool {
        self.cycles.len() == self.balanced.len()
    }

    pub fn is_contrabalanced(&self) -> bool {
        self.balanced.is_empty()
    }

    /// Whether every cycle inside `x` is balanced. Checked on the
    /// fundamental cycles of a spanning forest of `G[x]`.
    pub fn is_balanced_set(&self, x: EdgeSet) -> bool {
        fundamental_cycles(&self.graph, x).1.iter().all(|c| self.balanced.contains(c))
    }

    /// Number of balanced components of `G[x]`.
    pub fn balanced_components(&self, x: EdgeSet) -> usize {
        self.graph.components_of(x).into_iter().filter(|&(_, ex)| self.is_balanced_set(ex)).count()
    }

    /// Vertices meeting every unbalanced cycle.
    pub fn balancing_vertices(&self) -> VertexSet {
        self.unbalanced_cycles().fold(self.graph.vertex_set(), |acc, c| acc.intersection(c.vertex_set()))
    }

    /// Unbalancing classes of the links at `u`. Unbalanced loops anywhere are ignored.
    pub fn unbalancing_classes(&self, u: VertexId) -> Result<UnbalancingPartition> {
        if !self.graph.has_vertex(u) {
            return Err(Error::UnknownVertex(u));
        }
        if self.unbalanced_cycles().any(|c| c.len() >= 2 && !c.vertex_set().contains(u)) {
            return Err(Error::NotBalancing(u));
        }
        let links: Vec<EdgeId> = self.graph.links_at(u).ids();
        let index: BTreeMap<EdgeId, usize> = links.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut uf = UnionFind::new(links.len());
        let through_u: Vec<&Cycle> =
            self.cycles.iter().filter(|c| c.len() >= 2 && c.vertices.contains(&u)).collect();
        let at_u = |c: &Cycle| -> (usize, usize) {
            let mut it = c.edges.intersection(self.graph.links_at(u)).iter();
            (index[&it.next().unwrap()], index[&it.next().unwrap()])
        };
        for c in &through_u {
            if self.balanced.contains(&c.edges) {
                let (a, b) = at_u(c);
                uf.union(a, b);
            }
        }
        for c in &through_u {
            let (a, b) = at_u(c);
            if (uf.find(a) == uf.find(b)) != self.balanced.contains(&c.edges) {
                return Err(Error::NotBalancing(u));
            }
        }
        let mut groups: BTreeMap<usize, EdgeSet> = BTreeMap::new();
        for (i, &e) in links.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().insert(e);
        }
        let mut classes: Vec<EdgeSet> = groups.into_values().collect();
        classes.sort_by_key(|c| c.first());
        Ok(UnbalancingPartition { vertex: u, classes })
    }

    /// A one-class signature reproducing the bias, if the biased graph is signed.
    pub fn is_signed(&self) -> Option<Signature> {
        let (forest, fundamentals) = fundamental_cycles(&self.graph, self.edge_set());
        let mut sigma = EdgeSet::EMPTY;
        for (e, c) in self.edge_set().difference(forest).iter().zip(fundamentals) {
            if !self.balanced.contains(&c) {
                sigma.insert(e);
            }
        }
        let sig = Signature::single(sigma);
        self.cycles.iter().all(|c| sig.is_balanced(c.edges) == self.balanced.contains(&c.edges)).then_some(sig)
    }

    /// The unbalanced loops `U` and a balancing vertex of `ω \ U`.
    pub fn almost_balanced_witness(&self) -> Option<(EdgeSet, VertexId)> {
        let loops = self.unbalanced_loops();
        let candidates = self
            .unbalanced_cycles()
            .filter(|c| c.len() >= 2)
            .fold(self.graph.vertex_set(), |acc, c| acc.intersection(c.vertex_set()));
        candidates.iter().next().map(|u| (loops, u))
    }

    /// Vertices `u` such that `ω` minus its unbalanced loops is balancing at `u`.
    pub fn almost_balancing_vertices(&self) -> VertexSet {
        self.unbalanced_cycles()
            .filter(|c| c.len() >= 2)
            .fold(self.graph.vertex_set(), |acc, c| acc.intersection(c.vertex_set()))
    }

    /// The biased subgraph on the edges `x` (vertices kept).
    pub fn delete_edges(&self, x: EdgeSet) -> BiasedGraph {
        let graph = self.graph.delete_edges(x);
        let cycles: Vec<Cycle> = self.cycles.iter().filter(|c| c.edges.is_disjoint(x)).cloned().collect();
        let balanced = self.balanced.iter().copied().filter(|c| c.is_disjoint(x)).collect();
        BiasedGraph::from_parts_unchecked(graph, cycles, balanced)
    }

    /// `G[x]` with inherited bias.
    pub fn restrict(&self, x: EdgeSet) -> BiasedGraph {
        let graph = self.graph.restrict(x);
        let cycles: Vec<Cycle> = self.cycles.iter().filter(|c| c.edges.is_subset(x)).cloned().collect();
        let balanced = self.balanced.iter().copied().filter(|c| c.is_subset(x)).collect();
        BiasedGraph::from_parts_unchecked(graph, cycles, balanced)
    }

    pub fn delete_vertex(&self, v: VertexId) -> BiasedGraph {
        let mut g = self.delete_edges(self.graph.incident(v));
        g.graph.remove_vertex(v);
        g
    }

    /// Contracts the link `e`; its larger endpoint merges into the smaller.
    pub fn contract_link(&self, e: EdgeId) -> Result<BiasedGraph> {
        let (u, v) = self.graph.endpoints(e).ok_or(Error::UnknownEdge(e))?;
        if u == v {
            return Err(Error::LoopContraction(e));
        }
        let mut graph = self.graph.clone();
        graph.remove_edge(e);
        for f in graph.incident(v).ids() {
            let (a, b) = graph.endpoints(f).unwrap();
            let a = if a == v { u } else { a };
            let b = if b == v { u } else { b };
            graph.set_endpoints(f, a, b)?;
        }
        graph.remove_vertex(v);
        let cycles = graph.all_cycles()?;
        let balanced = cycles
            .iter()
            .map(|c| c.edges)
            .filter(|&c| {
                if self.graph.as_cycle(c).is_some() {
                    self.balanced.contains(&c)
                } else {
                    self.balanced.contains(&c.with(e))
                }
            })
            .collect();
        Ok(BiasedGraph::from_parts_unchecked(graph, cycles, balanced))
    }

    /// The minor `ω / contract \ delete`.
    pub fn minor(&self, contract: EdgeSet, delete: EdgeSet) -> Result<BiasedGraph> {
        if !contract.is_disjoint(delete) {
            return Err(Error::MinorOverlap);
        }
        for e in contract.union(delete) {
            if !self.graph.has_edge(e) {
                return Err(Error::UnknownEdge(e));
            }
        }
        if let Some(e) = contract.iter().find(|&e| self.graph.is_loop(e)) {
            return Err(Error::LoopContraction(e));
        }
        let mut cur = self.delete_edges(delete);
        for e in contract {
            if cur.graph.is_loop(e) {
                if cur.balanced.contains(&EdgeSet::singleton(e)) {
                    cur = cur.delete_edges(EdgeSet::singleton(e));
                    continue;
                }
                return Err(Error::LoopContraction(e));
            }
            cur = cur.contract_link(e)?;
        }
        Ok(cur)
    }
}

/// A spanning forest of `G[x]` and, for each non-forest edge of `x` in
/// increasing id order, its fundamental cycle.
pub(crate) fn fundamental_cycles(g: &MultiGraph, x: EdgeSet) -> (EdgeSet, Vec<EdgeSet>) {
    let mut uf = UnionFind::new(crate::sets::VERTEX_ID_LIMIT as usize);
    let mut forest = EdgeSet::EMPTY;
    let mut adj: BTreeMap<VertexId, Vec<(EdgeId, VertexId)>> = BTreeMap::new();
    let mut rest = Vec::new();
    for e in x {
        let (u, v) = g.endpoints(e).expect("edge of graph");
        if u != v && uf.union(u.0 as usize, v.0 as usize) {
            forest.insert(e);
            adj.entry(u).or_default().push((e, v));
            adj.entry(v).or_default().push((e, u));
        } else {
            rest.push((e, u, v));
        }
    }
    let cycles = rest
        .into_iter()
        .map(|(e, u, v)| {
            if u == v {
                return EdgeSet::singleton(e);
            }
            // Breadth-first search for the forest path from u to v.
            let mut prev: BTreeMap<VertexId, (EdgeId, VertexId)> = BTreeMap::new();
            let mut queue = VecDeque::from([u]);
            let mut seen = VertexSet::singleton(u);
            while let Some(a) = queue.pop_front() {
                if a == v {
                    break;
                }
                for &(f, b) in adj.get(&a).map(|v| v.as_slice()).unwrap_or(&[]) {
                    if !seen.contains(b) {
                        seen.insert(b);
                        prev.insert(b, (f, a));
                        queue.push_back(b);
                    }
                }
            }
            let mut c = EdgeSet::singleton(e);
            let mut cur = v;
            while cur != u {
                let (f, p) = prev[&cur];
                c.insert(f);
                cur = p;
            }
            c
        })
        .collect();
    (forest, cycles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::edges;

    fn par(n: u32) -> MultiGraph {
        MultiGraph::from_edges(&(0..n).map(|i| (i, 0, 1)).collect::<Vec<_>>()).unwrap()
    }

    fn k4() -> MultiGraph {
        MultiGraph::from_edges(&[(0, 0, 1), (1, 0, 2), (2, 0, 3), (3, 1, 2), (4, 1, 3), (5, 2, 3)]).unwrap()
    }

    #[test]
    fn theta_property_checked() {
        let tri = MultiGraph::from_edges(&[(0, 0, 1), (1, 1, 2), (2, 0, 2)]).unwrap();
        assert!(BiasedGraph::from_balanced_cycles(tri, [edges(&[0, 1, 2])]).is_ok());
        assert!(BiasedGraph::from_balanced_cycles(par(3), [edges(&[0, 1])]).is_ok());
        assert_eq!(
            BiasedGraph::from_balanced_cycles(par(3), [edges(&[0, 1]), edges(&[0, 2])]),
            Err(Error::ThetaViolation([edges(&[0, 1]), edges(&[0, 2]), edges(&[1, 2])]))
        );
        assert_eq!(BiasedGraph::from_balanced_cycles(par(3), [edges(&[0])]), Err(Error::NotACycle(edges(&[0]))));
    }

    #[test]
    fn four_singleton_classes_are_contrabalanced() {
        let sig = Signature::new((0..4).map(|i| edges(&[i])).collect()).unwrap();
        let w = BiasedGraph::from_signature(par(4), &sig).unwrap();
        assert!(w.is_contrabalanced());
        assert_eq!(w.balancing_vertices().len(), 2);
        assert!(w.is_signed().is_none());
    }

    #[test]
    fn pinch_signature_has_balancing_vertex_and_two_classes() {
        // K4 with vertices 2 and 3 identified into 2: edges 2,4,5 re-homed.
        let g = MultiGraph::from_edges(&[(0, 0, 1), (1, 0, 2), (2, 0, 2), (3, 1, 2), (4, 1, 2), (5, 2, 2)]).unwrap();
        let w = BiasedGraph::from_signature(g, &Signature::single(edges(&[2, 4, 5]))).unwrap();
        assert!(w.balancing_vertices().contains(VertexId(2)));
        let classes = w.unbalancing_classes(VertexId(2)).unwrap();
        assert_eq!(classes.classes, vec![edges(&[1, 3]), edges(&[2, 4])]);
        let sig = w.is_signed().unwrap();
        assert!(w.cycles().iter().all(|c| sig.is_balanced(c.edges) == w.balanced_cycles().contains(&c.edges)));
    }

    #[test]
    fn balanced_graph_basics() {
        let w = BiasedGraph::balanced(k4()).unwrap();
        assert_eq!(w.balancing_vertices().len(), 4);
        assert_eq!(w.unbalancing_classes(VertexId(0)).unwrap().classes.len(), 1);
        assert_eq!(w.is_signed(), Some(Signature::single(EdgeSet::EMPTY)));
        assert_eq!(w.balanced_components(w.edge_set()), 1);
    }

    #[test]
    fn contraction_rule() {
        let tri = BiasedGraph::balanced(MultiGraph::from_edges(&[(0, 0, 1), (1, 1, 2), (2, 0, 2)]).unwrap()).unwrap();
        let m = tri.minor(edges(&[0]), EdgeSet::EMPTY).unwrap();
        assert_eq!(m.graph().edge_count(), 2);
        assert!(m.balanced_cycles().contains(&edges(&[1, 2])));
        assert_eq!(tri.minor(EdgeSet::EMPTY, EdgeSet::EMPTY).unwrap(), tri);
    }

    #[test]
    fn three_disjoint_unbalanced_cycles_are_not_almost_balanced() {
        let g = MultiGraph::from_edges(&[(0, 0, 0), (1, 1, 1), (2, 2, 2), (3, 0, 1), (4, 1, 2)]).unwrap();
        let w = BiasedGraph::contrabalanced(g).unwrap();
        // Unbalanced loops are removed first, so this is almost balanced at every vertex.
        assert!(w.almost_balanced_witness().is_some());
        let g = MultiGraph::from_edges(&[
            (0, 0, 1), (1, 0, 1), (2, 2, 3), (3, 2, 3), (4, 4, 5), (5, 4, 5), (6, 1, 2), (7, 3, 4),
        ])
        .unwrap();
        let w = BiasedGraph::contrabalanced(g).unwrap();
        assert!(w.almost_balanced_witness().is_none());
    }
}
