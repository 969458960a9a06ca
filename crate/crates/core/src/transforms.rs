//! Transforms that preserve the frame matroid: simplification, pinching and
//! splitting, rolling up and unrolling.

use std::collections::BTreeMap;

use crate::bias::{BiasedGraph, Signature};
use crate::error::{Error, Result};
use crate::frame::{matroid_equal, Matroid};
use crate::multigraph::MultiGraph;
use crate::sets::{EdgeSet, VertexId};

/// Keeps one element of each parallel class and drops matroid loops.
pub fn simplify(w: &BiasedGraph) -> BiasedGraph {
    let g = w.graph();
    let mut drop = w.balanced_loops();
    for v in g.vertices() {
        let unbalanced = g.loops_at(v).difference(drop);
        if let Some(keep) = unbalanced.first() {
            drop = drop.union(unbalanced.without(keep));
        }
    }
    // Links joining the same pair are parallel iff they form a balanced 2-cycle.
    let mut by_pair: BTreeMap<(VertexId, VertexId), Vec<crate::sets::EdgeId>> = BTreeMap::new();
    for (e, a, b) in g.edges() {
        if a != b {
            by_pair.entry((a, b)).or_default().push(e);
        }
    }
    for links in by_pair.values() {
        let mut kept: Vec<crate::sets::EdgeId> = Vec::new();
        for &e in links {
            if kept.iter().any(|&k| w.balanced_cycles().contains(&EdgeSet::singleton(k).with(e))) {
                drop.insert(e);
            } else {
                kept.push(e);
            }
        }
    }
    w.delete_edges(drop)
}

/// Identifies `v` with `u`; the merged vertex keeps the id `u`.
pub fn pinch(h: &MultiGraph, u: VertexId, v: VertexId) -> Result<BiasedGraph> {
    if u == v {
        return Err(Error::SameVertex(u));
    }
    for x in [u, v] {
        if !h.has_vertex(x) {
            return Err(Error::UnknownVertex(x));
        }
    }
    let sigma = h.links_at(u);
    let mut g = h.clone();
    for e in h.incident(v) {
        let (a, b) = h.endpoints(e).unwrap();
        let a = if a == v { u } else { a };
        let b = if b == v { u } else { b };
        g.set_endpoints(e, a, b)?;
    }
    g.remove_vertex(v);
    let w = BiasedGraph::from_signature(g, &Signature::single(sigma))?;
    if !matroid_equal(&Matroid::frame(&w), &Matroid::cycle_matroid(h)?)? {
        return Err(Error::MatroidMismatch(format!("pinch of {u} and {v} changed the matroid")));
    }
    Ok(w)
}

/// Inverse of [`pinch`] at a balancing vertex of a signed graph. The links of
/// the class holding the smallest edge of each block stay on `u`; the other
/// class moves to a new vertex.
pub fn split(w: &BiasedGraph, u: VertexId) -> Result<MultiGraph> {
    let g = w.graph();
    if !g.has_vertex(u) {
        return Err(Error::UnknownVertex(u));
    }
    w.is_signed().ok_or(Error::NotSigned)?;
    if !w.balancing_vertices().contains(u) {
        return Err(Error::NotBalancing(u));
    }
    let classes = w.unbalancing_classes(u)?;
    let u2 = g.fresh_vertex();
    let mut h = g.clone();
    h.add_vertex(u2)?;
    let links = g.links_at(u);
    // Blocks through u correspond to components of G - u.
    let rest = g.without_vertex(u);
    for comp in rest.vertex_components() {
        let block_links: EdgeSet = links.iter().filter(|&e| comp.contains(g.other_end(e, u).unwrap())).collect();
        let mut in_block: Vec<EdgeSet> = classes
            .classes
            .iter()
            .map(|c| c.intersection(block_links))
            .filter(|c| !c.is_empty())
            .collect();
        if in_block.len() > 2 {
            return Err(Error::TooManyClasses(u));
        }
        in_block.sort_by_key(|c| c.first());
        if let Some(second) = in_block.get(1) {
            for e in *second {
                let x = g.other_end(e, u).unwrap();
                h.set_endpoints(e, x, u2)?;
            }
        }
    }
    for e in w.unbalanced_loops().intersection(g.loops_at(u)) {
        h.set_endpoints(e, u, u2)?;
    }
    if !matroid_equal(&Matroid::cycle_matroid(&h)?, &Matroid::frame(w))? {
        return Err(Error::MatroidMismatch(format!("split at {u} changed the matroid")));
    }
    Ok(h)
}

fn classes_at(w: &BiasedGraph, u: VertexId) -> Result<Vec<EdgeSet>> {
    if !w.graph().has_vertex(u) {
        return Err(Error::UnknownVertex(u));
    }
    match w.unbalancing_classes(u) {
        Ok(p) => Ok(p.classes),
        Err(Error::NotBalancing(_)) => Err(Error::NotAlmostBalanced),
        Err(e) => Err(e),
    }
}

/// Rolls the links of unbalancing class `index` at `u` into unbalanced loops
/// at their other ends.
pub fn rollup(w: &BiasedGraph, u: VertexId, index: usize) -> Result<BiasedGraph> {
    let classes = classes_at(w, u)?;
    let sigma = *classes.get(index).ok_or(Error::BadClass { index, count: classes.len() })?;
    let mut g = w.graph().clone();
    for e in sigma {
        let x = w.graph().other_end(e, u).ok_or_else(|| Error::Precondition(format!("{e} is not at {u}")))?;
        if x == u {
            return Err(Error::Precondition(format!("{e} is a loop at {u}")));
        }
        g.set_endpoints(e, x, x)?;
    }
    let mut sig = vec![w.unbalanced_loops().union(sigma)];
    sig.extend(classes.iter().enumerate().filter(|&(j, _)| j != index).map(|(_, &c)| c));
    BiasedGraph::from_signature(g, &Signature::new(sig)?)
}

/// Turns every unbalanced loop not at `u` into a link to `u`.
pub fn unroll(w: &BiasedGraph, u: VertexId) -> Result<BiasedGraph> {
    let classes = classes_at(w, u)?;
    let g0 = w.graph();
    let moved = w.unbalanced_loops().difference(g0.loops_at(u));
    let mut g = g0.clone();
    for e in moved {
        let (x, _) = g0.endpoints(e).unwrap();
        g.set_endpoints(e, x, u)?;
    }
    let mut sig = vec![w.unbalanced_loops()];
    sig.extend(classes);
    let out = BiasedGraph::from_signature(g, &Signature::new(sig)?)?;
    if !matroid_equal(&Matroid::frame(&out), &Matroid::frame(w))? {
        return Err(Error::MatroidMismatch(format!("unrolling at {u} changed the matroid")));
    }
    Ok(out)
}

/// The fully unrolled form and one roll-up per unbalancing class.
#[derive(Clone, Debug)]
pub struct RollupFamily {
    pub vertex: VertexId,
    pub base: BiasedGraph,
    /// `members[0]` rolls up the unrolled loops and equals the input; the
    /// others roll up the remaining classes in order.
    pub members: Vec<BiasedGraph>,
}

impl RollupFamily {
    /// Base followed by members.
    pub fn all(&self) -> impl Iterator<Item = &BiasedGraph> {
        std::iter::once(&self.base).chain(self.members.iter())
    }

    pub fn len(&self) -> usize {
        self.members.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

pub fn rollup_family(w: &BiasedGraph) -> Result<RollupFamily> {
    let (_, u) = w.almost_balanced_witness().ok_or(Error::NotAlmostBalanced)?;
    rollup_family_at(w, u)
}

pub fn rollup_family_at(w: &BiasedGraph, u: VertexId) -> Result<RollupFamily> {
    let base = unroll(w, u)?;
    let sigma0 = w.unbalanced_loops().difference(w.graph().loops_at(u));
    let classes = classes_at(&base, u)?;
    let mut members = vec![w.clone()];
    for (i, c) in classes.iter().enumerate() {
        if *c == sigma0 {
            members[0] = rollup(&base, u, i)?;
        } else {
            members.push(rollup(&base, u, i)?);
        }
    }
    let target = Matroid::frame(w);
    for m in std::iter::once(&base).chain(members.iter()) {
        if !matroid_equal(&Matroid::frame(m), &target)? {
            return Err(Error::MatroidMismatch("roll-up family member differs".into()));
        }
    }
    Ok(RollupFamily { vertex: u, base, members })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{edges, EdgeId};

    fn k3() -> MultiGraph {
        MultiGraph::from_edges(&[(0, 0, 1), (1, 1, 2), (2, 0, 2)]).unwrap()
    }

    #[test]
    fn pinch_examples() {
        let p = pinch(&k3(), VertexId(0), VertexId(1)).unwrap();
        assert_eq!(p.graph().vertex_count(), 2);
        assert_eq!(p.unbalanced_loops(), edges(&[0]));
        let c4 = MultiGraph::from_edges(&[(0, 0, 1), (1, 1, 2), (2, 2, 3), (3, 3, 0)]).unwrap();
        let p = pinch(&c4, VertexId(0), VertexId(2)).unwrap();
        assert!(p.is_contrabalanced() || p.balanced_cycles().len() == 1);
        let tree = MultiGraph::from_edges(&[(0, 0, 1), (1, 1, 2), (2, 1, 3)]).unwrap();
        let p = pinch(&tree, VertexId(0), VertexId(2)).unwrap();
        assert_eq!(p.rank(p.edge_set()), 3);
        assert_eq!(pinch(&k3(), VertexId(1), VertexId(1)).unwrap_err(), Error::SameVertex(VertexId(1)));
    }

    #[test]
    fn split_inverts_pinch() {
        let k4 = MultiGraph::from_edges(&[(0, 0, 1), (1, 0, 2), (2, 0, 3), (3, 1, 2), (4, 1, 3), (5, 2, 3)]).unwrap();
        let p = pinch(&k4, VertexId(2), VertexId(3)).unwrap();
        let h = split(&p, VertexId(2)).unwrap();
        assert!(matroid_equal(&Matroid::cycle_matroid(&h).unwrap(), &Matroid::cycle_matroid(&k4).unwrap()).unwrap());
        // The loop from edge 5 becomes a link between the two halves.
        let (a, b) = h.endpoints(EdgeId(5)).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn roll_and_unroll() {
        // Balanced triangle with an extra link 3 from 0 to 1 in its own class at 0.
        let g = MultiGraph::from_edges(&[(0, 0, 1), (1, 1, 2), (2, 0, 2), (3, 0, 1)]).unwrap();
        let w = BiasedGraph::from_signature(g, &Signature::single(edges(&[3]))).unwrap();
        let classes = w.unbalancing_classes(VertexId(0)).unwrap();
        assert_eq!(classes.classes, vec![edges(&[0, 2]), edges(&[3])]);
        let r = rollup(&w, VertexId(0), 1).unwrap();
        assert_eq!(r.graph().endpoints(EdgeId(3)), Some((VertexId(1), VertexId(1))));
        assert!(matroid_equal(&Matroid::frame(&r), &Matroid::frame(&w)).unwrap());
        let back = unroll(&r, VertexId(0)).unwrap();
        assert_eq!(back, w);
        assert_eq!(unroll(&w, VertexId(0)).unwrap(), w);
        let fam = rollup_family_at(&w, VertexId(0)).unwrap();
        assert_eq!(fam.len(), 4);
        assert!(matches!(rollup(&w, VertexId(0), 5), Err(Error::BadClass { .. })));
    }

    #[test]
    fn simplify_examples() {
        let two_loops = BiasedGraph::contrabalanced(MultiGraph::from_edges(&[(0, 0, 0), (1, 0, 0), (2, 0, 1)]).unwrap())
            .unwrap();
        assert_eq!(simplify(&two_loops).edge_set(), edges(&[0, 2]));
        let bal2 = BiasedGraph::balanced(MultiGraph::from_edges(&[(0, 0, 1), (1, 0, 1)]).unwrap()).unwrap();
        assert_eq!(simplify(&bal2).edge_set(), edges(&[0]));
        let tri = BiasedGraph::balanced(k3()).unwrap();
        assert_eq!(simplify(&tri), tri);
    }
}
