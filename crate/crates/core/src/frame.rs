//! Frame matroids of biased graphs, and the small amount of general matroid
//! machinery needed to compare, minor and search them.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::bias::BiasedGraph;
use crate::error::{Error, Result};
use crate::limits;
use crate::multigraph::MultiGraph;
use crate::sets::{EdgeId, EdgeSet, VertexSet};
use crate::uf::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CircuitKind {
    BalancedCycle,
    TightHandcuffs,
    LooseHandcuffs,
    ContrabalancedTheta,
}

impl BiasedGraph {
    /// `|V(X)| - b(X)`.
    pub fn rank(&self, x: EdgeSet) -> usize {
        let x = x.intersection(self.edge_set());
        self.graph().vertices_of(x).len() - self.balanced_components(x)
    }

    /// Rank with an unknown-edge check.
    pub fn rank_checked(&self, x: EdgeSet) -> Result<usize> {
        if let Some(e) = x.difference(self.edge_set()).first() {
            return Err(Error::UnknownEdge(e));
        }
        Ok(self.rank(x))
    }
}

/// The four-type circuit catalog, sorted.
pub fn circuits(w: &BiasedGraph) -> Vec<(EdgeSet, CircuitKind)> {
    let g = w.graph();
    let mut out: Vec<(EdgeSet, CircuitKind)> =
        w.balanced_cycles().iter().map(|&c| (c, CircuitKind::BalancedCycle)).collect();
    let unbalanced: Vec<(EdgeSet, VertexSet)> = w.unbalanced_cycles().map(|c| (c.edges, c.vertex_set())).collect();
    let mut loose = BTreeSet::new();
    for i in 0..unbalanced.len() {
        for j in i + 1..unbalanced.len() {
            let (c1, v1) = unbalanced[i];
            let (c2, v2) = unbalanced[j];
            if !c1.is_disjoint(c2) {
                continue;
            }
            match v1.intersection(v2).len() {
                1 => out.push((c1.union(c2), CircuitKind::TightHandcuffs)),
                0 => {
                    for p in connecting_paths(g, v1, v2) {
                        loose.insert(c1.union(c2).union(p));
                    }
                }
                _ => {}
            }
        }
    }
    out.extend(loose.into_iter().map(|c| (c, CircuitKind::LooseHandcuffs)));
    let cycles = w.cycles();
    for t in g.thetas_from_cycles(cycles) {
        if t.cycles.iter().all(|c| !w.balanced_cycles().contains(c)) {
            out.push((t.edges(), CircuitKind::ContrabalancedTheta));
        }
    }
    out.sort();
    out
}

/// Paths with one end in `a`, the other in `b`, and no interior vertex in either.
fn connecting_paths(g: &MultiGraph, a: VertexSet, b: VertexSet) -> Vec<EdgeSet> {
    let blocked = a.union(b);
    let mut out = Vec::new();
    fn walk(
        g: &MultiGraph,
        x: crate::sets::VertexId,
        b: VertexSet,
        blocked: VertexSet,
        seen: VertexSet,
        path: EdgeSet,
        out: &mut Vec<EdgeSet>,
    ) {
        for e in g.links_at(x) {
            let y = g.other_end(e, x).unwrap();
            if b.contains(y) {
                out.push(path.with(e));
            } else if !blocked.contains(y) && !seen.contains(y) {
                let mut s = seen;
                s.insert(y);
                walk(g, y, b, blocked, s, path.with(e), out);
            }
        }
    }
    for s in a.iter() {
        walk(g, s, b, blocked, VertexSet::singleton(s), EdgeSet::EMPTY, &mut out);
    }
    out
}

#[derive(Clone, Debug)]
enum Source {
    Frame(Arc<BiasedGraph>),
    Circuits,
}

/// A matroid given either by a biased graph or by its circuit list.
#[derive(Clone, Debug)]
pub struct Matroid {
    ground: EdgeSet,
    source: Source,
    circuits: OnceLock<Arc<Vec<EdgeSet>>>,
}

impl Matroid {
    /// `F(ω)`.
    pub fn frame(w: &BiasedGraph) -> Matroid {
        Matroid { ground: w.edge_set(), source: Source::Frame(Arc::new(w.clone())), circuits: OnceLock::new() }
    }

    /// The cycle matroid `M(G)`.
    pub fn cycle_matroid(g: &MultiGraph) -> Result<Matroid> {
        Ok(Matroid::frame(&BiasedGraph::balanced(g.clone())?))
    }

    /// Trusts that `circuits` is a valid circuit family on `ground`.
    pub fn from_circuits(ground: EdgeSet, circuits: impl IntoIterator<Item = EdgeSet>) -> Matroid {
        let mut c: Vec<EdgeSet> = circuits.into_iter().collect();
        c.sort();
        c.dedup();
        let cell = OnceLock::new();
        let _ = cell.set(Arc::new(c));
        Matroid { ground, source: Source::Circuits, circuits: cell }
    }

    /// `U_{r,n}` on elements `0..n`.
    pub fn uniform(r: usize, n: usize) -> Matroid {
        let ground: EdgeSet = (0..n as u32).map(EdgeId).collect();
        let circuits = subsets_of_size(ground, r + 1);
        Matroid::from_circuits(ground, circuits)
    }

    pub fn ground(&self) -> EdgeSet {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    /// The biased graph this matroid was built from, if any.
    pub fn biased_graph(&self) -> Option<&BiasedGraph> {
        match &self.source {
            Source::Frame(w) => Some(w),
            Source::Circuits => None,
        }
    }

    pub fn circuits(&self) -> &[EdgeSet] {
        self.circuits.get_or_init(|| match &self.source {
            Source::Frame(w) => {
                let mut c: Vec<EdgeSet> = circuits(w).into_iter().map(|(c, _)| c).collect();
                c.sort();
                Arc::new(c)
            }
            Source::Circuits => unreachable!("circuit matroids are built with their circuits"),
        })
    }

    pub fn rank(&self, x: EdgeSet) -> usize {
        let x = x.intersection(self.ground);
        match &self.source {
            Source::Frame(w) => w.rank(x),
            Source::Circuits => {
                let circuits = self.circuits();
                let mut indep = EdgeSet::EMPTY;
                for e in x {
                    let trial = indep.with(e);
                    if !circuits.iter().any(|c| c.contains(e) && c.is_subset(trial)) {
                        indep = trial;
                    }
                }
                indep.len()
            }
        }
    }

    pub fn full_rank(&self) -> usize {
        self.rank(self.ground)
    }

    pub fn is_independent(&self, x: EdgeSet) -> bool {
        self.rank(x) == x.len()
    }

    pub fn is_circuit(&self, x: EdgeSet) -> bool {
        self.circuits().binary_search(&x).is_ok()
    }

    pub fn closure(&self, x: EdgeSet) -> EdgeSet {
        let r = self.rank(x);
        self.ground.iter().filter(|&e| x.contains(e) || self.rank(x.with(e)) == r).collect()
    }

    /// `M | x`.
    pub fn restrict(&self, x: EdgeSet) -> Matroid {
        let x = x.intersection(self.ground);
        match &self.source {
            Source::Frame(w) => Matroid::frame(&w.restrict(x)),
            Source::Circuits => Matroid::from_circuits(x, self.circuits().iter().copied().filter(|c| c.is_subset(x))),
        }
    }

    pub fn delete(&self, d: EdgeSet) -> Matroid {
        self.restrict(self.ground.difference(d))
    }

    /// `M / t`: the minimal nonempty sets among `C - t`.
    pub fn contract(&self, t: EdgeSet) -> Matroid {
        let ground = self.ground.difference(t);
        let mut cand: Vec<EdgeSet> =
            self.circuits().iter().map(|c| c.difference(t)).filter(|c| !c.is_empty()).collect();
        cand.sort();
        cand.dedup();
        let mut minimal: Vec<EdgeSet> = Vec::new();
        for c in cand {
            if !minimal.iter().any(|m| m.is_subset(c)) {
                minimal.push(c);
            }
        }
        Matroid::from_circuits(ground, minimal)
    }

    pub fn minor(&self, contract: EdgeSet, delete: EdgeSet) -> Result<Matroid> {
        if !contract.is_disjoint(delete) {
            return Err(Error::MinorOverlap);
        }
        Ok(self.delete(delete).contract(contract))
    }

    /// No 1-separation: every pair of elements lies in a common circuit.
    pub fn is_connected(&self) -> bool {
        let ids = self.ground.ids();
        if ids.len() <= 1 {
            return true;
        }
        let pos: BTreeMap<EdgeId, usize> = ids.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut uf = UnionFind::new(ids.len());
        for c in self.circuits() {
            let mut it = c.iter();
            let a = pos[&it.next().unwrap()];
            for e in it {
                uf.union(a, pos[&e]);
            }
        }
        (0..ids.len()).all(|i| uf.find(i) == uf.find(0))
    }

    /// Flats of rank `r - 1`.
    pub fn hyperplanes(&self) -> Vec<EdgeSet> {
        let r = self.full_rank();
        if r == 0 {
            return Vec::new();
        }
        let mut out = BTreeSet::new();
        for s in subsets_of_size(self.ground, r - 1) {
            if self.is_independent(s) {
                out.insert(self.closure(s));
            }
        }
        out.into_iter().collect()
    }

    pub fn cocircuits(&self) -> Vec<EdgeSet> {
        let mut out: Vec<EdgeSet> = self.hyperplanes().into_iter().map(|h| self.ground.difference(h)).collect();
        out.sort();
        out
    }

    pub fn is_hyperplane(&self, x: EdgeSet) -> bool {
        let r = self.full_rank();
        r > 0 && self.rank(x) == r - 1 && self.closure(x) == x
    }

    /// Renames the ground set.
    pub fn relabel(&self, map: &BTreeMap<EdgeId, EdgeId>) -> Matroid {
        let f = |s: EdgeSet| s.iter().map(|e| map[&e]).collect::<EdgeSet>();
        Matroid::from_circuits(f(self.ground), self.circuits().iter().map(|&c| f(c)))
    }
}

/// All subsets of `s` with exactly `k` elements, in lexicographic order of ids.
pub fn subsets_of_size(s: EdgeSet, k: usize) -> Vec<EdgeSet> {
    fn rec(ids: &[EdgeId], k: usize, start: usize, cur: EdgeSet, out: &mut Vec<EdgeSet>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..ids.len() {
            if ids.len() - i < k {
                break;
            }
            rec(ids, k - 1, i + 1, cur.with(ids[i]), out);
        }
    }
    let mut out = Vec::new();
    rec(&s.ids(), k, 0, EdgeSet::EMPTY, &mut out);
    out
}

/// Same circuits on the same ground set.
pub fn matroid_equal(m1: &Matroid, m2: &Matroid) -> Result<bool> {
    if m1.ground() != m2.ground() {
        return Err(Error::GroundMismatch);
    }
    Ok(m1.circuits() == m2.circuits())
}

/// A bijection of ground sets carrying circuits onto circuits.
pub fn matroid_isomorphic(m1: &Matroid, m2: &Matroid) -> Option<BTreeMap<EdgeId, EdgeId>> {
    if m1.len() != m2.len() || m1.circuits().len() != m2.circuits().len() || m1.full_rank() != m2.full_rank() {
        return None;
    }
    let profile = |m: &Matroid, e: EdgeId| -> Vec<usize> {
        let mut h = vec![0; m.len() + 1];
        for c in m.circuits().iter().filter(|c| c.contains(e)) {
            h[c.len()] += 1;
        }
        h
    };
    let mut sizes1: Vec<usize> = m1.circuits().iter().map(|c| c.len()).collect();
    let mut sizes2: Vec<usize> = m2.circuits().iter().map(|c| c.len()).collect();
    sizes1.sort();
    sizes2.sort();
    if sizes1 != sizes2 {
        return None;
    }
    // Assign elements in order of first appearance among the circuits.
    let mut order: Vec<EdgeId> = Vec::new();
    for c in m1.circuits() {
        for e in *c {
            if !order.contains(&e) {
                order.push(e);
            }
        }
    }
    for e in m1.ground() {
        if !order.contains(&e) {
            order.push(e);
        }
    }
    let pos: BTreeMap<EdgeId, usize> = order.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut closing: Vec<Vec<EdgeSet>> = vec![Vec::new(); order.len()];
    for &c in m1.circuits() {
        let last = c.iter().map(|e| pos[&e]).max().unwrap();
        closing[last].push(c);
    }
    let p1: Vec<Vec<usize>> = order.iter().map(|&e| profile(m1, e)).collect();
    let targets: Vec<(EdgeId, Vec<usize>)> = m2.ground().iter().map(|f| (f, profile(m2, f))).collect();
    let c2: HashSet<EdgeSet> = m2.circuits().iter().copied().collect();

    struct Search<'a> {
        order: &'a [EdgeId],
        p1: &'a [Vec<usize>],
        targets: &'a [(EdgeId, Vec<usize>)],
        closing: &'a [Vec<EdgeSet>],
        c2: &'a HashSet<EdgeSet>,
        map: BTreeMap<EdgeId, EdgeId>,
        used: EdgeSet,
    }
    impl Search<'_> {
        fn go(&mut self, i: usize) -> bool {
            if i == self.order.len() {
                return true;
            }
            let e = self.order[i];
            for (f, prof) in self.targets {
                if self.used.contains(*f) || *prof != self.p1[i] {
                    continue;
                }
                self.map.insert(e, *f);
                self.used.insert(*f);
                let ok = self.closing[i].iter().all(|c| {
                    let img: EdgeSet = c.iter().map(|x| self.map[&x]).collect();
                    self.c2.contains(&img)
                });
                if ok && self.go(i + 1) {
                    return true;
                }
                self.map.remove(&e);
                self.used.remove(*f);
            }
            false
        }
    }
    let mut s = Search {
        order: &order,
        p1: &p1,
        targets: &targets,
        closing: &closing,
        c2: &c2,
        map: BTreeMap::new(),
        used: EdgeSet::EMPTY,
    };
    s.go(0).then_some(s.map)
}

/// Contract and delete sets producing a `U_{2,4}` minor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct U24Witness {
    pub contract: EdgeSet,
    pub delete: EdgeSet,
}

/// Searches for a `U_{2,4}` minor, refusing ground sets over the configured cap.
pub fn has_u24_minor(m: &Matroid) -> Result<Option<U24Witness>> {
    has_u24_minor_capped(m, limits::max_ground())
}

pub fn has_u24_minor_capped(m: &Matroid, cap: usize) -> Result<Option<U24Witness>> {
    if m.len() > cap {
        return Err(Error::CapExceeded { what: "ground set for minor search", limit: cap });
    }
    let r = m.full_rank();
    if r < 2 {
        return Ok(None);
    }
    for i in subsets_of_size(m.ground(), r - 2) {
        if !m.is_independent(i) {
            continue;
        }
        let base = i.len();
        let nonloops: Vec<EdgeId> = m.ground().difference(i).iter().filter(|&e| m.rank(i.with(e)) == base + 1).collect();
        let mut reps: Vec<EdgeId> = Vec::new();
        for e in nonloops {
            if reps.iter().all(|&f| m.rank(i.with(e).with(f)) == base + 2) {
                reps.push(e);
                if reps.len() == 4 {
                    let keep: EdgeSet = reps.iter().collect();
                    let delete = m.ground().difference(i).difference(keep);
                    return Ok(Some(U24Witness { contract: i, delete }));
                }
            }
        }
    }
    Ok(None)
}

/// Whether `m / contract \ delete` is `U_{2,4}`.
pub fn is_u24_witness(m: &Matroid, w: &U24Witness) -> bool {
    let Ok(minor) = m.minor(w.contract, w.delete) else { return false };
    minor.len() == 4 && matroid_equal(&minor, &Matroid::uniform(2, 4).relabel(&relabel_to(minor.ground()))).unwrap_or(false)
}

fn relabel_to(target: EdgeSet) -> BTreeMap<EdgeId, EdgeId> {
    target.iter().enumerate().map(|(i, e)| (EdgeId(i as u32), e)).collect()
}

/// A graph whose cycle matroid is `m` (same labels), found by exhaustive search.
pub fn is_graphic_bruteforce(m: &Matroid) -> Result<Option<MultiGraph>> {
    if m.len() > limits::GRAPHIC_MAX_GROUND {
        return Err(Error::CapExceeded { what: "ground set for graphic search", limit: limits::GRAPHIC_MAX_GROUND });
    }
    if m.full_rank() > limits::GRAPHIC_MAX_RANK {
        return Err(Error::CapExceeded { what: "rank for graphic search", limit: limits::GRAPHIC_MAX_RANK });
    }
    is_graphic_uncapped(m)
}

pub(crate) fn is_graphic_uncapped(m: &Matroid) -> Result<Option<MultiGraph>> {
    let found = crate::realize::realize(m, m.full_rank() + 1, crate::realize::Policy::AllBalanced, true)?;
    Ok(found.into_iter().next().map(|w| w.graph().clone()))
}

/// Matroid and graph orders of an edge bipartition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidSeparationReport {
    pub x: EdgeSet,
    pub y: EdgeSet,
    pub lambda_matroid: usize,
    pub lambda_graph: usize,
    pub b_x: usize,
    pub b_y: usize,
    /// Whether `λ_M = λ_G - b(X) - b(Y) + 1`; present only when the
    /// biased graph is connected and unbalanced and both sides are connected.
    pub identity_holds: Option<bool>,
}

pub fn matroid_connectivity(w: &BiasedGraph, x: EdgeSet) -> MatroidSeparationReport {
    let e = w.edge_set();
    let x = x.intersection(e);
    let y = e.difference(x);
    let lambda_matroid = w.rank(x) + w.rank(y) + 1 - w.rank(e);
    let sep = w.graph().separation(x);
    let (b_x, b_y) = (w.balanced_components(x), w.balanced_components(y));
    let g = w.graph();
    let applies = g.is_connected()
        && !w.is_balanced()
        && g.components_of(x).len() == 1
        && g.components_of(y).len() == 1;
    let identity_holds = applies.then(|| lambda_matroid as isize == sep.order as isize - b_x as isize - b_y as isize + 1);
    MatroidSeparationReport { x, y, lambda_matroid, lambda_graph: sep.order, b_x, b_y, identity_holds }
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
    fn rank_examples() {
        let tri = BiasedGraph::balanced(MultiGraph::from_edges(&[(0, 0, 1), (1, 1, 2), (2, 0, 2)]).unwrap()).unwrap();
        assert_eq!(tri.rank(tri.edge_set()), 2);
        let u24 = BiasedGraph::contrabalanced(par(4)).unwrap();
        assert_eq!(u24.rank(u24.edge_set()), 2);
        let lp = BiasedGraph::contrabalanced(MultiGraph::from_edges(&[(0, 0, 0)]).unwrap()).unwrap();
        assert_eq!(lp.rank(lp.edge_set()), 1);
        assert_eq!(tri.rank_checked(edges(&[9])), Err(Error::UnknownEdge(EdgeId(9))));
    }

    #[test]
    fn circuit_examples() {
        let two_loops = BiasedGraph::contrabalanced(MultiGraph::from_edges(&[(0, 0, 0), (1, 0, 0)]).unwrap()).unwrap();
        assert_eq!(circuits(&two_loops), vec![(edges(&[0, 1]), CircuitKind::TightHandcuffs)]);
        let u24 = BiasedGraph::contrabalanced(par(4)).unwrap();
        let c = circuits(&u24);
        assert_eq!(c.len(), 4);
        assert!(c.iter().all(|&(s, k)| s.len() == 3 && k == CircuitKind::ContrabalancedTheta));
        assert_eq!(Matroid::frame(&u24).circuits(), Matroid::uniform(2, 4).circuits());
        let loose = BiasedGraph::contrabalanced(MultiGraph::from_edges(&[(0, 0, 0), (1, 0, 1), (2, 1, 1)]).unwrap())
            .unwrap();
        assert_eq!(circuits(&loose), vec![(edges(&[0, 1, 2]), CircuitKind::LooseHandcuffs)]);
    }

    #[test]
    fn uniform_and_cocircuits() {
        let u = Matroid::uniform(2, 4);
        assert_eq!(u.full_rank(), 2);
        assert_eq!(u.cocircuits(), subsets_of_size(u.ground(), 3));
        let tri = Matroid::cycle_matroid(&MultiGraph::from_edges(&[(0, 0, 1), (1, 1, 2), (2, 0, 2)]).unwrap()).unwrap();
        assert_eq!(tri.cocircuits(), subsets_of_size(tri.ground(), 2));
        assert_eq!(subsets_of_size(edges(&[0, 1, 2, 3, 4]), 3).len(), 10);
        assert_eq!(subsets_of_size(edges(&[0, 1]), 0), vec![EdgeSet::EMPTY]);
    }

    #[test]
    fn equality_and_isomorphism() {
        let bal = BiasedGraph::balanced(MultiGraph::from_edges(&[(0, 0, 1), (1, 1, 2), (2, 0, 2)]).unwrap()).unwrap();
        let con = BiasedGraph::contrabalanced(bal.graph().clone()).unwrap();
        assert!(matroid_equal(&Matroid::frame(&bal), &Matroid::frame(&bal)).unwrap());
        assert!(!matroid_equal(&Matroid::frame(&bal), &Matroid::frame(&con)).unwrap());
        assert_eq!(matroid_equal(&Matroid::frame(&bal), &Matroid::uniform(2, 4)), Err(Error::GroundMismatch));
        // Three links plus an unbalanced loop also gives U_{2,4}.
        let other = BiasedGraph::contrabalanced(
            MultiGraph::from_edges(&[(10, 0, 1), (11, 0, 1), (12, 0, 1), (13, 1, 1)]).unwrap(),
        )
        .unwrap();
        assert!(matroid_isomorphic(&Matroid::uniform(2, 4), &Matroid::frame(&other)).is_some());
        let k3_coloop = Matroid::cycle_matroid(
            &MultiGraph::from_edges(&[(0, 0, 1), (1, 1, 2), (2, 0, 2), (3, 2, 3)]).unwrap(),
        )
        .unwrap();
        assert!(matroid_isomorphic(&Matroid::uniform(2, 4), &k3_coloop).is_none());
    }

    #[test]
    fn u24_detection() {
        let w = has_u24_minor(&Matroid::uniform(2, 4)).unwrap().unwrap();
        assert!(is_u24_witness(&Matroid::uniform(2, 4), &w));
        assert!(has_u24_minor(&Matroid::cycle_matroid(&k4()).unwrap()).unwrap().is_none());
    }

    #[test]
    fn graphic_oracle() {
        let m = Matroid::cycle_matroid(&k4()).unwrap();
        let abstract_m = Matroid::from_circuits(m.ground(), m.circuits().to_vec());
        let g = is_graphic_bruteforce(&abstract_m).unwrap().unwrap();
        assert!(matroid_equal(&Matroid::cycle_matroid(&g).unwrap(), &abstract_m).unwrap());
        assert!(is_graphic_bruteforce(&Matroid::uniform(2, 4)).unwrap().is_none());
    }

    #[test]
    fn separation_orders() {
        // Three internally disjoint paths between 0 and 1; only the cycle avoiding the first is balanced.
        let g = MultiGraph::from_edges(&[(0, 0, 2), (1, 2, 1), (2, 0, 3), (3, 3, 1), (4, 0, 1)]).unwrap();
        let w = BiasedGraph::from_balanced_cycles(g, [edges(&[2, 3, 4])]).unwrap();
        let r = matroid_connectivity(&w, edges(&[0, 1]));
        assert_eq!((r.lambda_graph, r.lambda_matroid, r.identity_holds), (2, 1, Some(true)));
    }
}
