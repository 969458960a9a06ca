//! Multigraphs with loops and parallel edges, their cycles, theta
//! subgraphs, separations and path rerouting.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits;
use crate::sets::{EdgeId, EdgeSet, VertexId, VertexSet, EDGE_ID_LIMIT, VERTEX_ID_LIMIT};
use crate::uf::UnionFind;

/// A labeled multigraph. Endpoints are stored as `(min, max)`; `u == v` is a loop.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiGraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
}

/// A cycle: a loop, or a connected 2-regular edge set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    pub edges: EdgeSet,
    /// Vertices in cyclic order, starting from the smallest.
    pub vertices: Vec<VertexId>,
}

impl Cycle {
    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Three internally disjoint paths between two branch vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Theta {
    /// The three cycles, in canonical order.
    pub cycles: [EdgeSet; 3],
    pub paths: [EdgeSet; 3],
    pub branch: (VertexId, VertexId),
}

impl Theta {
    pub fn edges(&self) -> EdgeSet {
        self.paths[0].union(self.paths[1]).union(self.paths[2])
    }
}

/// A partition of the edges into two sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub x: EdgeSet,
    pub y: EdgeSet,
    pub boundary: VertexSet,
    pub order: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Connectivity {
    Finite(usize),
    /// No proper separation exists and no finite convention applies.
    Unbounded,
}

/// A path given by its vertex sequence and the edges between consecutive vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().collect()
    }

    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }
}

/// One rerouting: the subpath of `path` between `from` and `to` is replaced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RerouteStep {
    pub from: VertexId,
    pub to: VertexId,
    pub removed: Vec<EdgeId>,
    pub added: Vec<EdgeId>,
    pub result: Path,
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` with no edges.
    pub fn with_vertices(n: u32) -> Self {
        let mut g = Self::new();
        for i in 0..n {
            g.add_vertex(VertexId(i)).expect("vertex id in range");
        }
        g
    }

    /// Build from `(id, u, v)` triples, declaring endpoints as needed.
    pub fn from_edges(edges: &[(u32, u32, u32)]) -> Result<Self> {
        let mut g = Self::new();
        for &(e, u, v) in edges {
            g.add_vertex(VertexId(u))?;
            g.add_vertex(VertexId(v))?;
            g.add_edge(EdgeId(e), VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) -> Result<()> {
        if v.0 >= VERTEX_ID_LIMIT {
            return Err(Error::IdOutOfRange(v.0));
        }
        self.vertices.insert(v);
        Ok(())
    }

    pub fn add_edge(&mut self, e: EdgeId, u: VertexId, v: VertexId) -> Result<()> {
        if e.0 >= EDGE_ID_LIMIT {
            return Err(Error::IdOutOfRange(e.0));
        }
        for w in [u, v] {
            if !self.vertices.contains(&w) {
                return Err(Error::UnknownVertex(w));
            }
        }
        if self.edges.contains_key(&e) {
            return Err(Error::DuplicateEdge(e));
        }
        self.edges.insert(e, (u.min(v), u.max(v)));
        Ok(())
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.remove(&e)
    }

    /// Removes `v` and every edge incident with it.
    pub fn remove_vertex(&mut self, v: VertexId) {
        self.vertices.remove(&v);
        self.edges.retain(|_, &mut (a, b)| a != v && b != v);
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges.iter().map(|(&e, &(u, v))| (e, u, v))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges.keys().collect()
    }

    pub fn endpoints(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(&e).copied()
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        matches!(self.endpoints(e), Some((u, v)) if u == v)
    }

    pub fn loops(&self) -> EdgeSet {
        self.edges().filter(|&(_, u, v)| u == v).map(|(e, _, _)| e).collect()
    }

    /// The end of `e` other than `v` (or `v` itself for a loop).
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> Option<VertexId> {
        let (a, b) = self.endpoints(e)?;
        if a == v {
            Some(b)
        } else if b == v {
            Some(a)
        } else {
            None
        }
    }

    /// All edges incident with `v`, loops included.
    pub fn incident(&self, v: VertexId) -> EdgeSet {
        self.edges().filter(|&(_, a, b)| a == v || b == v).map(|(e, _, _)| e).collect()
    }

    /// Links (non-loop edges) at `v`.
    pub fn links_at(&self, v: VertexId) -> EdgeSet {
        self.edges().filter(|&(_, a, b)| a != b && (a == v || b == v)).map(|(e, _, _)| e).collect()
    }

    pub fn loops_at(&self, v: VertexId) -> EdgeSet {
        self.edges().filter(|&(_, a, b)| a == v && b == v).map(|(e, _, _)| e).collect()
    }

    /// Edges joining `u` and `v`.
    pub fn edges_between(&self, u: VertexId, v: VertexId) -> EdgeSet {
        let key = (u.min(v), u.max(v));
        self.edges().filter(|&(_, a, b)| (a, b) == key).map(|(e, _, _)| e).collect()
    }

    /// Vertices incident with some edge of `x`.
    pub fn vertices_of(&self, x: EdgeSet) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        for e in x {
            if let Some((u, v)) = self.endpoints(e) {
                s.insert(u);
                s.insert(v);
            }
        }
        s
    }

    /// Edges with both ends in `s`.
    pub fn induced_edges(&self, s: VertexSet) -> EdgeSet {
        self.edges()
            .filter(|&(_, a, b)| s.contains(a) && s.contains(b))
            .map(|(e, _, _)| e)
            .collect()
    }

    /// The subgraph `G[X]`: edges `X` and their endpoints.
    pub fn restrict(&self, x: EdgeSet) -> MultiGraph {
        let mut g = MultiGraph::new();
        for (e, u, v) in self.edges() {
            if x.contains(e) {
                g.vertices.insert(u);
                g.vertices.insert(v);
                g.edges.insert(e, (u, v));
            }
        }
        g
    }

    /// Deletes the edges of `x`, keeping every vertex.
    pub fn delete_edges(&self, x: EdgeSet) -> MultiGraph {
        let mut g = self.clone();
        g.edges.retain(|e, _| !x.contains(*e));
        g
    }

    pub fn without_vertex(&self, v: VertexId) -> MultiGraph {
        let mut g = self.clone();
        g.remove_vertex(v);
        g
    }

    /// Re-homes an existing edge.
    pub fn set_endpoints(&mut self, e: EdgeId, u: VertexId, v: VertexId) -> Result<()> {
        if !self.edges.contains_key(&e) {
            return Err(Error::UnknownEdge(e));
        }
        for w in [u, v] {
            if !self.vertices.contains(&w) {
                return Err(Error::UnknownVertex(w));
            }
        }
        self.edges.insert(e, (u.min(v), u.max(v)));
        Ok(())
    }

    pub fn fresh_vertex(&self) -> VertexId {
        (0..VERTEX_ID_LIMIT).map(VertexId).find(|v| !self.vertices.contains(v)).expect("vertex ids exhausted")
    }

    pub fn fresh_edge(&self) -> EdgeId {
        (0..EDGE_ID_LIMIT).map(EdgeId).find(|e| !self.edges.contains_key(e)).expect("edge ids exhausted")
    }

    /// Components of `G[X]` as (vertices, edges) pairs, ordered by smallest vertex.
    pub fn components_of(&self, x: EdgeSet) -> Vec<(VertexSet, EdgeSet)> {
        let mut uf = UnionFind::new(VERTEX_ID_LIMIT as usize);
        let verts = self.vertices_of(x);
        for e in x {
            let (u, v) = self.endpoints(e).expect("edge of graph");
            uf.union(u.0 as usize, v.0 as usize);
        }
        let mut comps: BTreeMap<usize, (VertexSet, EdgeSet)> = BTreeMap::new();
        for v in verts.iter() {
            comps.entry(uf.find(v.0 as usize)).or_default().0.insert(v);
        }
        for e in x {
            let (u, _) = self.endpoints(e).unwrap();
            comps.get_mut(&uf.find(u.0 as usize)).unwrap().1.insert(e);
        }
        comps.into_values().collect()
    }

    /// Vertex components of the whole graph, isolated vertices included.
    pub fn vertex_components(&self) -> Vec<VertexSet> {
        let mut uf = UnionFind::new(VERTEX_ID_LIMIT as usize);
        for (_, u, v) in self.edges() {
            uf.union(u.0 as usize, v.0 as usize);
        }
        let mut comps: BTreeMap<usize, VertexSet> = BTreeMap::new();
        for v in self.vertices() {
            comps.entry(uf.find(v.0 as usize)).or_default().insert(v);
        }
        comps.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_components().len() <= 1
    }

    /// The cycle formed by `x`, if `x` is a loop or a connected 2-regular set.
    pub fn as_cycle(&self, x: EdgeSet) -> Option<Cycle> {
        let first = x.first()?;
        let (a, b) = self.endpoints(first)?;
        if a == b {
            return (x.len() == 1).then(|| Cycle { edges: x, vertices: vec![a] });
        }
        let verts = self.vertices_of(x);
        if verts.len() != x.len() {
            return None;
        }
        let mut deg: BTreeMap<VertexId, usize> = BTreeMap::new();
        for e in x {
            let (u, v) = self.endpoints(e)?;
            if u == v {
                return None;
            }
            *deg.entry(u).or_default() += 1;
            *deg.entry(v).or_default() += 1;
        }
        if deg.values().any(|&d| d != 2) {
            return None;
        }
        // Walk around from the smallest vertex.
        let start = verts.iter().next().unwrap();
        let mut seq = vec![start];
        let mut used = EdgeSet::EMPTY;
        let mut cur = start;
        loop {
            let next = (x.difference(used)).iter().find(|&e| {
                let (u, v) = self.endpoints(e).unwrap();
                u == cur || v == cur
            });
            let Some(e) = next else { break };
            used.insert(e);
            cur = self.other_end(e, cur).unwrap();
            if cur == start {
                break;
            }
            seq.push(cur);
        }
        (used == x).then_some(Cycle { edges: x, vertices: seq })
    }

    /// Every cycle of the graph, each once, in canonical edge-set order.
    pub fn all_cycles(&self) -> Result<Vec<Cycle>> {
        self.all_cycles_capped(limits::max_cycles())
    }

    pub fn all_cycles_capped(&self, cap: usize) -> Result<Vec<Cycle>> {
        let mut out = Vec::new();
        let overflow = || Error::CapExceeded { what: "cycle count", limit: cap };
        for (e, u, v) in self.edges() {
            if u == v {
                out.push(Cycle { edges: EdgeSet::singleton(e), vertices: vec![u] });
                if out.len() > cap {
                    return Err(overflow());
                }
            }
        }
        let mut adj: Vec<Vec<(EdgeId, VertexId)>> = vec![Vec::new(); VERTEX_ID_LIMIT as usize];
        for (e, u, v) in self.edges() {
            if u != v {
                adj[u.0 as usize].push((e, v));
                adj[v.0 as usize].push((e, u));
            }
        }
        struct Dfs<'a> {
            adj: &'a [Vec<(EdgeId, VertexId)>],
            start: VertexId,
            path_v: Vec<VertexId>,
            path_e: Vec<EdgeId>,
            on_path: VertexSet,
            out: &'a mut Vec<Cycle>,
            cap: usize,
        }
        impl Dfs<'_> {
            fn go(&mut self, x: VertexId) -> bool {
                for &(e, y) in &self.adj[x.0 as usize] {
                    if self.path_e.last() == Some(&e) {
                        continue;
                    }
                    if y == self.start {
                        if !self.path_e.is_empty() && self.path_e[0] < e {
                            let edges: EdgeSet = self.path_e.iter().copied().chain([e]).collect();
                            self.out.push(Cycle { edges, vertices: self.path_v.clone() });
                            if self.out.len() > self.cap {
                                return false;
                            }
                        }
                    } else if y > self.start && !self.on_path.contains(y) {
                        self.path_v.push(y);
                        self.path_e.push(e);
                        self.on_path.insert(y);
                        let ok = self.go(y);
                        self.on_path.remove(y);
                        self.path_e.pop();
                        self.path_v.pop();
                        if !ok {
                            return false;
                        }
                    }
                }
                true
            }
        }
        for s in self.vertices() {
            let mut dfs = Dfs {
                adj: &adj,
                start: s,
                path_v: vec![s],
                path_e: Vec::new(),
                on_path: VertexSet::singleton(s),
                out: &mut out,
                cap,
            };
            if !dfs.go(s) {
                return Err(overflow());
            }
        }
        out.sort_by_key(|c| c.edges);
        Ok(out)
    }

    /// Every theta subgraph, each reported once.
    pub fn theta_subgraphs(&self) -> Result<Vec<Theta>> {
        Ok(self.thetas_from_cycles(&self.all_cycles()?))
    }

    /// Thetas assembled from a precomputed cycle list.
    pub fn thetas_from_cycles(&self, cycles: &[Cycle]) -> Vec<Theta> {
        let links: Vec<(&Cycle, VertexSet)> =
            cycles.iter().filter(|c| c.len() >= 2).map(|c| (c, c.vertex_set())).collect();
        let mut out = Vec::new();
        for i in 0..links.len() {
            for j in i + 1..links.len() {
                let (c1, v1) = links[i];
                let (c2, v2) = links[j];
                let common = c1.edges.intersection(c2.edges);
                if common.is_empty() {
                    continue;
                }
                let vc = self.vertices_of(common);
                if vc.len() != common.len() + 1 || v1.intersection(v2) != vc {
                    continue;
                }
                let c3 = c1.edges.symmetric_difference(c2.edges);
                if c3 <= c2.edges {
                    continue;
                }
                // Branch vertices are the degree-one vertices of the common path.
                let mut ends = vc.iter().filter(|&w| {
                    common.iter().filter(|&e| self.other_end(e, w).is_some()).count() == 1
                });
                let a = ends.next().expect("path has two ends");
                let b = ends.next().expect("path has two ends");
                let mut paths = [common, c1.edges.difference(common), c2.edges.difference(common)];
                paths.sort();
                out.push(Theta { cycles: [c1.edges, c2.edges, c3], paths, branch: (a, b) });
            }
        }
        out.sort_by_key(|t| t.cycles);
        out
    }

    /// The separation induced by the edge partition `(x, E - x)`.
    pub fn separation(&self, x: EdgeSet) -> Separation {
        let y = self.edge_set().difference(x);
        let boundary = self.vertices_of(x).intersection(self.vertices_of(y));
        Separation { x, y, boundary, order: boundary.len() }
    }

    /// Smallest vertex set `S` whose deletion leaves at least two vertex
    /// components. This is exactly the least order of a proper separation.
    pub fn min_proper_separator(&self) -> Option<VertexSet> {
        let verts: Vec<VertexId> = self.vertices().collect();
        let n = verts.len();
        if n < 2 {
            return None;
        }
        let mut masks: Vec<u64> = (0..1u64 << n).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        for m in masks {
            if n - (m.count_ones() as usize) < 2 {
                continue;
            }
            let s: VertexSet = (0..n).filter(|i| m >> i & 1 == 1).map(|i| verts[i]).collect();
            let mut g = self.clone();
            for v in s.iter() {
                g.remove_vertex(v);
            }
            if g.vertex_components().len() >= 2 {
                return Some(s);
            }
        }
        None
    }

    /// Least order of a proper separation.
    ///
    /// When no proper separation exists the underlying simple graph is
    /// complete; graphs with at least three vertices then report `|V| - 1`,
    /// smaller ones report [`Connectivity::Unbounded`].
    pub fn connectivity(&self) -> Connectivity {
        if let Some(s) = self.min_proper_separator() {
            return Connectivity::Finite(s.len());
        }
        if self.vertex_count() == 1 {
            eprintln!("warning: connectivity of a single-vertex graph is not defined");
        }
        if self.vertex_count() >= 3 {
            Connectivity::Finite(self.vertex_count() - 1)
        } else {
            Connectivity::Unbounded
        }
    }

    /// No proper separation of order less than `k`.
    pub fn is_k_connected(&self, k: usize) -> bool {
        match self.min_proper_separator() {
            Some(s) => s.len() >= k,
            None => true,
        }
    }

    /// Checks that `p` is a path of this graph and returns it.
    pub fn validate_path(&self, p: &Path) -> Result<()> {
        if p.vertices.is_empty() || p.vertices.len() != p.edges.len() + 1 {
            return Err(Error::NotAPath("vertex and edge counts disagree".into()));
        }
        let distinct: BTreeSet<_> = p.vertices.iter().collect();
        if distinct.len() != p.vertices.len() {
            return Err(Error::NotAPath("repeated vertex".into()));
        }
        for (i, &e) in p.edges.iter().enumerate() {
            let (a, b) = self.endpoints(e).ok_or(Error::UnknownEdge(e))?;
            let (x, y) = (p.vertices[i], p.vertices[i + 1]);
            if (a, b) != (x.min(y), x.max(y)) {
                return Err(Error::NotAPath(format!("edge {e} does not join {x} and {y}")));
            }
        }
        Ok(())
    }

    /// Path through the given vertices, choosing the smallest edge between consecutive pairs.
    pub fn path_through(&self, vertices: &[VertexId]) -> Result<Path> {
        let mut edges = Vec::new();
        for w in vertices.windows(2) {
            let e = self
                .edges_between(w[0], w[1])
                .first()
                .ok_or_else(|| Error::NotAPath(format!("{} and {} are not adjacent", w[0], w[1])))?;
            if w[0] == w[1] {
                return Err(Error::NotAPath("loop in path".into()));
            }
            edges.push(e);
        }
        let p = Path { vertices: vertices.to_vec(), edges };
        self.validate_path(&p)?;
        Ok(p)
    }

    /// Transforms `p` into `q` by single reroutings, each extending the
    /// common initial segment.
    pub fn reroute_sequence(&self, p: &Path, q: &Path) -> Result<Vec<RerouteStep>> {
        self.validate_path(p)?;
        self.validate_path(q)?;
        if p.start() != q.start() || p.end() != q.end() {
            return Err(Error::EndpointMismatch);
        }
        let mut cur = p.clone();
        let mut steps = Vec::new();
        while cur != *q {
            let mut k = 0;
            while k < cur.edges.len() && k < q.edges.len() && cur.edges[k] == q.edges[k] {
                k += 1;
            }
            // q leaves the current path at q.vertices[k]; find where it returns.
            let j = (k + 1..q.vertices.len())
                .find(|&j| cur.vertices.contains(&q.vertices[j]))
                .expect("paths share their last vertex");
            let y = q.vertices[j];
            let i = cur.vertices.iter().position(|&w| w == y).unwrap();
            let removed = cur.edges[k..i].to_vec();
            let added = q.edges[k..j].to_vec();
            let mut vertices = q.vertices[..=j].to_vec();
            vertices.extend_from_slice(&cur.vertices[i + 1..]);
            let mut edges = q.edges[..j].to_vec();
            edges.extend_from_slice(&cur.edges[i..]);
            let next = Path { vertices, edges };
            steps.push(RerouteStep { from: q.vertices[k], to: y, removed, added, result: next.clone() });
            cur = next;
        }
        Ok(steps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    fn k4() -> MultiGraph {
        MultiGraph::from_edges(&[(0, 0, 1), (1, 0, 2), (2, 0, 3), (3, 1, 2), (4, 1, 3), (5, 2, 3)]).unwrap()
    }

    fn brute_cycles(g: &MultiGraph) -> Vec<EdgeSet> {
        let ids: Vec<EdgeId> = g.edge_set().ids();
        let mut out = Vec::new();
        for m in 1u32..1 << ids.len() {
            let x: EdgeSet = (0..ids.len()).filter(|i| m >> i & 1 == 1).map(|i| ids[i]).collect();
            if g.as_cycle(x).is_some() {
                out.push(x);
            }
        }
        out.sort();
        out
    }

    // All pairs of internally disjoint path triples, found from vertex pairs.
    fn brute_theta_count(g: &MultiGraph) -> usize {
        let cycles = brute_cycles(g);
        let mut found = BTreeSet::new();
        for &a in &cycles {
            for &b in &cycles {
                let c = a.symmetric_difference(b);
                if a == b || a.is_disjoint(b) || g.as_cycle(c).is_none() {
                    continue;
                }
                let union = a.union(b);
                // A theta has |E| = |V| + 1 and exactly two vertices of degree three.
                let v = g.vertices_of(union);
                let deg3 = v
                    .iter()
                    .filter(|&w| union.iter().filter(|&e| g.other_end(e, w).is_some()).count() == 3)
                    .count();
                if union.len() == v.len() + 1 && deg3 == 2 {
                    found.insert(union);
                }
            }
        }
        found.len()
    }

    #[test]
    fn small_cycle_counts() {
        let tri = MultiGraph::from_edges(&[(0, 0, 1), (1, 1, 2), (2, 0, 2)]).unwrap();
        assert_eq!(tri.all_cycles().unwrap().len(), 1);
        let par3 = MultiGraph::from_edges(&[(0, 0, 1), (1, 0, 1), (2, 0, 1)]).unwrap();
        assert_eq!(par3.all_cycles().unwrap().len(), 3);
        assert_eq!(k4().all_cycles().unwrap().len(), 7);
        assert_eq!(brute_cycles(&k4()).len(), 7);
    }

    #[test]
    fn cycles_match_brute_force_with_loops_and_parallels() {
        let g = MultiGraph::from_edges(&[
            (0, 0, 1),
            (1, 0, 1),
            (2, 1, 2),
            (3, 2, 3),
            (4, 3, 0),
            (5, 0, 2),
            (6, 2, 2),
            (7, 1, 3),
        ])
        .unwrap();
        let fast: Vec<EdgeSet> = g.all_cycles().unwrap().into_iter().map(|c| c.edges).collect();
        assert_eq!(fast, brute_cycles(&g));
    }

    #[test]
    fn cycle_cap_is_enforced() {
        assert!(matches!(k4().all_cycles_capped(3), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn theta_counts() {
        let par3 = MultiGraph::from_edges(&[(0, 0, 1), (1, 0, 1), (2, 0, 1)]).unwrap();
        let t = par3.theta_subgraphs().unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].branch, (VertexId(0), VertexId(1)));
        let tri = MultiGraph::from_edges(&[(0, 0, 1), (1, 1, 2), (2, 0, 2)]).unwrap();
        assert!(tri.theta_subgraphs().unwrap().is_empty());
        assert_eq!(brute_theta_count(&k4()), 6);
        assert_eq!(k4().theta_subgraphs().unwrap().len(), 6);
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(k4().connectivity(), Connectivity::Finite(3));
        let p3 = MultiGraph::from_edges(&[(0, 0, 1), (1, 1, 2)]).unwrap();
        assert_eq!(p3.connectivity(), Connectivity::Finite(1));
        let par4 = MultiGraph::from_edges(&[(0, 0, 1), (1, 0, 1), (2, 0, 1), (3, 0, 1)]).unwrap();
        assert_eq!(par4.connectivity(), Connectivity::Unbounded);
        assert!(par4.is_k_connected(5));
    }

    #[test]
    fn reroute_examples() {
        // Theta on 0..3 with a chord: paths 0-1-3 and 0-2-3, chord 1-2.
        let g = MultiGraph::from_edges(&[(0, 0, 1), (1, 1, 3), (2, 0, 2), (3, 2, 3), (4, 1, 2), (5, 0, 3)])
            .unwrap();
        let p = g.path_through(&[VertexId(0), VertexId(1), VertexId(3)]).unwrap();
        assert!(g.reroute_sequence(&p, &p).unwrap().is_empty());
        let q = g.path_through(&[VertexId(0), VertexId(2), VertexId(3)]).unwrap();
        assert_eq!(g.reroute_sequence(&p, &q).unwrap().len(), 1);
        let r = g.path_through(&[VertexId(0), VertexId(2), VertexId(1), VertexId(3)]).unwrap();
        let steps = g.reroute_sequence(&q, &r).unwrap();
        assert_eq!(steps.last().unwrap().result, r);
        let bad = g.path_through(&[VertexId(0), VertexId(1)]).unwrap();
        assert_eq!(g.reroute_sequence(&p, &bad), Err(Error::EndpointMismatch));
    }
}
