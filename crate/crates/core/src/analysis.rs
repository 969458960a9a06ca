//! Committed vertices, 2-separations of the frame matroid, lobes, and the
//! reduction/enlargement pair built on them.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::bias::BiasedGraph;
use crate::error::{Error, Result};
use crate::frame::{has_u24_minor_capped, is_graphic_bruteforce, is_graphic_uncapped, matroid_equal, Matroid, U24Witness};
use crate::limits;
use crate::multigraph::MultiGraph;
use crate::sets::{EdgeId, EdgeSet, VertexId, VertexSet};
use crate::transforms::split;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommitRoute {
    ShortcutTheta,
    BruteForceU24,
    GraphicOracle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommitWitness {
    /// A contrabalanced theta (as its three paths) and a shortcut path.
    Shortcut { theta: [EdgeSet; 3], path: EdgeSet },
    Minor(U24Witness),
    /// The connected nongraphic hyperplane `E - δ(x)⁺`.
    Nongraphic { hyperplane: EdgeSet },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommitReport {
    pub vertex: VertexId,
    pub committed: bool,
    pub route: CommitRoute,
    pub witness: Option<CommitWitness>,
}

/// 3-connected with a balancing vertex.
pub fn nonbinary_test_applies(w: &BiasedGraph) -> bool {
    w.graph().is_k_connected(3) && !w.balancing_vertices().is_empty()
}

/// Whether `x` is committed. Uses the nonbinary test when it applies and
/// the definition (via the graphic oracle) otherwise.
pub fn committed(w: &BiasedGraph, x: VertexId) -> Result<CommitReport> {
    if !w.graph().has_vertex(x) {
        return Err(Error::UnknownVertex(x));
    }
    if !nonbinary_test_applies(w) {
        return committed_by_definition(w, x);
    }
    let rest = w.delete_vertex(x);
    if let Some((theta, path)) = find_shortcut(&rest) {
        return Ok(CommitReport {
            vertex: x,
            committed: true,
            route: CommitRoute::ShortcutTheta,
            witness: Some(CommitWitness::Shortcut { theta, path }),
        });
    }
    let minor = has_u24_minor_capped(&Matroid::frame(&rest), usize::MAX)?;
    Ok(CommitReport {
        vertex: x,
        committed: minor.is_some(),
        route: CommitRoute::BruteForceU24,
        witness: minor.map(CommitWitness::Minor),
    })
}

/// `E - δ(x)⁺` is a connected nongraphic hyperplane.
pub fn committed_by_definition(w: &BiasedGraph, x: VertexId) -> Result<CommitReport> {
    let m = Matroid::frame(w);
    let h = w.edge_set().difference(w.graph().incident(x));
    let mut committed = false;
    if m.is_hyperplane(h) {
        let restricted = m.restrict(h);
        committed = restricted.is_connected() && is_graphic_bruteforce(&restricted)?.is_none();
    }
    Ok(CommitReport {
        vertex: x,
        committed,
        route: CommitRoute::GraphicOracle,
        witness: committed.then_some(CommitWitness::Nongraphic { hyperplane: h }),
    })
}

/// Whether `F(ω - x)` has a `U_{2,4}` minor.
pub fn committed_by_nonbinary(w: &BiasedGraph, x: VertexId) -> Result<bool> {
    Ok(has_u24_minor_capped(&Matroid::frame(&w.delete_vertex(x)), usize::MAX)?.is_some())
}

/// Reports for every vertex.
pub fn committed_all(w: &BiasedGraph) -> Result<BTreeMap<VertexId, CommitReport>> {
    w.graph().vertices().map(|x| committed(w, x).map(|r| (x, r))).collect()
}

/// A contrabalanced theta together with a path joining interior vertices
/// of two of its paths and otherwise avoiding it.
pub fn find_shortcut(w: &BiasedGraph) -> Option<([EdgeSet; 3], EdgeSet)> {
    let g = w.graph();
    for t in g.thetas_from_cycles(w.cycles()) {
        if t.cycles.iter().any(|c| w.balanced_cycles().contains(c)) {
            continue;
        }
        let branch = VertexSet::singleton(t.branch.0).union(VertexSet::singleton(t.branch.1));
        let tv = g.vertices_of(t.edges());
        let inner: Vec<VertexSet> = t.paths.iter().map(|p| g.vertices_of(*p).difference(branch)).collect();
        for i in 0..3 {
            let targets = (0..3).filter(|&j| j != i).fold(VertexSet::EMPTY, |a, j| a.union(inner[j]));
            for s in inner[i].iter() {
                let mut prev: BTreeMap<VertexId, (EdgeId, VertexId)> = BTreeMap::new();
                let mut seen = VertexSet::singleton(s);
                let mut queue = VecDeque::from([s]);
                while let Some(a) = queue.pop_front() {
                    for e in g.links_at(a).difference(t.edges()) {
                        let b = g.other_end(e, a).unwrap();
                        if seen.contains(b) {
                            continue;
                        }
                        if targets.contains(b) {
                            let mut path = EdgeSet::singleton(e);
                            let mut cur = a;
                            while cur != s {
                                let (f, p) = prev[&cur];
                                path.insert(f);
                                cur = p;
                            }
                            return Some((t.paths, path));
                        }
                        if !tv.contains(b) {
                            seen.insert(b);
                            prev.insert(b, (e, a));
                            queue.push_back(b);
                        }
                    }
                }
            }
        }
    }
    None
}

/// The shape a 2-separation of the frame matroid takes in a 3-connected biased graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparationForm {
    /// Both sides balanced and connected.
    BalancedPair,
    /// Two unbalanced parts meeting the boundary once each.
    TwoUnbalancedSingles,
    /// One unbalanced part meeting the boundary twice.
    UnbalancedDouble,
    /// A balanced part on three boundary vertices and an unbalanced part on one.
    BalancedTripleUnbalancedSingle,
    /// Two balanced parts on three boundary vertices each.
    TwoBalancedTriples,
    /// One balanced part on four boundary vertices.
    BalancedQuadruple,
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedSeparation {
    pub x: EdgeSet,
    pub y: EdgeSet,
    pub boundary: VertexSet,
    pub form: SeparationForm,
}

/// Every 2-separation `(X, Y)` of `F(ω)` (both sides of size at least two),
/// each reported once with the side holding the smallest edge as `X`.
pub fn classify_2separations(w: &BiasedGraph) -> Result<Vec<ClassifiedSeparation>> {
    let ids = w.edge_set().ids();
    if ids.len() > limits::max_ground() {
        return Err(Error::CapExceeded { what: "ground set for separation scan", limit: limits::max_ground() });
    }
    let g = w.graph();
    let total = w.rank(w.edge_set());
    let mut out = Vec::new();
    if ids.len() < 4 {
        return Ok(out);
    }
    for mask in 0u64..1 << (ids.len() - 1) {
        let x: EdgeSet = std::iter::once(ids[0])
            .chain((1..ids.len()).filter(|i| mask >> (i - 1) & 1 == 1).map(|i| ids[i]))
            .collect();
        let y = w.edge_set().difference(x);
        if x.len() < 2 || y.len() < 2 || w.rank(x) + w.rank(y) + 1 != total + 2 {
            continue;
        }
        let boundary = g.vertices_of(x).intersection(g.vertices_of(y));
        let form = classify_parts(w, x, y, boundary);
        out.push(ClassifiedSeparation { x, y, boundary, form });
    }
    Ok(out)
}

/// Whether `F(ω)` is 3-connected. Parallel pairs rule it out at once; a
/// 3-connected graph with a balancing vertex and a `U_{2,4}` minor has a
/// 3-connected frame matroid once those are gone. Otherwise every
/// separation is scanned.
pub fn frame_is_3_connected(w: &BiasedGraph) -> Result<bool> {
    let g = w.graph();
    let m = Matroid::frame(w);
    if m.len() < 4 {
        return Ok(m.is_connected());
    }
    let two_loops = g.vertices().any(|v| g.loops_at(v).intersection(w.unbalanced_loops()).len() > 1);
    let balanced_digon = w.balanced_cycles().iter().any(|c| c.len() <= 2);
    if two_loops || balanced_digon || !m.is_connected() {
        return Ok(false);
    }
    if g.is_k_connected(3)
        && !w.balancing_vertices().is_empty()
        && has_u24_minor_capped(&m, usize::MAX)?.is_some()
    {
        return Ok(true);
    }
    Ok(classify_2separations(w)?.is_empty())
}

fn classify_parts(w: &BiasedGraph, x: EdgeSet, y: EdgeSet, s: VertexSet) -> SeparationForm {
    let g = w.graph();
    let (cx, cy) = (g.components_of(x), g.components_of(y));
    if cx.len() == 1 && cy.len() == 1 && w.is_balanced_set(x) && w.is_balanced_set(y) {
        return SeparationForm::BalancedPair;
    }
    // (balanced, boundary vertices) for every part that is not neutral.
    let mut parts: Vec<(bool, usize)> = Vec::new();
    for (verts, edges) in cx.into_iter().chain(cy) {
        let bal = w.is_balanced_set(edges);
        let t = verts.intersection(s).len();
        if !(bal && t == 2) {
            parts.push((bal, t));
        }
    }
    parts.sort();
    match parts.as_slice() {
        [(false, 1), (false, 1)] => SeparationForm::TwoUnbalancedSingles,
        [(false, 2)] => SeparationForm::UnbalancedDouble,
        [(false, 1), (true, 3)] => SeparationForm::BalancedTripleUnbalancedSingle,
        [(true, 3), (true, 3)] => SeparationForm::TwoBalancedTriples,
        [(true, 4)] => SeparationForm::BalancedQuadruple,
        _ => SeparationForm::Unclassified,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LobeKind {
    /// Balanced, meeting the rest in three vertices.
    Balanced,
    /// A pinch meeting the rest in two vertices, one of which (`vertex`) is its balancing vertex.
    Pinch { vertex: VertexId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lobe {
    pub edges: EdgeSet,
    pub boundary: VertexSet,
    pub interior: VertexSet,
    pub kind: LobeKind,
}

/// How a lobe was replaced by the 3-circuit `{a, b, c}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replacement {
    /// `a`, `b`, `c`: `a` joins terminals 0 and 1, `b` joins 1 and 2, `c` joins 2 and 0.
    pub triangle: [EdgeId; 3],
    /// Terminals `v_A`, `v_B`, `v_C`, as vertices of `split_graph`.
    pub terminals: [VertexId; 3],
    /// The lobe itself if balanced, otherwise the graph obtained by splitting it.
    pub split_graph: MultiGraph,
    /// Paths of `split_graph` standing in for `a`, `b` and `c`.
    pub paths: [EdgeSet; 3],
    /// Whether the three paths together form one cycle.
    pub paths_form_cycle: bool,
}

/// The reduced biased graph as a labeled minor of the original.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionMinor {
    pub contract: EdgeSet,
    pub delete: EdgeSet,
    /// Triangle edge → the original edge it stands for.
    pub rename: BTreeMap<EdgeId, EdgeId>,
}

#[derive(Clone, Debug)]
pub struct ReductionPlan {
    pub omega: BiasedGraph,
    pub balancing_vertex: VertexId,
    pub lobes: Vec<Lobe>,
    pub replacements: Vec<Replacement>,
    pub reduced: BiasedGraph,
    /// Present when every lobe's paths form a cycle.
    pub minor: Option<ReductionMinor>,
}

/// Whether `F(ω)` is nongraphic, trying the cheap nonbinary certificate first.
pub fn is_nongraphic(m: &Matroid) -> Result<bool> {
    if has_u24_minor_capped(m, usize::MAX)?.is_some() {
        return Ok(true);
    }
    Ok(is_graphic_uncapped(m)?.is_none())
}

fn vertex_subsets(vs: &[VertexId], k: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    fn rec(vs: &[VertexId], k: usize, start: usize, cur: VertexSet, out: &mut Vec<VertexSet>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..vs.len() {
            let mut next = cur;
            next.insert(vs[i]);
            rec(vs, k - 1, i + 1, next, out);
        }
    }
    rec(vs, k, 0, VertexSet::EMPTY, &mut out);
    out
}

/// Every lobe of `ω` given the committed vertices, in selection order.
pub fn lobe_candidates(w: &BiasedGraph, committed: &VertexSet, u: VertexId) -> Vec<Lobe> {
    let g = w.graph();
    let verts: Vec<VertexId> = g.vertices().collect();
    let all = w.edge_set();
    let mut out = Vec::new();
    for k in [2usize, 3] {
        for s in vertex_subsets(&verts, k) {
            let mut rest = g.clone();
            for v in s.iter() {
                rest.remove_vertex(v);
            }
            let comps: Vec<(VertexSet, EdgeSet)> = rest
                .vertex_components()
                .into_iter()
                .map(|c| (c, all.iter().filter(|&e| {
                    let (a, b) = g.endpoints(e).unwrap();
                    c.contains(a) || c.contains(b)
                }).collect()))
                .collect();
            let s_edges = g.induced_edges(s).ids();
            for cmask in 1u32..1 << comps.len() {
                let (mut interior, mut base) = (VertexSet::EMPTY, EdgeSet::EMPTY);
                for (i, (cv, ce)) in comps.iter().enumerate() {
                    if cmask >> i & 1 == 1 {
                        interior = interior.union(*cv);
                        base = base.union(*ce);
                    }
                }
                if !interior.is_subset(*committed) {
                    continue;
                }
                for smask in 0u32..1 << s_edges.len() {
                    let x: EdgeSet = base.union(
                        (0..s_edges.len()).filter(|i| smask >> i & 1 == 1).map(|i| s_edges[i]).collect(),
                    );
                    let y = all.difference(x);
                    if y.is_empty() || g.vertices_of(x).intersection(g.vertices_of(y)) != s {
                        continue;
                    }
                    let h = w.restrict(x);
                    let kind = if k == 3 {
                        if !h.is_balanced() {
                            continue;
                        }
                        LobeKind::Balanced
                    } else {
                        if h.is_balanced() || h.is_signed().is_none() {
                            continue;
                        }
                        let bal = h.balancing_vertices();
                        let mut choices: Vec<VertexId> = s.iter().filter(|&v| bal.contains(v)).collect();
                        choices.sort_by_key(|&v| (v != u, v));
                        match choices.into_iter().find(|&v| split(&h, v).is_ok()) {
                            Some(v) => LobeKind::Pinch { vertex: v },
                            None => continue,
                        }
                    };
                    out.push(Lobe { edges: x, boundary: s, interior, kind });
                }
            }
        }
    }
    out.sort_by(|a, b| {
        (a.boundary.len(), Reverse(a.edges.len()), a.boundary.iter().collect::<Vec<_>>(), a.edges)
            .cmp(&(b.boundary.len(), Reverse(b.edges.len()), b.boundary.iter().collect::<Vec<_>>(), b.edges))
    });
    out
}

/// Greedy maximal family of pairwise edge-disjoint lobes.
pub fn select_lobes(candidates: Vec<Lobe>) -> Vec<Lobe> {
    let mut used = EdgeSet::EMPTY;
    let mut out = Vec::new();
    for l in candidates {
        if l.edges.is_disjoint(used) {
            used = used.union(l.edges);
            out.push(l);
        }
    }
    out
}

/// Finds a maximal lobe family and the reduced biased graph.
pub fn find_lobes(w: &BiasedGraph) -> Result<ReductionPlan> {
    if !w.graph().is_k_connected(3) {
        return Err(Error::Precondition("biased graph is not 3-connected".into()));
    }
    let (_, u) = w.almost_balanced_witness().ok_or(Error::NotAlmostBalanced)?;
    if !is_nongraphic(&Matroid::frame(w))? {
        return Err(Error::Precondition("frame matroid is graphic".into()));
    }
    let reports = committed_all(w)?;
    let committed: VertexSet = reports.values().filter(|r| r.committed).map(|r| r.vertex).collect();
    let lobes = select_lobes(lobe_candidates(w, &committed, u));
    reduce(w, u, lobes)
}

/// Shortest path from `a` to `b` in `g` avoiding `avoid`.
fn path_avoiding(g: &MultiGraph, a: VertexId, b: VertexId, avoid: VertexId) -> Option<EdgeSet> {
    let mut prev: BTreeMap<VertexId, (EdgeId, VertexId)> = BTreeMap::new();
    let mut seen = VertexSet::singleton(a);
    seen.insert(avoid);
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b {
            let mut p = EdgeSet::EMPTY;
            let mut cur = b;
            while cur != a {
                let (e, q) = prev[&cur];
                p.insert(e);
                cur = q;
            }
            return Some(p);
        }
        for e in g.links_at(x) {
            let y = g.other_end(e, x).unwrap();
            if !seen.contains(y) {
                seen.insert(y);
                prev.insert(y, (e, x));
                queue.push_back(y);
            }
        }
    }
    None
}

/// Paths standing in for the triangle edges; a cycle through all three
/// terminals is preferred.
fn lobe_paths(h: &MultiGraph, t: [VertexId; 3]) -> Result<([EdgeSet; 3], bool)> {
    let cycles = h.all_cycles()?;
    let through: Option<_> = cycles.iter().find(|c| t.iter().all(|v| c.vertices.contains(v)));
    if let Some(c) = through {
        let mut paths = [EdgeSet::EMPTY; 3];
        for i in 0..3 {
            // The arc of the cycle from t[i] to t[i+1] that avoids the third terminal.
            let other = t[(i + 2) % 3];
            let sub = h.restrict(c.edges);
            paths[i] = path_avoiding(&sub, t[i], t[(i + 1) % 3], other).expect("arc of a cycle");
        }
        return Ok((paths, true));
    }
    let mut paths = [EdgeSet::EMPTY; 3];
    for i in 0..3 {
        paths[i] = path_avoiding(h, t[i], t[(i + 1) % 3], t[(i + 2) % 3])
            .ok_or_else(|| Error::Precondition("lobe terminals are not linked".into()))?;
    }
    Ok((paths, false))
}

/// Replaces each lobe by a balanced or pinched triangle on fresh edge ids.
pub fn reduce(w: &BiasedGraph, u: VertexId, lobes: Vec<Lobe>) -> Result<ReductionPlan> {
    let g = w.graph();
    let mut next = w.edge_set().last().map_or(0, |e| e.0 + 1);
    let mut re = g.clone();
    let mut replacements = Vec::new();
    for lobe in &lobes {
        for e in lobe.edges {
            re.remove_edge(e);
        }
        for v in lobe.interior.iter() {
            re.remove_vertex(v);
        }
        let h = w.restrict(lobe.edges);
        let (split_graph, terminals) = match lobe.kind {
            LobeKind::Balanced => {
                let s: Vec<VertexId> = lobe.boundary.iter().collect();
                (h.graph().clone(), [s[0], s[1], s[2]])
            }
            LobeKind::Pinch { vertex } => {
                let other = lobe.boundary.iter().find(|&v| v != vertex).unwrap();
                let hs = split(&h, vertex)?;
                let u2 = hs.vertex_set().difference(h.graph().vertex_set()).iter().next();
                let u2 = u2.ok_or_else(|| Error::Precondition("split produced no new vertex".into()))?;
                (hs, [vertex, u2, other])
            }
        };
        let (paths, paths_form_cycle) = lobe_paths(&split_graph, terminals)?;
        if next + 3 > crate::sets::EDGE_ID_LIMIT {
            return Err(Error::IdOutOfRange(next + 3));
        }
        let triangle = [EdgeId(next), EdgeId(next + 1), EdgeId(next + 2)];
        next += 3;
        match lobe.kind {
            LobeKind::Balanced => {
                re.add_edge(triangle[0], terminals[0], terminals[1])?;
                re.add_edge(triangle[1], terminals[1], terminals[2])?;
                re.add_edge(triangle[2], terminals[2], terminals[0])?;
            }
            LobeKind::Pinch { vertex } => {
                re.add_edge(triangle[0], vertex, vertex)?;
                re.add_edge(triangle[1], vertex, terminals[2])?;
                re.add_edge(triangle[2], terminals[2], vertex)?;
            }
        }
        replacements.push(Replacement { triangle, terminals, split_graph, paths, paths_form_cycle });
    }
    let lookup = |c: EdgeSet| -> bool {
        let mut c = c;
        for (lobe, r) in lobes.iter().zip(&replacements) {
            let tri: EdgeSet = r.triangle.iter().collect();
            let used = c.intersection(tri);
            match (used.len(), lobe.kind) {
                (0, _) => {}
                (3, _) => return true,
                (2, LobeKind::Pinch { .. }) => return false,
                (1, LobeKind::Pinch { .. }) if used.contains(r.triangle[0]) => return false,
                (n, _) => {
                    // Swap two triangle edges for the third, then substitute a path.
                    let single = if n == 2 { tri.difference(used).first().unwrap() } else { used.first().unwrap() };
                    let i = r.triangle.iter().position(|&e| e == single).unwrap();
                    c = c.difference(tri).union(r.paths[i]);
                }
            }
        }
        w.balanced_cycles().contains(&c)
    };
    let reduced = BiasedGraph::from_predicate(re, lookup)?;
    let minor = if replacements.iter().all(|r| r.paths_form_cycle) {
        let mut contract = EdgeSet::EMPTY;
        let mut delete = EdgeSet::EMPTY;
        let mut rename = BTreeMap::new();
        for (lobe, r) in lobes.iter().zip(&replacements) {
            let used = r.paths[0].union(r.paths[1]).union(r.paths[2]);
            delete = delete.union(lobe.edges.difference(used));
            for (i, p) in r.paths.iter().enumerate() {
                let rep = p.first().unwrap();
                rename.insert(r.triangle[i], rep);
                contract = contract.union(p.without(rep));
            }
        }
        let m = ReductionMinor { contract, delete, rename };
        let expected = Matroid::frame(w).minor(m.contract, m.delete)?;
        if !matroid_equal(&Matroid::frame(&reduced).relabel(&m.rename_full(&reduced)), &expected)? {
            return Err(Error::MatroidMismatch("reduced biased graph is not the recorded minor".into()));
        }
        Some(m)
    } else {
        None
    };
    Ok(ReductionPlan { omega: w.clone(), balancing_vertex: u, lobes, replacements, reduced, minor })
}

impl ReductionMinor {
    /// The renaming extended by the identity on the other edges of `reduced`.
    pub fn rename_full(&self, reduced: &BiasedGraph) -> BTreeMap<EdgeId, EdgeId> {
        reduced.edge_set().iter().map(|e| (e, self.rename.get(&e).copied().unwrap_or(e))).collect()
    }
}

/// Replaces each triangle of `psi` by the corresponding lobe. Bias is forced
/// by the original frame matroid and the result is checked against it.
pub fn h_enlarge(plan: &ReductionPlan, psi: &BiasedGraph) -> Result<BiasedGraph> {
    let pg = psi.graph();
    let mut g = pg.clone();
    for r in &plan.replacements {
        let ends: Vec<(VertexId, VertexId)> =
            r.triangle.iter().map(|&e| pg.endpoints(e).ok_or(Error::UnknownEdge(e))).collect::<Result<_>>()?;
        let is_loop: Vec<bool> = ends.iter().map(|(p, q)| p == q).collect();
        let shared = |i: usize, j: usize| -> Vec<VertexId> {
            let (a, b) = ends[i];
            let (c, d) = ends[j];
            let mut s: Vec<VertexId> = [a, b].into_iter().filter(|&x| x == c || x == d).collect();
            s.dedup();
            s
        };
        let unsupported = |shape| Error::CircuitShapeUnsupported { edges: r.triangle, shape };
        let mut image: [Option<VertexId>; 3] = [None; 3];
        let mut rolled: Option<usize> = None;
        match is_loop.iter().filter(|&&l| l).count() {
            0 => {
                if ends[0] == ends[1] && ends[1] == ends[2] {
                    return Err(unsupported("contrabalanced theta"));
                }
                for (j, slot) in image.iter_mut().enumerate() {
                    let s = shared((j + 2) % 3, j);
                    if s.len() != 1 {
                        return Err(unsupported("triangle with parallel edges"));
                    }
                    *slot = Some(s[0]);
                }
            }
            1 => {
                let l = is_loop.iter().position(|&x| x).unwrap();
                let p = ends[l].0;
                let (a, b) = ends[(l + 1) % 3];
                let q = if a == p { b } else { a };
                image[l] = Some(p);
                image[(l + 1) % 3] = Some(p);
                image[(l + 2) % 3] = Some(q);
            }
            2 => {
                let k = is_loop.iter().position(|&x| !x).unwrap();
                let x1 = ends[(k + 1) % 3].0;
                let x2 = ends[(k + 2) % 3].0;
                let (p, q) = ends[k];
                if x1 == x2 || ![p, q].contains(&x1) || ![p, q].contains(&x2) {
                    return Err(unsupported("loops not at the ends of the link"));
                }
                image[(k + 1) % 3] = Some(x1);
                image[k] = Some(x2);
                rolled = Some((k + 2) % 3);
            }
            _ => return Err(unsupported("three loops")),
        }
        for &e in &r.triangle {
            g.remove_edge(e);
        }
        let mut vmap: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for (j, &t) in r.terminals.iter().enumerate() {
            if let Some(x) = image[j] {
                vmap.insert(t, x);
            }
        }
        let rolled_vertex = rolled.map(|j| r.terminals[j]);
        for v in r.split_graph.vertices() {
            if !r.terminals.contains(&v) {
                let fresh = g.fresh_vertex();
                g.add_vertex(fresh)?;
                vmap.insert(v, fresh);
            }
        }
        for (e, a, b) in r.split_graph.edges() {
            let (a, b) = match rolled_vertex {
                Some(rv) if a == rv && b == rv => return Err(unsupported("loop at the rolled terminal")),
                Some(rv) if a == rv => (b, b),
                Some(rv) if b == rv => (a, a),
                _ => (a, b),
            };
            g.add_edge(e, vmap[&a], vmap[&b])?;
        }
    }
    let target = Matroid::frame(&plan.omega);
    let circuits: HashSet<EdgeSet> = target.circuits().iter().copied().collect();
    let out = BiasedGraph::from_predicate(g, |c| circuits.contains(&c))
        .map_err(|e| Error::MatroidMismatch(format!("enlargement is not a biased graph: {e}")))?;
    if !matroid_equal(&Matroid::frame(&out), &target)? {
        return Err(Error::MatroidMismatch("enlargement changes the frame matroid".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::iso::biased_graph_isomorphic;

    fn committed_set(w: &BiasedGraph) -> Vec<u32> {
        committed_all(w).unwrap().values().filter(|r| r.committed).map(|r| r.vertex.0).collect()
    }

    #[test]
    fn balancing_vertex_is_not_committed() {
        let r = committed(&fixtures::rollup_base(), VertexId(0)).unwrap();
        assert!(!r.committed);
        assert!(r.witness.is_none());
    }

    #[test]
    fn apex_base_vertices_are_committed() {
        let w = fixtures::apex(&fixtures::complete_graph(4), 3);
        assert_eq!(committed_set(&w), vec![1, 2, 3, 4]);
        for x in 1..5 {
            assert!(committed_by_nonbinary(&w, VertexId(x)).unwrap());
        }
    }

    #[test]
    fn claw_centres_are_committed() {
        let w = fixtures::three_claws();
        assert_eq!(committed_set(&w), vec![2, 3, 4, 5]);
        for x in w.graph().vertices() {
            assert_eq!(committed(&w, x).unwrap().committed, committed_by_definition(&w, x).unwrap().committed);
        }
    }

    #[test]
    fn shortcut_witness_is_checked() {
        let w = fixtures::three_claws();
        let r = committed(&w, VertexId(3)).unwrap();
        assert_eq!(r.route, CommitRoute::ShortcutTheta);
        let Some(CommitWitness::Shortcut { theta, path }) = r.witness else { panic!("no shortcut") };
        let t = theta[0].union(theta[1]).union(theta[2]);
        assert!(path.is_disjoint(t));
        assert!(has_u24_minor_capped(&Matroid::frame(&w.delete_vertex(VertexId(3))), usize::MAX).unwrap().is_some());
    }

    #[test]
    fn loops_on_a_balanced_graph_give_the_two_singles_form() {
        let mut g = fixtures::complete_graph(4);
        g.add_edge(EdgeId(6), VertexId(0), VertexId(0)).unwrap();
        g.add_edge(EdgeId(7), VertexId(1), VertexId(1)).unwrap();
        let w = BiasedGraph::from_predicate(g, |c| c.len() > 1).unwrap();
        let seps = classify_2separations(&w).unwrap();
        let loops = crate::sets::edges(&[6, 7]);
        assert!(seps.iter().any(|s| s.y == loops && s.form == SeparationForm::TwoUnbalancedSingles));
        assert!(seps.iter().all(|s| s.form != SeparationForm::Unclassified));
    }

    #[test]
    fn claws_reduce_to_three_triangles() {
        let w = fixtures::three_claws();
        let plan = find_lobes(&w).unwrap();
        assert_eq!(plan.lobes.len(), 3);
        assert!(plan.lobes.iter().all(|l| l.kind == LobeKind::Balanced && l.interior.len() == 1));
        assert_eq!(plan.reduced.graph().vertex_count(), 3);
        assert_eq!(plan.reduced.graph().edge_count(), 10);
        assert!(plan.minor.is_none());
        let back = h_enlarge(&plan, &plan.reduced).unwrap();
        assert!(biased_graph_isomorphic(&back, &w).is_some());
    }

    #[test]
    fn balanced_lobe_is_a_recorded_minor() {
        let w = fixtures::lobe_example();
        let plan = find_lobes(&w).unwrap();
        assert_eq!(plan.lobes.len(), 1);
        assert_eq!(plan.lobes[0].edges, crate::sets::edges(&[0, 1, 2, 3, 4, 5]));
        let m = plan.minor.as_ref().expect("paths form a cycle");
        let expected = Matroid::frame(&w).minor(m.contract, m.delete).unwrap();
        let got = Matroid::frame(&plan.reduced).relabel(&m.rename_full(&plan.reduced));
        assert!(matroid_equal(&got, &expected).unwrap());
        assert!(biased_graph_isomorphic(&h_enlarge(&plan, &plan.reduced).unwrap(), &w).is_some());
    }

    #[test]
    fn two_class_pinch_reduces_to_two_vertices() {
        let w = fixtures::two_class_pinch();
        let plan = find_lobes(&w).unwrap();
        assert_eq!(plan.lobes.len(), 1);
        assert_eq!(plan.lobes[0].kind, LobeKind::Pinch { vertex: VertexId(0) });
        assert_eq!(plan.reduced.graph().vertex_count(), 2);
        assert!(plan.reduced.is_contrabalanced());
        assert!(biased_graph_isomorphic(&h_enlarge(&plan, &plan.reduced).unwrap(), &w).is_some());
    }

    #[test]
    fn apex_has_no_lobes() {
        let w = fixtures::apex(&fixtures::complete_graph(4), 3);
        let plan = find_lobes(&w).unwrap();
        assert!(plan.lobes.is_empty());
        assert_eq!(plan.reduced, w);
    }

    #[test]
    fn theta_occurrence_is_unsupported() {
        let w = fixtures::two_class_pinch();
        let plan = find_lobes(&w).unwrap();
        let [a, b, c] = plan.replacements[0].triangle;
        let mut g = plan.reduced.graph().clone();
        g.set_endpoints(a, VertexId(0), VertexId(1)).unwrap();
        let psi = BiasedGraph::contrabalanced(g).unwrap();
        assert_eq!(
            h_enlarge(&plan, &psi).unwrap_err(),
            Error::CircuitShapeUnsupported { edges: [a, b, c], shape: "contrabalanced theta" }
        );
    }

    #[test]
    fn preconditions_are_checked() {
        let w = BiasedGraph::balanced(fixtures::complete_graph(4)).unwrap();
        assert!(matches!(find_lobes(&w).unwrap_err(), Error::Precondition(_)));
    }
}
