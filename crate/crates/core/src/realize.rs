//! Exhaustive search for graphs and biased graphs realizing a given matroid.
//!
//! Edges are placed one at a time in a fixed order; vertices are introduced
//! in increasing order so relabelings of unused vertices are never revisited.
//! In a frame representation a cycle is balanced exactly when it is a
//! circuit, so bias is forced by the target and never branched on.

use std::collections::{BTreeMap, HashSet};

use crate::bias::BiasedGraph;
use crate::error::Result;
use crate::frame::{matroid_equal, Matroid};
use crate::multigraph::MultiGraph;
use crate::sets::{EdgeId, EdgeSet, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Policy {
    /// Every cycle balanced: cycle-matroid realizations.
    AllBalanced,
    /// Cycles balanced iff they are circuits of the target.
    Forced,
}

/// Element order: first appearance over circuits in canonical order.
pub(crate) fn edge_order(m: &Matroid) -> Vec<EdgeId> {
    let mut order: Vec<EdgeId> = Vec::new();
    let mut seen = EdgeSet::EMPTY;
    for &c in m.circuits() {
        for e in c {
            if !seen.contains(e) {
                seen.insert(e);
                order.push(e);
            }
        }
    }
    order.extend(m.ground().difference(seen).iter());
    order
}

struct Partial<'a> {
    policy: Policy,
    circuits: &'a HashSet<EdgeSet>,
}

impl Partial<'_> {
    fn balanced(&self, c: EdgeSet) -> bool {
        match self.policy {
            Policy::AllBalanced => true,
            Policy::Forced => self.circuits.contains(&c),
        }
    }

    /// Rank of the placed edges listed in `edges` under the policy's bias.
    fn rank(&self, edges: &[(EdgeId, u8, u8)]) -> usize {
        let mut parent = [0u8; 16];
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        fn find(p: &mut [u8; 16], mut x: u8) -> u8 {
            while p[x as usize] != x {
                x = p[x as usize];
            }
            x
        }
        let mut used = 0u16;
        let mut forest: Vec<(EdgeId, u8, u8)> = Vec::new();
        let mut extra: Vec<(EdgeId, u8, u8)> = Vec::new();
        for &(e, a, b) in edges {
            used |= 1 << a | 1 << b;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if a != b && ra != rb {
                parent[ra.max(rb) as usize] = ra.min(rb);
                forest.push((e, a, b));
            } else {
                extra.push((e, a, b));
            }
        }
        let mut unbalanced_roots = 0u16;
        for &(e, a, b) in &extra {
            let c = if a == b { EdgeSet::singleton(e) } else { forest_path(&forest, a, b).with(e) };
            if !self.balanced(c) {
                unbalanced_roots |= 1 << find(&mut parent, a);
            }
        }
        let mut comps = 0u16;
        for v in 0..16u8 {
            if used >> v & 1 == 1 {
                comps |= 1 << find(&mut parent, v);
            }
        }
        used.count_ones() as usize - (comps & !unbalanced_roots).count_ones() as usize
    }
}

/// Edges of the forest path from `a` to `b`.
fn forest_path(forest: &[(EdgeId, u8, u8)], a: u8, b: u8) -> EdgeSet {
    fn dfs(forest: &[(EdgeId, u8, u8)], x: u8, target: u8, from: Option<EdgeId>, acc: EdgeSet) -> Option<EdgeSet> {
        if x == target {
            return Some(acc);
        }
        for &(e, p, q) in forest {
            if Some(e) == from {
                continue;
            }
            let y = if p == x {
                q
            } else if q == x {
                p
            } else {
                continue;
            };
            if let Some(r) = dfs(forest, y, target, Some(e), acc.with(e)) {
                return Some(r);
            }
        }
        None
    }
    dfs(forest, a, b, None, EdgeSet::EMPTY).expect("endpoints share a tree")
}

/// All labeled realizations on exactly `n` vertices, up to the order in
/// which vertices are first used. Stops at the first one if `first_only`.
pub(crate) fn realize(m: &Matroid, n: usize, policy: Policy, first_only: bool) -> Result<Vec<BiasedGraph>> {
    assert!(n <= 16, "vertex budget too large");
    let order = edge_order(m);
    let circuit_set: HashSet<EdgeSet> = m.circuits().iter().copied().collect();
    let pos: BTreeMap<EdgeId, usize> = order.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut closing: Vec<Vec<EdgeSet>> = vec![Vec::new(); order.len()];
    for &c in m.circuits() {
        closing[c.iter().map(|e| pos[&e]).max().unwrap()].push(c);
    }
    let mut prefix = EdgeSet::EMPTY;
    let prefix_rank: Vec<usize> = order
        .iter()
        .map(|&e| {
            prefix.insert(e);
            m.rank(prefix)
        })
        .collect();

    struct Search<'a> {
        m: &'a Matroid,
        n: usize,
        order: &'a [EdgeId],
        closing: &'a [Vec<EdgeSet>],
        prefix_rank: &'a [usize],
        partial: Partial<'a>,
        placed: Vec<(EdgeId, u8, u8)>,
        first_only: bool,
        out: Vec<BiasedGraph>,
    }

    impl Search<'_> {
        fn consistent(&self, i: usize) -> bool {
            if self.partial.rank(&self.placed) != self.prefix_rank[i] {
                return false;
            }
            self.closing[i].iter().all(|&c| {
                let sub: Vec<(EdgeId, u8, u8)> = self.placed.iter().copied().filter(|t| c.contains(t.0)).collect();
                self.partial.rank(&sub) + 1 == c.len()
            })
        }

        fn leaf(&mut self) -> Result<()> {
            let mut g = MultiGraph::with_vertices(self.n as u32);
            for &(e, a, b) in &self.placed {
                g.add_edge(e, VertexId(a as u32), VertexId(b as u32))?;
            }
            let w = match self.partial.policy {
                Policy::AllBalanced => BiasedGraph::balanced(g),
                Policy::Forced => BiasedGraph::from_predicate(g, |c| self.partial.circuits.contains(&c)),
            };
            if let Ok(w) = w {
                if matroid_equal(&Matroid::frame(&w), self.m)? {
                    self.out.push(w);
                }
            }
            Ok(())
        }

        fn go(&mut self, i: usize, used: usize) -> Result<bool> {
            if i == self.order.len() {
                if used == self.n {
                    self.leaf()?;
                    return Ok(self.first_only && !self.out.is_empty());
                }
                return Ok(false);
            }
            // Each remaining edge introduces at most two new vertices.
            if self.n - used > 2 * (self.order.len() - i) {
                return Ok(false);
            }
            let e = self.order[i];
            let mut options: Vec<(usize, usize)> = Vec::new();
            for a in 0..used {
                for b in a..used {
                    options.push((a, b));
                }
            }
            if used < self.n {
                for a in 0..used {
                    options.push((a, used));
                }
                options.push((used, used));
            }
            if used + 1 < self.n {
                options.push((used, used + 1));
            }
            for (a, b) in options {
                self.placed.push((e, a as u8, b as u8));
                if self.consistent(i) {
                    let now = used.max(b + 1);
                    if self.go(i + 1, now)? {
                        return Ok(true);
                    }
                }
                self.placed.pop();
            }
            Ok(false)
        }
    }

    let mut s = Search {
        m,
        n,
        order: &order,
        closing: &closing,
        prefix_rank: &prefix_rank,
        partial: Partial { policy, circuits: &circuit_set },
        placed: Vec::new(),
        first_only,
        out: Vec::new(),
    };
    s.go(0, 0)?;
    Ok(s.out)
}
