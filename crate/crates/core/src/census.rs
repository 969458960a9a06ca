//! Exhaustive enumeration of the biased graphs representing a small frame
//! matroid, grouped into roll-up orbits.

use std::collections::BTreeMap;

use crate::bias::BiasedGraph;
use crate::error::{Error, Result};
use crate::frame::{has_u24_minor_capped, is_graphic_uncapped, Matroid};
use crate::iso::{biased_graph_isomorphic, invariant, same_representation};
use crate::limits;
use crate::realize::{realize, Policy};
use crate::analysis::{find_lobes, frame_is_3_connected, h_enlarge, ReductionPlan};
use crate::transforms::rollup_family_at;
use crate::uf::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    pub max_vertices: usize,
    pub max_ground: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { max_vertices: limits::CENSUS_MAX_VERTICES, max_ground: limits::CENSUS_MAX_GROUND }
    }
}

#[derive(Clone, Debug)]
pub struct RepresentationSet {
    pub target: Matroid,
    /// Pairwise non-isomorphic representations, in discovery order.
    pub reps: Vec<BiasedGraph>,
    /// Indices into `reps`, one list per roll-up orbit.
    pub orbits: Vec<Vec<usize>>,
}

/// All biased graphs, up to isomorphism, whose frame matroid is `target`.
///
/// The target must be connected and nongraphic; such representations have
/// exactly `rank` vertices.
pub fn enumerate_representations(target: &Matroid, opts: CensusOptions) -> Result<RepresentationSet> {
    if opts.max_vertices > limits::CENSUS_MAX_VERTICES {
        return Err(Error::CapExceeded { what: "vertex budget", limit: limits::CENSUS_MAX_VERTICES });
    }
    if target.len() > opts.max_ground {
        return Err(Error::CapExceeded { what: "ground set for census", limit: opts.max_ground });
    }
    if !target.is_connected() {
        return Err(Error::DisconnectedTarget);
    }
    if has_u24_minor_capped(target, usize::MAX)?.is_none() && is_graphic_uncapped(target)?.is_some() {
        return Err(Error::GraphicTarget);
    }
    enumerate_unchecked(target, opts)
}

/// Census without the graphic and connectivity gates.
pub(crate) fn enumerate_unchecked(target: &Matroid, opts: CensusOptions) -> Result<RepresentationSet> {
    let n = target.full_rank();
    let mut reps: Vec<BiasedGraph> = Vec::new();
    if n <= opts.max_vertices {
        let mut by_invariant: BTreeMap<_, Vec<usize>> = BTreeMap::new();
        for w in realize(target, n, Policy::Forced, false)? {
            let key = invariant(&w);
            let bucket = by_invariant.entry(key).or_default();
            if bucket.iter().any(|&i| biased_graph_isomorphic(&reps[i], &w).is_some()) {
                continue;
            }
            bucket.push(reps.len());
            reps.push(w);
        }
    }
    let orbits = rollup_orbits(&reps);
    Ok(RepresentationSet { target: target.clone(), reps, orbits })
}

/// All representations of `target` with edges keeping their names, so two
/// results differ by more than a renaming of vertices. No gates or caps.
pub fn enumerate_labeled(target: &Matroid, max_vertices: usize) -> Result<Vec<BiasedGraph>> {
    let n = target.full_rank();
    let mut reps: Vec<BiasedGraph> = Vec::new();
    if n > max_vertices {
        return Ok(reps);
    }
    let mut by_bias: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for w in realize(target, n, Policy::Forced, false)? {
        let bucket = by_bias.entry((w.balanced_cycles().clone(), w.graph().loops())).or_default();
        if bucket.iter().any(|&i| same_representation(&reps[i], &w)) {
            continue;
        }
        bucket.push(reps.len());
        reps.push(w);
    }
    Ok(reps)
}

/// Groups representations that are roll-ups of one another, using every
/// vertex at which a representation is almost balanced.
pub fn rollup_orbits(reps: &[BiasedGraph]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(reps.len());
    let keys: Vec<_> = reps.iter().map(invariant).collect();
    for (i, w) in reps.iter().enumerate() {
        for u in w.almost_balancing_vertices().iter() {
            let Ok(family) = rollup_family_at(w, u) else { continue };
            for m in family.all() {
                let key = invariant(m);
                for (j, other) in reps.iter().enumerate() {
                    if keys[j] == key && biased_graph_isomorphic(m, other).is_some() {
                        uf.union(i, j);
                    }
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..reps.len() {
        groups.entry(uf.find(i)).or_default().push(i);
    }
    groups.into_values().collect()
}

/// How a directly enumerated representation was accounted for.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Classification {
    /// Isomorphic to a member of a roll-up family of the input.
    pub rollup: bool,
    /// Isomorphic to an enlargement of a representation of the reduced graph.
    pub enlargement: bool,
}

impl Classification {
    pub fn is_classified(self) -> bool {
        self.rollup || self.enlargement
    }
}

#[derive(Clone, Debug)]
pub struct Theorem1Report {
    pub plan: ReductionPlan,
    pub reduced_vertices: usize,
    /// Representations of the reduced graph's frame matroid, edges keeping
    /// their names.
    pub reduced_reps: Vec<BiasedGraph>,
    /// Distinct enlargements of `reduced_reps`.
    pub enlargements: Vec<BiasedGraph>,
    /// Reduced representations whose enlargement failed, with the error.
    pub enlargement_failures: Vec<(usize, Error)>,
    /// The census of `F(w)` up to isomorphism.
    pub direct: RepresentationSet,
    /// Every representation of `F(w)`, edges keeping their names.
    pub labeled: Vec<BiasedGraph>,
    /// One entry per member of `labeled`.
    pub classifications: Vec<Classification>,
    /// Enlargements that are not representations found directly.
    pub enlargements_missing: Vec<usize>,
}

impl Theorem1Report {
    pub fn reduced_within_six(&self) -> bool {
        self.reduced_vertices <= 6
    }

    /// Members of `labeled` that are neither roll-ups nor enlargements.
    pub fn unclassified(&self) -> Vec<usize> {
        (0..self.classifications.len()).filter(|&i| !self.classifications[i].is_classified()).collect()
    }

    pub fn holds(&self) -> bool {
        self.reduced_within_six() && self.unclassified().is_empty() && self.enlargements_missing.is_empty()
    }
}

fn contains_representation(w: &BiasedGraph, pool: &[BiasedGraph]) -> bool {
    pool.iter().any(|p| same_representation(w, p))
}

/// Checks the structure theorem on `w`: every representation of `F(w)` is a
/// roll-up of `w` or an enlargement of a representation of its reduction.
/// Representations are compared with edge names fixed, since a relabelled
/// copy of an enlargement need not be one.
///
/// Requires `w` 3-connected and almost balanced with no balanced loop, and
/// `F(w)` nongraphic and 3-connected.
pub fn verify_theorem1(w: &BiasedGraph, opts: CensusOptions) -> Result<Theorem1Report> {
    if !w.balanced_loops().is_empty() {
        return Err(Error::Precondition("biased graph has a balanced loop".into()));
    }
    if !frame_is_3_connected(w)? {
        return Err(Error::Precondition("frame matroid is not 3-connected".into()));
    }
    let plan = find_lobes(w)?;
    let reduced_vertices = plan.reduced.graph().vertex_count();
    let reduced_reps = enumerate_labeled(&Matroid::frame(&plan.reduced), opts.max_vertices)?;
    let mut enlargements: Vec<BiasedGraph> = Vec::new();
    let mut enlargement_failures = Vec::new();
    for (i, psi) in reduced_reps.iter().enumerate() {
        match h_enlarge(&plan, psi) {
            Ok(big) => {
                if !contains_representation(&big, &enlargements) {
                    enlargements.push(big);
                }
            }
            Err(e) => enlargement_failures.push((i, e)),
        }
    }
    let target = Matroid::frame(w);
    let direct = enumerate_representations(&target, opts)?;
    let labeled = enumerate_labeled(&target, opts.max_vertices)?;
    let mut rollups: Vec<BiasedGraph> = Vec::new();
    for u in w.almost_balancing_vertices().iter() {
        if let Ok(family) = rollup_family_at(w, u) {
            rollups.extend(family.all().cloned());
        }
    }
    let classifications = labeled
        .iter()
        .map(|r| Classification {
            rollup: contains_representation(r, &rollups),
            enlargement: contains_representation(r, &enlargements),
        })
        .collect();
    let enlargements_missing =
        (0..enlargements.len()).filter(|&i| !contains_representation(&enlargements[i], &labeled)).collect();
    Ok(Theorem1Report {
        plan,
        reduced_vertices,
        reduced_reps,
        enlargements,
        enlargement_failures,
        direct,
        labeled,
        classifications,
        enlargements_missing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::MultiGraph;

    #[test]
    fn u24_has_three_contrabalanced_representations() {
        let rs = enumerate_representations(&Matroid::uniform(2, 4), CensusOptions::default()).unwrap();
        assert_eq!(rs.reps.len(), 3);
        assert!(rs.reps.iter().all(|w| w.is_contrabalanced()));
        assert_eq!(rs.orbits.len(), 1);
    }

    #[test]
    fn graphic_target_is_rejected() {
        let k3 = MultiGraph::from_edges(&[(0, 0, 1), (1, 1, 2), (2, 0, 2)]).unwrap();
        let m = Matroid::cycle_matroid(&k3).unwrap();
        assert_eq!(enumerate_representations(&m, CensusOptions::default()).unwrap_err(), Error::GraphicTarget);
    }
}
