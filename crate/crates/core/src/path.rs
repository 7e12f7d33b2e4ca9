//! The path basis of a finite-dimensional gentle presentation.
//!
//! Because every relation has length two, a concatenation of basis paths
//! is nonzero exactly when the seam pair is not a relation, and every
//! nonzero product of basis paths is again a basis path (coefficient 1).
//! The whole algebra is interned up front; products become table lookups.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use crate::quiver::{ArrowId, GentleError, GentlePresentation, VertexId};

pub type PathId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathData {
    /// Arrow ids in traversal order; empty for a trivial path.
    pub arrows: Vec<ArrowId>,
    pub source: VertexId,
    pub target: VertexId,
    pub degree: i64,
}

impl PathData {
    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn first_arrow(&self) -> Option<ArrowId> {
        self.arrows.first().copied()
    }

    pub fn last_arrow(&self) -> Option<ArrowId> {
        self.arrows.last().copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    NotGentle(GentleError),
    /// The presentation admits arbitrarily long nonzero paths; the witness
    /// is a cyclic arrow sequence whose consecutive pairs all survive.
    InfiniteDimensional { cycle: Vec<String> },
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::NotGentle(e) => write!(f, "not a gentle presentation: {e}"),
            AlgebraError::InfiniteDimensional { cycle } => {
                write!(f, "infinite-dimensional: the arrow cycle ")?;
                for (i, name) in cycle.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" -> ")?;
                    }
                    f.write_str(name)?;
                }
                write!(f, " never meets a relation")
            }
        }
    }
}

impl From<GentleError> for AlgebraError {
    fn from(e: GentleError) -> Self {
        AlgebraError::NotGentle(e)
    }
}

/// A finite-dimensional gentle algebra with its full path basis interned.
#[derive(Clone, Debug)]
pub struct Algebra {
    pres: GentlePresentation,
    paths: Vec<PathData>,
    /// Nonempty arrow sequences to their path id.
    index: BTreeMap<Vec<ArrowId>, PathId>,
    /// Trivial path id per vertex.
    trivial: Vec<PathId>,
    by_endpoints: BTreeMap<(VertexId, VertexId), Vec<PathId>>,
}

impl Algebra {
    pub fn new(pres: GentlePresentation) -> Result<Self, AlgebraError> {
        pres.validate()?;
        let arrows = &pres.quiver.arrows;
        let n = arrows.len();
        // Continuation graph: f -> g when "f then g" survives.
        let succ: Vec<Vec<ArrowId>> = (0..n)
            .map(|f| {
                (0..n)
                    .filter(|&g| {
                        arrows[f].target == arrows[g].source && !pres.relations.contains(&(f, g))
                    })
                    .collect()
            })
            .collect();
        if let Some(cycle) = find_cycle(&succ) {
            return Err(AlgebraError::InfiniteDimensional {
                cycle: cycle.into_iter().map(|f| arrows[f].name.clone()).collect(),
            });
        }

        let mut paths: Vec<PathData> = Vec::new();
        let mut trivial = Vec::new();
        for v in 0..pres.quiver.num_vertices() {
            trivial.push(paths.len());
            paths.push(PathData {
                arrows: Vec::new(),
                source: v,
                target: v,
                degree: 0,
            });
        }
        // Breadth-first by length, so ids are ordered by (length, discovery).
        let mut frontier: Vec<Vec<ArrowId>> = (0..n).map(|f| vec![f]).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for seq in frontier {
                let last = *seq.last().expect("nonempty by construction");
                for &g in &succ[last] {
                    let mut longer = seq.clone();
                    longer.push(g);
                    next.push(longer);
                }
                let source = arrows[seq[0]].source;
                let target = arrows[last].target;
                let degree = seq.iter().map(|&f| arrows[f].degree).sum();
                paths.push(PathData {
                    arrows: seq,
                    source,
                    target,
                    degree,
                });
            }
            frontier = next;
        }

        let mut index = BTreeMap::new();
        let mut by_endpoints: BTreeMap<(VertexId, VertexId), Vec<PathId>> = BTreeMap::new();
        for (id, p) in paths.iter().enumerate() {
            if !p.arrows.is_empty() {
                index.insert(p.arrows.clone(), id);
            }
            by_endpoints.entry((p.source, p.target)).or_default().push(id);
        }
        Ok(Algebra {
            pres,
            paths,
            index,
            trivial,
            by_endpoints,
        })
    }

    pub fn presentation(&self) -> &GentlePresentation {
        &self.pres
    }

    pub fn num_vertices(&self) -> usize {
        self.pres.quiver.num_vertices()
    }

    /// Total dimension: the number of basis paths (trivial ones included).
    pub fn dimension(&self) -> usize {
        self.paths.len()
    }

    pub fn path(&self, id: PathId) -> &PathData {
        &self.paths[id]
    }

    pub fn path_ids(&self) -> impl Iterator<Item = PathId> {
        0..self.paths.len()
    }

    pub fn trivial(&self, v: VertexId) -> PathId {
        self.trivial[v]
    }

    /// The length-one path of an arrow.
    pub fn arrow_path(&self, f: ArrowId) -> PathId {
        self.index[&vec![f]]
    }

    /// Looks up a nonempty arrow sequence; `None` if it is not a basis path.
    pub fn path_from_arrows(&self, arrows: &[ArrowId]) -> Option<PathId> {
        self.index.get(arrows).copied()
    }

    pub fn paths_between(&self, v: VertexId, w: VertexId) -> &[PathId] {
        self.by_endpoints
            .get(&(v, w))
            .map_or(&[], |ids| ids.as_slice())
    }

    /// Product "p then q"; `None` means zero.
    pub fn compose(&self, p: PathId, q: PathId) -> Option<PathId> {
        let (pp, qq) = (&self.paths[p], &self.paths[q]);
        if pp.target != qq.source {
            return None;
        }
        if pp.is_trivial() {
            return Some(q);
        }
        if qq.is_trivial() {
            return Some(p);
        }
        let seam = (
            pp.last_arrow().expect("nontrivial"),
            qq.first_arrow().expect("nontrivial"),
        );
        if self.pres.relations.contains(&seam) {
            return None;
        }
        let mut seq = pp.arrows.clone();
        seq.extend_from_slice(&qq.arrows);
        let id = self.index.get(&seq).copied();
        debug_assert!(id.is_some(), "seam-clean concatenation must be a basis path");
        id
    }

    /// Graded dimensions of the space of paths from `v` to `w`, i.e. of
    /// the morphisms between the projectives at `v` and `w`.
    pub fn hom_projective_profile(&self, v: VertexId, w: VertexId) -> BTreeMap<i64, usize> {
        let mut profile = BTreeMap::new();
        for &id in self.paths_between(v, w) {
            *profile.entry(self.paths[id].degree).or_insert(0) += 1;
        }
        profile
    }

    /// Human-readable path name: `e(v)` or arrow names joined with `*`.
    pub fn path_name(&self, id: PathId) -> String {
        let p = &self.paths[id];
        if p.is_trivial() {
            format!("e({})", self.pres.quiver.vertex_names[p.source])
        } else {
            let names: Vec<&str> = p
                .arrows
                .iter()
                .map(|&f| self.pres.quiver.arrows[f].name.as_str())
                .collect();
            names.join("*")
        }
    }

    /// The unique surviving continuation after `f`, if any.
    pub fn allowed_after(&self, f: ArrowId) -> Option<ArrowId> {
        let arrows = &self.pres.quiver.arrows;
        (0..arrows.len()).find(|&g| {
            arrows[f].target == arrows[g].source && !self.pres.relations.contains(&(f, g))
        })
    }

    /// The unique surviving continuation before `f`, if any.
    pub fn allowed_before(&self, f: ArrowId) -> Option<ArrowId> {
        let arrows = &self.pres.quiver.arrows;
        (0..arrows.len()).find(|&e| {
            arrows[e].target == arrows[f].source && !self.pres.relations.contains(&(e, f))
        })
    }

    pub fn arrows_out_of(&self, v: VertexId) -> Vec<ArrowId> {
        let arrows = &self.pres.quiver.arrows;
        (0..arrows.len()).filter(|&f| arrows[f].source == v).collect()
    }

    pub fn arrows_into(&self, v: VertexId) -> Vec<ArrowId> {
        let arrows = &self.pres.quiver.arrows;
        (0..arrows.len()).filter(|&f| arrows[f].target == v).collect()
    }
}

/// Finds a directed cycle in an adjacency list, if any, as a node sequence
/// `[v0, ..., vk]` with each step an edge and an edge from `vk` back to `v0`.
pub(crate) fn find_cycle(succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        White,
        Grey,
        Black,
    }
    let n = succ.len();
    let mut mark = vec![Mark::White; n];
    let mut stack: Vec<usize> = Vec::new();
    // Iterative DFS with an explicit stack of (node, next-child-index).
    for root in 0..n {
        if mark[root] != Mark::White {
            continue;
        }
        let mut frames: Vec<(usize, usize)> = vec![(root, 0)];
        mark[root] = Mark::Grey;
        stack.push(root);
        while let Some(frame) = frames.last_mut() {
            let node = frame.0;
            if frame.1 < succ[node].len() {
                let next = succ[node][frame.1];
                frame.1 += 1;
                match mark[next] {
                    Mark::White => {
                        mark[next] = Mark::Grey;
                        stack.push(next);
                        frames.push((next, 0));
                    }
                    Mark::Grey => {
                        let start = stack
                            .iter()
                            .position(|&v| v == next)
                            .expect("grey nodes are on the stack");
                        return Some(stack[start..].to_vec());
                    }
                    Mark::Black => {}
                }
            } else {
                mark[node] = Mark::Black;
                stack.pop();
                frames.pop();
            }
        }
    }
    None
}
