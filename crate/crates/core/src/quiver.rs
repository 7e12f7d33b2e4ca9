//! Graded quivers with quadratic monomial relations, and the gentleness
//! check.
//!
//! Composition is written in traversal order throughout: a relation pair
//! `(f, g)` says the length-two path "f then g" is zero, and requires
//! `target(f) == source(g)`.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
    /// Cohomological degree of the arrow.
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedQuiver {
    pub vertex_names: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl GradedQuiver {
    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|n| n == name)
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Sets the degree of the named arrow; `false` if no such arrow.
    pub fn set_degree(&mut self, name: &str, degree: i64) -> bool {
        match self.arrow_id(name) {
            Some(id) => {
                self.arrows[id].degree = degree;
                true
            }
            None => false,
        }
    }
}

/// A graded quiver together with its forbidden length-two paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GentlePresentation {
    pub quiver: GradedQuiver,
    /// `(f, g)` present means the path "f then g" is zero.
    pub relations: BTreeSet<(ArrowId, ArrowId)>,
}

/// Which of the four local composition slots at an arrow is overfull.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    AllowedAfter,
    ForbiddenAfter,
    AllowedBefore,
    ForbiddenBefore,
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Slot::AllowedAfter => "allowed continuations after",
            Slot::ForbiddenAfter => "forbidden continuations after",
            Slot::AllowedBefore => "allowed continuations before",
            Slot::ForbiddenBefore => "forbidden continuations before",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GentleError {
    DuplicateVertexName(String),
    DuplicateArrowName(String),
    UnknownVertex(String),
    UnknownArrow(String),
    EndpointOutOfRange { arrow: String },
    RelationOutOfRange { first: usize, second: usize },
    RelationNotComposable { first: String, second: String },
    TooManyArrowsOut { vertex: String, count: usize },
    TooManyArrowsIn { vertex: String, count: usize },
    AmbiguousComposition { arrow: String, slot: Slot },
}

impl fmt::Display for GentleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GentleError::DuplicateVertexName(n) => write!(f, "duplicate vertex name {n:?}"),
            GentleError::DuplicateArrowName(n) => write!(f, "duplicate arrow name {n:?}"),
            GentleError::UnknownVertex(n) => write!(f, "unknown vertex {n:?}"),
            GentleError::UnknownArrow(n) => write!(f, "unknown arrow {n:?}"),
            GentleError::EndpointOutOfRange { arrow } => {
                write!(f, "arrow {arrow:?} has an endpoint outside the vertex range")
            }
            GentleError::RelationOutOfRange { first, second } => {
                write!(f, "relation ({first}, {second}) references a missing arrow")
            }
            GentleError::RelationNotComposable { first, second } => write!(
                f,
                "relation ({first:?}, {second:?}) is not a composable pair"
            ),
            GentleError::TooManyArrowsOut { vertex, count } => {
                write!(f, "vertex {vertex:?} has {count} outgoing arrows (max 2)")
            }
            GentleError::TooManyArrowsIn { vertex, count } => {
                write!(f, "vertex {vertex:?} has {count} incoming arrows (max 2)")
            }
            GentleError::AmbiguousComposition { arrow, slot } => {
                write!(f, "arrow {arrow:?} has more than one {slot}")
            }
        }
    }
}

impl GentlePresentation {
    /// Convenience constructor from names. Arrows are
    /// `(name, source, target, degree)`; relations are `(first, second)`
    /// arrow names in traversal order.
    pub fn from_names(
        vertices: &[&str],
        arrows: &[(&str, &str, &str, i64)],
        relations: &[(&str, &str)],
    ) -> Result<Self, GentleError> {
        let vertex_names: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let mut quiver = GradedQuiver {
            vertex_names,
            arrows: Vec::new(),
        };
        for &(name, src, tgt, degree) in arrows {
            let source = quiver
                .vertex_id(src)
                .ok_or_else(|| GentleError::UnknownVertex(src.to_string()))?;
            let target = quiver
                .vertex_id(tgt)
                .ok_or_else(|| GentleError::UnknownVertex(tgt.to_string()))?;
            quiver.arrows.push(Arrow {
                name: name.to_string(),
                source,
                target,
                degree,
            });
        }
        let mut rel = BTreeSet::new();
        for &(first, second) in relations {
            let fi = quiver
                .arrow_id(first)
                .ok_or_else(|| GentleError::UnknownArrow(first.to_string()))?;
            let si = quiver
                .arrow_id(second)
                .ok_or_else(|| GentleError::UnknownArrow(second.to_string()))?;
            rel.insert((fi, si));
        }
        let pres = GentlePresentation {
            quiver,
            relations: rel,
        };
        pres.validate()?;
        Ok(pres)
    }

    /// Checks well-formedness and the gentleness conditions: at most two
    /// arrows in and out of each vertex, and for every arrow at most one
    /// allowed and one forbidden continuation on each side.
    pub fn validate(&self) -> Result<(), GentleError> {
        let q = &self.quiver;
        let nv = q.num_vertices();
        for (i, name) in q.vertex_names.iter().enumerate() {
            if q.vertex_names[..i].contains(name) {
                return Err(GentleError::DuplicateVertexName(name.clone()));
            }
        }
        for (i, a) in q.arrows.iter().enumerate() {
            if q.arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(GentleError::DuplicateArrowName(a.name.clone()));
            }
            if a.source >= nv || a.target >= nv {
                return Err(GentleError::EndpointOutOfRange {
                    arrow: a.name.clone(),
                });
            }
        }
        for &(f, g) in &self.relations {
            if f >= q.arrows.len() || g >= q.arrows.len() {
                return Err(GentleError::RelationOutOfRange { first: f, second: g });
            }
            if q.arrows[f].target != q.arrows[g].source {
                return Err(GentleError::RelationNotComposable {
                    first: q.arrows[f].name.clone(),
                    second: q.arrows[g].name.clone(),
                });
            }
        }
        for v in 0..nv {
            let out = q.arrows.iter().filter(|a| a.source == v).count();
            let inc = q.arrows.iter().filter(|a| a.target == v).count();
            if out > 2 {
                return Err(GentleError::TooManyArrowsOut {
                    vertex: q.vertex_names[v].clone(),
                    count: out,
                });
            }
            if inc > 2 {
                return Err(GentleError::TooManyArrowsIn {
                    vertex: q.vertex_names[v].clone(),
                    count: inc,
                });
            }
        }
        for (f, arrow) in q.arrows.iter().enumerate() {
            let after: Vec<ArrowId> = (0..q.arrows.len())
                .filter(|&g| q.arrows[g].source == arrow.target)
                .collect();
            let before: Vec<ArrowId> = (0..q.arrows.len())
                .filter(|&e| q.arrows[e].target == arrow.source)
                .collect();
            let count =
                |ids: &[ArrowId], forbidden: bool, pair: fn(ArrowId, ArrowId) -> (ArrowId, ArrowId)| {
                    ids.iter()
                        .filter(|&&other| self.relations.contains(&pair(f, other)) == forbidden)
                        .count()
                };
            let checks = [
                (count(&after, false, |f, g| (f, g)), Slot::AllowedAfter),
                (count(&after, true, |f, g| (f, g)), Slot::ForbiddenAfter),
                (count(&before, false, |f, e| (e, f)), Slot::AllowedBefore),
                (count(&before, true, |f, e| (e, f)), Slot::ForbiddenBefore),
            ];
            for (n, slot) in checks {
                if n > 1 {
                    return Err(GentleError::AmbiguousComposition {
                        arrow: arrow.name.clone(),
                        slot,
                    });
                }
            }
        }
        Ok(())
    }

    /// Degrees of all arrows, in arrow order.
    pub fn degrees(&self) -> Vec<i64> {
        self.quiver.arrows.iter().map(|a| a.degree).collect()
    }
}

/// Free-function form of [`GentlePresentation::validate`].
pub fn validate_gentle(pres: &GentlePresentation) -> Result<(), GentleError> {
    pres.validate()
}
