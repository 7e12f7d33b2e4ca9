//! Arc systems on marked surfaces with boundary, their translation into
//! graded gentle presentations, and the reverse reconstruction of surface
//! invariants from a presentation.
//!
//! The combinatorial model: each marked point carries a linear fan of
//! incident arc ends (read boundary-to-boundary), and each gap between
//! consecutive fan ends carries one oriented angle with an integer degree.
//! Gaps become arrows, and two composable arrows survive in the algebra
//! exactly when the first arrives at the same arc end the second departs
//! from.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use crate::path::Algebra;
use crate::quiver::{Arrow, ArrowId, GentlePresentation, GradedQuiver};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedPoint {
    pub name: String,
    /// Tag naming the boundary component the point lies on.
    pub boundary: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcDecl {
    pub name: String,
    /// Marked-point index of each end of the arc.
    pub ends: [usize; 2],
}

/// One end of one arc; `end` selects between the arc's two endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ArcEnd {
    pub arc: usize,
    pub end: u8,
}

/// The fan at a marked point: incident arc ends in order from the
/// outgoing boundary side to the incoming one, with one degree label per
/// gap between consecutive ends.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Fan {
    pub ends: Vec<ArcEnd>,
    pub gap_degrees: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcSystem {
    pub points: Vec<MarkedPoint>,
    pub arcs: Vec<ArcDecl>,
    /// One fan per point, same indexing as `points`.
    pub fans: Vec<Fan>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceInvariants {
    pub genus: usize,
    pub boundary_components: usize,
    /// Sorted multiset of marked-point counts, one entry per boundary
    /// component.
    pub marked_per_boundary: Vec<usize>,
    pub euler_characteristic: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceError {
    DuplicateName(String),
    FanCountMismatch { fans: usize, points: usize },
    ArcEndPointOutOfRange { arc: usize },
    EndOutOfRange { point: usize },
    /// An arc end sits in the fan of a point that is not its declared
    /// endpoint.
    EndMisplaced { arc: usize, end: u8, point: usize },
    EndMissing { arc: usize, end: u8 },
    EndRepeated { arc: usize, end: u8 },
    GapDegreeCount { point: usize, expected: usize, found: usize },
    /// A face with no boundary segment; labeled by its angle gaps.
    InteriorFace { gaps: Vec<String> },
    /// Declared boundary tags disagree with the traced boundary cycles.
    BoundaryMismatch { detail: String },
    UnsupportedFamily { genus: usize, marked: usize },
    /// The data does not assemble into an orientable marked surface; this
    /// indicates corrupted input rather than a user mistake.
    Inconsistent(String),
}

impl fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceError::DuplicateName(n) => write!(f, "duplicate name {n:?}"),
            SurfaceError::FanCountMismatch { fans, points } => {
                write!(f, "{fans} fans declared for {points} points")
            }
            SurfaceError::ArcEndPointOutOfRange { arc } => {
                write!(f, "arc {arc} references a point outside the list")
            }
            SurfaceError::EndOutOfRange { point } => {
                write!(f, "fan of point {point} references a missing arc end")
            }
            SurfaceError::EndMisplaced { arc, end, point } => write!(
                f,
                "end {end} of arc {arc} appears in the fan of point {point}, \
                 which is not its declared endpoint"
            ),
            SurfaceError::EndMissing { arc, end } => {
                write!(f, "end {end} of arc {arc} appears in no fan")
            }
            SurfaceError::EndRepeated { arc, end } => {
                write!(f, "end {end} of arc {arc} appears in more than one fan")
            }
            SurfaceError::GapDegreeCount {
                point,
                expected,
                found,
            } => write!(
                f,
                "fan of point {point} needs {expected} gap degrees, found {found}"
            ),
            SurfaceError::InteriorFace { gaps } => write!(
                f,
                "face through angles [{}] has no boundary segment",
                gaps.join(", ")
            ),
            SurfaceError::BoundaryMismatch { detail } => {
                write!(f, "boundary tags disagree with the traced boundary: {detail}")
            }
            SurfaceError::UnsupportedFamily { genus, marked } => write!(
                f,
                "no built-in family with genus {genus} and {marked} marked points"
            ),
            SurfaceError::Inconsistent(s) => write!(f, "inconsistent surface data: {s}"),
        }
    }
}

/// Rotation data shared by explicit arc systems and reconstructions: ends
/// get global ids in (point order, fan position) order.
pub(crate) struct Rotation {
    /// Per point: global end ids in fan order.
    pub fans: Vec<Vec<usize>>,
    /// Per end: (point, position in fan).
    pub position: Vec<(usize, usize)>,
    /// Per end: the other end of the same arc.
    pub other: Vec<usize>,
    pub num_arcs: usize,
    /// Human-readable gap label, for face error messages.
    pub point_names: Vec<String>,
}

struct Traced {
    /// Per point: the point reached by crossing its incoming segment.
    boundary_next: Vec<usize>,
    /// Faces with no boundary segment, each listed by (point, gap index).
    closed_faces: Vec<Vec<(usize, usize)>>,
    num_faces: usize,
}

/// Walks every face of the rotation. Faces that meet the boundary close
/// over exactly one derived segment; the rest are interior.
fn trace(rot: &Rotation) -> Traced {
    let npoints = rot.fans.len();
    // Corner t at point P pairs fan slots t-1 and t (boundary tokens at
    // the two ends). A step leaves along the left element's arc.
    let mut visited: Vec<Vec<bool>> = rot
        .fans
        .iter()
        .map(|fan| vec![false; fan.len() + 1])
        .collect();
    let mut boundary_next = vec![0usize; npoints];
    let mut num_faces = 0usize;
    #[allow(clippy::needless_range_loop)] // `start` also seeds the walk below
    for start in 0..npoints {
        let mut p = start;
        let mut t = rot.fans[start].len();
        loop {
            visited[p][t] = true;
            if t == 0 {
                break;
            }
            let x = rot.fans[p][t - 1];
            let y = rot.other[x];
            let (q, pos) = rot.position[y];
            p = q;
            t = pos;
        }
        boundary_next[start] = p;
        num_faces += 1;
    }
    let mut closed_faces = Vec::new();
    for p0 in 0..npoints {
        for t0 in 1..rot.fans[p0].len() {
            if visited[p0][t0] {
                continue;
            }
            let mut face = Vec::new();
            let (mut p, mut t) = (p0, t0);
            loop {
                visited[p][t] = true;
                face.push((p, t - 1));
                let x = rot.fans[p][t - 1];
                let y = rot.other[x];
                let (q, pos) = rot.position[y];
                p = q;
                t = pos;
                if (p, t) == (p0, t0) {
                    break;
                }
            }
            closed_faces.push(face);
            num_faces += 1;
        }
    }
    Traced {
        boundary_next,
        closed_faces,
        num_faces,
    }
}

/// Invariants from a rotation whose faces have been traced.
fn invariants_from_trace(rot: &Rotation, traced: &Traced) -> Result<SurfaceInvariants, SurfaceError> {
    let npoints = rot.fans.len();
    // One segment per point (its incoming side), so
    // chi = points - (arcs + points) + faces.
    let chi = traced.num_faces as i64 - rot.num_arcs as i64;
    let mut seen = vec![false; npoints];
    let mut cycles: Vec<usize> = Vec::new();
    for s in 0..npoints {
        if seen[s] {
            continue;
        }
        let mut len = 0usize;
        let mut p = s;
        while !seen[p] {
            seen[p] = true;
            len += 1;
            p = traced.boundary_next[p];
        }
        cycles.push(len);
    }
    let b = cycles.len();
    let two_g = 2 - b as i64 - chi;
    if two_g < 0 || two_g % 2 != 0 {
        return Err(SurfaceError::Inconsistent(format!(
            "euler characteristic {chi} with {b} boundary components"
        )));
    }
    cycles.sort_unstable();
    Ok(SurfaceInvariants {
        genus: (two_g / 2) as usize,
        boundary_components: b,
        marked_per_boundary: cycles,
        euler_characteristic: chi,
    })
}

/// Boundary cycles of points, for comparing against declared tags.
fn boundary_cycles(traced: &Traced, npoints: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; npoints];
    let mut cycles = Vec::new();
    for s in 0..npoints {
        if seen[s] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut p = s;
        while !seen[p] {
            seen[p] = true;
            cycle.push(p);
            p = traced.boundary_next[p];
        }
        cycles.push(cycle);
    }
    cycles
}

impl ArcSystem {
    fn rotation(&self) -> Result<Rotation, SurfaceError> {
        let mut fans: Vec<Vec<usize>> = Vec::with_capacity(self.points.len());
        let mut position: Vec<(usize, usize)> = Vec::new();
        let mut arc_ends: Vec<[Option<usize>; 2]> = vec![[None, None]; self.arcs.len()];
        let mut ends_flat: Vec<ArcEnd> = Vec::new();
        for (pi, fan) in self.fans.iter().enumerate() {
            let mut ids = Vec::with_capacity(fan.ends.len());
            for (pos, &e) in fan.ends.iter().enumerate() {
                if e.arc >= self.arcs.len() || e.end > 1 {
                    return Err(SurfaceError::EndOutOfRange { point: pi });
                }
                if self.arcs[e.arc].ends[e.end as usize] != pi {
                    return Err(SurfaceError::EndMisplaced {
                        arc: e.arc,
                        end: e.end,
                        point: pi,
                    });
                }
                let slot = &mut arc_ends[e.arc][e.end as usize];
                if slot.is_some() {
                    return Err(SurfaceError::EndRepeated {
                        arc: e.arc,
                        end: e.end,
                    });
                }
                let id = ends_flat.len();
                *slot = Some(id);
                ends_flat.push(e);
                position.push((pi, pos));
                ids.push(id);
            }
            fans.push(ids);
        }
        for (ai, slots) in arc_ends.iter().enumerate() {
            for end in 0..2u8 {
                if slots[end as usize].is_none() {
                    return Err(SurfaceError::EndMissing { arc: ai, end });
                }
            }
        }
        let other: Vec<usize> = ends_flat
            .iter()
            .map(|e| arc_ends[e.arc][1 - e.end as usize].expect("both ends placed"))
            .collect();
        Ok(Rotation {
            fans,
            position,
            other,
            num_arcs: self.arcs.len(),
            point_names: self.points.iter().map(|p| p.name.clone()).collect(),
        })
    }

    /// Structural checks plus the full-formality test: every face of the
    /// described surface must touch the boundary, and the declared
    /// boundary tags must match the traced boundary cycles.
    pub fn validate(&self) -> Result<(), SurfaceError> {
        let mut names: BTreeMap<&str, ()> = BTreeMap::new();
        for p in &self.points {
            if names.insert(&p.name, ()).is_some() {
                return Err(SurfaceError::DuplicateName(p.name.clone()));
            }
        }
        let mut arc_names: BTreeMap<&str, ()> = BTreeMap::new();
        for (ai, a) in self.arcs.iter().enumerate() {
            if arc_names.insert(&a.name, ()).is_some() {
                return Err(SurfaceError::DuplicateName(a.name.clone()));
            }
            if a.ends.iter().any(|&p| p >= self.points.len()) {
                return Err(SurfaceError::ArcEndPointOutOfRange { arc: ai });
            }
        }
        if self.fans.len() != self.points.len() {
            return Err(SurfaceError::FanCountMismatch {
                fans: self.fans.len(),
                points: self.points.len(),
            });
        }
        for (pi, fan) in self.fans.iter().enumerate() {
            let expected = fan.ends.len().saturating_sub(1);
            if fan.gap_degrees.len() != expected {
                return Err(SurfaceError::GapDegreeCount {
                    point: pi,
                    expected,
                    found: fan.gap_degrees.len(),
                });
            }
        }
        let rot = self.rotation()?;
        let traced = trace(&rot);
        if let Some(face) = traced.closed_faces.first() {
            return Err(SurfaceError::InteriorFace {
                gaps: face
                    .iter()
                    .map(|&(p, g)| format!("{}.{}", rot.point_names[p], g))
                    .collect(),
            });
        }
        // Tag partition must equal the traced cycle partition.
        let cycles = boundary_cycles(&traced, self.points.len());
        let mut tag_of_cycle: BTreeMap<&str, usize> = BTreeMap::new();
        for (ci, cycle) in cycles.iter().enumerate() {
            let tag = self.points[cycle[0]].boundary.as_str();
            for &p in cycle {
                if self.points[p].boundary != tag {
                    return Err(SurfaceError::BoundaryMismatch {
                        detail: format!(
                            "points {:?} and {:?} lie on one traced component but \
                             carry tags {:?} and {:?}",
                            self.points[cycle[0]].name,
                            self.points[p].name,
                            tag,
                            self.points[p].boundary
                        ),
                    });
                }
            }
            if tag_of_cycle.insert(tag, ci).is_some() {
                return Err(SurfaceError::BoundaryMismatch {
                    detail: format!(
                        "tag {tag:?} spans more than one traced boundary component"
                    ),
                });
            }
        }
        Ok(())
    }

    /// Surface invariants of a valid arc system.
    pub fn invariants(&self) -> Result<SurfaceInvariants, SurfaceError> {
        self.validate()?;
        let rot = self.rotation()?;
        let traced = trace(&rot);
        invariants_from_trace(&rot, &traced)
    }
}

/// Translates an arc system into a graded gentle presentation: vertices
/// are arcs, each fan gap becomes one arrow (named `point.gap`) running
/// from the later end's arc to the earlier end's arc, and a composable
/// pair of arrows is a relation exactly when it switches ends of the
/// middle arc.
pub fn arc_system_to_algebra(sys: &ArcSystem) -> Result<GentlePresentation, SurfaceError> {
    sys.validate()?;
    let rot = sys.rotation()?;
    let vertex_names: Vec<String> = sys.arcs.iter().map(|a| a.name.clone()).collect();
    let mut arrows: Vec<Arrow> = Vec::new();
    // Per arrow, the global end id it departs from / arrives at.
    let mut departs: Vec<usize> = Vec::new();
    let mut arrives: Vec<usize> = Vec::new();
    for (pi, fan) in sys.fans.iter().enumerate() {
        for gap in 0..fan.ends.len().saturating_sub(1) {
            let near = rot.fans[pi][gap];
            let far = rot.fans[pi][gap + 1];
            arrows.push(Arrow {
                name: format!("{}.{}", sys.points[pi].name, gap),
                source: fan.ends[gap + 1].arc,
                target: fan.ends[gap].arc,
                degree: fan.gap_degrees[gap],
            });
            departs.push(far);
            arrives.push(near);
        }
    }
    let mut relations = alloc::collections::BTreeSet::new();
    for (f, af) in arrows.iter().enumerate() {
        for (g, ag) in arrows.iter().enumerate() {
            if af.target == ag.source && arrives[f] != departs[g] {
                relations.insert((f as ArrowId, g as ArrowId));
            }
        }
    }
    let pres = GentlePresentation {
        quiver: GradedQuiver {
            vertex_names,
            arrows,
        },
        relations,
    };
    pres.validate()
        .map_err(|e| SurfaceError::Inconsistent(format!("derived presentation: {e}")))?;
    Ok(pres)
}

/// End assignment reconstructed from a finite-dimensional algebra: each
/// vertex is an arc with two ends, an incoming and an outgoing arrow
/// share an end exactly when their product survives, and ends chain into
/// fans through the arrows.
pub(crate) struct EndModel {
    pub rot: Rotation,
    /// Per arrow: global id of the end it departs from.
    pub departs: Vec<usize>,
    /// Per arrow: global id of the end it arrives at.
    pub arrives: Vec<usize>,
    /// Per end: 0 on the earlier end of each arc (in global end order).
    pub sigma: Vec<i64>,
}

pub(crate) fn reconstruct(alg: &Algebra) -> Result<EndModel, SurfaceError> {
    let q = &alg.presentation().quiver;
    let nv = q.num_vertices();
    // Ports: per vertex, up to two (incoming, outgoing) slots.
    #[derive(Clone)]
    struct Port {
        inc: Option<ArrowId>,
        out: Option<ArrowId>,
    }
    let mut ports_of: Vec<Vec<Port>> = Vec::with_capacity(nv);
    for v in 0..nv {
        let ins = alg.arrows_into(v);
        let outs = alg.arrows_out_of(v);
        let mut ports: Vec<Port> = Vec::new();
        let mut used_out: Vec<ArrowId> = Vec::new();
        for &f in &ins {
            let cont = alg.allowed_after(f).filter(|g| q.arrows[*g].source == v);
            if let Some(g) = cont {
                used_out.push(g);
            }
            ports.push(Port {
                inc: Some(f),
                out: cont,
            });
        }
        for &g in &outs {
            if !used_out.contains(&g) {
                ports.push(Port {
                    inc: None,
                    out: Some(g),
                });
            }
        }
        if ports.len() > 2 {
            return Err(SurfaceError::Inconsistent(format!(
                "vertex {} needs {} arc ends",
                q.vertex_names[v],
                ports.len()
            )));
        }
        while ports.len() < 2 {
            ports.push(Port {
                inc: None,
                out: None,
            });
        }
        ports.sort_by_key(|p| p.inc.or(p.out).unwrap_or(usize::MAX));
        ports_of.push(ports);
    }
    // Flat provisional end ids: vertex v, port k -> 2v + k.
    let end_of_in: BTreeMap<ArrowId, usize> = (0..nv)
        .flat_map(|v| {
            ports_of[v]
                .iter()
                .enumerate()
                .filter_map(move |(k, p)| p.inc.map(|f| (f, 2 * v + k)))
        })
        .collect();
    let end_of_out: BTreeMap<ArrowId, usize> = (0..nv)
        .flat_map(|v| {
            ports_of[v]
                .iter()
                .enumerate()
                .filter_map(move |(k, p)| p.out.map(|f| (f, 2 * v + k)))
        })
        .collect();
    // Fan chains: the end an arrow arrives at immediately precedes the
    // end it departs from.
    let n_ends = 2 * nv;
    let mut succ: Vec<Option<usize>> = vec![None; n_ends];
    let mut has_pred = vec![false; n_ends];
    for f in 0..q.arrows.len() {
        let from = end_of_in[&f];
        let to = end_of_out[&f];
        succ[from] = Some(to);
        has_pred[to] = true;
    }
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut placed = vec![false; n_ends];
    for start in 0..n_ends {
        if has_pred[start] {
            continue;
        }
        let mut chain = vec![start];
        placed[start] = true;
        let mut cur = start;
        while let Some(next) = succ[cur] {
            chain.push(next);
            placed[next] = true;
            cur = next;
        }
        chains.push(chain);
    }
    if placed.iter().any(|&p| !p) {
        return Err(SurfaceError::Inconsistent(
            "arc ends chain into a cycle".to_string(),
        ));
    }
    // Deterministic point order: chains with arrows first, keyed by their
    // smallest incident arrow; bare ends afterwards by provisional id.
    let chain_key = |chain: &Vec<usize>| -> (u8, usize) {
        let mut min_arrow = usize::MAX;
        for &e in chain {
            let (v, k) = (e / 2, e % 2);
            let p = &ports_of[v][k];
            for f in [p.inc, p.out].into_iter().flatten() {
                min_arrow = min_arrow.min(f);
            }
        }
        if min_arrow == usize::MAX {
            (1, chain[0])
        } else {
            (0, min_arrow)
        }
    };
    chains.sort_by_key(chain_key);
    // Re-id ends in (chain order, position) order.
    let mut global_of = vec![usize::MAX; n_ends];
    let mut fans: Vec<Vec<usize>> = Vec::with_capacity(chains.len());
    let mut position: Vec<(usize, usize)> = Vec::new();
    for (pi, chain) in chains.iter().enumerate() {
        let mut ids = Vec::with_capacity(chain.len());
        for (pos, &e) in chain.iter().enumerate() {
            let id = position.len();
            global_of[e] = id;
            position.push((pi, pos));
            ids.push(id);
        }
        fans.push(ids);
    }
    // Provisional ids pair arc ends as 2v and 2v+1.
    let mut other = vec![usize::MAX; n_ends];
    for e in 0..n_ends {
        other[global_of[e]] = global_of[e ^ 1];
    }
    let sigma: Vec<i64> = (0..n_ends)
        .map(|id| if id < other[id] { 0 } else { 1 })
        .collect();
    let departs: Vec<usize> = (0..q.arrows.len())
        .map(|f| global_of[end_of_out[&f]])
        .collect();
    let arrives: Vec<usize> = (0..q.arrows.len())
        .map(|f| global_of[end_of_in[&f]])
        .collect();
    let point_names: Vec<String> = (0..chains.len()).map(|i| format!("m{i}")).collect();
    Ok(EndModel {
        rot: Rotation {
            fans,
            position,
            other,
            num_arcs: nv,
            point_names,
        },
        departs,
        arrives,
        sigma,
    })
}

/// Surface invariants of the marked surface a finite-dimensional gentle
/// algebra dissects. Faces that never meet the boundary (dissections
/// with interior polygons) are counted as faces; they simply make the
/// dissection non-minimal.
pub fn algebra_to_surface_invariants(alg: &Algebra) -> Result<SurfaceInvariants, SurfaceError> {
    let model = reconstruct(alg)?;
    let traced = trace(&model.rot);
    invariants_from_trace(&model.rot, &traced)
}

/// A genus-`g` surface with one boundary component.
///
/// * `marked = 1`: one marked point, `2g` loop arcs; the fan runs
///   h1,v1,h1,v1,h2,v2,... with each handle contributing two arcs.
/// * `marked = 2`: two marked points, `2g+1` parallel arcs numbered
///   `1..=2g+1`, each fan listing them in descending order.
///
/// All gap degrees are zero; set them on the returned fans as needed.
pub fn genus_family(g: usize, marked: usize) -> Result<ArcSystem, SurfaceError> {
    if g == 0 || !(marked == 1 || marked == 2) {
        return Err(SurfaceError::UnsupportedFamily { genus: g, marked });
    }
    match marked {
        1 => {
            let points = vec![MarkedPoint {
                name: "p".to_string(),
                boundary: "b0".to_string(),
            }];
            let mut arcs = Vec::new();
            for i in 1..=g {
                arcs.push(ArcDecl {
                    name: format!("{}", 2 * i - 1),
                    ends: [0, 0],
                });
                arcs.push(ArcDecl {
                    name: format!("{}", 2 * i),
                    ends: [0, 0],
                });
            }
            let mut ends = Vec::new();
            for i in 0..g {
                let v = 2 * i;
                let h = 2 * i + 1;
                ends.push(ArcEnd { arc: h, end: 0 });
                ends.push(ArcEnd { arc: v, end: 0 });
                ends.push(ArcEnd { arc: h, end: 1 });
                ends.push(ArcEnd { arc: v, end: 1 });
            }
            let gap_degrees = vec![0; ends.len() - 1];
            Ok(ArcSystem {
                points,
                arcs,
                fans: vec![Fan { ends, gap_degrees }],
            })
        }
        _ => {
            let points = vec![
                MarkedPoint {
                    name: "p".to_string(),
                    boundary: "b0".to_string(),
                },
                MarkedPoint {
                    name: "q".to_string(),
                    boundary: "b0".to_string(),
                },
            ];
            let n = 2 * g + 1;
            let arcs: Vec<ArcDecl> = (0..n)
                .map(|i| ArcDecl {
                    name: format!("{}", i + 1),
                    ends: [0, 1],
                })
                .collect();
            let fan_at = |end: u8| -> Fan {
                let ends: Vec<ArcEnd> = (0..n)
                    .rev()
                    .map(|arc| ArcEnd { arc, end })
                    .collect();
                Fan {
                    gap_degrees: vec![0; n - 1],
                    ends,
                }
            };
            Ok(ArcSystem {
                points,
                arcs,
                fans: vec![fan_at(0), fan_at(1)],
            })
        }
    }
}

/// Closed walks generating the cycle space of a built-in family, as
/// (arrow name, direct?) steps. Two per handle for one marked point; one
/// up-and-back pair per fan gap for two marked points.
pub fn genus_family_cycles(g: usize, marked: usize) -> Result<Vec<Vec<(String, bool)>>, SurfaceError> {
    if g == 0 || !(marked == 1 || marked == 2) {
        return Err(SurfaceError::UnsupportedFamily { genus: g, marked });
    }
    let mut cycles = Vec::new();
    if marked == 1 {
        for i in 1..=g {
            let c = format!("p.{}", 4 * i - 4);
            let b = format!("p.{}", 4 * i - 3);
            let a = format!("p.{}", 4 * i - 2);
            cycles.push(vec![(a, true), (b.clone(), true)]);
            cycles.push(vec![(c, true), (b, true)]);
        }
    } else {
        for j in 0..2 * g {
            cycles.push(vec![(format!("p.{j}"), true), (format!("q.{j}"), false)]);
        }
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::GentlePresentation;
    use crate::scenario;

    fn invariants(genus: usize, b: usize, marked: &[usize], chi: i64) -> SurfaceInvariants {
        SurfaceInvariants {
            genus,
            boundary_components: b,
            marked_per_boundary: marked.to_vec(),
            euler_characteristic: chi,
        }
    }

    /// Structural comparison after renaming arrows of `got`.
    fn assert_same_presentation(
        got: &GentlePresentation,
        expected: &GentlePresentation,
        rename: &[(&str, &str)],
    ) {
        assert_eq!(got.quiver.vertex_names, expected.quiver.vertex_names);
        assert_eq!(got.quiver.arrows.len(), expected.quiver.arrows.len());
        let renamed = |n: &str| -> String {
            rename
                .iter()
                .find(|(from, _)| *from == n)
                .map(|(_, to)| to.to_string())
                .unwrap_or_else(|| n.to_string())
        };
        for arrow in &got.quiver.arrows {
            let name = renamed(&arrow.name);
            let id = expected
                .quiver
                .arrow_id(&name)
                .unwrap_or_else(|| panic!("unexpected arrow {name}"));
            let want = &expected.quiver.arrows[id];
            assert_eq!((arrow.source, arrow.target, arrow.degree), (want.source, want.target, want.degree), "arrow {name}");
        }
        let got_relations: alloc::collections::BTreeSet<(String, String)> = got
            .relations
            .iter()
            .map(|&(f, g)| {
                (
                    renamed(&got.quiver.arrows[f].name),
                    renamed(&got.quiver.arrows[g].name),
                )
            })
            .collect();
        let want_relations: alloc::collections::BTreeSet<(String, String)> = expected
            .relations
            .iter()
            .map(|&(f, g)| {
                (
                    expected.quiver.arrows[f].name.clone(),
                    expected.quiver.arrows[g].name.clone(),
                )
            })
            .collect();
        assert_eq!(got_relations, want_relations);
    }

    #[test]
    fn one_point_torus_reproduces_the_two_vertex_presentation() {
        let mut sys = genus_family(1, 1).unwrap();
        sys.fans[0].gap_degrees = vec![0, 1, 0];
        let got = arc_system_to_algebra(&sys).unwrap();
        assert_same_presentation(
            &got,
            &scenario::two_vertex_presentation(),
            &[("p.0", "c"), ("p.1", "b"), ("p.2", "a")],
        );
    }

    #[test]
    fn two_point_torus_reproduces_the_three_vertex_presentation() {
        let sys = genus_family(1, 2).unwrap();
        let got = arc_system_to_algebra(&sys).unwrap();
        assert_same_presentation(
            &got,
            &scenario::three_vertex_presentation(),
            &[
                ("p.0", "a2"),
                ("p.1", "a1"),
                ("q.0", "b2"),
                ("q.1", "b1"),
            ],
        );
    }

    #[test]
    fn family_invariants_match_their_construction() {
        for (g, marked, want_marked) in [(1, 1, vec![1]), (1, 2, vec![2]), (2, 1, vec![1]), (2, 2, vec![2]), (3, 2, vec![2])] {
            let sys = genus_family(g, marked).unwrap();
            let inv = sys.invariants().unwrap();
            let chi = 2 - 2 * g as i64 - 1;
            assert_eq!(
                inv,
                invariants(g, 1, &want_marked, chi),
                "family g={g} marked={marked}"
            );
            // The reconstruction from the derived algebra agrees.
            let alg = Algebra::new(arc_system_to_algebra(&sys).unwrap()).unwrap();
            assert_eq!(algebra_to_surface_invariants(&alg).unwrap(), inv);
        }
        assert_eq!(
            genus_family(0, 1),
            Err(SurfaceError::UnsupportedFamily { genus: 0, marked: 1 })
        );
        assert_eq!(
            genus_family(1, 3),
            Err(SurfaceError::UnsupportedFamily { genus: 1, marked: 3 })
        );
    }

    #[test]
    fn reconstruction_of_builtin_presentations() {
        let alg2 = Algebra::new(scenario::two_vertex_presentation()).unwrap();
        assert_eq!(
            algebra_to_surface_invariants(&alg2).unwrap(),
            invariants(1, 1, &[1], -1)
        );
        let alg3 = Algebra::new(scenario::three_vertex_presentation()).unwrap();
        assert_eq!(
            algebra_to_surface_invariants(&alg3).unwrap(),
            invariants(1, 1, &[2], -1)
        );
    }

    #[test]
    fn small_algebras_give_disks() {
        // A single arrow: a disk with three marked points, three faces.
        let a2 = GentlePresentation::from_names(&["1", "2"], &[("f", "1", "2", 0)], &[]).unwrap();
        let alg = Algebra::new(a2).unwrap();
        assert_eq!(
            algebra_to_surface_invariants(&alg).unwrap(),
            invariants(0, 1, &[3], 1)
        );
        // No arrows at all: one arc splitting a disk, two marked points.
        let point = GentlePresentation::from_names(&["1"], &[], &[]).unwrap();
        let alg1 = Algebra::new(point).unwrap();
        assert_eq!(
            algebra_to_surface_invariants(&alg1).unwrap(),
            invariants(0, 1, &[2], 1)
        );
    }

    #[test]
    fn fully_forbidden_cycle_yields_an_interior_face() {
        // Three arcs forming an inscribed triangle in a disk: the middle
        // face never touches the boundary. The invariants still close up,
        // with the extra face counted.
        let pres = GentlePresentation::from_names(
            &["1", "2", "3"],
            &[("x", "1", "2", 0), ("y", "2", "3", 0), ("z", "3", "1", 0)],
            &[("x", "y"), ("y", "z"), ("z", "x")],
        )
        .unwrap();
        let alg = Algebra::new(pres).unwrap();
        assert_eq!(
            algebra_to_surface_invariants(&alg).unwrap(),
            invariants(0, 1, &[3], 1)
        );
        // The same dissection declared explicitly fails full formality.
        let sys = ArcSystem {
            points: vec![
                MarkedPoint { name: "p0".into(), boundary: "b0".into() },
                MarkedPoint { name: "p1".into(), boundary: "b0".into() },
                MarkedPoint { name: "p2".into(), boundary: "b0".into() },
            ],
            arcs: vec![
                ArcDecl { name: "A".into(), ends: [0, 1] },
                ArcDecl { name: "B".into(), ends: [1, 2] },
                ArcDecl { name: "C".into(), ends: [2, 0] },
            ],
            fans: vec![
                Fan { ends: vec![ArcEnd { arc: 0, end: 0 }, ArcEnd { arc: 2, end: 1 }], gap_degrees: vec![0] },
                Fan { ends: vec![ArcEnd { arc: 1, end: 0 }, ArcEnd { arc: 0, end: 1 }], gap_degrees: vec![0] },
                Fan { ends: vec![ArcEnd { arc: 2, end: 0 }, ArcEnd { arc: 1, end: 1 }], gap_degrees: vec![0] },
            ],
        };
        match sys.validate() {
            Err(SurfaceError::InteriorFace { gaps }) => {
                assert_eq!(gaps.len(), 3, "triangle face has three angles: {gaps:?}");
            }
            other => panic!("expected an interior face, got {other:?}"),
        }
    }

    #[test]
    fn structural_validation_errors() {
        let mut sys = genus_family(1, 2).unwrap();
        // Remove one end from a fan: its arc end is no longer placed.
        let removed = sys.fans[0].ends.remove(0);
        sys.fans[0].gap_degrees.pop();
        assert_eq!(
            sys.validate(),
            Err(SurfaceError::EndMissing { arc: removed.arc, end: removed.end })
        );
        let mut sys2 = genus_family(1, 2).unwrap();
        sys2.fans[0].gap_degrees.pop();
        assert!(matches!(
            sys2.validate(),
            Err(SurfaceError::GapDegreeCount { .. })
        ));
        // Splitting a one-component boundary into two declared tags fails.
        let mut sys3 = genus_family(1, 2).unwrap();
        sys3.points[1].boundary = "b1".to_string();
        assert!(matches!(
            sys3.validate(),
            Err(SurfaceError::BoundaryMismatch { .. })
        ));
    }
}
