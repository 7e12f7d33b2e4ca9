//! On-disk TOML formats: presentations, arc systems, twisted complexes,
//! and words. Each file names its schema; emitters are canonical, so
//! emit(parse(emit(x))) reproduces emit(x) byte for byte.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use gentle_core::complex::TwistedComplex;
use gentle_core::path::Algebra;
use gentle_core::quiver::GentlePresentation;
use gentle_core::surface::{ArcDecl, ArcEnd, ArcSystem, Fan, MarkedPoint};
use gentle_core::word::{Letter, StringWord};

pub const PRESENTATION_SCHEMA: &str = "gentle.presentation/1";
pub const ARC_SYSTEM_SCHEMA: &str = "gentle.arc-system/1";
pub const COMPLEX_SCHEMA: &str = "gentle.complex/1";
pub const WORD_SCHEMA: &str = "gentle.word/1";

/// Serializes any of the file structs with a canonical layout.
pub fn emit<T: Serialize>(value: &T) -> String {
    let mut s = toml::to_string(value).expect("file structs serialize to TOML");
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn check_schema(found: &str, expected: &str) -> Result<()> {
    if found != expected {
        bail!("unsupported schema {found:?}, expected {expected:?}");
    }
    Ok(())
}

// ---------------------------------------------------------------------
// gentle.presentation/1

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub schema: String,
    pub vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arrows: Vec<ArrowFileDecl>,
    /// Pairs `[f, g]` meaning the composite "f then g" vanishes.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowFileDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub degree: i64,
}

pub fn parse_presentation(text: &str) -> Result<PresentationFile> {
    let f: PresentationFile = toml::from_str(text).context("malformed presentation file")?;
    check_schema(&f.schema, PRESENTATION_SCHEMA)?;
    Ok(f)
}

impl PresentationFile {
    pub fn from_core(pres: &GentlePresentation) -> Self {
        let q = &pres.quiver;
        PresentationFile {
            schema: PRESENTATION_SCHEMA.to_string(),
            vertices: q.vertex_names.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|a| ArrowFileDecl {
                    name: a.name.clone(),
                    source: q.vertex_names[a.source].clone(),
                    target: q.vertex_names[a.target].clone(),
                    degree: a.degree,
                })
                .collect(),
            relations: pres
                .relations
                .iter()
                .map(|&(f, g)| (q.arrows[f].name.clone(), q.arrows[g].name.clone()))
                .collect(),
        }
    }

    pub fn to_core(&self) -> Result<GentlePresentation> {
        let vertices: Vec<&str> = self.vertices.iter().map(|s| s.as_str()).collect();
        let arrows: Vec<(&str, &str, &str, i64)> = self
            .arrows
            .iter()
            .map(|a| (a.name.as_str(), a.source.as_str(), a.target.as_str(), a.degree))
            .collect();
        let relations: Vec<(&str, &str)> = self
            .relations
            .iter()
            .map(|(f, g)| (f.as_str(), g.as_str()))
            .collect();
        GentlePresentation::from_names(&vertices, &arrows, &relations)
            .map_err(|e| anyhow!("not a gentle presentation: {e}"))
    }
}

// ---------------------------------------------------------------------
// gentle.arc-system/1

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcSystemFile {
    pub schema: String,
    pub points: Vec<PointFileDecl>,
    pub arcs: Vec<ArcFileDecl>,
    /// One fan per marked point, in any order; entries sweep the arc
    /// ends at that point from the boundary-out side to the boundary-in
    /// side, and `degrees` has one value per gap between neighbours.
    pub fans: Vec<FanFileDecl>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointFileDecl {
    pub name: String,
    pub boundary: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcFileDecl {
    pub name: String,
    /// Marked point names of the two endpoints (end 0, end 1).
    pub ends: (String, String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFileDecl {
    pub point: String,
    /// `[arc-name, end-index]` pairs.
    pub ends: Vec<(String, u8)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub degrees: Vec<i64>,
}

pub fn parse_arc_system(text: &str) -> Result<ArcSystemFile> {
    let f: ArcSystemFile = toml::from_str(text).context("malformed arc system file")?;
    check_schema(&f.schema, ARC_SYSTEM_SCHEMA)?;
    Ok(f)
}

impl ArcSystemFile {
    pub fn from_core(sys: &ArcSystem) -> Self {
        ArcSystemFile {
            schema: ARC_SYSTEM_SCHEMA.to_string(),
            points: sys
                .points
                .iter()
                .map(|p| PointFileDecl {
                    name: p.name.clone(),
                    boundary: p.boundary.clone(),
                })
                .collect(),
            arcs: sys
                .arcs
                .iter()
                .map(|a| ArcFileDecl {
                    name: a.name.clone(),
                    ends: (
                        sys.points[a.ends[0]].name.clone(),
                        sys.points[a.ends[1]].name.clone(),
                    ),
                })
                .collect(),
            fans: sys
                .points
                .iter()
                .zip(&sys.fans)
                .map(|(p, fan)| FanFileDecl {
                    point: p.name.clone(),
                    ends: fan
                        .ends
                        .iter()
                        .map(|e| (sys.arcs[e.arc].name.clone(), e.end))
                        .collect(),
                    degrees: fan.gap_degrees.clone(),
                })
                .collect(),
        }
    }

    pub fn to_core(&self) -> Result<ArcSystem> {
        let point_index = |name: &str| {
            self.points
                .iter()
                .position(|p| p.name == name)
                .ok_or_else(|| anyhow!("unknown marked point {name:?}"))
        };
        let arc_index = |name: &str| {
            self.arcs
                .iter()
                .position(|a| a.name == name)
                .ok_or_else(|| anyhow!("unknown arc {name:?}"))
        };

        let points: Vec<MarkedPoint> = self
            .points
            .iter()
            .map(|p| MarkedPoint {
                name: p.name.clone(),
                boundary: p.boundary.clone(),
            })
            .collect();
        let arcs = self
            .arcs
            .iter()
            .map(|a| {
                Ok(ArcDecl {
                    name: a.name.clone(),
                    ends: [point_index(&a.ends.0)?, point_index(&a.ends.1)?],
                })
            })
            .collect::<Result<Vec<_>>>()?;

        // Fans may be listed in any order in the file; the in-memory
        // system keeps them aligned with the point list.
        let mut fans: Vec<Option<Fan>> = vec![None; self.points.len()];
        for f in &self.fans {
            let pi = point_index(&f.point)?;
            if fans[pi].is_some() {
                bail!("two fans declared for marked point {:?}", f.point);
            }
            let ends = f
                .ends
                .iter()
                .map(|(arc, end)| {
                    Ok(ArcEnd {
                        arc: arc_index(arc)?,
                        end: *end,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            fans[pi] = Some(Fan {
                ends,
                gap_degrees: f.degrees.clone(),
            });
        }
        let fans = fans
            .into_iter()
            .enumerate()
            .map(|(i, f)| f.ok_or_else(|| anyhow!("no fan declared for {:?}", self.points[i].name)))
            .collect::<Result<Vec<_>>>()?;

        Ok(ArcSystem { points, arcs, fans })
    }
}

// ---------------------------------------------------------------------
// path names shared by complexes and words

/// Parses a basis path name: `e(v)` for a trivial path, otherwise arrow
/// names joined with `*`. The arrow sequence must survive the relations.
pub fn parse_path(alg: &Algebra, text: &str) -> Result<usize> {
    let q = &alg.presentation().quiver;
    if let Some(inner) = text.strip_prefix("e(").and_then(|r| r.strip_suffix(')')) {
        let v = q
            .vertex_id(inner)
            .ok_or_else(|| anyhow!("unknown vertex {inner:?}"))?;
        return Ok(alg.trivial(v));
    }
    let arrows = text
        .split('*')
        .map(|name| {
            q.arrow_id(name)
                .ok_or_else(|| anyhow!("unknown arrow {name:?}"))
        })
        .collect::<Result<Vec<_>>>()?;
    alg.path_from_arrows(&arrows)
        .ok_or_else(|| anyhow!("path {text:?} vanishes or is not composable"))
}

// ---------------------------------------------------------------------
// gentle.complex/1

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub schema: String,
    /// `[vertex, shift]` pairs.
    pub summands: Vec<(String, i64)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub entries: Vec<EntryFileDecl>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryFileDecl {
    pub from: usize,
    pub to: usize,
    /// `[path, coefficient]` pairs.
    pub terms: Vec<(String, i64)>,
}

pub fn parse_complex(text: &str) -> Result<ComplexFile> {
    let f: ComplexFile = toml::from_str(text).context("malformed complex file")?;
    check_schema(&f.schema, COMPLEX_SCHEMA)?;
    Ok(f)
}

impl ComplexFile {
    pub fn from_core(alg: &Algebra, x: &TwistedComplex) -> Self {
        let q = &alg.presentation().quiver;
        ComplexFile {
            schema: COMPLEX_SCHEMA.to_string(),
            summands: x
                .summands
                .iter()
                .map(|&(v, k)| (q.vertex_names[v].clone(), k))
                .collect(),
            entries: x
                .entries
                .iter()
                .map(|(&(from, to), sum)| EntryFileDecl {
                    from,
                    to,
                    terms: sum
                        .iter()
                        .map(|&(p, c)| (alg.path_name(p), c))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_core(&self, alg: &Algebra) -> Result<TwistedComplex> {
        let q = &alg.presentation().quiver;
        let summands = self
            .summands
            .iter()
            .map(|(name, k)| {
                let v = q
                    .vertex_id(name)
                    .ok_or_else(|| anyhow!("unknown vertex {name:?}"))?;
                Ok((v, *k))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut entries = std::collections::BTreeMap::new();
        for e in &self.entries {
            let sum = e
                .terms
                .iter()
                .map(|(path, c)| Ok((parse_path(alg, path)?, *c)))
                .collect::<Result<Vec<_>>>()?;
            if entries.insert((e.from, e.to), sum).is_some() {
                bail!("duplicate entry for positions {} -> {}", e.from, e.to);
            }
        }
        Ok(TwistedComplex { summands, entries })
    }
}

// ---------------------------------------------------------------------
// gentle.word/1

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordFile {
    pub schema: String,
    /// Vertex the word starts at (only consulted for letterless stalks).
    pub vertex: String,
    pub shift: i64,
    /// `[path, direction]` pairs, direction `"+"` or `"-"`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub letters: Vec<(String, String)>,
}

pub fn parse_word_file(text: &str) -> Result<WordFile> {
    let f: WordFile = toml::from_str(text).context("malformed word file")?;
    check_schema(&f.schema, WORD_SCHEMA)?;
    Ok(f)
}

impl WordFile {
    pub fn from_core(alg: &Algebra, w: &StringWord) -> Self {
        let q = &alg.presentation().quiver;
        WordFile {
            schema: WORD_SCHEMA.to_string(),
            vertex: q.vertex_names[w.vertex].clone(),
            shift: w.shift,
            letters: w
                .letters
                .iter()
                .map(|l| {
                    (
                        alg.path_name(l.path),
                        if l.forward { "+" } else { "-" }.to_string(),
                    )
                })
                .collect(),
        }
    }

    pub fn to_core(&self, alg: &Algebra) -> Result<StringWord> {
        let q = &alg.presentation().quiver;
        let vertex = q
            .vertex_id(&self.vertex)
            .ok_or_else(|| anyhow!("unknown vertex {:?}", self.vertex))?;
        let letters = self
            .letters
            .iter()
            .map(|(path, dir)| {
                let forward = match dir.as_str() {
                    "+" => true,
                    "-" => false,
                    other => bail!("direction must be \"+\" or \"-\", got {other:?}"),
                };
                Ok(Letter {
                    path: parse_path(alg, path)?,
                    forward,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(StringWord {
            vertex,
            shift: self.shift,
            letters,
        })
    }
}
