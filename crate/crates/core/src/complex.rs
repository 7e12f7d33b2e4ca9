//! Twisted complexes: finite sums of shifted projectives with a strictly
//! triangular degree-one connection whose square is zero.
//!
//! A summand is a pair `(vertex, shift)`. The connection entry from
//! summand `i` to summand `j` is an integer combination of paths
//! `v_i -> v_j`, and every term must satisfy
//! `path degree + shift_i - shift_j = 1`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::path::{find_cycle, Algebra, PathId};
use crate::quiver::VertexId;

/// An integer combination of basis paths, kept sorted by path id with no
/// zero coefficients and no duplicates.
pub type ZPathSum = Vec<(PathId, i64)>;

/// Components of a map between twisted complexes, keyed by
/// `(source summand, target summand)`.
pub type MapEntries = BTreeMap<(usize, usize), ZPathSum>;

/// Sorts, merges duplicates, and drops zero terms.
pub fn normalize_sum(mut sum: ZPathSum) -> ZPathSum {
    sum.sort_by_key(|&(p, _)| p);
    let mut out: ZPathSum = Vec::with_capacity(sum.len());
    for (p, c) in sum {
        match out.last_mut() {
            Some(last) if last.0 == p => {
                last.1 = last
                    .1
                    .checked_add(c)
                    .expect("coefficient overflow while normalizing");
            }
            _ => out.push((p, c)),
        }
    }
    out.retain(|&(_, c)| c != 0);
    out
}

/// Pairwise products "p then q" of two combinations; `None` products drop.
pub fn compose_sums(alg: &Algebra, first: &ZPathSum, second: &ZPathSum) -> ZPathSum {
    let mut acc: ZPathSum = Vec::new();
    for &(p, cp) in first {
        for &(q, cq) in second {
            if let Some(pq) = alg.compose(p, q) {
                acc.push((
                    pq,
                    cp.checked_mul(cq).expect("coefficient overflow in product"),
                ));
            }
        }
    }
    normalize_sum(acc)
}

/// Entrywise composite "first then second" of two component matrices.
pub fn compose_entry_maps(alg: &Algebra, first: &MapEntries, second: &MapEntries) -> MapEntries {
    let mut acc: BTreeMap<(usize, usize), ZPathSum> = BTreeMap::new();
    for (&(i, j), fij) in first {
        for (&(j2, k), sjk) in second {
            if j != j2 {
                continue;
            }
            let prod = compose_sums(alg, fij, sjk);
            if !prod.is_empty() {
                let slot = acc.entry((i, k)).or_default();
                slot.extend_from_slice(&prod);
            }
        }
    }
    acc.iter()
        .map(|(&k, v)| (k, normalize_sum(v.clone())))
        .filter(|(_, v)| !v.is_empty())
        .collect()
}

/// Entrywise difference `first - second`, normalized.
pub fn subtract_entry_maps(first: &MapEntries, second: &MapEntries) -> MapEntries {
    let mut acc = first.clone();
    for (&key, sum) in second {
        let slot = acc.entry(key).or_default();
        for &(p, c) in sum {
            slot.push((p, -c));
        }
    }
    acc.into_iter()
        .map(|(k, v)| (k, normalize_sum(v)))
        .filter(|(_, v)| !v.is_empty())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexError {
    SummandVertexOutOfRange { index: usize },
    EntryIndexOutOfRange { from: usize, to: usize },
    EntryPathEndpoints { from: usize, to: usize },
    EntryDegree { from: usize, to: usize },
    EntryGraphCycle,
    DifferentialSquare { from: usize, to: usize },
    MapEntryEndpoints { from: usize, to: usize },
    MapEntryDegree { from: usize, to: usize, expected: i64 },
    MapNotClosed { from: usize, to: usize },
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::SummandVertexOutOfRange { index } => {
                write!(f, "summand {index} names a vertex outside the quiver")
            }
            ComplexError::EntryIndexOutOfRange { from, to } => {
                write!(f, "entry ({from}, {to}) references a missing summand")
            }
            ComplexError::EntryPathEndpoints { from, to } => write!(
                f,
                "entry ({from}, {to}) uses a path whose endpoints do not match the summands"
            ),
            ComplexError::EntryDegree { from, to } => write!(
                f,
                "entry ({from}, {to}) has a term violating degree + shift(from) - shift(to) = 1"
            ),
            ComplexError::EntryGraphCycle => {
                write!(f, "connection entries form a cycle; no strict summand order exists")
            }
            ComplexError::DifferentialSquare { from, to } => {
                write!(f, "connection squared is nonzero in component ({from}, {to})")
            }
            ComplexError::MapEntryEndpoints { from, to } => write!(
                f,
                "map entry ({from}, {to}) uses a path whose endpoints do not match the summands"
            ),
            ComplexError::MapEntryDegree { from, to, expected } => write!(
                f,
                "map entry ({from}, {to}) has a term not of degree {expected}"
            ),
            ComplexError::MapNotClosed { from, to } => {
                write!(f, "map fails the cocycle equation in component ({from}, {to})")
            }
        }
    }
}

/// A twisted complex over a fixed gentle algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedComplex {
    /// `(vertex, shift)` per summand.
    pub summands: Vec<(VertexId, i64)>,
    /// Degree-one connection; absent key means zero component.
    pub entries: MapEntries,
}

impl TwistedComplex {
    /// The stalk complex `P_v[−shift]`-style single summand with shift `k`.
    pub fn stalk(vertex: VertexId, shift: i64) -> Self {
        TwistedComplex {
            summands: alloc::vec![(vertex, shift)],
            entries: BTreeMap::new(),
        }
    }

    pub fn num_summands(&self) -> usize {
        self.summands.len()
    }

    /// Checks summand and entry well-formedness, degree homogeneity,
    /// strict triangularity (entry digraph acyclic), and square-zero.
    pub fn validate(&self, alg: &Algebra) -> Result<(), ComplexError> {
        let n = self.summands.len();
        for (index, &(v, _)) in self.summands.iter().enumerate() {
            if v >= alg.num_vertices() {
                return Err(ComplexError::SummandVertexOutOfRange { index });
            }
        }
        for (&(from, to), sum) in &self.entries {
            if from >= n || to >= n {
                return Err(ComplexError::EntryIndexOutOfRange { from, to });
            }
            let (vf, kf) = self.summands[from];
            let (vt, kt) = self.summands[to];
            for &(p, c) in sum {
                debug_assert!(c != 0, "entries must be normalized");
                let pd = alg.path(p);
                if pd.source != vf || pd.target != vt {
                    return Err(ComplexError::EntryPathEndpoints { from, to });
                }
                if pd.degree + kf - kt != 1 {
                    return Err(ComplexError::EntryDegree { from, to });
                }
            }
        }
        // Strict triangularity: some order of summands makes the
        // connection strictly upper triangular, i.e. the digraph of
        // nonzero entries is acyclic (self-loops included).
        let succ: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                self.entries
                    .iter()
                    .filter(|(&(from, _), sum)| from == i && !sum.is_empty())
                    .map(|(&(_, to), _)| to)
                    .collect()
            })
            .collect();
        if find_cycle(&succ).is_some() {
            return Err(ComplexError::EntryGraphCycle);
        }
        let square = compose_entry_maps(alg, &self.entries, &self.entries);
        if let Some((&(from, to), _)) = square.iter().next() {
            return Err(ComplexError::DifferentialSquare { from, to });
        }
        Ok(())
    }

    /// Shift by `n`: shifts move by `n`, the connection flips sign when
    /// `n` is odd.
    pub fn shifted(&self, n: i64) -> Self {
        let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
        TwistedComplex {
            summands: self.summands.iter().map(|&(v, k)| (v, k + n)).collect(),
            entries: self
                .entries
                .iter()
                .map(|(&key, sum)| {
                    (key, sum.iter().map(|&(p, c)| (p, c * sign)).collect())
                })
                .collect(),
        }
    }

    /// Direct sum, `other`'s summands renumbered after `self`'s.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let offset = self.summands.len();
        let mut summands = self.summands.clone();
        summands.extend_from_slice(&other.summands);
        let mut entries = self.entries.clone();
        for (&(from, to), sum) in &other.entries {
            entries.insert((from + offset, to + offset), sum.clone());
        }
        TwistedComplex { summands, entries }
    }

    /// Class in the Grothendieck group: alternating sum of summand
    /// vertices by shift parity, as a vector over the vertices.
    pub fn k0_class(&self, alg: &Algebra) -> Vec<i64> {
        let mut class = alloc::vec![0i64; alg.num_vertices()];
        for &(v, k) in &self.summands {
            class[v] += if k.rem_euclid(2) == 0 { 1 } else { -1 };
        }
        class
    }
}

/// Validates that `f` is a well-formed map of pure degree `degree` from
/// `x` to `y`: endpoints match and every term satisfies
/// `path degree + shift_x(i) - shift_y(j) = degree`.
pub fn validate_map(
    alg: &Algebra,
    x: &TwistedComplex,
    y: &TwistedComplex,
    f: &MapEntries,
    degree: i64,
) -> Result<(), ComplexError> {
    for (&(from, to), sum) in f {
        if from >= x.summands.len() || to >= y.summands.len() {
            return Err(ComplexError::EntryIndexOutOfRange { from, to });
        }
        let (vf, kf) = x.summands[from];
        let (vt, kt) = y.summands[to];
        for &(p, _) in sum {
            let pd = alg.path(p);
            if pd.source != vf || pd.target != vt {
                return Err(ComplexError::MapEntryEndpoints { from, to });
            }
            if pd.degree + kf - kt != degree {
                return Err(ComplexError::MapEntryDegree {
                    from,
                    to,
                    expected: degree,
                });
            }
        }
    }
    Ok(())
}

/// Whether a degree-zero map is closed: "f then delta_Y" equals
/// "delta_X then f" componentwise.
pub fn is_closed_degree_zero(
    alg: &Algebra,
    x: &TwistedComplex,
    y: &TwistedComplex,
    f: &MapEntries,
) -> Result<(), ComplexError> {
    let a = compose_entry_maps(alg, f, &y.entries);
    let b = compose_entry_maps(alg, &x.entries, f);
    let diff = subtract_entry_maps(&a, &b);
    if let Some((&(from, to), _)) = diff.iter().next() {
        return Err(ComplexError::MapNotClosed { from, to });
    }
    Ok(())
}

/// Mapping cone of a closed degree-zero map `f : X -> Y`:
/// `X` shifted by one (connection negated) next to `Y`, glued by `f`.
pub fn cone(
    alg: &Algebra,
    x: &TwistedComplex,
    y: &TwistedComplex,
    f: &MapEntries,
) -> Result<TwistedComplex, ComplexError> {
    validate_map(alg, x, y, f, 0)?;
    is_closed_degree_zero(alg, x, y, f)?;
    let shifted_x = x.shifted(1);
    let mut out = shifted_x.direct_sum(y);
    let offset = x.summands.len();
    for (&(from, to), sum) in f {
        // Degree check: path + (k_from + 1) - l_to = 0 + 1 = 1.
        out.entries.insert((from, to + offset), sum.clone());
    }
    out.validate(alg)?;
    Ok(out)
}
