//! Homotopy strings: walks of direct/inverse path letters encoding
//! indecomposable twisted complexes, plus a component-local fast path for
//! their hom profiles.
//!
//! A word has nodes `0..=len` and one letter between consecutive nodes. A
//! direct letter `p` is a connection entry `node_i -> node_{i+1}`; an
//! inverse letter is the entry `node_{i+1} -> node_i`. Node shifts are
//! forced by the degree-one rule, so only the first node's shift is
//! stored.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use crate::complex::TwistedComplex;
use crate::field::{rank, FieldCtx, Rationals};
use crate::path::{Algebra, PathId};
use crate::quiver::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Letter {
    pub path: PathId,
    /// `true` for a direct letter, `false` for an inverse one.
    pub forward: bool,
}

/// A homotopy string: base node data plus letters. An empty letter list is
/// the stalk projective at `vertex`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StringWord {
    pub vertex: VertexId,
    pub shift: i64,
    pub letters: Vec<Letter>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordError {
    VertexOutOfRange,
    /// Letter at `index` is a trivial path.
    TrivialLetter { index: usize },
    /// Letter at `index` does not continue from the previous node's vertex.
    Disconnected { index: usize },
    /// Direct-direct pair starting at `index` has a surviving product.
    ComposableForward { index: usize },
    /// Inverse-inverse pair starting at `index` has a surviving product.
    ComposableBackward { index: usize },
    /// Direct-inverse pair starting at `index` ends with the same arrow.
    SharedLastArrow { index: usize },
    /// Inverse-direct pair starting at `index` begins with the same arrow.
    SharedFirstArrow { index: usize },
    /// Serialized form could not be parsed.
    Parse(String),
    /// A letter names a path that is not in the basis.
    UnknownPath(String),
    UnknownVertex(String),
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::VertexOutOfRange => write!(f, "base vertex outside the quiver"),
            WordError::TrivialLetter { index } => {
                write!(f, "letter {index} is a trivial path")
            }
            WordError::Disconnected { index } => {
                write!(f, "letter {index} does not attach to the previous node")
            }
            WordError::ComposableForward { index } => write!(
                f,
                "direct letters {index},{} have a nonzero product",
                index + 1
            ),
            WordError::ComposableBackward { index } => write!(
                f,
                "inverse letters {index},{} have a nonzero product",
                index + 1
            ),
            WordError::SharedLastArrow { index } => write!(
                f,
                "letters {index},{} run into their shared node through the same arrow",
                index + 1
            ),
            WordError::SharedFirstArrow { index } => write!(
                f,
                "letters {index},{} leave their shared node through the same arrow",
                index + 1
            ),
            WordError::Parse(s) => write!(f, "cannot parse word: {s}"),
            WordError::UnknownPath(s) => write!(f, "unknown path {s:?}"),
            WordError::UnknownVertex(s) => write!(f, "unknown vertex {s:?}"),
        }
    }
}

impl StringWord {
    pub fn stalk(vertex: VertexId, shift: i64) -> Self {
        StringWord {
            vertex,
            shift,
            letters: Vec::new(),
        }
    }

    pub fn is_stalk(&self) -> bool {
        self.letters.is_empty()
    }

    /// Checks all string validity clauses.
    pub fn validate(&self, alg: &Algebra) -> Result<(), WordError> {
        if self.vertex >= alg.num_vertices() {
            return Err(WordError::VertexOutOfRange);
        }
        let mut cur = self.vertex;
        for (index, l) in self.letters.iter().enumerate() {
            let p = alg.path(l.path);
            if p.is_trivial() {
                return Err(WordError::TrivialLetter { index });
            }
            let (left, right) = if l.forward {
                (p.source, p.target)
            } else {
                (p.target, p.source)
            };
            if left != cur {
                return Err(WordError::Disconnected { index });
            }
            cur = right;
        }
        for index in 0..self.letters.len().saturating_sub(1) {
            let (a, b) = (self.letters[index], self.letters[index + 1]);
            let (pa, pb) = (alg.path(a.path), alg.path(b.path));
            match (a.forward, b.forward) {
                (true, true) => {
                    if alg.compose(a.path, b.path).is_some() {
                        return Err(WordError::ComposableForward { index });
                    }
                }
                (false, false) => {
                    if alg.compose(b.path, a.path).is_some() {
                        return Err(WordError::ComposableBackward { index });
                    }
                }
                (true, false) => {
                    if pa.last_arrow() == pb.last_arrow() {
                        return Err(WordError::SharedLastArrow { index });
                    }
                }
                (false, true) => {
                    if pa.first_arrow() == pb.first_arrow() {
                        return Err(WordError::SharedFirstArrow { index });
                    }
                }
            }
        }
        Ok(())
    }

    /// Vertices of nodes `0..=len`.
    pub fn node_vertices(&self, alg: &Algebra) -> Vec<VertexId> {
        let mut out = vec![self.vertex];
        for l in &self.letters {
            let p = alg.path(l.path);
            out.push(if l.forward { p.target } else { p.source });
        }
        out
    }

    /// Shifts of nodes `0..=len`, forced by the degree-one rule.
    pub fn node_shifts(&self, alg: &Algebra) -> Vec<i64> {
        let mut out = vec![self.shift];
        let mut k = self.shift;
        for l in &self.letters {
            let d = alg.path(l.path).degree;
            k += if l.forward { d - 1 } else { 1 - d };
            out.push(k);
        }
        out
    }

    /// The same string read from the other end.
    pub fn reversed(&self, alg: &Algebra) -> StringWord {
        let vertices = self.node_vertices(alg);
        let shifts = self.node_shifts(alg);
        StringWord {
            vertex: *vertices.last().expect("at least one node"),
            shift: *shifts.last().expect("at least one node"),
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    path: l.path,
                    forward: !l.forward,
                })
                .collect(),
        }
    }

    /// Deterministic representative of {word, reversal}.
    pub fn canonical(&self, alg: &Algebra) -> StringWord {
        let rev = self.reversed(alg);
        if *self <= rev {
            self.clone()
        } else {
            rev
        }
    }

    pub fn shifted(&self, n: i64) -> StringWord {
        StringWord {
            vertex: self.vertex,
            shift: self.shift + n,
            letters: self.letters.clone(),
        }
    }

    /// Translated so the minimal node shift is zero.
    pub fn shift_normalized(&self, alg: &Algebra) -> StringWord {
        let min = self
            .node_shifts(alg)
            .into_iter()
            .min()
            .expect("at least one node");
        self.shifted(-min)
    }

    /// The twisted complex: one summand per node, one entry per letter.
    pub fn to_complex(&self, alg: &Algebra) -> TwistedComplex {
        let vertices = self.node_vertices(alg);
        let shifts = self.node_shifts(alg);
        let summands: Vec<(VertexId, i64)> =
            vertices.into_iter().zip(shifts).collect();
        let mut entries = BTreeMap::new();
        for (t, l) in self.letters.iter().enumerate() {
            let key = if l.forward { (t, t + 1) } else { (t + 1, t) };
            entries.insert(key, vec![(l.path, 1i64)]);
        }
        TwistedComplex { summands, entries }
    }
}

/// Renders a word as letters `path+`/`path-` followed by `@shift`; a stalk
/// renders as `e(vertex) @shift`.
pub fn format_word(alg: &Algebra, w: &StringWord) -> String {
    if w.is_stalk() {
        return format!(
            "e({}) @{}",
            alg.presentation().quiver.vertex_names[w.vertex],
            w.shift
        );
    }
    let mut parts: Vec<String> = w
        .letters
        .iter()
        .map(|l| {
            format!(
                "{}{}",
                alg.path_name(l.path),
                if l.forward { "+" } else { "-" }
            )
        })
        .collect();
    parts.push(format!("@{}", w.shift));
    parts.join(" ")
}

/// Parses the [`format_word`] form. The word is validated before return.
pub fn parse_word(alg: &Algebra, s: &str) -> Result<StringWord, WordError> {
    let tokens: Vec<&str> = s.split_whitespace().collect();
    let Some((last, letter_tokens)) = tokens.split_last() else {
        return Err(WordError::Parse("empty input".to_string()));
    };
    let Some(shift_str) = last.strip_prefix('@') else {
        return Err(WordError::Parse(format!(
            "expected trailing @shift, found {last:?}"
        )));
    };
    let shift: i64 = shift_str
        .parse()
        .map_err(|_| WordError::Parse(format!("bad shift {shift_str:?}")))?;
    let q = &alg.presentation().quiver;
    // Stalk form: a single token e(<vertex>).
    if letter_tokens.len() == 1 && letter_tokens[0].starts_with("e(") {
        let inner = letter_tokens[0]
            .strip_prefix("e(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| WordError::Parse(format!("bad stalk token {:?}", letter_tokens[0])))?;
        let vertex = q
            .vertex_id(inner)
            .ok_or_else(|| WordError::UnknownVertex(inner.to_string()))?;
        return Ok(StringWord::stalk(vertex, shift));
    }
    if letter_tokens.is_empty() {
        return Err(WordError::Parse("no letters before @shift".to_string()));
    }
    let mut letters = Vec::new();
    for tok in letter_tokens {
        let (name, forward) = if let Some(n) = tok.strip_suffix('+') {
            (n, true)
        } else if let Some(n) = tok.strip_suffix('-') {
            (n, false)
        } else {
            return Err(WordError::Parse(format!(
                "letter {tok:?} must end with + or -"
            )));
        };
        let arrows: Result<Vec<usize>, WordError> = name
            .split('*')
            .map(|a| {
                q.arrow_id(a)
                    .ok_or_else(|| WordError::UnknownPath(name.to_string()))
            })
            .collect();
        let path = alg
            .path_from_arrows(&arrows?)
            .ok_or_else(|| WordError::UnknownPath(name.to_string()))?;
        letters.push(Letter { path, forward });
    }
    let first = letters[0];
    let p0 = alg.path(first.path);
    let vertex = if first.forward { p0.source } else { p0.target };
    let w = StringWord {
        vertex,
        shift,
        letters,
    };
    w.validate(alg)?;
    Ok(w)
}

/// Whether letter `b` may follow letter `a` (junction clauses only).
fn letters_chain(alg: &Algebra, a: Letter, b: Letter) -> bool {
    let (pa, pb) = (alg.path(a.path), alg.path(b.path));
    match (a.forward, b.forward) {
        (true, true) => alg.compose(a.path, b.path).is_none(),
        (false, false) => alg.compose(b.path, a.path).is_none(),
        (true, false) => pa.last_arrow() != pb.last_arrow(),
        (false, true) => pa.first_arrow() != pb.first_arrow(),
    }
}

/// All valid words with at most `max_letters` letters whose node shifts
/// stay within `max_offset` of the first node, shift-normalized (minimal
/// node shift zero), deduplicated up to reversal, in a deterministic
/// order. Stalk words are included.
pub fn enumerate_words(
    alg: &Algebra,
    max_letters: usize,
    max_offset: i64,
) -> Vec<StringWord> {
    let mut seen: BTreeSet<StringWord> = BTreeSet::new();
    for v in 0..alg.num_vertices() {
        seen.insert(StringWord::stalk(v, 0));
    }
    let nontrivial: Vec<PathId> = alg
        .path_ids()
        .filter(|&p| !alg.path(p).is_trivial())
        .collect();
    let all_letters: Vec<Letter> = nontrivial
        .iter()
        .flat_map(|&path| {
            [true, false].map(|forward| Letter { path, forward })
        })
        .collect();
    // Depth-first over words; the running state tracks the right-end
    // vertex and the shift of the rightmost node.
    let mut stack: Vec<(Vec<Letter>, VertexId, i64)> = Vec::new();
    for &l in &all_letters {
        let p = alg.path(l.path);
        let right = if l.forward { p.target } else { p.source };
        let k1 = if l.forward {
            p.degree - 1
        } else {
            1 - p.degree
        };
        if k1.abs() <= max_offset {
            stack.push((vec![l], right, k1));
        }
    }
    while let Some((letters, cur, k)) = stack.pop() {
        let first = letters[0];
        let p0 = alg.path(first.path);
        let vertex = if first.forward { p0.source } else { p0.target };
        let word = StringWord {
            vertex,
            shift: 0,
            letters: letters.clone(),
        };
        debug_assert_eq!(word.validate(alg), Ok(()));
        seen.insert(word.shift_normalized(alg).canonical(alg));
        if letters.len() == max_letters {
            continue;
        }
        let last = *letters.last().expect("nonempty");
        for &l in &all_letters {
            let p = alg.path(l.path);
            let left = if l.forward { p.source } else { p.target };
            if left != cur || !letters_chain(alg, last, l) {
                continue;
            }
            let k_next = k + if l.forward {
                p.degree - 1
            } else {
                1 - p.degree
            };
            if k_next.abs() > max_offset {
                continue;
            }
            let mut longer = letters.clone();
            longer.push(l);
            let right = if l.forward { p.target } else { p.source };
            stack.push((longer, right, k_next));
        }
    }
    seen.into_iter().collect()
}

/// Node-level view of a word used by the fast hom computation.
struct NodeData {
    vertices: Vec<VertexId>,
    shifts: Vec<i64>,
    /// Connection entries leaving each node: `(target node, path)`.
    out: Vec<Vec<(usize, PathId)>>,
    /// Connection entries arriving at each node: `(source node, path)`.
    into: Vec<Vec<(usize, PathId)>>,
}

fn node_data(alg: &Algebra, w: &StringWord) -> NodeData {
    let vertices = w.node_vertices(alg);
    let shifts = w.node_shifts(alg);
    let n = vertices.len();
    let mut out = vec![Vec::new(); n];
    let mut into = vec![Vec::new(); n];
    for (t, l) in w.letters.iter().enumerate() {
        let (from, to) = if l.forward { (t, t + 1) } else { (t + 1, t) };
        out[from].push((to, l.path));
        into[to].push((from, l.path));
    }
    NodeData {
        vertices,
        shifts,
        out,
        into,
    }
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Hom profile of the string complexes of `x` and `y` over the rational
/// numbers, computed by decomposing the morphism-complex basis graph into
/// its connected components and running exact ranks on each small block.
/// Agrees with the full morphism-complex computation by construction
/// (same complex, block-diagonalized), which the test suite checks
/// against the oracle on randomized word pairs.
pub fn string_hom_fast(
    alg: &Algebra,
    x: &StringWord,
    y: &StringWord,
) -> Result<BTreeMap<i64, usize>, WordError> {
    string_hom_fast_in(&Rationals, alg, x, y)
}

/// [`string_hom_fast`] over an arbitrary coefficient field.
pub fn string_hom_fast_in<F: FieldCtx>(
    ctx: &F,
    alg: &Algebra,
    x: &StringWord,
    y: &StringWord,
) -> Result<BTreeMap<i64, usize>, WordError> {
    x.validate(alg)?;
    y.validate(alg)?;
    let xd = node_data(alg, x);
    let yd = node_data(alg, y);

    // Materialize the basis states (i, j, p).
    let mut states: Vec<(usize, usize, PathId)> = Vec::new();
    let mut index: BTreeMap<(usize, usize, PathId), usize> = BTreeMap::new();
    for i in 0..xd.vertices.len() {
        for j in 0..yd.vertices.len() {
            for &p in alg.paths_between(xd.vertices[i], yd.vertices[j]) {
                index.insert((i, j, p), states.len());
                states.push((i, j, p));
            }
        }
    }
    let degree = |s: &(usize, usize, PathId)| -> i64 {
        alg.path(s.2).degree + xd.shifts[s.0] - yd.shifts[s.1]
    };

    // Differential moves: post-compose with y-entries, pre-compose with
    // x-entries (the Koszul sign depends on the source state's degree).
    let moves = |s: usize| -> Vec<(usize, i64)> {
        let (i, j, p) = states[s];
        let sign = if degree(&states[s]).rem_euclid(2) == 0 {
            -1
        } else {
            1
        };
        let mut out: Vec<(usize, i64)> = Vec::new();
        for &(j2, q) in &yd.out[j] {
            if let Some(pq) = alg.compose(p, q) {
                out.push((index[&(i, j2, pq)], 1));
            }
        }
        for &(i2, r) in &xd.into[i] {
            if let Some(rp) = alg.compose(r, p) {
                out.push((index[&(i2, j, rp)], sign));
            }
        }
        out
    };

    let mut dsu = DisjointSet::new(states.len());
    let mut all_moves: Vec<Vec<(usize, i64)>> = Vec::with_capacity(states.len());
    for s in 0..states.len() {
        let mv = moves(s);
        for &(t, _) in &mv {
            dsu.union(s, t);
        }
        all_moves.push(mv);
    }

    let mut components: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for s in 0..states.len() {
        components.entry(dsu.find(s)).or_default().push(s);
    }

    let mut profile: BTreeMap<i64, usize> = BTreeMap::new();
    for comp in components.values() {
        if comp.len() == 1 && all_moves[comp[0]].is_empty() {
            *profile.entry(degree(&states[comp[0]])).or_insert(0) += 1;
            continue;
        }
        let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for &s in comp {
            by_degree.entry(degree(&states[s])).or_default().push(s);
        }
        let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
        for (&d, dom) in &by_degree {
            let Some(cod) = by_degree.get(&(d + 1)) else {
                continue;
            };
            let row_of: BTreeMap<usize, usize> =
                cod.iter().enumerate().map(|(r, &s)| (s, r)).collect();
            let mut m = vec![vec![ctx.zero(); dom.len()]; cod.len()];
            for (col, &s) in dom.iter().enumerate() {
                for &(t, c) in &all_moves[s] {
                    let row = row_of[&t];
                    m[row][col] = ctx.add(&m[row][col], &ctx.from_i64(c));
                }
            }
            ranks.insert(d, rank(ctx, m));
        }
        for (&d, dom) in &by_degree {
            let h = dom.len()
                - ranks.get(&d).copied().unwrap_or(0)
                - ranks.get(&(d - 1)).copied().unwrap_or(0);
            if h > 0 {
                *profile.entry(d).or_insert(0) += h;
            }
        }
    }
    Ok(profile)
}
