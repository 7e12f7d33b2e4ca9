//! Morphism complexes between twisted complexes, and their cohomology.
//!
//! The basis of the morphism complex from `X` to `Y` is the set of
//! component triples `(i, j, p)`: a path `p` from the vertex under `X`'s
//! summand `i` to the vertex under `Y`'s summand `j`. Its degree is
//! `|p| + shift_X(i) - shift_Y(j)`. The differential is
//! `d(f) = (f then delta_Y) - (-1)^{|f|} (delta_X then f)`.
//!
//! Cohomology ranks are computed by exact Gaussian elimination over a
//! chosen coefficient field; graded dimensions of the cohomology are
//! returned as a sparse profile (zero dimensions omitted).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::complex::{MapEntries, TwistedComplex, ZPathSum};
use crate::field::{kernel_basis, rank, FieldCtx, Matrix, Rationals};
use crate::path::{Algebra, PathId};

/// One basis component of the morphism complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomBasisElem {
    pub from: usize,
    pub to: usize,
    pub path: PathId,
    pub degree: i64,
}

/// The full basis, ordered by `(from, to, path)`, with a degree index.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub elems: Vec<HomBasisElem>,
    pub by_degree: BTreeMap<i64, Vec<usize>>,
    lookup: BTreeMap<(usize, usize, PathId), usize>,
}

impl HomBasis {
    pub fn total_dimension(&self) -> usize {
        self.elems.len()
    }

    /// Graded dimensions of the underlying complex (not its cohomology).
    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        self.by_degree
            .iter()
            .map(|(&d, v)| (d, v.len()))
            .collect()
    }
}

pub fn hom_basis(alg: &Algebra, x: &TwistedComplex, y: &TwistedComplex) -> HomBasis {
    let mut elems = Vec::new();
    for (i, &(vi, ki)) in x.summands.iter().enumerate() {
        for (j, &(wj, lj)) in y.summands.iter().enumerate() {
            for &p in alg.paths_between(vi, wj) {
                elems.push(HomBasisElem {
                    from: i,
                    to: j,
                    path: p,
                    degree: alg.path(p).degree + ki - lj,
                });
            }
        }
    }
    elems.sort_by_key(|e| (e.from, e.to, e.path));
    let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    let mut lookup = BTreeMap::new();
    for (idx, e) in elems.iter().enumerate() {
        by_degree.entry(e.degree).or_default().push(idx);
        lookup.insert((e.from, e.to, e.path), idx);
    }
    HomBasis {
        elems,
        by_degree,
        lookup,
    }
}

/// Integer expansion of `d(elem)` in the basis.
fn differential_of(
    alg: &Algebra,
    x: &TwistedComplex,
    y: &TwistedComplex,
    basis: &HomBasis,
    idx: usize,
) -> Vec<(usize, i64)> {
    let e = basis.elems[idx];
    let mut out: Vec<(usize, i64)> = Vec::new();
    // f then delta_Y.
    for (&(j, j2), sum) in &y.entries {
        if j != e.to {
            continue;
        }
        for &(q, c) in sum {
            if let Some(pq) = alg.compose(e.path, q) {
                let t = basis.lookup[&(e.from, j2, pq)];
                out.push((t, c));
            }
        }
    }
    // -(-1)^{|f|} delta_X then f.
    let sign = if e.degree.rem_euclid(2) == 0 { -1 } else { 1 };
    for (&(i2, i), sum) in &x.entries {
        if i != e.from {
            continue;
        }
        for &(r, c) in sum {
            if let Some(rp) = alg.compose(r, e.path) {
                let t = basis.lookup[&(i2, e.to, rp)];
                out.push((t, sign * c));
            }
        }
    }
    out
}

/// The matrix of the degree-`d` differential: rows are degree-`d+1` basis
/// elements, columns degree-`d` ones.
fn differential_matrix<F: FieldCtx>(
    ctx: &F,
    alg: &Algebra,
    x: &TwistedComplex,
    y: &TwistedComplex,
    basis: &HomBasis,
    d: i64,
) -> Matrix<F::Elem> {
    let empty: Vec<usize> = Vec::new();
    let dom = basis.by_degree.get(&d).unwrap_or(&empty);
    let cod = basis.by_degree.get(&(d + 1)).unwrap_or(&empty);
    let row_of: BTreeMap<usize, usize> = cod.iter().enumerate().map(|(r, &i)| (i, r)).collect();
    let mut m: Matrix<F::Elem> = alloc::vec![alloc::vec![ctx.zero(); dom.len()]; cod.len()];
    for (col, &idx) in dom.iter().enumerate() {
        for (target, coeff) in differential_of(alg, x, y, basis, idx) {
            let row = row_of[&target];
            m[row][col] = ctx.add(&m[row][col], &ctx.from_i64(coeff));
        }
    }
    m
}

/// Graded dimensions of the cohomology of the morphism complex, over the
/// field described by `ctx`. Zero dimensions are omitted.
pub fn hom_profile<F: FieldCtx>(
    ctx: &F,
    alg: &Algebra,
    x: &TwistedComplex,
    y: &TwistedComplex,
) -> BTreeMap<i64, usize> {
    let basis = hom_basis(alg, x, y);
    let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
    for &d in basis.by_degree.keys() {
        let m = differential_matrix(ctx, alg, x, y, &basis, d);
        ranks.insert(d, rank(ctx, m));
    }
    let mut profile = BTreeMap::new();
    for (&d, elems) in &basis.by_degree {
        let r_out = ranks.get(&d).copied().unwrap_or(0);
        let r_in = ranks.get(&(d - 1)).copied().unwrap_or(0);
        let h = elems.len() - r_out - r_in;
        if h > 0 {
            profile.insert(d, h);
        }
    }
    profile
}

/// Alternating sum of a cohomology (or dimension) profile.
pub fn euler_of_profile(profile: &BTreeMap<i64, usize>) -> i64 {
    profile
        .iter()
        .map(|(&d, &n)| {
            let sign = if d.rem_euclid(2) == 0 { 1 } else { -1 };
            sign * n as i64
        })
        .sum()
}

/// A basis of closed degree-zero maps `X -> Y` (cocycles, not classes),
/// with denominators cleared to integer coefficients.
pub fn closed_degree_zero_maps(
    alg: &Algebra,
    x: &TwistedComplex,
    y: &TwistedComplex,
) -> Vec<MapEntries> {
    closed_maps_at_degree(alg, x, y, 0)
}

/// Like [`closed_degree_zero_maps`], but for cocycles of any degree `d`.
/// The returned entry maps are closed degree-zero maps `x[-d] -> y`
/// verbatim (shifting the source re-signs its connection entries but
/// leaves the cocycle condition untouched).
pub fn closed_maps_at_degree(
    alg: &Algebra,
    x: &TwistedComplex,
    y: &TwistedComplex,
    d: i64,
) -> Vec<MapEntries> {
    let ctx = Rationals;
    let basis = hom_basis(alg, x, y);
    let empty: Vec<usize> = Vec::new();
    let dom = basis.by_degree.get(&d).unwrap_or(&empty).clone();
    if dom.is_empty() {
        return Vec::new();
    }
    let m = differential_matrix(&ctx, alg, x, y, &basis, d);
    let kernel = kernel_basis(&ctx, &m, dom.len());
    kernel
        .into_iter()
        .map(|vecq| {
            // Clear denominators, then divide by the common gcd.
            let mut lcm = num_bigint::BigInt::one();
            for c in &vecq {
                lcm = lcm.lcm(c.denom());
            }
            let ints: Vec<num_bigint::BigInt> =
                vecq.iter().map(|c| c.numer() * &lcm / c.denom()).collect();
            let mut g = num_bigint::BigInt::zero();
            for n in &ints {
                g = g.gcd(n);
            }
            let mut entries: MapEntries = BTreeMap::new();
            for (pos, n) in ints.iter().enumerate() {
                if n.is_zero() {
                    continue;
                }
                let reduced = n / &g;
                let coeff = i64::try_from(&reduced).expect("cocycle coefficient fits i64");
                let e = basis.elems[dom[pos]];
                let slot: &mut ZPathSum = entries.entry((e.from, e.to)).or_default();
                slot.push((e.path, coeff));
            }
            for sum in entries.values_mut() {
                sum.sort_by_key(|&(p, _)| p);
            }
            entries
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::scenario;

    fn alg3() -> Algebra {
        Algebra::new(scenario::three_vertex_presentation()).unwrap()
    }

    fn complex_from(
        alg: &Algebra,
        summands: &[(&str, i64)],
        entries: &[(usize, usize, &str)],
    ) -> TwistedComplex {
        let q = &alg.presentation().quiver;
        let summands: Vec<(usize, i64)> = summands
            .iter()
            .map(|&(v, k)| (q.vertex_id(v).unwrap(), k))
            .collect();
        let entries = entries
            .iter()
            .map(|&(i, j, name)| {
                ((i, j), alloc::vec![(alg.arrow_path(q.arrow_id(name).unwrap()), 1)])
            })
            .collect();
        let x = TwistedComplex { summands, entries };
        x.validate(alg).unwrap();
        x
    }

    fn staircase(alg: &Algebra) -> TwistedComplex {
        complex_from(
            alg,
            &[("1", 0), ("2", -1), ("3", -2)],
            &[(0, 1, "b1"), (1, 2, "a2")],
        )
    }

    fn two_step_a1(alg: &Algebra) -> TwistedComplex {
        complex_from(alg, &[("1", 0), ("2", -1)], &[(0, 1, "a1")])
    }

    fn two_step_a2(alg: &Algebra) -> TwistedComplex {
        complex_from(alg, &[("2", 0), ("3", -1)], &[(0, 1, "a2")])
    }

    #[test]
    fn endomorphisms_of_staircase_are_one_dimensional() {
        let alg = alg3();
        let x = staircase(&alg);
        assert_eq!(
            hom_profile(&Rationals, &alg, &x, &x),
            BTreeMap::from([(0, 1)])
        );
    }

    #[test]
    fn two_step_profiles_match_corner_subspaces() {
        let alg = alg3();
        let g1 = two_step_a1(&alg);
        let g2 = two_step_a2(&alg);
        let ctx = Rationals;
        assert_eq!(
            hom_profile(&ctx, &alg, &g1, &g1),
            BTreeMap::from([(0, 1), (1, 1)])
        );
        assert_eq!(
            hom_profile(&ctx, &alg, &g2, &g2),
            BTreeMap::from([(0, 1), (1, 1)])
        );
        assert_eq!(
            hom_profile(&ctx, &alg, &g1, &g2),
            BTreeMap::from([(0, 2), (1, 1)])
        );
        assert_eq!(
            hom_profile(&ctx, &alg, &g2, &g1),
            BTreeMap::from([(1, 1)])
        );
    }

    #[test]
    fn prime_field_profile_matches_rationals_here() {
        let alg = alg3();
        let g1 = two_step_a1(&alg);
        let g2 = two_step_a2(&alg);
        let fp = PrimeField::new(10_007).unwrap();
        assert_eq!(
            hom_profile(&fp, &alg, &g1, &g2),
            hom_profile(&Rationals, &alg, &g1, &g2)
        );
    }

    #[test]
    fn differential_squares_to_zero_matrixwise() {
        let alg = alg3();
        let x = staircase(&alg);
        let y = two_step_a2(&alg).shifted(1);
        let ctx = Rationals;
        let basis = hom_basis(&alg, &x, &y);
        let degrees: Vec<i64> = basis.by_degree.keys().copied().collect();
        for &d in &degrees {
            let m1 = differential_matrix(&ctx, &alg, &x, &y, &basis, d);
            let m2 = differential_matrix(&ctx, &alg, &x, &y, &basis, d + 1);
            // m2 * m1 must vanish.
            for col in 0..m1.first().map_or(0, Vec::len) {
                let v: Vec<_> = m1.iter().map(|row| row[col].clone()).collect();
                let w = crate::field::mat_vec(&ctx, &m2, &v);
                assert!(w.iter().all(|e| ctx.is_zero(e)), "d^2 != 0 at degree {d}");
            }
        }
    }

    #[test]
    fn shifting_translates_profiles() {
        let alg = alg3();
        let x = staircase(&alg);
        let y = two_step_a1(&alg);
        let ctx = Rationals;
        let base = hom_profile(&ctx, &alg, &x, &y);
        let shifted = hom_profile(&ctx, &alg, &x.shifted(2), &y.shifted(-1));
        // Hom(X[m], Y[n]) in degree d equals Hom(X, Y) in degree d + m - n.
        for (&d, &n) in &shifted {
            assert_eq!(base.get(&(d + 2 - (-1))).copied().unwrap_or(0), n);
        }
        assert_eq!(
            base.values().sum::<usize>(),
            shifted.values().sum::<usize>()
        );
    }

    #[test]
    fn closed_maps_include_projection_to_quotient() {
        let alg = alg3();
        let x = staircase(&alg);
        let q = &alg.presentation().quiver;
        let v1 = q.vertex_id("1").unwrap();
        let p = TwistedComplex::stalk(v1, 0);
        let profile = hom_profile(&Rationals, &alg, &x, &p);
        let closed = closed_degree_zero_maps(&alg, &x, &p);
        // Number of independent closed maps >= h^0.
        assert!(closed.len() >= profile.get(&0).copied().unwrap_or(0));
        for f in &closed {
            crate::complex::is_closed_degree_zero(&alg, &x, &p, f).unwrap();
        }
    }
}
