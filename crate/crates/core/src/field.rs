//! Exact coefficient fields behind a small context trait.
//!
//! Cohomology ranks must be exact, so floating point is out. The two
//! contexts provided are arbitrary-precision rationals (the default) and
//! prime fields with a runtime modulus. The context object carries the
//! modulus, so field elements themselves stay plain data.

use alloc::{vec, vec::Vec};
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// An exact field, presented as a context so a runtime modulus fits the
/// same interface as the rationals.
pub trait FieldCtx {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)] // self is the field context
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` exactly on zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// The field of rationals with arbitrary-precision integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl FieldCtx for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
}

/// Errors from constructing a coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    /// The requested prime-field modulus is not prime.
    NotPrime(u64),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "modulus {p} is not prime"),
        }
    }
}

/// The prime field of order `p`, elements stored as `u64` in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Builds the field, rejecting composite or unit moduli.
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if is_prime_u64(p) {
            Ok(PrimeField { p })
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl FieldCtx for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(powmod(*a, self.p - 2, self.p))
        }
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the fixed witness set decides primality
/// correctly for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A dense matrix as rows of field elements. Rows may be empty when the
/// matrix has zero columns.
pub type Matrix<E> = Vec<Vec<E>>;

/// Rank by fraction-free-enough Gaussian elimination (exact field ops).
#[allow(clippy::needless_range_loop)] // elimination reads one row while updating another
pub fn rank<F: FieldCtx>(ctx: &F, mut rows: Matrix<F::Elem>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !ctx.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = ctx
            .inv(&rows[rank][col])
            .expect("pivot nonzero by selection");
        for r in rank + 1..nrows {
            if ctx.is_zero(&rows[r][col]) {
                continue;
            }
            let factor = ctx.mul(&rows[r][col], &inv);
            for c in col..ncols {
                let delta = ctx.mul(&factor, &rows[rank][c]);
                rows[r][c] = ctx.sub(&rows[r][c], &delta);
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Basis of the right kernel `{x : M x = 0}` of `rows` (acting on column
/// vectors of length `ncols`). `ncols` must be passed explicitly so the
/// zero-row matrix keeps its column count.
#[allow(clippy::needless_range_loop)] // elimination reads one row while updating another
pub fn kernel_basis<F: FieldCtx>(
    ctx: &F,
    rows: &Matrix<F::Elem>,
    ncols: usize,
) -> Vec<Vec<F::Elem>> {
    let mut m: Matrix<F::Elem> = rows.clone();
    let nrows = m.len();
    debug_assert!(m.iter().all(|r| r.len() == ncols));
    // Reduced row echelon form, tracking pivot columns.
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pr) = (row..nrows).find(|&r| !ctx.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(row, pr);
        let inv = ctx.inv(&m[row][col]).expect("pivot nonzero by selection");
        for c in col..ncols {
            m[row][c] = ctx.mul(&m[row][c], &inv);
        }
        for r in 0..nrows {
            if r != row && !ctx.is_zero(&m[r][col]) {
                let factor = m[r][col].clone();
                for c in col..ncols {
                    let delta = ctx.mul(&factor, &m[row][c]);
                    m[r][c] = ctx.sub(&m[r][c], &delta);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == nrows {
            break;
        }
    }
    let mut basis = Vec::new();
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &c in &pivots {
            v[c] = true;
        }
        v
    };
    for free in 0..ncols {
        if pivot_set[free] {
            continue;
        }
        let mut x = vec![ctx.zero(); ncols];
        x[free] = ctx.one();
        for (r, &pc) in pivots.iter().enumerate() {
            // Row r reads x[pc] + sum over later cols; solve for x[pc].
            x[pc] = ctx.neg(&m[r][free]);
        }
        basis.push(x);
    }
    basis
}

/// `rows * x` for a column vector `x`.
pub fn mat_vec<F: FieldCtx>(ctx: &F, rows: &Matrix<F::Elem>, x: &[F::Elem]) -> Vec<F::Elem> {
    rows.iter()
        .map(|row| {
            let mut acc = ctx.zero();
            for (a, b) in row.iter().zip(x) {
                acc = ctx.add(&acc, &ctx.mul(a, b));
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_rank_and_kernel() {
        let ctx = Rationals;
        let m: Matrix<BigRational> = vec![
            vec![ctx.from_i64(1), ctx.from_i64(2), ctx.from_i64(3)],
            vec![ctx.from_i64(2), ctx.from_i64(4), ctx.from_i64(6)],
            vec![ctx.from_i64(0), ctx.from_i64(1), ctx.from_i64(1)],
        ];
        assert_eq!(rank(&ctx, m.clone()), 2);
        let ker = kernel_basis(&ctx, &m, 3);
        assert_eq!(ker.len(), 1);
        for x in &ker {
            assert!(mat_vec(&ctx, &m, x).iter().all(|e| ctx.is_zero(e)));
        }
    }

    #[test]
    fn prime_field_arithmetic() {
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.add(&5, &4), 2);
        assert_eq!(f7.mul(&3, &5), 1);
        assert_eq!(f7.inv(&3), Some(5));
        assert_eq!(f7.inv(&0), None);
        assert_eq!(f7.from_i64(-1), 6);
        assert_eq!(PrimeField::new(6), Err(FieldError::NotPrime(6)));
        assert_eq!(PrimeField::new(1), Err(FieldError::NotPrime(1)));
    }

    #[test]
    fn primality_checks() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(3));
        assert!(!is_prime_u64(561)); // Carmichael number
        assert!(is_prime_u64(1_000_000_007));
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime_u64(18_446_744_073_709_551_556));
    }

    #[test]
    fn prime_field_rank_matches_rationals_generically() {
        let fq = Rationals;
        let fp = PrimeField::new(1_000_003).unwrap();
        let entries = [[1i64, 4, 2], [3, -1, 0], [4, 3, 2]];
        let mq: Matrix<BigRational> = entries
            .iter()
            .map(|r| r.iter().map(|&e| fq.from_i64(e)).collect())
            .collect();
        let mp: Matrix<u64> = entries
            .iter()
            .map(|r| r.iter().map(|&e| fp.from_i64(e)).collect())
            .collect();
        assert_eq!(rank(&fq, mq), rank(&fp, mp));
    }
}
