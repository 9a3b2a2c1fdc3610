//! Exact integer arithmetic primitives.
//!
//! Scalar number theory (integer square roots, perfect odd squares, p-adic
//! valuations, deterministic primality) together with exact determinants and
//! inertia of small symmetric integer matrices. All computations are exact:
//! matrix work runs over arbitrary-precision integers and reduced rationals,
//! and primality uses a fixed witness set proven for every 64-bit input, so
//! the answers are certificates rather than estimates.

// Matrix elimination reads and writes (i,j) and (j,i) together; indexed
// loops state that symmetry directly.
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Matrices are tiny in this domain: family presentations are 1×1 or 2×2,
/// and cross-check suites go up to 6×6.
pub const MAX_DIM: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactMathError {
    #[error("integer square root of a negative number ({0})")]
    NegativeSqrt(i128),
    #[error("p-adic valuation of zero is undefined")]
    ZeroValuation,
    #[error("p-adic valuation requires a prime base, got {0}")]
    NonPrimeBase(u64),
    #[error("matrix must be square, got {rows} rows with a row of length {cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix must be symmetric, entries ({i},{j}) and ({j},{i}) differ")]
    NotSymmetric { i: usize, j: usize },
    #[error("matrix dimension {0} out of range 1..={MAX_DIM}")]
    DimOutOfRange(usize),
}

/// Floor of the square root: the unique `r >= 0` with `r^2 <= m < (r+1)^2`.
///
/// Rejects negative input instead of guessing a convention for it.
pub fn isqrt(m: i128) -> Result<i128, ExactMathError> {
    if m < 0 {
        return Err(ExactMathError::NegativeSqrt(m));
    }
    Ok(m.sqrt())
}

/// The positive odd `l` with `l^2 = m`, if one exists.
///
/// Non-positive `m` and squares with even roots yield `None`; `m = 1`
/// yields `1`.
pub fn odd_square_root(m: i128) -> Option<i128> {
    if m <= 0 {
        return None;
    }
    let r = m.sqrt();
    (r * r == m && r % 2 != 0).then_some(r)
}

/// Largest `k` such that `q^k` divides `m`.
pub fn padic_valuation(m: i128, q: u64) -> Result<u32, ExactMathError> {
    if m == 0 {
        return Err(ExactMathError::ZeroValuation);
    }
    if !is_prime(q as i64) {
        return Err(ExactMathError::NonPrimeBase(q));
    }
    let q = q as i128;
    let mut rest = m;
    let mut val = 0;
    while rest % q == 0 {
        rest /= q;
        val += 1;
    }
    Ok(val)
}

// Strong-pseudoprime witnesses covering every u64 (Sinclair's set). i64
// inputs stay strictly inside that range, so the test is deterministic and
// exact, never probabilistic.
const MR_WITNESSES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

/// Deterministic primality for 64-bit integers.
///
/// `true` iff `m >= 2` and `m` has no nontrivial divisor. Exact for the full
/// `i64` range via a fixed-witness strong-pseudoprime test.
pub fn is_prime(m: i64) -> bool {
    if m < 2 {
        return false;
    }
    let n = m as u64;
    if n.is_multiple_of(2) {
        return n == 2;
    }
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// A symmetric integer matrix, row-major, dimension 1..=[`MAX_DIM`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMatrix {
    dim: usize,
    entries: Vec<i64>,
}

impl SymMatrix {
    /// Builds from row-major entries, validating shape and symmetry.
    pub fn new(dim: usize, entries: Vec<i64>) -> Result<Self, ExactMathError> {
        if dim == 0 || dim > MAX_DIM {
            return Err(ExactMathError::DimOutOfRange(dim));
        }
        if entries.len() != dim * dim {
            return Err(ExactMathError::NotSquare {
                rows: dim,
                cols: entries.len() / dim.max(1),
            });
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                if entries[i * dim + j] != entries[j * dim + i] {
                    return Err(ExactMathError::NotSymmetric { i, j });
                }
            }
        }
        Ok(Self { dim, entries })
    }

    /// Builds from explicit rows.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, ExactMathError> {
        let dim = rows.len();
        for row in rows {
            if row.len() != dim {
                return Err(ExactMathError::NotSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
        }
        Self::new(dim, rows.concat())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    /// Rows as slices, in order.
    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.entries.chunks(self.dim)
    }
}

/// Eigenvalue sign counts of a real symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InertiaTriple {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

impl InertiaTriple {
    pub fn dim(&self) -> usize {
        self.n_plus + self.n_zero + self.n_minus
    }

    /// Signature: positive count minus negative count.
    pub fn signature(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }
}

/// Exact determinant via fraction-free (Bareiss) elimination over
/// arbitrary-precision integers. No floating point, no rounding.
pub fn det_exact(m: &SymMatrix) -> BigInt {
    let n = m.dim;
    let mut a: Vec<Vec<BigInt>> = m
        .rows()
        .map(|row| row.iter().map(|&e| BigInt::from(e)).collect())
        .collect();
    let mut sign = 1i32;
    let mut prev_pivot = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev_pivot; // exact by Bareiss' identity
            }
        }
        prev_pivot = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Inertia via congruence diagonalization over exact rationals.
///
/// Symmetric elimination preserves the eigenvalue sign counts (Sylvester's
/// law), so the signs of the resulting diagonal are the inertia. Zero
/// diagonal pivots are repaired by the symmetric row+column addition trick;
/// fully zero rows are counted into `n_zero`.
pub fn inertia(m: &SymMatrix) -> InertiaTriple {
    let n = m.dim;
    let mut a: Vec<Vec<BigRational>> = m
        .rows()
        .map(|row| {
            row.iter()
                .map(|&e| BigRational::from_integer(e.into()))
                .collect()
        })
        .collect();
    let mut triple = InertiaTriple {
        n_plus: 0,
        n_zero: 0,
        n_minus: 0,
    };
    for i in 0..n {
        if a[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !a[j][j].is_zero()) {
                // Congruence by a transposition: swap rows and columns i, j.
                a.swap(i, j);
                for row in a.iter_mut() {
                    row.swap(i, j);
                }
            } else if let Some(j) = (i + 1..n).find(|&j| !a[i][j].is_zero()) {
                // All remaining diagonal entries vanish; adding row and
                // column j onto i makes the pivot 2*a[i][j] != 0.
                for l in 0..n {
                    let t = a[j][l].clone();
                    a[i][l] += t;
                }
                for row in a.iter_mut() {
                    let t = row[j].clone();
                    row[i] += t;
                }
            } else {
                triple.n_zero += 1;
                continue;
            }
        }
        let pivot = a[i][i].clone();
        for j in (i + 1)..n {
            if a[j][i].is_zero() {
                continue;
            }
            let factor = &a[j][i] / &pivot;
            for l in i..n {
                let t = &factor * &a[i][l];
                a[j][l] -= t;
            }
            for row in a.iter_mut().skip(i) {
                let t = &factor * &row[i];
                row[j] -= t;
            }
        }
        if pivot.is_positive() {
            triple.n_plus += 1;
        } else {
            triple.n_minus += 1;
        }
    }
    debug_assert_eq!(triple.dim(), n);
    triple
}

/// Inertia via the characteristic polynomial, an algorithm independent of
/// [`inertia`] used to cross-check it.
///
/// Coefficients come from the Faddeev–LeVerrier recurrence over exact
/// integers. A symmetric matrix has only real eigenvalues, so Descartes'
/// sign-variation bound is attained: the variation count of `p(x)` is the
/// number of positive eigenvalues, of `p(-x)` the negative ones, and the
/// trailing zero coefficients count the kernel.
pub fn inertia_charpoly(m: &SymMatrix) -> InertiaTriple {
    let coeffs = charpoly(m);
    let n_zero = coeffs.iter().rev().take_while(|c| c.is_zero()).count();
    let reduced = &coeffs[..coeffs.len() - n_zero];
    let n_plus = sign_variations(reduced.iter());
    // p(-x): the coefficient of x^(e-i) picks up (-1)^(e-i).
    let e = reduced.len() - 1;
    let n_minus = sign_variations(
        reduced
            .iter()
            .enumerate()
            .map(|(i, c)| if (e - i) % 2 == 1 { -c } else { c.clone() })
            .collect::<Vec<_>>()
            .iter(),
    );
    debug_assert_eq!(n_plus + n_minus, e);
    InertiaTriple {
        n_plus,
        n_zero,
        n_minus,
    }
}

/// Characteristic polynomial coefficients of `m`, highest degree first,
/// via Faddeev–LeVerrier (all divisions exact over the integers).
fn charpoly(m: &SymMatrix) -> Vec<BigInt> {
    let n = m.dim;
    let mat: Vec<Vec<BigInt>> = m
        .rows()
        .map(|row| row.iter().map(|&e| BigInt::from(e)).collect())
        .collect();
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(BigInt::one());
    let mut aux = mat.clone();
    for k in 1..=n {
        let trace: BigInt = (0..n).map(|i| aux[i][i].clone()).sum();
        let c = -trace / BigInt::from(k as i64);
        coeffs.push(c.clone());
        if k == n {
            break;
        }
        for (i, row) in aux.iter_mut().enumerate() {
            row[i] += &c;
        }
        aux = mat_mul(&mat, &aux);
    }
    coeffs
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                let t = &a[i][k] * &b[k][j];
                out[i][j] += t;
            }
        }
    }
    out
}

fn sign_variations<'a>(coeffs: impl Iterator<Item = &'a BigInt>) -> usize {
    let mut variations = 0;
    let mut last: Option<bool> = None;
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        let positive = c.is_positive();
        if let Some(prev) = last {
            if prev != positive {
                variations += 1;
            }
        }
        last = Some(positive);
    }
    variations
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Laplace cofactor expansion, the test-side determinant oracle.
    fn det_cofactor(rows: &[Vec<i64>]) -> BigInt {
        let n = rows.len();
        if n == 1 {
            return BigInt::from(rows[0][0]);
        }
        let mut det = BigInt::zero();
        for (j, &top) in rows[0].iter().enumerate() {
            if top == 0 {
                continue;
            }
            let minor: Vec<Vec<i64>> = rows[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter_map(|(c, &e)| (c != j).then_some(e))
                        .collect()
                })
                .collect();
            let term = BigInt::from(top) * det_cofactor(&minor);
            if j % 2 == 0 {
                det += term;
            } else {
                det -= term;
            }
        }
        det
    }

    fn sym(rows: &[Vec<i64>]) -> SymMatrix {
        SymMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(0).unwrap(), 0);
        assert_eq!(isqrt(225).unwrap(), 15);
        assert_eq!(isqrt(33).unwrap(), 5);
        assert_eq!(isqrt(-1), Err(ExactMathError::NegativeSqrt(-1)));
    }

    #[test]
    fn isqrt_bracketing_holds_on_a_dense_range() {
        for m in 0..=100_000i128 {
            let r = isqrt(m).unwrap();
            assert!(r * r <= m && m < (r + 1) * (r + 1), "m={m} r={r}");
        }
    }

    #[test]
    fn isqrt_around_large_squares() {
        for r in [3_037_000_498i128, 1 << 40, 999_999_999_999] {
            assert_eq!(isqrt(r * r - 1).unwrap(), r - 1);
            assert_eq!(isqrt(r * r).unwrap(), r);
            assert_eq!(isqrt(r * r + 1).unwrap(), r);
        }
    }

    #[test]
    fn odd_square_root_examples() {
        assert_eq!(odd_square_root(9), Some(3));
        assert_eq!(odd_square_root(33), None);
        assert_eq!(odd_square_root(4), None);
        assert_eq!(odd_square_root(1), Some(1));
        assert_eq!(odd_square_root(0), None);
        assert_eq!(odd_square_root(-9), None);
    }

    #[test]
    fn padic_valuation_examples() {
        assert_eq!(padic_valuation(69, 3).unwrap(), 1);
        assert_eq!(padic_valuation(9, 3).unwrap(), 2);
        assert_eq!(padic_valuation(7, 3).unwrap(), 0);
        assert_eq!(padic_valuation(-54, 3).unwrap(), 3);
        assert_eq!(padic_valuation(0, 3), Err(ExactMathError::ZeroValuation));
        assert_eq!(padic_valuation(12, 4), Err(ExactMathError::NonPrimeBase(4)));
    }

    #[test]
    fn padic_valuation_divides_exactly() {
        for m in [1i128, 2, 3, 6, 69, 81, 243, 1000, 59049, 2 * 59049] {
            for q in [2u64, 3, 5] {
                let v = padic_valuation(m, q).unwrap();
                let qk = (q as i128).pow(v);
                assert_eq!(m % qk, 0);
                assert_ne!(m % (qk * q as i128), 0);
            }
        }
    }

    fn is_prime_trial(m: i64) -> bool {
        if m < 2 {
            return false;
        }
        let mut d = 2i64;
        while d * d <= m {
            if m % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn is_prime_examples() {
        assert!(is_prime(11)); // 2*1 + 3^2 with (n,p) = (1,3)
        assert!(!is_prime(1));
        assert!(is_prime(2));
        assert!(!is_prime(0));
        assert!(!is_prime(-7));
    }

    #[test]
    fn is_prime_matches_trial_division_on_small_range() {
        for m in 0..20_000i64 {
            assert_eq!(is_prime(m), is_prime_trial(m), "m={m}");
        }
    }

    #[test]
    fn is_prime_rejects_strong_pseudoprimes() {
        // Strong pseudoprimes to several small bases, and Carmichael numbers.
        for m in [561i64, 1729, 25_326_001, 3_215_031_751, 3_474_749_660_383] {
            assert!(!is_prime(m), "m={m}");
        }
        for m in [
            2_147_483_647i64,          // 2^31 - 1
            9_223_372_036_854_775_783, // largest i64 prime
            1_000_000_000_039,
        ] {
            assert!(is_prime(m), "m={m}");
        }
    }

    #[test]
    fn det_examples() {
        assert_eq!(
            det_exact(&sym(&[vec![4, -1], vec![-1, 2]])),
            BigInt::from(7)
        );
        assert_eq!(
            det_exact(&sym(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])),
            BigInt::one()
        );
        assert_eq!(
            det_exact(&sym(&[vec![-1, -3], vec![-3, 2]])),
            BigInt::from(-11)
        );
        assert_eq!(det_exact(&sym(&[vec![0, 0], vec![0, 5]])), BigInt::zero());
    }

    #[test]
    fn det_matches_cofactor_oracle_on_random_matrices() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..300 {
            let dim = (next() % 6 + 1) as usize;
            let mut rows = vec![vec![0i64; dim]; dim];
            for i in 0..dim {
                for j in i..dim {
                    let e = (next() % 41) as i64 - 20;
                    rows[i][j] = e;
                    rows[j][i] = e;
                }
            }
            let m = sym(&rows);
            assert_eq!(det_exact(&m), det_cofactor(&rows), "rows={rows:?}");
        }
    }

    #[test]
    fn inertia_examples() {
        let def = inertia(&sym(&[vec![5]]));
        assert_eq!((def.n_plus, def.n_zero, def.n_minus), (1, 0, 0));
        assert_eq!(def.signature(), 1);

        let pos = inertia(&sym(&[vec![4, -1], vec![-1, 2]]));
        assert_eq!((pos.n_plus, pos.n_zero, pos.n_minus), (2, 0, 0));

        let mixed = inertia(&sym(&[vec![-1, -3], vec![-3, 2]]));
        assert_eq!((mixed.n_plus, mixed.n_zero, mixed.n_minus), (1, 0, 1));
    }

    #[test]
    fn inertia_handles_zero_pivots() {
        // Hyperbolic plane: eigenvalues +1 and -1 but zero diagonal.
        let hyp = inertia(&sym(&[vec![0, 1], vec![1, 0]]));
        assert_eq!((hyp.n_plus, hyp.n_zero, hyp.n_minus), (1, 0, 1));

        // Needs a diagonal swap first.
        let sw = inertia(&sym(&[vec![0, 0], vec![0, 5]]));
        assert_eq!((sw.n_plus, sw.n_zero, sw.n_minus), (1, 1, 0));

        // Goeritz corner with a vanishing twist entry.
        let g = inertia(&sym(&[vec![4, -1], vec![-1, 0]]));
        assert_eq!((g.n_plus, g.n_zero, g.n_minus), (1, 0, 1));

        let zero = inertia(&sym(&[vec![0, 0], vec![0, 0]]));
        assert_eq!((zero.n_plus, zero.n_zero, zero.n_minus), (0, 2, 0));
    }

    #[test]
    fn inertia_detects_rank_deficiency() {
        // Rank-1 outer product (1,2,3)^T (1,2,3).
        let r1 = inertia(&sym(&[vec![1, 2, 3], vec![2, 4, 6], vec![3, 6, 9]]));
        assert_eq!((r1.n_plus, r1.n_zero, r1.n_minus), (1, 2, 0));
    }

    #[test]
    fn charpoly_route_agrees_with_diagonalization() {
        let mut state = 0x853c49e6748fea9bu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..300 {
            let dim = (next() % 6 + 1) as usize;
            let mut rows = vec![vec![0i64; dim]; dim];
            for i in 0..dim {
                for j in i..dim {
                    // Small range keeps a healthy density of singular cases.
                    let e = (next() % 7) as i64 - 3;
                    rows[i][j] = e;
                    rows[j][i] = e;
                }
            }
            let m = sym(&rows);
            let a = inertia(&m);
            let b = inertia_charpoly(&m);
            assert_eq!(a, b, "rows={rows:?}");
            // n_zero pins the rank, and det != 0 iff full rank.
            assert_eq!(det_exact(&m).is_zero(), a.n_zero > 0, "rows={rows:?}");
        }
    }

    #[test]
    fn matrix_construction_is_validated() {
        assert!(matches!(
            SymMatrix::from_rows(&[vec![1, 2], vec![3, 4]]),
            Err(ExactMathError::NotSymmetric { .. })
        ));
        assert!(matches!(
            SymMatrix::from_rows(&[vec![1, 2]]),
            Err(ExactMathError::NotSquare { .. })
        ));
        assert!(matches!(
            SymMatrix::new(0, vec![]),
            Err(ExactMathError::DimOutOfRange(0))
        ));
        assert!(matches!(
            SymMatrix::new(9, vec![0; 81]),
            Err(ExactMathError::DimOutOfRange(9))
        ));
    }
}
