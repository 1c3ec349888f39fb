//! Matrix permanents.
//!
//! `perm A = Σ_σ Π_i A[i, σ(i)]`. Two evaluators are provided: a direct
//! permutation expansion, usable as an oracle up to 10×10, and Ryser's
//! inclusion–exclusion formula walked in Gray-code order, `O(2^n · n)`.
//!
//! The fast kernel splits the Gray-code walk into fixed-size blocks whose
//! partial sums are combined in block order, so the result does not depend
//! on how many worker threads evaluate the blocks.

use std::ops::Neg;

use num_complex::Complex64;
use num_traits::NumAssign;
use rayon::prelude::*;

use super::ComplexMatrix;
use crate::error::{Error, Result};

pub const NAIVE_MAX_N: usize = 10;
pub const FAST_MAX_N: usize = 30;

/// Gray-code steps per parallel block (`2^BLOCK_BITS`).
const BLOCK_BITS: u32 = 14;

/// Scalar types the permanent kernels accept.
pub trait PermScalar: NumAssign + Neg<Output = Self> + Copy + Send + Sync {}

impl<T> PermScalar for T where T: NumAssign + Neg<Output = T> + Copy + Send + Sync {}

fn check_square(m: &ComplexMatrix) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "permanent needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m.rows())
}

fn guard(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::SizeGuard {
            what: "permanent order",
            actual: n as u128,
            limit: limit as u128,
        });
    }
    Ok(())
}

/// Permanent by explicit sum over all `n!` permutations.
pub fn permanent_naive(m: &ComplexMatrix) -> Result<Complex64> {
    let n = check_square(m)?;
    guard(n, NAIVE_MAX_N)?;
    Ok(expand(m.as_slice(), n))
}

/// Real-valued counterpart of [`permanent_naive`] on a row-major `n×n` slice.
pub fn permanent_naive_real(n: usize, entries: &[f64]) -> Result<f64> {
    check_real(n, entries)?;
    guard(n, NAIVE_MAX_N)?;
    Ok(expand(entries, n))
}

/// Permanent via Ryser's formula with Gray-code subset iteration.
pub fn permanent_fast(m: &ComplexMatrix) -> Result<Complex64> {
    let n = check_square(m)?;
    guard(n, FAST_MAX_N)?;
    Ok(ryser(n, m.as_slice()))
}

/// Real-valued counterpart of [`permanent_fast`] on a row-major `n×n` slice.
pub fn permanent_fast_real(n: usize, entries: &[f64]) -> Result<f64> {
    check_real(n, entries)?;
    guard(n, FAST_MAX_N)?;
    Ok(ryser(n, entries))
}

/// [`permanent_fast`] on a dedicated pool of `threads` workers. The value is
/// bit-identical for every thread count.
pub fn permanent_fast_with_threads(m: &ComplexMatrix, threads: usize) -> Result<Complex64> {
    let n = check_square(m)?;
    guard(n, FAST_MAX_N)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Validation(format!("thread pool: {e}")))?;
    Ok(pool.install(|| ryser(n, m.as_slice())))
}

fn check_real(n: usize, entries: &[f64]) -> Result<()> {
    if n == 0 || entries.len() != n * n {
        return Err(Error::Dimension(format!(
            "expected {n}x{n} entries, got {}",
            entries.len()
        )));
    }
    Ok(())
}

fn expand<T: PermScalar>(a: &[T], n: usize) -> T {
    fn go<T: PermScalar>(a: &[T], n: usize, row: usize, used: u32, acc: T, total: &mut T) {
        if row == n {
            *total += acc;
            return;
        }
        for col in 0..n {
            if used & (1 << col) == 0 {
                go(a, n, row + 1, used | (1 << col), acc * a[row * n + col], total);
            }
        }
    }
    let mut total = T::zero();
    go(a, n, 0, 0, T::one(), &mut total);
    total
}

pub(crate) fn ryser<T: PermScalar>(n: usize, a: &[T]) -> T {
    debug_assert_eq!(a.len(), n * n);
    if n == 1 {
        return a[0];
    }
    // Column-major copy so that toggling a column touches contiguous memory.
    let mut cols = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            cols[j * n + i] = a[i * n + j];
        }
    }

    let steps: u64 = 1u64 << n;
    let block: u64 = 1u64 << BLOCK_BITS;
    let total = if steps <= block {
        walk(n, &cols, 1, steps)
    } else {
        let blocks = steps / block;
        let partial: Vec<T> = (0..blocks)
            .into_par_iter()
            .map(|b| walk(n, &cols, (b * block).max(1), (b + 1) * block))
            .collect();
        partial.into_iter().fold(T::zero(), |acc, x| acc + x)
    };
    if n % 2 == 1 {
        -total
    } else {
        total
    }
}

/// Sums `(-1)^{|S|} Π_i rowsum_i(S)` for Gray codes `g(k)`, `k ∈ [start, end)`.
fn walk<T: PermScalar>(n: usize, cols: &[T], start: u64, end: u64) -> T {
    let mut sums = vec![T::zero(); n];
    let mut gray = start ^ (start >> 1);
    for j in 0..n {
        if gray & (1 << j) != 0 {
            for (s, &c) in sums.iter_mut().zip(&cols[j * n..(j + 1) * n]) {
                *s += c;
            }
        }
    }
    let mut acc = T::zero();
    let mut k = start;
    loop {
        let prod = sums.iter().fold(T::one(), |p, &s| p * s);
        if gray.count_ones() % 2 == 1 {
            acc -= prod;
        } else {
            acc += prod;
        }
        k += 1;
        if k >= end {
            break;
        }
        let j = k.trailing_zeros() as usize;
        let bit = 1u64 << j;
        gray ^= bit;
        let col = &cols[j * n..(j + 1) * n];
        if gray & bit != 0 {
            for (s, &c) in sums.iter_mut().zip(col) {
                *s += c;
            }
        } else {
            for (s, &c) in sums.iter_mut().zip(col) {
                *s -= c;
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn identity_has_unit_permanent() {
        let id = ComplexMatrix::identity(3).unwrap();
        assert!((permanent_naive(&id).unwrap() - c(1.0)).norm() < 1e-15);
        assert!((permanent_fast(&id).unwrap() - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn all_ones_two_by_two() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]).unwrap();
        assert_eq!(permanent_naive(&m).unwrap(), c(2.0));
        assert_eq!(permanent_fast(&m).unwrap(), c(2.0));
    }

    #[test]
    fn balanced_beam_splitter_vanishes() {
        let m = ComplexMatrix::from_real_rows(&[&[FRAC_1_SQRT_2, FRAC_1_SQRT_2], &[FRAC_1_SQRT_2, -FRAC_1_SQRT_2]])
            .unwrap();
        assert!(permanent_naive(&m).unwrap().norm() < 1e-16);
        assert!(permanent_fast(&m).unwrap().norm() < 1e-16);
    }

    #[test]
    fn scaled_identity() {
        let z = Complex64::new(0.3, -1.1);
        for n in 1..=12 {
            let m = ComplexMatrix::diagonal(&vec![z; n]).unwrap();
            let p = permanent_fast(&m).unwrap();
            let expected = z.powu(n as u32);
            assert!((p - expected).norm() <= 1e-12 * expected.norm(), "n={n}");
        }
    }

    #[test]
    fn guards_and_shape_errors() {
        let rect = ComplexMatrix::zeros(2, 3).unwrap();
        assert!(matches!(permanent_naive(&rect), Err(Error::Dimension(_))));
        assert!(matches!(permanent_fast(&rect), Err(Error::Dimension(_))));
        let big = ComplexMatrix::identity(11).unwrap();
        assert!(matches!(permanent_naive(&big), Err(Error::SizeGuard { .. })));
        let huge = ComplexMatrix::identity(31).unwrap();
        assert!(matches!(permanent_fast(&huge), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn real_kernels_agree() {
        let a = [0.5, 0.5, 0.5, 0.5];
        assert!((permanent_fast_real(2, &a).unwrap() - 0.5).abs() < 1e-16);
        assert!((permanent_naive_real(2, &a).unwrap() - 0.5).abs() < 1e-16);
    }

    #[test]
    fn blocked_walk_matches_single_walk() {
        // n = 16 exceeds one block, so this exercises the block seams.
        let n = 16;
        let m = ComplexMatrix::from_fn(n, n, |i, j| {
            Complex64::new(
                ((i * 7 + j * 3) % 11) as f64 / 11.0 - 0.4,
                ((i + 2 * j) % 5) as f64 / 5.0 - 0.5,
            )
        })
        .unwrap();
        let blocked = permanent_fast(&m).unwrap();
        let mut cols = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                cols[j * n + i] = m[(i, j)];
            }
        }
        let single = walk(n, &cols, 1, 1 << n);
        assert!((blocked - single).norm() <= 1e-9 * single.norm());
        assert_eq!(
            permanent_fast_with_threads(&m, 1).unwrap(),
            permanent_fast_with_threads(&m, 3).unwrap()
        );
    }
}
