//! Haar-distributed random unitaries.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// One standard complex normal sample, `E|z|² = 1`.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Matrix of i.i.d. standard complex normal entries.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Result<ComplexMatrix> {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Haar-random `m×m` unitary, deterministic in `seed`.
///
/// Gram–Schmidt on a Ginibre matrix yields `Q` with `G = QR` and `R` carrying
/// a positive real diagonal, which is exactly the phase convention that makes
/// `Q` Haar distributed.
pub fn haar_unitary(m: usize, seed: u64) -> Result<ComplexMatrix> {
    if m == 0 {
        return Err(Error::Dimension("unitary dimension must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = ginibre(m, m, &mut rng)?;
    let cols: Vec<Vec<Complex64>> = (0..m).map(|j| g.column(j)).collect();
    let q = orthonormalize(Vec::new(), cols)
        .ok_or_else(|| Error::SingularInput("Ginibre sample is rank deficient".into()))?;
    from_columns(&q)
}

/// Appends each candidate to `basis` after projecting out every existing
/// basis vector (two passes) and normalizing. Returns `None` if a candidate
/// is numerically in the span of the basis.
pub(crate) fn orthonormalize(
    mut basis: Vec<Vec<Complex64>>,
    candidates: Vec<Vec<Complex64>>,
) -> Option<Vec<Vec<Complex64>>> {
    for mut v in candidates {
        let start = norm(&v);
        for _ in 0..2 {
            for b in &basis {
                let proj: Complex64 = b.iter().zip(&v).map(|(bi, vi)| bi.conj() * vi).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= proj * bi;
                }
            }
        }
        let nv = norm(&v);
        if !(nv > 1e-10 * start.max(f64::MIN_POSITIVE)) {
            return None;
        }
        v.iter_mut().for_each(|x| *x /= nv);
        basis.push(v);
    }
    Some(basis)
}

pub(crate) fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn from_columns(cols: &[Vec<Complex64>]) -> Result<ComplexMatrix> {
    let rows = cols.first().map_or(0, Vec::len);
    ComplexMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i])
}
