//! Spectral norm and the embedding of a scaled matrix into a unitary.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::haar::{complex_normal, from_columns, norm, orthonormalize};
use super::ComplexMatrix;
use crate::error::{Error, Result};

const POWER_MAX_ITERS: usize = 100_000;

/// Largest singular value, by power iteration on `X†X`.
pub fn spectral_norm(x: &ComplexMatrix) -> Result<f64> {
    if x.is_zero() {
        return Err(Error::SingularInput("spectral norm of the zero matrix".into()));
    }
    let gram = x.adjoint().matmul(x)?;
    let n = gram.rows();
    // Start from X† applied to a fixed vector so the start is never
    // orthogonal to the dominant right singular vector when X has a nonzero row.
    let mut v: Vec<Complex64> = (0..n)
        .map(|j| {
            (0..x.rows())
                .map(|i| x[(i, j)].conj() * Complex64::new(1.0, 0.1 * i as f64))
                .sum()
        })
        .collect();
    if norm(&v) == 0.0 {
        v = (0..n).map(|j| Complex64::new(1.0, 0.37 * j as f64)).collect();
    }
    let mut lambda = 0.0f64;
    let mut quiet = 0;
    for _ in 0..POWER_MAX_ITERS {
        let nv = norm(&v);
        v.iter_mut().for_each(|z| *z /= nv);
        let w: Vec<Complex64> = (0..n)
            .map(|i| gram.row(i).iter().zip(&v).map(|(g, vi)| g * vi).sum())
            .collect();
        let next: f64 = v.iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum();
        if (next - lambda).abs() <= 1e-15 * next {
            quiet += 1;
            if quiet >= 3 {
                lambda = next;
                break;
            }
        } else {
            quiet = 0;
        }
        lambda = next;
        v = w;
        if norm(&v) == 0.0 {
            break;
        }
    }
    Ok(lambda.max(0.0).sqrt())
}

/// Result of [`embed_scaled`].
#[derive(Clone, Debug)]
pub struct Embedding {
    pub unitary: ComplexMatrix,
    /// `1 / ‖X‖₂`.
    pub gamma: f64,
}

/// Builds an `m×m` unitary whose top-left `n×n` block is `γX` with
/// `γ = 1/‖X‖₂`.
///
/// The first `n` columns are `[γX; B; 0]` with `B†B = I − γ²X†X`; the
/// remaining `m − n` columns are a seeded random orthonormal completion.
pub fn embed_scaled(x: &ComplexMatrix, m: usize, seed: u64) -> Result<Embedding> {
    if !x.is_square() {
        return Err(Error::Dimension(format!(
            "expected square X, got {}x{}",
            x.rows(),
            x.cols()
        )));
    }
    let n = x.rows();
    if m < 2 * n {
        return Err(Error::Dimension(format!(
            "embedding {n}x{n} needs M >= {}, got {m}",
            2 * n
        )));
    }
    let gamma = 1.0 / spectral_norm(x)?;
    let a = x.scale(Complex64::new(gamma, 0.0));

    let ata = a.adjoint().matmul(&a)?;
    let eig = DMatrix::from_fn(n, n, |i, j| ata[(i, j)]).symmetric_eigen();
    // B = diag(sqrt(1 - λ_k)) V†.
    let b = ComplexMatrix::from_fn(n, n, |k, j| {
        let s = (1.0 - eig.eigenvalues[k]).max(0.0).sqrt();
        eig.eigenvectors[(j, k)].conj() * s
    })?;

    let zero = Complex64::new(0.0, 0.0);
    let leading: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut col = vec![zero; m];
            for i in 0..n {
                col[i] = a[(i, j)];
                col[n + i] = b[(i, j)];
            }
            col
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis = leading;
    while basis.len() < m {
        let candidate: Vec<Complex64> = (0..m).map(|_| complex_normal(&mut rng)).collect();
        if let Some(b) = orthonormalize(basis.clone(), vec![candidate]) {
            basis = b;
        }
    }
    Ok(Embedding {
        unitary: from_columns(&basis)?,
        gamma,
    })
}
