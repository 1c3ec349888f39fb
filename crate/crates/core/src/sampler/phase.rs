//! Moment test that entrywise phase rotations leave an i.i.d. standard
//! complex Gaussian matrix i.i.d. standard complex Gaussian.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::complex_normal;

pub const MIN_DRAWS: usize = 10_000;

/// Distribution of the unrotated entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhaseSource {
    ComplexNormal,
    /// Uniform on the unit circle: matches the first two moments of the
    /// complex normal but has `E|z|⁴ = 1` instead of 2.
    UnitCircle,
}

/// Worst entry of one moment check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentCheck {
    pub statistic: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl MomentCheck {
    fn new(statistic: f64, threshold: f64) -> Self {
        Self {
            statistic,
            threshold,
            passed: statistic < threshold,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseTestReport {
    pub n: usize,
    pub draws: usize,
    pub seed: u64,
    pub source: PhaseSource,
    /// `max |E X̃|`
    pub mean: MomentCheck,
    /// `max |E X̃²|`
    pub pseudo_variance: MomentCheck,
    /// `max |E|X̃|² − 1|`
    pub second_moment: MomentCheck,
    /// `max |E|X̃|⁴ − 2|`
    pub fourth_moment: MomentCheck,
    pub passed: bool,
}

/// [`gaussian_phase_test_with`] on complex normal input.
pub fn gaussian_phase_test(n: usize, phases: &[f64], draws: usize, seed: u64) -> Result<PhaseTestReport> {
    gaussian_phase_test_with(n, phases, draws, seed, PhaseSource::ComplexNormal)
}

/// Draws `draws` matrices `X`, rotates `X̃_ij = X_ij e^{iφ_ij}` and checks
/// the per-entry sample moments of `X̃` against the complex normal values
/// at 5 standard errors.
///
/// Entry `(i, j)` is drawn from its own substream `i·n + j`.
pub fn gaussian_phase_test_with(
    n: usize,
    phases: &[f64],
    draws: usize,
    seed: u64,
    source: PhaseSource,
) -> Result<PhaseTestReport> {
    if n == 0 || phases.len() != n * n {
        return Err(Error::Dimension(format!("need {n}x{n} phases, got {}", phases.len())));
    }
    if draws < MIN_DRAWS {
        return Err(Error::Precondition(format!(
            "need at least {MIN_DRAWS} draws, got {draws}"
        )));
    }
    let moments: Vec<[f64; 4]> = phases
        .par_iter()
        .enumerate()
        .map(|(idx, &phi)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(idx as u64);
            let rot = Complex64::from_polar(1.0, phi);
            let (mut m1, mut m2) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            let (mut a2, mut a4) = (0.0, 0.0);
            for _ in 0..draws {
                let x = match source {
                    PhaseSource::ComplexNormal => complex_normal(&mut rng),
                    PhaseSource::UnitCircle => Complex64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU),
                } * rot;
                let r2 = x.norm_sqr();
                m1 += x;
                m2 += x * x;
                a2 += r2;
                a4 += r2 * r2;
            }
            let d = draws as f64;
            [
                (m1 / d).norm(),
                (m2 / d).norm(),
                (a2 / d - 1.0).abs(),
                (a4 / d - 2.0).abs(),
            ]
        })
        .collect();
    let worst = |i: usize| moments.iter().map(|m| m[i]).fold(0.0, f64::max);
    let d = draws as f64;
    let mean = MomentCheck::new(worst(0), 5.0 / d.sqrt());
    let pseudo_variance = MomentCheck::new(worst(1), 5.0 / d.sqrt());
    let second_moment = MomentCheck::new(worst(2), 5.0 * (2.0 / d).sqrt());
    // Var |z|⁴ = E|z|⁸ − 4 = 20 for the standard complex normal
    let fourth_moment = MomentCheck::new(worst(3), 5.0 * (20.0 / d).sqrt());
    let passed = mean.passed && pseudo_variance.passed && second_moment.passed && fourth_moment.passed;
    Ok(PhaseTestReport {
        n,
        draws,
        seed,
        source,
        mean,
        pseudo_variance,
        second_moment,
        fourth_moment,
        passed,
    })
}
