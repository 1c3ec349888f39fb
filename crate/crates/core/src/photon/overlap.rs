//! Pairwise photon overlaps, interference classification and the
//! integration-time bound.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quad::simpson;
use super::spectrum::{Shape, SpectralAmplitude};
use crate::error::{Error, Result};

const QUAD_TOL: f64 = 1e-9;

/// Symmetric matrix `a(s,s') = |v_s†v_{s'}| ∫|χ_s(t−t₀s)||χ_{s'}(t−t₀s')| dt`.
#[derive(Clone, Debug, PartialEq)]
pub struct InterferenceMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl InterferenceMatrix {
    /// Wraps a row-major `n×n` table after checking symmetry, the unit
    /// diagonal and the `[0, 1]` range.
    pub fn from_entries(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::Validation(format!(
                "expected {n}x{n} entries, got {}",
                entries.len()
            )));
        }
        for i in 0..n {
            if (entries[i * n + i] - 1.0).abs() > 1e-8 {
                return Err(Error::Validation(format!(
                    "diagonal entry {i} is {}",
                    entries[i * n + i]
                )));
            }
            for j in 0..n {
                let v = entries[i * n + j];
                if !(-1e-8..=1.0 + 1e-8).contains(&v) {
                    return Err(Error::Validation(format!("entry ({i},{j}) = {v} outside [0,1]")));
                }
                if (v - entries[j * n + i]).abs() > 1e-8 {
                    return Err(Error::Validation(format!("entry ({i},{j}) breaks symmetry")));
                }
            }
        }
        Ok(Self { n, entries })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}

/// Outcome of the non-vanishing-overlap test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Interference {
    /// Every pair overlaps completely.
    Full,
    Partial,
    /// Some pair has no overlap at all.
    Vanishing,
}

/// Builds the N-photon interference matrix. `delay` shifts every photon
/// equally and therefore never changes the result.
pub fn interference_matrix(specs: &[SpectralAmplitude], delay: f64) -> Result<InterferenceMatrix> {
    if specs.is_empty() {
        return Err(Error::Validation("need at least one photon".into()));
    }
    if !delay.is_finite() {
        return Err(Error::Validation("delay must be finite".into()));
    }
    let n = specs.len();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        entries[i * n + i] = 1.0;
        for j in i + 1..n {
            let (a, b) = (&specs[i], &specs[j]);
            let pol = a.polarization.inner(&b.polarization).norm();
            let v = if pol == 0.0 {
                0.0
            } else {
                pol * envelope_overlap(&a.shape, a.emission_time, &b.shape, b.emission_time, 0.0, true).re
            };
            let v = v.clamp(0.0, 1.0);
            entries[i * n + j] = v;
            entries[j * n + i] = v;
        }
    }
    InterferenceMatrix::from_entries(n, entries)
}

/// `∫ g₁(t − c₁) g₂(t − c₂) e^{iκt} dt` for envelopes `g` (their moduli if
/// `modulus` is set).
pub(crate) fn envelope_overlap(s1: &Shape, c1: f64, s2: &Shape, c2: f64, kappa: f64, modulus: bool) -> Complex64 {
    match (s1, s2) {
        (Shape::Sinc { bandwidth: w1 }, Shape::Sinc { bandwidth: w2 }) => rect_rect(*w1, c1, *w2, c2, kappa),
        (Shape::Gaussian { bandwidth: w1 }, Shape::Gaussian { bandwidth: w2 }) => gauss_gauss(*w1, c1, *w2, c2, kappa),
        _ => envelope_overlap_quadrature(s1, c1, s2, c2, kappa, modulus),
    }
}

pub(crate) fn envelope_overlap_quadrature(
    s1: &Shape,
    c1: f64,
    s2: &Shape,
    c2: f64,
    kappa: f64,
    modulus: bool,
) -> Complex64 {
    let (l1, h1) = s1.support();
    let (l2, h2) = s2.support();
    let lo = (l1 + c1).max(l2 + c2);
    let hi = (h1 + c1).min(h2 + c2);
    if !(hi > lo) {
        return Complex64::new(0.0, 0.0);
    }
    let resolution = (hi - lo) * s1.bandwidth().max(s2.bandwidth());
    let cycles = kappa.abs() * (hi - lo) / (2.0 * PI);
    let panels = (8.0 * resolution + 4.0 * cycles).ceil().clamp(8.0, 1e6) as usize;
    simpson(
        |t| {
            let (g1, g2) = (s1.envelope(t - c1), s2.envelope(t - c2));
            let g = if modulus {
                Complex64::new(g1.norm() * g2.norm(), 0.0)
            } else {
                g1.conj() * g2
            };
            g * Complex64::from_polar(1.0, kappa * t)
        },
        lo,
        hi,
        QUAD_TOL,
        panels,
    )
}

fn rect_rect(w1: f64, c1: f64, w2: f64, c2: f64, kappa: f64) -> Complex64 {
    let lo = (c1 - 1.0 / w1).max(c2 - 1.0 / w2);
    let hi = (c1 + 1.0 / w1).min(c2 + 1.0 / w2);
    if !(hi > lo) {
        return Complex64::new(0.0, 0.0);
    }
    let height = (0.25 * w1 * w2).sqrt();
    let len = hi - lo;
    let x = 0.5 * kappa * len;
    let sinc = if x == 0.0 { 1.0 } else { x.sin() / x };
    Complex64::from_polar(height * len * sinc, 0.5 * kappa * (hi + lo))
}

fn gauss_gauss(w1: f64, c1: f64, w2: f64, c2: f64, kappa: f64) -> Complex64 {
    let (a1, a2) = (w1 * w1, w2 * w2);
    let p = 0.5 * (a1 + a2);
    let mid = (a1 * c1 + a2 * c2) / (a1 + a2);
    let d = c1 - c2;
    let pref = (a1 * a2).powf(0.25) / PI.sqrt() * (PI / p).sqrt();
    let decay = (-a1 * a2 * d * d / (2.0 * (a1 + a2)) - kappa * kappa / (4.0 * p)).exp();
    Complex64::from_polar(pref * decay, kappa * mid)
}

/// Which product the frequency overlap integrates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OverlapConvention {
    /// `ξ⃗_s(ω)·ξ⃗_{s'}(ω)`, no conjugation.
    Bilinear,
    /// `ξ⃗_s(ω)†ξ⃗_{s'}(ω)`, the Hilbert-space inner product.
    Hermitian,
}

/// `∫₀^∞ ξ⃗_s(ω)·ξ⃗_{s'}(ω) dω`, without conjugation.
pub fn spectral_overlap(s: &SpectralAmplitude, t: &SpectralAmplitude) -> Complex64 {
    spectral_overlap_with(s, t, OverlapConvention::Bilinear)
}

/// Frequency-domain overlap of two photons.
///
/// For the analytic shapes the lower limit is extended to `−∞`
/// (narrow-band photons) and the integral is evaluated in the time domain by
/// Parseval's identity, where the sinc tails become compact rects. Tabulated
/// spectra are summed directly on their grid over `ω ≥ 0`.
pub fn spectral_overlap_with(s: &SpectralAmplitude, t: &SpectralAmplitude, conv: OverlapConvention) -> Complex64 {
    let pol = match conv {
        OverlapConvention::Bilinear => s.polarization.dot(&t.polarization),
        OverlapConvention::Hermitian => s.polarization.inner(&t.polarization),
    };
    if pol == Complex64::new(0.0, 0.0) {
        return pol;
    }
    let scalar = match (&s.shape, &t.shape) {
        (Shape::Tabulated(_), _) | (_, Shape::Tabulated(_)) => frequency_sum(s, t, conv),
        _ => {
            // F[ξ(·−ω_s)e^{iωt₀}](t) = e^{−iω_s(t−t₀)} χ(t−t₀); the bilinear
            // product pairs t's amplitude with that of conj(ξ⃗_s), whose
            // emission time is −t₀.
            let c1 = match conv {
                OverlapConvention::Bilinear => -s.emission_time,
                OverlapConvention::Hermitian => s.emission_time,
            };
            let c2 = t.emission_time;
            let kappa = s.central_frequency - t.central_frequency;
            let phase = Complex64::from_polar(1.0, -s.central_frequency * c1 + t.central_frequency * c2);
            phase * envelope_overlap(&s.shape, c1, &t.shape, c2, kappa, false)
        }
    };
    pol * scalar
}

fn frequency_sum(s: &SpectralAmplitude, t: &SpectralAmplitude, conv: OverlapConvention) -> Complex64 {
    // Sum on the grid of whichever tabulated shape is present.
    let (grid_owner, other) = match &s.shape {
        Shape::Tabulated(_) => (s, t),
        _ => (t, s),
    };
    let Shape::Tabulated(table) = &grid_owner.shape else {
        unreachable!("caller guarantees a tabulated shape");
    };
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..table.values.len() {
        let omega = grid_owner.central_frequency + table.omega_start + table.omega_step * j as f64;
        if omega < 0.0 {
            continue;
        }
        let a = Complex64::from_polar(s.shape.value(omega - s.central_frequency), omega * s.emission_time);
        let b = Complex64::from_polar(t.shape.value(omega - t.central_frequency), omega * t.emission_time);
        let a = match conv {
            OverlapConvention::Bilinear => a,
            OverlapConvention::Hermitian => a.conj(),
        };
        acc += a * b;
    }
    let _ = other;
    acc * table.omega_step
}

/// Largest half-bin width `T_I` keeping both envelope variation and beat
/// phase within one bin below `theta`:
/// `θ / max(max Δω_s, max |ω_s − ω_{s'}|)`.
pub fn max_integration_time(specs: &[SpectralAmplitude], theta: f64) -> Result<f64> {
    if specs.is_empty() {
        return Err(Error::Validation("need at least one photon".into()));
    }
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Validation(format!("theta must lie in (0, 1), got {theta}")));
    }
    let mut scale = specs.iter().map(SpectralAmplitude::bandwidth).fold(0.0, f64::max);
    for (i, a) in specs.iter().enumerate() {
        for b in &specs[i + 1..] {
            scale = scale.max((a.central_frequency - b.central_frequency).abs());
        }
    }
    Ok(theta / scale)
}

pub fn check_interference_condition(a: &InterferenceMatrix) -> Interference {
    let entries = a.entries();
    if entries.iter().any(|&v| v <= 1e-9) {
        Interference::Vanishing
    } else if entries.iter().all(|&v| v >= 1.0 - 1e-6) {
        Interference::Full
    } else {
        Interference::Partial
    }
}
