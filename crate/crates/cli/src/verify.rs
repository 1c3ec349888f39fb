//! Built-in verification suites.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::str::FromStr;

use anyhow::{bail, Result};
use mbcs_core::dist::*;
use mbcs_core::linalg::{ginibre, haar_unitary, permanent_fast, permanent_naive, ComplexMatrix};
use mbcs_core::photon::{PolSetting, Polarization, SpectralAmplitude};
use mbcs_core::sampler::{gaussian_phase_test, gaussian_phase_test_with, PhaseSource};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Hom,
    Beat,
    Marginals,
    Normalization,
    Gaussian,
    Perm,
}

impl FromStr for Suite {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "hom" => Suite::Hom,
            "beat" => Suite::Beat,
            "marginals" => Suite::Marginals,
            "normalization" => Suite::Normalization,
            "gaussian" => Suite::Gaussian,
            "perm" => Suite::Perm,
            other => bail!("unknown suite {other}; expected hom, beat, marginals, normalization, gaussian or perm"),
        })
    }
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    /// Formula or claim under test.
    pub source: &'static str,
    pub statistic: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `statistic < threshold`.
    fn below(name: &'static str, source: &'static str, statistic: f64, threshold: f64) -> Self {
        Self {
            name,
            source,
            statistic,
            threshold,
            passed: statistic < threshold,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

pub fn run(suite: Suite, seed: u64) -> Result<VerifyReport> {
    let checks = match suite {
        Suite::Hom => hom()?,
        Suite::Beat => beat()?,
        Suite::Marginals => marginals(seed)?,
        Suite::Normalization => normalization(seed)?,
        Suite::Gaussian => gaussian(seed)?,
        Suite::Perm => perm(seed)?,
    };
    Ok(VerifyReport {
        suite,
        seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn beam_splitter() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[FRAC_1_SQRT_2, FRAC_1_SQRT_2], &[FRAC_1_SQRT_2, -FRAC_1_SQRT_2]])
        .expect("2x2 matrix")
}

fn sinc(colour: f64) -> Result<SpectralAmplitude> {
    Ok(SpectralAmplitude::sinc(1.0, colour, 0.0, Polarization::horizontal())?)
}

fn hom() -> Result<Vec<Check>> {
    let pol = Polarization::linear(0.4);
    let mut checks = Vec::new();
    for (name, photon) in [
        ("sinc photons", SpectralAmplitude::sinc(1.0, 2.0, 0.0, pol)?),
        ("gaussian photons", SpectralAmplitude::gaussian(1.0, 2.0, 0.0, pol)?),
    ] {
        let inst = MbcsInstance::with_auto_grid(
            beam_splitter(),
            vec![(0, photon.clone()), (1, photon)],
            1.0,
            DEFAULT_THETA,
        )?;
        let mut worst: f64 = 0.0;
        for k in inst.grid().indices() {
            for p1 in PolSetting::BOTH {
                for p2 in PolSetting::BOTH {
                    let ev = DetectionEvent::resolved(vec![0, 1], vec![k, k], vec![p1, p2])?;
                    worst = worst.max(event_probability(&inst, &ev)?);
                }
            }
            worst = worst.max(pol_insensitive_probability(&inst, &[0, 1], &[k, k])?);
        }
        checks.push(Check::below(
            name,
            "two-photon destructive interference at a balanced beam splitter: equal-bin coincidence probability (2T_I)^N |perm T|^2 vanishes",
            worst,
            1e-12,
        ));
    }
    Ok(checks)
}

fn beat() -> Result<Vec<Check>> {
    let (w1, w2) = (1.5, -2.5);
    let inst = MbcsInstance::with_auto_grid(
        beam_splitter(),
        vec![(0, sinc(w1)?), (1, sinc(w2)?)],
        0.0,
        DEFAULT_THETA,
    )?;
    let grid = *inst.grid();
    let scale = grid.half_width().powi(2);
    let (mut dc, mut general): (f64, f64) = (0.0, 0.0);
    for k1 in grid.indices() {
        for k2 in grid.indices() {
            let dt = grid.centre(k1) - grid.centre(k2);
            let curve = scale * ((w1 - w2) * dt / 2.0).sin().powi(2);
            dc = dc.max((different_colors_probability(&inst, &[0, 1], &[k1, k2])? - curve).abs());
            let ev = DetectionEvent::resolved(vec![0, 1], vec![k1, k2], vec![PolSetting::E1; 2])?;
            general = general.max((event_probability(&inst, &ev)? - curve).abs());
        }
    }
    Ok(vec![
        Check::below(
            "different-colors formula",
            "(Δω T_I)^N |perm[U_ds e^{iω_s t_d}]|^2 against the beat curve (Δω T_I)^2 sin^2((ω1−ω2)(t1−t2)/2)",
            dc,
            1e-9,
        ),
        Check::below(
            "general detection formula",
            "(2T_I)^N |perm T|^2 against the beat curve (Δω T_I)^2 sin^2((ω1−ω2)(t1−t2)/2)",
            general,
            1e-9,
        ),
    ])
}

fn marginals(seed: u64) -> Result<Vec<Check>> {
    let u = haar_unitary(6, seed)?;
    let inputs = [0, 3];
    let grid = TimeGrid::for_rect(0.0, 1.0, 5)?;
    let inst = MbcsInstance::new(u.clone(), vec![(0, sinc(1.0)?), (3, sinc(1.0)?)], 0.0, grid, 0.25)?;
    let mut equal: f64 = 0.0;
    for (ports, v) in time_marginal(&full_distribution(&inst, Mode::PolInsensitive)?) {
        equal = equal.max((v - permanent_fast(&u.submatrix(&ports, &inputs)?)?.norm_sqr()).abs());
    }

    let u = haar_unitary(3, seed)?;
    let inputs = [0, 2];
    let inst = MbcsInstance::with_auto_grid(u.clone(), vec![(0, sinc(0.0)?), (2, sinc(1000.0)?)], 0.0, 0.9)?;
    let mut rel: f64 = 0.0;
    for (ports, v) in time_marginal(&full_distribution(&inst, Mode::PolInsensitive)?) {
        let e = distinguishable_marginal(&u, &ports, &inputs)?;
        rel = rel.max((v - e).abs() / e);
    }
    Ok(vec![
        Check::below(
            "equal colors",
            "time marginal of identical sinc photons equals |perm U^(D,S)|^2",
            equal,
            1e-9,
        ),
        Check::below(
            "distinguishable colors",
            "time marginal at colour separation 1000 bandwidths against perm[|U_ds|^2] (permanent of a non-negative matrix), relative",
            rel,
            1e-2,
        ),
    ])
}

fn normalization(seed: u64) -> Result<Vec<Check>> {
    let mut oracle: f64 = 0.0;
    let mut balance: f64 = 0.0;
    for (m, n) in [(4, 2), (5, 2), (6, 3)] {
        let u = haar_unitary(m, seed.wrapping_add(m as u64))?;
        let inputs: Vec<usize> = (0..n).collect();
        let b = bunching_oracle(&u, &inputs)?;
        oracle = oracle.max((b.total_mass() - 1.0).abs());
        let grid = TimeGrid::for_rect(0.0, 1.0, 3)?;
        let photons = inputs
            .iter()
            .map(|&s| Ok((s, sinc(0.5)?)))
            .collect::<Result<Vec<_>>>()?;
        let inst = MbcsInstance::new(u, photons, 0.0, grid, 0.5)?;
        let cf = full_distribution(&inst, Mode::PolInsensitive)?.total_mass();
        balance = balance.max((cf + b.bunched_mass() - 1.0).abs());
    }
    Ok(vec![
        Check::below(
            "bunching oracle mass",
            "Σ over output multisets of |perm U_{μ,S}|^2 / Π μ_j! equals 1",
            oracle,
            1e-9,
        ),
        Check::below(
            "collision-free plus bunched mass",
            "collision-free detection mass of identical photons plus bunched oracle mass equals 1",
            balance,
            1e-9,
        ),
    ])
}

fn gaussian(seed: u64) -> Result<Vec<Check>> {
    let n = 3;
    let draws = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phases: Vec<f64> = (0..n * n).map(|_| rng.random::<f64>() * TAU).collect();
    let r = gaussian_phase_test(n, &phases, draws, seed)?;
    let c = gaussian_phase_test_with(n, &phases, draws, seed, PhaseSource::UnitCircle)?;
    let source =
        "entrywise phase rotation leaves i.i.d. standard complex normal entries i.i.d. standard complex normal";
    let check = |name, m: mbcs_core::sampler::MomentCheck| Check::below(name, source, m.statistic, m.threshold);
    Ok(vec![
        check("mean", r.mean),
        check("pseudo-variance", r.pseudo_variance),
        check("second moment", r.second_moment),
        check("fourth moment", r.fourth_moment),
        Check {
            name: "unit-circle control is rejected",
            source: "E|z|^4 = 1 on the unit circle, 2 for the complex normal",
            statistic: c.fourth_moment.statistic,
            threshold: c.fourth_moment.threshold,
            passed: !c.fourth_moment.passed,
        },
    ])
}

fn perm(seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let n = rng.random_range(2..=8);
        let a = ginibre(n, n, &mut rng)?;
        let naive = permanent_naive(&a)?;
        worst = worst.max((permanent_fast(&a)? - naive).norm() / naive.norm());
    }
    Ok(vec![Check::below(
        "Ryser versus permutation expansion",
        "perm A = Σ_σ Π_i A_{i,σ(i)}, 200 random complex matrices with N in 2..=8, relative error",
        worst,
        1e-10,
    )])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!("hom".parse::<Suite>().unwrap(), Suite::Hom);
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn cheap_suites_pass() {
        for s in [Suite::Hom, Suite::Beat, Suite::Normalization, Suite::Perm] {
            let r = run(s, 0).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }
}
