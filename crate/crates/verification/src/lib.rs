//! Acceptance criteria for the `mbcs-core` library, one function per
//! criterion. Each returns a [`Verdict`]; the `acceptance` test target runs
//! them in sequence, prints a PASS/FAIL line each and enforces the runtime
//! limits.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::time::{Duration, Instant};

use mbcs_core::dist::*;
use mbcs_core::linalg::*;
use mbcs_core::photon::{PolSetting, Polarization, SpectralAmplitude};
use mbcs_core::sampler::*;
use mbcs_core::{Complex64, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of one criterion before its runtime limit is applied.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            passed,
            detail: detail.into(),
        }
    }
}

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub limit: Duration,
    pub run: fn() -> Result<Verdict>,
}

pub const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        name: "HOM suppression",
        limit: Duration::from_secs(1),
        run: hom_suppression,
    },
    Criterion {
        id: 2,
        name: "permanent oracle equivalence",
        limit: Duration::from_secs(10),
        run: permanent_equivalence,
    },
    Criterion {
        id: 3,
        name: "quantum beat",
        limit: Duration::from_secs(1),
        run: quantum_beat,
    },
    Criterion {
        id: 4,
        name: "equal-colors marginal identity",
        limit: Duration::from_secs(30),
        run: equal_colors_marginal,
    },
    Criterion {
        id: 5,
        name: "distinguishable marginal",
        limit: Duration::from_secs(60),
        run: distinguishable_limit,
    },
    Criterion {
        id: 6,
        name: "normalization",
        limit: Duration::from_secs(30),
        run: normalization,
    },
    Criterion {
        id: 7,
        name: "Haar generator",
        limit: Duration::from_secs(60),
        run: haar_generator,
    },
    Criterion {
        id: 8,
        name: "embedding",
        limit: Duration::from_secs(10),
        run: embedding,
    },
    Criterion {
        id: 9,
        name: "phase invariance",
        limit: Duration::from_secs(30),
        run: phase_invariance,
    },
    Criterion {
        id: 10,
        name: "sampler fidelity",
        limit: Duration::from_secs(60),
        run: sampler_fidelity,
    },
    Criterion {
        id: 11,
        name: "performance floor",
        limit: Duration::from_secs(120),
        run: performance_floor,
    },
];

/// Runs one criterion and formats its report line.
pub fn evaluate(c: &Criterion) -> (bool, String) {
    let start = Instant::now();
    let verdict = (c.run)().unwrap_or_else(|e| Verdict::new(false, format!("error: {e}")));
    let elapsed = start.elapsed();
    let in_time = elapsed <= c.limit;
    let passed = verdict.passed && in_time;
    let line = format!(
        "[{}] criterion {:>2} {}: {} ({:.2} s, limit {} s{})",
        if passed { "PASS" } else { "FAIL" },
        c.id,
        c.name,
        verdict.detail,
        elapsed.as_secs_f64(),
        c.limit.as_secs(),
        if in_time { "" } else { ", over limit" },
    );
    (passed, line)
}

fn sinc(bandwidth: f64, colour: f64) -> SpectralAmplitude {
    SpectralAmplitude::sinc(bandwidth, colour, 0.0, Polarization::horizontal()).expect("valid sinc photon")
}

fn beam_splitter() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[FRAC_1_SQRT_2, FRAC_1_SQRT_2], &[FRAC_1_SQRT_2, -FRAC_1_SQRT_2]]).expect("2x2")
}

fn pol_settings(n: usize) -> impl Iterator<Item = Vec<PolSetting>> {
    (0u32..1 << n).map(move |mask| (0..n).map(|i| PolSetting::BOTH[(mask >> i & 1) as usize]).collect())
}

/// Criterion 1: Balanced beam splitter, identical photons: every equal-bin
/// coincidence probability below 1e-12.
pub fn hom_suppression() -> Result<Verdict> {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    let pol = Polarization::linear(0.7);
    let photons = [
        SpectralAmplitude::sinc(1.0, 3.0, 0.0, pol)?,
        SpectralAmplitude::gaussian(1.0, 3.0, 0.0, pol)?,
    ];
    for photon in photons {
        let inst = MbcsInstance::with_auto_grid(
            beam_splitter(),
            vec![(0, photon.clone()), (1, photon)],
            2.0,
            DEFAULT_THETA,
        )?;
        for k in inst.grid().indices() {
            for pols in pol_settings(2) {
                let ev = DetectionEvent::resolved(vec![0, 1], vec![k, k], pols)?;
                worst = worst.max(event_probability(&inst, &ev)?);
                count += 1;
            }
            worst = worst.max(pol_insensitive_probability(&inst, &[0, 1], &[k, k])?);
        }
    }
    Ok(Verdict::new(
        worst < 1e-12,
        format!("max P = {worst:.3e} over {count} events (< 1e-12)"),
    ))
}

/// Criterion 2: Ryser against the naive expansion on 200 random complex matrices.
pub fn permanent_equivalence() -> Result<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let n = rng.random_range(2..=8);
        let a = ginibre(n, n, &mut rng)?;
        let fast = permanent_fast(&a)?;
        let naive = permanent_naive(&a)?;
        worst = worst.max((fast - naive).norm() / naive.norm());
    }
    Ok(Verdict::new(
        worst < 1e-10,
        format!("max relative error {worst:.3e} (< 1e-10)"),
    ))
}

/// Criterion 3: Two colours at a balanced beam splitter: `(Δω T_I)² sin²(δ(t₁−t₂)/2)`
/// for every bin pair.
///
/// With `a = 1/√2` the permanent of
/// `[[a e^{iω₁t₁}, a e^{iω₂t₁}], [a e^{iω₁t₂}, −a e^{iω₂t₂}]]` is
/// `½ (e^{i(ω₁t₂+ω₂t₁)} − e^{i(ω₁t₁+ω₂t₂)})`, of modulus `|sin(δ(t₁−t₂)/2)|`.
pub fn quantum_beat() -> Result<Verdict> {
    let (bw, w1, w2) = (1.0, 2.0, -3.0);
    let delta = w1 - w2;
    let inst = MbcsInstance::with_auto_grid(
        beam_splitter(),
        vec![(0, sinc(bw, w1)), (1, sinc(bw, w2))],
        0.0,
        DEFAULT_THETA,
    )?;
    let grid = *inst.grid();
    let scale = (bw * grid.half_width()).powi(2);
    let mut worst: f64 = 0.0;
    for k1 in grid.indices() {
        for k2 in grid.indices() {
            let dt = grid.centre(k1) - grid.centre(k2);
            let expected = scale * (delta * dt / 2.0).sin().powi(2);
            let eq19 = different_colors_probability(&inst, &[0, 1], &[k1, k2])?;
            let ev = DetectionEvent::resolved(vec![0, 1], vec![k1, k2], vec![PolSetting::E1; 2])?;
            let general = event_probability(&inst, &ev)?;
            worst = worst.max((eq19 - expected).abs()).max((general - expected).abs());
        }
    }
    Ok(Verdict::new(
        worst < 1e-9,
        format!("L = {}, max |P − beat curve| = {worst:.3e} (< 1e-9)", grid.len()),
    ))
}

/// Criterion 4: Summing the different-colours formula with equal colours over all
/// bins recovers `|perm U^(D,S)|²` for every port set.
pub fn equal_colors_marginal() -> Result<Verdict> {
    let mut worst: f64 = 0.0;
    let mut sets = 0;
    for (m, n, seed) in [(6, 2, 40), (7, 3, 41)] {
        let u = haar_unitary(m, seed)?;
        let inputs: Vec<usize> = (0..n).map(|s| 2 * s).collect();
        let grid = TimeGrid::for_rect(0.0, 1.0, 6)?;
        let photons = inputs.iter().map(|&s| (s, sinc(1.0, 4.0))).collect();
        let inst = MbcsInstance::new(u.clone(), photons, 0.0, grid, 0.2)?;
        let marg = time_marginal(&full_distribution(&inst, Mode::PolInsensitive)?);
        for ports in marg.keys() {
            let mut total = 0.0;
            let mut bins = vec![0i64; n];
            loop {
                total += different_colors_probability(&inst, ports, &bins)?;
                let Some(i) = (0..n).rev().find(|&i| bins[i] < grid.k_max()) else {
                    break;
                };
                bins[i] += 1;
                bins[i + 1..].fill(grid.k_min());
            }
            let expected = permanent_fast(&u.submatrix(ports, &inputs)?)?.norm_sqr();
            worst = worst.max((total - expected).abs()).max((marg[ports] - expected).abs());
            sets += 1;
        }
    }
    Ok(Verdict::new(
        worst < 1e-9,
        format!("{sets} port sets, max deviation {worst:.3e} (< 1e-9)"),
    ))
}

/// Largest relative deviation of the time marginal from `perm[|U|²]`.
pub fn distinguishable_error(u: &ComplexMatrix, ratio: f64, theta: f64) -> Result<(f64, usize)> {
    let inputs = [0, 2];
    let photons = vec![(0, sinc(1.0, 0.0)), (2, sinc(1.0, ratio))];
    let inst = MbcsInstance::with_auto_grid(u.clone(), photons, 0.0, theta)?;
    let marg = time_marginal(&full_distribution(&inst, Mode::PolInsensitive)?);
    let mut worst: f64 = 0.0;
    for (ports, v) in &marg {
        let e = distinguishable_marginal(u, ports, &inputs)?;
        worst = worst.max((v - e).abs() / e);
    }
    Ok((worst, inst.grid().len()))
}

/// Criterion 5: Colour separations of 10, 10², 10³ bandwidths: the time marginal
/// approaches the classical permanent, within 1e-2 at 10³, monotonically.
pub fn distinguishable_limit() -> Result<Verdict> {
    let u = haar_unitary(3, 50)?;
    let mut errs = Vec::new();
    let mut detail = String::new();
    for ratio in [10.0, 100.0, 1000.0] {
        let (err, l) = distinguishable_error(&u, ratio, 0.9)?;
        detail.push_str(&format!("δ/Δω = {ratio}: L = {l}, rel err {err:.3e}; "));
        errs.push(err);
    }
    let monotone = errs.windows(2).all(|w| w[1] < w[0]);
    let last = errs[2];
    detail.push_str(&format!("monotone = {monotone}"));
    Ok(Verdict::new(monotone && last < 1e-2, detail))
}

/// Criterion 6: Bunching-inclusive mass is 1; collision-free mass plus bunched mass
/// is 1 on the equal-colours family.
pub fn normalization() -> Result<Verdict> {
    let mut worst_oracle: f64 = 0.0;
    let mut worst_balance: f64 = 0.0;
    for m in 1..=6usize {
        for n in 1..=m.min(3) {
            let u = haar_unitary(m, 60 + (10 * m + n) as u64)?;
            let inputs: Vec<usize> = (m - n..m).collect();
            let oracle = bunching_oracle(&u, &inputs)?;
            worst_oracle = worst_oracle.max((oracle.total_mass() - 1.0).abs());
            let grid = TimeGrid::for_rect(0.0, 1.0, 3)?;
            let photons = inputs.iter().map(|&s| (s, sinc(1.0, 1.0))).collect();
            let inst = MbcsInstance::new(u, photons, 0.0, grid, 0.5)?;
            let cf = full_distribution(&inst, Mode::PolResolved)?.total_mass();
            worst_balance = worst_balance.max((cf + oracle.bunched_mass() - 1.0).abs());
        }
    }
    Ok(Verdict::new(
        worst_oracle < 1e-9 && worst_balance < 1e-9,
        format!("max |oracle mass − 1| = {worst_oracle:.3e}, max |collision-free + bunched − 1| = {worst_balance:.3e} (< 1e-9)"),
    ))
}

/// Criterion 7: Unitarity for M ∈ {2, 8, 32}; `E|U_ij|² = 1/M` per entry within 5
/// standard errors over 2000 seeds at M = 4.
pub fn haar_generator() -> Result<Verdict> {
    let mut defect: f64 = 0.0;
    for m in [2, 8, 32] {
        defect = defect.max(haar_unitary(m, 70 + m as u64)?.unitarity_defect());
    }
    let m = 4;
    let seeds = 2000u64;
    let mut sum = vec![0.0; m * m];
    let mut sum_sq = vec![0.0; m * m];
    for seed in 0..seeds {
        let u = haar_unitary(m, seed)?;
        for (i, z) in u.as_slice().iter().enumerate() {
            let x = z.norm_sqr();
            sum[i] += x;
            sum_sq[i] += x * x;
        }
    }
    let k = seeds as f64;
    let mut worst_z: f64 = 0.0;
    for i in 0..m * m {
        let mean = sum[i] / k;
        let var = (sum_sq[i] / k - mean * mean) * k / (k - 1.0);
        worst_z = worst_z.max((mean - 1.0 / m as f64).abs() / (var / k).sqrt());
    }
    Ok(Verdict::new(
        defect < 1e-12 && worst_z < 5.0,
        format!("max ‖U†U − I‖ = {defect:.3e} (< 1e-12), worst entry {worst_z:.2} SE from 1/M (< 5)"),
    ))
}

/// Criterion 8: 100 random `X` embedded as `γX` in a unitary.
pub fn embedding() -> Result<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut defect, mut block): (f64, f64) = (0.0, 0.0);
    for trial in 0..100u64 {
        let n = rng.random_range(1..=4);
        let m = rng.random_range(2 * n..=3 * n);
        let x = ginibre(n, n, &mut rng)?;
        let e = embed_scaled(&x, m, trial)?;
        defect = defect.max(e.unitary.unitarity_defect());
        let idx: Vec<usize> = (0..n).collect();
        let top = e.unitary.submatrix(&idx, &idx)?;
        block = block.max(top.max_abs_diff(&x.scale(Complex64::new(e.gamma, 0.0))));
    }
    Ok(Verdict::new(
        defect < 1e-10 && block < 1e-10,
        format!("max unitarity defect {defect:.3e}, max block error {block:.3e} (< 1e-10)"),
    ))
}

/// Criterion 9: Phase-rotated Gaussian matrices pass every moment check; the
/// unit-circle control fails.
pub fn phase_invariance() -> Result<Verdict> {
    let n = 4;
    let draws = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut passed = 0;
    for trial in 0..20u64 {
        let phases: Vec<f64> = (0..n * n).map(|_| rng.random::<f64>() * TAU).collect();
        if gaussian_phase_test(n, &phases, draws, 900 + trial)?.passed {
            passed += 1;
        }
    }
    let phases: Vec<f64> = (0..n * n).map(|_| rng.random::<f64>() * TAU).collect();
    let control = gaussian_phase_test_with(n, &phases, draws, 999, PhaseSource::UnitCircle)?;
    Ok(Verdict::new(
        passed == 20 && !control.passed,
        format!(
            "{passed}/20 phase matrices pass; unit-circle control {} (fourth moment dev {:.3} vs threshold {:.3})",
            if control.passed { "passes" } else { "fails" },
            control.fourth_moment.statistic,
            control.fourth_moment.threshold
        ),
    ))
}

/// Criterion 10: TVD between 10⁶ exact draws and the exact distribution, and
/// byte-identical output for a repeated seed.
pub fn sampler_fidelity() -> Result<Verdict> {
    let grid = TimeGrid::for_rect(0.0, 1.0, 4)?;
    let u = haar_unitary(5, 100)?;
    let inst = MbcsInstance::new(u, vec![(1, sinc(1.0, 0.0)), (3, sinc(1.0, 0.3))], 0.0, grid, 0.5)?;
    let exact = full_distribution(&inst, Mode::PolResolved)?;
    let support = exact.len();
    let samples = exact_sample(&exact, 1_000_000, 10)?;
    let tvd = total_variation(&empirical_distribution(&samples.records)?, &exact.normalized()?);
    let mut a = Vec::new();
    let mut b = Vec::new();
    samples.write_csv(&mut a)?;
    exact_sample(&exact, 1_000_000, 10)?.write_csv(&mut b)?;
    let identical = a == b;
    Ok(Verdict::new(
        support <= 10_000 && tvd < 0.02 && identical,
        format!("support {support}, TVD {tvd:.4} (< 0.02), repeated seed byte-identical = {identical}"),
    ))
}

/// Criterion 11: Dense 24×24 permanent under 5 s on one thread; 26×26 at least twice
/// as fast on 4 threads as on 1, with identical output.
pub fn performance_floor() -> Result<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a24 = ginibre(24, 24, &mut rng)?;
    let start = Instant::now();
    permanent_fast_with_threads(&a24, 1)?;
    let t24 = start.elapsed().as_secs_f64();

    let a26 = ginibre(26, 26, &mut rng)?;
    let start = Instant::now();
    let p1 = permanent_fast_with_threads(&a26, 1)?;
    let t1 = start.elapsed().as_secs_f64();
    let start = Instant::now();
    let p4 = permanent_fast_with_threads(&a26, 4)?;
    let t4 = start.elapsed().as_secs_f64();
    let speedup = t1 / t4;
    let identical = p1 == p4;
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    Ok(Verdict::new(
        t24 < 5.0 && speedup >= 2.0 && identical,
        format!(
            "24x24 single-thread {t24:.2} s (< 5 s); 26x26 1 thread {t1:.2} s, 4 threads {t4:.2} s, speedup {speedup:.2} (≥ 2, {cores} core(s) available); identical output = {identical}"
        ),
    ))
}
