use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Result;
use mbcs_core::dist::{event_count, full_distribution, Mode, MAX_EVENTS};
use mbcs_core::linalg::haar_unitary;
use mbcs_core::sampler::{empirical_distribution, exact_sample, total_variation};
use serde::Serialize;

use crate::config::RunConfig;
use crate::output::{create, write_json};

/// Writes a Haar unitary to `<out>/unitary.json`.
pub fn gen_unitary(modes: usize, seed: u64, out: &Path) -> Result<PathBuf> {
    let u = haar_unitary(modes, seed)?;
    write_json(out, "unitary.json", &u)
}

#[derive(Debug, Serialize)]
pub struct ProbsSummary {
    pub mode: Mode,
    pub modes: usize,
    pub photons: usize,
    pub bins: usize,
    pub half_width: f64,
    pub max_half_width: f64,
    pub theta: f64,
    pub events: usize,
    pub total_mass: f64,
    pub mass_deficit: f64,
}

/// Full distribution to `distribution.csv`, summary to `summary.json`.
pub fn probs(cfg: &RunConfig, base: &Path, mode: Mode, out: &Path) -> Result<ProbsSummary> {
    let inst = cfg.instance(base)?;
    let dist = full_distribution(&inst, mode)?;
    let (_, mut w) = create(out, "distribution.csv")?;
    dist.write_csv(&mut w)?;
    w.flush()?;
    let summary = ProbsSummary {
        mode,
        modes: inst.modes(),
        photons: inst.photons(),
        bins: inst.grid().len(),
        half_width: inst.grid().half_width(),
        max_half_width: inst.max_half_width(),
        theta: inst.theta(),
        events: dist.len(),
        total_mass: dist.total_mass(),
        mass_deficit: 1.0 - dist.total_mass(),
    };
    write_json(out, "summary.json", &summary)?;
    Ok(summary)
}

#[derive(Debug, Serialize)]
pub struct SampleSummary {
    pub mode: Mode,
    pub draws: usize,
    pub seed: u64,
    pub support: usize,
    pub distinct_events: usize,
    pub mass_deficit: f64,
    /// Distance between the empirical and the normalized exact distribution.
    pub tvd_vs_exact: f64,
}

/// `n` exact draws to `samples.csv`, their frequencies to `empirical.csv`
/// and statistics to `sample_summary.json`.
pub fn sample(cfg: &RunConfig, base: &Path, mode: Mode, n: usize, seed: u64, out: &Path) -> Result<SampleSummary> {
    let inst = cfg.instance(base)?;
    let count = event_count(&inst, mode);
    if count > MAX_EVENTS {
        anyhow::bail!("exact sampling enumerates {count} events, above the limit of {MAX_EVENTS}");
    }
    let dist = full_distribution(&inst, mode)?;
    let samples = exact_sample(&dist, n, seed)?;
    let (_, mut w) = create(out, "samples.csv")?;
    samples.write_csv(&mut w)?;
    w.flush()?;
    let empirical = empirical_distribution(&samples.records)?;
    let (_, mut w) = create(out, "empirical.csv")?;
    empirical.write_csv(&mut w)?;
    w.flush()?;
    let summary = SampleSummary {
        mode,
        draws: n,
        seed,
        support: dist.len(),
        distinct_events: empirical.len(),
        mass_deficit: samples.mass_deficit,
        tvd_vs_exact: total_variation(&empirical, &dist.normalized()?),
    };
    write_json(out, "sample_summary.json", &summary)?;
    Ok(summary)
}
