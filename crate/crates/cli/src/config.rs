//! Run configuration loaded from JSON.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use mbcs_core::dist::{MbcsInstance, Mode, TimeGrid, DEFAULT_THETA};
use mbcs_core::linalg::{haar_unitary, ComplexMatrix};
use mbcs_core::photon::SpectralAmplitude;
use serde::{Deserialize, Serialize};

/// Where the interferometer comes from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MatrixSource {
    /// JSON matrix file as written by `gen-unitary`; relative paths resolve
    /// against the config file's directory.
    File(PathBuf),
    Haar {
        modes: usize,
        seed: u64,
    },
}

/// Detection-time grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GridSpec {
    /// Largest admissible bins for `theta`.
    Auto,
    /// `bins` bins tiling the common rect support of sinc photons.
    Rect { bins: usize },
    Explicit {
        half_width: f64,
        #[serde(default)]
        origin: f64,
        k_min: i64,
        k_max: i64,
    },
}

fn default_theta() -> f64 {
    DEFAULT_THETA
}

fn default_mode() -> Mode {
    Mode::PolInsensitive
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub matrix: MatrixSource,
    /// Occupied input ports, aligned with `spectra`.
    pub inputs: Vec<usize>,
    pub spectra: Vec<SpectralAmplitude>,
    #[serde(default)]
    pub delay: f64,
    pub grid: GridSpec,
    #[serde(default = "default_theta")]
    pub theta: f64,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<(Self, PathBuf)> {
        let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        let cfg: RunConfig =
            serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((cfg, base))
    }

    pub fn unitary(&self, base: &Path) -> Result<ComplexMatrix> {
        Ok(match &self.matrix {
            MatrixSource::Haar { modes, seed } => haar_unitary(*modes, *seed)?,
            MatrixSource::File(p) => {
                let p = if p.is_absolute() { p.clone() } else { base.join(p) };
                let text = fs::read_to_string(&p).with_context(|| format!("reading matrix {}", p.display()))?;
                serde_json::from_str(&text).with_context(|| format!("parsing matrix {}", p.display()))?
            }
        })
    }

    /// Builds and validates the instance.
    pub fn instance(&self, base: &Path) -> Result<MbcsInstance> {
        if self.inputs.len() != self.spectra.len() {
            bail!("{} input ports but {} spectra", self.inputs.len(), self.spectra.len());
        }
        let u = self.unitary(base)?;
        let photons: Vec<(usize, SpectralAmplitude)> =
            self.inputs.iter().copied().zip(self.spectra.iter().cloned()).collect();
        let inst = match &self.grid {
            GridSpec::Auto => MbcsInstance::with_auto_grid(u, photons, self.delay, self.theta)?,
            GridSpec::Rect { bins } => {
                let first = self.spectra.first().context("no photons")?;
                let same = self
                    .spectra
                    .iter()
                    .all(|s| s.shape == first.shape && s.emission_time == first.emission_time);
                if !same || !matches!(first.shape, mbcs_core::photon::Shape::Sinc { .. }) {
                    bail!("rect grid needs sinc photons with equal bandwidth and emission time");
                }
                let grid = TimeGrid::for_rect(first.emission_time + self.delay, first.bandwidth(), *bins)?;
                MbcsInstance::new(u, photons, self.delay, grid, self.theta)?
            }
            GridSpec::Explicit {
                half_width,
                origin,
                k_min,
                k_max,
            } => {
                let grid = TimeGrid::with_origin(*half_width, *origin, *k_min, *k_max)?;
                MbcsInstance::new(u, photons, self.delay, grid, self.theta)?
            }
        };
        Ok(inst)
    }
}
