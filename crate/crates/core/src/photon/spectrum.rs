//! Single-photon spectral and temporal amplitudes.
//!
//! A photon is described by a real spectral shape `ξ(ω)` centred on zero,
//! its central frequency `ω_s`, emission time `t₀` and Jones vector `v`:
//!
//! ```text
//! ξ⃗_s(ω) = v · ξ(ω − ω_s) · e^{iω t₀}
//! ```
//!
//! Temporal envelopes use the unitary kernel
//! `F[f](t) = (2π)^{-1/2} ∫ f(ω) e^{−iωt} dω`, under which the sinc shape
//! `ξ(ω) = sinc(ω/Δω)/√(πΔω)` maps onto `√(Δω/2)·rect(Δω t / 2)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Polarization;
use crate::error::{Error, Result};

/// Minimum tabulated samples per unit of bandwidth.
pub const MIN_POINTS_PER_BANDWIDTH: f64 = 64.0;

/// Half-width (in units of `1/Δω`) of the window holding all but < 1e-6 of
/// a Gaussian envelope's probability: `erfc(3.5) ≈ 7.4e-7`.
const GAUSSIAN_WINDOW: f64 = 3.5;

/// Mass a tabulated envelope may leave outside its window.
const WINDOW_DEFICIT: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub enum Shape {
    /// `ξ(ω) = (πΔω²)^{-1/4} exp(−ω²/(2Δω²))`.
    Gaussian {
        bandwidth: f64,
    },
    /// `ξ(ω) = sinc(ω/Δω) / √(πΔω)`.
    Sinc {
        bandwidth: f64,
    },
    Tabulated(TabulatedShape),
}

/// Real spectral shape sampled on a uniform grid of offsets from the
/// central frequency.
#[derive(Clone, Debug, PartialEq)]
pub struct TabulatedShape {
    pub bandwidth: f64,
    pub omega_start: f64,
    pub omega_step: f64,
    pub values: Vec<f64>,
    window: (f64, f64),
}

impl TabulatedShape {
    /// Validates normalization (`Σ ξ² Δω_grid = 1` to 1e-8) and caches the
    /// envelope's time window.
    pub fn new(bandwidth: f64, omega_start: f64, omega_step: f64, values: Vec<f64>) -> Result<Self> {
        if !(bandwidth > 0.0 && bandwidth.is_finite()) {
            return Err(Error::Validation(format!(
                "bandwidth must be positive, got {bandwidth}"
            )));
        }
        if !(omega_step > 0.0 && omega_step.is_finite()) || !omega_start.is_finite() {
            return Err(Error::Validation(
                "tabulated grid must be finite with positive step".into(),
            ));
        }
        if values.len() < 2 || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Validation(
                "tabulated shape needs at least two finite values".into(),
            ));
        }
        let mass: f64 = values.iter().map(|v| v * v).sum::<f64>() * omega_step;
        if (mass - 1.0).abs() > 1e-8 {
            return Err(Error::Validation(format!(
                "tabulated shape is not square-normalized: ∫ξ² = {mass}"
            )));
        }
        let mut shape = Self {
            bandwidth,
            omega_start,
            omega_step,
            values,
            window: (0.0, 0.0),
        };
        shape.window = shape.find_window();
        Ok(shape)
    }

    /// Samples `f` on `count` points starting at `omega_start` and rescales
    /// the result to unit norm.
    pub fn sample(
        bandwidth: f64,
        omega_start: f64,
        omega_step: f64,
        count: usize,
        f: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        let mut values: Vec<f64> = (0..count).map(|j| f(omega_start + omega_step * j as f64)).collect();
        let mass: f64 = values.iter().map(|v| v * v).sum::<f64>() * omega_step;
        if !(mass > 0.0) {
            return Err(Error::Validation("sampled shape is identically zero".into()));
        }
        let s = mass.sqrt();
        values.iter_mut().for_each(|v| *v /= s);
        Self::new(bandwidth, omega_start, omega_step, values)
    }

    pub fn points_per_bandwidth(&self) -> f64 {
        self.bandwidth / self.omega_step
    }

    fn value_at(&self, omega: f64) -> f64 {
        let x = (omega - self.omega_start) / self.omega_step;
        if x < 0.0 || x > (self.values.len() - 1) as f64 {
            return 0.0;
        }
        let j = x.floor() as usize;
        if j + 1 >= self.values.len() {
            return self.values[self.values.len() - 1];
        }
        let frac = x - j as f64;
        self.values[j] * (1.0 - frac) + self.values[j + 1] * frac
    }

    /// Riemann-sum Fourier transform on the stored grid; periodic in `τ`
    /// with period `2π/omega_step`.
    fn envelope(&self, tau: f64) -> Complex64 {
        let pref = self.omega_step / (2.0 * PI).sqrt();
        let step = Complex64::from_polar(1.0, -self.omega_step * tau);
        let mut phase = Complex64::from_polar(1.0, -self.omega_start * tau);
        let mut acc = Complex64::new(0.0, 0.0);
        for &v in &self.values {
            acc += phase * v;
            phase *= step;
        }
        acc * pref
    }

    fn find_window(&self) -> (f64, f64) {
        const SAMPLES: usize = 4096;
        let period = 2.0 * PI / self.omega_step;
        let dt = period / SAMPLES as f64;
        let start = -0.5 * period;
        let dens: Vec<f64> = (0..SAMPLES)
            .map(|k| self.envelope(start + dt * k as f64).norm_sqr() * dt)
            .collect();
        let total: f64 = dens.iter().sum();
        let cut = 0.5 * WINDOW_DEFICIT * total;
        let mut lo = 0;
        let mut acc = 0.0;
        while lo < SAMPLES && acc + dens[lo] < cut {
            acc += dens[lo];
            lo += 1;
        }
        let mut hi = SAMPLES;
        acc = 0.0;
        while hi > lo + 1 && acc + dens[hi - 1] < cut {
            acc += dens[hi - 1];
            hi -= 1;
        }
        (start + dt * lo as f64, start + dt * hi as f64)
    }
}

impl Shape {
    pub fn bandwidth(&self) -> f64 {
        match self {
            Shape::Gaussian { bandwidth } | Shape::Sinc { bandwidth } => *bandwidth,
            Shape::Tabulated(t) => t.bandwidth,
        }
    }

    /// `ξ(ω)` at an offset from the central frequency.
    pub fn value(&self, omega: f64) -> f64 {
        match self {
            Shape::Gaussian { bandwidth } => {
                (PI * bandwidth * bandwidth).powf(-0.25) * (-omega * omega / (2.0 * bandwidth * bandwidth)).exp()
            }
            Shape::Sinc { bandwidth } => {
                let x = omega / bandwidth;
                let s = if x == 0.0 { 1.0 } else { x.sin() / x };
                s / (PI * bandwidth).sqrt()
            }
            Shape::Tabulated(t) => t.value_at(omega),
        }
    }

    /// `F[ξ](τ)`.
    pub fn envelope(&self, tau: f64) -> Complex64 {
        match self {
            Shape::Gaussian { bandwidth } => {
                let a = bandwidth * bandwidth;
                Complex64::new((a / PI).powf(0.25) * (-0.5 * a * tau * tau).exp(), 0.0)
            }
            Shape::Sinc { bandwidth } => Complex64::new((0.5 * bandwidth).sqrt() * rect(0.5 * bandwidth * tau), 0.0),
            Shape::Tabulated(t) => t.envelope(tau),
        }
    }

    /// Interval of `τ` beyond which integrals of the envelope are negligible
    /// (below 1e-14 relative for Gaussians; the full period for tables).
    pub fn support(&self) -> (f64, f64) {
        match self {
            Shape::Gaussian { bandwidth } => (-8.5 / bandwidth, 8.5 / bandwidth),
            Shape::Sinc { bandwidth } => (-1.0 / bandwidth, 1.0 / bandwidth),
            Shape::Tabulated(t) => (-PI / t.omega_step, PI / t.omega_step),
        }
    }

    /// Interval of `τ` outside which the envelope is zero (sinc) or carries
    /// less than 1e-6 of its squared norm.
    pub fn window(&self) -> (f64, f64) {
        match self {
            Shape::Gaussian { bandwidth } => (-GAUSSIAN_WINDOW / bandwidth, GAUSSIAN_WINDOW / bandwidth),
            Shape::Sinc { bandwidth } => (-1.0 / bandwidth, 1.0 / bandwidth),
            Shape::Tabulated(t) => t.window,
        }
    }
}

/// `1` inside `|x| < 1/2`, `1/2` on the boundary, `0` outside.
pub fn rect(x: f64) -> f64 {
    let a = x.abs();
    if a < 0.5 {
        1.0
    } else if a == 0.5 {
        0.5
    } else {
        0.0
    }
}

/// Complete single-photon description.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralAmplitude {
    pub shape: Shape,
    /// `ω_s`, rad per time unit.
    pub central_frequency: f64,
    /// `t₀`.
    pub emission_time: f64,
    pub polarization: Polarization,
}

impl SpectralAmplitude {
    pub fn new(shape: Shape, central_frequency: f64, emission_time: f64, polarization: Polarization) -> Result<Self> {
        let bw = shape.bandwidth();
        if !(bw > 0.0 && bw.is_finite()) {
            return Err(Error::Validation(format!("bandwidth must be positive, got {bw}")));
        }
        if !central_frequency.is_finite() || !emission_time.is_finite() {
            return Err(Error::Validation(
                "central frequency and emission time must be finite".into(),
            ));
        }
        Ok(Self {
            shape,
            central_frequency,
            emission_time,
            polarization,
        })
    }

    pub fn sinc(
        bandwidth: f64,
        central_frequency: f64,
        emission_time: f64,
        polarization: Polarization,
    ) -> Result<Self> {
        Self::new(
            Shape::Sinc { bandwidth },
            central_frequency,
            emission_time,
            polarization,
        )
    }

    pub fn gaussian(
        bandwidth: f64,
        central_frequency: f64,
        emission_time: f64,
        polarization: Polarization,
    ) -> Result<Self> {
        Self::new(
            Shape::Gaussian { bandwidth },
            central_frequency,
            emission_time,
            polarization,
        )
    }

    pub fn bandwidth(&self) -> f64 {
        self.shape.bandwidth()
    }

    /// `Δω/ω_s`. The model assumes this is small but never relies on it
    /// beyond extending frequency integrals to the whole real line.
    pub fn fractional_bandwidth(&self) -> f64 {
        self.bandwidth() / self.central_frequency.abs()
    }

    /// Vector spectral amplitude `ξ⃗_s(ω)`.
    pub fn spectrum(&self, omega: f64) -> [Complex64; 2] {
        let scalar = Complex64::from_polar(
            self.shape.value(omega - self.central_frequency),
            omega * self.emission_time,
        );
        let j = self.polarization.jones();
        [j[0] * scalar, j[1] * scalar]
    }
}

/// Detection amplitude of one photon after a common propagation delay.
#[derive(Clone, Debug, PartialEq)]
pub struct TemporalAmplitude {
    pub shape: Shape,
    pub central_frequency: f64,
    pub emission_time: f64,
    pub delay: f64,
    pub polarization: Polarization,
}

impl TemporalAmplitude {
    /// Arrival time of the envelope centre, `t₀ + Δt`.
    pub fn centre(&self) -> f64 {
        self.emission_time + self.delay
    }

    /// `χ(t − t₀ − Δt)`.
    pub fn envelope(&self, t: f64) -> Complex64 {
        self.shape.envelope(t - self.centre())
    }

    /// Scalar amplitude `χ(t − t₀ − Δt) e^{iω_s(t − t₀ − Δt)}`.
    pub fn scalar(&self, t: f64) -> Complex64 {
        let tau = t - self.centre();
        self.shape.envelope(tau) * Complex64::from_polar(1.0, self.central_frequency * tau)
    }

    /// Full vector amplitude `χ⃗_s(t)`.
    pub fn amplitude(&self, t: f64) -> [Complex64; 2] {
        let s = self.scalar(t);
        let j = self.polarization.jones();
        [j[0] * s, j[1] * s]
    }

    /// Absolute time window carrying the envelope.
    pub fn window(&self) -> (f64, f64) {
        let (lo, hi) = self.shape.window();
        (lo + self.centre(), hi + self.centre())
    }
}

/// Temporal amplitude of `spec` after a propagation delay `delay`.
pub fn temporal_amplitude(spec: &SpectralAmplitude, delay: f64) -> Result<TemporalAmplitude> {
    if let Shape::Tabulated(t) = &spec.shape {
        if t.points_per_bandwidth() < MIN_POINTS_PER_BANDWIDTH {
            return Err(Error::Resolution(format!(
                "tabulated spectrum has {:.1} points per bandwidth, need {MIN_POINTS_PER_BANDWIDTH}",
                t.points_per_bandwidth()
            )));
        }
    }
    if !delay.is_finite() {
        return Err(Error::Validation("delay must be finite".into()));
    }
    Ok(TemporalAmplitude {
        shape: spec.shape.clone(),
        central_frequency: spec.central_frequency,
        emission_time: spec.emission_time,
        delay,
        polarization: spec.polarization,
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectrumRepr {
    shape: ShapeKind,
    bandwidth: f64,
    central_frequency: f64,
    emission_time: f64,
    jones: [f64; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    omega_start: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    omega_step: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values: Option<Vec<f64>>,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum ShapeKind {
    Sinc,
    Gaussian,
    Tabulated,
}

impl Serialize for SpectralAmplitude {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let j = self.polarization.jones();
        let (shape, omega_start, omega_step, values) = match &self.shape {
            Shape::Sinc { .. } => (ShapeKind::Sinc, None, None, None),
            Shape::Gaussian { .. } => (ShapeKind::Gaussian, None, None, None),
            Shape::Tabulated(t) => (
                ShapeKind::Tabulated,
                Some(t.omega_start),
                Some(t.omega_step),
                Some(t.values.clone()),
            ),
        };
        SpectrumRepr {
            shape,
            bandwidth: self.bandwidth(),
            central_frequency: self.central_frequency,
            emission_time: self.emission_time,
            jones: [j[0].re, j[0].im, j[1].re, j[1].im],
            omega_start,
            omega_step,
            values,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpectralAmplitude {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = SpectrumRepr::deserialize(d)?;
        let shape = match r.shape {
            ShapeKind::Sinc => Shape::Sinc { bandwidth: r.bandwidth },
            ShapeKind::Gaussian => Shape::Gaussian { bandwidth: r.bandwidth },
            ShapeKind::Tabulated => {
                let (Some(start), Some(step), Some(values)) = (r.omega_start, r.omega_step, r.values) else {
                    return Err(D::Error::custom(
                        "tabulated spectra need omega_start, omega_step and values",
                    ));
                };
                Shape::Tabulated(TabulatedShape::new(r.bandwidth, start, step, values).map_err(D::Error::custom)?)
            }
        };
        let pol = Polarization::new(
            Complex64::new(r.jones[0], r.jones[1]),
            Complex64::new(r.jones[2], r.jones[3]),
        )
        .map_err(D::Error::custom)?;
        SpectralAmplitude::new(shape, r.central_frequency, r.emission_time, pol).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::photon::quad::simpson_real;

    fn h() -> Polarization {
        Polarization::horizontal()
    }

    #[test]
    fn rect_envelope_values() {
        let bw = 2.0;
        let spec = SpectralAmplitude::sinc(bw, 5.0, 0.0, h()).unwrap();
        let amp = temporal_amplitude(&spec, 0.0).unwrap();
        let top = (bw / 2.0).sqrt();
        assert_eq!(amp.envelope(0.0).re, top);
        assert_eq!(amp.envelope(0.5).re, 0.5 * top);
        assert_eq!(amp.envelope(-0.5).re, 0.5 * top);
        assert_eq!(amp.envelope(0.5000001).re, 0.0);
        assert_eq!(amp.envelope(0.4999).re, top);
    }

    #[test]
    fn envelopes_are_normalized() {
        for shape in [Shape::Gaussian { bandwidth: 1.7 }, Shape::Sinc { bandwidth: 0.8 }] {
            let (lo, hi) = shape.window();
            let pad = 3.0 * (hi - lo);
            let m = simpson_real(|t| shape.envelope(t).norm_sqr(), lo - pad, hi + pad, 1e-12, 64);
            assert!((m - 1.0).abs() < 1e-8, "{shape:?}: {m}");
        }
    }

    #[test]
    fn sinc_spectrum_is_normalized_on_the_line() {
        // Closed-form: ∫ sinc²(ω/Δω)/(πΔω) dω = 1; check the named shape
        // value() against it on a wide but finite range.
        let shape = Shape::Sinc { bandwidth: 1.0 };
        let m = simpson_real(|w| shape.value(w).powi(2), -2000.0, 2000.0, 1e-10, 4000);
        // tail beyond |ω| = 2000 Δω is ≈ 1/(π·2000)
        assert!((m - (1.0 - 1.0 / (PI * 2000.0))).abs() < 1e-6, "{m}");
    }

    #[test]
    fn gaussian_window_holds_mass() {
        let shape = Shape::Gaussian { bandwidth: 1.3 };
        let (lo, hi) = shape.window();
        let inside = simpson_real(|t| shape.envelope(t).norm_sqr(), lo, hi, 1e-13, 32);
        assert!(1.0 - inside < 1e-6);
    }

    fn gaussian_table(bw: f64, points_per_bw: f64) -> TabulatedShape {
        let step = bw / points_per_bw;
        let count = (16.0 * points_per_bw) as usize + 1;
        let start = -8.0 * bw;
        TabulatedShape::sample(bw, start, step, count, |w| (-w * w / (2.0 * bw * bw)).exp()).unwrap()
    }

    #[test]
    fn tabulated_matches_analytic_gaussian() {
        let table = Shape::Tabulated(gaussian_table(1.0, 64.0));
        let analytic = Shape::Gaussian { bandwidth: 1.0 };
        for t in [-2.0, -0.7, 0.0, 0.3, 1.9] {
            assert!((table.envelope(t) - analytic.envelope(t)).norm() < 1e-9, "t={t}");
        }
        let (lo, hi) = table.window();
        assert!(lo < -3.0 && hi > 3.0 && hi < 10.0, "window {lo} {hi}");
    }

    #[test]
    fn tabulated_parseval() {
        let table = gaussian_table(1.0, 64.0);
        let period = 2.0 * PI / table.omega_step;
        let shape = Shape::Tabulated(table);
        let m = simpson_real(
            |t| shape.envelope(t).norm_sqr(),
            -0.5 * period,
            0.5 * period,
            1e-11,
            256,
        );
        assert!((m - 1.0).abs() < 1e-8, "{m}");
    }

    #[test]
    fn coarse_table_is_rejected() {
        let coarse = gaussian_table(1.0, 16.0);
        let spec = SpectralAmplitude::new(Shape::Tabulated(coarse), 0.0, 0.0, h()).unwrap();
        assert!(matches!(temporal_amplitude(&spec, 0.0), Err(Error::Resolution(_))));
    }

    #[test]
    fn unnormalized_table_is_rejected() {
        assert!(TabulatedShape::new(1.0, -1.0, 0.01, vec![1.0; 201]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let spec = SpectralAmplitude::gaussian(0.5, 12.0, -1.0, Polarization::linear(0.4)).unwrap();
        let s = serde_json::to_string(&spec).unwrap();
        assert!(s.contains(r#""shape":"gaussian""#));
        let back: SpectralAmplitude = serde_json::from_str(&s).unwrap();
        assert_eq!(back.shape, spec.shape);
        assert_eq!(back.central_frequency, 12.0);
        assert!((back.polarization.inner(&spec.polarization).norm() - 1.0).abs() < 1e-15);
        assert!(serde_json::from_str::<SpectralAmplitude>(
            r#"{"shape":"sinc","bandwidth":1,"central_frequency":0,"emission_time":0,"jones":[1,0,0,0],"colour":3}"#
        )
        .is_err());
    }
}
