//! Single-photon models: polarization, spectral and temporal amplitudes,
//! overlaps and the integration-time bound.

mod overlap;
mod polarization;
pub mod quad;
mod spectrum;

pub use overlap::{
    check_interference_condition, interference_matrix, max_integration_time, spectral_overlap, spectral_overlap_with,
    Interference, InterferenceMatrix, OverlapConvention,
};
pub use polarization::{PolSetting, Polarization};
pub use spectrum::{
    rect, temporal_amplitude, Shape, SpectralAmplitude, TabulatedShape, TemporalAmplitude, MIN_POINTS_PER_BANDWIDTH,
};
