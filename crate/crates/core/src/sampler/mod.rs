//! Exact sampling, empirical statistics and distribution distances.

mod exact;
mod phase;
mod stats;

pub use exact::{exact_sample, sample_indices, write_samples_csv, SampleRecord, Samples};
pub use phase::{gaussian_phase_test, gaussian_phase_test_with, MomentCheck, PhaseSource, PhaseTestReport, MIN_DRAWS};
pub use stats::{empirical_distribution, total_variation};
