use std::collections::BTreeMap;

use super::SampleRecord;
use crate::dist::{DetectionEvent, Distribution, Mode};
use crate::error::{Error, Result};

/// Normalized frequency counts of `samples`, events in sorted order.
pub fn empirical_distribution(samples: &[SampleRecord]) -> Result<Distribution> {
    let first = samples
        .first()
        .ok_or_else(|| Error::Precondition("empirical distribution of zero samples".into()))?;
    let photons = first.event.photons();
    let mode = if first.event.pols().is_some() {
        Mode::PolResolved
    } else {
        Mode::PolInsensitive
    };
    let mut counts: BTreeMap<&DetectionEvent, u64> = BTreeMap::new();
    for s in samples {
        *counts.entry(&s.event).or_default() += 1;
    }
    let n = samples.len() as f64;
    Distribution::from_events(
        photons,
        mode,
        counts.into_iter().map(|(e, c)| (e.clone(), c as f64 / n)),
    )
}

/// `½ Σ |p − q|` over the union of supports; events missing from one side
/// count as probability zero there.
pub fn total_variation(p: &Distribution, q: &Distribution) -> f64 {
    let mut diff: BTreeMap<DetectionEvent, f64> = BTreeMap::new();
    for (e, x) in p.iter() {
        *diff.entry(e).or_default() += x;
    }
    for (e, x) in q.iter() {
        *diff.entry(e).or_default() -= x;
    }
    0.5 * diff.values().map(|d| d.abs()).sum::<f64>()
}
