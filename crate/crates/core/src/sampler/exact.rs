use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::{join, DetectionEvent, Distribution};
use crate::error::{Error, Result};

/// Draws per random substream.
const CHUNK: usize = 1 << 16;

/// One draw of the sampler.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SampleRecord {
    pub draw_index: u64,
    pub event: DetectionEvent,
}

/// Output of [`exact_sample`].
#[derive(Clone, Debug, PartialEq)]
pub struct Samples {
    pub records: Vec<SampleRecord>,
    /// `1 − total_mass` of the source distribution; draws are taken from the
    /// renormalized distribution.
    pub mass_deficit: f64,
}

impl Samples {
    /// CSV with columns `draw_index,ports,bins,pols`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        write_samples_csv(&self.records, w)
    }
}

pub fn write_samples_csv<W: Write>(records: &[SampleRecord], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["draw_index", "ports", "bins", "pols"])?;
    for r in records {
        let ev = &r.event;
        out.write_record([
            r.draw_index.to_string(),
            join(ev.ports()),
            join(ev.bins()),
            ev.pols()
                .map(|p| join(&p.iter().map(|&s| u8::from(s)).collect::<Vec<_>>()))
                .unwrap_or_default(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Event indices drawn by cumulative inversion over the distribution's own
/// event order.
///
/// Draw `i` uses substream `i / 2^16` of a ChaCha8 generator keyed by
/// `seed`, so the output does not depend on the number of worker threads.
pub fn sample_indices(dist: &Distribution, n: usize, seed: u64) -> Result<Vec<usize>> {
    if dist.is_empty() {
        return Err(Error::Precondition("cannot sample from an empty distribution".into()));
    }
    let mut cdf = Vec::with_capacity(dist.len());
    let mut acc = 0.0;
    for &p in dist.probs() {
        acc += p;
        cdf.push(acc);
    }
    if !(acc > 0.0) {
        return Err(Error::Precondition("distribution has zero total mass".into()));
    }
    let last = dist.probs().iter().rposition(|&p| p > 0.0).unwrap_or(0);
    let chunks = n.div_ceil(CHUNK);
    let out: Vec<Vec<usize>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let len = CHUNK.min(n - c * CHUNK);
            (0..len)
                .map(|_| {
                    let u = rng.random::<f64>() * acc;
                    cdf.partition_point(|&x| x <= u).min(last)
                })
                .collect()
        })
        .collect();
    Ok(out.concat())
}

/// `n` i.i.d. draws from `dist` renormalized to unit mass.
pub fn exact_sample(dist: &Distribution, n: usize, seed: u64) -> Result<Samples> {
    let records = sample_indices(dist, n, seed)?
        .into_iter()
        .enumerate()
        .map(|(i, k)| SampleRecord {
            draw_index: i as u64,
            event: dist.event(k),
        })
        .collect();
    Ok(Samples {
        records,
        mass_deficit: 1.0 - dist.total_mass(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::Mode;

    fn uniform(l: i64) -> Distribution {
        let events = (0..l).map(|k| (DetectionEvent::unresolved(vec![0], vec![k]).unwrap(), 1.0 / l as f64));
        Distribution::from_events(1, Mode::PolInsensitive, events).unwrap()
    }

    #[test]
    fn point_mass() {
        let ev = DetectionEvent::unresolved(vec![1, 2], vec![0, 3]).unwrap();
        let d = Distribution::from_events(2, Mode::PolInsensitive, [(ev.clone(), 0.4)]).unwrap();
        let s = exact_sample(&d, 1000, 9).unwrap();
        assert!(s.records.iter().all(|r| r.event == ev));
        assert!((s.mass_deficit - 0.6).abs() < 1e-15);
        assert_eq!(s.records[999].draw_index, 999);
    }

    #[test]
    fn zero_probability_events_are_never_drawn() {
        let evs = [
            (DetectionEvent::unresolved(vec![0], vec![0]).unwrap(), 0.0),
            (DetectionEvent::unresolved(vec![0], vec![1]).unwrap(), 0.5),
            (DetectionEvent::unresolved(vec![0], vec![2]).unwrap(), 0.0),
        ];
        let d = Distribution::from_events(1, Mode::PolInsensitive, evs).unwrap();
        let idx = sample_indices(&d, 200_000, 3).unwrap();
        assert!(idx.iter().all(|&i| i == 1));
    }

    #[test]
    fn uniform_frequencies() {
        let l = 8;
        let n = 100_000;
        let idx = sample_indices(&uniform(l), n, 42).unwrap();
        let p = 1.0 / l as f64;
        let sigma = (p * (1.0 - p) / n as f64).sqrt();
        for k in 0..l as usize {
            let f = idx.iter().filter(|&&i| i == k).count() as f64 / n as f64;
            assert!((f - p).abs() < 5.0 * sigma, "bin {k}: {f}");
        }
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let d = uniform(13);
        let n = 3 * CHUNK + 17;
        let a = sample_indices(&d, n, 5).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let b = pool.install(|| sample_indices(&d, n, 5).unwrap());
        assert_eq!(a, b);
        assert_ne!(a, sample_indices(&d, n, 6).unwrap());
    }

    #[test]
    fn empty_support_errors() {
        let d = Distribution::from_events(1, Mode::PolInsensitive, []).unwrap();
        assert!(matches!(exact_sample(&d, 10, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn csv_layout() {
        let ev = DetectionEvent::resolved(vec![0, 3], vec![2, 1], vec![crate::photon::PolSetting::E2; 2]).unwrap();
        let d = Distribution::from_events(2, Mode::PolResolved, [(ev, 1.0)]).unwrap();
        let mut buf = Vec::new();
        exact_sample(&d, 2, 0).unwrap().write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "draw_index,ports,bins,pols\n0,0;3,2;1,2;2\n1,0;3,2;1,2;2\n"
        );
    }
}
