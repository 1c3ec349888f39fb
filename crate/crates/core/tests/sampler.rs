use mbcs_core::dist::*;
use mbcs_core::linalg::haar_unitary;
use mbcs_core::photon::{Polarization, SpectralAmplitude};
use mbcs_core::sampler::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sinc(w: f64) -> SpectralAmplitude {
    SpectralAmplitude::sinc(1.0, w, 0.0, Polarization::horizontal()).unwrap()
}

/// M = 5, N = 2, L = 4, two colours: 10·16 = 160 events.
fn instance() -> MbcsInstance {
    let grid = TimeGrid::for_rect(0.0, 1.0, 4).unwrap();
    MbcsInstance::new(
        haar_unitary(5, 21).unwrap(),
        vec![(0, sinc(0.0)), (3, sinc(0.4))],
        0.0,
        grid,
        0.5,
    )
    .unwrap()
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    0.5 * (xs[(n - 1) / 2] + xs[n / 2])
}

#[test]
fn single_photon_bins_are_uniform() {
    let l = 6;
    let grid = TimeGrid::for_rect(0.0, 1.0, l).unwrap();
    let u = mbcs_core::linalg::ComplexMatrix::identity(1).unwrap();
    let inst = MbcsInstance::new(u, vec![(0, sinc(1.0))], 0.0, grid, 0.5).unwrap();
    let d = full_distribution(&inst, Mode::PolInsensitive).unwrap();
    let n = 100_000;
    let s = exact_sample(&d, n, 77).unwrap();
    assert!(s.mass_deficit.abs() < 1e-9);
    let emp = empirical_distribution(&s.records).unwrap();
    let p = 1.0 / l as f64;
    let sigma = (p * (1.0 - p) / n as f64).sqrt();
    assert_eq!(emp.len(), l);
    for &f in emp.probs() {
        assert!((f - p).abs() < 5.0 * sigma);
    }
}

#[test]
fn empirical_approaches_exact() {
    let exact = full_distribution(&instance(), Mode::PolInsensitive).unwrap();
    assert_eq!(exact.len(), 160);
    let s = exact_sample(&exact, 1_000_000, 3).unwrap();
    let emp = empirical_distribution(&s.records).unwrap();
    assert!(emp.iter().all(|(e, _)| exact.iter().any(|(f, _)| f == e)));
    let tvd = total_variation(&emp, &exact.normalized().unwrap());
    assert!(tvd < 0.02, "tvd {tvd}");
}

#[test]
fn tvd_shrinks_with_draws() {
    let source = full_distribution(&instance(), Mode::PolInsensitive).unwrap();
    let exact = source.normalized().unwrap();
    let mut last = f64::INFINITY;
    for n in [1_000, 10_000, 100_000, 1_000_000] {
        let tvds: Vec<f64> = (0..10u64)
            .map(|seed| {
                let s = exact_sample(&exact, n, seed).unwrap();
                total_variation(&empirical_distribution(&s.records).unwrap(), &exact)
            })
            .collect();
        let m = median(tvds);
        assert!(m < last, "n = {n}: median {m} ≥ {last}");
        last = m;
    }
}

#[test]
fn sampling_is_oblivious_to_event_order() {
    let exact = full_distribution(&instance(), Mode::PolInsensitive).unwrap();
    let mut events: Vec<(DetectionEvent, f64)> = exact.iter().collect();
    events.shuffle(&mut ChaCha8Rng::seed_from_u64(9));
    let shuffled = Distribution::from_events(2, Mode::PolInsensitive, events).unwrap();
    let n = 200_000;
    let a = empirical_distribution(&exact_sample(&exact, n, 1).unwrap().records).unwrap();
    let b = empirical_distribution(&exact_sample(&shuffled, n, 1).unwrap().records).unwrap();
    let exact = exact.normalized().unwrap();
    // both are draws of the same law: each within the n-draw noise floor of it
    let floor = (160.0 / (2.0 * std::f64::consts::PI * n as f64)).sqrt();
    assert!(total_variation(&a, &exact) < 3.0 * floor);
    assert!(total_variation(&b, &exact) < 3.0 * floor);
    assert!(total_variation(&a, &b) < 4.0 * floor);
}

#[test]
fn seeded_runs_are_byte_identical() {
    let exact = full_distribution(&instance(), Mode::PolResolved).unwrap();
    let csv = |seed| {
        let mut buf = Vec::new();
        exact_sample(&exact, 5_000, seed).unwrap().write_csv(&mut buf).unwrap();
        buf
    };
    assert_eq!(csv(11), csv(11));
    assert_ne!(csv(11), csv(12));
}

#[test]
fn collision_free_deficit_is_reported() {
    let u = haar_unitary(3, 2).unwrap();
    let grid = TimeGrid::for_rect(0.0, 1.0, 2).unwrap();
    let inst = MbcsInstance::new(u.clone(), vec![(0, sinc(0.0)), (1, sinc(0.0))], 0.0, grid, 0.5).unwrap();
    let d = full_distribution(&inst, Mode::PolInsensitive).unwrap();
    let s = exact_sample(&d, 10, 0).unwrap();
    let bunched = bunching_oracle(&u, &[0, 1]).unwrap().bunched_mass();
    assert!((s.mass_deficit - bunched).abs() < 1e-9);
}

#[test]
fn random_phases_leave_gaussians_gaussian() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let phases: Vec<f64> = (0..9)
        .map(|_| rand::Rng::random::<f64>(&mut rng) * std::f64::consts::TAU)
        .collect();
    let r = gaussian_phase_test(3, &phases, 100_000, 8).unwrap();
    assert!(r.passed, "{r:?}");
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["fourth_moment"]["passed"], true);
}
