use mbcs_core::dist::*;
use mbcs_core::linalg::*;
use mbcs_core::photon::{interference_matrix, PolSetting, Polarization, SpectralAmplitude};
use mbcs_core::sampler::total_variation;
use mbcs_core::Complex64;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(n: usize, seed: u64) -> ComplexMatrix {
    ginibre(n, n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
    (a - b).norm() <= rel * a.norm().max(b.norm()).max(1e-300)
}

fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

fn arb_pol() -> impl Strategy<Value = Polarization> {
    (0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU).prop_map(|(theta, phi)| {
        Polarization::new(
            Complex64::new(theta.cos(), 0.0),
            Complex64::from_polar(theta.sin(), phi),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fast_matches_naive(n in 1usize..=8, seed in any::<u64>()) {
        let a = random_matrix(n, seed);
        prop_assert!(close(permanent_fast(&a).unwrap(), permanent_naive(&a).unwrap(), 1e-10));
    }

    #[test]
    fn permanent_phase_and_scaling(n in 1usize..=7, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let a = random_matrix(n, seed);
        let rows: Vec<Complex64> = (0..n).map(|_| Complex64::from_polar(1.0, rng.random::<f64>() * 6.3)).collect();
        let cols: Vec<Complex64> = (0..n).map(|_| Complex64::from_polar(1.0, rng.random::<f64>() * 6.3)).collect();
        let rotated = ComplexMatrix::from_fn(n, n, |i, j| rows[i] * a[(i, j)] * cols[j]).unwrap();
        let factor: Complex64 = rows.iter().chain(&cols).product();
        let p = permanent_fast(&a).unwrap();
        prop_assert!(close(permanent_fast(&rotated).unwrap(), factor * p, 1e-10));
        let c = Complex64::new(0.7, -1.3);
        prop_assert!(close(permanent_fast(&a.scale(c)).unwrap(), c.powi(n as i32) * p, 1e-10));
    }

    #[test]
    fn permanent_permutation_invariance(n in 1usize..=7, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        let a = random_matrix(n, seed);
        let mut pr: Vec<usize> = (0..n).collect();
        let mut pc = pr.clone();
        pr.shuffle(&mut rng);
        pc.shuffle(&mut rng);
        let b = a.select(&pr, &pc).unwrap();
        prop_assert!(close(permanent_fast(&a).unwrap(), permanent_fast(&b).unwrap(), 1e-10));
        let t = ComplexMatrix::from_fn(n, n, |i, j| a[(j, i)]).unwrap();
        prop_assert!(close(permanent_fast(&a).unwrap(), permanent_fast(&t).unwrap(), 1e-10));
    }

    #[test]
    fn haar_is_unitary(m in 1usize..=16, seed in any::<u64>()) {
        prop_assert!(haar_unitary(m, seed).unwrap().unitarity_defect() < 1e-12);
    }

    #[test]
    fn embedding_recovers_block(n in 1usize..=4, extra in 0usize..=4, seed in any::<u64>()) {
        let m = 2 * n + extra.min(n);
        let x = random_matrix(n, seed);
        let e = embed_scaled(&x, m, seed).unwrap();
        prop_assert!(e.unitary.unitarity_defect() < 1e-10);
        let idx: Vec<usize> = (0..n).collect();
        let block = e.unitary.submatrix(&idx, &idx).unwrap();
        prop_assert!(block.max_abs_diff(&x.scale(Complex64::new(e.gamma, 0.0))) < 1e-10);
    }

    #[test]
    fn interference_matrix_is_a_valid_gram_modulus(
        pols in prop::collection::vec(arb_pol(), 1..=4),
        shifts in prop::collection::vec(-2.0f64..2.0, 4),
        colors in prop::collection::vec(-3.0f64..3.0, 4),
        delay in -5.0f64..5.0,
    ) {
        let specs: Vec<SpectralAmplitude> = pols
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                if i % 2 == 0 {
                    SpectralAmplitude::sinc(1.0 + 0.1 * i as f64, colors[i], shifts[i], p).unwrap()
                } else {
                    SpectralAmplitude::gaussian(0.8, colors[i], shifts[i], p).unwrap()
                }
            })
            .collect();
        let a = interference_matrix(&specs, delay).unwrap();
        let n = specs.len();
        for i in 0..n {
            prop_assert_eq!(a.get(i, i), 1.0);
            for j in 0..n {
                prop_assert!((0.0..=1.0).contains(&a.get(i, j)));
                prop_assert!((a.get(i, j) - a.get(j, i)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn consistency_ladder(
        m in 2usize..=5,
        n in 1usize..=3,
        seed in any::<u64>(),
        colors in prop::collection::vec(-0.4f64..0.4, 3),
        pol in arb_pol(),
        t0 in -1.0f64..1.0,
        delay in -1.0f64..1.0,
    ) {
        let n = n.min(m);
        let u = haar_unitary(m, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut all: Vec<usize> = (0..m).collect();
        all.shuffle(&mut rng);
        let inputs: Vec<(usize, SpectralAmplitude)> = (0..n)
            .map(|s| (all[s], SpectralAmplitude::sinc(1.5, colors[s], t0, pol).unwrap()))
            .collect();
        let grid = TimeGrid::for_rect(t0 + delay, 1.5, 3).unwrap();
        let inst = MbcsInstance::new(u, inputs, delay, grid, 0.5).unwrap();
        all.shuffle(&mut rng);
        let ports = &all[..n];
        let bins: Vec<i64> = (0..n).map(|_| rng.random_range(0..3)).collect();
        let dc = different_colors_probability(&inst, ports, &bins).unwrap();
        let total = pol_insensitive_probability(&inst, ports, &bins).unwrap();
        prop_assert!(rel_close(dc, total, 1e-10));
        let vol = (2.0 * grid.half_width()).powi(n as i32);
        let mut sum = 0.0;
        for mask in 0u32..(1 << n) {
            let pols: Vec<PolSetting> = (0..n).map(|i| PolSetting::BOTH[(mask >> i & 1) as usize]).collect();
            let ev = DetectionEvent::resolved(ports.to_vec(), bins.clone(), pols).unwrap();
            let p = event_probability(&inst, &ev).unwrap();
            prop_assert!((0.0..=1.0).contains(&p));
            prop_assert!(rel_close(p, vol * event_rate(&inst, &ev).unwrap(), 1e-12));
            sum += p;
        }
        prop_assert!(rel_close(sum, total, 1e-12));
        let k = bins[0];
        for pol in PolSetting::BOTH {
            let ev = DetectionEvent::resolved(ports.to_vec(), vec![k; n], vec![pol; n]).unwrap();
            let a = equal_time_pol_probability(&inst, ports, k, pol).unwrap();
            let b = event_probability(&inst, &ev).unwrap();
            prop_assert!((a - b).abs() <= 1e-10 * a.max(b) + 1e-300);
        }
    }

    #[test]
    fn detector_relabelling_symmetry(m in 2usize..=5, seed in any::<u64>(), w in -0.4f64..0.4) {
        let u = haar_unitary(m, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 7);
        let mut pi: Vec<usize> = (0..m).collect();
        pi.shuffle(&mut rng);
        // row π(d) of the relabelled unitary is row d of the original
        let mut inv = vec![0; m];
        for (d, &p) in pi.iter().enumerate() {
            inv[p] = d;
        }
        let v = u.select(&inv, &(0..m).collect::<Vec<_>>()).unwrap();
        let pol = Polarization::linear(0.3);
        let photons = vec![
            (0, SpectralAmplitude::sinc(1.0, 0.0, 0.0, pol).unwrap()),
            (1, SpectralAmplitude::gaussian(1.0, w, 0.1, Polarization::horizontal()).unwrap()),
        ];
        let a = MbcsInstance::with_auto_grid(u, photons.clone(), 0.0, 0.3).unwrap();
        let b = MbcsInstance::with_auto_grid(v, photons, 0.0, 0.3).unwrap();
        let g = a.grid();
        for _ in 0..8 {
            let mut ports: Vec<usize> = (0..m).collect();
            ports.shuffle(&mut rng);
            ports.truncate(2);
            let bins: Vec<i64> = (0..2).map(|_| rng.random_range(g.k_min()..=g.k_max())).collect();
            let pols = vec![PolSetting::E1, PolSetting::E2];
            let mapped: Vec<usize> = ports.iter().map(|&d| pi[d]).collect();
            let pa = event_probability(&a, &DetectionEvent::resolved(ports, bins.clone(), pols.clone()).unwrap()).unwrap();
            let pb = event_probability(&b, &DetectionEvent::resolved(mapped, bins, pols).unwrap()).unwrap();
            prop_assert!((pa - pb).abs() <= 1e-12);
        }
    }

    #[test]
    fn total_variation_is_a_metric(seed in any::<u64>(), k in 1usize..=12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut random_dist = || {
            let w: Vec<f64> = (0..k).map(|_| if rng.random_bool(0.3) { 0.0 } else { rng.random::<f64>() }).collect();
            let s: f64 = w.iter().sum::<f64>().max(1e-12);
            let events = (0..k)
                .filter(|&i| w[i] > 0.0)
                .map(|i| (DetectionEvent::unresolved(vec![i % 3], vec![i as i64]).unwrap(), w[i] / s));
            Distribution::from_events(1, Mode::PolInsensitive, events.collect::<Vec<_>>()).unwrap()
        };
        let (p, q, r) = (random_dist(), random_dist(), random_dist());
        let pq = total_variation(&p, &q);
        prop_assert!((pq - total_variation(&q, &p)).abs() < 1e-12);
        prop_assert!(pq <= total_variation(&p, &r) + total_variation(&r, &q) + 1e-12);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&pq));
        prop_assert!(total_variation(&p, &p) == 0.0);
    }
}
