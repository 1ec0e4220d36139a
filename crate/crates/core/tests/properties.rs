//! Invariants that must hold for every map, checked on random phase
//! ansätze.

use homotopy_gaps::experiments::{random_ansatz, secant_slope_ratio};
use homotopy_gaps::grid::{conjugate, degree, degree_report, fourier, power_map, product};
use homotopy_gaps::seminorms::{h_half_distance_sq, h_half_seminorm_sq, sup_distance, w1p_distance, w1p_seminorm};
use homotopy_gaps::{CircleGrid, CircleMap, C64};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn grid() -> CircleGrid {
    CircleGrid::new(512).unwrap()
}

fn map(d: i64, seed: u64) -> CircleMap {
    random_ansatz(d, 6, &mut ChaCha8Rng::seed_from_u64(seed)).exponentiate(grid())
}

fn rotate_samples(f: &CircleMap, shift: usize) -> CircleMap {
    let s = f.samples();
    let m = s.len();
    CircleMap::new((0..m).map(|j| s[(j + shift) % m]).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn degree_estimates_agree(d in -5i64..=5, seed in any::<u64>()) {
        let r = degree_report(&map(d, seed)).unwrap();
        prop_assert_eq!(r.winding, d);
        prop_assert!(r.agrees());
        prop_assert!((r.kronecker.raw - d as f64).abs() < 1e-6);
    }

    #[test]
    fn degree_is_additive_and_odd(d1 in -4i64..=4, d2 in -4i64..=4, seed in any::<u64>()) {
        let f = map(d1, seed);
        let g = map(d2, seed.wrapping_add(1));
        prop_assert_eq!(degree(&product(&f, &g).unwrap()).unwrap(), d1 + d2);
        prop_assert_eq!(degree(&conjugate(&f)).unwrap(), -d1);
    }

    #[test]
    fn rotations_preserve_degree_and_seminorms(d in -4i64..=4, seed in any::<u64>(), shift in 0usize..512, alpha in 0.0..6.3f64) {
        let f = map(d, seed);
        let rotated = rotate_samples(&f, shift);
        let u = C64::from_polar(1.0, alpha);
        let turned = CircleMap::new(f.samples().iter().map(|z| z * u).collect()).unwrap();
        let w = w1p_seminorm(&f, 1.5, None).unwrap();
        let h = h_half_seminorm_sq(f.samples());
        for g in [&rotated, &turned] {
            prop_assert_eq!(degree(g).unwrap(), d);
            prop_assert!((w1p_seminorm(g, 1.5, None).unwrap() - w).abs() <= 1e-10 * w.max(1.0));
            prop_assert!((h_half_seminorm_sq(g.samples()) - h).abs() <= 1e-10 * h.max(1.0));
        }
    }

    #[test]
    fn parseval(d in -5i64..=5, seed in any::<u64>()) {
        prop_assert!((fourier(&map(d, seed)).energy() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn distances_are_symmetric_and_satisfy_the_triangle_inequality(
        a in -3i64..=3, b in -3i64..=3, c in -3i64..=3, seed in any::<u64>(), p in 1.0..4.0f64,
    ) {
        let (f, g, h) = (map(a, seed), map(b, seed ^ 1), map(c, seed ^ 2));
        let w = |x: &CircleMap, y: &CircleMap| w1p_distance(x, y, p, None).unwrap();
        let hh = |x: &CircleMap, y: &CircleMap| h_half_distance_sq(x, y).unwrap().sqrt();
        let s = |x: &CircleMap, y: &CircleMap| sup_distance(x, y).unwrap();
        for dist in [&w as &dyn Fn(&CircleMap, &CircleMap) -> f64, &hh, &s] {
            prop_assert!((dist(&f, &g) - dist(&g, &f)).abs() <= 1e-10 * dist(&f, &g).max(1.0));
            prop_assert!(dist(&f, &h) <= dist(&f, &g) + dist(&g, &h) + 1e-9);
            prop_assert!(dist(&f, &f) == 0.0);
        }
    }

    #[test]
    fn h_half_of_a_degree_d_map_is_at_least_its_degree_bound(d in -5i64..=5, seed in any::<u64>()) {
        let bound = homotopy_gaps::formulas::h_half_degree_bound(d);
        prop_assert!(h_half_seminorm_sq(map(d, seed).samples()) >= bound - 1e-9);
    }

    #[test]
    fn slope_ratio_is_at_least_one(ys in proptest::collection::vec(0.1..10.0f64, 1..6)) {
        let mut acc = 0.0;
        let pts: Vec<_> = ys.iter().enumerate().map(|(i, y)| { acc += y; ((i + 1) as f64, acc) }).collect();
        prop_assert!(secant_slope_ratio(&pts) >= 1.0 - 1e-12);
    }
}

#[test]
fn power_maps_are_spectrally_exact() {
    for d in -4..=4 {
        let f = power_map(d, grid());
        assert_eq!(degree(&f).unwrap(), d);
        let h = h_half_seminorm_sq(f.samples());
        assert!((h - homotopy_gaps::formulas::h_half_degree_bound(d)).abs() < 1e-10);
    }
}
