//! Each gallery construction realises the distance it claims.

use homotopy_gaps::gallery::{self, registry};
use homotopy_gaps::grid::degree;
use homotopy_gaps::seminorms::h_half_seminorm_sq;
use homotopy_gaps::{formulas, CircleGrid, Error};

fn grid() -> CircleGrid {
    CircleGrid::new(4096).unwrap()
}

#[test]
fn zigzag_pairs_realise_4_times_the_degree_gap() {
    for (d1, d2) in [(1, 0), (3, 1), (2, -1), (0, 2)] {
        let pair = gallery::zigzag_pair(d1, d2, grid()).unwrap();
        assert_eq!(pair.degrees(), (d1, d2));
        let v = pair.w1p_distance(1.0).unwrap();
        assert!((v / (4.0 * (d1 - d2).abs() as f64) - 1.0).abs() < 1e-3, "{d1},{d2}: {v}");
    }
}

#[test]
fn deflation_costs_2_pi_per_turn() {
    let base = gallery::locally_constant_map(1, 0.5, grid()).unwrap();
    for d in 1..=3 {
        for lambda in [0.1, 0.01] {
            let pair = gallery::deflate_phase(&base.map, d, lambda).unwrap();
            assert_eq!(pair.degrees(), (1, 1 - d));
            let v = pair.w1p_distance(1.0).unwrap();
            assert!((v - formulas::dist_w11(1, 1 - d)).abs() < 1e-3 * v);
        }
    }
}

#[test]
fn attainment_pairs_differ_by_a_purely_imaginary_map() {
    for p in [1.2, 1.5, 1.9] {
        let pair = gallery::attainment_pair(1, p, grid()).unwrap();
        assert_eq!(pair.degrees(), (1, -1));
        let v = pair.w1p_distance(p).unwrap();
        assert!((v / formulas::w1p_class_distance(p, 1, -1) - 1.0).abs() < 1e-6, "{p}: {v}");
        let diff = pair.f.map.difference(&pair.g.map).unwrap();
        assert!(diff.iter().all(|z| z.re.abs() < 1e-9));
    }
    assert!(gallery::attainment_pair(1, 2.0, grid()).is_err());
}

#[test]
fn product_shift_distance_is_linear_in_the_degree_gap() {
    for d in [1, 2, 4, 8] {
        let v = gallery::product_shift(d, 0, grid()).unwrap().w1p_distance(1.0).unwrap();
        assert!((v - formulas::dist_w11(d, 0)).abs() < 1e-9 * v, "{d}: {v}");
    }
}

#[test]
fn multi_bump_energy_grows_linearly() {
    let v: Vec<f64> = [1, 2, 4]
        .iter()
        .map(|&d| h_half_seminorm_sq(gallery::multi_bump(d, 16, grid()).unwrap().map.samples()) / d as f64)
        .collect();
    assert!((v[2] / v[0] - 1.0).abs() < 1e-2);
    assert!(v[0] >= formulas::h_half_degree_bound(1));
}

#[test]
fn oscillator_has_degree_d1_and_the_declared_total_variation() {
    let osc = gallery::oscillator(1, 10, grid()).unwrap();
    assert_eq!(osc.degree(), 1);
    // knots sit on grid points, so the sampled variation is exact
    let phi = osc.phase.values();
    let m = phi.len();
    let tv: f64 = (0..m)
        .map(|j| {
            let next = if j + 1 < m { phi[j + 1] } else { phi[0] + std::f64::consts::TAU };
            (next - phi[j]).abs()
        })
        .sum();
    assert!((tv - formulas::oscillator_total_variation(1, 10)).abs() < 1e-6 * tv, "{tv}");
}

#[test]
fn bump_pairs_keep_degrees_1_and_0() {
    for eps in [1e-2, 1e-3, 1e-4] {
        let pair = gallery::bump_pair(eps, grid()).unwrap();
        assert_eq!((degree(&pair.f.map).unwrap(), degree(&pair.g.map).unwrap()), (1, 0));
    }
}

#[test]
fn registry_builds_every_listed_name_and_rejects_bad_specs() {
    let g = CircleGrid::new(1024).unwrap();
    for spec in ["zigzag:d1=1,d2=0", "product-shift:d=2", "attainment:d1=1,p=1.5", "bump:eps=0.01"] {
        let pair = registry::build_pair(&spec.parse().unwrap(), g).unwrap();
        assert_ne!(pair.degrees().0, pair.degrees().1, "{spec}");
    }
    for spec in ["power:d=2", "oscillator:d1=1,n=6", "stereo:d=2"] {
        registry::build(&spec.parse().unwrap(), g).unwrap();
    }
    let bad = registry::build(&"power:d=2,bogus=1".parse().unwrap(), g);
    assert!(matches!(bad, Err(Error::Parse(_))), "{bad:?}");
    assert!(registry::build(&"nosuchmap:d=1".parse().unwrap(), g).is_err());
    assert!(matches!(
        gallery::multi_bump(8, 2, g),
        Err(Error::Overcrowded { .. })
    ));
}
