//! Values checked against computations that do not share code with the
//! quantity under test: closed forms, a second quadrature, or an algebraic
//! degree.

use std::f64::consts::PI;
use std::sync::Arc;

use approx::assert_relative_eq;
use homotopy_gaps::experiments::{blaschke_excess, blaschke_grid};
use homotopy_gaps::gallery::{self, registry::default_sphere_grid};
use homotopy_gaps::grid::{degree, power_map, product};
use homotopy_gaps::seminorms::{
    gagliardo_seminorm_line, gagliardo_seminorm_with, h_half_distance_sq, h_half_seminorm_sq, w1p_seminorm, Kernel,
    LineProfile,
};
use homotopy_gaps::sphere2::{
    degree_kronecker_s2, dirichlet_energy, h1_distance, random_rational, stereographic_power, LatLongGrid,
};
use homotopy_gaps::{formulas, CircleGrid, CircleMap};

#[test]
fn chord_gagliardo_double_sum_matches_fourier_h_half() {
    // ∫∫|h(x)-h(y)|²/|e^{ix}-e^{iy}|² dx dy = 4π² Σ|n||a_n|². The double sum
    // drops the diagonal cell, an O(Δθ) bias, so compare its Richardson
    // extrapolation from M = 1024 and 2048.
    let build = |m: usize| {
        let grid = CircleGrid::new(m).unwrap();
        vec![
            power_map(2, grid),
            gallery::multi_bump(2, 8, grid).unwrap().map,
            gallery::blaschke_pow(3, 0.4, grid).unwrap(),
        ]
    };
    let chord = |f: &CircleMap| gagliardo_seminorm_with(f.samples(), 0.5, 2.0, Kernel::Chord).unwrap().powi(2);
    for (coarse, fine) in build(1024).iter().zip(&build(2048)) {
        let fourier = h_half_seminorm_sq(fine.samples());
        let extrapolated = 2.0 * chord(fine) - chord(coarse);
        assert_relative_eq!(extrapolated, fourier, max_relative = 1e-3);
    }
}

#[test]
fn blaschke_excess_closed_form_matches_a_direct_quadrature() {
    for (d, delta) in [(1, 0.5), (1, 0.3), (2, 0.5), (2, 0.3)] {
        let grid = blaschke_grid(delta, 2048).unwrap();
        let f = power_map(d, grid);
        let h = gallery::blaschke_pow(d, delta, grid).unwrap();
        let diff = product(&f, &h).unwrap().difference(&f).unwrap();
        let chord = gagliardo_seminorm_with(&diff, 0.5, 2.0, Kernel::Chord).unwrap().powi(2);
        let excess = chord - formulas::h_half_degree_bound(d);
        let expected = blaschke_excess(d, delta).unwrap();
        assert_relative_eq!(excess, expected, epsilon = 2e-3 * formulas::h_half_degree_bound(d));
    }
}

#[test]
fn blaschke_bubble_has_the_declared_degree_and_excess() {
    for (d, delta) in [(1, 0.3), (-1, 0.01), (2, 0.05), (-2, 0.5), (3, 0.01)] {
        let grid = blaschke_grid(delta, 4096).unwrap();
        let h = gallery::blaschke_pow(d, delta, grid).unwrap();
        assert_eq!(degree(&h).unwrap(), -d);
        let f = power_map(d, grid);
        let e = h_half_distance_sq(&product(&f, &h).unwrap(), &f).unwrap() - formulas::h_half_degree_bound(d);
        match blaschke_excess(d, delta) {
            Some(expected) => assert_relative_eq!(e, expected, epsilon = 1e-9),
            None => assert_eq!(d.abs(), 3),
        }
    }
}

#[test]
fn spectral_w1p_seminorm_matches_the_exact_phase_derivative() {
    // |d/dθ e^{iφ}| = |φ'|, with φ' known in closed form for the bump
    let grid = CircleGrid::new(8192).unwrap();
    let bump = gallery::multi_bump(3, 10, grid).unwrap();
    let dphi = bump.dphase.as_ref().unwrap().mean();
    for p in [1.0, 2.0, 3.0] {
        let exact: f64 = dphi.iter().map(|x| x.abs().powf(p)).sum::<f64>() * grid.step();
        assert_relative_eq!(w1p_seminorm(&bump.map, p, None).unwrap().powf(p), exact, max_relative = 1e-9);
    }
}

#[test]
fn line_gagliardo_of_a_gaussian_matches_its_fourier_value() {
    // |u|²_{1/2,2} on R = 2π ∫|ξ||û(ξ)|² dξ/(2π) with û(ξ) = √π e^{-ξ²/4} for u = e^{-x²}:
    // ∫∫|u(x)-u(y)|²/|x-y|² dx dy = 2π · (1/(2π)) ∫|ξ| π e^{-ξ²/2} dξ = 2π.
    let nodes: Vec<f64> = (-4000..=4000).map(|i| i as f64 * 0.005).collect();
    let u = LineProfile::<1>::sample(nodes, |x| [(-x * x).exp()]).unwrap();
    let v = gagliardo_seminorm_line(&u, 0.5, 2.0).unwrap().powi(2);
    assert_relative_eq!(v, 2.0 * PI, max_relative = 2e-2);
}

#[test]
fn rational_maps_have_their_algebraic_degree_and_harmonic_energy() {
    let grid = default_sphere_grid();
    for deg in 1..=3 {
        let f = random_rational(deg, 11 + deg as u64, grid.clone()).unwrap();
        let k = degree_kronecker_s2(&f);
        assert_eq!(k.rounded, deg);
        assert!((k.raw - deg as f64).abs() < 1e-2, "{deg}: {}", k.raw);
        // holomorphic maps minimise energy in their class
        assert!(dirichlet_energy(&f) >= formulas::harmonic_energy(deg) * (1.0 - 1e-2));
    }
    for d in [1, 2] {
        let f = stereographic_power(d, grid.clone()).unwrap();
        assert_relative_eq!(dirichlet_energy(&f), formulas::harmonic_energy(d), max_relative = 1e-3);
    }
}

#[test]
fn h1_distance_between_classes_respects_the_energy_gap() {
    // |f - g|²_H1 ≥ 8π(d2 - d1) for harmonic f of degree d1 ≥ 0
    let grid = Arc::new(LatLongGrid::uniform(128, 256).unwrap());
    let f = stereographic_power(1, grid.clone()).unwrap();
    for d2 in [2, 3] {
        let g = random_rational(d2, 5, grid.clone()).unwrap();
        let h1 = h1_distance(&f, &g).unwrap();
        assert!(h1 * h1 >= formulas::h1_lower_bound(1, d2) * (1.0 - 1e-2), "{d2}: {h1}");
    }
}

#[test]
fn constant_maps_have_zero_seminorms() {
    let grid = CircleGrid::new(64).unwrap();
    let c = CircleMap::constant(grid, homotopy_gaps::C64::new(0.6, 0.8)).unwrap();
    assert_eq!(w1p_seminorm(&c, 2.0, None).unwrap(), 0.0);
    assert_eq!(h_half_seminorm_sq(c.samples()), 0.0);
    assert_eq!(degree(&c).unwrap(), 0);
}
