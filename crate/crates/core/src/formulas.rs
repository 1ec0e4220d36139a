//! Closed-form distances and bounds used as targets by tests and experiments.

use std::f64::consts::PI;

/// `W^{1,p}` distance between the classes `E_{d1}` and `E_{d2}` on S¹:
/// `2^{1/p+1} π^{1/p-1} |d1 - d2|`.
pub fn w1p_class_distance(p: f64, d1: i64, d2: i64) -> f64 {
    2f64.powf(1.0 / p + 1.0) * PI.powf(1.0 / p - 1.0) * (d1 - d2).abs() as f64
}

/// Hausdorff-type `W^{1,1}` distance `2π|d1 - d2|`.
pub fn dist_w11(d1: i64, d2: i64) -> f64 {
    2.0 * PI * (d1 - d2).abs() as f64
}

/// `min_{v ∈ E_d} ∫|v̇|^p = 2|d|^p π`, attained by `e^{idθ}`.
pub fn class_min_w1p_pow(d: i64, p: f64) -> f64 {
    2.0 * (d.abs() as f64).powf(p) * PI
}

/// Lower bound `4π²(d2 - d1)` for `|z^{d1} - g|²_{H^{1/2}}`, `g ∈ E_{d2}`, `d2 > d1 ≥ 0`.
pub fn h_half_power_lower_bound(d1: i64, d2: i64) -> f64 {
    4.0 * PI * PI * (d2 - d1) as f64
}

/// `|g|²_{H^{1/2}}` of a map of degree `d` is at least `4π²|d|`.
pub fn h_half_degree_bound(d: i64) -> f64 {
    4.0 * PI * PI * d.abs() as f64
}

/// Dirichlet energy `8π|d|` of a degree-`d` harmonic map S² → S².
pub fn harmonic_energy(d: i64) -> f64 {
    8.0 * PI * d.abs() as f64
}

/// Lower bound `8π(d2 - d1)` for the squared `H¹` distance on S².
pub fn h1_lower_bound(d1: i64, d2: i64) -> f64 {
    8.0 * PI * (d2 - d1) as f64
}

/// Phase total variation `2(n-1)π d1` of the oscillating map.
pub fn oscillator_total_variation(d1: i64, n: i64) -> f64 {
    2.0 * (n - 1) as f64 * PI * d1.abs() as f64
}

/// Degree of a suspension on S² whose profile runs from 0 to `kπ`: each
/// half turn covers the sphere once, with alternating orientation.
pub fn suspension_degree(k: i64, h_degree: i64) -> i64 {
    if k.rem_euclid(2) == 1 {
        h_degree
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_values() {
        assert!((w1p_class_distance(1.0, 1, 0) - 4.0).abs() < 1e-15);
        assert!((w1p_class_distance(2.0, 0, 1) - 2f64.powf(1.5) / PI.sqrt()).abs() < 1e-15);
        assert!((dist_w11(3, 1) - 4.0 * PI).abs() < 1e-15);
        // p → 1 limit of the p-formula is the W^{1,1} value, below Dist.
        assert!(w1p_class_distance(1.0, 2, 0) < dist_w11(2, 0));
    }
}
