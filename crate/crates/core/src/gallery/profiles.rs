//! Smooth cut-off functions and the capacity profiles `K`, `H_ε`, `F_ε`, `G_ε`.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};

fn edge(x: f64) -> f64 {
    if x > 0.0 {
        (-1.0 / x).exp()
    } else {
        0.0
    }
}

fn edge_prime(x: f64) -> f64 {
    if x > 0.0 {
        (-1.0 / x).exp() / (x * x)
    } else {
        0.0
    }
}

/// `C^∞` transition `S(x) = ψ(x) / (ψ(x) + ψ(1-x))` with `ψ(x) = e^{-1/x}`:
/// 0 for `x ≤ 0`, 1 for `x ≥ 1`, strictly increasing in between.
pub fn smoothstep(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        let a = edge(x);
        a / (a + edge(1.0 - x))
    }
}

pub fn smoothstep_prime(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    let a = edge(x);
    let b = edge(1.0 - x);
    (edge_prime(x) * b + a * edge_prime(1.0 - x)) / ((a + b) * (a + b))
}

/// Cut-off `K`: 1 on `t ≤ 1/4`, 0 on `t ≥ 3/4`, smooth and non-increasing.
pub fn cutoff_k(t: f64) -> f64 {
    1.0 - smoothstep(2.0 * t - 0.5)
}

/// Largest admissible `ε` for the capacity profiles, `e^{-2}`.
pub fn max_capacity_eps() -> f64 {
    (-2.0f64).exp()
}

/// The log-log capacity profile `H_ε` and the radial profiles `F_ε`, `G_ε`
/// built from it.
#[derive(Clone, Copy, Debug)]
pub struct CapacityProfiles {
    eps: f64,
    log_inv_eps: f64,
}

impl CapacityProfiles {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < max_capacity_eps()) {
            return Err(Error::IndexOutOfRange {
                name: "eps",
                value: eps,
                range: "(0, e^-2)",
            });
        }
        Ok(Self {
            eps,
            log_inv_eps: (1.0 / eps).ln(),
        })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn k(&self, t: f64) -> f64 {
        cutoff_k(t)
    }

    /// `H_ε(r) = K(1/4 - ln(ln(1/r)/ln(1/ε)) / (2 ln 2))` for `r < 1`, else 0.
    pub fn h(&self, r: f64) -> f64 {
        let r = r.abs();
        if r >= 1.0 {
            return 0.0;
        }
        if r <= self.eps {
            return 1.0;
        }
        let ratio = (1.0 / r).ln() / self.log_inv_eps;
        cutoff_k(0.25 - ratio.ln() / (2.0 * LN_2))
    }

    /// `F_ε`: rises from 0 to π/2 on `[ε/4, 3ε/4]`, then to π on `[ε, √ε]`.
    pub fn f(&self, r: f64) -> f64 {
        let r = r.abs();
        if r < self.eps {
            0.5 * PI * (1.0 - cutoff_k(r / self.eps))
        } else {
            PI * (1.0 - 0.5 * self.h(r))
        }
    }

    /// `G_ε`: equal to `F_ε` below ε and to `π - F_ε` from ε on.
    pub fn g(&self, r: f64) -> f64 {
        let r = r.abs();
        if r < self.eps {
            0.5 * PI * (1.0 - cutoff_k(r / self.eps))
        } else {
            0.5 * PI * self.h(r)
        }
    }

    /// Radius beyond which all profiles are constant.
    pub fn support(&self) -> f64 {
        self.eps.sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoothstep_shape() {
        assert_eq!(smoothstep(-1.0), 0.0);
        assert_eq!(smoothstep(1.5), 1.0);
        assert!((smoothstep(0.5) - 0.5).abs() < 1e-15);
        let mut prev = 0.0;
        for i in 1..1000 {
            let x = i as f64 / 1000.0;
            let v = smoothstep(x);
            assert!(v >= prev);
            prev = v;
            let h = 1e-6;
            let fd = (smoothstep(x + h) - smoothstep(x - h)) / (2.0 * h);
            assert!((fd - smoothstep_prime(x)).abs() < 1e-5 * (1.0 + fd.abs()));
        }
    }

    #[test]
    fn cutoff_plateaus() {
        assert_eq!(cutoff_k(0.25), 1.0);
        assert_eq!(cutoff_k(-3.0), 1.0);
        assert_eq!(cutoff_k(0.75), 0.0);
        assert!(cutoff_k(0.5) > 0.0 && cutoff_k(0.5) < 1.0);
    }

    #[test]
    fn capacity_plateau_and_support() {
        for eps in [1e-2, 1e-4, 1e-6] {
            let c = CapacityProfiles::new(eps).unwrap();
            assert_eq!(c.h(eps / 2.0), 1.0);
            assert_eq!(c.h(eps), 1.0);
            assert_eq!(c.h(2.0 * eps.sqrt()), 0.0);
            assert_eq!(c.h(eps.sqrt()), 0.0);
            let mut prev = 1.0;
            for i in 0..2000 {
                let r = eps * (1.0 / eps).powf(i as f64 / 1999.0 * 0.6);
                let v = c.h(r);
                assert!((0.0..=1.0).contains(&v));
                assert!(v <= prev);
                prev = v;
                assert!((c.f(r).sin() - c.g(r).sin()).abs() < 1e-12);
                if r >= eps {
                    assert!((c.f(r) + c.g(r) - PI).abs() < 1e-12);
                } else {
                    assert_eq!(c.f(r), c.g(r));
                }
            }
        }
        assert!(CapacityProfiles::new(0.2).is_err());
        assert!(CapacityProfiles::new(0.0).is_err());
    }
}
