//! Closed-form classical statistics for repetition-code reduction and
//! correction, plus the leading-order Zeno and coherent-noise expressions.

use serde::{Deserialize, Serialize};

use crate::error::{arg, Result};

/// One point of the analytic `Q`, `P` curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticPoint {
    pub p: f64,
    pub n: usize,
    pub q: f64,
    pub remainder: f64,
}

impl AnalyticPoint {
    pub fn new(p: f64, n: usize) -> Self {
        AnalyticPoint { p, n, q: reduction_q(p, n), remainder: reduction_p(p, n) }
    }
}

fn choose(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Probability of exactly `l` errors among three bits: `C(3,l) p^l (1−p)^{3−l}`.
pub fn binom_errors(l: u32, p: f64) -> Result<f64> {
    if l > 3 {
        return arg(format!("error count {l} out of range 0..=3"));
    }
    Ok(choose(3, l as u64) * p.powi(l as i32) * (1.0 - p).powi(3 - l as i32))
}

/// Average remainder error of 1→3 majority correction, `3p² − 2p³`.
pub fn correction_remainder_3(p: f64) -> f64 {
    3.0 * p * p - 2.0 * p * p * p
}

/// Unanimous-decision acceptance, `(1−p)^n + p^n`.
pub fn reduction_q(p: f64, n: usize) -> f64 {
    (1.0 - p).powi(n as i32) + p.powi(n as i32)
}

/// Remainder error given unanimous acceptance, `p^n / Q`.
pub fn reduction_p(p: f64, n: usize) -> f64 {
    let q = reduction_q(p, n);
    if q == 0.0 {
        return 0.0;
    }
    p.powi(n as i32) / q
}

/// Small-`p` form `(p/(1−p))^n`.
pub fn reduction_p_approx(p: f64, n: usize) -> f64 {
    (p / (1.0 - p)).powi(n as i32)
}

/// `p₂/(p₁+p₂)`: the chance that a single identified-and-corrected error in a
/// three-bit word was really a double error. Equals `p` identically.
pub fn conditional_error_after_one_correction(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return arg(format!("conditional error undefined at p={p}"));
    }
    let p1 = binom_errors(1, p)?;
    let p2 = binom_errors(2, p)?;
    Ok(p2 / (p1 + p2))
}

/// Acceptance over `stations` equally spaced projections, `(1 − p/M²)^{nM}`.
pub fn zeno_q(p: f64, n: usize, stations: usize) -> Result<f64> {
    if stations == 0 {
        return arg("at least one station is required");
    }
    let m = stations as f64;
    Ok((1.0 - p / (m * m)).powf(n as f64 * m))
}

/// Leading-order success probability `C²` for the four-qubit code, with
/// `C = Π_j cos θ_j cos φ_j cos η_j`. Rows are `θ`, `φ`, `η`; columns qubits.
pub fn c_factor(angles: &[[f64; 4]; 3]) -> f64 {
    let c: f64 = angles.iter().flatten().map(|a| a.cos()).product();
    c * c
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_terms() {
        assert_eq!(binom_errors(0, 0.0).unwrap(), 1.0);
        assert!((binom_errors(2, 0.1).unwrap() - 0.027).abs() < 1e-15);
        assert!(binom_errors(4, 0.1).is_err());
    }

    #[test]
    fn correction_values() {
        assert_eq!(correction_remainder_3(0.0), 0.0);
        assert_eq!(correction_remainder_3(0.5), 0.5);
        assert!((correction_remainder_3(0.1) - 0.028).abs() < 1e-15);
        // 3p²−2p³ is p₂+p₃.
        let p = 0.17;
        let direct = binom_errors(2, p).unwrap() + binom_errors(3, p).unwrap();
        assert!((direct - correction_remainder_3(p)).abs() < 1e-15);
    }

    #[test]
    fn reduction_values() {
        assert_eq!(reduction_q(0.0, 3), 1.0);
        assert_eq!(reduction_p(0.0, 3), 0.0);
        assert!((reduction_q(0.1, 3) - 0.73).abs() < 1e-12);
        assert!((reduction_p(0.1, 3) - 0.001 / 0.73).abs() < 1e-15);
        assert!((reduction_p(0.1, 3) - 1.3699e-3).abs() < 1e-7);
        let rel = (reduction_p(0.05, 3) - 1.4375e-4).abs() / 1.4375e-4;
        assert!(rel < 0.02);
    }

    #[test]
    fn approximation_values() {
        assert_eq!(reduction_p_approx(0.0, 2), 0.0);
        let rel = (reduction_p_approx(0.05, 2) / reduction_p(0.05, 2) - 1.0).abs();
        assert!(rel < 0.01);
        assert!((reduction_p_approx(0.1, 2) - 0.012345679).abs() < 1e-8);
        assert!((reduction_p(0.1, 2) - 0.01 / 0.82).abs() < 1e-15);
        assert!(reduction_p_approx(0.1, 2) / reduction_p(0.1, 2) < 1.02);
    }

    #[test]
    fn conditional_error_is_p() {
        for p in [0.1, 0.3] {
            assert!((conditional_error_after_one_correction(p).unwrap() - p).abs() < 1e-15);
        }
        assert!(conditional_error_after_one_correction(0.0).is_err());
        assert!(conditional_error_after_one_correction(1.0).is_err());
    }

    #[test]
    fn zeno_values() {
        assert!((zeno_q(0.04, 2, 1).unwrap() - 0.96f64.powi(2)).abs() < 1e-15);
        assert!(1.0 - zeno_q(0.04, 2, 100).unwrap() < 2.0 * 2.0 * 0.04 / 100.0);
        let q4 = zeno_q(0.04, 2, 4).unwrap();
        assert!((q4 - 0.9975f64.powi(8)).abs() < 1e-15);
        assert!((q4 - 0.9802).abs() < 1e-4 && q4 >= 0.9216);
        assert!(zeno_q(0.04, 2, 0).is_err());
    }

    #[test]
    fn c_factor_values() {
        assert_eq!(c_factor(&[[0.0; 4]; 3]), 1.0);
        let mut a = [[0.0; 4]; 3];
        a[0][0] = 0.1;
        assert!((c_factor(&a) - 0.99003).abs() < 1e-5);
    }

    proptest! {
        #[test]
        fn binomial_completeness(p in 0.0f64..=1.0) {
            let total: f64 = (0..=3).map(|l| binom_errors(l, p).unwrap()).sum();
            prop_assert!((total - 1.0).abs() < 1e-14);
        }

        #[test]
        fn outputs_are_probabilities(p in 0.0f64..=1.0, n in 1usize..12, m in 1usize..50) {
            for v in [reduction_q(p, n), reduction_p(p, n), correction_remainder_3(p), zeno_q(p, n, m).unwrap()] {
                prop_assert!((0.0..=1.0).contains(&v), "{v}");
            }
        }

        #[test]
        fn exact_below_approximation(p in 0.0f64..0.5, n in 1usize..12) {
            prop_assert!(reduction_p(p, n) <= reduction_p_approx(p, n) * (1.0 + 1e-12));
        }

        #[test]
        fn reduction_beats_correction(p in 1e-6f64..0.5) {
            prop_assert!(correction_remainder_3(p) > reduction_p(p, 3));
        }

        #[test]
        fn two_bit_reduction_beats_three_bit_correction(p in 1e-6f64..=0.2) {
            prop_assert!(reduction_p(p, 2) < correction_remainder_3(p));
        }
    }
}
