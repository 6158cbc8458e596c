//! Closed-form negative-eigenvalue count for the Dirichlet form
//! `∫_a^b |u'|² - β ∫_a^b |u|²/t²` on `(a, b)`, `0 < a < b`.

use crate::scalar::Scalar;

/// Number of negative eigenvalues:
/// `0` for `β ≤ 1/4 + (π/L)²` and `N` for
/// `1/4 + (Nπ/L)² < β ≤ 1/4 + ((N+1)π/L)²`, where `L = ln(b/a)`.
/// Thresholds are inclusive on the low-count side.
pub fn dirichlet_count<T: Scalar>(a: T, b: T, beta: T) -> u64 {
    assert!(a > T::zero() && b > a, "need 0 < a < b");
    let quarter = T::c(0.25);
    if beta <= quarter {
        return 0;
    }
    let ell = (b / a).ln();
    // x = sqrt(β - 1/4)·L/π; count = #{integers k ≥ 1 with k < x}
    let x = (beta - quarter).sqrt() * ell / T::pi();
    if x <= T::one() {
        return 0;
    }
    let ceil = x.ceil();
    let n = if ceil == x { ceil - T::one() } else { ceil - T::one() };
    n.to_f64().unwrap().max(0.0) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subcritical_always_zero() {
        assert_eq!(dirichlet_count(1.0f64, 100.0, 0.25), 0);
        assert_eq!(dirichlet_count(0.5f64, 7.0, 0.1), 0);
    }

    #[test]
    fn two_pi_window() {
        // a = 1, b = e^{2π}: L = 2π; β = 1 gives N = 1 since
        // 1/4 + (1/2)² = 0.5 < 1 ≤ 1/4 + 1² = 1.25
        let b = (2.0 * std::f64::consts::PI).exp();
        assert_eq!(dirichlet_count(1.0f64, b, 1.0), 1);
    }

    #[test]
    fn threshold_inclusive() {
        // β exactly at 1/4 + (π/L)² still counts 0
        let (a, b) = (1.0f64, 20.0f64);
        let ell = (b / a).ln();
        let beta = 0.25 + (std::f64::consts::PI / ell).powi(2);
        assert_eq!(dirichlet_count(a, b, beta), 0);
        // and exactly at the N-th threshold counts N-1
        for n in 2..6u64 {
            let beta_n = 0.25 + (n as f64 * std::f64::consts::PI / ell).powi(2);
            assert_eq!(dirichlet_count(a, b, beta_n), n - 1);
        }
    }

    #[test]
    fn monotone_in_beta_and_interval() {
        let mut prev = 0;
        for i in 0..100 {
            let beta = 0.3 + i as f64 * 0.2;
            let c = dirichlet_count(1.0f64, 50.0, beta);
            assert!(c >= prev);
            prev = c;
        }
        let beta = 5.0;
        assert!(dirichlet_count(1.0f64, 10.0, beta) <= dirichlet_count(1.0f64, 100.0, beta));
    }

    #[test]
    fn f32_agrees_away_from_thresholds() {
        assert_eq!(dirichlet_count(1.0f32, 80.0, 3.7), dirichlet_count(1.0f64, 80.0, 3.7));
    }
}
