//! The ring-threshold function
//! `Φ(κ) = κ/(4κ+1) · (1 + √(4κ+1)·(2^√(4κ+1)+1)/(2^√(4κ+1)-1))⁻¹`
//! and its maximizer, which fixes the default threshold for the Orlicz-term
//! sums of the counting bounds.

use crate::numerics::scan_then_golden_max;
use crate::scalar::Scalar;

pub fn phi_kappa<T: Scalar>(kappa: T) -> T {
    let s = (T::c(4.0) * kappa + T::one()).sqrt();
    let p = (s * T::two().ln()).exp(); // 2^√(4κ+1)
    let inner = T::one() + s * (p + T::one()) / (p - T::one());
    kappa / (T::c(4.0) * kappa + T::one()) / inner
}

/// Maximize Φ over `[0.1, 20]` by log-scan plus golden refinement.
pub fn maximize_phi<T: Scalar>() -> (T, T) {
    scan_then_golden_max(phi_kappa::<T>, T::c(0.1), T::c(20.0), 600, T::c(1e-12))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        let phi = phi_kappa(1.559f64);
        assert!((phi - 0.046).abs() < 1e-3, "Φ(1.559) = {phi}");
        let (k, v) = maximize_phi::<f64>();
        assert!((k - 1.559).abs() < 0.01, "κ* = {k}");
        assert!((v - 0.046).abs() < 1e-3, "Φ* = {v}");
        let spread = (2.0 * (4.0 * k + 1.0) * v).sqrt();
        assert!((spread - 0.816).abs() < 5e-3, "√(2(4κ+1)Φ) = {spread}");
    }

    #[test]
    fn vanishes_at_zero() {
        assert!(phi_kappa(1e-9f64) < 1e-9);
        // and decays for large κ as well, so the interior max is genuine
        assert!(phi_kappa(1e4f64) < phi_kappa(2.0f64));
    }

    #[test]
    fn f32_agrees() {
        let (k32, v32) = maximize_phi::<f32>();
        assert!((k32 - 1.559).abs() < 0.05);
        assert!((v32 - 0.046).abs() < 3e-3);
    }
}
