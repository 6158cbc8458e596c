//! Scalar minimization: golden-section search and scan-plus-refine.

use crate::scalar::Scalar;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimum of a unimodal `f` on `[a, b]`.
pub fn golden_min<T: Scalar, F: Fn(T) -> T>(f: F, mut a: T, mut b: T, x_tol: T) -> (T, T) {
    let inv_phi = T::c(INV_PHI);
    let mut c = b - (b - a) * inv_phi;
    let mut d = a + (b - a) * inv_phi;
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..300 {
        if (b - a).abs() <= x_tol * (a.abs() + b.abs() + T::one()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * inv_phi;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * inv_phi;
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Minimize over a log-spaced scan of `[lo, hi]` followed by golden-section
/// refinement around the best grid cell. Robust when unimodality only holds
/// locally; reports the global scan minimum.
pub fn scan_then_golden_min<T: Scalar, F: Fn(T) -> T>(
    f: F,
    lo: T,
    hi: T,
    grid: usize,
    x_tol: T,
) -> (T, T) {
    debug_assert!(lo > T::zero() && hi > lo);
    let llo = lo.ln();
    let lhi = hi.ln();
    let n = grid.max(4);
    let mut best_i = 0usize;
    let mut best_v = T::infinity();
    let step = (lhi - llo) / T::c(n as f64);
    for i in 0..=n {
        let x = (llo + step * T::c(i as f64)).exp();
        let v = f(x);
        if v < best_v {
            best_v = v;
            best_i = i;
        }
    }
    let i_lo = best_i.saturating_sub(1);
    let i_hi = (best_i + 1).min(n);
    let a = (llo + step * T::c(i_lo as f64)).exp();
    let b = (llo + step * T::c(i_hi as f64)).exp();
    let g = |x: T| f(x);
    let (x, v) = golden_min(g, a, b, x_tol);
    if v < best_v {
        (x, v)
    } else {
        ((llo + step * T::c(best_i as f64)).exp(), best_v)
    }
}

/// Maximize via `scan_then_golden_min` on `-f`.
pub fn scan_then_golden_max<T: Scalar, F: Fn(T) -> T>(
    f: F,
    lo: T,
    hi: T,
    grid: usize,
    x_tol: T,
) -> (T, T) {
    let (x, v) = scan_then_golden_min(|t| -f(t), lo, hi, grid, x_tol);
    (x, -v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_min() {
        // x-resolution near a quadratic minimum is limited to ~sqrt(eps)
        let (x, v) = golden_min(|t: f64| (t - 3.0) * (t - 3.0) + 1.0, 0.0, 10.0, 1e-12);
        assert!((x - 3.0).abs() < 1e-6);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn log_scan_max() {
        // max of t*exp(-t) at t=1
        let (x, v) = scan_then_golden_max(|t: f64| t * (-t).exp(), 1e-6, 1e6, 200, 1e-12);
        assert!((x - 1.0).abs() < 1e-6);
        assert!((v - (-1.0f64).exp()).abs() < 1e-10);
    }
}
