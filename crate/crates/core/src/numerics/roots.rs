//! Bracketing and bisection for monotone scalar equations.

use crate::scalar::Scalar;

/// Bisect for a root of `f` in `[lo, hi]`; requires a sign change.
/// Converges to relative width `rel_tol` (plus a tiny absolute floor).
pub fn bisect_root<T: Scalar, F: Fn(T) -> T>(f: F, mut lo: T, mut hi: T, rel_tol: T) -> T {
    let flo = f(lo);
    if flo == T::zero() {
        return lo;
    }
    let mut sign_lo = flo > T::zero();
    let fhi = f(hi);
    if fhi == T::zero() {
        return hi;
    }
    debug_assert!(sign_lo != (fhi > T::zero()), "bisect_root: no sign change");
    for _ in 0..200 {
        let mid = (lo + hi) * T::half();
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == T::zero() {
            return mid;
        }
        if (fm > T::zero()) == sign_lo {
            lo = mid;
            sign_lo = fm > T::zero();
        } else {
            hi = mid;
        }
        if hi - lo <= rel_tol * (lo.abs() + hi.abs()) * T::half() + T::min_positive_value() {
            break;
        }
    }
    (lo + hi) * T::half()
}

/// Grow `hi` geometrically until `pred(hi)` holds or the ceiling is hit.
/// Returns `None` if the ceiling is reached without success.
pub fn expand_upper_bracket<T: Scalar, P: Fn(T) -> bool>(
    mut hi: T,
    ceiling: T,
    pred: P,
) -> Option<T> {
    for _ in 0..400 {
        if pred(hi) {
            return Some(hi);
        }
        if hi >= ceiling {
            return None;
        }
        hi = (hi * T::c(4.0)).min(ceiling);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let r = bisect_root(|x: f64| x * x - 2.0, 0.0, 2.0, 1e-14);
        assert!((r - 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn bracket_expansion() {
        let hi = expand_upper_bracket(1.0f64, 1e30, |x| x * x > 1e6).unwrap();
        assert!(hi * hi > 1e6);
    }
}
