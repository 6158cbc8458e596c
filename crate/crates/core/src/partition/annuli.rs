//! Annular decompositions of ℝ², described by their `t = ln r` bounds so
//! that no radius ever has to be formed.

/// The families of rings used by the bound functionals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnnulusFamily {
    /// Doubling rings: `ln r ∈ (2^{n-1}, 2^n)` for `n > 0`, `(-1, 1)` for
    /// `n = 0`, mirrored for `n < 0`.
    DyadicLog,
    /// Unit-log rings `ln r ∈ (n, n+1)`.
    UnitLog,
    /// The inner region `|x| ≤ e` (`ln r ≤ 1`).
    InnerDisk,
    /// Radial intervals `(e^n, e^{n+1})` (1D, no area element).
    LogInterval,
}

/// `t`-bounds of the `n`-th member of the family.
pub fn ring_t_bounds(family: AnnulusFamily, n: i64) -> (f64, f64) {
    match family {
        AnnulusFamily::DyadicLog => {
            if n == 0 {
                (-1.0, 1.0)
            } else if n > 0 {
                (2f64.powi((n - 1) as i32), 2f64.powi(n as i32))
            } else {
                (-(2f64.powi((-n) as i32)), -(2f64.powi((-n - 1) as i32)))
            }
        }
        AnnulusFamily::UnitLog | AnnulusFamily::LogInterval => (n as f64, (n + 1) as f64),
        AnnulusFamily::InnerDisk => (f64::NEG_INFINITY, 1.0),
    }
}

/// Area of the unit-log ring `Ω_n` (2D Lebesgue), `π e^{2n}(e² - 1)`.
pub fn unit_log_ring_area(n: i64) -> f64 {
    let e2 = (2.0f64).exp();
    std::f64::consts::PI * (2.0 * n as f64).exp() * (e2 - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_rings_tile_and_double() {
        // consecutive rings share endpoints; radii obey the doubling law
        for n in 1..10 {
            let (lo, hi) = ring_t_bounds(AnnulusFamily::DyadicLog, n);
            assert_eq!(hi, 2.0 * lo);
            let (_, prev_hi) = ring_t_bounds(AnnulusFamily::DyadicLog, n - 1);
            assert_eq!(lo, prev_hi.max(1.0));
        }
        let (lo, hi) = ring_t_bounds(AnnulusFamily::DyadicLog, -1);
        assert_eq!((lo, hi), (-2.0, -1.0));
    }

    #[test]
    fn unit_rings_tile() {
        for n in -5..5 {
            let (lo, hi) = ring_t_bounds(AnnulusFamily::UnitLog, n);
            assert_eq!(hi - lo, 1.0);
            let (next_lo, _) = ring_t_bounds(AnnulusFamily::UnitLog, n + 1);
            assert_eq!(hi, next_lo);
        }
    }
}
