//! The explicit-constant radial bound `1 + 4·Σ_{A_n > 1/4} √A_n` (with the
//! sharper `1 + 3.04·Σ_{A_n > 0.29} √A_n` variant) and the lower bound
//! `⅓·card{n : A_n ≥ 10π}`.

use crate::partition::{auto_range, profile, thresholded_sqrt_sum, SequenceId, TailClass};
use crate::potentials::Potential;
use crate::report::{Quantity, Verdict};

pub struct RadialBound {
    /// `1 + 4·Σ_{A_n > 1/4} √A_n`.
    pub plain: Quantity,
    /// `1 + 3.04·Σ_{A_n > 0.29} √A_n`.
    pub sharp: Quantity,
}

pub fn rad_main_bound(pot: &Potential) -> RadialBound {
    let range = auto_range(pot, SequenceId::A);
    let prof = profile(pot, SequenceId::A, range);
    let s_plain = thresholded_sqrt_sum(&prof, 0.25);
    let s_sharp = thresholded_sqrt_sum(&prof, 0.29);
    RadialBound {
        plain: s_plain.scale(4.0).add(&Quantity::finite(1.0, 0.0)),
        sharp: s_sharp.scale(3.04).add(&Quantity::finite(1.0, 0.0)),
    }
}

pub struct LowerBound {
    /// Number of rings with `A_n ≥ 10π`.
    pub exceedances: Option<u64>,
    /// `⅓·card{n : A_n ≥ 10π}` (infinite when certified).
    pub bound: Quantity,
}

pub fn lower_bound_10pi(pot: &Potential) -> LowerBound {
    let threshold = 10.0 * std::f64::consts::PI;
    let range = auto_range(pot, SequenceId::A);
    let prof = profile(pot, SequenceId::A, range);
    let mut count = 0u64;
    for q in prof.entries.values() {
        match q.verdict {
            Verdict::Infinite => count += 1, // an infinite entry certainly exceeds
            Verdict::Finite => {
                if q.value.unwrap() >= threshold {
                    count += 1;
                }
            }
            Verdict::Unknown => {
                return LowerBound {
                    exceedances: None,
                    bound: Quantity::unknown("unresolved ring entry", None),
                }
            }
        }
    }
    // tails: exceedances beyond the range?
    for tail in [&prof.tail_below, &prof.tail_above] {
        match tail {
            TailClass::Zero => {}
            TailClass::Unknown => {
                return LowerBound {
                    exceedances: None,
                    bound: Quantity::unknown("tail not certified", None),
                }
            }
            TailClass::Envelope { upper, lower, from } => {
                let sup = (0..6)
                    .map(|k| (upper.bound)(from + (1 << k)))
                    .fold((upper.bound)(*from), f64::max);
                if upper.sigma <= 1e-9 && upper.tau <= 1e-9 && sup < threshold {
                    // no exceedances out there
                } else if lower
                    .as_ref()
                    .map(|l| l.nonvanishing() && (l.bound)(from + 4) >= threshold)
                    .unwrap_or(false)
                {
                    return LowerBound {
                        exceedances: None,
                        bound: Quantity::infinite("infinitely many rings exceed 10π"),
                    };
                } else if upper.sigma > 1e-9 || sup >= threshold {
                    return LowerBound {
                        exceedances: None,
                        bound: Quantity::unknown("tail exceedances unresolved", None),
                    };
                }
            }
        }
    }
    LowerBound {
        exceedances: Some(count),
        bound: Quantity::finite(count as f64 / 3.0, 0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::{Expr, RadialPiece};

    #[test]
    fn zero_potential() {
        let v = Potential::zero();
        assert_eq!(rad_main_bound(&v).plain.expect_finite(), 1.0);
        let lb = lower_bound_10pi(&v);
        assert_eq!(lb.exceedances, Some(0));
        assert_eq!(lb.bound.expect_finite(), 0.0);
    }

    #[test]
    fn single_ring_exceedance() {
        // c on U_0 with ∫ V = 1 exactly: A_0 = 1 → bound 1 + 4·1 = 5
        let e = std::f64::consts::E;
        let area = std::f64::consts::PI * (e * e - (-2.0f64).exp());
        let c = 1.0 / area;
        let v = Potential::radial(vec![RadialPiece::new(1.0 / e, e, Expr::Const(c))]);
        let rb = rad_main_bound(&v);
        assert!((rb.plain.expect_finite() - 5.0).abs() < 1e-6, "{:?}", rb.plain.value);
    }

    #[test]
    fn ten_pi_calibrated_indicator() {
        // c chosen so A_0 = ∫_{U_0} V = 10π → count 1, bound 1/3; nudged a
        // hair above the inclusive threshold so quadrature cannot round down
        let e = std::f64::consts::E;
        let area = std::f64::consts::PI * (e * e - (-2.0f64).exp());
        let c = 10.0 * std::f64::consts::PI / area * (1.0 + 1e-9);
        let v = Potential::radial(vec![RadialPiece::new(1.0 / e, e, Expr::Const(c))]);
        let lb = lower_bound_10pi(&v);
        assert_eq!(lb.exceedances, Some(1), "A_0 should hit 10π within quadrature accuracy");
        assert!((lb.bound.expect_finite() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn geometric_inverse_square_band() {
        // β/|x|² on e < |x| < e^{2^K}: A_n = 2πβ·ln 2·2^{n-1}-ish grows
        // geometrically; the bound stays finite for each K
        let beta = 0.3;
        let k = 5u32;
        let hi = (2f64.powi(k as i32)).exp();
        let v = Potential::radial(vec![RadialPiece::new(
            std::f64::consts::E,
            hi,
            Expr::Const(beta).div(Expr::Var.pow(2.0)),
        )]);
        let rb = rad_main_bound(&v);
        assert!(rb.plain.is_finite());
        // G ≡ β on t ∈ [1, 2^K], so A_n = 2πβ ∫_{I_n} t dt = πβ(4^n - 4^{n-1})
        let mut expect = 1.0;
        for n in 1..=(k as i64) {
            let a_n = std::f64::consts::PI * beta * (4f64.powi(n as i32) - 4f64.powi(n as i32 - 1));
            if a_n > 0.25 {
                expect += 4.0 * a_n.sqrt();
            }
        }
        assert!(
            (rb.plain.expect_finite() - expect).abs() < 1e-5 * expect,
            "{} vs {}",
            rb.plain.expect_finite(),
            expect
        );
    }
}
