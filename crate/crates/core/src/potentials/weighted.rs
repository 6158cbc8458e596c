//! Weighted integrals `∫_{ℝ²} V(x)·w(|x|) dx` with divergence detection
//! through declared decay classes; quadrature is used only for values the
//! exponent arithmetic has already certified finite.

use super::decay::{converges_at_infinity, converges_at_zero, PowerLog};
use super::potential::{Potential, PotentialForm, RadialPiece};
use crate::numerics::integrate;
use crate::report::Quantity;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    /// `1`
    One,
    /// `ln(1 + r)`
    Log1p,
    /// `ln(2 + r)`
    Log2p,
    /// `ln₊ r = max(ln r, 0)`
    LogPlusAbs,
    /// `ln₊(1/r)`
    LogPlusInv,
    /// `ln ln r` for `r ≥ e`, `0` otherwise
    LogLog,
}

impl Weight {
    pub fn eval(&self, r: f64) -> f64 {
        match self {
            Weight::One => 1.0,
            Weight::Log1p => r.ln_1p(),
            Weight::Log2p => (2.0 + r).ln(),
            Weight::LogPlusAbs => r.ln().max(0.0),
            Weight::LogPlusInv => (-(r.ln())).max(0.0),
            Weight::LogLog => {
                if r >= std::f64::consts::E {
                    r.ln().ln()
                } else {
                    0.0
                }
            }
        }
    }

    /// Evaluate at `r = e^t` without forming `r` (stable for large `t`).
    pub fn eval_log(&self, t: f64) -> f64 {
        match self {
            Weight::One => 1.0,
            Weight::Log1p => {
                if t > 40.0 {
                    t + (-t).exp().ln_1p()
                } else {
                    t.exp().ln_1p()
                }
            }
            Weight::Log2p => {
                if t > 40.0 {
                    t + (2.0 * (-t).exp()).ln_1p()
                } else {
                    (2.0 + t.exp()).ln()
                }
            }
            Weight::LogPlusAbs => t.max(0.0),
            Weight::LogPlusInv => (-t).max(0.0),
            Weight::LogLog => {
                if t >= 1.0 {
                    t.ln()
                } else {
                    0.0
                }
            }
        }
    }

    /// Envelope contribution as `r → ∞` (local variable `u = r`).
    fn infinity_factor(&self) -> Option<PowerLog> {
        match self {
            Weight::One => Some(PowerLog::constant(1.0)),
            Weight::Log1p | Weight::Log2p | Weight::LogPlusAbs => {
                Some(PowerLog::new(1.0, 0.0, 1.0, 0.0))
            }
            // vanishes at infinity: contributes nothing to the tail
            Weight::LogPlusInv => None,
            Weight::LogLog => Some(PowerLog::new(1.0, 0.0, 0.0, 1.0)),
        }
    }

    /// Envelope contribution as `r → 0` (local variable `u = r`).
    fn origin_factor(&self) -> Option<PowerLog> {
        match self {
            Weight::One => Some(PowerLog::constant(1.0)),
            Weight::Log1p => Some(PowerLog::new(1.0, 1.0, 0.0, 0.0)),
            Weight::Log2p => Some(PowerLog::constant(2f64.ln())),
            Weight::LogPlusAbs => None,
            Weight::LogPlusInv => Some(PowerLog::new(1.0, 0.0, 1.0, 0.0)),
            Weight::LogLog => None,
        }
    }
}

/// `∫_{ℝ²} V·w(|x|) dx`.
pub fn weighted_integral(v: &Potential, w: Weight) -> Quantity {
    match &v.form {
        PotentialForm::Radial(pieces) => {
            radial_weighted(pieces, w, 1.0)
        }
        PotentialForm::Separable { radial, angular } => {
            let ang = super::potential::angular_full_integral(angular);
            if let Some(model) = &angular.zero_behavior {
                if !converges_at_zero(model) {
                    return Quantity::infinite(
                        "angular factor not integrable over the circle".to_string(),
                    );
                }
            }
            radial_weighted(radial, w, ang / (2.0 * std::f64::consts::PI))
        }
        PotentialForm::LogPlateaus(plats) => {
            // ∫ V w dx = 2π ∫ G(t) w(e^t) dt with G = q/t² on s-intervals;
            // substitute s = ln t: 2π ∫ q e^{-s} w_log(e^s) ds
            let mut acc = Quantity::zero();
            for pl in plats {
                // with w at most polylogarithmic in t, ∫ q·w(t)/t² dt always
                // converges; an infinite plateau is cut where e^{-s} dies
                let hi = if pl.s_hi.is_finite() { pl.s_hi } else { pl.s_lo + 80.0 };
                let q = pl.q;
                let part = integrate(
                    move |s: f64| q * (-s).exp() * w.eval_log(s.exp()),
                    pl.s_lo,
                    hi,
                    1e-11,
                    1e-13,
                );
                acc = acc.add(&Quantity::finite(
                    2.0 * std::f64::consts::PI * part.value,
                    2.0 * std::f64::consts::PI * part.abs_err,
                ));
            }
            acc
        }
        PotentialForm::DiskBumps(disks) => {
            let mut acc = 0.0;
            let mut err = 0.0;
            for d in disks {
                // ∫_{disk} w(|x|) dA in local polar coordinates about the center
                let (cx, rho, h) = (d.center_x, d.radius, d.height);
                let part = integrate(
                    move |p: f64| {
                        let inner = integrate(
                            move |phi: f64| {
                                let x = cx + p * phi.cos();
                                let y = p * phi.sin();
                                w.eval((x * x + y * y).sqrt())
                            },
                            0.0,
                            2.0 * std::f64::consts::PI,
                            1e-9,
                            1e-11,
                        );
                        p * inner.value
                    },
                    0.0,
                    rho,
                    1e-9,
                    1e-11,
                );
                acc += h * part.value;
                err += h * part.abs_err;
            }
            Quantity::finite(acc, err)
        }
    }
}

fn radial_weighted(pieces: &[RadialPiece], w: Weight, angular_mean: f64) -> Quantity {
    let mut acc = Quantity::zero();
    for piece in pieces {
        let q = piece_weighted(piece, w);
        acc = acc.add(&q.scale(2.0 * std::f64::consts::PI * angular_mean));
    }
    acc
}

/// `∫ F(r)·w(r)·r dr` over one piece, with finiteness decided by exponents.
fn piece_weighted(piece: &RadialPiece, w: Weight) -> Quantity {
    let jac = PowerLog::new(1.0, 1.0, 0.0, 0.0);
    // infinity end
    if piece.hi.is_infinite() {
        let model = match piece.hi_behavior {
            Some(m) => m,
            None => return Quantity::unknown("missing decay class at infinity", None),
        };
        if let Some(wf) = w.infinity_factor() {
            let total = model.times(&wf).times(&jac);
            if !converges_at_infinity(&total) {
                return Quantity::infinite(format!(
                    "tail integrand ≍ u^{}·ln^{}·lnln^{} diverges at infinity",
                    total.pow_u, total.pow_ln, total.pow_lnln
                ));
            }
        }
    }
    // origin / blow-up end
    if piece.lo == 0.0 {
        if let Some(model) = piece.lo_behavior {
            if let Some(wf) = w.origin_factor() {
                let total = model.times(&wf).times(&jac);
                if !converges_at_zero(&total) {
                    return Quantity::infinite("integrand diverges at the origin".to_string());
                }
            }
        }
    } else if let Some(model) = piece.lo_behavior {
        // interior blow-up at r = lo: weight and Jacobian are bounded there
        if !converges_at_zero(&model) {
            return Quantity::infinite(format!(
                "blow-up at r = {} is not integrable",
                piece.lo
            ));
        }
    }

    // value by quadrature: finite part + transformed tails
    let piece2 = piece.clone();
    let f = move |r: f64| {
        let v = super::potential::stable_radial_eval(std::slice::from_ref(&piece2), r.ln());
        v * w.eval(r) * r
    };
    let mut value = 0.0;
    let mut err = 0.0;
    let lo = piece.lo;
    let hi = piece.hi;
    if hi.is_finite() {
        if lo == 0.0 || piece.lo_behavior.is_some() {
            // integrable endpoint singularity: log-substitute u = r - lo
            let base = lo;
            let g = f.clone();
            let span = hi - lo;
            let part = super::potential::integral_zero_endpoint(move |u| g(base + u), span);
            value += part;
            err += 1e-9 * part.abs();
        } else {
            let part = integrate(f.clone(), lo, hi, 1e-11, 1e-13);
            value += part.value;
            err += part.abs_err;
        }
    } else {
        // integrate in t = ln r, marching blocks until negligible or the
        // f64 range of the closed form is at risk; hand the rest to the
        // analytic tail of the declared decay model
        let g = f.clone();
        let mut lower = lo.max(1e-300).ln();
        let mut total = 0.0;
        let t_cap = 150.0;
        loop {
            let upper = (lower + 20.0).min(t_cap);
            let g2 = g.clone();
            let part = integrate(move |t: f64| g2(t.exp()) * t.exp(), lower, upper, 1e-11, 1e-13);
            total += part.value;
            err += part.abs_err;
            lower = upper;
            if part.value.abs() <= 1e-13 + 1e-10 * total.abs() {
                break;
            }
            if lower >= t_cap {
                if let (Some(model), Some(wf)) = (piece.hi_behavior, w.infinity_factor()) {
                    let tail_model = model.times(&wf).times(&jac);
                    let tail = tail_integral_from(&tail_model, t_cap);
                    // deviation of the true integrand from its model at the cut
                    let at_cut = g(t_cap.exp()) * t_cap.exp();
                    let model_at_cut = tail_model.eval(t_cap.exp()) * t_cap.exp();
                    let dev = if model_at_cut > 0.0 {
                        ((at_cut / model_at_cut) - 1.0).abs()
                    } else {
                        1.0
                    };
                    total += tail;
                    err += tail * (3.0 * dev + 1e-9);
                }
                break;
            }
        }
        value += total;
    }
    Quantity::finite(value, err)
}

/// `∫_{e^T}^∞ u^a L^b (ln L)^c du` for convergent exponents, with `T = ln R`
/// passed directly so the radius itself never has to be formed.
fn tail_integral_from(p: &PowerLog, t: f64) -> f64 {
    let ll = t.ln().max(1.0);
    if p.pow_u < -1.0 - 1e-9 {
        // leading term coeff·R^{a+1}/|a+1|·T^b·(ln T)^c
        p.coeff * ((p.pow_u + 1.0) * t).exp() / (-p.pow_u - 1.0)
            * t.powf(p.pow_ln)
            * ll.powf(p.pow_lnln)
    } else {
        // critical power: ∫_T^∞ s^b (ln s)^c ds with b < -1
        p.coeff * t.powf(p.pow_ln + 1.0) / (-p.pow_ln - 1.0) * ll.powf(p.pow_lnln)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::expr::Expr;

    fn log3_like() -> Potential {
        // 1/(2π r² ln²r lnln r) for r ≥ e², zero otherwise
        let e2 = std::f64::consts::E * std::f64::consts::E;
        let expr = Expr::Const(1.0).div(
            Expr::Const(2.0 * std::f64::consts::PI)
                .mul(Expr::Var.pow(2.0))
                .mul(Expr::Var.ln().pow(2.0))
                .mul(Expr::Var.ln().ln()),
        );
        Potential::radial(vec![RadialPiece::new(e2, f64::INFINITY, expr).with_hi_behavior(
            PowerLog::new(1.0 / (2.0 * std::f64::consts::PI), -2.0, -2.0, -1.0),
        )])
        .mark_nonincreasing()
    }

    #[test]
    fn closed_form_tail_value() {
        // V = 1/(2π r² ln²r), r ≥ e²: ∫V dx = ∫_{e²}^∞ dr/(r ln²r) = 1/2
        let e2 = std::f64::consts::E * std::f64::consts::E;
        let expr = Expr::Const(1.0).div(
            Expr::Const(2.0 * std::f64::consts::PI)
                .mul(Expr::Var.pow(2.0))
                .mul(Expr::Var.ln().pow(2.0)),
        );
        let v = Potential::radial(vec![RadialPiece::new(e2, f64::INFINITY, expr)
            .with_hi_behavior(PowerLog::new(1.0 / (2.0 * std::f64::consts::PI), -2.0, -2.0, 0.0))]);
        let q = weighted_integral(&v, Weight::One);
        assert!(q.is_finite());
        assert!((q.expect_finite() - 0.5).abs() < 1e-6, "got {:?}", q.value);
    }

    #[test]
    fn log3_log_weight_diverges() {
        let v = log3_like();
        let q = weighted_integral(&v, Weight::Log1p);
        assert!(q.is_infinite(), "Σ V·ln(1+|x|) must diverge: {:?}", q.verdict);
        // plain mass is finite: ∫ dr/(r ln²r lnln r) converges
        assert!(weighted_integral(&v, Weight::One).is_finite());
    }

    #[test]
    fn zero_potential() {
        let q = weighted_integral(&Potential::zero(), Weight::Log2p);
        assert_eq!(q.expect_finite(), 0.0);
    }
}
