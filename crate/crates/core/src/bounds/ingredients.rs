//! Shared ingredient evaluators: global Orlicz norms, rearranged log
//! integrals, entropy integrals, mixed-norm line integrals, and the inner
//! disk entries of the Solomyak-type functional.

use crate::numerics::integrate;
use crate::orlicz::{amemiya_norm, NFunction};
use crate::partition::{profile, SequenceId};
use crate::potentials::{
    angular_full_integral, converges_at_infinity, converges_at_zero, integral_zero_endpoint,
    llogl_compose, llogl_member_at_blowup, rearrange, weighted_integral, PotentialForm, Potential,
    PowerLog, Weight,
};
use crate::report::Quantity;

/// Is `V` in `L_ℬ` globally? (membership per endpoint class)
fn global_llogl_membership(pot: &Potential) -> Result<(), String> {
    match &pot.form {
        PotentialForm::Radial(pieces) | PotentialForm::Separable { radial: pieces, .. } => {
            for p in pieces {
                if let Some(m) = &p.lo_behavior {
                    if (m.pow_u < 0.0 || (m.pow_u == 0.0 && m.pow_ln > 0.0))
                        && !llogl_member_at_blowup(m)
                    {
                        return Err(format!("blow-up at r = {} is not L log L integrable", p.lo));
                    }
                }
                if p.hi.is_infinite() {
                    let m = p
                        .hi_behavior
                        .ok_or_else(|| "missing decay class at infinity".to_string())?;
                    // V → 0: ℬ(V) ≍ V²/2 with the area Jacobian r
                    let composed = llogl_compose(&m, false).times(&PowerLog::new(1.0, 1.0, 0.0, 0.0));
                    if !converges_at_infinity(&composed) {
                        return Err("gauge integral diverges at infinity".to_string());
                    }
                }
            }
            if let PotentialForm::Separable { angular, .. } = &pot.form {
                if let Some(m) = &angular.zero_behavior {
                    if !llogl_member_at_blowup(m) {
                        return Err("angular factor is not in L log L over the circle".to_string());
                    }
                }
            }
            Ok(())
        }
        PotentialForm::LogPlateaus(_) => Ok(()), // V ≤ q/(r²ln²r): always in L_ℬ
        PotentialForm::DiskBumps(_) => Ok(()),   // bounded with finite support
    }
}

/// Gauge integral `∫_{ℝ²} ℬ(k·V) dx`.
fn global_gauge(pot: &Potential, k: f64) -> f64 {
    let b = NFunction::<f64>::llogl_b();
    match &pot.form {
        PotentialForm::Radial(_) | PotentialForm::LogPlateaus(_) => {
            let p = pot.clone();
            let (s_lo, s_hi) = p.support_t();
            let f = move |t: f64| {
                let v = p.g_of_t(t) * (-2.0 * t).exp();
                b.eval(k * v) * (2.0 * t).exp()
            };
            let lo = s_lo.max(-400.0);
            let hi = s_hi.min(150.0);
            if !(hi > lo) {
                return 0.0;
            }
            let mut total = 0.0;
            let mut cursor = lo;
            while cursor < hi {
                let next = (cursor + 25.0).min(hi);
                total += integrate(f.clone(), cursor, next, 1e-10, 1e-12).value;
                cursor = next;
            }
            2.0 * std::f64::consts::PI * total
        }
        PotentialForm::Separable { radial, angular } => {
            let mut total = 0.0;
            for piece in radial {
                let hi = piece.hi.min(150f64.exp());
                if !(hi > piece.lo) {
                    continue;
                }
                let ang = angular.clone();
                let bb = b.clone();
                let expr = piece.expr.clone();
                let piece2 = piece.clone();
                let f = move |t: f64| {
                    let fr = crate::potentials::stable_radial_eval(std::slice::from_ref(&piece2), t);
                    if fr == 0.0 {
                        return 0.0;
                    }
                    let bb2 = bb.clone();
                    let ang2 = ang.clone();
                    (2.0 * t).exp()
                        * 2.0
                        * integral_zero_endpoint(
                            move |th| bb2.eval(k * fr * ang2.eval(th)),
                            std::f64::consts::PI,
                        )
                };
                let lo_t = piece.lo.max(1e-12).ln();
                let hi_t = hi.ln();
                total += integrate(f, lo_t, hi_t, 1e-8, 1e-10).value;
            }
            total
        }
        PotentialForm::DiskBumps(disks) => disks
            .iter()
            .map(|d| std::f64::consts::PI * d.radius * d.radius * b.eval(k * d.height))
            .sum(),
    }
}

/// Global Orlicz norm `‖V‖_{ℬ,ℝ²}` with divergence certification.
pub fn global_llogl_norm(pot: &Potential) -> Quantity {
    if let Err(reason) = global_llogl_membership(pot) {
        return Quantity::infinite(reason);
    }
    if global_gauge(pot, 1.0) == 0.0 {
        return Quantity::zero();
    }
    match amemiya_norm(1.0, |k: f64| global_gauge(pot, k)) {
        Ok(v) => Quantity::finite(v, 1e-6 * v),
        Err(e) => Quantity::infinite(format!("{e}")),
    }
}

/// `∫ V_*(|x|)·ln₊(1/|x|) dx`. Values are computed from the rearranged
/// profile where available; for separable forms the finiteness verdict
/// falls back to the norm equivalence
/// `∫V_* ln₊(1/|x|) ≍ ‖V‖_ℬ (mod L¹)`.
pub fn rearranged_log_integral(pot: &Potential) -> Quantity {
    match rearrange(pot) {
        Ok(profile) => {
            let profile = std::sync::Arc::new(profile);
            let f = move |r: f64| profile.eval(r) * (1.0 / r).ln();
            let v = crate::orlicz::integrate_radial(f, 0.0, 1.0, 1e-8, 1e-10)
                * 2.0
                * std::f64::consts::PI;
            Quantity::finite(v, 1e-6 * v.abs() + 1e-10)
        }
        Err(_) => {
            let l1 = weighted_integral(pot, Weight::One);
            if !l1.is_finite() {
                return Quantity::infinite("V is not integrable");
            }
            let norm = global_llogl_norm(pot);
            match norm.verdict {
                crate::report::Verdict::Finite => Quantity::unknown(
                    "finite by the rearrangement-norm equivalence; value not computed",
                    None,
                ),
                crate::report::Verdict::Infinite => Quantity::infinite(
                    "infinite by the rearrangement-norm equivalence (L¹ finite, norm infinite)",
                ),
                crate::report::Verdict::Unknown => Quantity::unknown("norm unresolved", None),
            }
        }
    }
}

/// `∫_{V ≥ 1} V ln V dx`.
pub fn entropy_integral(pot: &Potential) -> Quantity {
    // finiteness matches the L log L gauge integral
    if let Err(reason) = global_llogl_membership(pot) {
        return Quantity::infinite(reason);
    }
    let f = |v: f64| if v >= 1.0 { v * v.ln() } else { 0.0 };
    match &pot.form {
        PotentialForm::Radial(_) | PotentialForm::LogPlateaus(_) => {
            let p = pot.clone();
            let (s_lo, s_hi) = p.support_t();
            let g = move |t: f64| f(p.g_of_t(t) * (-2.0 * t).exp()) * (2.0 * t).exp();
            let lo = s_lo.max(-400.0);
            let hi = s_hi.min(150.0);
            if !(hi > lo) {
                return Quantity::zero();
            }
            let q = integrate(g, lo, hi, 1e-9, 1e-11);
            Quantity::finite(
                2.0 * std::f64::consts::PI * q.value,
                2.0 * std::f64::consts::PI * q.abs_err + 1e-10,
            )
        }
        PotentialForm::Separable { radial, angular } => {
            let mut total = 0.0;
            for piece in radial {
                let ang = angular.clone();
                let expr = piece.expr.clone();
                let hi = piece.hi.min(150f64.exp());
                if !(hi > piece.lo) {
                    continue;
                }
                let piece2 = piece.clone();
                let g = move |t: f64| {
                    let fr = crate::potentials::stable_radial_eval(std::slice::from_ref(&piece2), t);
                    if fr == 0.0 {
                        return 0.0;
                    }
                    let ang2 = ang.clone();
                    (2.0 * t).exp()
                        * 2.0
                        * integral_zero_endpoint(
                            move |th| f(fr * ang2.eval(th)),
                            std::f64::consts::PI,
                        )
                };
                total += integrate(g, piece.lo.max(1e-12).ln(), hi.ln(), 1e-8, 1e-10).value;
            }
            Quantity::finite(total, 1e-6 * total.abs() + 1e-10)
        }
        PotentialForm::DiskBumps(disks) => {
            let v: f64 = disks
                .iter()
                .map(|d| std::f64::consts::PI * d.radius * d.radius * f(d.height))
                .sum();
            Quantity::finite(v, 1e-12 * v)
        }
    }
}

/// `∫_0^∞ (∫_𝕊 |W(r,θ)|^p dθ)^{1/p} r dr` for `W = V` or `W = V - V_mean`.
pub fn angular_lp_line_integral(pot: &Potential, p: f64, mean_free: bool) -> Quantity {
    match &pot.form {
        PotentialForm::Radial(_) | PotentialForm::LogPlateaus(_) => {
            if mean_free {
                return Quantity::zero();
            }
            let pp = pot.clone();
            let (s_lo, s_hi) = pot.support_t();
            radial_line_value(
                move |t| pp.g_of_t(t) * (-2.0 * t).exp(),
                s_lo,
                s_hi,
                (2.0 * std::f64::consts::PI).powf(1.0 / p),
                pot,
            )
        }
        PotentialForm::Separable { radial, angular } => {
            if let Some(m) = &angular.zero_behavior {
                if !converges_at_zero(&m.power(p)) {
                    return Quantity::infinite(format!(
                        "angular factor is not in L_{p} over the circle"
                    ));
                }
            }
            let mean = if mean_free {
                angular_full_integral(angular) / (2.0 * std::f64::consts::PI)
            } else {
                0.0
            };
            let ang = angular.clone();
            let ang_lp = (2.0
                * integral_zero_endpoint(
                    move |th| (ang.eval(th) - mean).abs().powf(p),
                    std::f64::consts::PI,
                ))
            .powf(1.0 / p);
            // radial blow-up must stay integrable against r dr
            for piece in radial {
                if let Some(m) = &piece.lo_behavior {
                    if piece.lo > 0.0 && !converges_at_zero(m) {
                        return Quantity::infinite(format!(
                            "radial factor has a non-integrable blow-up at r = {}",
                            piece.lo
                        ));
                    }
                }
            }
            let pieces = radial.clone();
            let (s_lo, s_hi) = pot.support_t();
            radial_line_value(
                move |t| crate::potentials::stable_radial_eval(&pieces, t),
                s_lo,
                s_hi,
                ang_lp,
                pot,
            )
        }
        PotentialForm::DiskBumps(_) => Quantity::unknown(
            "angular L_p line integrals are not provided for disk families",
            None,
        ),
    }
}

fn radial_line_value(
    f_of_t: impl Fn(f64) -> f64 + Clone + 'static,
    s_lo: f64,
    s_hi: f64,
    angular_factor: f64,
    pot: &Potential,
) -> Quantity {
    // ∫ F(r)·r dr = ∫ F(e^t) e^{2t} dt, finiteness from the tail class
    if s_hi == f64::INFINITY {
        if let Some(m) = outer_behavior(pot) {
            let tail = m.times(&PowerLog::new(1.0, 1.0, 0.0, 0.0));
            if !converges_at_infinity(&tail) {
                return Quantity::infinite("∫ F r dr diverges at infinity");
            }
        } else {
            return Quantity::unknown("missing decay class at infinity", None);
        }
    }
    let lo = s_lo.max(-400.0);
    let hi = s_hi.min(150.0);
    if !(hi > lo) {
        return Quantity::zero();
    }
    let q = integrate(
        move |t: f64| f_of_t(t) * (2.0 * t).exp(),
        lo,
        hi,
        1e-9,
        1e-11,
    );
    Quantity::finite(angular_factor * q.value, angular_factor * q.abs_err + 1e-10)
}

fn outer_behavior(pot: &Potential) -> Option<PowerLog> {
    match &pot.form {
        PotentialForm::Radial(p) | PotentialForm::Separable { radial: p, .. } => p
            .iter()
            .find(|piece| piece.hi.is_infinite())
            .and_then(|piece| piece.hi_behavior),
        PotentialForm::LogPlateaus(p) => p
            .iter()
            .find(|pl| pl.s_hi.is_infinite())
            .map(|pl| PowerLog::new(pl.q, -2.0, -2.0, 0.0)),
        PotentialForm::DiskBumps(_) => None,
    }
}

/// `‖V_𝒩(r,·)‖_{ℬ,𝕊}` integrated with `r dr` (the mean-free mixed norm).
pub fn mean_free_mixed_norm(pot: &Potential) -> Quantity {
    match &pot.form {
        PotentialForm::Radial(_) | PotentialForm::LogPlateaus(_) => Quantity::zero(),
        PotentialForm::Separable { radial, angular } => {
            if let Some(m) = &angular.zero_behavior {
                if !llogl_member_at_blowup(m) {
                    return Quantity::infinite("angular factor is not in L log L");
                }
            }
            let mean = angular_full_integral(angular) / (2.0 * std::f64::consts::PI);
            let b = NFunction::<f64>::llogl_b();
            let ang = angular.clone();
            let gauge = move |k: f64| {
                let ang2 = ang.clone();
                let b2 = b.clone();
                2.0 * integral_zero_endpoint(
                    move |th| b2.eval(k * (ang2.eval(th) - mean).abs()),
                    std::f64::consts::PI,
                )
            };
            let circle = match amemiya_norm(1.0, gauge) {
                Ok(v) => v,
                Err(e) => return Quantity::infinite(format!("{e}")),
            };
            let pieces = radial.clone();
            let (s_lo, s_hi) = pot.support_t();
            radial_line_value(
                move |t| crate::potentials::stable_radial_eval(&pieces, t),
                s_lo,
                s_hi,
                circle,
                pot,
            )
        }
        PotentialForm::DiskBumps(_) => {
            Quantity::unknown("mean-free mixed norms are not provided for disk families", None)
        }
    }
}

/// `𝐀_0` and `𝐁_0` over the inner disk `|x| ≤ e`.
pub fn inner_disk_entries(pot: &Potential) -> (Quantity, Quantity) {
    let a0 = {
        let prof = profile(pot, SequenceId::BoldA, (0, 0));
        prof.entries.get(&0).cloned().unwrap_or_else(Quantity::zero)
    };
    // 𝐁₀ = ‖V‖^{av}_{ℬ, |x| ≤ e}: average norm with level πe²
    if let Some(reason) = inner_disk_membership_failure(pot) {
        return (a0, Quantity::infinite(reason));
    }
    let level = std::f64::consts::PI * (2.0f64).exp();
    let pot2 = pot.clone();
    let b = NFunction::<f64>::llogl_b();
    let gauge = move |k: f64| {
        let p = pot2.clone();
        let bb = b.clone();
        let (s_lo, _) = p.support_t();
        let lo = s_lo.max(-400.0);
        if lo >= 1.0 {
            return 0.0;
        }
        match &p.form {
            PotentialForm::Separable { radial, angular } => {
                let mut total = 0.0;
                for piece in radial {
                    let hi_t = piece.hi.min(1f64.exp()).max(1e-12).ln().min(1.0);
                    let lo_t = piece.lo.max(1e-12).ln();
                    if !(hi_t > lo_t) {
                        continue;
                    }
                    let ang = angular.clone();
                    let bb2 = bb.clone();
                    let expr = piece.expr.clone();
                    let piece2 = piece.clone();
                    let f = move |t: f64| {
                        let fr =
                            crate::potentials::stable_radial_eval(std::slice::from_ref(&piece2), t);
                        if fr == 0.0 {
                            return 0.0;
                        }
                        let bb3 = bb2.clone();
                        let ang2 = ang.clone();
                        (2.0 * t).exp()
                            * 2.0
                            * integral_zero_endpoint(
                                move |th| bb3.eval(k * fr * ang2.eval(th)),
                                std::f64::consts::PI,
                            )
                    };
                    total += integrate(f, lo_t, hi_t, 1e-8, 1e-10).value;
                }
                total
            }
            _ => {
                let f = move |t: f64| {
                    let v = p.g_of_t(t) * (-2.0 * t).exp();
                    bb.eval(k * v) * (2.0 * t).exp()
                };
                2.0 * std::f64::consts::PI * integrate(f, lo, 1.0, 1e-9, 1e-11).value
            }
        }
    };
    let b0 = if gauge(1.0) == 0.0 {
        Quantity::zero()
    } else {
        match amemiya_norm(level, gauge) {
            Ok(v) => Quantity::finite(v, 1e-6 * v),
            Err(e) => Quantity::infinite(format!("{e}")),
        }
    };
    (a0, b0)
}

fn inner_disk_membership_failure(pot: &Potential) -> Option<String> {
    match &pot.form {
        PotentialForm::Separable { radial, angular } => {
            if let Some(m) = &angular.zero_behavior {
                let meets = radial.iter().any(|p| p.lo < 1f64.exp());
                if meets && !llogl_member_at_blowup(m) {
                    return Some("angular factor is not in L log L over the circle".into());
                }
            }
            radial_inner_blowup(radial)
        }
        PotentialForm::Radial(pieces) => radial_inner_blowup(pieces),
        _ => None,
    }
}

fn radial_inner_blowup(pieces: &[crate::potentials::RadialPiece]) -> Option<String> {
    for p in pieces {
        if p.lo < 1f64.exp() && p.lo > 0.0 {
            if let Some(m) = &p.lo_behavior {
                if (m.pow_u < 0.0 || (m.pow_u == 0.0 && m.pow_ln > 0.0))
                    && !llogl_member_at_blowup(m)
                {
                    return Some(format!("blow-up at r = {} is not in L log L", p.lo));
                }
            }
        }
    }
    None
}
