//! Prüfer-phase oscillation counting at zero energy.
//!
//! For `u'' + w(x)·u = 0` set `u = ρ sinθ`, `u' = ρ cosθ`; then
//! `θ' = cos²θ + w(x) sin²θ`. At every multiple of π the rate is
//! `cos² = 1 > 0`, so those levels are one-way barriers: the zero count of
//! the solution is read off the final phase alone. Negative Dirichlet
//! eigenvalues equal interior zeros of the zero-energy solution starting
//! with `u(a) = 0`; Neumann-type counts use the `π/2 + kπ` levels.

use super::problem::{Count, LeftBc, RightBc, Segment, SegmentKind, SturmProblem};

/// Phase comparisons closer than this to a counting level are treated as
/// ambiguous and widen the bracket instead of being resolved by guesswork.
const PHASE_SNAP: f64 = 1e-7;

/// Dormand–Prince 5(4) step for the scalar phase ODE.
fn dp45_step(f: &impl Fn(f64, f64) -> f64, x: f64, y: f64, h: f64) -> (f64, f64) {
    let k1 = f(x, y);
    let k2 = f(x + h / 5.0, y + h * (k1 / 5.0));
    let k3 = f(x + 3.0 / 10.0 * h, y + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2));
    let k4 = f(
        x + 4.0 / 5.0 * h,
        y + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3),
    );
    let k5 = f(
        x + 8.0 / 9.0 * h,
        y + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 + 64448.0 / 6561.0 * k3
            - 212.0 / 729.0 * k4),
    );
    let k6 = f(
        x + h,
        y + h * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 + 46732.0 / 5247.0 * k3
            + 49.0 / 176.0 * k4
            - 5103.0 / 18656.0 * k5),
    );
    let y5 = y + h
        * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4 - 2187.0 / 6784.0 * k5
            + 11.0 / 84.0 * k6);
    let k7 = f(x + h, y5);
    let y4 = y + h
        * (5179.0 / 57600.0 * k1 + 7571.0 / 16695.0 * k3 + 393.0 / 640.0 * k4
            - 92097.0 / 339200.0 * k5
            + 187.0 / 2100.0 * k6
            + 1.0 / 40.0 * k7);
    (y5, (y5 - y4).abs())
}

/// Integrate `θ' = cos²θ + w(x) sin²θ` from `(lo, θ0)` to `hi`.
/// Returns `(θ(hi), accumulated error estimate)`.
pub fn integrate_phase(
    w: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    theta0: f64,
    tol: f64,
) -> (f64, f64) {
    let f = |x: f64, th: f64| {
        let (s, c) = th.sin_cos();
        c * c + w(x) * s * s
    };
    let span = hi - lo;
    if span <= 0.0 {
        return (theta0, 0.0);
    }
    let mut x = lo;
    let mut th = theta0;
    let mut err_acc = 0.0;
    let mut h = (span / 64.0).min(0.25);
    let h_min = span * 1e-14 + 1e-300;
    let mut steps = 0usize;
    while x < hi {
        if steps > 4_000_000 {
            // give up on further refinement; error estimate reflects it
            err_acc += 1.0;
            break;
        }
        steps += 1;
        let h_eff = h.min(hi - x);
        let (y_new, err) = dp45_step(&f, x, th, h_eff);
        let scale = tol * (1.0 + th.abs());
        if err <= scale || h_eff <= h_min {
            x += h_eff;
            th = y_new;
            err_acc += err;
            let grow = if err > 0.0 { 0.9 * (scale / err).powf(0.2) } else { 4.0 };
            h = (h_eff * grow.clamp(0.2, 4.0)).max(h_min);
        } else {
            h = (h_eff * 0.9 * (scale / err).powf(0.25)).max(h_min);
        }
    }
    (th, err_acc)
}

fn initial_phase(problem: &SturmProblem) -> f64 {
    match problem.left {
        LeftBc::Dirichlet => 0.0,
        LeftBc::Principal => std::f64::consts::FRAC_PI_2,
        LeftBc::State(u, du) => {
            let mut th = f64::atan2(u, du);
            if th <= 0.0 {
                th += std::f64::consts::PI;
            }
            th
        }
    }
}

/// Map a state `(u, u')` across a Direct→LogT junction at `t0 = e^{s0}`:
/// `v = t^{-1/2} u`, `v' = t^{1/2} u' − v/2`, up to a positive scalar.
fn direct_to_log_state(u: f64, du: f64, t0: f64) -> (f64, f64) {
    (u, t0 * du - 0.5 * u)
}

fn log_to_direct_state(v: f64, dv: f64, t0: f64) -> (f64, f64) {
    // u = t^{1/2} v, u' = t^{-1/2}(v' + v/2); scale by t0^{1/2} > 0
    (t0 * v, dv + 0.5 * v)
}

/// Re-anchor the continuous phase after a junction transform that preserves
/// the sign of `u`: the new phase keeps the π-window of the old one.
fn reanchor(theta_old: f64, u: f64, du: f64) -> f64 {
    let k = (theta_old / std::f64::consts::PI).floor();
    let mut phi = f64::atan2(u, du); // in (-π, π]
    // place into [kπ, (k+1)π)
    let base = k * std::f64::consts::PI;
    while phi < 0.0 {
        phi += std::f64::consts::PI;
    }
    while phi >= std::f64::consts::PI {
        phi -= std::f64::consts::PI;
    }
    base + phi
}

struct TailOutcome {
    zeros: u64,
    ambiguous: bool,
    infinite: Option<String>,
}

/// Zeros contributed by a constant-coefficient log-coordinate tail
/// `v'' + c v = 0` on `(s0, ∞)` with terminal state `(v, v')`.
fn log_constant_tail_zeros(c: f64, v: f64, dv: f64) -> TailOutcome {
    if c > PHASE_SNAP * PHASE_SNAP {
        return TailOutcome {
            zeros: 0,
            ambiguous: false,
            infinite: Some(format!(
                "oscillatory tail: v'' + c v = 0 with c = {c:.6e} > 0 beyond the cutoff"
            )),
        };
    }
    if c.abs() <= PHASE_SNAP * PHASE_SNAP {
        // essentially linear: v(s) = v + v'·(s - s0)
        let prod = v * dv;
        let scale = (v.abs() + dv.abs()).max(1e-300);
        if prod.abs() < PHASE_SNAP * scale * scale {
            return TailOutcome { zeros: 0, ambiguous: true, infinite: None };
        }
        return TailOutcome { zeros: (prod < 0.0) as u64, ambiguous: false, infinite: None };
    }
    let kappa = (-c).sqrt();
    // v = A e^{κΔ} + B e^{-κΔ}; zero ahead iff A·B < 0 and |B| > |A|
    let a = 0.5 * (v + dv / kappa);
    let b = 0.5 * (v - dv / kappa);
    let scale = (a.abs() + b.abs()).max(1e-300);
    if a.abs() < PHASE_SNAP * scale {
        // terminal state numerically on the decaying branch
        return TailOutcome { zeros: 0, ambiguous: true, infinite: None };
    }
    let zeros = (a * b < 0.0 && b.abs() > a.abs()) as u64;
    TailOutcome { zeros, ambiguous: false, infinite: None }
}

/// Count negative eigenvalues of the scaled problem (`coupling·W`).
pub fn pruefer_count(problem: &SturmProblem, coupling: f64, tol: f64) -> Count {
    debug_assert!(coupling >= 0.0);
    let mut theta = initial_phase(problem);
    let theta_start = theta;
    let mut err_acc = 0.0;
    let mut prev_kind_log = matches!(
        problem.segments.first().map(|s| &s.kind),
        Some(SegmentKind::LogT { .. })
    );
    for (i, seg) in problem.segments.iter().enumerate() {
        let is_log = matches!(seg.kind, SegmentKind::LogT { .. });
        if i > 0 && is_log != prev_kind_log {
            // coordinate change: rebuild the state, keep the π-window
            let (s, c) = theta.sin_cos();
            let (u, du) = (s, c);
            let (nu, ndu) = if is_log {
                let t0 = seg.lo.exp();
                direct_to_log_state(u, du, t0)
            } else {
                let t0 = seg.lo;
                log_to_direct_state(u, du, t0)
            };
            theta = reanchor(theta, nu, ndu);
        }
        prev_kind_log = is_log;
        let (th, err) = match &seg.kind {
            SegmentKind::Direct { w } => {
                let w = w.clone();
                integrate_phase(&move |t| coupling * w(t), seg.lo, seg.hi, theta, tol)
            }
            SegmentKind::LogT { q } => {
                let q = q.clone();
                integrate_phase(&move |s| coupling * q(s) - 0.25, seg.lo, seg.hi, theta, tol)
            }
        };
        theta = th;
        err_acc += err;
    }

    let pi = std::f64::consts::PI;
    let snap = PHASE_SNAP + err_acc;
    let level_count = |levels_origin: f64| -> (u64, bool) {
        // #{k ≥ ...: levels_origin + kπ < θ}, ambiguity if θ is near a level
        let x = (theta - levels_origin) / pi;
        if x <= 0.0 {
            let near = (theta - levels_origin).abs() <= snap;
            return (0, near);
        }
        let frac_dist = (x - x.round()).abs() * pi;
        let n = ((theta - levels_origin - snap) / pi).floor();
        let n = if theta - levels_origin > snap { n as u64 + 1 } else { 0 };
        (n, frac_dist <= snap)
    };

    // zeros passed strictly after the start: barriers at kπ
    let zero_levels_passed = |theta_end: f64| -> (u64, bool) {
        let start_window = (theta_start / pi).floor();
        let x = (theta_end - snap) / pi;
        let n = (x.floor() - start_window).max(0.0) as u64;
        let near = ((theta_end / pi) - (theta_end / pi).round()).abs() * pi <= snap;
        (n, near)
    };

    match &problem.right {
        RightBc::Dirichlet => {
            let (z, near) = zero_levels_passed(theta);
            if near {
                Count::Bracket { lo: z, hi: z + 1 }
            } else {
                Count::Exact(z)
            }
        }
        RightBc::Free => {
            let (n, near) = level_count(std::f64::consts::FRAC_PI_2);
            if near {
                Count::Bracket { lo: n, hi: n + 1 }
            } else {
                Count::Exact(n)
            }
        }
        tail => {
            let (z, near_zero) = zero_levels_passed(theta);
            // state at the cutoff in the final segment's coordinate
            let (s, c) = theta.sin_cos();
            let last = problem.segments.last().expect("nonempty problem");
            let last_is_log = matches!(last.kind, SegmentKind::LogT { .. });
            let (v, dv, c_tail) = match tail {
                RightBc::TailZero => {
                    assert!(!last_is_log, "TailZero expects a direct final segment");
                    (s, c, 0.0)
                }
                RightBc::TailInverseSquare { q } => {
                    assert!(!last_is_log, "TailInverseSquare expects a direct final segment");
                    let t0 = last.hi;
                    let (v, dv) = direct_to_log_state(s, c, t0);
                    (v, dv, coupling * q - 0.25)
                }
                RightBc::TailLogConstant { q } => {
                    assert!(last_is_log, "TailLogConstant expects a log final segment");
                    (s, c, coupling * q - 0.25)
                }
                RightBc::TailInvSquareRange { lo, hi } => {
                    if coupling * lo - 0.25 > PHASE_SNAP {
                        return Count::Infinite {
                            evidence: format!(
                                "tail minorant {lo:.6e}/t² is supercritical at coupling {coupling:.6e}"
                            ),
                        };
                    }
                    if coupling * hi - 0.25 > PHASE_SNAP {
                        // neither subcritical nor certifiably oscillatory
                        return Count::Bracket { lo: z, hi: u64::MAX };
                    }
                    // subcritical: once v·v' > 0 in log coordinates, v'' =
                    // (1/4 - α t²W)v ≥ 0 keeps the solution expanding, so no
                    // further zeros occur; otherwise widen by one
                    let (v, dv) = if last_is_log {
                        (s, c)
                    } else {
                        direct_to_log_state(s, c, last.hi)
                    };
                    let expanding = v * dv > PHASE_SNAP * (v.abs() + dv.abs()).powi(2);
                    return if expanding && !near_zero {
                        Count::Exact(z)
                    } else {
                        Count::Bracket { lo: z, hi: z + 1 }
                    };
                }
                _ => unreachable!(),
            };
            let out = if matches!(tail, RightBc::TailZero) {
                // linear continuation in the direct coordinate
                let prod = v * dv;
                let scale = (v.abs() + dv.abs()).max(1e-300);
                if prod.abs() < PHASE_SNAP * scale * scale {
                    TailOutcome { zeros: 0, ambiguous: true, infinite: None }
                } else {
                    TailOutcome { zeros: (prod < 0.0) as u64, ambiguous: false, infinite: None }
                }
            } else {
                log_constant_tail_zeros(c_tail, v, dv)
            };
            if let Some(reason) = out.infinite {
                return Count::Infinite { evidence: reason };
            }
            let z_total = z + out.zeros;
            if near_zero || out.ambiguous {
                Count::Bracket { lo: z_total, hi: z_total + 1 }
            } else {
                Count::Exact(z_total)
            }
        }
    }
}

/// Convenience wrapper: Dirichlet count on `(a, b)` for `W = β/t²`,
/// integrated numerically in `s = ln t` (the potential is supplied as the
/// constant `q ≡ β`, not as a closed-form count).
pub fn dirichlet_problem_inverse_square(a: f64, b: f64, beta: f64) -> SturmProblem {
    SturmProblem {
        segments: vec![Segment::log_t(a.ln(), b.ln(), move |_| beta)],
        left: LeftBc::Dirichlet,
        right: RightBc::Dirichlet,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral1d::dirichlet::dirichlet_count;

    #[test]
    fn matches_closed_form_simple() {
        for &(a, b, beta) in &[
            (1.0, 20.0, 0.3),
            (1.0, 20.0, 3.0),
            (0.5, 40.0, 7.7),
            (2.0, 9.0, 19.0),
        ] {
            let p = dirichlet_problem_inverse_square(a, b, beta);
            let c = pruefer_count(&p, 1.0, 1e-12);
            assert_eq!(
                c.exact().expect("unambiguous"),
                dirichlet_count(a, b, beta),
                "a={a} b={b} beta={beta}"
            );
        }
    }

    #[test]
    fn zero_potential_counts_zero() {
        let p = SturmProblem {
            segments: vec![Segment::direct(0.0, 5.0, |_| 0.0)],
            left: LeftBc::Dirichlet,
            right: RightBc::Dirichlet,
        };
        assert_eq!(pruefer_count(&p, 1.0, 1e-12).exact(), Some(0));
    }

    #[test]
    fn single_bump_line_binds_one() {
        // small bump on the line: exactly one negative eigenvalue
        let p = SturmProblem {
            segments: vec![Segment::direct(0.0, 1.0, |_| 0.05)],
            left: LeftBc::Principal,
            right: RightBc::TailZero,
        };
        assert_eq!(pruefer_count(&p, 1.0, 1e-12).exact(), Some(1));
        // far-separated second bump binds another
        let p2 = SturmProblem {
            segments: vec![
                Segment::direct(0.0, 1.0, |_| 0.05),
                Segment::direct(1.0, 60.0, |_| 0.0),
                Segment::direct(60.0, 61.0, |_| 0.05),
            ],
            left: LeftBc::Principal,
            right: RightBc::TailZero,
        };
        assert_eq!(pruefer_count(&p2, 1.0, 1e-12).exact(), Some(2));
    }

    #[test]
    fn square_well_dirichlet_reference() {
        // -u'' - c·1_{[0,L]} u on (0, L) Dirichlet: negative eigenvalues are
        // c - (kπ/L)² < 0, i.e. k < L√c/π
        let c = 9.0;
        let l = 5.0;
        let p = SturmProblem {
            segments: vec![Segment::direct(0.0, l, move |_| c)],
            left: LeftBc::Dirichlet,
            right: RightBc::Dirichlet,
        };
        let expect = ((l * c.sqrt()) / std::f64::consts::PI).floor() as u64; // 4
        assert_eq!(pruefer_count(&p, 1.0, 1e-12).exact(), Some(expect));
    }

    #[test]
    fn coupling_monotone() {
        let mk = || SturmProblem {
            segments: vec![Segment::direct(0.0, 3.0, |t: f64| (t - 1.5).cos().powi(2))],
            left: LeftBc::Principal,
            right: RightBc::TailZero,
        };
        let mut prev = 0;
        for i in 1..30 {
            let alpha = i as f64 * 1.3;
            let c = pruefer_count(&mk(), alpha, 1e-11);
            let n = c.lower();
            assert!(n >= prev, "count must be nondecreasing in the coupling");
            prev = n;
        }
        assert!(prev >= 3);
    }

    #[test]
    fn supercritical_tail_is_infinite() {
        let p = SturmProblem {
            segments: vec![Segment::log_t(0.0, 5.0, |_| 0.5)],
            left: LeftBc::Dirichlet,
            right: RightBc::TailLogConstant { q: 0.5 },
        };
        assert!(matches!(pruefer_count(&p, 1.0, 1e-12), Count::Infinite { .. }));
    }
}
