//! The 1D logarithmic reduction `G(t) = e^{2t}·(angular mean of V at e^t)`.

use super::potential::Potential;
use crate::numerics::integrate;
use std::sync::Arc;

#[derive(Clone)]
pub struct LogProfile {
    pub support_t: (f64, f64),
    g: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl LogProfile {
    pub fn eval(&self, t: f64) -> f64 {
        (self.g)(t)
    }

    /// `∫_ℝ 2π G(t) dt` — equals `∫_{ℝ²} V dx` for integrable `V`.
    pub fn mass(&self) -> f64 {
        let (lo, hi) = self.support_t;
        let lo = lo.max(-200.0);
        let hi = hi.min(200.0);
        if !(hi > lo) {
            return 0.0;
        }
        let g = self.g.clone();
        2.0 * std::f64::consts::PI * integrate(move |t| g(t), lo, hi, 1e-10, 1e-12).value
    }
}

/// Reduce a potential to its logarithmic profile.
pub fn log_reduce(v: &Potential) -> LogProfile {
    let support_t = v.support_t();
    let vv = v.clone();
    LogProfile { support_t, g: Arc::new(move |t| vv.g_of_t(t)) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::expr::Expr;
    use crate::potentials::potential::{AngularFactor, Potential, RadialPiece};

    #[test]
    fn mass_preserved() {
        let v = Potential::radial(vec![RadialPiece::new(1.0, 2.0, Expr::Const(1.5))]);
        let lp = log_reduce(&v);
        let mass = crate::potentials::weighted_integral(&v, crate::potentials::Weight::One)
            .expect_finite();
        assert!((lp.mass() - mass).abs() < 1e-7 * mass);
    }

    #[test]
    fn separable_matches_mean_times_radial() {
        // angular factor with ∫V₂ = 2π ⇒ G(t) = e^{2t} F(e^t)
        let angular = AngularFactor::new(
            Expr::Const(2.0).mul(Expr::Var.abs()).div(Expr::Const(std::f64::consts::PI)),
            None,
        );
        // ∫_{-π}^{π} 2|θ|/π dθ = 2π ✓
        let v = Potential::separable(
            vec![RadialPiece::new(1.0, 3.0, Expr::Const(1.0).div(Expr::Var))],
            angular,
        );
        let lp = log_reduce(&v);
        for &t in &[0.1f64, 0.7, 1.0] {
            let r = t.exp();
            let expect = (2.0 * t).exp() * (1.0 / r);
            assert!((lp.eval(t) - expect).abs() < 1e-8 * expect, "t={t}");
        }
    }
}
