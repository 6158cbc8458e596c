//! Power-log decay classes and the integrability arithmetic used to decide
//! finite-versus-infinite without quadrature.
//!
//! An endpoint behavior records `f(u) ≍ coeff · u^a · L^b · (ln L)^c` where
//! `u` is the local variable (`u = r` at infinity, `u = r - r₀` at a finite
//! endpoint, `u = r` at the origin) and `L = |ln u|`. The envelope is
//! two-sided up to the declared factor.

/// `f ≍ coeff · u^pow_u · |ln u|^pow_ln · (ln|ln u|)^pow_lnln`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerLog {
    pub coeff: f64,
    pub pow_u: f64,
    pub pow_ln: f64,
    pub pow_lnln: f64,
}

impl PowerLog {
    pub fn new(coeff: f64, pow_u: f64, pow_ln: f64, pow_lnln: f64) -> Self {
        PowerLog { coeff, pow_u, pow_ln, pow_lnln }
    }

    pub fn constant(coeff: f64) -> Self {
        PowerLog::new(coeff, 0.0, 0.0, 0.0)
    }

    /// Product of envelopes (exponents add).
    pub fn times(&self, other: &PowerLog) -> PowerLog {
        PowerLog {
            coeff: self.coeff * other.coeff,
            pow_u: self.pow_u + other.pow_u,
            pow_ln: self.pow_ln + other.pow_ln,
            pow_lnln: self.pow_lnln + other.pow_lnln,
        }
    }

    pub fn power(&self, p: f64) -> PowerLog {
        PowerLog {
            coeff: self.coeff.powf(p),
            pow_u: self.pow_u * p,
            pow_ln: self.pow_ln * p,
            pow_lnln: self.pow_lnln * p,
        }
    }

    /// Evaluate the model at local variable `u` (`u > 0`, away from 1).
    pub fn eval(&self, u: f64) -> f64 {
        let l = u.ln().abs().max(1e-300);
        let ll = l.ln().max(1e-300);
        self.coeff * u.powf(self.pow_u) * l.powf(self.pow_ln) * ll.powf(self.pow_lnln)
    }
}

const EXP_EPS: f64 = 1e-9;

fn cmp(x: f64, target: f64) -> std::cmp::Ordering {
    if (x - target).abs() <= EXP_EPS {
        std::cmp::Ordering::Equal
    } else if x < target {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Greater
    }
}

/// Does `∫^∞ u^a L^b (ln L)^c du` converge? (`L = ln u`)
pub fn converges_at_infinity(p: &PowerLog) -> bool {
    use std::cmp::Ordering::*;
    match cmp(p.pow_u, -1.0) {
        Less => true,
        Greater => false,
        Equal => match cmp(p.pow_ln, -1.0) {
            Less => true,
            Greater => false,
            Equal => cmp(p.pow_lnln, -1.0) == Less,
        },
    }
}

/// Does `∫_0 u^a L^b (ln L)^c du` converge? (`L = ln(1/u)`)
pub fn converges_at_zero(p: &PowerLog) -> bool {
    use std::cmp::Ordering::*;
    match cmp(p.pow_u, -1.0) {
        Greater => true,
        Less => false,
        Equal => match cmp(p.pow_ln, -1.0) {
            Less => true,
            Greater => false,
            Equal => cmp(p.pow_lnln, -1.0) == Less,
        },
    }
}

/// Envelope of `ℬ∘f` where `f` has the given endpoint behavior and the
/// endpoint is a blow-up or decay point:
/// for `f → ∞` (`pow_u < 0`, or `pow_u = 0` with `pow_ln > 0`),
/// `ℬ(f) ≍ f·ln f`; for `f → 0`, `ℬ(f) ≍ f²/2`.
pub fn llogl_compose(p: &PowerLog, f_blows_up: bool) -> PowerLog {
    if f_blows_up {
        if cmp(p.pow_u, 0.0) != std::cmp::Ordering::Equal {
            // ln f ≍ |pow_u|·|ln u|
            PowerLog {
                coeff: p.coeff * p.pow_u.abs(),
                pow_u: p.pow_u,
                pow_ln: p.pow_ln + 1.0,
                pow_lnln: p.pow_lnln,
            }
        } else {
            // ln f ≍ pow_ln · ln|ln u|
            PowerLog {
                coeff: p.coeff * p.pow_ln.abs().max(1.0),
                pow_u: 0.0,
                pow_ln: p.pow_ln,
                pow_lnln: p.pow_lnln + 1.0,
            }
        }
    } else {
        p.power(2.0).times(&PowerLog::constant(0.5))
    }
}

/// Membership of `f` in `L_ℬ` near a finite blow-up endpoint with local
/// behavior `p` (1D measure `du`; multiply in any Jacobian beforehand).
pub fn llogl_member_at_blowup(p: &PowerLog) -> bool {
    converges_at_zero(&llogl_compose(p, true))
}

/// Membership of `f` in `L_p` (1D) near a blow-up endpoint.
pub fn lp_member_at_blowup(p: &PowerLog, q: f64) -> bool {
    converges_at_zero(&p.power(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_blowup_classes() {
        // 1/(u·ln²(1/u)): in L¹ near 0, not in L_ℬ
        let l1_not_lb = PowerLog::new(1.0, -1.0, -2.0, 0.0);
        assert!(converges_at_zero(&l1_not_lb));
        assert!(!llogl_member_at_blowup(&l1_not_lb));
        // 1/(u·|ln u|³): in L_ℬ, in no L_p (p>1)
        let lb_not_lp = PowerLog::new(1.0, -1.0, -3.0, 0.0);
        assert!(llogl_member_at_blowup(&lb_not_lp));
        assert!(!lp_member_at_blowup(&lb_not_lp, 1.25));
        assert!(!lp_member_at_blowup(&lb_not_lp, 2.0));
    }

    #[test]
    fn tail_rules() {
        // ∫^∞ dr/(r ln²r) converges; ∫^∞ dr/(r ln r) diverges
        assert!(converges_at_infinity(&PowerLog::new(1.0, -1.0, -2.0, 0.0)));
        assert!(!converges_at_infinity(&PowerLog::new(1.0, -1.0, -1.0, 0.0)));
        // triple-log boundary
        assert!(!converges_at_infinity(&PowerLog::new(1.0, -1.0, -1.0, -1.0)));
        assert!(converges_at_infinity(&PowerLog::new(1.0, -1.0, -1.0, -1.5)));
    }

    #[test]
    fn model_eval_matches_shape() {
        let p = PowerLog::new(2.0, -2.0, -2.0, -1.0);
        let r: f64 = 100.0;
        let expect = 2.0 / (r * r * r.ln().powi(2) * r.ln().ln());
        assert!((p.eval(r) - expect).abs() < 1e-12 * expect);
    }
}
