//! N-functions: even convex gauges with superlinear growth.

use crate::scalar::Scalar;
use std::fmt;
use std::sync::Arc;

/// Kind tag for the built-in N-functions.
#[derive(Clone)]
pub enum NKind<T: Scalar> {
    /// `e^|s| - 1 - |s|` (exponential growth).
    ExpA,
    /// `(1+|s|)·ln(1+|s|) - |s|` (L log L growth).
    LLogLB,
    /// `|s|^p / p`, `p > 1`.
    Power(T),
    /// User-supplied gauge.
    Custom {
        name: String,
        f: Arc<dyn Fn(T) -> T + Send + Sync>,
    },
}

/// An even convex N-function together with access to its complementary
/// partner where one is available in closed form.
#[derive(Clone)]
pub struct NFunction<T: Scalar> {
    kind: NKind<T>,
}

impl<T: Scalar> fmt::Debug for NFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NFunction({})", self.name())
    }
}

impl<T: Scalar> NFunction<T> {
    /// `𝒜(s) = e^|s| - 1 - |s|`.
    pub fn exp_a() -> Self {
        NFunction { kind: NKind::ExpA }
    }

    /// `ℬ(s) = (1+|s|)·ln(1+|s|) - |s|`.
    pub fn llogl_b() -> Self {
        NFunction { kind: NKind::LLogLB }
    }

    pub fn power(p: T) -> Self {
        assert!(p > T::one(), "power N-function needs p > 1");
        NFunction { kind: NKind::Power(p) }
    }

    pub fn custom(name: &str, f: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        NFunction {
            kind: NKind::Custom { name: name.to_string(), f: Arc::new(f) },
        }
    }

    /// Sub-`L log L` gauge `|s|·√(ln(1+|s|))`: an N-function with
    /// `Ψ(s)/ℬ(s) → 0`, used to probe sharpness of the L log L norm.
    pub fn sqrt_log() -> Self {
        Self::custom("sqrt-log", |s: T| {
            let a = s.abs();
            a * a.ln_1p().sqrt()
        })
    }

    pub fn name(&self) -> String {
        match &self.kind {
            NKind::ExpA => "exp-A".to_string(),
            NKind::LLogLB => "llogl-B".to_string(),
            NKind::Power(p) => format!("power({})", p),
            NKind::Custom { name, .. } => name.clone(),
        }
    }

    pub fn kind(&self) -> &NKind<T> {
        &self.kind
    }

    pub fn eval(&self, s: T) -> T {
        let a = s.abs();
        let small = T::c(1e-4);
        match &self.kind {
            // below 1e-4 the closed forms cancel to noise; the quartic-error
            // series keeps the gauge integrands smooth down to zero
            NKind::ExpA => {
                if a < small {
                    a * a * (T::half() + a / T::c(6.0) + a * a / T::c(24.0))
                } else {
                    a.exp_m1() - a
                }
            }
            NKind::LLogLB => {
                if a < small {
                    a * a * (T::half() - a / T::c(6.0) + a * a / T::c(12.0))
                } else {
                    (T::one() + a) * a.ln_1p() - a
                }
            }
            NKind::Power(p) => a.powf(*p) / *p,
            NKind::Custom { f, .. } => f(a),
        }
    }

    /// Complementary N-function, when available in closed form.
    pub fn complementary(&self) -> Option<NFunction<T>> {
        match &self.kind {
            NKind::ExpA => Some(Self::llogl_b()),
            NKind::LLogLB => Some(Self::exp_a()),
            NKind::Power(p) => {
                let q = *p / (*p - T::one());
                Some(Self::power(q))
            }
            NKind::Custom { .. } => None,
        }
    }

    /// `(Φ')⁻¹` for the complementary partner Φ, used by the brute-force
    /// dual maximizers. `None` for custom kinds.
    pub fn conjugate_derivative_inverse(&self, y: T) -> Option<T> {
        debug_assert!(y >= T::zero());
        match &self.kind {
            // Φ = ℬ: Φ'(t) = ln(1+t), inverse e^y - 1
            NKind::ExpA => Some(y.exp_m1()),
            // Φ = 𝒜: Φ'(t) = e^t - 1, inverse ln(1+y)
            NKind::LLogLB => Some(y.ln_1p()),
            // Φ(t) = t^q/q: Φ'(t) = t^{q-1}, inverse y^{1/(q-1)}
            NKind::Power(p) => {
                let q = *p / (*p - T::one());
                Some(y.powf(T::one() / (q - T::one())))
            }
            NKind::Custom { .. } => None,
        }
    }

    /// Inverse on `[0, ∞)` by bracketed bisection.
    pub fn inverse(&self, y: T) -> T {
        if y <= T::zero() {
            return T::zero();
        }
        let mut hi = T::one();
        for _ in 0..2000 {
            if self.eval(hi) >= y {
                break;
            }
            hi = hi * T::two();
        }
        crate::numerics::bisect_root(|s| self.eval(s) - y, T::zero(), hi, T::c(1e-14))
    }

    /// Spot-check the N-function axioms on a grid: `Ψ(0)=0`, evenness,
    /// convexity (midpoint), strict monotonicity on `[0, ∞)`.
    pub fn validate_on_grid(&self) -> Result<(), String> {
        if self.eval(T::zero()) != T::zero() {
            return Err(format!("{}: eval(0) != 0", self.name()));
        }
        let pts: Vec<f64> = (0..200).map(|i| 1e-3 * 1.12f64.powi(i)).collect();
        let tol = T::c(1e-9);
        for &x in &pts {
            let s = T::c(x);
            if (self.eval(-s) - self.eval(s)).abs() > tol * (T::one() + self.eval(s)) {
                return Err(format!("{}: not even at {}", self.name(), x));
            }
        }
        let mut prev = T::zero();
        for &x in &pts {
            let v = self.eval(T::c(x));
            if v < prev {
                return Err(format!("{}: not increasing at {}", self.name(), x));
            }
            prev = v;
        }
        for w in pts.windows(2) {
            let (a, b) = (T::c(w[0]), T::c(w[1]));
            let mid = (a + b) * T::half();
            let chord = (self.eval(a) + self.eval(b)) * T::half();
            if self.eval(mid) > chord + tol * (T::one() + chord) {
                return Err(format!("{}: convexity fails near {}", self.name(), w[0]));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_values() {
        let a = NFunction::<f64>::exp_a();
        let b = NFunction::<f64>::llogl_b();
        assert!((a.eval(1.0) - (1f64.exp() - 2.0)).abs() < 1e-15);
        assert!((b.eval(1.0) - (2.0 * 2f64.ln() - 1.0)).abs() < 1e-15);
        // ℬ(e-1) = e·ln(e) - (e-1) = 1 exactly
        let e = std::f64::consts::E;
        assert!((b.eval(e - 1.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn builtin_axioms() {
        NFunction::<f64>::exp_a().validate_on_grid().unwrap();
        NFunction::<f64>::llogl_b().validate_on_grid().unwrap();
        NFunction::<f64>::power(1.5).validate_on_grid().unwrap();
        NFunction::<f64>::sqrt_log().validate_on_grid().unwrap();
    }

    #[test]
    fn pointwise_bounds_llogl() {
        // ½·s·ln₊s ≤ ℬ(s) ≤ s + 2s·ln₊s for s ≥ 0, and ℬ(s) ≤ s²/2 globally
        let b = NFunction::<f64>::llogl_b();
        for i in 0..400 {
            let s = 1e-3 * 1.06f64.powi(i);
            let lnp = s.ln().max(0.0);
            let v = b.eval(s);
            assert!(0.5 * s * lnp <= v + 1e-12);
            assert!(v <= s + 2.0 * s * lnp + 1e-12);
            assert!(v <= 0.5 * s * s + 1e-12);
        }
    }

    #[test]
    fn pointwise_bounds_exp() {
        // ½s² ≤ 𝒜(s) ≤ (e/2)s² on [0,1]; e^s ≤ 2𝒜(s) + 3/2 for s ≥ 0
        let a = NFunction::<f64>::exp_a();
        for i in 0..=100 {
            let s = i as f64 / 100.0;
            let v = a.eval(s);
            assert!(0.5 * s * s <= v + 1e-12);
            assert!(v <= 0.5 * std::f64::consts::E * s * s + 1e-12);
        }
        for i in 0..300 {
            let s = 0.05 * i as f64;
            assert!(s.exp() <= 2.0 * a.eval(s) + 1.5 + 1e-9);
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let b = NFunction::<f64>::llogl_b();
        for &y in &[1e-6, 0.1, 1.0, 50.0] {
            let s = b.inverse(y);
            assert!((b.eval(s) - y).abs() < 1e-9 * (1.0 + y));
        }
    }

    #[test]
    fn sqrt_log_is_sub_llogl() {
        let psi = NFunction::<f64>::sqrt_log();
        let b = NFunction::<f64>::llogl_b();
        let mut prev_ratio = f64::INFINITY;
        for &s in &[1e2, 1e4, 1e8, 1e12] {
            let ratio = psi.eval(s) / b.eval(s);
            assert!(ratio < prev_ratio);
            prev_ratio = ratio;
        }
        assert!(prev_ratio < 0.2);
    }

    #[test]
    fn f32_instantiation() {
        let b = NFunction::<f32>::llogl_b();
        assert!((b.eval(1.0f32) - (2.0 * 2f32.ln() - 1.0)).abs() < 1e-6);
    }
}
