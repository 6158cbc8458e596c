//! Sharp constants for the one-dimensional Sobolev-type inequalities
//!
//! `|u(x)|²/|x| ≤ C(κ; x)·(∫_a^b |u'|² + κ ∫_a^b |u|²/t²)` on `W¹₂([a,b])`
//!
//! and
//!
//! `|u(x)|² ≤ C₀(κ; x)·((b-a)∫|u'|² + κ/(b-a)·∫|u|²)`,
//!
//! together with the closed-form extremizers and a discretized Rayleigh
//! maximization oracle (piecewise-linear elements, exact element integrals).

use crate::numerics::integrate;
use crate::scalar::Scalar;

/// Exponents of the inverse-square equation: roots of `γ² + γ - κ = 0`.
pub fn gammas<T: Scalar>(kappa: T) -> (T, T) {
    let s = (T::one() + T::c(4.0) * kappa).sqrt();
    ((s - T::one()) * T::half(), (-s - T::one()) * T::half())
}

/// `C(κ; x)` on `[a, b]`, evaluated through ratio powers so that large
/// `√(1+4κ)·ln(b)` cannot overflow.
pub fn c_kappa_at<T: Scalar>(kappa: T, a: T, b: T, x: T) -> T {
    assert!(T::zero() < a && a <= x && x <= b && a < b);
    let s = (T::one() + T::c(4.0) * kappa).sqrt();
    let (g1, g2) = gammas(kappa);
    let pow = |r: T| (s * r.ln()).exp(); // r ≤ 1 throughout
    let xb = pow(x / b);
    let ab = pow(a / b);
    let ax = pow(a / x);
    let num = g1 * g1 * xb + kappa * (T::one() + ab) + g2 * g2 * ax;
    let den = kappa * s * (T::one() - ab);
    num / den
}

/// `C(κ) = max_x C(κ; x)`, attained at `x = a`.
pub fn c_kappa<T: Scalar>(kappa: T, a: T, b: T) -> T {
    let s = (T::one() + T::c(4.0) * kappa).sqrt();
    let rho = (s * (a / b).ln()).exp();
    (T::one() + s * (T::one() + rho) / (T::one() - rho)) / (T::two() * kappa)
}

/// Limit `a → 0+`: `C → (1 + √(1+4κ))/(2κ)`.
pub fn c_kappa_origin_limit<T: Scalar>(kappa: T) -> T {
    let s = (T::one() + T::c(4.0) * kappa).sqrt();
    (T::one() + s) / (T::two() * kappa)
}

/// Closed-form extremizer of `C(κ; x)`, normalized to `u(x) = 1`, returned
/// as `(u, u')` closures. Piecewise power functions with exponents γ₁, γ₂
/// and a derivative kink at the evaluation point `x`.
pub struct Extremizer {
    kappa: f64,
    a: f64,
    b: f64,
    pub x: f64,
}

impl Extremizer {
    pub fn new(kappa: f64, a: f64, b: f64, x: f64) -> Self {
        assert!(0.0 < a && a <= x && x <= b);
        Extremizer { kappa, a, b, x }
    }

    fn branch(&self, t: f64) -> (f64, f64) {
        // branch value/derivative, normalized to u(x) = 1:
        // u(t) ∝ γ₁ t^{γ₁+1} − γ₂ w^S t^{γ₂+1} with anchor w ∈ {a, b}.
        // Exponents are fused before exponentiation so that neither branch
        // can overflow for large √(1+4κ)·ln(b/a).
        let (g1, g2) = gammas::<f64>(self.kappa);
        let s = (1.0 + 4.0 * self.kappa).sqrt();
        let z = t / self.x;
        let lz = z.ln();
        let (e1, e2, e0) = if t <= self.x {
            let la = (self.a / self.x).ln(); // ≤ 0
            (
                ((g1 + 1.0) * lz).exp(),
                (s * la + (g2 + 1.0) * lz).exp(),
                (s * la).exp(),
            )
        } else {
            let lb = (self.x / self.b).ln(); // ≤ 0
            (
                ((g1 + 1.0) * lz + s * lb).exp(),
                ((g2 + 1.0) * lz).exp(),
                (s * lb).exp(),
            )
        };
        let den = if t <= self.x { g1 - g2 * e0 } else { g1 * e0 - g2 };
        let u = (g1 * e1 - g2 * e2) / den;
        let du = (g1 * (g1 + 1.0) * e1 - g2 * (g2 + 1.0) * e2) / (den * t);
        (u, du)
    }

    pub fn u(&self, t: f64) -> f64 {
        self.branch(t).0
    }

    pub fn du(&self, t: f64) -> f64 {
        self.branch(t).1
    }

    /// Rayleigh ratio `|u(x)|²/x ÷ (∫|u'|² + κ∫|u|²/t²)` by quadrature.
    pub fn rayleigh_ratio(&self) -> f64 {
        let q = |lo: f64, hi: f64| {
            integrate(
                |t| {
                    let (u, du) = self.branch(t);
                    du * du + self.kappa * u * u / (t * t)
                },
                lo,
                hi,
                1e-11,
                1e-13,
            )
            .value
        };
        let energy = q(self.a, self.x) + q(self.x, self.b);
        let ux = 1.0; // normalized
        (ux * ux / self.x) / energy
    }

    /// Continuity defect at the junction `x` (left/right limits of `u`).
    pub fn junction_defect(&self) -> f64 {
        let eps = 1e-9 * self.x;
        (self.branch(self.x - eps).0 - self.branch(self.x + eps).0).abs()
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.a, self.b)
    }
}

/// `C₀(κ; x)` for the scaled inequality on `[a, b]`.
pub fn c0_kappa_at<T: Scalar>(kappa: T, a: T, b: T, x: T) -> T {
    let rk = kappa.sqrt();
    let tau = (x - a) / (b - a);
    let num = (T::two() * rk).sinh()
        + (T::two() * rk * tau).sinh()
        + (T::two() * rk * (T::one() - tau)).sinh();
    num / (T::c(4.0) * rk * rk.sinh() * rk.sinh())
}

/// `C₀(κ) = coth(√κ)/√κ`, attained at `x = a` and `x = b`.
pub fn c0_kappa<T: Scalar>(kappa: T) -> T {
    let rk = kappa.sqrt();
    (T::one() / rk.tanh()) / rk
}

/// Extremizer of the symmetric-form inequality at `x = b`:
/// `u(t) = cosh(ϱ (t-a)/(b-a))` with `ϱ = √κ`. Verifies equality of
/// `|u(b)|² / ((b-a)∫|u'|² + κ/(b-a)∫|u|²)` with `C₀(κ)`.
pub fn c0_extremizer_ratio(kappa: f64, a: f64, b: f64) -> f64 {
    let rho = kappa.sqrt();
    let ell = b - a;
    let u = |t: f64| (rho * (t - a) / ell).cosh();
    let du = |t: f64| (rho / ell) * ((rho * (t - a) / ell)).sinh();
    let e1 = integrate(|t| du(t) * du(t), a, b, 1e-12, 1e-14).value;
    let e2 = integrate(|t| u(t) * u(t), a, b, 1e-12, 1e-14).value;
    let ub = u(b);
    ub * ub / (ell * e1 + kappa / ell * e2)
}

/// Discretized Rayleigh maximization for `C(κ)`: maximize `u_j²/x_j` over
/// piecewise-linear `u` with `Q[u] = ∫|u'|² + κ∫|u|²/t² = 1` on a geometric
/// grid of `n` nodes. Element integrals are exact, so the result never
/// exceeds the true constant.
pub fn discrete_rayleigh_c(kappa: f64, a: f64, b: f64, n: usize) -> f64 {
    let nodes: Vec<f64> = (0..n)
        .map(|i| a * (b / a).powf(i as f64 / (n - 1) as f64))
        .collect();
    // tridiagonal Q: diag d[i], off-diagonal e[i] between i and i+1
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n - 1];
    for i in 0..n - 1 {
        let (t0, t1) = (nodes[i], nodes[i + 1]);
        let h = t1 - t0;
        // stiffness: ∫ φ'φ' over the element
        let k_same = 1.0 / h;
        let k_cross = -1.0 / h;
        // κ·∫ φ_i φ_j / t² exactly:
        // ∫ (t1-t)²/t² dt = t1²(1/t0 - 1/t1) - 2 t1 ln(t1/t0) + h
        // ∫ (t-t0)²/t² dt = h - 2 t0 ln(t1/t0) + t0²(1/t0 - 1/t1)
        // ∫ (t1-t)(t-t0)/t² dt = (t0+t1) ln(t1/t0) - t0 t1 (1/t0 - 1/t1) - h
        let inv_diff = 1.0 / t0 - 1.0 / t1;
        let lg = (t1 / t0).ln();
        let m_ll = (t1 * t1 * inv_diff - 2.0 * t1 * lg + h) / (h * h);
        let m_rr = (h - 2.0 * t0 * lg + t0 * t0 * inv_diff) / (h * h);
        let m_lr = ((t0 + t1) * lg - t0 * t1 * inv_diff - h) / (h * h);
        d[i] += k_same + kappa * m_ll;
        d[i + 1] += k_same + kappa * m_rr;
        e[i] += k_cross + kappa * m_lr;
    }
    max_green_over_weight(&d, &e, &nodes)
}

/// Discretized Rayleigh maximization for `C₀(κ)` on `[a, b]` (uniform grid).
pub fn discrete_rayleigh_c0(kappa: f64, a: f64, b: f64, n: usize) -> f64 {
    let ell = b - a;
    let h = ell / (n - 1) as f64;
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n - 1];
    for i in 0..n - 1 {
        let k_same = ell / h;
        let k_cross = -ell / h;
        let m_same = kappa / ell * h / 3.0;
        let m_cross = kappa / ell * h / 6.0;
        d[i] += k_same + m_same;
        d[i + 1] += k_same + m_same;
        e[i] += k_cross + m_cross;
    }
    let ones = vec![1.0f64; n];
    max_green_over_weight_nodes(&d, &e, &ones)
}

fn max_green_over_weight(d: &[f64], e: &[f64], nodes: &[f64]) -> f64 {
    let weights: Vec<f64> = nodes.iter().map(|&x| x).collect();
    max_green_over_weight_nodes(d, e, &weights)
}

/// `max_j (Q^{-1})_{jj} / w_j` for a tridiagonal SPD matrix, by Thomas
/// solves of `Q y = e_j`.
fn max_green_over_weight_nodes(d: &[f64], e: &[f64], w: &[f64]) -> f64 {
    let n = d.len();
    let mut best = 0.0f64;
    let mut c_prime = vec![0.0f64; n];
    let mut d_prime = vec![0.0f64; n];
    for j in 0..n {
        // forward sweep for rhs = e_j
        c_prime[0] = e.first().copied().unwrap_or(0.0) / d[0];
        d_prime[0] = if j == 0 { 1.0 / d[0] } else { 0.0 };
        for i in 1..n {
            let m = d[i] - e[i - 1] * c_prime[i - 1];
            c_prime[i] = if i < n - 1 { e[i] / m } else { 0.0 };
            let rhs = if i == j { 1.0 } else { 0.0 };
            d_prime[i] = (rhs - e[i - 1] * d_prime[i - 1]) / m;
        }
        // back substitution, only the j-th component is needed
        let mut x_next = 0.0f64;
        let mut xj = 0.0f64;
        for i in (0..n).rev() {
            let xi = d_prime[i] - if i < n - 1 { c_prime[i] * x_next } else { 0.0 };
            if i == j {
                xj = xi;
                // components below j do not influence x_j; finish the sweep
                // anyway to keep the loop simple
            }
            x_next = xi;
        }
        let val = xj / w[j];
        if val > best {
            best = val;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c0_values() {
        // κ = 1: coth(1) ≈ 1.3130
        let c = c0_kappa(1.0f64);
        assert!((c - 1.0f64.tanh().recip()).abs() < 1e-14);
        assert!((c - 1.3130352854993312).abs() < 1e-12);
        // κ → ∞: C₀ ≈ 1/√κ
        let big = c0_kappa(1e8f64);
        assert!((big * 1e4 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn c0_extremizer_attains() {
        for &(kappa, a, b) in &[(1.0, 0.0, 1.0), (4.0, 2.0, 7.0), (0.3, -1.0, 3.0)] {
            let ratio = c0_extremizer_ratio(kappa, a, b);
            let c0 = c0_kappa(kappa);
            assert!((ratio - c0).abs() < 1e-9 * c0, "ratio {ratio} vs {c0}");
        }
    }

    #[test]
    fn c_extremizer_attains_c_at_each_x() {
        for &(kappa, a, b) in &[(1.559f64, 1.0f64, 2.0f64), (0.7, 0.5, 5.0), (6.0, 2.0, 3.0)] {
            for &frac in &[0.0, 0.3, 0.8, 1.0] {
                let x = a * (b / a).powf(frac);
                let ext = Extremizer::new(kappa, a, b, x);
                let ratio = ext.rayleigh_ratio();
                let c = c_kappa_at(kappa, a, b, x);
                assert!(
                    (ratio - c).abs() < 1e-8 * c,
                    "κ={kappa} x={x}: ratio {ratio} vs C {c}"
                );
                assert!(ext.junction_defect() < 1e-6);
            }
        }
    }

    #[test]
    fn c_max_at_left_endpoint() {
        let (kappa, a, b) = (2.0f64, 1.0, 10.0);
        let ca = c_kappa_at(kappa, a, b, a);
        assert!((ca - c_kappa(kappa, a, b)).abs() < 1e-12 * ca);
        for &frac in &[0.05, 0.2, 0.5, 0.9, 1.0] {
            let x = a * (b / a).powf(frac);
            assert!(c_kappa_at(kappa, a, b, x) <= ca * (1.0 + 1e-12));
        }
    }

    #[test]
    fn origin_limit() {
        let kappa = 3.0f64;
        let lim = c_kappa_origin_limit(kappa);
        let near = c_kappa(kappa, 1e-9, 1.0);
        assert!((near - lim).abs() < 1e-6 * lim);
        // and the limit is strictly below C(κ) for positive a
        assert!(lim < c_kappa(kappa, 0.1, 1.0));
    }

    #[test]
    fn discrete_rayleigh_sandwich() {
        let (kappa, a, b) = (1.3f64, 0.8, 6.0);
        let c = c_kappa(kappa, a, b);
        let disc = discrete_rayleigh_c(kappa, a, b, 2000);
        assert!(disc <= c * (1.0 + 1e-3), "disc {disc} vs C {c}");
        assert!(disc >= 0.999 * c, "disc {disc} vs C {c}");
        let c0 = c0_kappa(kappa);
        let disc0 = discrete_rayleigh_c0(kappa, 2.0, 5.0, 2000);
        assert!(disc0 <= c0 * (1.0 + 1e-3));
        assert!(disc0 >= 0.999 * c0, "disc0 {disc0} vs C0 {c0}");
    }

    #[test]
    fn f32_closed_form() {
        let c64 = c_kappa(1.5f64, 1.0, 4.0);
        let c32 = c_kappa(1.5f32, 1.0, 4.0);
        assert!((c64 - c32 as f64).abs() < 1e-5);
    }
}
