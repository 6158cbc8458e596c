//! Measurable samples: a finite-measure domain plus a nonnegative integrand.

use crate::numerics::{integrate, integrate_cells};
use crate::scalar::Scalar;
use std::sync::Arc;

type Fn1<T> = Arc<dyn Fn(T) -> T + Send + Sync>;
type Fn2<T> = Arc<dyn Fn(T, T) -> T + Send + Sync>;

/// Domain + integrand. 2D regions carry polar-coordinate integrands and the
/// area element `r dr dθ`; 1D domains use plain Lebesgue measure.
#[derive(Clone)]
pub enum SampleData<T: Scalar> {
    /// Finitely many cells with measures and constant values (exact sums).
    Cells { measures: Vec<T>, values: Vec<T> },
    /// Interval `[a, b]` with 1D Lebesgue measure.
    Interval { a: T, b: T, f: Fn1<T> },
    /// The circle `(-π, π]` with arc-length measure.
    Circle { f: Fn1<T> },
    /// Annulus (or disk for `r_lo = 0`) with a radial integrand.
    RadialAnnulus { r_lo: T, r_hi: T, f: Fn1<T> },
    /// Annulus with a general polar integrand `f(r, θ)`.
    PolarAnnulus { r_lo: T, r_hi: T, f: Fn2<T> },
}

#[derive(Clone)]
pub struct MeasurableSample<T: Scalar> {
    pub data: SampleData<T>,
    pub rel_tol: T,
    pub abs_tol: T,
}

impl<T: Scalar> MeasurableSample<T> {
    pub fn cells(measures: Vec<T>, values: Vec<T>) -> Self {
        assert_eq!(measures.len(), values.len());
        MeasurableSample {
            data: SampleData::Cells { measures, values },
            rel_tol: T::c(1e-11),
            abs_tol: T::c(1e-13),
        }
    }

    pub fn interval(a: T, b: T, f: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        MeasurableSample {
            data: SampleData::Interval { a, b, f: Arc::new(f) },
            rel_tol: T::c(1e-11),
            abs_tol: T::c(1e-13),
        }
    }

    pub fn circle(f: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        MeasurableSample {
            data: SampleData::Circle { f: Arc::new(f) },
            rel_tol: T::c(1e-11),
            abs_tol: T::c(1e-13),
        }
    }

    pub fn radial_annulus(r_lo: T, r_hi: T, f: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        MeasurableSample {
            data: SampleData::RadialAnnulus { r_lo, r_hi, f: Arc::new(f) },
            rel_tol: T::c(1e-10),
            abs_tol: T::c(1e-12),
        }
    }

    pub fn polar_annulus(
        r_lo: T,
        r_hi: T,
        f: impl Fn(T, T) -> T + Send + Sync + 'static,
    ) -> Self {
        MeasurableSample {
            data: SampleData::PolarAnnulus { r_lo, r_hi, f: Arc::new(f) },
            rel_tol: T::c(1e-8),
            abs_tol: T::c(1e-10),
        }
    }

    pub fn with_tol(mut self, rel: T, abs: T) -> Self {
        self.rel_tol = rel;
        self.abs_tol = abs;
        self
    }

    /// μ(Ω).
    pub fn measure(&self) -> T {
        match &self.data {
            SampleData::Cells { measures, .. } => {
                measures.iter().fold(T::zero(), |a, &m| a + m)
            }
            SampleData::Interval { a, b, .. } => *b - *a,
            SampleData::Circle { .. } => T::two() * T::pi(),
            SampleData::RadialAnnulus { r_lo, r_hi, .. }
            | SampleData::PolarAnnulus { r_lo, r_hi, .. } => {
                T::pi() * (*r_hi * *r_hi - *r_lo * *r_lo)
            }
        }
    }

    /// ∫ φ(f) dμ for a scalar composition φ.
    pub fn integral_of(&self, phi: impl Fn(T) -> T + Copy) -> T {
        match &self.data {
            SampleData::Cells { measures, values } => {
                let vals: Vec<T> = values.iter().map(|&v| phi(v)).collect();
                integrate_cells(measures, &vals)
            }
            SampleData::Interval { a, b, f } => {
                let f = f.clone();
                integrate(move |t| phi(f(t)), *a, *b, self.rel_tol, self.abs_tol).value
            }
            SampleData::Circle { f } => {
                let f = f.clone();
                integrate(
                    move |t| phi(f(t)),
                    -T::pi(),
                    T::pi(),
                    self.rel_tol,
                    self.abs_tol,
                )
                .value
            }
            SampleData::RadialAnnulus { r_lo, r_hi, f } => {
                let f = f.clone();
                let inner =
                    integrate_radial(move |r| phi(f(r)), *r_lo, *r_hi, self.rel_tol, self.abs_tol);
                T::two() * T::pi() * inner
            }
            SampleData::PolarAnnulus { r_lo, r_hi, f } => {
                let f = f.clone();
                let rel = self.rel_tol;
                let abs = self.abs_tol;
                let outer = move |r: T| {
                    let f = f.clone();
                    integrate(move |th| phi(f(r, th)), -T::pi(), T::pi(), rel, abs).value
                };
                integrate_radial(outer, *r_lo, *r_hi, self.rel_tol, self.abs_tol)
            }
        }
    }

    /// ∫ f dμ.
    pub fn integral(&self) -> T {
        self.integral_of(|v| v)
    }

    /// ∫ f·g dμ for cell samples (pairing used by the dual oracles).
    pub fn pair_cells(&self, g: &[T]) -> T {
        match &self.data {
            SampleData::Cells { measures, values } => {
                let mut acc = T::zero();
                for ((&m, &v), &gi) in measures.iter().zip(values.iter()).zip(g.iter()) {
                    acc = acc + m * v * gi;
                }
                acc
            }
            _ => panic!("pair_cells requires a cell sample"),
        }
    }

    /// True if the sample is identically zero (exact for cells; probe-based
    /// via a gauge integral otherwise).
    pub fn is_zero(&self) -> bool {
        match &self.data {
            SampleData::Cells { values, .. } => values.iter().all(|v| *v == T::zero()),
            _ => self.integral_of(|v| v.abs()) == T::zero(),
        }
    }
}

/// ∫ g(r)·r dr over `[r_lo, r_hi]`. A logarithmic substitution handles the
/// origin so that integrable singularities like `ln(1/r)` powers converge.
pub fn integrate_radial<T: Scalar>(
    g: impl Fn(T) -> T + Clone,
    r_lo: T,
    r_hi: T,
    rel_tol: T,
    abs_tol: T,
) -> T {
    assert!(r_hi >= r_lo && r_lo >= T::zero());
    if r_hi == r_lo {
        return T::zero();
    }
    if r_lo > T::zero() {
        return integrate(move |r| g(r) * r, r_lo, r_hi, rel_tol, abs_tol).value;
    }
    // r = e^s: ∫ g(e^s) e^{2s} ds, marched downward in blocks until the
    // block contribution is negligible.
    let s_hi = r_hi.ln();
    let block = T::c(30.0);
    let mut upper = s_hi;
    let mut total = T::zero();
    let floor = T::c(-700.0);
    for _ in 0..32 {
        let lower = (upper - block).max(floor);
        let g2 = g.clone();
        let part = integrate(
            move |s: T| {
                let r = s.exp();
                g2(r) * r * r
            },
            lower,
            upper,
            rel_tol,
            abs_tol,
        )
        .value;
        total = total + part;
        if part.abs() <= abs_tol + rel_tol * total.abs() || lower <= floor {
            break;
        }
        upper = lower;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_log_integral() {
        // ∫_D ln(1/|x|) dx = 2π ∫_0^1 ln(1/r) r dr = 2π·(1/4) = π/2
        let s = MeasurableSample::radial_annulus(0.0f64, 1.0, |r| (1.0 / r).ln());
        let v = s.integral();
        assert!((v - std::f64::consts::PI / 2.0).abs() < 1e-8, "{v}");
    }

    #[test]
    fn cell_sums() {
        let s = MeasurableSample::cells(vec![0.5f64, 1.5], vec![2.0, 4.0]);
        assert!((s.integral() - 7.0).abs() < 1e-15);
        assert!((s.measure() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn polar_matches_radial() {
        let radial = MeasurableSample::radial_annulus(1.0f64, 2.0, |r| 1.0 / r);
        let polar = MeasurableSample::polar_annulus(1.0f64, 2.0, |r, _| 1.0 / r);
        assert!((radial.integral() - polar.integral()).abs() < 1e-7);
    }
}
