//! Sequence functionals over annular profiles: plain sums, thresholded
//! square-root sums, and the weak-ℓ¹ functional, each honoring the tail
//! certificates.

use super::profile::{AnnularProfile, TailClass};
use crate::report::{Quantity, Verdict};

/// `sup_s s·card{n : a_n > s}` over a finite slice (exact over the
/// breakpoint set).
pub fn weak_l1_slice(values: &[f64]) -> f64 {
    let mut v: Vec<f64> = values.iter().map(|x| x.abs()).filter(|x| *x > 0.0).collect();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut best = 0.0f64;
    for (i, x) in v.iter().enumerate() {
        // the sup of s·card{a_n > s} over s < x is attained as s ↑ x with
        // card ≥ i+1
        best = best.max(x * (i + 1) as f64);
    }
    best
}

/// `Σ_{a_n > c} √a_n` over a finite slice.
pub fn thresholded_sqrt_sum_slice(values: &[f64], c: f64) -> f64 {
    values.iter().filter(|v| **v > c).map(|v| v.sqrt()).sum()
}

fn finite_entries(profile: &AnnularProfile) -> Result<Vec<f64>, Quantity> {
    let mut out = Vec::new();
    for (n, q) in &profile.entries {
        match q.verdict {
            Verdict::Finite => out.push(q.value.unwrap()),
            Verdict::Infinite => {
                return Err(Quantity::infinite(format!(
                    "entry n = {n} is infinite: {}",
                    q.note.clone().unwrap_or_default()
                )))
            }
            Verdict::Unknown => {
                return Err(Quantity::unknown(
                    format!("entry n = {n} could not be evaluated"),
                    None,
                ))
            }
        }
    }
    Ok(out)
}

fn tail_sum(tail: &TailClass) -> Quantity {
    match tail {
        TailClass::Zero => Quantity::zero(),
        TailClass::Unknown => Quantity::unknown("tail not certified", None),
        TailClass::Envelope { upper, lower, from } => {
            if upper.sum_finite() {
                let b = upper.sum_bound(*from);
                Quantity::finite(0.0, b)
            } else if lower.as_ref().map(|l| l.sum_divergent()).unwrap_or(false) {
                Quantity::infinite(format!(
                    "tail minorant e^{{{:.3}n}}·n^{{{:.3}}} has a divergent sum",
                    lower.as_ref().unwrap().sigma,
                    lower.as_ref().unwrap().tau
                ))
            } else {
                Quantity::unknown("tail sum not certified either way", None)
            }
        }
    }
}

/// `Σ_n a_n` over the whole profile: computed range plus certified tails.
/// The tail bound is reported inside `err`.
pub fn sum(profile: &AnnularProfile) -> Quantity {
    let vals = match finite_entries(profile) {
        Ok(v) => v,
        Err(q) => return q,
    };
    let mut acc = Quantity::finite(vals.iter().sum(), 0.0);
    for tail in [&profile.tail_below, &profile.tail_above] {
        acc = acc.add(&tail_sum(tail));
    }
    acc
}

/// Largest possible entry in a tail (`None` when unbounded).
fn tail_entry_sup(tail: &TailClass) -> Option<f64> {
    match tail {
        TailClass::Zero => Some(0.0),
        TailClass::Unknown => None,
        TailClass::Envelope { upper, from, .. } => {
            if upper.sigma > 1e-9 || (upper.sigma.abs() <= 1e-9 && upper.tau > 1e-9) {
                None
            } else {
                // nonincreasing-ish beyond `from`: probe a few points
                let m = (0..6).map(|k| (upper.bound)(from + (1 << k))).fold(0.0f64, f64::max);
                Some(m.max((upper.bound)(*from)))
            }
        }
    }
}

/// Smallest certified entry floor along the tail, if entries provably stay
/// above a positive level infinitely often.
fn tail_entry_inf(tail: &TailClass) -> Option<f64> {
    match tail {
        TailClass::Envelope { lower: Some(l), from, .. } => {
            if l.nonvanishing() {
                let mut m = f64::INFINITY;
                for k in 0..8 {
                    m = m.min((l.bound)(from + (1 << k)));
                }
                if m > 0.0 && m.is_finite() {
                    Some(m)
                } else {
                    None
                }
            } else {
                None
            }
        }
        _ => None,
    }
}

/// `Σ_{a_n > c} √a_n` with tail resolution: exact when tail entries are
/// certified below the threshold, infinite when a positive tail floor
/// exceeds it.
pub fn thresholded_sqrt_sum(profile: &AnnularProfile, c: f64) -> Quantity {
    assert!(c > 0.0, "threshold must be positive");
    let vals = match finite_entries(profile) {
        Ok(v) => v,
        Err(q) => return q,
    };
    let head = thresholded_sqrt_sum_slice(&vals, c);
    let mut acc = Quantity::finite(head, 0.0);
    for tail in [&profile.tail_below, &profile.tail_above] {
        if let Some(floor) = tail_entry_inf(tail) {
            if floor > c {
                return Quantity::infinite(format!(
                    "tail entries stay above the threshold {c} (floor ≥ {floor:.3e})"
                ));
            }
        }
        match tail_entry_sup(tail) {
            Some(sup) if sup <= c => {} // no tail exceedances
            Some(_) | None => {
                // entries may exceed the threshold beyond the range
                acc = Quantity::unknown(
                    "tail exceedances not excluded; enlarge the range",
                    acc.value,
                );
            }
        }
    }
    acc
}

/// Weak-ℓ¹ functional of the profile.
pub fn weak_l1(profile: &AnnularProfile) -> Quantity {
    let vals = match finite_entries(profile) {
        Ok(v) => v,
        Err(q) => return q,
    };
    let head = weak_l1_slice(&vals);
    let mut err = 0.0;
    for tail in [&profile.tail_below, &profile.tail_above] {
        match tail {
            TailClass::Zero => {}
            TailClass::Unknown => {
                return Quantity::unknown("tail not certified for the weak-ℓ¹ sup", Some(head))
            }
            TailClass::Envelope { upper, lower, from } => {
                if lower.as_ref().map(|l| weak_l1_divergent(l)).unwrap_or(false) {
                    return Quantity::infinite(
                        "infinitely many entries exceed a fixed positive level".to_string(),
                    );
                }
                if !weak_l1_tail_finite(upper) {
                    return Quantity::unknown(
                        "tail upper model does not certify the weak-ℓ¹ sup",
                        Some(head),
                    );
                }
                // contribution bound: card of tail exceedances of level s is
                // at most the model inverse; for σ<0 or τ ≤ -1 this adds at
                // most a constant ≍ K
                err += weak_l1_tail_bound(upper, *from);
            }
        }
    }
    Quantity::finite(head, err)
}

fn weak_l1_divergent(l: &super::profile::TailModel) -> bool {
    // entries ~ e^{σn}n^τ: the weak-ℓ¹ sup is infinite when entries do not
    // vanish, or vanish slower than 1/n
    l.sigma > 1e-9
        || (l.sigma.abs() <= 1e-9 && l.tau > -1.0 + 1e-9)
        || (l.sigma.abs() <= 1e-9 && (l.tau + 1.0).abs() <= 1e-9 && l.ups > 1e-9)
}

fn weak_l1_tail_finite(u: &super::profile::TailModel) -> bool {
    u.sigma < -1e-9
        || (u.sigma.abs() <= 1e-9
            && (u.tau < -1.0 - 1e-9 || ((u.tau + 1.0).abs() <= 1e-9 && u.ups <= 1e-9)))
}

fn weak_l1_tail_bound(u: &super::profile::TailModel, from: i64) -> f64 {
    // s·card{tail entries > s} ≤ s·model⁻¹(s); for τ ≤ -1 this is at most
    // sup_n n·bound(n)
    let mut m = 0.0f64;
    for k in 0..40 {
        let n = from + k * k;
        m = m.max(n as f64 * (u.bound)(n));
    }
    m
}

/// Fit the exponent `q` in `card{|a_n| > s} = O(s^{-q})` by a log-log
/// least-squares slope over a decade grid of levels.
pub fn fitted_card_exponent(values: &[f64], levels: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = levels
        .iter()
        .filter_map(|&s| {
            let card = values.iter().filter(|v| v.abs() > s).count();
            if card > 0 {
                Some((s.ln(), (card as f64).ln()))
            } else {
                None
            }
        })
        .collect();
    -least_squares_slope(&pts)
}

/// Fit the exponent in `Σ_{α|a_n|>c}(α|a_n|)^σ = O(α^q)` over a grid of α.
pub fn fitted_sum_exponent(values: &[f64], sigma: f64, c: f64, alphas: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = alphas
        .iter()
        .filter_map(|&alpha| {
            let s: f64 = values
                .iter()
                .map(|v| alpha * v.abs())
                .filter(|v| *v > c)
                .map(|v| v.powf(sigma))
                .sum();
            if s > 0.0 {
                Some((alpha.ln(), s.ln()))
            } else {
                None
            }
        })
        .collect();
    least_squares_slope(&pts)
}

fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return f64::NAN;
    }
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weak_l1_harmonic() {
        // a_n = 1/n, n = 1..N: sup_k (1/k)·k = 1
        let v: Vec<f64> = (1..=500).map(|n| 1.0 / n as f64).collect();
        assert!((weak_l1_slice(&v) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn weak_l1_zero() {
        assert_eq!(weak_l1_slice(&[0.0, 0.0]), 0.0);
    }

    #[test]
    fn thresholded_hand_case() {
        let v = [1.0, 0.5, 0.04];
        let s = thresholded_sqrt_sum_slice(&v, 0.25);
        assert!((s - (1.0 + 0.5f64.sqrt())).abs() < 1e-14);
        // brute-force enumeration agrees
        let brute: f64 = v.iter().filter(|x| **x > 0.25).map(|x| x.sqrt()).sum();
        assert_eq!(s, brute);
    }

    #[test]
    fn sqrt_sum_weak_l1_inequality() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..60);
            let v: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..4.0f64)).collect();
            let c = rng.gen_range(0.01..2.0);
            let lhs = thresholded_sqrt_sum_slice(&v, c);
            let rhs = 2.0 / c.sqrt() * weak_l1_slice(&v);
            assert!(lhs <= rhs + 1e-10, "lhs {lhs} rhs {rhs} c {c}");
        }
    }

    #[test]
    fn slope_fits_power_law() {
        // a_n = n^{-1/q}: card{a_n > s} = s^{-q}; the α-grid keeps
        // exceedance counts well inside the sequence length
        for &(q, i_lo, i_hi) in &[(1.0f64, 6, 14), (2.0, 3, 8)] {
            let v: Vec<f64> = (1..400_000).map(|n| (n as f64).powf(-1.0 / q)).collect();
            let levels: Vec<f64> = (1..=12).map(|i| 0.3f64.powi(i).max(2e-2)).collect();
            let fitted = fitted_card_exponent(&v, &levels);
            assert!((fitted - q).abs() < 0.1, "q {q} fitted {fitted}");
            let alphas: Vec<f64> = (i_lo..=i_hi).map(|i| 2f64.powi(i)).collect();
            let fitted_sum = fitted_sum_exponent(&v, 0.5, 1.0, &alphas);
            assert!((fitted_sum - q).abs() < 0.1, "q {q} sum-slope {fitted_sum}");
        }
    }
}
