//! Inverse-square staircase constructions: potentials whose eigenvalue
//! count jumps from a prescribed integer to infinity as the coupling
//! crosses 1, and staircases with prescribed count increments along a
//! sequence of couplings approaching 1.
//!
//! All profiles are `G(t) = q/t²` plateaus with junctions kept as
//! `s = ln t`, since the junction points themselves overflow `f64`.

use super::{BuildError, Claim, ConstructionMeta, NamedConstruction};
use crate::potentials::{LogPlateau, Potential};

/// Two-plateau staircase: `G = 1/(3t²)` on `(a₁, a₂)` then `1/(4t²)`, with
/// `ln(a₂/a₁) = √3·(2N - 3/2)·π`. The count at coupling `α → 1⁻` is `N`;
/// any `α > 1` makes the tail oscillatory.
pub fn build_alpha1_i(n: u64, s1: f64) -> Result<NamedConstruction, BuildError> {
    if n == 0 {
        return Err(BuildError::InvalidParameters { condition: "N ≥ 1 required".into() });
    }
    let gap = 3f64.sqrt() * (2.0 * n as f64 - 1.5) * std::f64::consts::PI;
    let s2 = s1 + gap;
    let pot = Potential::log_plateaus(vec![
        LogPlateau { s_lo: s1, s_hi: s2, q: 1.0 / 3.0 },
        LogPlateau { s_lo: s2, s_hi: f64::INFINITY, q: 0.25 },
    ]);
    Ok(NamedConstruction {
        id: format!("alpha1_i(N={n})"),
        potential: pot,
        claims: vec![
            Claim::RadialCountAt { coupling: 1.0 - 1e-3, expected: n },
            Claim::DivergenceEvidence { coupling: 1.0 + 0.05, past: 3 * n },
        ],
        meta: ConstructionMeta {
            s_junctions: vec![s1, s2],
            betas: vec![],
            k0: None,
            radii: vec![],
            heights: vec![],
        },
    })
}

/// Prescribed-increment staircase: plateau heights `1/(2(α_k + α_{k-1})t²)`
/// with `√(α_k/(2(α_k+α_{k-1})) - 1/4)·ln(a_{k+1}/a_k) = (N_{k-1} + 5/2)π`.
pub fn build_alpha1_ii(
    alphas: &[f64],
    targets: &[u64],
    alpha0: Option<f64>,
) -> Result<NamedConstruction, BuildError> {
    if alphas.len() < 3 || targets.len() + 1 < alphas.len() {
        return Err(BuildError::InvalidParameters {
            condition: "need at least 3 couplings and a target per step".into(),
        });
    }
    if !strictly_increasing_to_one(alphas) {
        return Err(BuildError::InvalidParameters {
            condition: "couplings must increase strictly toward 1".into(),
        });
    }
    let a0 = alpha0.unwrap_or(alphas[0] / 2.0);
    if !(0.0 < a0 && a0 < alphas[0]) {
        return Err(BuildError::InvalidParameters {
            condition: "α₀ must lie in (0, α₁)".into(),
        });
    }
    let mut prev = a0;
    let mut s = vec![0.0f64];
    let mut plateaus = Vec::new();
    for (k, &ak) in alphas.iter().enumerate() {
        let q = 1.0 / (2.0 * (ak + prev));
        let mu2 = ak * q - 0.25;
        if mu2 <= 0.0 {
            return Err(BuildError::InvalidParameters {
                condition: format!("step {k}: oscillation parameter nonpositive"),
            });
        }
        let n_prev = if k == 0 { 0 } else { targets[k - 1] };
        let gap = (n_prev as f64 + 2.5) * std::f64::consts::PI / mu2.sqrt();
        let s_next = s[k] + gap;
        plateaus.push(LogPlateau { s_lo: s[k], s_hi: s_next, q });
        s.push(s_next);
        prev = ak;
    }
    // keep the staircase subcritical forever with the last exact height
    let q_tail = 1.0 / (2.0 * (alphas[alphas.len() - 1] + prev));
    plateaus.push(LogPlateau { s_lo: *s.last().unwrap(), s_hi: f64::INFINITY, q: q_tail });
    let couplings: Vec<f64> = alphas.to_vec();
    let min_gaps: Vec<u64> = targets[..alphas.len() - 1].to_vec();
    Ok(NamedConstruction {
        id: "alpha1_ii".into(),
        potential: Potential::log_plateaus(plateaus),
        claims: vec![Claim::SuccessiveCountGaps { couplings, min_gaps }],
        meta: ConstructionMeta {
            s_junctions: s,
            betas: alphas.to_vec(),
            k0: None,
            radii: vec![],
            heights: vec![],
        },
    })
}

pub fn build_alpha1_ii_default() -> Result<NamedConstruction, BuildError> {
    build_alpha1_ii(&[0.5, 0.75, 0.9, 0.97], &[1, 2, 3, 1], None)
}

/// Unit-increment staircase for a sequence `α_k ↑ 1` subject to the
/// summability condition `Σ (1-α_{k+1})/(α_{k+1}-α_k) < ∞` with a window
/// start `k₀` at which the accumulated phase slack stays below `1/8`.
pub fn build_alpha1_iii(alphas: &[f64]) -> Result<NamedConstruction, BuildError> {
    if alphas.len() < 6 {
        return Err(BuildError::InvalidParameters {
            condition: "need at least 6 couplings".into(),
        });
    }
    if !strictly_increasing_to_one(alphas) {
        return Err(BuildError::InvalidParameters {
            condition: "couplings must increase strictly toward 1".into(),
        });
    }
    let ratios: Vec<f64> = (0..alphas.len() - 1)
        .map(|k| (1.0 - alphas[k + 1]) / (alphas[k + 1] - alphas[k]))
        .collect();
    // certify a summable continuation: the computed ratios must decay
    // geometrically over the window so the untruncated remainder is bounded
    let k0 = certified_window_start(&ratios).ok_or_else(|| BuildError::InvalidParameters {
        condition: "summability condition fails: the ratios (1-α_{k+1})/(α_{k+1}-α_k) \
                    do not certify a partial sum ≤ 1/8 for any window start"
            .into(),
    })?;
    // β_k = α_{k0-1+k}: only the window enters the potential
    let gaps: Vec<f64> = alphas[k0 - 1..].iter().map(|a| 1.0 - a).collect();
    build_iii_from_gaps(&gaps, Some(k0))
}

/// Force the staircase for a sequence that fails the summability window
/// (diagnostic use: shows how the unit-increment pattern degrades).
pub fn build_alpha1_iii_unchecked(alphas: &[f64], k0: usize) -> Result<NamedConstruction, BuildError> {
    let gaps: Vec<f64> = alphas[k0 - 1..].iter().map(|a| 1.0 - a).collect();
    build_iii_from_gaps(&gaps, Some(k0))
}

/// Construct the staircase from the gaps `g_k = 1 - β_k` directly, which
/// keeps the near-1 differences free of cancellation.
fn build_iii_from_gaps(gaps: &[f64], k0: Option<usize>) -> Result<NamedConstruction, BuildError> {
    let betas: Vec<f64> = gaps.iter().map(|g| 1.0 - g).collect();
    let j_max = betas.len() - 1;
    let mut s = vec![0.0f64];
    let mut plateaus = Vec::new();
    for j in 1..=j_max {
        let (gj, gjm) = (gaps[j], gaps[j - 1]);
        let dbeta = gjm - gj;
        let sum_beta = 2.0 - gj - gjm;
        if dbeta <= 0.0 {
            return Err(BuildError::InvalidParameters {
                condition: format!("gap sequence not strictly decreasing at step {j}"),
            });
        }
        let q = 1.0 / (2.0 * sum_beta);
        let mu1 = 0.5 * (dbeta / sum_beta).sqrt();
        let eps = 8.0 * std::f64::consts::PI / 9.0 * gj / dbeta;
        let gap_s = (std::f64::consts::PI + eps) / mu1;
        let s_next = s[j - 1] + gap_s;
        plateaus.push(LogPlateau { s_lo: s[j - 1], s_hi: s_next, q });
        s.push(s_next);
    }
    // subcritical continuation: β_k·q_tail ≤ 1/4 for every β_k < 1
    let q_tail = 1.0 / (2.0 * (1.0 + betas[j_max]));
    plateaus.push(LogPlateau { s_lo: *s.last().unwrap(), s_hi: f64::INFINITY, q: q_tail });

    let window: Vec<f64> = (1..=j_max.saturating_sub(1).min(6)).map(|j| betas[j]).collect();
    let mut claims = vec![
        Claim::SuccessiveCountDiffs { couplings: window.clone(), diff: 1 },
        Claim::StaircasePhaseBrackets,
    ];
    for (i, &beta) in window.iter().enumerate().take(3) {
        claims.push(Claim::StaircaseZeros {
            coupling: beta,
            upto: i + 1,
            expected: (i + 1) as u64,
        });
    }
    Ok(NamedConstruction {
        id: "alpha1_iii".into(),
        potential: Potential::log_plateaus(plateaus),
        claims,
        meta: ConstructionMeta {
            s_junctions: s,
            betas,
            k0,
            radii: vec![],
            heights: vec![],
        },
    })
}

/// A compliant default: ratios `ρ_j = 0.032·0.74^j` sum below 1/8 with
/// certified geometric decay, and the gaps `g_{j+1} = g_j·ρ_j/(1+ρ_j)`
/// stay comfortably inside `f64` over the whole verification window.
pub fn default_iii_sequence(len: usize) -> Vec<f64> {
    default_iii_gaps(len).iter().map(|g| 1.0 - g).collect()
}

fn default_iii_gaps(len: usize) -> Vec<f64> {
    let mut gaps = vec![0.25f64];
    for j in 0..len.saturating_sub(1) {
        let rho = 0.032 * 0.74f64.powi(j as i32);
        let g = gaps[j] * rho / (1.0 + rho);
        gaps.push(g);
    }
    gaps
}

pub fn build_alpha1_iii_default() -> Result<NamedConstruction, BuildError> {
    build_iii_from_gaps(&default_iii_gaps(8), Some(2))
}

fn strictly_increasing_to_one(alphas: &[f64]) -> bool {
    alphas.windows(2).all(|w| w[0] < w[1]) && alphas.iter().all(|&a| 0.0 < a && a < 1.0)
}

/// The smallest `k₀ ≥ 2` such that the ratio tail from `k₀ - 1` is
/// certified ≤ 1/8: the computed part must be below the budget and the
/// ratios must be decaying by at least a factor q < 1 so the continuation
/// beyond the data is dominated by a geometric series.
fn certified_window_start(ratios: &[f64]) -> Option<usize> {
    'outer: for k0 in 2..ratios.len().saturating_sub(2) {
        let window = &ratios[k0 - 2..];
        let mut decay: f64 = 0.0;
        for w in window.windows(2) {
            if w[0] <= 0.0 {
                continue 'outer;
            }
            decay = decay.max(w[1] / w[0]);
        }
        if decay >= 0.75 {
            continue;
        }
        let partial: f64 = window.iter().sum();
        let remainder = window.last().unwrap() * decay / (1.0 - decay);
        if partial + remainder <= 0.125 {
            return Some(k0);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha1_i_geometry() {
        let c = build_alpha1_i(3, 0.0).unwrap();
        let gap = c.meta.s_junctions[1] - c.meta.s_junctions[0];
        let expect = 3f64.sqrt() * 4.5 * std::f64::consts::PI;
        assert!((gap - expect).abs() < 1e-12);
        // the defining identity: 1/3 = 1/4 + ((N - 3/4)π/ln(a₂/a₁))²
        let lhs = 0.25 + ((3.0 - 0.75) * std::f64::consts::PI / gap).powi(2);
        assert!((lhs - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn default_iii_sequence_is_admissible() {
        let c = build_alpha1_iii_default().unwrap();
        assert!(c.meta.k0.is_some());
        assert!(c.meta.betas.len() >= 8);
        // the ratio sum over the window stays below 1/8 by construction
        let g = default_iii_gaps(8);
        let s: f64 = (0..g.len() - 1).map(|j| g[j + 1] / (g[j] - g[j + 1])).sum();
        assert!(s < 0.125, "ratio sum {s}");
        // gaps stay well above machine epsilon (they are carried exactly;
        // only the rounded coupling 1-g enters the counters)
        assert!(*g.last().unwrap() > 50.0 * f64::EPSILON, "smallest gap {:.3e}", g.last().unwrap());
    }

    #[test]
    fn geometric_sequences_are_rejected() {
        // 1 - α_k = 4^{-k} has constant ratio 1/3: no admissible window
        let alphas: Vec<f64> = (1..=14).map(|k| 1.0 - 4f64.powi(-k)).collect();
        let err = build_alpha1_iii(&alphas).unwrap_err();
        assert!(matches!(err, BuildError::InvalidParameters { .. }), "{err}");
    }

    #[test]
    fn phase_brackets_hold() {
        let c = build_alpha1_iii_default().unwrap();
        let betas = &c.meta.betas;
        let s = &c.meta.s_junctions;
        for k in 1..s.len() - 1 {
            for j in 1..=k {
                // μ_{1,k,j} = √(β_k/(2(β_j+β_{j-1})) - 1/4)
                let mu = (betas[k] / (2.0 * (betas[j] + betas[j - 1])) - 0.25).sqrt();
                let prod = mu * (s[j] - s[j - 1]);
                let eps_j = 8.0 * std::f64::consts::PI / 9.0 * (1.0 - betas[j])
                    / (betas[j] - betas[j - 1]);
                let hi = std::f64::consts::PI
                    + 2.0 * std::f64::consts::PI * (1.0 - betas[j]) / (betas[j] - betas[j - 1]);
                assert!(
                    prod >= std::f64::consts::PI + eps_j - 1e-9 && prod < hi,
                    "k={k} j={j}: {prod} not in ({}, {hi})",
                    std::f64::consts::PI + eps_j
                );
            }
        }
    }
}
