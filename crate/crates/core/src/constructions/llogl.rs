//! Sharpness family for the L log L norm: a compactly supported potential
//! built from shrinking disk bumps whose Ψ-integral stays finite for any
//! N-function growing strictly slower than `ℬ`, while explicit logarithmic
//! test functions make the energy form negative on every bump.

use super::{BuildError, Claim, ConstructionMeta, NamedConstruction};
use crate::orlicz::NFunction;
use crate::potentials::{DiskBump, Potential};

/// `γ(s) = sup_{t ≥ s} Ψ(t)/ℬ(t)` by a log-grid sample.
pub fn gamma_ratio(psi: &NFunction<f64>, s: f64) -> f64 {
    let b = NFunction::<f64>::llogl_b();
    let mut sup: f64 = 0.0;
    let mut t = s;
    for _ in 0..400 {
        let denom = b.eval(t);
        if denom > 0.0 {
            sup = sup.max(psi.eval(t) / denom);
        }
        t *= 1.35;
        if t > 1e290 {
            break;
        }
    }
    sup
}

/// Build the family for a sub-`L log L` N-function. Radii are chosen
/// adaptively so that `γ(1/r_k) ≤ 2^{-k}` (which makes `Σ γ(1/r_k)`
/// certifiably convergent) while `r_k < r_{k-1}/3` keeps the bumps
/// disjoint; heights are `t_k = 3 r_k^{-4}/ln(1/r_k)`.
pub fn build_sharpness(psi: &NFunction<f64>) -> Result<NamedConstruction, BuildError> {
    // precondition: Ψ must grow strictly slower than ℬ — γ has to decay,
    // not merely be small at one probe
    let g_low = gamma_ratio(psi, 1e2);
    let g_high = gamma_ratio(psi, 1e10);
    if !(g_high < 0.6 * g_low) || !(g_high < 0.5) {
        return Err(BuildError::InvalidParameters {
            condition: format!(
                "Ψ(s)/ℬ(s) must tend to 0: sampled sup drops only from {g_low:.3} to {g_high:.3}"
            ),
        });
    }
    // s₀: Ψ(s) ≥ s and γ(s) ≤ 1 for s ≥ s₀
    let mut s0 = std::f64::consts::E;
    for _ in 0..200 {
        if psi.eval(s0) >= s0 && gamma_ratio(psi, s0) <= 1.0 {
            break;
        }
        s0 *= 1.5;
    }
    let mut radii: Vec<f64> = Vec::new();
    let mut heights: Vec<f64> = Vec::new();
    let mut r_prev = (1.0 / s0).min(0.05);
    for k in 1..=24 {
        // largest r ≤ r_prev/3.2 with γ(1/r) ≤ 2^{-k}
        let target = 2f64.powi(-k);
        let mut r = r_prev / 3.2;
        let mut guard = 0;
        while gamma_ratio(psi, 1.0 / r) > target {
            r *= 0.5;
            guard += 1;
            if guard > 2000 || r < 1e-160 {
                break;
            }
        }
        // heights must stay inside f64: t_k = 3 r^{-4}/ln(1/r)
        if r < 1e-160 || r.powi(-4) > 1e280 {
            break;
        }
        let t_k = 3.0 * r.powi(-4) / (1.0 / r).ln();
        radii.push(r);
        heights.push(t_k);
        r_prev = r;
    }
    if radii.len() < 2 {
        return Err(BuildError::InvalidParameters {
            condition: "fewer than two admissible bumps within f64 range".into(),
        });
    }
    let disks: Vec<DiskBump> = radii
        .iter()
        .zip(heights.iter())
        .map(|(&r, &h)| DiskBump { center_x: 2.0 * r, radius: r * r, height: h })
        .collect();
    Ok(NamedConstruction {
        id: format!("llogl_sharpness({})", psi.name()),
        potential: Potential::disk_bumps(disks),
        claims: vec![
            Claim::DisksDisjoint,
            Claim::SharpnessIntegralsFinite,
            Claim::NegativeRayleigh,
        ],
        meta: ConstructionMeta {
            s_junctions: vec![],
            betas: vec![],
            k0: None,
            radii,
            heights,
        },
    })
}

pub fn build_sharpness_default() -> Result<NamedConstruction, BuildError> {
    build_sharpness(&NFunction::sqrt_log())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_llogl_itself() {
        let err = build_sharpness(&NFunction::llogl_b()).unwrap_err();
        assert!(matches!(err, BuildError::InvalidParameters { .. }));
    }

    #[test]
    fn default_family_has_shrinking_disjoint_radii() {
        let c = build_sharpness_default().unwrap();
        let r = &c.meta.radii;
        assert!(r.len() >= 2, "got {} bumps", r.len());
        for w in r.windows(2) {
            assert!(w[1] < w[0] / 3.0);
        }
        // heights exceed 1/r_k
        for (rk, hk) in r.iter().zip(c.meta.heights.iter()) {
            assert!(hk > &(1.0 / rk));
        }
    }
}
