//! Claim verification: run the counting, profile and bound machinery
//! against every assertion a construction carries.

use super::{Claim, IngredientId, NamedConstruction};
use crate::bounds::{evaluate, global_llogl_norm, EvalParams};
use crate::orlicz::NFunction;
use crate::partition::{auto_range, profile, sum, weak_l1, SequenceId};
use crate::partition::profile::TailClass;
use crate::potentials::{weighted_integral, PotentialForm, Weight};
use crate::report::Verdict;
use crate::spectral1d::{
    pruefer_count, radial_eigencount, Count, LeftBc, RightBc, Segment, SturmProblem,
};

#[derive(Clone, Copy, Debug)]
pub struct VerifyBudget {
    /// Oscillation tolerance for the phase integrator.
    pub tol: f64,
    /// Number of divergence-evidence cutoffs.
    pub cutoffs: usize,
}

impl Default for VerifyBudget {
    fn default() -> Self {
        VerifyBudget { tol: 1e-11, cutoffs: 3 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ClaimOutcome {
    Pass,
    Fail(String),
    Inconclusive(String),
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub outcomes: Vec<(String, ClaimOutcome)>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|(_, o)| matches!(o, ClaimOutcome::Pass))
    }
}

pub fn verify_claims(c: &NamedConstruction, budget: &VerifyBudget) -> VerifyReport {
    let outcomes = c
        .claims
        .iter()
        .map(|claim| (format!("{claim:?}"), verify_one(c, claim, budget)))
        .collect();
    VerifyReport { outcomes }
}

fn count_at(c: &NamedConstruction, coupling: f64, budget: &VerifyBudget) -> Result<Count, String> {
    let red = c
        .potential
        .radial_reduction(coupling)
        .map_err(|e| format!("reduction failed: {e}"))?;
    Ok(radial_eigencount(&red, coupling, budget.tol).count)
}

fn verify_one(c: &NamedConstruction, claim: &Claim, budget: &VerifyBudget) -> ClaimOutcome {
    match claim {
        Claim::RadialCountAt { coupling, expected } => match count_at(c, *coupling, budget) {
            Ok(Count::Exact(n)) if n == *expected => ClaimOutcome::Pass,
            Ok(other) => ClaimOutcome::Fail(format!("expected {expected}, got {other:?}")),
            Err(e) => ClaimOutcome::Inconclusive(e),
        },
        Claim::SuccessiveCountDiffs { couplings, diff } => {
            let mut prev: Option<u64> = None;
            for &alpha in couplings {
                match count_at(c, alpha, budget) {
                    Ok(Count::Exact(n)) => {
                        if let Some(p) = prev {
                            if n != p + diff {
                                return ClaimOutcome::Fail(format!(
                                    "count at {alpha} is {n}, previous {p}, expected step {diff}"
                                ));
                            }
                        }
                        prev = Some(n);
                    }
                    Ok(other) => {
                        return ClaimOutcome::Inconclusive(format!(
                            "count at {alpha} not exact: {other:?}"
                        ))
                    }
                    Err(e) => return ClaimOutcome::Inconclusive(e),
                }
            }
            ClaimOutcome::Pass
        }
        Claim::SuccessiveCountGaps { couplings, min_gaps } => {
            let mut prev: Option<u64> = None;
            for (i, &alpha) in couplings.iter().enumerate() {
                match count_at(c, alpha, budget) {
                    Ok(count) => {
                        let n = count.lower();
                        if let Some(p) = prev {
                            let need = min_gaps.get(i - 1).copied().unwrap_or(0);
                            if n < p + need {
                                return ClaimOutcome::Fail(format!(
                                    "count at {alpha} is {n}, previous {p}, needed gap ≥ {need}"
                                ));
                            }
                        }
                        prev = Some(n);
                    }
                    Err(e) => return ClaimOutcome::Inconclusive(e),
                }
            }
            ClaimOutcome::Pass
        }
        Claim::DivergenceEvidence { coupling, past } => {
            divergence_evidence(c, *coupling, *past, budget)
        }
        Claim::StaircaseZeros { coupling, upto, expected } => {
            staircase_zeros(c, *coupling, *upto, *expected, budget)
        }
        Claim::EstimateVerdict { id, expected } => {
            let rep = evaluate(&c.potential, *id, &EvalParams::default());
            if rep.verdict() == *expected {
                ClaimOutcome::Pass
            } else {
                ClaimOutcome::Fail(format!(
                    "expected {:?}, got {:?} ({:?})",
                    expected,
                    rep.verdict(),
                    rep.value.note
                ))
            }
        }
        Claim::EstimateNumericallyOne { id } => {
            let rep = evaluate(&c.potential, *id, &EvalParams::default());
            match rep.value.value {
                Some(v) if (v - 1.0).abs() < 1e-9 && rep.verdict() == Verdict::Finite => {
                    ClaimOutcome::Pass
                }
                other => ClaimOutcome::Fail(format!("numeric part {other:?}")),
            }
        }
        Claim::IngredientVerdict { which, expected } => {
            let q = ingredient(c, *which);
            if q == *expected {
                ClaimOutcome::Pass
            } else {
                ClaimOutcome::Fail(format!("expected {expected:?}, got {q:?}"))
            }
        }
        Claim::BoldAFormula { n_lo, n_hi } => {
            let prof = profile(&c.potential, SequenceId::BoldA, (*n_lo, *n_hi));
            for (n, q) in &prof.entries {
                if *n < 2 {
                    continue;
                }
                let expect = (1.0 + 1.0 / (*n as f64 - 1.0)).ln();
                match q.value {
                    Some(v) if (v - expect).abs() <= 1e-7 * (1.0 + expect) => {}
                    other => {
                        return ClaimOutcome::Fail(format!(
                            "ring {n}: got {other:?}, expected {expect}"
                        ))
                    }
                }
            }
            ClaimOutcome::Pass
        }
        Claim::SharpnessIntegralsFinite => sharpness_integrals(c),
        Claim::NegativeRayleigh => negative_rayleigh(c),
        Claim::DisksDisjoint => disks_disjoint(c),
        Claim::StaircasePhaseBrackets => staircase_brackets(c),
    }
}

fn ingredient(c: &NamedConstruction, which: IngredientId) -> Verdict {
    match which {
        IngredientId::ScriptBSum => {
            let r = auto_range(&c.potential, SequenceId::ScriptB);
            let prof = profile(&c.potential, SequenceId::ScriptB, (1.max(r.0), r.1));
            sum(&prof).verdict
        }
        IngredientId::PlainBSum => {
            let r = auto_range(&c.potential, SequenceId::PlainB);
            let prof = profile(&c.potential, SequenceId::PlainB, (1.max(r.0), r.1));
            sum(&prof).verdict
        }
        IngredientId::GlobalNorm => global_llogl_norm(&c.potential).verdict,
        IngredientId::WeakL1A => {
            let r = auto_range(&c.potential, SequenceId::A);
            weak_l1(&profile(&c.potential, SequenceId::A, r)).verdict
        }
        IngredientId::WeakL1BoldA => {
            let r = auto_range(&c.potential, SequenceId::BoldA);
            let mut prof = profile(&c.potential, SequenceId::BoldA, (1.max(r.0), r.1));
            prof.tail_below = TailClass::Zero;
            weak_l1(&prof).verdict
        }
    }
}

/// Dirichlet counts on `(a₁, T_j)` for a doubling sequence of `s`-cutoffs:
/// must strictly increase and exceed the target.
fn divergence_evidence(
    c: &NamedConstruction,
    coupling: f64,
    past: u64,
    budget: &VerifyBudget,
) -> ClaimOutcome {
    let plats = match &c.potential.form {
        PotentialForm::LogPlateaus(p) => p.clone(),
        _ => return ClaimOutcome::Inconclusive("divergence evidence needs a staircase".into()),
    };
    let s1 = c.meta.s_junctions.first().copied().unwrap_or(0.0);
    let s_last = c.meta.s_junctions.last().copied().unwrap_or(1.0);
    // the oscillatory tail advances phase √(αq - 1/4) per unit s; size the
    // first cutoff to pass the target, then double
    let q_tail = plats.last().map(|p| p.q).unwrap_or(0.25);
    let rate = (coupling * q_tail - 0.25).max(1e-6).sqrt();
    let span0 = (past as f64 + 2.0) * std::f64::consts::PI / rate;
    let mut counts = Vec::new();
    for j in 0..budget.cutoffs {
        let cutoff = s_last + span0 * 2f64.powi(j as i32);
        let mut segs = Vec::new();
        for p in &plats {
            let hi = p.s_hi.min(cutoff);
            if hi <= p.s_lo {
                continue;
            }
            let q = p.q;
            segs.push(Segment::log_t(p.s_lo, hi, move |_| q));
        }
        let problem = SturmProblem { segments: segs, left: LeftBc::Dirichlet, right: RightBc::Dirichlet };
        match pruefer_count(&problem, coupling, budget.tol) {
            Count::Exact(n) => counts.push(n),
            other => {
                return ClaimOutcome::Inconclusive(format!(
                    "cutoff count not exact: {other:?}"
                ))
            }
        }
        let _ = s1;
    }
    let strictly_up = counts.windows(2).all(|w| w[1] > w[0]);
    let passes = counts.last().map(|&n| n > past).unwrap_or(false)
        && counts.first().map(|&n| n > past).unwrap_or(false);
    if strictly_up && passes {
        ClaimOutcome::Pass
    } else {
        ClaimOutcome::Fail(format!(
            "cutoff counts {counts:?} (need strictly increasing, all beyond {past})"
        ))
    }
}

fn staircase_zeros(
    c: &NamedConstruction,
    coupling: f64,
    upto: usize,
    expected: u64,
    budget: &VerifyBudget,
) -> ClaimOutcome {
    let plats = match &c.potential.form {
        PotentialForm::LogPlateaus(p) => p.clone(),
        _ => return ClaimOutcome::Inconclusive("needs a staircase".into()),
    };
    if c.meta.s_junctions.len() < upto + 1 {
        return ClaimOutcome::Inconclusive("not enough junctions".into());
    }
    let s_end = c.meta.s_junctions[upto];
    let mut segs = Vec::new();
    for p in &plats {
        let hi = p.s_hi.min(s_end);
        if hi <= p.s_lo {
            continue;
        }
        let q = p.q;
        segs.push(Segment::log_t(p.s_lo, hi, move |_| q));
    }
    let problem = SturmProblem { segments: segs, left: LeftBc::Dirichlet, right: RightBc::Dirichlet };
    match pruefer_count(&problem, coupling, budget.tol) {
        Count::Exact(n) if n == expected => ClaimOutcome::Pass,
        other => ClaimOutcome::Fail(format!("expected {expected} interior zeros, got {other:?}")),
    }
}

fn sharpness_integrals(c: &NamedConstruction) -> ClaimOutcome {
    let psi = NFunction::<f64>::sqrt_log();
    let disks = match &c.potential.form {
        PotentialForm::DiskBumps(d) => d,
        _ => return ClaimOutcome::Inconclusive("needs disk bumps".into()),
    };
    // ∫Ψ(V) = Σ π r_k⁴ Ψ(t_k) — exact over the family
    let psi_mass: f64 = disks
        .iter()
        .map(|d| std::f64::consts::PI * d.radius * d.radius * psi.eval(d.height))
        .sum();
    if !psi_mass.is_finite() {
        return ClaimOutcome::Fail("Ψ-mass overflowed".into());
    }
    // the γ-levels certify the continuation: γ(1/r_k) ≤ 2^{-k} by choice
    for (k, r) in c.meta.radii.iter().enumerate() {
        let g = super::llogl::gamma_ratio(&psi, 1.0 / r);
        if g > 2f64.powi(-(k as i32 + 1)) * 1.0001 {
            return ClaimOutcome::Fail(format!("γ(1/r_{k}) = {g:.3e} too large"));
        }
    }
    let w_mass = weighted_integral(&c.potential, Weight::Log2p);
    if !w_mass.is_finite() {
        return ClaimOutcome::Fail("weighted mass not finite".into());
    }
    ClaimOutcome::Pass
}

fn negative_rayleigh(c: &NamedConstruction) -> ClaimOutcome {
    // test function around each bump: 1 on the bump, log cutoff out to the
    // guard radius: kinetic term 2π/ln(1/r_k), potential term ≥ 3π/ln(1/r_k)
    for (k, (&r, &h)) in c.meta.radii.iter().zip(c.meta.heights.iter()).enumerate() {
        let ell = (1.0 / r).ln();
        let kinetic = 2.0 * std::f64::consts::PI / ell;
        let potential = std::f64::consts::PI * r.powi(4) * h;
        if !(potential > kinetic) {
            return ClaimOutcome::Fail(format!(
                "bump {k}: form value {} not negative",
                kinetic - potential
            ));
        }
        // cross-check the closed forms by quadrature on the first bumps
        if k < 2 {
            let grad = crate::numerics::integrate(
                |rho: f64| rho / (rho * ell).powi(2) * (rho * rho),
                0.0,
                1.0,
                1e-10,
                1e-12,
            );
            let _ = grad;
            let quad = crate::numerics::integrate(
                move |rho: f64| 2.0 * std::f64::consts::PI / (rho * ell * ell),
                r * r,
                r,
                1e-10,
                1e-12,
            )
            .value;
            if (quad - kinetic).abs() > 1e-6 * kinetic {
                return ClaimOutcome::Fail(format!(
                    "bump {k}: kinetic quadrature {quad} vs closed form {kinetic}"
                ));
            }
        }
    }
    ClaimOutcome::Pass
}

fn disks_disjoint(c: &NamedConstruction) -> ClaimOutcome {
    let r = &c.meta.radii;
    for w in r.windows(2) {
        if !(w[1] < w[0] / 3.0) {
            return ClaimOutcome::Fail("radius ratio above 1/3".into());
        }
    }
    // guard disks B(2r_k, r_k) pairwise disjoint: consecutive separation
    // |2r_k - 2r_{k+1}| > r_k + r_{k+1} follows from the ratio; verify
    for i in 0..r.len() {
        for j in i + 1..r.len() {
            let dist = (2.0 * r[i] - 2.0 * r[j]).abs();
            if !(dist > r[i] + r[j]) {
                return ClaimOutcome::Fail(format!("guard disks {i} and {j} overlap"));
            }
        }
    }
    ClaimOutcome::Pass
}

fn staircase_brackets(c: &NamedConstruction) -> ClaimOutcome {
    let betas = &c.meta.betas;
    let s = &c.meta.s_junctions;
    for k in 1..s.len() - 1 {
        for j in 1..=k {
            let mu = (betas[k] / (2.0 * (betas[j] + betas[j - 1])) - 0.25).max(0.0).sqrt();
            let prod = mu * (s[j] - s[j - 1]);
            let eps_j =
                8.0 * std::f64::consts::PI / 9.0 * (1.0 - betas[j]) / (betas[j] - betas[j - 1]);
            let hi = std::f64::consts::PI
                + 2.0 * std::f64::consts::PI * (1.0 - betas[j]) / (betas[j] - betas[j - 1]);
            if !(prod >= std::f64::consts::PI + eps_j - 1e-9 && prod < hi) {
                return ClaimOutcome::Fail(format!(
                    "k={k} j={j}: phase product {prod} outside (π+ε, π+2π(1-β)/(Δβ))"
                ));
            }
        }
    }
    ClaimOutcome::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build;

    #[test]
    fn sharpness_claims_pass() {
        let c = build("llogl_sharpness", &[]).unwrap();
        let rep = verify_claims(&c, &VerifyBudget::default());
        for (name, out) in &rep.outcomes {
            assert_eq!(*out, ClaimOutcome::Pass, "{name}: {out:?}");
        }
    }

    #[test]
    fn alpha1_i_small_count() {
        let c = build("alpha1_i", &[("N".into(), 1.0)]).unwrap();
        let red = c.potential.radial_reduction(0.999).unwrap();
        let res = radial_eigencount(&red, 0.999, 1e-11);
        assert_eq!(res.count, Count::Exact(1), "{:?}", res.count);
    }
}
