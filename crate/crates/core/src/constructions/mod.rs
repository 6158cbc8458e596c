//! Named generators for the example and counterexample potentials, with
//! their claimed properties attached as testable assertions.

pub mod alpha1;
pub mod llogl;
pub mod section8;
pub mod verify;

use crate::bounds::EstimateId;
use crate::potentials::Potential;
use crate::report::Verdict;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BuildError {
    #[error("invalid parameters: {condition}")]
    InvalidParameters { condition: String },
    #[error("unknown construction `{0}`")]
    UnknownId(String),
}

/// Which sequence-level ingredient a verdict claim refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IngredientId {
    /// `Σ_{n ≥ 1} 𝓑_n` (average ring norms).
    ScriptBSum,
    /// `Σ_{n ≥ 1} ‖V‖_{ℬ,Ω_n}` (plain ring norms).
    PlainBSum,
    /// `‖V‖_{ℬ,ℝ²}`.
    GlobalNorm,
    /// `‖(A_n)‖_{1,∞}` over `n ∈ ℤ`.
    WeakL1A,
    /// `‖(𝐀_n)_{n ≥ 1}‖_{1,∞}`.
    WeakL1BoldA,
}

/// A machine-checkable assertion attached to a construction.
#[derive(Clone, Debug)]
pub enum Claim {
    /// Full radial eigencount at the coupling equals the integer.
    RadialCountAt { coupling: f64, expected: u64 },
    /// Successive counts at the listed couplings differ by exactly `diff`.
    SuccessiveCountDiffs { couplings: Vec<f64>, diff: u64 },
    /// Successive counts differ by at least the listed amounts.
    SuccessiveCountGaps { couplings: Vec<f64>, min_gaps: Vec<u64> },
    /// Dirichlet counts at growing cutoffs strictly increase past `past`.
    DivergenceEvidence { coupling: f64, past: u64 },
    /// Interior zero count of the Dirichlet zero-energy solution across
    /// the first `upto` staircase cells equals `expected`.
    StaircaseZeros { coupling: f64, upto: usize, expected: u64 },
    /// An estimate's right-hand side has the stated verdict.
    EstimateVerdict { id: EstimateId, expected: Verdict },
    /// The numeric part of an estimate equals 1 exactly (empty sums).
    EstimateNumericallyOne { id: EstimateId },
    /// An ingredient has the stated verdict.
    IngredientVerdict { which: IngredientId, expected: Verdict },
    /// `𝐀_n = ln(1 + 1/(n-1))` on the given range of `n ≥ 2`.
    BoldAFormula { n_lo: i64, n_hi: i64 },
    /// `∫Ψ(V) < ∞` and `∫V·W < ∞` for the sharpness family.
    SharpnessIntegralsFinite,
    /// The sharpness test functions have negative form values for all `k`.
    NegativeRayleigh,
    /// The sharpness disks are pairwise disjoint and inside the guard disk.
    DisksDisjoint,
    /// Staircase phase products lie in the proved window
    /// `(π + ε_j, π + 2π·(1-β_j)/(β_j-β_{j-1}))`.
    StaircasePhaseBrackets,
}

#[derive(Clone, Debug, Default)]
pub struct ConstructionMeta {
    /// `s_j = ln a_j` junction values for staircase constructions.
    pub s_junctions: Vec<f64>,
    /// Couplings `β_k` for staircase constructions.
    pub betas: Vec<f64>,
    /// Smallest valid window start for difference claims.
    pub k0: Option<usize>,
    /// Sharpness radii/heights.
    pub radii: Vec<f64>,
    pub heights: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct NamedConstruction {
    pub id: String,
    pub potential: Potential,
    pub claims: Vec<Claim>,
    pub meta: ConstructionMeta,
}

/// Build a construction by name; parameters `(key, value)` as the CLI
/// passes them.
pub fn build(id: &str, params: &[(String, f64)]) -> Result<NamedConstruction, BuildError> {
    let get = |k: &str| params.iter().find(|(n, _)| n == k).map(|(_, v)| *v);
    match id {
        "alpha1_i" => {
            let n = get("N").unwrap_or(1.0);
            if n < 1.0 || n.fract() != 0.0 {
                return Err(BuildError::InvalidParameters {
                    condition: "N must be a positive integer".into(),
                });
            }
            alpha1::build_alpha1_i(n as u64, get("s1").unwrap_or(0.0))
        }
        "alpha1_ii" => alpha1::build_alpha1_ii_default(),
        "alpha1_iii" => {
            if let Some(q) = get("q") {
                // α_k = 1 - q^{-k}: geometric approach to 1
                let alphas: Vec<f64> = (1..=14).map(|k| 1.0 - q.powi(-k)).collect();
                alpha1::build_alpha1_iii(&alphas)
            } else {
                alpha1::build_alpha1_iii_default()
            }
        }
        "llogl_sharpness" => llogl::build_sharpness_default(),
        "log3" => Ok(section8::log3()),
        "inverse_square" => Ok(section8::inverse_square()),
        "inverse_rlogr" => Ok(section8::inverse_rlogr()),
        "grig_radial" => Ok(section8::grig_radial(get("alpha").unwrap_or(0.005))),
        "boundary_blowup_L1" => Ok(section8::boundary_blowup_l1()),
        "boundary_blowup_LB" => Ok(section8::boundary_blowup_lb()),
        "angular_L1" => Ok(section8::angular_l1()),
        "angular_LB" => Ok(section8::angular_lb()),
        other => Err(BuildError::UnknownId(other.to_string())),
    }
}

/// All builtin construction names (for the CLI and round-trip tests).
pub const BUILTIN_IDS: [&str; 12] = [
    "alpha1_i",
    "alpha1_ii",
    "alpha1_iii",
    "llogl_sharpness",
    "log3",
    "inverse_square",
    "inverse_rlogr",
    "grig_radial",
    "boundary_blowup_L1",
    "boundary_blowup_LB",
    "angular_L1",
    "angular_LB",
];

pub use verify::{verify_claims, ClaimOutcome, VerifyBudget, VerifyReport};
