//! The named separating potentials of the comparison corpus.

use super::{Claim, ConstructionMeta, IngredientId, NamedConstruction};
use crate::bounds::EstimateId;
use crate::potentials::{
    AngularFactor, Expr, Potential, PowerLog, RadialPiece,
};
use crate::report::Verdict;

fn r() -> Expr {
    Expr::Var
}

fn c(v: f64) -> Expr {
    Expr::Const(v)
}

/// `V = 1/(2π|x|²ln²|x|·lnln|x|)` for `|x| ≥ e²`: the weak-ℓ¹/sum separator.
pub fn log3() -> NamedConstruction {
    let e2 = std::f64::consts::E * std::f64::consts::E;
    let expr = c(1.0).div(
        c(2.0 * std::f64::consts::PI)
            .mul(r().pow(2.0))
            .mul(r().ln().pow(2.0))
            .mul(r().ln().ln()),
    );
    let pot = Potential::radial(vec![RadialPiece::new(e2, f64::INFINITY, expr).with_hi_behavior(
        PowerLog::new(1.0 / (2.0 * std::f64::consts::PI), -2.0, -2.0, -1.0),
    )])
    .mark_nonincreasing();
    NamedConstruction {
        id: "log3".into(),
        potential: pot,
        claims: vec![
            Claim::EstimateVerdict { id: EstimateId::Sol, expected: Verdict::Finite },
            Claim::EstimateVerdict { id: EstimateId::ClClr, expected: Verdict::Infinite },
            Claim::IngredientVerdict { which: IngredientId::WeakL1BoldA, expected: Verdict::Finite },
            Claim::BoldAFormula { n_lo: 2, n_hi: 8 },
        ],
        meta: ConstructionMeta::default(),
    }
}

/// `V = 1/|x|²` for `|x| ≥ e`: infinite average-norm sum, finite plain sum.
pub fn inverse_square() -> NamedConstruction {
    let pot = Potential::radial(vec![RadialPiece::new(
        std::f64::consts::E,
        f64::INFINITY,
        c(1.0).div(r().pow(2.0)),
    )
    .with_hi_behavior(PowerLog::new(1.0, -2.0, 0.0, 0.0))])
    .mark_nonincreasing();
    NamedConstruction {
        id: "inverse_square".into(),
        potential: pot,
        claims: vec![
            Claim::IngredientVerdict { which: IngredientId::ScriptBSum, expected: Verdict::Infinite },
            Claim::IngredientVerdict { which: IngredientId::PlainBSum, expected: Verdict::Finite },
        ],
        meta: ConstructionMeta::default(),
    }
}

/// `V = 1/(|x| ln|x|)` for `|x| ≥ e`: infinite plain sum, finite global norm.
pub fn inverse_rlogr() -> NamedConstruction {
    let pot = Potential::radial(vec![RadialPiece::new(
        std::f64::consts::E,
        f64::INFINITY,
        c(1.0).div(r().mul(r().ln())),
    )
    .with_hi_behavior(PowerLog::new(1.0, -1.0, -1.0, 0.0))])
    .mark_nonincreasing();
    NamedConstruction {
        id: "inverse_rlogr".into(),
        potential: pot,
        claims: vec![
            Claim::IngredientVerdict { which: IngredientId::PlainBSum, expected: Verdict::Infinite },
            Claim::IngredientVerdict { which: IngredientId::GlobalNorm, expected: Verdict::Finite },
        ],
        meta: ConstructionMeta::default(),
    }
}

/// `V = α/(|x|²(1+ln²|x|))`, small `α`: the `L_p`-form right-hand side is
/// exactly 1 while the weak-ℓ¹ functional blows up.
pub fn grig_radial(alpha: f64) -> NamedConstruction {
    let expr = c(alpha).div(r().pow(2.0).mul(c(1.0).add(r().ln().pow(2.0))));
    let pot = Potential::radial(vec![RadialPiece::new(1.0, f64::INFINITY, expr)
        .with_hi_behavior(PowerLog::new(alpha, -2.0, -2.0, 0.0))]);
    NamedConstruction {
        id: "grig_radial".into(),
        potential: pot,
        claims: vec![
            Claim::EstimateNumericallyOne { id: EstimateId::GrigNad },
            Claim::IngredientVerdict { which: IngredientId::WeakL1A, expected: Verdict::Infinite },
            Claim::EstimateVerdict { id: EstimateId::Lns2, expected: Verdict::Infinite },
            Claim::EstimateVerdict { id: EstimateId::GrigNad, expected: Verdict::Finite },
        ],
        meta: ConstructionMeta::default(),
    }
}

/// `V₁(r) = 1/((r-1)(1+ln²(r-1)))` on `[1, e]`, `V₂ ≡ 1`:
/// in `L¹` but not in `L log L`.
pub fn boundary_blowup_l1() -> NamedConstruction {
    let expr = c(1.0).div(
        r().sub(c(1.0))
            .mul(c(1.0).add(r().sub(c(1.0)).ln().pow(2.0))),
    );
    let pot = Potential::radial(vec![RadialPiece::new(1.0, std::f64::consts::E, expr)
        .with_lo_behavior(PowerLog::new(1.0, -1.0, -2.0, 0.0))]);
    NamedConstruction {
        id: "boundary_blowup_L1".into(),
        potential: pot,
        claims: vec![
            Claim::EstimateVerdict { id: EstimateId::Laptev, expected: Verdict::Infinite },
            Claim::EstimateVerdict { id: EstimateId::Lns4, expected: Verdict::Finite },
        ],
        meta: ConstructionMeta::default(),
    }
}

/// `V₁(r) = 1/((r-1)(1+|ln(r-1)|³))` on `[1, e]`:
/// in `L log L` but in no `L_p`, `p > 1`.
pub fn boundary_blowup_lb() -> NamedConstruction {
    let expr = c(1.0).div(
        r().sub(c(1.0))
            .mul(c(1.0).add(r().sub(c(1.0)).ln().abs().pow(3.0))),
    );
    let pot = Potential::radial(vec![RadialPiece::new(1.0, std::f64::consts::E, expr)
        .with_lo_behavior(PowerLog::new(1.0, -1.0, -3.0, 0.0))]);
    NamedConstruction {
        id: "boundary_blowup_LB".into(),
        potential: pot,
        claims: vec![
            Claim::EstimateVerdict { id: EstimateId::GrigNad, expected: Verdict::Infinite },
            Claim::EstimateVerdict { id: EstimateId::ClClr, expected: Verdict::Finite },
        ],
        meta: ConstructionMeta::default(),
    }
}

/// `V₁ ≡ 1` on `[1, e]`, `V₂(θ) = 1/(|θ|(1+ln²|θ|))`:
/// integrable angle, not in `L log L` over the circle.
pub fn angular_l1() -> NamedConstruction {
    let ang = c(1.0).div(
        r().abs().mul(c(1.0).add(r().abs().ln().pow(2.0))),
    );
    let pot = Potential::separable(
        vec![RadialPiece::new(1.0, std::f64::consts::E, c(1.0))],
        AngularFactor::new(ang, Some(PowerLog::new(1.0, -1.0, -2.0, 0.0))),
    );
    NamedConstruction {
        id: "angular_L1".into(),
        potential: pot,
        claims: vec![
            Claim::EstimateVerdict { id: EstimateId::Lns, expected: Verdict::Infinite },
            Claim::EstimateVerdict { id: EstimateId::Laptev, expected: Verdict::Finite },
        ],
        meta: ConstructionMeta::default(),
    }
}

/// `V₁ ≡ 1` on `[1, e]`, `V₂(θ) = 1/(|θ|(1+|ln|θ||³))`:
/// in `L log L` over the circle, in no `L_p`.
pub fn angular_lb() -> NamedConstruction {
    let ang = c(1.0).div(
        r().abs().mul(c(1.0).add(r().abs().ln().abs().pow(3.0))),
    );
    let pot = Potential::separable(
        vec![RadialPiece::new(1.0, std::f64::consts::E, c(1.0))],
        AngularFactor::new(ang, Some(PowerLog::new(1.0, -1.0, -3.0, 0.0))),
    );
    NamedConstruction {
        id: "angular_LB".into(),
        potential: pot,
        claims: vec![
            Claim::EstimateVerdict { id: EstimateId::Lns3, expected: Verdict::Infinite },
            Claim::EstimateVerdict { id: EstimateId::ClClr, expected: Verdict::Finite },
        ],
        meta: ConstructionMeta::default(),
    }
}
