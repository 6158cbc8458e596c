//! The implication partial order between the estimates and the consistency
//! check run by `compare`: along an edge `X ⟹ Y` (the right-hand side of X
//! is dominated by a constant multiple of that of Y), X may not be infinite
//! while Y is finite.

use super::estimate::{evaluate, BoundReport, EstimateId, EvalParams};
use crate::potentials::Potential;
use crate::report::Verdict;
use thiserror::Error;

/// Directed edges `X ⟹ Y`: X is the stronger estimate.
pub const IMPLICATIONS: [(EstimateId, EstimateId); 16] = [
    (EstimateId::Lns, EstimateId::Lns2),
    (EstimateId::Lns2, EstimateId::Lns5),
    (EstimateId::Lns5, EstimateId::Lns2),
    (EstimateId::Lns2, EstimateId::Lns3),
    (EstimateId::Lns3, EstimateId::Lns4),
    (EstimateId::Lns4, EstimateId::Lns3),
    (EstimateId::Lns, EstimateId::GrigTalk),
    (EstimateId::Laptev, EstimateId::GrigTalk),
    (EstimateId::Lns2, EstimateId::Sol),
    (EstimateId::GrigTalk, EstimateId::Sol),
    (EstimateId::GrigTalk, EstimateId::GrigNad),
    (EstimateId::Sol, EstimateId::ClClr),
    (EstimateId::ClClr, EstimateId::KmwMy),
    (EstimateId::KmwMy, EstimateId::ClClr),
    (EstimateId::KmwMy, EstimateId::Kmw),
    (EstimateId::Kmw, EstimateId::KmwMy),
];

#[derive(Debug, Error)]
#[error("implication diagram violated: {stronger:?} is infinite while {weaker:?} is finite")]
pub struct InconsistentVerdict {
    pub stronger: EstimateId,
    pub weaker: EstimateId,
}

pub struct Comparison {
    pub reports: Vec<BoundReport>,
}

impl Comparison {
    pub fn verdict(&self, id: EstimateId) -> Option<Verdict> {
        self.reports.iter().find(|r| r.id == id).map(|r| r.verdict())
    }

    /// Check every diagram edge among the evaluated estimates.
    pub fn check_consistency(&self) -> Result<(), InconsistentVerdict> {
        for (x, y) in IMPLICATIONS {
            if let (Some(vx), Some(vy)) = (self.verdict(x), self.verdict(y)) {
                if vx == Verdict::Infinite && vy == Verdict::Finite {
                    return Err(InconsistentVerdict { stronger: x, weaker: y });
                }
            }
        }
        Ok(())
    }
}

/// Evaluate the requested estimates and their diagram consistency.
pub fn compare(pot: &Potential, ids: &[EstimateId], params: &EvalParams) -> Comparison {
    let reports = ids.iter().map(|id| evaluate(pot, *id, params)).collect();
    Comparison { reports }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_potential_all_finite_and_consistent() {
        let v = Potential::zero();
        let cmp = compare(&v, &EstimateId::ALL, &EvalParams::default());
        for r in &cmp.reports {
            assert_eq!(r.verdict(), Verdict::Finite, "{:?}: {:?}", r.id, r.value);
        }
        cmp.check_consistency().unwrap();
        // the numeric parts of the upper estimates are all exactly 1
        for r in &cmp.reports {
            if r.id == EstimateId::LowerTenPi {
                assert_eq!(r.value.value, Some(0.0));
            } else {
                assert_eq!(r.value.value, Some(1.0), "{:?}", r.id);
            }
        }
    }
}
