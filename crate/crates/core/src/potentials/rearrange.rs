//! Nonincreasing spherical rearrangement via layer-cake inversion of the
//! distribution function `m(s) = |{V > s}|`.

use super::potential::{Potential, PotentialError, PotentialForm, RadialPiece};
use crate::numerics::bisect_root;

/// The rearranged profile `V_*`: nonincreasing, right-continuous, with
/// `|{V_*(|x|) > s}| = |{V > s}|` for all `s > 0`.
pub struct RadialProfile {
    kind: ProfileKind,
}

enum ProfileKind {
    /// Radial nonincreasing input: the profile is the input itself.
    Identity(Vec<RadialPiece>),
    /// Step profile from finitely many constant regions `(area, height)`,
    /// sorted by height descending.
    Steps(Vec<(f64, f64)>),
    /// General layer-cake inversion through the distribution function.
    LayerCake(DistFn),
}

pub struct DistFn {
    pieces: Vec<MonotoneSeg>,
    sup_v: f64,
}

/// A radius interval on which `V` is monotone (sampled classification).
struct MonotoneSeg {
    r_lo: f64,
    r_hi: f64,
    v_lo: f64,
    v_hi: f64,
    expr: super::expr::Expr,
}

impl RadialProfile {
    pub fn eval(&self, r: f64) -> f64 {
        match &self.kind {
            ProfileKind::Identity(pieces) => {
                for p in pieces {
                    if r >= p.lo && r < p.hi {
                        return p.eval(r);
                    }
                }
                0.0
            }
            ProfileKind::Steps(steps) => {
                let area = std::f64::consts::PI * r * r;
                let mut acc = 0.0;
                for (a, h) in steps {
                    acc += a;
                    if area < acc {
                        return *h;
                    }
                }
                0.0
            }
            ProfileKind::LayerCake(dist) => {
                // V_*(r) = sup{ s : m(s) > πr² }
                let target = std::f64::consts::PI * r * r;
                if dist.measure_above(0.0) <= target {
                    return 0.0;
                }
                let mut hi = dist.sup_v;
                if !hi.is_finite() {
                    hi = 1.0;
                    while dist.measure_above(hi) > target && hi < 1e280 {
                        hi *= 8.0;
                    }
                }
                bisect_root(|s| dist.measure_above(s) - target, 0.0, hi, 1e-12)
            }
        }
    }

    /// `∫_0^∞ F(V_*(r))·w(r)·2πr dr` for the layer-cake check.
    pub fn integral_of(&self, f: impl Fn(f64) -> f64 + Copy) -> f64 {
        match &self.kind {
            ProfileKind::Steps(steps) => {
                let mut acc = 0.0;
                for (a, h) in steps {
                    acc += a * f(*h);
                }
                acc
            }
            _ => {
                let mut r_max = 1.0;
                while self.eval(r_max) > 0.0 && r_max < 1e12 {
                    r_max *= 2.0;
                }
                crate::orlicz::integrate_radial(
                    |r| f(self.eval(r)),
                    0.0,
                    r_max,
                    1e-9,
                    1e-11,
                ) * 2.0
                    * std::f64::consts::PI
            }
        }
    }
}

impl DistFn {
    /// `m(s) = |{V > s}|`.
    pub fn measure_above(&self, s: f64) -> f64 {
        let mut area = 0.0;
        for seg in &self.pieces {
            let (lo, hi) = (seg.v_lo.min(seg.v_hi), seg.v_lo.max(seg.v_hi));
            if s >= hi {
                continue;
            }
            if s < lo {
                area += std::f64::consts::PI * (seg.r_hi * seg.r_hi - seg.r_lo * seg.r_lo);
                continue;
            }
            // crossing radius on the monotone segment
            let expr = &seg.expr;
            let cross = bisect_root(|r| expr.eval(r) - s, seg.r_lo, seg.r_hi, 1e-13);
            let (a, b) = if seg.v_lo > seg.v_hi {
                (seg.r_lo, cross) // decreasing: {V > s} = [r_lo, cross)
            } else {
                (cross, seg.r_hi)
            };
            area += std::f64::consts::PI * (b * b - a * a);
        }
        area
    }
}

/// Compute the rearrangement. `UnboundedLevelSet` is reported when some
/// level set has infinite measure (potential not decaying at infinity).
pub fn rearrange(v: &Potential) -> Result<RadialProfile, PotentialError> {
    match &v.form {
        PotentialForm::Radial(pieces) if v.nonincreasing => {
            Ok(RadialProfile { kind: ProfileKind::Identity(pieces.clone()) })
        }
        PotentialForm::DiskBumps(disks) => {
            let mut steps: Vec<(f64, f64)> = disks
                .iter()
                .map(|d| (std::f64::consts::PI * d.radius * d.radius, d.height))
                .collect();
            steps.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
            Ok(RadialProfile { kind: ProfileKind::Steps(steps) })
        }
        PotentialForm::Radial(pieces) => {
            // split every piece into sampled monotone segments
            let mut segs = Vec::new();
            let mut sup_v = 0.0f64;
            for p in pieces {
                if p.hi.is_infinite() {
                    // decaying tail: level sets stay bounded only if V → 0
                    let model = p.hi_behavior.ok_or(PotentialError::MissingDecayClass(p.lo))?;
                    if model.pow_u >= 0.0 {
                        return Err(PotentialError::UnboundedLevelSet(0.0));
                    }
                }
                let hi = if p.hi.is_finite() { p.hi } else { p.lo.max(1.0) * 1e8 };
                let n = 512;
                let mut prev_r = p.lo.max(p.lo + (hi - p.lo) * 1e-12);
                let mut prev_v = p.eval(prev_r);
                let mut seg_start = (prev_r, prev_v);
                let mut dir: Option<bool> = None;
                for i in 1..=n {
                    let r = p.lo + (hi - p.lo) * i as f64 / n as f64;
                    let val = p.eval(r);
                    sup_v = sup_v.max(if val.is_finite() { val } else { 0.0 });
                    let up = val > prev_v;
                    if let Some(d) = dir {
                        if up != d && (val - prev_v).abs() > 1e-14 * (1.0 + val.abs()) {
                            segs.push(MonotoneSeg {
                                r_lo: seg_start.0,
                                r_hi: prev_r,
                                v_lo: seg_start.1,
                                v_hi: prev_v,
                                expr: p.expr.clone(),
                            });
                            seg_start = (prev_r, prev_v);
                            dir = Some(up);
                        }
                    } else if (val - prev_v).abs() > 1e-14 * (1.0 + val.abs()) {
                        dir = Some(up);
                    }
                    prev_r = r;
                    prev_v = val;
                }
                segs.push(MonotoneSeg {
                    r_lo: seg_start.0,
                    r_hi: prev_r,
                    v_lo: seg_start.1,
                    v_hi: prev_v,
                    expr: p.expr.clone(),
                });
            }
            let sup = if pieces.iter().any(|p| p.lo_behavior.map(|m| m.pow_u < 0.0).unwrap_or(false))
            {
                f64::INFINITY
            } else {
                sup_v
            };
            Ok(RadialProfile { kind: ProfileKind::LayerCake(DistFn { pieces: segs, sup_v: sup }) })
        }
        _ => Err(PotentialError::Unsupported(
            "rearrangement is implemented for radial and disk-bump forms".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::expr::Expr;

    #[test]
    fn annulus_indicator_rearranges_to_disk() {
        // V = c on a < |x| < b → V_* = c on r < √(b²-a²)
        let (a, b, c) = (1.0f64, 3.0f64, 2.5f64);
        let v = Potential::radial(vec![RadialPiece::new(a, b, Expr::Const(c))]);
        let prof = rearrange(&v).unwrap();
        let r_star = (b * b - a * a).sqrt();
        assert!((prof.eval(0.5 * r_star) - c).abs() < 1e-9);
        assert!((prof.eval(0.999 * r_star) - c).abs() < 1e-9);
        assert!(prof.eval(1.001 * r_star).abs() < 1e-9);
    }

    #[test]
    fn nonincreasing_identity() {
        let v = Potential::radial(vec![RadialPiece::new(
            1.0,
            10.0,
            Expr::Const(1.0).div(Expr::Var.pow(2.0)),
        )])
        .mark_nonincreasing();
        let prof = rearrange(&v).unwrap();
        assert!((prof.eval(2.0) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn chebyshev_bound() {
        // V_*(r) ≤ ∫V / (π r²)
        let v = Potential::radial(vec![RadialPiece::new(0.5, 4.0, Expr::Var.ln().abs())]);
        let prof = rearrange(&v).unwrap();
        let mass = crate::potentials::weighted_integral(&v, crate::potentials::Weight::One)
            .expect_finite();
        for i in 1..=100 {
            let r = 0.05 * i as f64;
            let bound = mass / (std::f64::consts::PI * r * r);
            assert!(prof.eval(r) <= bound * (1.0 + 1e-6) + 1e-12, "r = {r}");
        }
    }

    #[test]
    fn equimeasurable_mass() {
        let v = Potential::radial(vec![
            RadialPiece::new(0.0, 1.0, Expr::Const(3.0)),
            RadialPiece::new(2.0, 3.0, Expr::Const(1.0)),
        ]);
        let prof = rearrange(&v).unwrap();
        let mass_v = crate::potentials::weighted_integral(&v, crate::potentials::Weight::One)
            .expect_finite();
        let mass_star = prof.integral_of(|s| s);
        assert!((mass_v - mass_star).abs() < 1e-6 * mass_v, "{mass_v} vs {mass_star}");
    }
}
