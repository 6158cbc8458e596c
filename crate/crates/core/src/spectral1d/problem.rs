//! Zero-energy oscillation problems assembled from coordinate segments.
//!
//! A problem describes `u'' + α·W(t)·u = 0` on an interval or the line.
//! Segments either live in the direct coordinate `t`, or — for potentials
//! of inverse-square type over enormous ranges — in `s = ln t`, where the
//! substitution `u(t) = t^{1/2} v(ln t)` turns `W(t) = q/t²` into the
//! constant-coefficient equation `v'' + (α·q - 1/4) v = 0`.

use std::sync::Arc;

pub type PotFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum SegmentKind {
    /// `u'' + (α·w(t))·u = 0` in the direct coordinate.
    Direct { w: PotFn },
    /// `v'' + (α·q(s) - 1/4)·v = 0` in `s = ln t`; `q(s) = t²·W(t)`.
    LogT { q: PotFn },
}

#[derive(Clone)]
pub struct Segment {
    pub kind: SegmentKind,
    pub lo: f64,
    pub hi: f64,
}

impl Segment {
    pub fn direct(lo: f64, hi: f64, w: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Segment { kind: SegmentKind::Direct { w: Arc::new(w) }, lo, hi }
    }

    pub fn log_t(s_lo: f64, s_hi: f64, q: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Segment { kind: SegmentKind::LogT { q: Arc::new(q) }, lo: s_lo, hi: s_hi }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LeftBc {
    /// `u = 0` at the left endpoint.
    Dirichlet,
    /// `u' = 0` at the left endpoint (principal continuation of a zero
    /// potential to the left; also the Neumann start for bracketing).
    Principal,
    /// Explicit state `(u, u')` in the first segment's own coordinate.
    State(f64, f64),
}

#[derive(Clone, Debug)]
pub enum RightBc {
    /// `u = 0` at the right endpoint; counts interior zeros.
    Dirichlet,
    /// Free endpoint; counts negative Neumann-type eigenvalues.
    Free,
    /// `W ≡ 0` on the rest of the line (direct coordinate).
    TailZero,
    /// `W = β/t²` exactly beyond the right endpoint (direct coordinate,
    /// endpoint > 0). `q = β` before coupling.
    TailInverseSquare { q: f64 },
    /// Constant `q` beyond the right endpoint of a log-coordinate segment.
    TailLogConstant { q: f64 },
    /// Beyond the right endpoint, `lo/t² ≤ W(t) ≤ hi/t²` eventually
    /// (caller-certified envelope). With coupling α: subcritical when
    /// `α·hi ≤ 1/4` (no further zeros once the solution expands),
    /// oscillatory when `α·lo > 1/4` (infinitely many zeros).
    TailInvSquareRange { lo: f64, hi: f64 },
}

#[derive(Clone)]
pub struct SturmProblem {
    pub segments: Vec<Segment>,
    pub left: LeftBc,
    pub right: RightBc,
}

/// Count of negative eigenvalues, possibly bracketed or certified infinite.
#[derive(Clone, Debug, PartialEq)]
pub enum Count {
    Exact(u64),
    Bracket { lo: u64, hi: u64 },
    Infinite { evidence: String },
}

impl Count {
    pub fn lower(&self) -> u64 {
        match self {
            Count::Exact(n) => *n,
            Count::Bracket { lo, .. } => *lo,
            Count::Infinite { .. } => u64::MAX,
        }
    }

    pub fn upper(&self) -> Option<u64> {
        match self {
            Count::Exact(n) => Some(*n),
            Count::Bracket { hi, .. } => Some(*hi),
            Count::Infinite { .. } => None,
        }
    }

    pub fn exact(&self) -> Option<u64> {
        match self {
            Count::Exact(n) => Some(*n),
            Count::Bracket { lo, hi } if lo == hi => Some(*lo),
            _ => None,
        }
    }

    pub fn add(&self, other: &Count) -> Count {
        match (self, other) {
            (Count::Infinite { evidence }, _) | (_, Count::Infinite { evidence }) => {
                Count::Infinite { evidence: evidence.clone() }
            }
            (a, b) => {
                let lo = a.lower().saturating_add(b.lower());
                let hi = a.upper().unwrap().saturating_add(b.upper().unwrap());
                if lo == hi {
                    Count::Exact(lo)
                } else {
                    Count::Bracket { lo, hi }
                }
            }
        }
    }
}

/// Counting method provenance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    ClosedForm,
    Pruefer,
    ModeSum,
}

/// A negative-eigenvalue count with provenance and truncation data.
#[derive(Clone, Debug)]
pub struct EigencountResult {
    pub count: Count,
    pub method: CountMethod,
    /// Modes `|m| > mode_cutoff` certified to contribute zero (radial case).
    pub mode_cutoff: Option<u32>,
    /// Per-mode counts `(m, count)` for mode sums.
    pub per_mode: Vec<(u32, Count)>,
    pub notes: Vec<String>,
}

impl EigencountResult {
    pub fn single(count: Count, method: CountMethod) -> Self {
        EigencountResult { count, method, mode_cutoff: None, per_mode: Vec::new(), notes: Vec::new() }
    }
}
