//! Nonnegative potentials on ℝ²: symbolic-piecewise representation,
//! spherical rearrangement, weighted integrals, and the logarithmic
//! reduction used by the oscillation counters.

pub mod decay;
pub mod expr;
pub mod logprofile;
pub mod potential;
pub mod rearrange;
pub mod weighted;

pub use decay::{
    converges_at_infinity, converges_at_zero, llogl_compose, llogl_member_at_blowup,
    lp_member_at_blowup, PowerLog,
};
pub use expr::{parse as parse_formula, Expr, ParseError};
pub use logprofile::{log_reduce, LogProfile};
pub use potential::{
    angular_full_integral, integral_zero_endpoint, stable_radial_eval, AngularFactor, DiskBump,
    LogPlateau, Potential, PotentialError, PotentialForm, RadialPiece,
};
pub use rearrange::{rearrange, RadialProfile};
pub use weighted::{weighted_integral, Weight};
