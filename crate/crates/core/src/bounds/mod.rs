//! Right-hand-side evaluators for the named counting estimates, the
//! explicit-constant bounds, and the comparison diagram.

pub mod diagram;
pub mod estimate;
pub mod ingredients;
pub mod phi;
pub mod radmain;

pub use diagram::{compare, Comparison, InconsistentVerdict, IMPLICATIONS};
pub use estimate::{evaluate, BoundReport, ConstantEntry, EstimateId, EvalParams, Ingredient};
pub use ingredients::{entropy_integral, global_llogl_norm, rearranged_log_integral};
pub use phi::{maximize_phi, phi_kappa};
pub use radmain::{lower_bound_10pi, rad_main_bound, LowerBound, RadialBound};
