//! Direct negative-eigenvalue counting for the 1D reductions: closed-form
//! inverse-square Dirichlet counts, Prüfer/oscillation shooting for general
//! potentials, radial mode sums, and sharp 1D Sobolev constants.

pub mod dirichlet;
pub mod problem;
pub mod pruefer;
pub mod radial;
pub mod sobolev;

pub use dirichlet::dirichlet_count;
pub use problem::{Count, CountMethod, EigencountResult, LeftBc, RightBc, Segment, SturmProblem};
pub use pruefer::{dirichlet_problem_inverse_square, integrate_phase, pruefer_count};
pub use radial::{radial_eigencount, radial_m0_count, GPiece, GTail, RadialReduction};
pub use sobolev::{
    c0_extremizer_ratio, c0_kappa, c0_kappa_at, c_kappa, c_kappa_at, c_kappa_origin_limit,
    discrete_rayleigh_c, discrete_rayleigh_c0, gammas, Extremizer,
};
