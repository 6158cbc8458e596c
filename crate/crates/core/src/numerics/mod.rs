//! Shared numeric kernels: quadrature, root bracketing, scalar optimization.

pub mod optimize;
pub mod quad;
pub mod roots;

pub use optimize::{golden_min, scan_then_golden_max, scan_then_golden_min};
pub use quad::{integrate, integrate_cells, QuadResult};
pub use roots::{bisect_root, expand_upper_bracket};
