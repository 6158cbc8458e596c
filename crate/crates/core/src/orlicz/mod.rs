//! Orlicz-space machinery: the mutually complementary pair
//! `𝒜(s) = e^|s|-1-|s|`, `ℬ(s) = (1+|s|)ln(1+|s|)-|s|`, power gauges, and
//! the gauge / Orlicz / average norms on finite-measure domains.

mod nfunction;
mod norms;
mod sample;

pub use nfunction::{NFunction, NKind};
pub use norms::{
    amemiya_norm, average_norm, brute_force_dual_norm, embedding_constant_m, luxemburg_norm,
    orlicz_norm, NormError,
};
pub use sample::{integrate_radial, MeasurableSample, SampleData};
