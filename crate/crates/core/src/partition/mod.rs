//! Annular decompositions and the doubly infinite bound-ingredient
//! sequences with certified truncation.

pub mod annuli;
pub mod profile;
pub mod seq;

pub use annuli::{ring_t_bounds, unit_log_ring_area, AnnulusFamily};
pub use profile::{auto_range, profile, AnnularProfile, SequenceId, TailClass, TailModel};
pub use seq::{
    fitted_card_exponent, fitted_sum_exponent, sum, thresholded_sqrt_sum,
    thresholded_sqrt_sum_slice, weak_l1, weak_l1_slice,
};
