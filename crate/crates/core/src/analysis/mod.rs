//! Closed-form analysis artifacts and instance generators.

pub mod binomial;
pub mod generators;
pub mod lp;
pub mod ratio;

pub use binomial::{binomial, rational};
pub use generators::{
    containment_witness, gen_lower_bound_instance, gen_random_instance, LowerBoundInstance,
    RandomInstanceParams,
};
pub use lp::{
    lp_bruteforce, lp_bruteforce_report, lp_closed_form, random_lp_instance, LpBruteforce,
    LpInstance,
};
pub use ratio::{ratio_inequality_check, ratio_sweep};
