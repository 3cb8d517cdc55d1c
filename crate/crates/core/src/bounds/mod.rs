//! Closed-form bounds: class numbers and genera, Čebotarev counts and the
//! induction thresholds.

mod cebotarev;
mod classgroup;
mod thresholds;

pub use cebotarev::{
    cebotarev_bound, cebotarev_check, cebotarev_params, count_split_primes, CebotarevBound, CebotarevParams,
    CebotarevReport, Interval,
};
pub use classgroup::{
    castelnuovo_normal_closure, castelnuovo_pair, clg_lower_bound, genus_upper_from_classnumber, genus_within_bound,
};
pub use thresholds::{bezout, hecke_pullback, induction_threshold, intersection_ledger_holds, separable_n};
