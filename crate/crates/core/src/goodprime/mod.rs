//! Subvariety data, levels, good primes and their search, orbit equality of
//! data and component counts.

mod components;
mod datum;
mod orbit;
mod search;
mod transfer;

pub use components::count_components;
pub use datum::{DatumSpec, LevelEntrySpec, LevelKind, LevelMap, LocalLevel, SubvarietyDatum, TwistSpec};
pub use orbit::{same_subvariety, Sameness};
pub use search::{
    find_good_prime, is_good_prime, shrink_level, Condition, GoodPrimeCertificate, GoodPrimeFound, GoodPrimeOutcome,
    SearchCounters, SearchOutcome,
};
pub use transfer::{transfer_good_prime, PlaceBelow, TransferReport};
