use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::extension::{class_number, index_ix, splitting, SplittingType};
use crate::ffpoly::{enumerate_primes, Prime};
use crate::json::matrix_exprs;
use crate::localfield::counting::gl_count;
use crate::localfield::{Lattice, LocalMatrix, OrderStructure};

use super::datum::{LevelMap, LocalLevel, SubvarietyDatum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
}

/// Witnesses for conditions (a)–(c) at `℘`.
#[derive(Clone, Debug)]
pub struct GoodPrimeCertificate {
    pub prime: Prime,
    /// `s_℘` of the level, `Λ_℘ = s_℘·A_℘^r`.
    pub s: LocalMatrix,
    pub lattice: Lattice,
    /// Twist at `℘`, so that `b_℘(Λ_℘) = twist·s·A_℘^r`.
    pub twist: LocalMatrix,
    pub splitting: SplittingType,
    /// Index into `splitting.places` of a place with `e·f = 1`.
    pub witness_place: usize,
    /// `s^{-1}·twist^{-1}·C·twist·s`, integral.
    pub stability_witness: LocalMatrix,
}

impl GoodPrimeCertificate {
    pub fn residue_size(&self) -> u64 {
        self.prime.residue_size()
    }

    /// Re-checks (a)–(c) from the stored witnesses against `datum`.
    pub fn recheck(&self, datum: &SubvarietyDatum) -> Result<bool> {
        let level_ok = matches!(datum.level.get(&self.prime), LocalLevel::Congruence { ref s, depth: 1 } if s.agrees_with(&self.s));
        let place_ok = self
            .splitting
            .places
            .get(self.witness_place)
            .is_some_and(|&(f, e)| f * e == 1);
        let order = OrderStructure::new(&self.prime, datum.extension.defining_poly(), datum.r_prime(), datum.precision())?;
        let b = self.twist.mul(&self.s);
        let conj = order.conjugated_generator(&b)?;
        Ok(level_ok && place_ok && conj.is_integral()? && conj.agrees_with(&self.stability_witness))
    }

    pub fn to_json(&self) -> Value {
        let (f, e) = self.splitting.places[self.witness_place];
        json!({
            "prime": self.prime.to_string(),
            "residue_size": self.residue_size(),
            "s": matrix_exprs(&self.s),
            "twist": matrix_exprs(&self.twist),
            "lattice_elementary_divisors": self.lattice.elementary_divisors(),
            "witness_place": {"f": f, "e": e},
            "splitting": self.splitting.places,
            "stability_witness": matrix_exprs(&self.stability_witness),
        })
    }
}

#[derive(Clone, Debug)]
pub enum GoodPrimeOutcome {
    Good(Box<GoodPrimeCertificate>),
    Refused { condition: Condition, reason: String },
}

impl GoodPrimeOutcome {
    pub fn certificate(&self) -> Option<&GoodPrimeCertificate> {
        match self {
            GoodPrimeOutcome::Good(c) => Some(c),
            GoodPrimeOutcome::Refused { .. } => None,
        }
    }

    pub fn refused_condition(&self) -> Option<Condition> {
        match self {
            GoodPrimeOutcome::Good(_) => None,
            GoodPrimeOutcome::Refused { condition, .. } => Some(*condition),
        }
    }
}

fn stability(datum: &SubvarietyDatum, prime: &Prime, s: &LocalMatrix) -> Result<(bool, LocalMatrix)> {
    let order = OrderStructure::new(prime, datum.extension.defining_poly(), datum.r_prime(), datum.precision())?;
    let b = datum.twist(prime).mul(s);
    let conj = order.conjugated_generator(&b)?;
    Ok((conj.is_integral()?, conj))
}

/// Conditions (a), (b), (c) in that order.
pub fn is_good_prime(datum: &SubvarietyDatum, prime: &Prime) -> Result<GoodPrimeOutcome> {
    let s = match datum.level.get(prime) {
        LocalLevel::Congruence { s, depth: 1 } => s,
        other => {
            return Ok(GoodPrimeOutcome::Refused {
                condition: Condition::A,
                reason: format!("level at {prime} has depth {}, not a depth-1 congruence subgroup", other.depth()),
            })
        }
    };
    let split = splitting(&datum.extension, prime)?;
    let witness_place = match split.places.iter().position(|&(f, e)| f * e == 1) {
        Some(i) => i,
        None => {
            return Ok(GoodPrimeOutcome::Refused {
                condition: Condition::B,
                reason: format!("no place of local degree 1 above {prime}: {:?}", split.places),
            })
        }
    };
    let (stable, witness) = stability(datum, prime, &s)?;
    if !stable {
        return Ok(GoodPrimeOutcome::Refused {
            condition: Condition::C,
            reason: format!("b_℘(Λ_℘) is not stable under A′ at {prime}"),
        });
    }
    Ok(GoodPrimeOutcome::Good(Box::new(GoodPrimeCertificate {
        prime: prime.clone(),
        lattice: Lattice::new(s.clone())?,
        twist: datum.twist(prime),
        s,
        splitting: split,
        witness_place,
        stability_witness: witness,
    })))
}

/// Replaces `Maximal(s)` at `℘` by `Congruence(s, 1)`; the index is
/// `|GL_r(k(℘))|`.
pub fn shrink_level(level: &LevelMap, prime: &Prime) -> Result<(LevelMap, BigUint)> {
    let s = match level.get(prime) {
        LocalLevel::Maximal { s } => s,
        LocalLevel::Congruence { .. } => return Err(Error::NotMaximalAtPrime(prime.to_string())),
    };
    let mut out = level.clone();
    out.set(prime, LocalLevel::Congruence { s, depth: 1 })?;
    let kp = BigUint::from(prime.residue_size());
    let index = gl_count(level.r(), &kp, 1);
    debug_assert!(index < kp.pow((level.r() * level.r()) as u32));
    Ok((out, index))
}

/// Primes rejected by each condition of the search, the first failing
/// condition being charged.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchCounters {
    pub scanned: u64,
    /// No place of local degree 1.
    pub i: u64,
    /// Level not maximal at the prime.
    pub ii: u64,
    /// Transported maximal lattice not stable under `A′`.
    pub iii: u64,
    /// `|k(℘)|^N ≥ D(X)`.
    pub iv: u64,
    /// Splitting or maximality could not be certified.
    pub unsupported: u64,
}

#[derive(Clone, Debug)]
pub struct GoodPrimeFound {
    pub certificate: GoodPrimeCertificate,
    pub level: LevelMap,
    pub shrink_index: BigUint,
    pub predegree: BigUint,
    pub counters: SearchCounters,
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found(Box<GoodPrimeFound>),
    NotFound { predegree: BigUint, counters: SearchCounters },
}

/// Scans primes by degree up to `max_degree` for one satisfying (i)–(iv),
/// shrinks the level there and certifies it.
pub fn find_good_prime(datum: &SubvarietyDatum, n: u32, max_degree: usize, budget: u64) -> Result<SearchOutcome> {
    let h = class_number(&datum.extension, budget)?;
    let d = h * index_ix(datum, budget)?;
    let mut counters = SearchCounters::default();
    for prime in enumerate_primes(datum.extension.base(), max_degree)? {
        counters.scanned += 1;
        let split = match splitting(&datum.extension, &prime) {
            Ok(s) => s,
            Err(Error::UnsupportedRamifiedPrime(_)) => {
                counters.unsupported += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        if !split.has_degree_one_place() {
            counters.i += 1;
            continue;
        }
        let s = match datum.level.get(&prime) {
            LocalLevel::Maximal { s } => s,
            LocalLevel::Congruence { .. } => {
                counters.ii += 1;
                continue;
            }
        };
        match stability(datum, &prime, &s) {
            Ok((true, _)) => {}
            Ok((false, _)) => {
                counters.iii += 1;
                continue;
            }
            Err(Error::UnsupportedRamifiedPrime(_)) => {
                counters.unsupported += 1;
                continue;
            }
            Err(e) => return Err(e),
        }
        if BigUint::from(prime.residue_size()).pow(n) >= d {
            counters.iv += 1;
            continue;
        }
        let (level, shrink_index) = shrink_level(&datum.level, &prime)?;
        let mut shrunk = datum.clone();
        shrunk.level = level.clone();
        let certificate = match is_good_prime(&shrunk, &prime)? {
            GoodPrimeOutcome::Good(c) => *c,
            GoodPrimeOutcome::Refused { reason, .. } => {
                return Err(Error::InvalidArgument(format!("shrunk level failed to certify: {reason}")))
            }
        };
        return Ok(SearchOutcome::Found(Box::new(GoodPrimeFound {
            certificate,
            level,
            shrink_index,
            predegree: d,
            counters,
        })));
    }
    Ok(SearchOutcome::NotFound { predegree: d, counters })
}
