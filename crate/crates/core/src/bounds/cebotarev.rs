use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::{splitting, Extension};
use crate::ffpoly::prime::primes_of_degree;

/// Parameters of the effective Čebotarev inequality for `E′/F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CebotarevParams {
    pub q: u64,
    pub i: u32,
    /// Constant-extension degree.
    pub n: u32,
    /// Geometric degree.
    pub k: u32,
    pub g: u64,
    /// `[F : F_q(θ)]`.
    pub d: u32,
}

/// A closed rational interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Ratio<BigInt>,
    pub hi: Ratio<BigInt>,
}

impl Interval {
    fn exact(x: Ratio<BigInt>) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn approx(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigInt::from(2);
        mid.to_f64().unwrap_or(f64::NAN)
    }
}

const SCALE_BITS: u64 = 64;

/// `x^{1/n}` enclosed between multiples of `2^{-64}`.
fn root_interval(x: &BigUint, n: u32) -> Interval {
    let scaled: BigUint = x << (SCALE_BITS * n as u64);
    let floor = scaled.nth_root(n);
    let den = BigInt::from(1u8) << SCALE_BITS;
    let lo = Ratio::new(BigInt::from(floor.clone()), den.clone());
    if floor.pow(n) == scaled {
        return Interval::exact(lo);
    }
    Interval {
        lo,
        hi: Ratio::new(BigInt::from(floor + 1u32), den),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CebotarevBound {
    pub bound: Interval,
    /// `q^i/(i·k)`.
    pub main_term: Ratio<BigInt>,
}

/// `(2/(ik))·((k+g)·q^{i/2} + k(2g+1)·q^{i/4} + g + dk)`.
pub fn cebotarev_bound(p: &CebotarevParams) -> Result<CebotarevBound> {
    if p.n == 0 || !p.i.is_multiple_of(p.n) {
        return Err(Error::InapplicableDegree { i: p.i, n: p.n });
    }
    if p.k == 0 || p.i == 0 {
        return Err(Error::InvalidArgument("i and k must be positive".into()));
    }
    let qi = BigUint::from(p.q).pow(p.i);
    let half = root_interval(&qi, 2);
    let quarter = root_interval(&qi, 4);
    let (k, g, d) = (BigInt::from(p.k), BigInt::from(p.g), BigInt::from(p.d));
    let c1 = Ratio::from_integer(&k + &g);
    let c2 = Ratio::from_integer(&k * (2 * &g + 1));
    let c3 = Ratio::from_integer(&g + &d * &k);
    let front = Ratio::new(BigInt::from(2), BigInt::from(p.i) * &k);
    let eval = |a: &Ratio<BigInt>, b: &Ratio<BigInt>| &front * (&c1 * a + &c2 * b + &c3);
    Ok(CebotarevBound {
        bound: Interval {
            lo: eval(&half.lo, &quarter.lo),
            hi: eval(&half.hi, &quarter.hi),
        },
        main_term: Ratio::new(BigInt::from(qi), BigInt::from(p.i) * k),
    })
}

pub fn cebotarev_params(ext: &Extension, i: u32) -> CebotarevParams {
    let n = ext.constant_degree();
    CebotarevParams {
        q: ext.base().size(),
        i,
        n,
        k: ext.degree() as u32 / n,
        g: ext.genus(),
        d: 1,
    }
}

/// Degree-`i` primes of `F` that split completely in `E′`.
pub fn count_split_primes(ext: &Extension, i: u32, budget: u64) -> Result<u64> {
    if !ext.is_normal_by_construction() {
        return Err(Error::NotNormal);
    }
    let q = ext.base().size();
    match q.checked_pow(i) {
        Some(n) if n <= budget => {}
        _ => return Err(Error::budget(BigUint::from(q).pow(i), budget)),
    }
    let m = ext.degree();
    let mut count = 0;
    for prime in primes_of_degree(ext.base(), i as usize)? {
        let split = match splitting(ext, &prime) {
            Ok(s) => s,
            Err(Error::UnsupportedRamifiedPrime(_)) => continue,
            Err(e) => return Err(e),
        };
        if split.places.len() == m && split.places.iter().all(|&(f, e)| f == 1 && e == 1) {
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CebotarevReport {
    pub params: CebotarevParams,
    pub count: u64,
    pub main_term: f64,
    #[serde(serialize_with = "crate::json::ser_display")]
    pub main_term_exact: Ratio<BigInt>,
    pub bound: f64,
    #[serde(serialize_with = "crate::json::ser_display")]
    pub bound_lower: Ratio<BigInt>,
    #[serde(serialize_with = "crate::json::ser_display")]
    pub bound_upper: Ratio<BigInt>,
    pub deviation: f64,
    /// `|count − main term| < bound`, decided against the lower end of the
    /// bound's enclosure.
    pub holds: bool,
}

pub fn cebotarev_check(ext: &Extension, i: u32, budget: u64) -> Result<CebotarevReport> {
    let params = cebotarev_params(ext, i);
    let b = cebotarev_bound(&params)?;
    let count = count_split_primes(ext, i, budget)?;
    let deviation = (Ratio::from_integer(BigInt::from(count)) - &b.main_term).abs();
    Ok(CebotarevReport {
        params,
        count,
        main_term: b.main_term.to_f64().unwrap_or(f64::NAN),
        deviation: deviation.to_f64().unwrap_or(f64::NAN),
        holds: deviation < b.bound.lo,
        bound: b.bound.approx(),
        main_term_exact: b.main_term,
        bound_lower: b.bound.lo,
        bound_upper: b.bound.hi,
    })
}
