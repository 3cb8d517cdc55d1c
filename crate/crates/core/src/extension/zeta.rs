use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffpoly::factor::first_irreducible;
use crate::ffpoly::prime::primes_of_degree;
use crate::ffpoly::{Elem, FiniteField, Poly};

use super::splitting::splitting;
use super::{Extension, ExtensionKind};

/// Zeta data of `F′` over its constant field `F_{q′}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaData {
    pub q: u64,
    pub genus: u64,
    /// `N_1, …, N_g`.
    pub point_counts: Vec<u64>,
    /// `b_1, …, b_g`.
    pub place_counts: Vec<u64>,
    /// `a_0, …, a_{2g}` of `P(u)`.
    #[serde(serialize_with = "crate::json::ser_display_vec")]
    pub numerator: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::ser_display")]
    pub class_number: BigUint,
}

fn field_of_degree(base: &Arc<FiniteField>, i: u32) -> Result<Arc<FiniteField>> {
    if i == 1 {
        return Ok(base.clone());
    }
    FiniteField::extension(base, &first_irreducible(base, i as usize)?)
}

/// `#{x : x^n = c}` in `field`.
fn nth_roots(field: &FiniteField, n: u64, c: Elem) -> u64 {
    if c == 0 {
        return 1;
    }
    let g = n.gcd(&(field.size() - 1));
    if field.pow(c, (field.size() - 1) / g) == 1 {
        g
    } else {
        0
    }
}

fn check_budget(q: u64, d: u32, budget: u64) -> Result<()> {
    match q.checked_pow(d) {
        Some(n) if n <= budget => Ok(()),
        _ => Err(Error::budget(BigUint::from(q).pow(d), budget)),
    }
}

/// Rational points over `F_{q^i}` of the smooth model, counted on the affine
/// chart plus the single point over `∞`.
fn direct_count(ext: &Extension, i: u32) -> Result<u64> {
    let fq = field_of_degree(ext.base(), i)?;
    match ext.kind() {
        ExtensionKind::Kummer { n, a } => {
            let a = Poly::new(&fq, a.coeffs().to_vec());
            let mut total = 1;
            for t0 in fq.elements() {
                let val = a.eval(t0);
                if val != 0 {
                    total += nth_roots(&fq, *n as u64, val);
                    continue;
                }
                // Over t − t0 the rational places are the roots of z^g = u0.
                let (v, cof) = a.valuation_at(&Poly::linear(&fq, t0));
                let g = (*n as u64).gcd(&(v as u64));
                total += nth_roots(&fq, g, cof.eval(t0));
            }
            Ok(total)
        }
        ExtensionKind::ArtinSchreier { a } => {
            let a = Poly::new(&fq, a.coeffs().to_vec());
            let p = fq.characteristic();
            let solvable = fq.elements().filter(|&t0| fq.trace(a.eval(t0)) == 0).count() as u64;
            Ok(1 + p * solvable)
        }
        _ => {
            let b = (1..=i)
                .filter(|d| i.is_multiple_of(*d))
                .map(|d| Ok(d as u64 * count_places(ext, d, u64::MAX)?))
                .collect::<Result<Vec<_>>>()?;
            Ok(b.iter().sum())
        }
    }
}

/// Number of places of degree `d` over the constant field, from the
/// splitting of every prime of `F` whose degree divides `d·[F_{q′}:F_q]`.
pub fn count_places(ext: &Extension, d: u32, budget: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let c = ext.constant_degree();
    let target = d * c;
    check_budget(ext.base().size(), target, budget)?;
    let mut count = 0;
    for delta in (1..=target).filter(|x| target.is_multiple_of(*x)) {
        for prime in primes_of_degree(ext.base(), delta as usize)? {
            let s = splitting(ext, &prime)?;
            count += s.places.iter().filter(|&&(f, _)| f * delta == target).count() as u64;
        }
    }
    if ext.infinity_residue_degree() == target {
        count += 1;
    }
    Ok(count)
}

/// `N_1, …, N_upto` over `F_{q′^i}`.
pub fn point_counts(ext: &Extension, upto: u32, budget: u64) -> Result<Vec<u64>> {
    let q = ext.constant_field_size();
    check_budget(q, upto, budget)?;
    (1..=upto).map(|i| direct_count(ext, i)).collect()
}

pub fn zeta_numerator(ext: &Extension, budget: u64) -> Result<ZetaData> {
    let g = ext.genus();
    let q = ext.constant_field_size();
    let gu = u32::try_from(g).map_err(|_| Error::budget(format!("genus {g}"), budget))?;
    let counts = point_counts(ext, gu, budget)?;
    let qb = BigInt::from(q);

    // Power sums S_i = q^i + 1 − N_i of the inverse roots.
    let s: Vec<BigInt> = counts
        .iter()
        .enumerate()
        .map(|(i, &n)| qb.pow(i as u32 + 1) + 1 - BigInt::from(n))
        .collect();
    let mut a = vec![BigInt::one()];
    for k in 1..=gu as usize {
        let mut acc = BigInt::zero();
        for j in 1..=k {
            acc += &s[j - 1] * &a[k - j];
        }
        let (quo, rem) = (-acc).div_rem(&BigInt::from(k));
        if !rem.is_zero() {
            return Err(Error::InvalidArgument("point counts are not those of a curve".into()));
        }
        a.push(quo);
    }
    for i in (0..gu as usize).rev() {
        let v = qb.pow(gu - i as u32) * &a[i];
        a.push(v);
    }
    let h: BigInt = a.iter().sum();
    if !h.is_positive() {
        return Err(Error::InvalidArgument("class number came out non-positive".into()));
    }

    let mut places = Vec::with_capacity(counts.len());
    for i in 1..=counts.len() {
        let lower: u64 = (1..i).filter(|d| i % d == 0).map(|d| d as u64 * places[d - 1]).sum();
        places.push((counts[i - 1] - lower) / i as u64);
    }
    Ok(ZetaData {
        q,
        genus: g,
        point_counts: counts,
        place_counts: places,
        numerator: a,
        class_number: h.to_biguint().expect("positive"),
    })
}

pub fn class_number(ext: &Extension, budget: u64) -> Result<BigUint> {
    Ok(zeta_numerator(ext, budget)?.class_number)
}
