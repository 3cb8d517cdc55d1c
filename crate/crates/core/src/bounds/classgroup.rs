use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};

/// `(q−1)(q^{2g} − 2g·q^g + 1) / (2g(q^{g+1} − 1))`.
pub fn clg_lower_bound(q: u64, g: u64) -> Result<Ratio<BigInt>> {
    if g == 0 {
        return Err(Error::GenusZero);
    }
    let qb = BigInt::from(q);
    let gb = BigInt::from(g);
    let ge = u32::try_from(g).map_err(|_| Error::InvalidArgument("genus too large".into()))?;
    let num = (&qb - 1) * (qb.pow(2 * ge) - 2 * &gb * qb.pow(ge) + 1);
    let den = 2 * &gb * (qb.pow(ge + 1) - 1);
    Ok(Ratio::new(num, den))
}

/// `8 + 2·log_q h`, rounded to the nearest `f64`.
pub fn genus_upper_from_classnumber(q: u64, h: &BigUint) -> f64 {
    if h.is_zero() {
        return f64::NAN;
    }
    8.0 + 2.0 * big_log(h) / (q as f64).ln()
}

fn big_log(h: &BigUint) -> f64 {
    let bits = h.bits();
    let shift = bits.saturating_sub(52);
    let top = (h >> shift).to_string().parse::<f64>().unwrap_or(f64::MAX);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `g ≤ 8 + 2·log_q h`, decided exactly as `q^{g−8} ≤ h²`.
pub fn genus_within_bound(q: u64, h: &BigUint, g: u64) -> bool {
    if g <= 8 {
        return !h.is_zero();
    }
    BigUint::from(q).pow((g - 8) as u32) <= h * h
}

/// `(r−1)·r^r + r^r·g`.
pub fn castelnuovo_normal_closure(r: u64, g: u64) -> BigUint {
    let rr = BigUint::from(r).pow(r as u32);
    &rr * (r - 1) + rr * g
}

/// `2r′·g + r′²`.
pub fn castelnuovo_pair(r_prime: u64, g: u64) -> BigUint {
    BigUint::from(2 * r_prime) * g + BigUint::from(r_prime) * r_prime
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64, b: i64) -> Ratio<BigInt> {
        Ratio::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(clg_lower_bound(3, 1).unwrap(), rat(1, 2));
        assert_eq!(clg_lower_bound(2, 1).unwrap(), rat(1, 6));
        // 2·(81 − 36 + 1)/(4·26)
        assert_eq!(clg_lower_bound(3, 2).unwrap(), rat(23, 26));
        assert_eq!(clg_lower_bound(2, 0).unwrap_err(), Error::GenusZero);
    }

    #[test]
    fn genus_bound_examples() {
        assert_eq!(genus_upper_from_classnumber(5, &BigUint::from(1u32)), 8.0);
        assert!((genus_upper_from_classnumber(3, &BigUint::from(4u32)) - 10.5237).abs() < 1e-3);
        assert!((genus_upper_from_classnumber(2, &BigUint::from(1u32 << 10)) - 28.0).abs() < 1e-9);
        assert!(genus_within_bound(3, &BigUint::from(4u32), 1));
        assert!(genus_within_bound(2, &BigUint::from(1u32 << 10), 28));
        assert!(!genus_within_bound(2, &BigUint::from(1u32 << 10), 29));
    }

    #[test]
    fn castelnuovo_examples() {
        assert_eq!(castelnuovo_normal_closure(1, 7), BigUint::from(7u32));
        assert_eq!(castelnuovo_normal_closure(2, 1), BigUint::from(8u32));
        assert_eq!(castelnuovo_pair(2, 1), BigUint::from(8u32));
    }
}
