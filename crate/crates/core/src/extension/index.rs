use num_bigint::BigUint;
use num_traits::One;

use crate::error::Result;
use crate::ffpoly::Prime;
use crate::goodprime::SubvarietyDatum;
use crate::localfield::counting::minimal_depth;
use crate::localfield::{stabilizer_index, Lattice, LocalMatrix, OrderStructure};

use super::zeta::class_number;
use super::Extension;

/// `[GL_{r′}(A′_℘) : Stab(Λ)]` for `Λ = g·A_℘^r`, after rescaling `Λ` by a
/// power of `π` so that it is primitive in `R′^{r′}`.
pub fn local_index(
    ext: &Extension,
    prime: &Prime,
    g: &LocalMatrix,
    r_prime: usize,
    prec: u32,
    budget: u64,
) -> Result<BigUint> {
    let order = OrderStructure::new(prime, ext.defining_poly(), r_prime, prec)?;
    let raw = Lattice::new(g.clone())?;
    let e1 = raw.elementary_divisors().first().copied().unwrap_or(0);
    let lattice = Lattice::new(g.shift(-e1))?;
    let k = minimal_depth(&lattice);
    stabilizer_index(&lattice, &order, k, budget)
}

/// `i(X) = ∏_℘ i_℘` over the twist support.
pub fn index_ix(datum: &SubvarietyDatum, budget: u64) -> Result<BigUint> {
    let mut acc = BigUint::one();
    for (prime, g) in datum.twists() {
        acc *= local_index(&datum.extension, prime, g, datum.r_prime(), datum.precision(), budget)?;
    }
    Ok(acc)
}

/// `D = h(F′)·i`.
pub fn predegree(ext: &Extension, i: &BigUint, budget: u64) -> Result<BigUint> {
    Ok(class_number(ext, budget)? * i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::text::parse_poly;
    use crate::ffpoly::FiniteField;
    use crate::goodprime::LevelMap;

    fn elliptic() -> Extension {
        let k = FiniteField::prime(3).unwrap();
        Extension::kummer(&k, 2, parse_poly("t^3-t", &k).unwrap()).unwrap()
    }

    #[test]
    fn standard_datum_has_index_one() {
        let e = elliptic();
        let level = LevelMap::maximal(e.base(), 2, 12);
        let d = SubvarietyDatum::new(e, 2, level).unwrap();
        assert_eq!(index_ix(&d, 1 << 16).unwrap(), BigUint::one());
    }

    #[test]
    fn predegree_examples() {
        let e = elliptic();
        assert_eq!(predegree(&e, &BigUint::one(), 1 << 16).unwrap(), BigUint::from(4u32));
        assert_eq!(predegree(&e, &BigUint::from(6u32), 1 << 16).unwrap(), BigUint::from(24u32));
        let k = FiniteField::prime(2).unwrap();
        let c = Extension::constant(&k, 3).unwrap();
        assert_eq!(predegree(&c, &BigUint::one(), 1 << 16).unwrap(), BigUint::one());
    }

    #[test]
    fn inflating_twist_at_a_split_prime() {
        // y² = t³ − t splits at t²+t+2, so R′ ≅ A_℘², and Λ = A_℘ + ℘²R′
        // has orbit |(A/℘²)^*| = 8·9.
        let e = elliptic();
        let k = e.base().clone();
        let p = Prime::new(parse_poly("t^2+t+2", &k).unwrap()).unwrap();
        let g = LocalMatrix::pi_diag(&p, &[0, 2], 12);
        let level = LevelMap::maximal(&k, 2, 12);
        let d = SubvarietyDatum::new(e, 2, level).unwrap().with_twist(&p, g).unwrap();
        assert_eq!(index_ix(&d, 1 << 16).unwrap(), BigUint::from(72u32));
    }

    #[test]
    fn scaling_does_not_change_the_index() {
        let e = elliptic();
        let k = e.base().clone();
        let p = Prime::new(parse_poly("t^2+t+2", &k).unwrap()).unwrap();
        let a = local_index(&e, &p, &LocalMatrix::pi_diag(&p, &[0, 1], 12), 1, 12, 1 << 16).unwrap();
        let b = local_index(&e, &p, &LocalMatrix::pi_diag(&p, &[-3, -2], 12), 1, 12, 1 << 16).unwrap();
        assert_eq!(a, b);
    }
}
