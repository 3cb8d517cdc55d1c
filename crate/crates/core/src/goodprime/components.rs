use num_bigint::BigUint;
use num_traits::One;

use super::datum::LevelMap;

/// `|Â^*/(F_q^*·det K)|` for `F = F_q(t)` (class number 1): the product of
/// `|(A/℘^k)^*|` over the congruence support, divided by `q − 1` when the
/// support is non-empty.
pub fn count_components(level: &LevelMap) -> BigUint {
    let support = level.congruence_support();
    if support.is_empty() {
        return BigUint::one();
    }
    let q = level.base().size();
    let mut acc = BigUint::one();
    for (prime, k) in &support {
        let kp = BigUint::from(prime.residue_size());
        acc *= kp.pow(*k) - kp.pow(*k - 1);
    }
    acc / BigUint::from(q - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::text::parse_poly;
    use crate::ffpoly::{FiniteField, Prime};
    use crate::goodprime::{shrink_level, LocalLevel};
    use crate::localfield::LocalMatrix;

    #[test]
    fn maximal_level_has_one_component() {
        let k = FiniteField::prime(2).unwrap();
        assert_eq!(count_components(&LevelMap::maximal(&k, 2, 12)), BigUint::one());
    }

    #[test]
    fn depth_one_at_t_over_f3() {
        let k = FiniteField::prime(3).unwrap();
        let p = Prime::new(parse_poly("t", &k).unwrap()).unwrap();
        let (lvl, _) = shrink_level(&LevelMap::maximal(&k, 2, 12), &p).unwrap();
        assert_eq!(count_components(&lvl), BigUint::one());
    }

    #[test]
    fn depth_one_at_quadratic_over_f2() {
        let k = FiniteField::prime(2).unwrap();
        let p = Prime::new(parse_poly("t^2+t+1", &k).unwrap()).unwrap();
        let (lvl, _) = shrink_level(&LevelMap::maximal(&k, 2, 12), &p).unwrap();
        assert_eq!(count_components(&lvl), BigUint::from(3u32));
    }

    #[test]
    fn deeper_levels_multiply() {
        let k = FiniteField::prime(3).unwrap();
        let mut lvl = LevelMap::maximal(&k, 2, 12);
        for (s, depth) in [("t", 2), ("t+1", 1)] {
            let p = Prime::new(parse_poly(s, &k).unwrap()).unwrap();
            lvl.set(&p, LocalLevel::Congruence { s: LocalMatrix::identity(&p, 2, 12), depth }).unwrap();
        }
        // (9 − 3)·2 / 2
        assert_eq!(count_components(&lvl), BigUint::from(6u32));
    }
}
