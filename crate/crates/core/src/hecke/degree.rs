use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::ffpoly::{Elem, Poly};
use crate::localfield::LocalMatrix;

/// The linear map `X ↦ principal part of g·X·g^{-1}` on `Mat_r(A/℘^k)`,
/// as images of the `F_q`-basis `t^j·E_{ab}` (`j < k·deg ℘`). `X` lies in
/// `K ∩ g^{-1}Kg` modulo `K(℘^{2k})` exactly when its image vanishes.
pub fn principal_part_images(g: &LocalMatrix, k: u32) -> Result<Vec<Vec<Elem>>> {
    let r = g.rows();
    let prime = g.prime().clone();
    let field = prime.field().clone();
    let kd = k as usize * prime.degree();
    let ginv = g.inverse()?;
    let lo = |m: &LocalMatrix| m.entries().iter().map(|e| e.min_valuation()).min().unwrap_or(0);
    if lo(g) + lo(&ginv) < -(k as i64) {
        return Err(Error::QuotientInsufficient { depth: k });
    }
    let prec = g.max_rel_prec().max(1);
    let mut images = Vec::with_capacity(r * r * kd);
    for a in 0..r {
        for b in 0..r {
            for j in 0..kd {
                // g·(t^j E_ab)·g^{-1} = t^j·(column a of g)(row b of g^{-1})
                let tj = crate::localfield::LocalElement::from_poly(
                    &prime,
                    &Poly::monomial(&field, 1, j),
                    prec,
                );
                let mut v = Vec::with_capacity(r * r * kd);
                for i in 0..r {
                    for l in 0..r {
                        let z = g.get(i, a).mul(ginv.get(b, l)).mul(&tj).shift(k as i64);
                        let p = z.to_poly_mod(k)?;
                        v.extend((0..kd).map(|c| p.coeff(c)));
                    }
                }
                images.push(v);
            }
        }
    }
    Ok(images)
}

/// `[K : K ∩ g^{-1}Kg]` for `K = K(℘^k)`, by counting the elements of
/// `Mat_r(A/℘^k) ≅ K/K(℘^{2k})` that land in `g^{-1}Kg`.
pub fn hecke_degree(g: &LocalMatrix, k: u32, budget: u64) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    let images = principal_part_images(g, k)?;
    let field = g.prime().field().clone();
    let q = field.size();
    let n = images.len() as u32;
    let total = q
        .checked_pow(n)
        .filter(|&t| t <= budget)
        .ok_or_else(|| Error::budget(BigUint::from(q).pow(n), budget))?;

    // Walk F_q^n as F_p^{n·e}: every odometer step adds one generator.
    let p = field.characteristic();
    let e = field.degree();
    let gens: Vec<Vec<Elem>> = images
        .iter()
        .flat_map(|img| {
            let field = &field;
            (0..e).map(move |s| {
                let alpha = p.pow(s);
                img.iter().map(|&x| field.mul(alpha, x)).collect()
            })
        })
        .collect();
    let len = images.first().map_or(0, Vec::len);
    let mut acc = vec![0 as Elem; len];
    let mut digits = vec![0u64; gens.len()];
    let mut inside: u64 = 1;
    for _ in 1..total {
        let mut i = 0;
        loop {
            for (a, &x) in acc.iter_mut().zip(&gens[i]) {
                *a = field.add(*a, x);
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if acc.iter().all(|&x| x == 0) {
            inside += 1;
        }
    }
    Ok(BigUint::from(total / inside))
}

/// `diag(π^{-1}, 1, …, 1)`.
pub fn standard_hecke_matrix(prime: &crate::ffpoly::Prime, r: usize, prec: u32) -> LocalMatrix {
    let mut exps = vec![0; r];
    exps[0] = -1;
    LocalMatrix::pi_diag(prime, &exps, prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{FiniteField, Prime};

    fn prime_t(p: u64) -> Prime {
        Prime::new(Poly::var(&FiniteField::prime(p).unwrap())).unwrap()
    }

    #[test]
    fn r2_q2_depth1() {
        let p = prime_t(2);
        let g = standard_hecke_matrix(&p, 2, 12);
        assert_eq!(hecke_degree(&g, 1, 1 << 16).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn identity_has_degree_one() {
        let p = prime_t(3);
        let g = LocalMatrix::identity(&p, 2, 12);
        assert_eq!(hecke_degree(&g, 1, 1 << 16).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn r3_q2_depth1() {
        let p = prime_t(2);
        let g = standard_hecke_matrix(&p, 3, 12);
        assert_eq!(hecke_degree(&g, 1, 1 << 16).unwrap(), BigUint::from(4u32));
    }

    #[test]
    fn inverse_has_the_same_degree() {
        let p = prime_t(3);
        let g = standard_hecke_matrix(&p, 2, 12);
        let gi = g.inverse().unwrap();
        assert_eq!(hecke_degree(&g, 1, 1 << 16).unwrap(), hecke_degree(&gi, 1, 1 << 16).unwrap());
    }

    #[test]
    fn too_deep_a_pole_is_refused() {
        let p = prime_t(2);
        let g = LocalMatrix::pi_diag(&p, &[-2, 0], 12);
        assert_eq!(
            hecke_degree(&g, 1, 1 << 16).unwrap_err(),
            Error::QuotientInsufficient { depth: 1 }
        );
    }

    #[test]
    fn budget_is_enforced() {
        let p = prime_t(2);
        let g = standard_hecke_matrix(&p, 3, 12);
        assert!(matches!(hecke_degree(&g, 1, 100), Err(Error::BudgetExceeded { .. })));
    }
}
