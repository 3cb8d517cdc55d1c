use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::ffpoly::Prime;
use crate::localfield::matrix::LocalMatrix;
use crate::localfield::snf::smith_normal_form;

/// A full-rank `A_℘`-lattice in `F_℘^r`, spanned by the columns of `basis`.
#[derive(Clone, Debug)]
pub struct Lattice {
    basis: LocalMatrix,
    divisors: Vec<i64>,
}

impl Lattice {
    pub fn new(basis: LocalMatrix) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::InvalidArgument("lattice basis must be square".into()));
        }
        let divisors = smith_normal_form(&basis)?.exponents;
        Ok(Lattice { basis, divisors })
    }

    /// `A_℘^r`.
    pub fn standard(prime: &Prime, r: usize, prec: u32) -> Self {
        Lattice {
            basis: LocalMatrix::identity(prime, r, prec),
            divisors: vec![0; r],
        }
    }

    pub fn basis(&self) -> &LocalMatrix {
        &self.basis
    }

    pub fn prime(&self) -> &Prime {
        self.basis.prime()
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Elementary divisor exponents relative to `A_℘^r`, ascending.
    pub fn elementary_divisors(&self) -> &[i64] {
        &self.divisors
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Lattice) -> Result<bool> {
        self.basis.inverse()?.mul(&other.basis).is_integral()
    }

    /// Equality as sets: `B_1^{-1}B_2` integral with unit determinant.
    pub fn same_as(&self, other: &Lattice) -> Result<bool> {
        let t = self.basis.inverse()?.mul(&other.basis);
        if !t.is_integral()? {
            return Ok(false);
        }
        Ok(t.det()?.valuation() == Some(0))
    }

    /// `g·Λ`.
    pub fn transform(&self, g: &LocalMatrix) -> Result<Lattice> {
        Lattice::new(g.mul(&self.basis))
    }
}

/// `[Λ′ : Λ]` for `Λ ⊆ Λ′`, as `|k(℘)|^{Σ e_i}` with `e_i` the elementary
/// divisors of `B′^{-1}·B`.
pub fn lattice_index(inner: &Lattice, outer: &Lattice) -> Result<BigUint> {
    let rel = outer.basis.inverse()?.mul(&inner.basis);
    if !rel.is_integral()? {
        return Err(Error::NotContained);
    }
    let exps = smith_normal_form(&rel)?.exponents;
    let total: i64 = exps.iter().sum();
    Ok(BigUint::from(inner.prime().residue_size()).pow(total as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{FiniteField, Poly};

    fn prime(p: u64) -> Prime {
        Prime::new(Poly::var(&FiniteField::prime(p).unwrap())).unwrap()
    }

    #[test]
    fn pi_times_standard_has_index_four() {
        let p = prime(2);
        let l = Lattice::new(LocalMatrix::pi_diag(&p, &[1, 1], 12)).unwrap();
        let std = Lattice::standard(&p, 2, 12);
        assert_eq!(lattice_index(&l, &std).unwrap(), BigUint::from(4u32));
    }

    #[test]
    fn one_elementary_divisor_over_f3() {
        let p = prime(3);
        let l = Lattice::new(LocalMatrix::pi_diag(&p, &[1, 0], 12)).unwrap();
        assert_eq!(
            lattice_index(&l, &Lattice::standard(&p, 2, 12)).unwrap(),
            BigUint::from(3u32)
        );
    }

    #[test]
    fn not_contained() {
        let p = prime(2);
        let l = Lattice::new(LocalMatrix::pi_diag(&p, &[-1, 0], 12)).unwrap();
        assert_eq!(
            lattice_index(&l, &Lattice::standard(&p, 2, 12)).unwrap_err(),
            Error::NotContained
        );
    }

    #[test]
    fn equality_ignores_basis_choice() {
        let p = prime(2);
        let f = p.field().clone();
        let t = Poly::var(&f);
        let a = LocalMatrix::from_polys(
            &p,
            &[vec![t.clone(), Poly::zero(&f)], vec![Poly::one(&f), Poly::one(&f)]],
            12,
        )
        .unwrap();
        let b = LocalMatrix::from_polys(
            &p,
            &[vec![t.clone(), Poly::zero(&f)], vec![Poly::zero(&f), Poly::one(&f)]],
            12,
        )
        .unwrap();
        let la = Lattice::new(a).unwrap();
        let lb = Lattice::new(b).unwrap();
        assert!(la.same_as(&lb).unwrap());
        assert_eq!(la.elementary_divisors(), &[0, 1]);
    }
}
