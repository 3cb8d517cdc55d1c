use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::ffpoly::factor::{is_irreducible, monic_count, monic_from_index};
use crate::ffpoly::field::{Elem, FiniteField};
use crate::ffpoly::poly::Poly;

/// A finite place of `F_q(t)`: a monic irreducible polynomial.
#[derive(Clone)]
pub struct Prime(Arc<PrimeInner>);

struct PrimeInner {
    poly: Poly,
    residue_size: u64,
    residue: OnceLock<Result<ResidueField>>,
    powers: RwLock<Vec<Poly>>,
}

/// The residue field `A/℘` with its reduction map.
#[derive(Clone, Debug)]
pub struct ResidueField {
    pub field: Arc<FiniteField>,
    modulus: Poly,
}

impl ResidueField {
    /// Image of `f` in `A/℘`.
    pub fn reduce(&self, f: &Poly) -> Elem {
        let r = f.rem(&self.modulus);
        if self.modulus.degree() == Some(1) {
            return r.coeff(0);
        }
        self.field.from_digits(r.coeffs())
    }

    /// The canonical lift of degree `< deg ℘`.
    pub fn lift(&self, a: Elem) -> Poly {
        let base = self.modulus.field();
        if self.modulus.degree() == Some(1) {
            return Poly::constant(base, a);
        }
        Poly::new(base, self.field.digits(a))
    }
}

impl Prime {
    pub fn new(poly: Poly) -> Result<Self> {
        let d = match poly.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::NotIrreducible(poly.to_string())),
        };
        if !poly.is_monic() || !is_irreducible(&poly) {
            return Err(Error::NotIrreducible(poly.to_string()));
        }
        let residue_size = poly
            .field()
            .size()
            .checked_pow(d as u32)
            .ok_or_else(|| Error::FieldTooLarge(format!("{}^{d}", poly.field().size())))?;
        Ok(Self::new_unchecked(poly, residue_size))
    }

    fn new_unchecked(poly: Poly, residue_size: u64) -> Self {
        let one = Poly::one(poly.field());
        Prime(Arc::new(PrimeInner {
            powers: RwLock::new(vec![one, poly.clone()]),
            poly,
            residue_size,
            residue: OnceLock::new(),
        }))
    }

    pub fn poly(&self) -> &Poly {
        &self.0.poly
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        self.0.poly.field()
    }

    pub fn degree(&self) -> usize {
        self.0.poly.degree().unwrap_or(0)
    }

    pub fn residue_size(&self) -> u64 {
        self.0.residue_size
    }

    pub fn residue_field(&self) -> Result<ResidueField> {
        self.0
            .residue
            .get_or_init(|| residue_field(&self.0.poly))
            .clone()
    }

    /// `℘^n`, cached.
    pub fn power(&self, n: usize) -> Poly {
        if let Some(p) = self.0.powers.read().expect("poisoned").get(n) {
            return p.clone();
        }
        let mut w = self.0.powers.write().expect("poisoned");
        while w.len() <= n {
            let next = &w[w.len() - 1] * &self.0.poly;
            w.push(next);
        }
        w[n].clone()
    }

    /// `v_℘(f)` for nonzero `f`.
    pub fn valuation(&self, f: &Poly) -> Option<u32> {
        if f.is_zero() {
            None
        } else {
            Some(f.valuation_at(&self.0.poly).0)
        }
    }
}

impl PartialEq for Prime {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.poly == other.0.poly
    }
}

impl Eq for Prime {}

impl Hash for Prime {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.poly.hash(state);
    }
}

impl PartialOrd for Prime {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Prime {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.poly.cmp(&other.0.poly)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.poly.fmt(f)
    }
}

impl fmt::Debug for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Prime({})", self.0.poly)
    }
}

/// `A/℘` as a field of size `q^{deg ℘}`; linear primes reuse the base field.
pub fn residue_field(poly: &Poly) -> Result<ResidueField> {
    let field = if poly.degree() == Some(1) {
        poly.field().clone()
    } else {
        FiniteField::extension(poly.field(), poly)?
    };
    Ok(ResidueField {
        field,
        modulus: poly.clone(),
    })
}

/// Monic irreducibles of degree exactly `d`, in enumeration order.
pub fn primes_of_degree(field: &Arc<FiniteField>, d: usize) -> Result<Vec<Prime>> {
    let total = monic_count(field, d)
        .ok_or_else(|| Error::FieldTooLarge(format!("{}^{d}", field.size())))?;
    Ok((0..total)
        .map(|n| monic_from_index(field, d, n))
        .filter(is_irreducible)
        .map(|p| Prime::new_unchecked(p, total))
        .collect())
}

/// All primes of degree `1..=d_max`, sorted by degree then coefficients
/// from the top down.
pub fn enumerate_primes(field: &Arc<FiniteField>, d_max: usize) -> Result<Vec<Prime>> {
    let mut out = Vec::new();
    for d in 1..=d_max {
        out.extend(primes_of_degree(field, d)?);
    }
    Ok(out)
}

/// Number of monic irreducibles of degree `d` over `F_q`, by Möbius inversion.
pub fn count_irreducible(q: u64, d: u32) -> u64 {
    let mut acc: i128 = 0;
    for e in 1..=d {
        if d.is_multiple_of(e) {
            acc += mobius(e) as i128 * (q as i128).pow(d / e);
        }
    }
    (acc / d as i128) as u64
}

fn mobius(mut n: u32) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_primes_over_f2() {
        let f = FiniteField::prime(2).unwrap();
        let ps = enumerate_primes(&f, 1).unwrap();
        let names: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["t", "t+1"]);
    }

    #[test]
    fn primes_up_to_degree_two_over_f2() {
        let f = FiniteField::prime(2).unwrap();
        let names: Vec<String> = enumerate_primes(&f, 2)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(names, ["t", "t+1", "t^2+t+1"]);
    }

    #[test]
    fn quadratic_primes_over_f3() {
        let f = FiniteField::prime(3).unwrap();
        assert_eq!(primes_of_degree(&f, 2).unwrap().len(), 3);
        assert_eq!(count_irreducible(3, 2), 3);
    }

    #[test]
    fn residue_field_of_t_over_f2() {
        let f = FiniteField::prime(2).unwrap();
        let p = Prime::new(Poly::var(&f)).unwrap();
        let k = p.residue_field().unwrap();
        assert_eq!(k.field.size(), 2);
        let g = Poly::new(&f, vec![1, 1, 1]);
        assert_eq!(k.reduce(&g), g.eval(0));
    }

    #[test]
    fn residue_field_of_t2_t_1_over_f2() {
        let f = FiniteField::prime(2).unwrap();
        let p = Prime::new(Poly::new(&f, vec![1, 1, 1])).unwrap();
        assert_eq!(p.residue_field().unwrap().field.size(), 4);
        assert_eq!(p.residue_size(), 4);
    }

    #[test]
    fn t_cubed_reduces_to_minus_t_mod_t2_plus_1() {
        let f = FiniteField::prime(3).unwrap();
        let p = Prime::new(Poly::new(&f, vec![1, 0, 1])).unwrap();
        let k = p.residue_field().unwrap();
        let t3 = Poly::monomial(&f, 1, 3);
        let minus_t = Poly::new(&f, vec![0, 2]);
        assert_eq!(k.reduce(&t3), k.reduce(&minus_t));
        assert_eq!(k.lift(k.reduce(&t3)), minus_t);
        assert_eq!(k.reduce(p.poly()), 0);
    }

    #[test]
    fn reduction_is_a_ring_map() {
        let f = FiniteField::prime(3).unwrap();
        let p = Prime::new(Poly::new(&f, vec![2, 2, 0, 1])).unwrap();
        let k = p.residue_field().unwrap();
        let a = Poly::new(&f, vec![1, 2, 1, 1, 2]);
        let b = Poly::new(&f, vec![0, 1, 2]);
        let kf = &k.field;
        assert_eq!(k.reduce(&(&a * &b)), kf.mul(k.reduce(&a), k.reduce(&b)));
        assert_eq!(k.reduce(&(&a + &b)), kf.add(k.reduce(&a), k.reduce(&b)));
    }

    #[test]
    fn rejects_reducible() {
        let f = FiniteField::prime(2).unwrap();
        assert!(Prime::new(Poly::new(&f, vec![1, 0, 1])).is_err());
    }
}
