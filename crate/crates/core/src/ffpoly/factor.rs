//! Factorization over finite fields: squarefree decomposition, distinct-degree
//! and equal-degree splitting.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ffpoly::field::{Elem, FiniteField};
use crate::ffpoly::poly::Poly;

/// `unit · ∏ factor^mult` with monic irreducible factors in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Elem,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, field: &Arc<FiniteField>) -> Poly {
        let mut acc = Poly::constant(field, self.unit);
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

pub fn factor(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.leading();
    let mut factors = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for (sq, mult) in squarefree(&f.monic()) {
        for (g, d) in distinct_degree(&sq) {
            for h in equal_degree(&g, d, &mut rng) {
                factors.push((h, mult));
            }
        }
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

/// Squarefree decomposition of a monic polynomial: pairs `(g_i, i)` with
/// `f = ∏ g_i^i` and each `g_i` squarefree.
pub fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let p = f.field().characteristic() as u32;
    let df = f.derivative();
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        c = c.div_exact(&y);
        w = y;
        i += 1;
    }
    if !c.is_one() {
        for (g, m) in squarefree(&c.pth_root()) {
            out.push((g, m * p));
        }
    }
    out
}

/// `x^(q^i)` reduction helper: raise to the field size.
fn frobenius(a: &Poly, m: &Poly) -> Poly {
    a.pow_mod(a.field().size(), m)
}

/// Distinct-degree splitting of a monic squarefree polynomial: pairs
/// `(g_d, d)` where `g_d` is the product of all degree-`d` factors.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field().clone();
    let x = Poly::var(&field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = frobenius(&h, &rest);
        let g = rest.gcd(&(&h - &x));
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(n) = rest.degree().filter(|&n| n > 0) {
        out.push((rest, n));
    }
    out
}

/// Splits a monic squarefree product of degree-`d` irreducibles.
pub fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field().clone();
    loop {
        let a = Poly::new(&field, (0..n).map(|_| rng.gen_range(0..field.size())).collect());
        if a.is_constant() {
            continue;
        }
        let b = splitting_element(&a, f, d);
        let g = f.gcd(&b);
        if !g.is_one() && g.degree() != f.degree() {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&f.div_exact(&g), d, rng));
            return out;
        }
    }
}

fn splitting_element(a: &Poly, f: &Poly, d: usize) -> Poly {
    let field = f.field();
    let p = field.characteristic();
    if p == 2 {
        let steps = field.degree() as usize * d;
        let mut acc = Poly::zero(field);
        let mut x = a.rem(f);
        for _ in 0..steps {
            acc = &acc + &x;
            x = x.mul_mod(&x, f);
        }
        return acc;
    }
    // a^((q^d-1)/2) = (a^(1+q+…+q^(d-1)))^((q-1)/2)
    let mut norm = Poly::one(field);
    let mut x = a.rem(f);
    for _ in 0..d {
        norm = norm.mul_mod(&x, f);
        x = frobenius(&x, f);
    }
    let b = norm.pow_mod((field.size() - 1) / 2, f);
    &b - &Poly::one(field)
}

/// Ben-Or irreducibility test.
pub fn is_irreducible(f: &Poly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let field = f.field().clone();
    let f = f.monic();
    let x = Poly::var(&field);
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = frobenius(&h, &f);
        if !f.gcd(&(&h - &x)).is_one() {
            return false;
        }
    }
    true
}

/// Monic polynomial of degree `d` with enumeration index `n`: the base-`q`
/// digits of `n` are the coefficients below the leading one, least
/// significant first.
pub fn monic_from_index(field: &Arc<FiniteField>, d: usize, mut n: u64) -> Poly {
    let q = field.size();
    let mut v = Vec::with_capacity(d + 1);
    for _ in 0..d {
        v.push(n % q);
        n /= q;
    }
    v.push(1);
    Poly::new(field, v)
}

/// Number of monic polynomials of degree `d`, if it fits in a `u64`.
pub fn monic_count(field: &FiniteField, d: usize) -> Option<u64> {
    field.size().checked_pow(d as u32)
}

/// First monic irreducible of degree `d` in enumeration order.
pub fn first_irreducible(field: &Arc<FiniteField>, d: usize) -> Result<Poly> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let total = monic_count(field, d).ok_or_else(|| Error::FieldTooLarge(format!("{}^{d}", field.size())))?;
    (0..total)
        .map(|n| monic_from_index(field, d, n))
        .find(is_irreducible)
        .ok_or_else(|| Error::InvalidArgument(format!("no irreducible of degree {d}")))
}

/// Roots of `f` in its coefficient field, by exhaustive evaluation.
pub fn roots(f: &Poly) -> Vec<Elem> {
    let field = f.field();
    if f.is_zero() {
        return Vec::new();
    }
    if field.size() <= 1 << 12 {
        return field.elements().filter(|&a| f.eval(a) == 0).collect();
    }
    let mut out: Vec<Elem> = factor(f)
        .map(|fz| {
            fz.factors
                .iter()
                .filter(|(g, _)| g.degree() == Some(1))
                .map(|(g, _)| field.neg(g.coeff(0)))
                .collect()
        })
        .unwrap_or_default();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(field: &Arc<FiniteField>, c: &[Elem]) -> Poly {
        Poly::new(field, c.to_vec())
    }

    #[test]
    fn t_cubed_minus_t_over_f3() {
        let f = FiniteField::prime(3).unwrap();
        let fz = factor(&p(&f, &[0, 2, 0, 1])).unwrap();
        let want = vec![(p(&f, &[0, 1]), 1), (p(&f, &[1, 1]), 1), (p(&f, &[2, 1]), 1)];
        assert_eq!(fz.factors, want);
    }

    #[test]
    fn t_squared_plus_one_over_f2_is_a_square() {
        let f = FiniteField::prime(2).unwrap();
        let fz = factor(&p(&f, &[1, 0, 1])).unwrap();
        assert_eq!(fz.factors, vec![(p(&f, &[1, 1]), 2)]);
    }

    #[test]
    fn t_squared_plus_one_over_f3_is_irreducible() {
        let f = FiniteField::prime(3).unwrap();
        let fz = factor(&p(&f, &[1, 0, 1])).unwrap();
        assert!(fz.is_irreducible());
    }

    #[test]
    fn zero_is_rejected() {
        let f = FiniteField::prime(5).unwrap();
        assert_eq!(factor(&Poly::zero(&f)).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn nonmonic_unit_is_kept() {
        let f = FiniteField::prime(5).unwrap();
        let g = p(&f, &[3, 0, 0, 2]);
        let fz = factor(&g).unwrap();
        assert_eq!(fz.unit, 2);
        assert_eq!(fz.expand(&f), g);
    }

    #[test]
    fn inseparable_powers_over_f4() {
        let f4 = FiniteField::new(2, 2).unwrap();
        // (t^2 + a t + 1)^2 (t + a)^4, a a generator
        let a = 2;
        let q = p(&f4, &[1, a, 1]);
        let l = p(&f4, &[a, 1]);
        let g = &q.pow(2) * &l.pow(4);
        let fz = factor(&g).unwrap();
        assert_eq!(fz.expand(&f4), g);
        assert!(fz.factors.iter().all(|(h, _)| is_irreducible(h)));
    }
}
