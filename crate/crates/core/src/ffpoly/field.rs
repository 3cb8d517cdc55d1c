//! Finite fields as towers of simple extensions over a prime field.
//!
//! An element of a field of size `q` is an index in `0..q`. For a prime
//! field the index is the residue itself. For an extension `B[α]/(m(α))` of
//! relative degree `n` the index is `Σ c_i·|B|^i` where `c_0 + c_1 α + … +
//! c_{n-1} α^{n-1}` is the element and `c_i` are indices in `B`. Prime
//! subfield elements therefore keep their small indices at every level.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::ffpoly::poly::Poly;

/// An element index of a [`FiniteField`].
pub type Elem = u64;

/// Fields up to this size get exp/log tables, built once the number of
/// multiplications reaches `size / TABLE_AMORTIZE`.
const TABLE_LIMIT: u64 = 1 << 16;
const TABLE_AMORTIZE: u64 = 8;
/// Largest supported field size.
const SIZE_LIMIT: u64 = 1 << 62;

pub struct FiniteField {
    p: u64,
    size: u64,
    abs_degree: u32,
    base: Option<Arc<FiniteField>>,
    /// Monic modulus over `base`, lowest coefficient first.
    modulus: Vec<Elem>,
    rel_degree: u32,
    tables: OnceLock<LogTables>,
    slow_count: AtomicU64,
}

struct LogTables {
    exp: Vec<Elem>,
    log: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.abs_degree)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.size == other.size
                && self.modulus == other.modulus
                && match (&self.base, &other.base) {
                    (None, None) => true,
                    (Some(a), Some(b)) => a == b,
                    _ => false,
                })
    }
}

impl Eq for FiniteField {}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FiniteField {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Arc<Self>> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::FieldTooLarge(p.to_string()));
        }
        Ok(Arc::new(FiniteField {
            p,
            size: p,
            abs_degree: 1,
            base: None,
            modulus: Vec::new(),
            rel_degree: 1,
            tables: OnceLock::new(),
            slow_count: AtomicU64::new(0),
        }))
    }

    /// `F_{p^e}`, built over `F_p` by the first monic irreducible of degree
    /// `e` in enumeration order.
    pub fn new(p: u64, e: u32) -> Result<Arc<Self>> {
        let fp = Self::prime(p)?;
        if e == 0 {
            return Err(Error::InvalidArgument("field degree must be positive".into()));
        }
        if e == 1 {
            return Ok(fp);
        }
        let modulus = crate::ffpoly::factor::first_irreducible(&fp, e as usize)?;
        Self::extension(&fp, &modulus)
    }

    /// The extension `base[α]/(modulus(α))`. The modulus must be monic and
    /// irreducible over `base`.
    pub fn extension(base: &Arc<Self>, modulus: &Poly) -> Result<Arc<Self>> {
        let n = modulus
            .degree()
            .ok_or_else(|| Error::InvalidArgument("zero modulus".into()))?;
        if n == 0 || !modulus.is_monic() || !crate::ffpoly::factor::is_irreducible(modulus) {
            return Err(Error::NotIrreducible(modulus.to_string()));
        }
        let size = base
            .size
            .checked_pow(n as u32)
            .filter(|&s| s <= SIZE_LIMIT)
            .ok_or_else(|| Error::FieldTooLarge(format!("{}^{}", base.size, n)))?;
        let field = FiniteField {
            p: base.p,
            size,
            abs_degree: base.abs_degree * n as u32,
            base: Some(base.clone()),
            modulus: modulus.coeffs().to_vec(),
            rel_degree: n as u32,
            tables: OnceLock::new(),
            slow_count: AtomicU64::new(0),
        };
        Ok(Arc::new(field))
    }

    fn tables(&self) -> Option<&LogTables> {
        if let Some(t) = self.tables.get() {
            return Some(t);
        }
        if self.rel_degree <= 1 || self.size > TABLE_LIMIT {
            return None;
        }
        if self.slow_count.fetch_add(1, Ordering::Relaxed) < self.size / TABLE_AMORTIZE {
            return None;
        }
        Some(self.tables.get_or_init(|| self.build_tables()))
    }

    fn build_tables(&self) -> LogTables {
        let order = self.size - 1;
        let mut primes = Vec::new();
        let mut n = order;
        let mut f = 2;
        while f * f <= n {
            if n.is_multiple_of(f) {
                primes.push(f);
                while n.is_multiple_of(f) {
                    n /= f;
                }
            }
            f += 1;
        }
        if n > 1 {
            primes.push(n);
        }
        let g = (2..self.size)
            .find(|&g| primes.iter().all(|&l| self.slow_pow(g, order / l) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; self.size as usize];
        let mut x: Elem = 1;
        for i in 0..order {
            exp.push(x);
            log[x as usize] = i as u32;
            x = self.slow_mul(x, g);
        }
        LogTables { exp, log }
    }

    fn slow_pow(&self, mut a: Elem, mut e: u64) -> Elem {
        let mut acc: Elem = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, a);
            }
            a = self.slow_mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.abs_degree
    }

    pub fn base(&self) -> Option<&Arc<FiniteField>> {
        self.base.as_ref()
    }

    /// Degree over the immediate base field.
    pub fn relative_degree(&self) -> u32 {
        self.rel_degree
    }

    /// Size of the immediate base field (`p` for a prime field).
    pub fn base_size(&self) -> u64 {
        self.base.as_ref().map_or(self.p, |b| b.size)
    }

    /// Defining polynomial over the immediate base (empty for prime fields).
    pub fn modulus_coeffs(&self) -> &[Elem] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.base.is_none()
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    /// Coordinates over the immediate base.
    pub fn digits(&self, mut a: Elem) -> Vec<Elem> {
        let b = self.base_size();
        let mut out = Vec::with_capacity(self.rel_degree as usize);
        for _ in 0..self.rel_degree {
            out.push(a % b);
            a /= b;
        }
        out
    }

    pub fn from_digits(&self, digits: &[Elem]) -> Elem {
        let b = self.base_size();
        digits.iter().rev().fold(0, |acc, &d| acc * b + d)
    }

    // Indices are base-p digit strings at every level of the tower, so
    // addition is carry-free digitwise addition mod p.
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return a ^ b;
        }
        if self.abs_degree == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        while a > 0 || b > 0 {
            let mut d = a % p + b % p;
            if d >= p {
                d -= p;
            }
            out += d * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        out
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a == 0 {
            return a;
        }
        let p = self.p;
        let mut a = a;
        let mut out = 0;
        let mut scale = 1;
        while a > 0 {
            let d = a % p;
            if d != 0 {
                out += (p - d) * scale;
            }
            a /= p;
            scale *= p;
        }
        out
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(t) = self.tables() {
            let n = self.size - 1;
            let l = (t.log[a as usize] as u64 + t.log[b as usize] as u64) % n;
            return t.exp[l as usize];
        }
        self.slow_mul(a, b)
    }

    fn slow_mul(&self, a: Elem, b: Elem) -> Elem {
        let base = match &self.base {
            None => return ((a as u128 * b as u128) % self.p as u128) as Elem,
            Some(base) => base,
        };
        if self.rel_degree == 1 {
            return base.mul(a, b);
        }
        let n = self.rel_degree as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0; 2 * n - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = base.add(prod[i + j], base.mul(x, y));
            }
        }
        for i in (n..2 * n - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..n {
                let t = base.mul(c, self.modulus[j]);
                prod[i - n + j] = base.sub(prod[i - n + j], t);
            }
        }
        self.from_digits(&prod[..n])
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        if let Some(t) = self.tables() {
            let n = self.size - 1;
            let l = (n - t.log[a as usize] as u64) % n;
            return Some(t.exp[l as usize]);
        }
        Some(self.pow(a, self.size - 2))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// The unique `p`-th root (Frobenius is bijective).
    pub fn pth_root(&self, a: Elem) -> Elem {
        self.pow(a, self.size / self.p)
    }

    /// Whether `a` is a `n`-th power in this field.
    pub fn is_nth_power(&self, a: Elem, n: u64) -> bool {
        if a == 0 {
            return true;
        }
        let g = num_integer::gcd(n, self.size - 1);
        self.pow(a, (self.size - 1) / g) == 1
    }

    /// Absolute trace to the prime field.
    pub fn trace(&self, a: Elem) -> Elem {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.abs_degree {
            acc = self.add(acc, x);
            x = self.pow(x, self.p);
        }
        acc
    }

    /// `F_{p^e}` as `"p^e"`.
    pub fn spec(&self) -> String {
        format!("{}^{}", self.p, self.abs_degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_fixes_every_element() {
        for (p, e) in [(2, 1), (2, 2), (2, 3), (3, 2), (5, 2), (3, 4), (2, 6), (7, 2), (3, 3)] {
            let f = FiniteField::new(p, e).unwrap();
            assert!(f.size() <= 81 || e > 1);
            for x in f.elements() {
                assert_eq!(f.pow(x, f.size()), x, "GF({p}^{e}) element {x}");
            }
        }
    }

    #[test]
    fn tower_over_extension_matches_size() {
        let f4 = FiniteField::new(2, 2).unwrap();
        let m = crate::ffpoly::factor::first_irreducible(&f4, 2).unwrap();
        let f16 = FiniteField::extension(&f4, &m).unwrap();
        assert_eq!(f16.size(), 16);
        for x in 1..16 {
            assert_eq!(f16.mul(x, f16.inv(x).unwrap()), 1);
            assert_eq!(f16.pow(x, 16), x);
        }
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert_eq!(FiniteField::prime(9).unwrap_err(), Error::NotPrime(9));
    }

    #[test]
    fn field_axioms_on_gf9() {
        let f = FiniteField::new(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), 0);
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in f.elements() {
                    assert_eq!(
                        f.mul(a, f.add(b, c)),
                        f.add(f.mul(a, b), f.mul(a, c))
                    );
                }
            }
        }
    }

    #[test]
    fn trace_is_additive_and_onto() {
        let f = FiniteField::new(2, 3).unwrap();
        let zeros = f.elements().filter(|&a| f.trace(a) == 0).count();
        assert_eq!(zeros, 4);
    }
}
