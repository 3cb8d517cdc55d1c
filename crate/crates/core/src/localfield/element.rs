use std::fmt;

use crate::error::{Error, Result};
use crate::ffpoly::{Elem, Poly, Prime, RatFunc};

/// Absolute precision recorded for an exact zero.
const EXACT: i64 = i64::MAX / 4;

/// An element `π^v·u + O(π^{v+prec})` of the completion `F_℘`, with
/// `π = ℘` and `u` a unit known modulo `℘^prec`.
///
/// Zero carries only an absolute precision: the element is known to be
/// `O(π^v)`. An exact zero has `v = EXACT`.
#[derive(Clone)]
pub struct LocalElement {
    prime: Prime,
    val: i64,
    unit: Poly,
    prec: u32,
}

impl LocalElement {
    pub fn zero(prime: &Prime) -> Self {
        Self::approx_zero(prime, EXACT)
    }

    /// `O(π^abs)`.
    pub fn approx_zero(prime: &Prime, abs: i64) -> Self {
        LocalElement {
            prime: prime.clone(),
            val: abs.min(EXACT),
            unit: Poly::zero(prime.field()),
            prec: 0,
        }
    }

    pub fn one(prime: &Prime, prec: u32) -> Self {
        Self::from_poly(prime, &Poly::one(prime.field()), prec)
    }

    /// `π^n` to relative precision `prec`.
    pub fn pi_power(prime: &Prime, n: i64, prec: u32) -> Self {
        let mut e = Self::one(prime, prec);
        e.val = n;
        e
    }

    /// Embeds a polynomial with relative precision `prec`.
    pub fn from_poly(prime: &Prime, f: &Poly, prec: u32) -> Self {
        if f.is_zero() {
            return Self::zero(prime);
        }
        let (v, u) = f.valuation_at(prime.poly());
        Self::from_unit(prime, v as i64, &u, prec)
    }

    /// Embeds `num/den` with relative precision `prec`.
    pub fn from_ratfunc(prime: &Prime, r: &RatFunc, prec: u32) -> Self {
        if r.is_zero() {
            return Self::zero(prime);
        }
        let (vn, un) = r.num().valuation_at(prime.poly());
        let (vd, ud) = r.den().valuation_at(prime.poly());
        let m = prime.power(prec as usize);
        let inv = ud.inv_mod(&m).expect("unit denominator");
        Self::from_unit(prime, vn as i64 - vd as i64, &un.mul_mod(&inv, &m), prec)
    }

    /// `π^val·unit` where `unit` is not divisible by `℘`.
    pub fn from_unit(prime: &Prime, val: i64, unit: &Poly, prec: u32) -> Self {
        if prec == 0 {
            return Self::approx_zero(prime, val);
        }
        LocalElement {
            prime: prime.clone(),
            val,
            unit: unit.rem(&prime.power(prec as usize)),
            prec,
        }
    }

    /// `π^shift·s` where `s` is known modulo `℘^n`; renormalizes.
    fn from_residue(prime: &Prime, shift: i64, s: Poly, n: i64) -> Self {
        if n <= 0 {
            return Self::approx_zero(prime, shift + n.max(0));
        }
        let mut s = s.rem(&prime.power(n as usize));
        let mut w = 0;
        while w < n {
            if s.is_zero() {
                return Self::approx_zero(prime, shift + n);
            }
            let (q, r) = s.divrem(prime.poly()).expect("nonzero prime");
            if !r.is_zero() {
                break;
            }
            s = q;
            w += 1;
        }
        if w == n {
            return Self::approx_zero(prime, shift + n);
        }
        LocalElement {
            prime: prime.clone(),
            val: shift + w,
            unit: s,
            prec: (n - w) as u32,
        }
    }

    pub fn prime(&self) -> &Prime {
        &self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.prec == 0
    }

    pub fn is_exact_zero(&self) -> bool {
        self.prec == 0 && self.val >= EXACT
    }

    /// Certified valuation; `None` for (approximate) zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// Lower bound on the valuation: the valuation itself, or the absolute
    /// precision of a zero.
    pub fn min_valuation(&self) -> i64 {
        self.val
    }

    /// Number of known π-adic digits past the valuation.
    pub fn rel_prec(&self) -> u32 {
        self.prec
    }

    /// The element is known modulo `π^abs_prec`.
    pub fn abs_prec(&self) -> i64 {
        if self.is_exact_zero() {
            EXACT
        } else {
            self.val + self.prec as i64
        }
    }

    pub fn unit(&self) -> &Poly {
        &self.unit
    }

    /// Base-π digits of the unit part as residue-field elements.
    pub fn digits(&self) -> Result<Vec<Elem>> {
        let k = self.prime.residue_field()?;
        let mut out = Vec::with_capacity(self.prec as usize);
        let mut u = self.unit.clone();
        for _ in 0..self.prec {
            let (q, r) = u.divrem(self.prime.poly()).expect("nonzero prime");
            out.push(k.reduce(&r));
            u = q;
        }
        Ok(out)
    }

    pub fn from_digits(prime: &Prime, val: i64, digits: &[Elem]) -> Result<Self> {
        let k = prime.residue_field()?;
        if digits.first() == Some(&0) {
            return Err(Error::Parse("leading digit must be nonzero".into()));
        }
        if digits.iter().any(|&d| d >= k.field.size()) {
            return Err(Error::Parse("digit outside the residue field".into()));
        }
        let mut u = Poly::zero(prime.field());
        for &d in digits.iter().rev() {
            u = &(&u * prime.poly()) + &k.lift(d);
        }
        if digits.is_empty() {
            return Ok(Self::approx_zero(prime, val));
        }
        Ok(Self::from_unit(prime, val, &u, digits.len() as u32))
    }

    /// Leading digit in the residue field (zero for zero).
    pub fn leading_digit(&self) -> Result<Elem> {
        if self.is_zero() {
            return Ok(0);
        }
        Ok(self.prime.residue_field()?.reduce(&self.unit))
    }

    /// Lower the relative precision to at most `prec`.
    pub fn truncate_rel(&self, prec: u32) -> Self {
        if self.is_zero() || prec >= self.prec {
            return self.clone();
        }
        Self::from_unit(&self.prime, self.val, &self.unit, prec)
    }

    /// Lower the absolute precision to at most `abs`.
    pub fn truncate_abs(&self, abs: i64) -> Self {
        if abs >= self.abs_prec() {
            return self.clone();
        }
        if self.is_zero() || abs <= self.val {
            return Self::approx_zero(&self.prime, abs.min(self.val));
        }
        self.truncate_rel((abs - self.val) as u32)
    }

    /// `π^n·self`.
    pub fn shift(&self, n: i64) -> Self {
        let mut e = self.clone();
        if !e.is_exact_zero() {
            e.val += n;
        }
        e
    }

    pub fn neg(&self) -> Self {
        LocalElement {
            prime: self.prime.clone(),
            val: self.val,
            unit: -&self.unit,
            prec: self.prec,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_exact_zero() {
            return o.clone();
        }
        if o.is_exact_zero() {
            return self.clone();
        }
        let abs = self.abs_prec().min(o.abs_prec());
        let m = self.val.min(o.val);
        if abs <= m {
            return Self::approx_zero(&self.prime, abs);
        }
        let lift = |e: &Self| -> Poly {
            if e.is_zero() {
                Poly::zero(e.prime.field())
            } else {
                &e.unit * &e.prime.power((e.val - m) as usize)
            }
        };
        let s = &lift(self) + &lift(o);
        Self::from_residue(&self.prime, m, s, abs - m)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_exact_zero() || o.is_exact_zero() {
            return Self::zero(&self.prime);
        }
        if self.is_zero() || o.is_zero() {
            return Self::approx_zero(&self.prime, self.val + o.val);
        }
        let prec = self.prec.min(o.prec);
        let m = self.prime.power(prec as usize);
        LocalElement {
            prime: self.prime.clone(),
            val: self.val + o.val,
            unit: self.unit.mul_mod(&o.unit, &m),
            prec,
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let m = self.prime.power(self.prec as usize);
        Some(LocalElement {
            prime: self.prime.clone(),
            val: -self.val,
            unit: self.unit.inv_mod(&m).expect("unit"),
            prec: self.prec,
        })
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.prime, self.prec.max(1));
        if self.is_zero() {
            return if n == 0 { acc } else { Self::approx_zero(&self.prime, self.val.saturating_mul(n as i64)) };
        }
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Certified `v ≥ 0`.
    pub fn is_integral(&self) -> Result<bool> {
        if self.is_zero() {
            if self.val >= 0 {
                Ok(true)
            } else {
                Err(Error::precision("zero known only to negative absolute precision"))
            }
        } else {
            Ok(self.val >= 0)
        }
    }

    /// Representative in `A/℘^n` of an integral element.
    pub fn to_poly_mod(&self, n: u32) -> Result<Poly> {
        let f = self.prime.field();
        if n == 0 {
            return Ok(Poly::zero(f));
        }
        if self.abs_prec() < n as i64 {
            return Err(Error::precision(format!(
                "need absolute precision {n}, have {}",
                self.abs_prec()
            )));
        }
        if self.is_zero() || self.val >= n as i64 {
            return Ok(Poly::zero(f));
        }
        if self.val < 0 {
            return Err(Error::InvalidArgument("element is not integral".into()));
        }
        let m = self.prime.power(n as usize);
        Ok((&self.unit * &self.prime.power(self.val as usize)).rem(&m))
    }

    /// Exact equality of known data.
    pub fn same_as(&self, o: &Self) -> bool {
        self.val == o.val && self.prec == o.prec && self.unit == o.unit
    }

    /// Agreement up to the smaller absolute precision.
    pub fn agrees_with(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }
}

impl fmt::Display for LocalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact_zero() {
            return f.write_str("0");
        }
        if self.is_zero() {
            return write!(f, "O(π^{})", self.val);
        }
        write!(f, "π^{}·({}) + O(π^{})", self.val, self.unit, self.abs_prec())
    }
}

impl fmt::Debug for LocalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
