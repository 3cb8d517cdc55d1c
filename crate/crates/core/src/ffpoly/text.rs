//! Text forms of polynomials and field specs.
//!
//! Output is a `+`-joined list of `c*t^k` terms in descending degree, with
//! coefficient 1 omitted. Input accepts arithmetic expressions in `t` and
//! `x` built from `+ - * / ^` and parentheses. Integer literals denote field
//! elements: residues mod `p` over a prime field, element indices otherwise.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffpoly::field::{Elem, FiniteField};
use crate::ffpoly::poly::Poly;
use crate::ffpoly::ratfunc::RatFunc;

pub fn format_poly(p: &Poly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (k, &c) in p.coeffs().iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        terms.push(match (k, c) {
            (0, _) => c.to_string(),
            (1, 1) => var.to_string(),
            (1, _) => format!("{c}*{var}"),
            (_, 1) => format!("{var}^{k}"),
            _ => format!("{c}*{var}^{k}"),
        });
    }
    terms.join("+")
}

/// A polynomial in `x` with coefficients in `F_q(t)`, lowest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XPoly {
    pub coeffs: Vec<RatFunc>,
}

impl XPoly {
    fn trim(mut self) -> Self {
        while self.coeffs.last().is_some_and(RatFunc::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn constant(c: RatFunc) -> Self {
        XPoly { coeffs: vec![c] }.trim()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, field: &Arc<FiniteField>, i: usize) -> RatFunc {
        self.coeffs.get(i).cloned().unwrap_or_else(|| RatFunc::zero(field))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_poly() && c.num().is_one())
    }

    /// Coefficient polynomials when every coefficient lies in `F_q[t]`.
    pub fn poly_coeffs(&self) -> Option<Vec<Poly>> {
        self.coeffs
            .iter()
            .map(|c| c.is_poly().then(|| c.num().clone()))
            .collect()
    }

    fn combine(&self, o: &XPoly, field: &Arc<FiniteField>, sub: bool) -> XPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let (a, b) = (self.coeff(field, i), o.coeff(field, i));
                if sub {
                    a.sub(&b)
                } else {
                    a.add(&b)
                }
            })
            .collect();
        XPoly { coeffs }.trim()
    }

    fn mul(&self, o: &XPoly, field: &Arc<FiniteField>) -> XPoly {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return XPoly { coeffs: Vec::new() };
        }
        let mut coeffs = vec![RatFunc::zero(field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        XPoly { coeffs }.trim()
    }

    pub fn format(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = if c.is_poly() {
                let s = c.num().to_string();
                if c.num().is_constant() || k == 0 {
                    s
                } else {
                    format!("({s})")
                }
            } else {
                c.to_string()
            };
            let xs = match k {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{k}"),
            };
            terms.push(match (k, cs.as_str()) {
                (0, _) => cs.clone(),
                (_, "1") => xs,
                _ => format!("{cs}*{xs}"),
            });
        }
        terms.join("+")
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a Arc<FiniteField>,
    allow_x: bool,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at offset {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("expected an integer"))
    }

    fn element(&self, n: u64) -> Result<Elem> {
        if self.field.is_prime_field() {
            Ok(n % self.field.characteristic())
        } else if n < self.field.size() {
            Ok(n)
        } else {
            Err(self.err(&format!("element index {n} outside field of size {}", self.field.size())))
        }
    }

    fn scalar(&self, r: RatFunc) -> XPoly {
        XPoly::constant(r)
    }

    fn expr(&mut self) -> Result<XPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.combine(&t, self.field, false);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.combine(&t, self.field, true);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<XPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let u = self.unary()?;
                    acc = acc.mul(&u, self.field);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let u = self.unary()?;
                    let d = match u.coeffs.as_slice() {
                        [c] => c.clone(),
                        [] => return Err(self.err("division by zero")),
                        _ => return Err(self.err("division by a polynomial in x")),
                    };
                    let inv = d.inv().ok_or_else(|| self.err("division by zero"))?;
                    acc = acc.mul(&self.scalar(inv), self.field);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<XPoly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let u = self.unary()?;
            return Ok(XPoly { coeffs: Vec::new() }.combine(&u, self.field, true));
        }
        if self.peek() == Some(b'+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<XPoly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = self.integer()?;
        if neg {
            let c = match base.coeffs.as_slice() {
                [c] => c.clone(),
                _ => return Err(self.err("negative power of a polynomial in x")),
            };
            let r = c
                .pow(-(e as i64))
                .ok_or_else(|| self.err("division by zero"))?;
            return Ok(self.scalar(r));
        }
        let mut acc = self.scalar(RatFunc::one(self.field));
        for _ in 0..e {
            acc = acc.mul(&base, self.field);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<XPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(self.scalar(RatFunc::from_poly(Poly::var(self.field))))
            }
            Some(b'x') if self.allow_x => {
                self.pos += 1;
                let one = RatFunc::one(self.field);
                Ok(XPoly {
                    coeffs: vec![RatFunc::zero(self.field), one],
                })
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let e = self.element(n)?;
                Ok(self.scalar(RatFunc::from_poly(Poly::constant(self.field, e))))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

fn run(src: &str, field: &Arc<FiniteField>, allow_x: bool) -> Result<XPoly> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        field,
        allow_x,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parses an expression in `t` and `x`.
pub fn parse_xpoly(src: &str, field: &Arc<FiniteField>) -> Result<XPoly> {
    run(src, field, true)
}

/// Parses an element of `F_q(t)`.
pub fn parse_ratfunc(src: &str, field: &Arc<FiniteField>) -> Result<RatFunc> {
    let e = run(src, field, false)?;
    Ok(e.coeffs.into_iter().next().unwrap_or_else(|| RatFunc::zero(field)))
}

/// Parses a polynomial in `t`.
pub fn parse_poly(src: &str, field: &Arc<FiniteField>) -> Result<Poly> {
    let r = parse_ratfunc(src, field)?;
    if !r.is_poly() {
        return Err(Error::Parse(format!("{src:?} is not a polynomial")));
    }
    Ok(r.num().clone())
}

/// Parses a field spec `p^e` or `p`.
pub fn parse_field(spec: &str) -> Result<Arc<FiniteField>> {
    let bad = || Error::Parse(format!("malformed field spec {spec:?}"));
    let (p, e) = match spec.trim().split_once('^') {
        Some((p, e)) => (
            p.trim().parse::<u64>().map_err(|_| bad())?,
            e.trim().parse::<u32>().map_err(|_| bad())?,
        ),
        None => (spec.trim().parse::<u64>().map_err(|_| bad())?, 1),
    };
    FiniteField::new(p, e)
}
