//! Finite extensions `F′ = F(y)` of `F = F_q(t)` with one place over `∞`.

mod index;
mod splitting;
mod zeta;

use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffpoly::factor::{first_irreducible, is_irreducible};
use crate::ffpoly::text::{format_poly, parse_field, parse_poly, parse_xpoly};
use crate::ffpoly::{factor, enumerate_primes, FiniteField, Poly, Prime};

pub use index::{index_ix, local_index, predegree};
pub use splitting::{splitting, SplittingType};
pub use zeta::{class_number, count_places, point_counts, zeta_numerator, ZetaData};

/// Ramification data of the places over `∞` (caller-supplied for generic
/// extensions).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfinityData {
    pub places: u32,
    pub e: u32,
    pub f: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionKind {
    /// `F_{q^n}(t)`.
    Constant { n: u32 },
    /// `y^n = a(t)`.
    Kummer { n: u32, a: Poly },
    /// `y^p − y = a(t)`.
    ArtinSchreier { a: Poly },
    /// Any monic `f(t, y)`, with genus and `∞`-data taken on trust.
    Generic { infinity: InfinityData },
}

/// JSON form, e.g. `{"kind": "kummer", "n": 2, "a": "t^3+2*t", "base": "3^1"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ExtensionSpec {
    Constant {
        n: u32,
        base: String,
    },
    Kummer {
        n: u32,
        a: String,
        base: String,
    },
    ArtinSchreier {
        a: String,
        base: String,
    },
    Generic {
        f: String,
        genus: u64,
        infinity: InfinityData,
        base: String,
    },
}

#[derive(Clone, Debug)]
pub struct Extension {
    base: Arc<FiniteField>,
    kind: ExtensionKind,
    /// Monic in `y`, coefficients in `A`, lowest first.
    defining: Vec<Poly>,
    genus: u64,
    constant_degree: u32,
    disc_support: Vec<Prime>,
    separable: bool,
}

impl Extension {
    /// `F` itself, as the degree-1 constant extension.
    pub fn rational(base: &Arc<FiniteField>) -> Self {
        Self::constant(base, 1).expect("trivial extension")
    }

    pub fn constant(base: &Arc<FiniteField>, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("constant extension degree must be positive".into()));
        }
        let g = first_irreducible(base, n as usize)?;
        let defining = g.coeffs().iter().map(|&c| Poly::constant(base, c)).collect();
        Ok(Extension {
            base: base.clone(),
            kind: ExtensionKind::Constant { n },
            defining,
            genus: 0,
            constant_degree: n,
            disc_support: Vec::new(),
            separable: true,
        })
    }

    pub fn kummer(base: &Arc<FiniteField>, n: u32, a: Poly) -> Result<Self> {
        let p = base.characteristic();
        if n < 2 {
            return Err(Error::UnsupportedShape("Kummer degree must be at least 2".into()));
        }
        if (n as u64).gcd(&p) != 1 {
            return Err(Error::UnsupportedShape(format!("Kummer degree {n} is divisible by p = {p}")));
        }
        let deg = match a.degree() {
            Some(d) if d >= 1 => d as u32,
            _ => return Err(Error::UnsupportedShape("Kummer radicand must be non-constant".into())),
        };
        let g = n.gcd(&deg);
        if g != 1 {
            // Over ∞ the fibre is governed by z^g = lc(a).
            let mut z = vec![0; g as usize + 1];
            z[0] = base.neg(a.leading());
            z[g as usize] = 1;
            let fz = factor(&Poly::new(base, z))?;
            if fz.factors.len() > 1 {
                return Err(Error::MultipleInfinitePlaces);
            }
            return Err(Error::UnsupportedShape(
                "gcd(n, deg a) > 1 enlarges the constant field".into(),
            ));
        }
        let fz = factor(&a)?;
        let mut ram = 0u64;
        let mut disc_support = Vec::new();
        for (f, v) in &fz.factors {
            ram += (n - n.gcd(v)) as u64 * f.degree().unwrap_or(0) as u64;
            disc_support.push(Prime::new(f.clone())?);
        }
        // 2g − 2 = −2n + ram + (n − 1)
        let twice = ram + 1 - n as u64;
        let mut defining = vec![Poly::zero(base); n as usize + 1];
        defining[0] = -&a;
        defining[n as usize] = Poly::one(base);
        Ok(Extension {
            base: base.clone(),
            kind: ExtensionKind::Kummer { n, a },
            defining,
            genus: twice / 2,
            constant_degree: 1,
            disc_support,
            separable: true,
        })
    }

    pub fn artin_schreier(base: &Arc<FiniteField>, a: Poly) -> Result<Self> {
        let p = base.characteristic();
        let d = match a.degree() {
            Some(d) if d >= 1 => d as u64,
            _ => return Err(Error::UnsupportedShape("Artin-Schreier term must be non-constant".into())),
        };
        if d % p == 0 {
            return Err(Error::UnsupportedShape(format!("deg a = {d} is divisible by p = {p}")));
        }
        let mut defining = vec![Poly::zero(base); p as usize + 1];
        defining[0] = -&a;
        defining[1] = -&Poly::one(base);
        defining[p as usize] = Poly::one(base);
        Ok(Extension {
            base: base.clone(),
            kind: ExtensionKind::ArtinSchreier { a },
            defining,
            genus: (p - 1) * (d - 1) / 2,
            constant_degree: 1,
            disc_support: Vec::new(),
            separable: true,
        })
    }

    /// `f` monic in `y` with coefficients in `A`, lowest first.
    pub fn generic(base: &Arc<FiniteField>, f: Vec<Poly>, genus: u64, infinity: InfinityData) -> Result<Self> {
        let m = f.len().checked_sub(1).filter(|&m| m >= 1).ok_or_else(|| {
            Error::UnsupportedShape("defining polynomial must have positive degree in x".into())
        })?;
        if !f[m].is_one() {
            return Err(Error::UnsupportedShape("defining polynomial must be monic in x".into()));
        }
        if infinity.places != 1 {
            return Err(Error::MultipleInfinitePlaces);
        }
        if (infinity.e * infinity.f) as usize != m {
            return Err(Error::InvalidArgument(format!(
                "infinity data e·f = {} does not match the degree {m}",
                infinity.e * infinity.f
            )));
        }
        let p = base.characteristic();
        let separable = f
            .iter()
            .enumerate()
            .skip(1)
            .any(|(i, c)| !(i as u64).is_multiple_of(p) && !c.is_zero());
        let disc_support = if separable {
            if !generic_irreducible(base, &f)? {
                return Err(Error::ReducibleDefiningPolynomial);
            }
            let disc = discriminant(&f);
            if disc.is_zero() {
                return Err(Error::ReducibleDefiningPolynomial);
            }
            factor(&disc)?
                .factors
                .into_iter()
                .map(|(g, _)| Prime::new(g))
                .collect::<Result<Vec<_>>>()?
        } else {
            if m as u64 != p || f[1..m].iter().any(|c| !c.is_zero()) {
                return Err(Error::UnsupportedShape("inseparable input must have the form x^p − a".into()));
            }
            let a = -&f[0];
            let is_pth_power = a
                .coeffs()
                .iter()
                .enumerate()
                .all(|(i, &c)| c == 0 || (i as u64).is_multiple_of(p));
            if is_pth_power {
                return Err(Error::ReducibleDefiningPolynomial);
            }
            Vec::new()
        };
        Ok(Extension {
            base: base.clone(),
            kind: ExtensionKind::Generic { infinity },
            defining: f,
            genus,
            constant_degree: 1,
            disc_support,
            separable,
        })
    }

    pub fn from_spec(spec: &ExtensionSpec) -> Result<Self> {
        match spec {
            ExtensionSpec::Constant { n, base } => Self::constant(&parse_field(base)?, *n),
            ExtensionSpec::Kummer { n, a, base } => {
                let field = parse_field(base)?;
                let a = parse_poly(a, &field)?;
                Self::kummer(&field, *n, a)
            }
            ExtensionSpec::ArtinSchreier { a, base } => {
                let field = parse_field(base)?;
                let a = parse_poly(a, &field)?;
                Self::artin_schreier(&field, a)
            }
            ExtensionSpec::Generic { f, genus, infinity, base } => {
                let field = parse_field(base)?;
                let x = parse_xpoly(f, &field)?;
                let coeffs = x.poly_coeffs().ok_or_else(|| {
                    Error::UnsupportedShape("coefficients of f must be polynomials in t".into())
                })?;
                Self::generic(&field, coeffs, *genus, *infinity)
            }
        }
    }

    pub fn to_spec(&self) -> ExtensionSpec {
        let base = self.base.spec();
        match &self.kind {
            ExtensionKind::Constant { n } => ExtensionSpec::Constant { n: *n, base },
            ExtensionKind::Kummer { n, a } => ExtensionSpec::Kummer {
                n: *n,
                a: format_poly(a, "t"),
                base,
            },
            ExtensionKind::ArtinSchreier { a } => ExtensionSpec::ArtinSchreier {
                a: format_poly(a, "t"),
                base,
            },
            ExtensionKind::Generic { infinity } => ExtensionSpec::Generic {
                f: crate::ffpoly::text::XPoly {
                    coeffs: self
                        .defining
                        .iter()
                        .map(|c| crate::ffpoly::RatFunc::from_poly(c.clone()))
                        .collect(),
                }
                .format(),
                genus: self.genus,
                infinity: *infinity,
                base,
            },
        }
    }

    pub fn base(&self) -> &Arc<FiniteField> {
        &self.base
    }

    pub fn kind(&self) -> &ExtensionKind {
        &self.kind
    }

    /// `[F′ : F]`.
    pub fn degree(&self) -> usize {
        self.defining.len() - 1
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// `[F_{q′} : F_q]`.
    pub fn constant_degree(&self) -> u32 {
        self.constant_degree
    }

    /// Size `q′` of the constant field.
    pub fn constant_field_size(&self) -> u64 {
        self.base.size().pow(self.constant_degree)
    }

    pub fn defining_poly(&self) -> &[Poly] {
        &self.defining
    }

    /// Primes where `A[y]` may fail to be maximal.
    pub fn disc_support(&self) -> &[Prime] {
        &self.disc_support
    }

    pub fn is_separable(&self) -> bool {
        self.separable
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// Residue degree of the place over `∞`, relative to `F_q`.
    pub fn infinity_residue_degree(&self) -> u32 {
        match &self.kind {
            ExtensionKind::Constant { n } => *n,
            ExtensionKind::Generic { infinity } => infinity.f,
            _ => 1,
        }
    }

    /// Same construction over the same base field.
    pub fn same_as(&self, other: &Extension) -> bool {
        self.base.size() == other.base.size() && self.to_spec() == other.to_spec()
    }

    /// Galois over `F` by construction: constant extensions, Kummer with
    /// `n | q − 1`, Artin-Schreier.
    pub fn is_normal_by_construction(&self) -> bool {
        match &self.kind {
            ExtensionKind::Constant { .. } | ExtensionKind::ArtinSchreier { .. } => true,
            ExtensionKind::Kummer { n, .. } => (self.base.size() - 1).is_multiple_of(*n as u64),
            ExtensionKind::Generic { .. } => self.is_rational(),
        }
    }
}

/// Resultant-based discriminant `Res_y(f, ∂f/∂y)` up to sign.
fn discriminant(f: &[Poly]) -> Poly {
    let field = f[0].field().clone();
    let df: Vec<Poly> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(field.from_int(i as i64)))
        .collect();
    let df = trim(df);
    resultant(f, &df)
}

fn trim(mut v: Vec<Poly>) -> Vec<Poly> {
    while v.len() > 1 && v.last().is_some_and(Poly::is_zero) {
        v.pop();
    }
    v
}

/// Sylvester resultant over `F_q[t]` by fraction-free elimination.
fn resultant(f: &[Poly], g: &[Poly]) -> Poly {
    let field = f[0].field().clone();
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    if size == 0 {
        return Poly::one(&field);
    }
    let mut a = vec![vec![Poly::zero(&field); size]; size];
    for i in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            a[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            a[n + i][i + j] = c.clone();
        }
    }
    bareiss_det(a)
}

fn bareiss_det(mut a: Vec<Vec<Poly>>) -> Poly {
    let n = a.len();
    let field = a[0][0].field().clone();
    let mut sign = false;
    let mut prev = Poly::one(&field);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return Poly::zero(&field),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// Irreducibility over `F` of a separable monic `f ∈ A[y]`: root search in
/// `A` for degree ≤ 3, otherwise an irreducible reduction modulo a prime.
fn generic_irreducible(base: &Arc<FiniteField>, f: &[Poly]) -> Result<bool> {
    let m = f.len() - 1;
    if m == 1 {
        return Ok(true);
    }
    // Irreducible modulo some prime ⇒ irreducible.
    for prime in enumerate_primes(base, 3)? {
        let k = prime.residue_field()?;
        let fbar = Poly::new(&k.field, f.iter().map(|c| k.reduce(c)).collect());
        if fbar.degree() == Some(m) && is_irreducible(&fbar) {
            return Ok(true);
        }
    }
    if m > 3 {
        return Err(Error::UnsupportedShape(
            "cannot certify irreducibility of a generic polynomial of degree above 3".into(),
        ));
    }
    Ok(!has_root_in_a(base, f)?)
}

/// A root in `F` of monic `f ∈ A[y]` lies in `A` and divides `f(0)`.
fn has_root_in_a(base: &Arc<FiniteField>, f: &[Poly]) -> Result<bool> {
    let eval = |y: &Poly| {
        let mut acc = Poly::zero(base);
        for c in f.iter().rev() {
            acc = &(&acc * y) + c;
        }
        acc
    };
    if f[0].is_zero() {
        return Ok(true);
    }
    let fz = factor(&f[0])?;
    let mut divisors = vec![Poly::one(base)];
    for (g, e) in &fz.factors {
        let mut next = Vec::new();
        for d in &divisors {
            let mut cur = d.clone();
            for _ in 0..=*e {
                next.push(cur.clone());
                cur = &cur * g;
            }
        }
        divisors = next;
    }
    for d in &divisors {
        for c in 1..base.size() {
            if eval(&d.scale(c)).is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Arc<FiniteField> {
        FiniteField::prime(p).unwrap()
    }

    #[test]
    fn constant_quadratic_over_f3() {
        let e = Extension::constant(&f(3), 2).unwrap();
        assert_eq!(e.genus(), 0);
        assert_eq!(e.constant_field_size(), 9);
        assert_eq!(e.degree(), 2);
    }

    #[test]
    fn elliptic_kummer_over_f3() {
        let k = f(3);
        let a = parse_poly("t^3-t", &k).unwrap();
        let e = Extension::kummer(&k, 2, a).unwrap();
        assert_eq!(e.genus(), 1);
        assert_eq!(e.disc_support().len(), 3);
    }

    #[test]
    fn artin_schreier_over_f2() {
        let k = f(2);
        let e = Extension::artin_schreier(&k, parse_poly("t^3", &k).unwrap()).unwrap();
        assert_eq!(e.genus(), 1);
    }

    #[test]
    fn kummer_with_even_degree_radicand_is_refused() {
        let k = f(3);
        // y² = t² + 1: lc 1 is a square, two places over ∞.
        let err = Extension::kummer(&k, 2, parse_poly("t^2+1", &k).unwrap()).unwrap_err();
        assert_eq!(err, Error::MultipleInfinitePlaces);
        // y² = 2t² + 1: z² = 2 is irreducible, constant field grows.
        let err = Extension::kummer(&k, 2, parse_poly("2*t^2+1", &k).unwrap()).unwrap_err();
        assert!(matches!(err, Error::UnsupportedShape(_)));
    }

    #[test]
    fn generic_reducible_is_refused() {
        let k = f(3);
        let spec = ExtensionSpec::Generic {
            f: "x^2-t^2".into(),
            genus: 0,
            infinity: InfinityData { places: 1, e: 2, f: 1 },
            base: "3^1".into(),
        };
        assert_eq!(Extension::from_spec(&spec).unwrap_err(), Error::ReducibleDefiningPolynomial);
        let _ = k;
    }

    #[test]
    fn generic_discriminant_support() {
        let spec = ExtensionSpec::Generic {
            f: "x^2-t^3+t".into(),
            genus: 1,
            infinity: InfinityData { places: 1, e: 2, f: 1 },
            base: "3^1".into(),
        };
        let e = Extension::from_spec(&spec).unwrap();
        let support: Vec<String> = e.disc_support().iter().map(|p| p.to_string()).collect();
        assert_eq!(support, vec!["t", "t+1", "t+2"]);
        assert!(e.is_separable());
    }

    #[test]
    fn inseparable_generic() {
        let spec = ExtensionSpec::Generic {
            f: "x^2-t".into(),
            genus: 0,
            infinity: InfinityData { places: 1, e: 2, f: 1 },
            base: "2^1".into(),
        };
        let e = Extension::from_spec(&spec).unwrap();
        assert!(!e.is_separable());
        let bad = ExtensionSpec::Generic {
            f: "x^2-t^2".into(),
            genus: 0,
            infinity: InfinityData { places: 1, e: 2, f: 1 },
            base: "2^1".into(),
        };
        assert_eq!(Extension::from_spec(&bad).unwrap_err(), Error::ReducibleDefiningPolynomial);
    }

    #[test]
    fn multiple_places_at_infinity_are_refused() {
        let spec = ExtensionSpec::Generic {
            f: "x^2-t".into(),
            genus: 0,
            infinity: InfinityData { places: 2, e: 1, f: 1 },
            base: "3^1".into(),
        };
        assert_eq!(Extension::from_spec(&spec).unwrap_err(), Error::MultipleInfinitePlaces);
    }

    #[test]
    fn spec_round_trip() {
        let src = r#"{"kind":"kummer","n":2,"a":"t^3+2*t","base":"3^1"}"#;
        let spec: ExtensionSpec = serde_json::from_str(src).unwrap();
        let e = Extension::from_spec(&spec).unwrap();
        let again = serde_json::to_string(&e.to_spec()).unwrap();
        let spec2: ExtensionSpec = serde_json::from_str(&again).unwrap();
        assert_eq!(Extension::from_spec(&spec2).unwrap().to_spec(), spec2);
    }
}
