use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::ffpoly::{factor, Poly, Prime};
use crate::localfield::counting::gl_count;
use crate::localfield::element::LocalElement;
use crate::localfield::matrix::LocalMatrix;

/// `R′^{r′}` with `R′ = A_℘[y]/(f)`, realised on `A_℘^r` (`r = r′·deg f`)
/// through the power basis `y^i·e_b`, coordinate `b·m + i`.
#[derive(Clone, Debug)]
pub struct OrderStructure {
    prime: Prime,
    r_prime: usize,
    f: Vec<Poly>,
    generator: LocalMatrix,
    /// `(deg g_i, e_i)` for `f ≡ ∏ g_i^{e_i} mod ℘` over `k(℘)`.
    residue_factors: Vec<(usize, u32)>,
    prec: u32,
}

impl OrderStructure {
    /// `f` is monic in `y` with coefficients in `A`, lowest first. Refuses
    /// with `UnsupportedRamifiedPrime` unless `A_℘[y]/(f)` is the maximal
    /// order at `℘` (Dedekind's criterion).
    pub fn new(prime: &Prime, f: &[Poly], r_prime: usize, prec: u32) -> Result<Self> {
        let m = f.len().checked_sub(1).filter(|&m| m >= 1).ok_or_else(|| {
            Error::InvalidArgument("generator polynomial must have positive degree".into())
        })?;
        if !f[m].is_one() {
            return Err(Error::InvalidArgument("generator polynomial must be monic".into()));
        }
        if r_prime == 0 {
            return Err(Error::InvalidArgument("r′ must be positive".into()));
        }
        let residue_factors = dedekind(prime, f)?;
        let comp = LocalMatrix::from_polys(prime, &companion(f), prec)?;
        let generator = LocalMatrix::block_diag(&vec![comp; r_prime]);
        Ok(OrderStructure {
            prime: prime.clone(),
            r_prime,
            f: f.to_vec(),
            generator,
            residue_factors,
            prec,
        })
    }

    /// `R′ = A_℘`, acting on `A_℘^r` with `r′ = r`.
    pub fn trivial(prime: &Prime, r: usize, prec: u32) -> Self {
        let field = prime.field();
        Self::new(prime, &[Poly::zero(field), Poly::one(field)], r, prec).expect("linear order")
    }

    pub fn prime(&self) -> &Prime {
        &self.prime
    }

    pub fn r_prime(&self) -> usize {
        self.r_prime
    }

    pub fn m(&self) -> usize {
        self.f.len() - 1
    }

    pub fn r(&self) -> usize {
        self.r_prime * self.m()
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn defining_poly(&self) -> &[Poly] {
        &self.f
    }

    /// Block-companion matrix of multiplication by `y`.
    pub fn generator(&self) -> &LocalMatrix {
        &self.generator
    }

    pub fn residue_factors(&self) -> &[(usize, u32)] {
        &self.residue_factors
    }

    /// Companion matrix of `f` (one block) with entries in `A`.
    pub fn companion_block(&self) -> Vec<Vec<Poly>> {
        companion(&self.f)
    }

    /// `|GL_{r′}(R′/℘^k R′)|`.
    pub fn gl_order(&self, k: u32) -> BigUint {
        let kp = self.prime.residue_size();
        let mut acc = BigUint::from(1u32);
        for &(d, e) in &self.residue_factors {
            let qi = BigUint::from(kp).pow(d as u32);
            acc *= gl_count(self.r_prime, &qi, e * k);
        }
        acc
    }

    /// Whether the columns of `b` are closed under `y` and their `R′`-span
    /// is all of `R′^{r′}`.
    pub fn saturates(&self, basis: &LocalMatrix) -> Result<bool> {
        let mut span = basis.clone();
        let mut cur = basis.clone();
        for _ in 1..self.m() {
            cur = self.generator.mul(&cur);
            span = span.hcat(&cur);
        }
        let s = crate::localfield::snf::smith_normal_form(&span)?;
        Ok(s.exponents.iter().all(|&e| e == 0))
    }

    /// The generator evaluated as an element of `F_℘`-matrices conjugated
    /// by `b`: `b^{-1}·C·b`.
    pub fn conjugated_generator(&self, b: &LocalMatrix) -> Result<LocalMatrix> {
        Ok(b.inverse()?.mul(&self.generator).mul(b))
    }

    pub fn one(&self) -> LocalElement {
        LocalElement::one(&self.prime, self.prec)
    }
}

/// Companion matrix acting on column vectors in the basis `1, y, …`.
pub fn companion(f: &[Poly]) -> Vec<Vec<Poly>> {
    let m = f.len() - 1;
    let field = f[0].field().clone();
    let mut c = vec![vec![Poly::zero(&field); m]; m];
    for i in 0..m - 1 {
        c[i + 1][i] = Poly::one(&field);
    }
    for (j, row) in c.iter_mut().enumerate() {
        row[m - 1] = -&f[j];
    }
    c
}

fn bmul(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let field = a[0].field().clone();
    let mut out = vec![Poly::zero(&field); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Residue factor data of `f mod ℘`, refusing non-maximal `A_℘[y]/(f)`.
fn dedekind(prime: &Prime, f: &[Poly]) -> Result<Vec<(usize, u32)>> {
    let k = prime.residue_field()?;
    let fbar = Poly::new(&k.field, f.iter().map(|c| k.reduce(c)).collect());
    let fz = factor(&fbar)?;
    let data: Vec<(usize, u32)> = fz
        .factors
        .iter()
        .map(|(g, e)| (g.degree().unwrap_or(0), *e))
        .collect();
    if fz.factors.iter().all(|(_, e)| *e == 1) {
        return Ok(data);
    }
    let lift = |g: &Poly| -> Vec<Poly> { g.coeffs().iter().map(|&c| k.lift(c)).collect() };
    let mut prod = vec![Poly::one(prime.field())];
    for (g, e) in &fz.factors {
        for _ in 0..*e {
            prod = bmul(&prod, &lift(g));
        }
    }
    let fbar_big = Poly::new(
        &k.field,
        f.iter()
            .zip(prod.iter().chain(std::iter::repeat(&Poly::zero(prime.field()))))
            .map(|(a, b)| {
                let d = a - b;
                let (q, r) = d.divrem(prime.poly()).expect("nonzero prime");
                debug_assert!(r.is_zero());
                k.reduce(&q)
            })
            .collect(),
    );
    for (g, e) in &fz.factors {
        if *e >= 2 && g.divides(&fbar_big) {
            return Err(Error::UnsupportedRamifiedPrime(format!(
                "{prime}: A[y] is not maximal here"
            )));
        }
    }
    Ok(data)
}
