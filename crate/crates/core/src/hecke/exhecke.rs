use crate::error::{Error, Result};
use crate::ffpoly::{Elem, Poly, Prime};
use crate::goodprime::{GoodPrimeCertificate, SubvarietyDatum};
use crate::linalg;
use crate::localfield::{LocalElement, LocalMatrix};

use super::element::HeckeElement;

fn horner(coeffs: &[LocalElement], y: &LocalElement) -> LocalElement {
    let mut acc = coeffs.last().expect("non-empty").clone();
    for c in coeffs.iter().rev().skip(1) {
        acc = acc.mul(y).add(c);
    }
    acc
}

/// A root of `f` in `A_℘` lifting a simple root of `f mod ℘`.
fn hensel_root(f: &[LocalElement], fbar: &[Poly], prime: &Prime, prec: u32) -> Result<LocalElement> {
    let res = prime.residue_field()?;
    let field = &res.field;
    let red: Vec<Elem> = fbar.iter().map(|c| res.reduce(c)).collect();
    let df: Vec<LocalElement> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul(&LocalElement::from_poly(prime, &Poly::constant(prime.field(), prime.field().from_int(i as i64)), prec)))
        .collect();
    let eval = |cs: &[Elem], x: Elem| cs.iter().rev().fold(0, |acc, &c| field.add(field.mul(acc, x), c));
    let dred: Vec<Elem> = red
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| field.mul(c, field.from_int(i as i64)))
        .collect();
    let alpha = field
        .elements()
        .find(|&x| eval(&red, x) == 0 && eval(&dred, x) != 0)
        .ok_or_else(|| Error::UnsupportedRamifiedPrime(prime.to_string()))?;

    let mut y = LocalElement::from_poly(prime, &res.lift(alpha), prec);
    for _ in 0..64 {
        let fy = horner(f, &y);
        if fy.is_zero() || fy.min_valuation() >= prec as i64 {
            return Ok(y.truncate_abs(prec as i64));
        }
        let step = fy
            .div(&horner(&df, &y))
            .ok_or_else(|| Error::precision("derivative vanished during lifting"))?;
        y = y.sub(&step);
    }
    Err(Error::precision("Newton iteration did not converge"))
}

/// An element `g_℘ = s·T·diag(π^{-1}, 1, …, 1)·T^{-1}·s^{-1}` in the
/// centralizer of `F′` whose `π^{-1}`-line lies in the eigenspace of the
/// generator for the degree-one place of the certificate.
pub fn exhecke_element(datum: &SubvarietyDatum, cert: &GoodPrimeCertificate) -> Result<HeckeElement> {
    let prime = &cert.prime;
    let prec = datum.precision();
    let r = datum.r;
    let rp = datum.r_prime();
    let fpoly = datum.extension.defining_poly();
    let f: Vec<LocalElement> = fpoly.iter().map(|c| LocalElement::from_poly(prime, c, prec)).collect();
    let y0 = hensel_root(&f, fpoly, prime, prec)?;

    // h = f / (y − y0), lowest coefficient first.
    let m = f.len() - 1;
    let mut h = vec![LocalElement::zero(prime); m];
    h[m - 1] = f[m].clone();
    for i in (1..m).rev() {
        h[i - 1] = f[i].add(&y0.mul(&h[i]));
    }

    let mw = &cert.stability_witness;
    let mut hm = LocalMatrix::zeros(prime, r, r);
    let mut power = LocalMatrix::identity(prime, r, prec);
    for (i, c) in h.iter().enumerate() {
        if i > 0 {
            power = power.mul(mw);
        }
        hm = hm.add(&power.scale(c));
    }
    let hy0 = horner(&h, &y0)
        .inv()
        .ok_or_else(|| Error::UnsupportedRamifiedPrime(prime.to_string()))?;
    let e = hm.scale(&hy0);
    let id = LocalMatrix::identity(prime, r, prec);
    let comp = id.sub(&e);

    let res = prime.residue_field()?;
    let column = |mat: &LocalMatrix, j: usize| -> Result<Vec<Elem>> {
        (0..r).map(|i| Ok(res.reduce(&mat.get(i, j).to_poly_mod(1)?))).collect()
    };
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(r);
    let mut rows: Vec<Vec<Elem>> = Vec::with_capacity(r);
    for (which, mat, want) in [(0usize, &e, rp), (1, &comp, r - rp)] {
        let mut taken = 0;
        for j in 0..r {
            if taken == want {
                break;
            }
            let mut trial = rows.clone();
            trial.push(column(mat, j)?);
            if linalg::rank(&res.field, &trial) == trial.len() {
                rows = trial;
                chosen.push((which, j));
                taken += 1;
            }
        }
        if taken != want {
            return Err(Error::precision("eigenspace does not reduce to the expected rank"));
        }
    }
    let t = LocalMatrix::from_fn(prime, r, r, |i, j| {
        let (which, col) = chosen[j];
        if which == 0 { e.get(i, col).clone() } else { comp.get(i, col).clone() }
    });
    HeckeElement::from_conjugator(cert.s.mul(&t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::Extension;
    use crate::ffpoly::text::parse_poly;
    use crate::ffpoly::FiniteField;
    use crate::goodprime::{is_good_prime, shrink_level, LevelMap};
    use crate::hecke::{hecke_degree, unboundedness_sample_check};
    use num_bigint::BigUint;

    fn check(ext: Extension, r: usize, prime: &str) {
        let k = ext.base().clone();
        let p = Prime::new(parse_poly(prime, &k).unwrap()).unwrap();
        let (level, _) = shrink_level(&LevelMap::maximal(&k, r, 12), &p).unwrap();
        let datum = SubvarietyDatum::new(ext, r, level).unwrap();
        let cert = is_good_prime(&datum, &p).unwrap().certificate().unwrap().clone();
        let g = exhecke_element(&datum, &cert).unwrap();
        let inner = cert.s.inverse().unwrap().mul(&g.matrix).mul(&cert.s);
        // Commutes with the generator.
        let w = &cert.stability_witness;
        assert!(inner.mul(w).sub(&w.mul(&inner)).min_valuation().is_none_or(|v| v >= 6));
        let degree = hecke_degree(&inner, 1, 1 << 20).unwrap();
        assert_eq!(degree, BigUint::from(p.residue_size()).pow(r as u32 - 1));
        let report = unboundedness_sample_check(&inner, 8, 0).unwrap();
        assert_eq!(report.passed, 8);
    }

    #[test]
    fn split_prime_of_elliptic_field() {
        let k = FiniteField::prime(3).unwrap();
        check(Extension::kummer(&k, 2, parse_poly("t^3-t", &k).unwrap()).unwrap(), 2, "t^2+1");
    }

    #[test]
    fn rank_four_over_artin_schreier_field() {
        let k = FiniteField::prime(2).unwrap();
        check(Extension::artin_schreier(&k, parse_poly("t^3", &k).unwrap()).unwrap(), 4, "t");
    }

    #[test]
    fn rational_field() {
        let k = FiniteField::prime(2).unwrap();
        check(Extension::rational(&k), 3, "t^2+t+1");
    }
}
