use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffpoly::{Elem, Poly, Prime};
use crate::linalg;
use crate::localfield::counting::poly_mat_mul;
use crate::localfield::{Lattice, OrderStructure};

use super::datum::SubvarietyDatum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sameness {
    Same,
    Different,
    /// The lattices agree modulo `℘^k`, but `k` is below `e_max + 1`.
    Inconclusive,
}

/// Whether `b_1(Â^r)` and `b_2(Â^r)` lie in one `GL_{r′}(A′_℘)`-orbit at
/// every prime of either twist support, by exhaustive search modulo `℘^k`.
pub fn same_subvariety(x1: &SubvarietyDatum, x2: &SubvarietyDatum, k: u32, budget: u64) -> Result<Sameness> {
    if !x1.extension.same_as(&x2.extension) || x1.r != x2.r {
        return Err(Error::InvalidArgument("data must share the extension and r".into()));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    let primes: BTreeSet<Prime> = x1.twists().chain(x2.twists()).map(|(p, _)| p.clone()).collect();
    let mut verdict = Sameness::Same;
    for p in &primes {
        match same_orbit_at(x1, x2, p, k, budget)? {
            Sameness::Different => return Ok(Sameness::Different),
            Sameness::Inconclusive => verdict = Sameness::Inconclusive,
            Sameness::Same => {}
        }
    }
    Ok(verdict)
}

fn same_orbit_at(x1: &SubvarietyDatum, x2: &SubvarietyDatum, prime: &Prime, k: u32, budget: u64) -> Result<Sameness> {
    let prec = x1.precision().max(x2.precision());
    let (g1, g2) = (x1.twist(prime), x2.twist(prime));
    let (l1, l2) = (Lattice::new(g1.clone())?, Lattice::new(g2.clone())?);
    if l1.same_as(&l2)? {
        return Ok(Sameness::Same);
    }
    if l1.elementary_divisors() != l2.elementary_divisors() {
        return Ok(Sameness::Different);
    }
    // A common scalar keeps the orbit relation and makes both integral.
    let c = l1.elementary_divisors()[0];
    let e_max = l1.elementary_divisors().last().copied().unwrap_or(0) - c;
    let (b1, b2) = (g1.shift(-c), g2.shift(-c));

    let order = OrderStructure::new(prime, x1.extension.defining_poly(), x1.r_prime(), prec)?;
    let field = prime.field().clone();
    let q = field.size();
    let d = prime.degree();
    let kd = k as usize * d;
    let (r, m, rp) = (order.r(), order.m(), order.r_prime());
    let n = (rp * rp * m * kd) as u32;
    let total = q
        .checked_pow(n)
        .filter(|&t| t <= budget)
        .ok_or_else(|| Error::budget(num_bigint::BigUint::from(q).pow(n), budget))?;

    let modulus = prime.power(k as usize);
    let b1p = b1.to_polys_mod(k)?;
    let target = span_mod(&b2.to_polys_mod(k)?, &modulus, kd);

    // F_q-basis t^j·C^i·E_ab of Mat_{r′}(R′/℘^k), and its products with B_1.
    let comp = order.companion_block();
    let mut powers = vec![identity(&field, m)];
    for i in 1..m {
        powers.push(poly_mat_mul(&powers[i - 1], &comp));
    }
    let mut gens: Vec<Vec<Vec<Poly>>> = Vec::new();
    let mut gens_red: Vec<Vec<Vec<Poly>>> = Vec::new();
    for a in 0..rp {
        for b in 0..rp {
            for cp in &powers {
                for j in 0..kd {
                    let tj = Poly::monomial(&field, 1, j);
                    let mut x = vec![vec![Poly::zero(&field); r]; r];
                    for u in 0..m {
                        for v in 0..m {
                            x[a * m + u][b * m + v] = (&cp[u][v] * &tj).rem(&modulus);
                        }
                    }
                    let xb = poly_mat_mul(&x, &b1p)
                        .into_iter()
                        .map(|row| row.into_iter().map(|e| e.rem(&modulus)).collect())
                        .collect();
                    gens.push(xb);
                    gens_red.push(x);
                }
            }
        }
    }
    let res = prime.residue_field()?;
    let p = field.characteristic();
    let e = field.degree();
    let scaled = |mats: &[Vec<Vec<Poly>>]| -> Vec<Vec<Vec<Poly>>> {
        mats.iter()
            .flat_map(|mt| (0..e).map(move |s| mt.iter().map(|row| row.iter().map(|x| x.scale(p.pow(s))).collect()).collect()))
            .collect()
    };
    let gens = scaled(&gens);
    let gens_red = scaled(&gens_red);

    let zero = vec![vec![Poly::zero(&field); r]; r];
    let mut acc = zero.clone();
    let mut acc_x = zero;
    let mut digits = vec![0u64; gens.len()];
    for step in 0..total {
        if step > 0 {
            let mut i = 0;
            loop {
                add_into(&mut acc, &gens[i]);
                add_into(&mut acc_x, &gens_red[i]);
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
        let xbar: Vec<Vec<Elem>> = acc_x.iter().map(|row| row.iter().map(|x| res.reduce(x)).collect()).collect();
        if !linalg::is_invertible(&res.field, &xbar) {
            continue;
        }
        if span_mod(&acc, &modulus, kd) == target {
            return Ok(if k as i64 > e_max { Sameness::Same } else { Sameness::Inconclusive });
        }
    }
    Ok(Sameness::Different)
}

fn identity(field: &std::sync::Arc<crate::ffpoly::FiniteField>, n: usize) -> Vec<Vec<Poly>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Poly::one(field) } else { Poly::zero(field) }).collect())
        .collect()
}

fn add_into(acc: &mut [Vec<Poly>], g: &[Vec<Poly>]) {
    for (row, grow) in acc.iter_mut().zip(g) {
        for (x, y) in row.iter_mut().zip(grow) {
            *x = &*x + y;
        }
    }
}

/// Reduced row echelon basis of the `F_q`-span of `t^j·(column)`, columns
/// taken modulo `℘^k`.
fn span_mod(cols: &[Vec<Poly>], modulus: &Poly, kd: usize) -> Vec<Vec<Elem>> {
    let field = modulus.field().clone();
    let r = cols.len();
    let ncols = cols.first().map_or(0, Vec::len);
    let mut vecs = Vec::with_capacity(ncols * kd);
    for c in 0..ncols {
        for j in 0..kd {
            let tj = Poly::monomial(&field, 1, j);
            let mut v = Vec::with_capacity(r * kd);
            for row in cols {
                let e = (&row[c] * &tj).rem(modulus);
                v.extend((0..kd).map(|i| e.coeff(i)));
            }
            vecs.push(v);
        }
    }
    let mut rows = vecs;
    let pivots = linalg::rref(&field, &mut rows);
    rows.truncate(pivots.len());
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::Extension;
    use crate::ffpoly::FiniteField;
    use crate::goodprime::LevelMap;
    use crate::localfield::LocalMatrix;

    fn base_datum(ext: Extension, r: usize) -> SubvarietyDatum {
        let k = ext.base().clone();
        SubvarietyDatum::new(ext, r, LevelMap::maximal(&k, r, 12)).unwrap()
    }

    #[test]
    fn datum_is_the_same_as_itself() {
        let k = FiniteField::prime(2).unwrap();
        let p = Prime::new(Poly::var(&k)).unwrap();
        let x = base_datum(Extension::rational(&k), 2).with_twist(&p, LocalMatrix::pi_diag(&p, &[0, 1], 12)).unwrap();
        assert_eq!(same_subvariety(&x, &x, 2, 1 << 16).unwrap(), Sameness::Same);
    }

    #[test]
    fn integral_unit_twist_is_the_standard_lattice() {
        let k = FiniteField::prime(2).unwrap();
        let p = Prime::new(Poly::var(&k)).unwrap();
        let mut u = LocalMatrix::identity(&p, 2, 12);
        u.set(0, 1, crate::localfield::LocalElement::from_poly(&p, &Poly::var(&k), 12));
        let x1 = base_datum(Extension::rational(&k), 2);
        let x2 = base_datum(Extension::rational(&k), 2).with_twist(&p, u).unwrap();
        assert_eq!(same_subvariety(&x1, &x2, 1, 1 << 16).unwrap(), Sameness::Same);
    }

    #[test]
    fn pi_twist_is_a_different_orbit() {
        let k = FiniteField::prime(2).unwrap();
        let p = Prime::new(Poly::var(&k)).unwrap();
        let x1 = base_datum(Extension::rational(&k), 2);
        let x2 = base_datum(Extension::rational(&k), 2).with_twist(&p, LocalMatrix::pi_diag(&p, &[1, 0], 12)).unwrap();
        assert_eq!(same_subvariety(&x1, &x2, 2, 1 << 16).unwrap(), Sameness::Different);
    }

    #[test]
    fn unit_multiples_in_quadratic_order() {
        // R′ = A_℘[y]/(y²+y+1) at ℘ = t over F_2; span(1, πy) and span(π, y)
        // differ by multiplication with y.
        let k = FiniteField::prime(2).unwrap();
        let p = Prime::new(Poly::var(&k)).unwrap();
        let e = Extension::generic(
            &k,
            vec![Poly::one(&k), Poly::one(&k), Poly::one(&k)],
            0,
            crate::extension::InfinityData { places: 1, e: 1, f: 2 },
        )
        .unwrap();
        let x1 = base_datum(e.clone(), 2).with_twist(&p, LocalMatrix::pi_diag(&p, &[0, 1], 12)).unwrap();
        let x2 = base_datum(e.clone(), 2).with_twist(&p, LocalMatrix::pi_diag(&p, &[1, 0], 12)).unwrap();
        assert_eq!(same_subvariety(&x1, &x2, 2, 1 << 16).unwrap(), Sameness::Same);
        assert_eq!(same_subvariety(&x1, &x2, 1, 1 << 16).unwrap(), Sameness::Inconclusive);
    }
}
