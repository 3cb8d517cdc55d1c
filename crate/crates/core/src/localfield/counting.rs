use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ffpoly::{Elem, Poly};
use crate::linalg;
use crate::localfield::lattice::{lattice_index, Lattice};
use crate::localfield::matrix::LocalMatrix;
use crate::localfield::order::OrderStructure;

/// `|GL_n(U/𝔫^l)|` for a local ring with residue field of size `q`.
pub fn gl_count(n: usize, q: &BigUint, l: u32) -> BigUint {
    let qn = q.pow(n as u32);
    let mut acc = q.pow((l.saturating_sub(1)) * (n * n) as u32);
    for i in 0..n {
        acc *= &qn - q.pow(i as u32);
    }
    acc
}

/// `(|GL_r(R/m^k)|, |Mat_r(R/m^k)|)` for residue size `q′`.
pub fn count_matrix_group(r: usize, q_prime: u64, k: u32) -> (BigUint, BigUint) {
    let q = BigUint::from(q_prime);
    let gl = gl_count(r, &q, k);
    let mat = q.pow(k * (r * r) as u32);
    (gl, mat)
}

/// `|GL|/|Mat| ≥ (1 − 1/q)^r`, compared exactly.
pub fn matrix_ratio_bound_holds(r: usize, q: u64, q_prime: u64, k: u32) -> bool {
    let (gl, mat) = count_matrix_group(r, q_prime, k);
    let q = BigUint::from(q);
    gl * q.pow(r as u32) >= mat * (&q - 1u32).pow(r as u32)
}

/// Smallest `k ≥ 1` with `℘^k·R′^{r′} ⊆ Λ` for `Λ ⊆ R′^{r′}`.
pub fn minimal_depth(lattice: &Lattice) -> u32 {
    lattice
        .elementary_divisors()
        .iter()
        .copied()
        .max()
        .unwrap_or(0)
        .max(1) as u32
}

/// Orbit size of `Λ/℘^k R′^{r′}` under `GL_{r′}(R′/℘^k)`, i.e. the index
/// of the stabilizer of `Λ` in `GL_{r′}(R′)`.
pub fn stabilizer_index(
    lattice: &Lattice,
    order: &OrderStructure,
    k: u32,
    budget: u64,
) -> Result<BigUint> {
    let r = order.r();
    if lattice.rank() != r {
        return Err(Error::InvalidArgument("lattice rank does not match the order".into()));
    }
    let b = lattice.basis();
    if !order.saturates(b)? {
        return Err(Error::NotSaturated);
    }
    let binv = b.inverse()?;
    if !binv.shift(k as i64).is_integral()? {
        return Err(Error::InsufficientDepth { depth: k });
    }
    let gl = order.gl_order(k);

    let prime = order.prime();
    let field = prime.field().clone();
    let d = prime.degree();
    let kd = k as usize * d;
    let m = order.m();
    let rp = order.r_prime();
    let prec = order.precision();

    // F_q-basis of Mat_{r′}(R′/℘^k): t^j·C^i in block (a, b).
    let comp = order.companion_block();
    let mut comp_powers = vec![identity_polys(&field, m)];
    for i in 1..m {
        comp_powers.push(poly_mat_mul(&comp_powers[i - 1], &comp));
    }
    let mut basis_mats = Vec::with_capacity(rp * rp * m * kd);
    for a in 0..rp {
        for bb in 0..rp {
            for cp in &comp_powers {
                for j in 0..kd {
                    let tj = Poly::monomial(&field, 1, j);
                    let mut rows = vec![vec![Poly::zero(&field); r]; r];
                    for x in 0..m {
                        for y in 0..m {
                            rows[a * m + x][bb * m + y] = &cp[x][y] * &tj;
                        }
                    }
                    basis_mats.push(rows);
                }
            }
        }
    }

    let images: Vec<Vec<Elem>> = basis_mats
        .iter()
        .map(|rows| {
            let t = LocalMatrix::from_polys(prime, rows, prec)?;
            let y = binv.mul(&t).mul(b).shift(k as i64);
            let mut v = Vec::with_capacity(r * r * kd);
            for e in y.entries() {
                let p = e.to_poly_mod(k)?;
                v.extend((0..kd).map(|i| p.coeff(i)));
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let ker = linalg::kernel(&field, &images);
    let kappa = ker.len();

    let res = prime.residue_field()?;
    let rho_basis: Vec<Vec<Elem>> = basis_mats
        .iter()
        .map(|rows| {
            let mut v = Vec::with_capacity(r * r * d);
            for row in rows {
                for e in row {
                    let red = e.rem(prime.poly());
                    v.extend((0..d).map(|i| red.coeff(i)));
                }
            }
            v
        })
        .collect();
    let rho_images: Vec<Vec<Elem>> = ker
        .iter()
        .map(|x| {
            let mut acc = vec![0; r * r * d];
            for (beta, &c) in x.iter().enumerate() {
                linalg::add_assign(&field, &mut acc, &rho_basis[beta], c);
            }
            acc
        })
        .collect();
    let span = linalg::span_basis(&field, &rho_images);
    let rank = span.len();
    let q = field.size();
    let combos = q
        .checked_pow(rank as u32)
        .filter(|&n| n <= budget)
        .ok_or_else(|| Error::budget(format!("{q}^{rank}"), budget))?;

    let kf = &res.field;
    let mut invertible: u64 = 0;
    let mut coeffs = vec![0 as Elem; rank];
    for n in 0..combos {
        let mut c = n;
        for x in coeffs.iter_mut() {
            *x = c % q;
            c /= q;
        }
        let mut v = vec![0; r * r * d];
        for (i, &c) in coeffs.iter().enumerate() {
            linalg::add_assign(&field, &mut v, &span[i], c);
        }
        let mat: Vec<Vec<Elem>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let off = (i * r + j) * d;
                        res.reduce(&Poly::new(&field, v[off..off + d].to_vec()))
                    })
                    .collect()
            })
            .collect();
        if linalg::det(kf, &mat) != 0 {
            invertible += 1;
        }
    }
    let stab = BigUint::from(invertible) * BigUint::from(q).pow((kappa - rank) as u32);
    if stab.is_zero() {
        return Err(Error::InvalidArgument("empty stabilizer".into()));
    }
    let (idx, rem) = gl.div_rem(&stab);
    debug_assert!(rem.is_zero(), "stabilizer order must divide the group order");
    Ok(idx)
}

/// Result of comparing a stabilizer index with `(1−1/q)^r·[R′^{r′}:Λ]^{1/r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GitterReport {
    pub stabilizer_index: BigUint,
    pub lattice_index: BigUint,
    pub holds: bool,
}

/// Checks `i ≥ (1−1/q)^r·I^{1/r}` exactly as `i^r·q^{r²} ≥ (q−1)^{r²}·I`,
/// with `q` the size of the constant field of `A`.
pub fn gitter_bound_check(
    lattice: &Lattice,
    order: &OrderStructure,
    budget: u64,
) -> Result<GitterReport> {
    let k = minimal_depth(lattice);
    let idx = stabilizer_index(lattice, order, k, budget)?;
    let std = Lattice::standard(order.prime(), order.r(), order.precision());
    let li = lattice_index(lattice, &std)?;
    let r = order.r() as u32;
    let q = BigUint::from(order.prime().field().size());
    let lhs = idx.pow(r) * q.pow(r * r);
    let rhs = (&q - BigUint::one()).pow(r * r) * &li;
    Ok(GitterReport {
        stabilizer_index: idx,
        lattice_index: li,
        holds: lhs >= rhs,
    })
}

/// The right-hand side `(1−1/q)^r·I^{1/r}` as a float, for display.
pub fn gitter_rhs_f64(q: u64, r: usize, index: &BigUint) -> f64 {
    let c = (1.0 - 1.0 / q as f64).powi(r as i32);
    c * index.to_f64().unwrap_or(f64::INFINITY).powf(1.0 / r as f64)
}

fn identity_polys(field: &std::sync::Arc<crate::ffpoly::FiniteField>, n: usize) -> Vec<Vec<Poly>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Poly::one(field) } else { Poly::zero(field) })
                .collect()
        })
        .collect()
}

pub(crate) fn poly_mat_mul(a: &[Vec<Poly>], b: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let field = a[0][0].field().clone();
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|j| {
                    let mut acc = Poly::zero(&field);
                    for (k, row) in b.iter().enumerate() {
                        acc = &acc + &(&a[i][k] * &row[j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{FiniteField, Prime};

    #[test]
    fn gl2_f2() {
        assert_eq!(count_matrix_group(2, 2, 1).0, BigUint::from(6u32));
    }

    #[test]
    fn units_of_r_mod_m_squared() {
        assert_eq!(count_matrix_group(1, 2, 2).0, BigUint::from(2u32));
    }

    #[test]
    fn gl2_f3() {
        assert_eq!(count_matrix_group(2, 3, 1).0, BigUint::from(48u32));
        assert_eq!(count_matrix_group(2, 3, 1).1, BigUint::from(81u32));
    }

    #[test]
    fn ratio_bound_small_cases() {
        for r in 1..4 {
            for qp in [2, 3, 4, 5, 9] {
                for k in 1..3 {
                    assert!(matrix_ratio_bound_holds(r, 2.min(qp), qp, k));
                }
            }
        }
    }

    #[test]
    fn standard_lattice_has_index_one() {
        let f = FiniteField::prime(2).unwrap();
        let p = Prime::new(Poly::var(&f)).unwrap();
        let s = OrderStructure::trivial(&p, 2, 12);
        let l = Lattice::standard(&p, 2, 12);
        assert_eq!(stabilizer_index(&l, &s, 1, 1 << 16).unwrap(), BigUint::from(1u32));
        let rep = gitter_bound_check(&l, &s, 1 << 16).unwrap();
        assert!(rep.holds);
    }

    #[test]
    fn unsaturated_lattice_is_refused() {
        let f = FiniteField::prime(2).unwrap();
        let p = Prime::new(Poly::var(&f)).unwrap();
        let s = OrderStructure::trivial(&p, 2, 12);
        let l = Lattice::new(LocalMatrix::pi_diag(&p, &[1, 0], 12)).unwrap();
        assert_eq!(stabilizer_index(&l, &s, 1, 1 << 16).unwrap_err(), Error::NotSaturated);
    }

    #[test]
    fn index_two_sublattice_of_unramified_quadratic() {
        // R′ = A_℘[y]/(y²+y+1), Λ = A_℘ + ℘R′ = span(1, π y).
        let f = FiniteField::prime(2).unwrap();
        let p = Prime::new(Poly::var(&f)).unwrap();
        let g = vec![Poly::one(&f), Poly::one(&f), Poly::one(&f)];
        let s = OrderStructure::new(&p, &g, 1, 12).unwrap();
        let l = Lattice::new(LocalMatrix::pi_diag(&p, &[0, 1], 12)).unwrap();
        let idx = stabilizer_index(&l, &s, 1, 1 << 16).unwrap();
        // Stabilizer of F_2 ⊂ F_4 in F_4^* is F_2^*, orbit size 3.
        assert_eq!(idx, BigUint::from(3u32));
        let idx2 = stabilizer_index(&l, &s, 2, 1 << 16).unwrap();
        assert_eq!(idx2, idx);
    }
}
