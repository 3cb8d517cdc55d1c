use crate::error::Result;
use crate::localfield::element::LocalElement;
use crate::localfield::matrix::{pivot, LocalMatrix};

/// `M = U·D·V` with `D` the `rows × cols` matrix carrying `π^{e_i}` on its
/// diagonal, `U`, `V` integral with unit determinant.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: LocalMatrix,
    pub exponents: Vec<i64>,
    pub v: LocalMatrix,
}

impl Snf {
    /// A basis of the column span of `M` over `A_℘`: the columns of
    /// `U·diag(π^{e_i})`.
    pub fn column_span_basis(&self) -> LocalMatrix {
        let mut b = self.u.col_range(0, self.exponents.len());
        for (j, &e) in self.exponents.iter().enumerate() {
            let p = LocalElement::pi_power(self.u.prime(), e, b.max_rel_prec().max(1));
            b.scale_col(j, &p);
        }
        b
    }

    pub fn spread(&self) -> i64 {
        match (self.exponents.first(), self.exponents.last()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }
}

/// Smith normal form over `A_℘`. Pivots are the minimum-valuation entries of
/// the remaining block, ties broken by row-major position. Fails with
/// `Singular` or `PrecisionExhausted` when fewer than `min(rows, cols)`
/// pivots can be certified.
pub fn smith_normal_form(m: &LocalMatrix) -> Result<Snf> {
    let prime = m.prime().clone();
    let (n, c) = (m.rows(), m.cols());
    let prec = m.max_rel_prec().max(1);
    let mut a = m.clone();
    let mut u = LocalMatrix::identity(&prime, n, prec);
    let mut v = LocalMatrix::identity(&prime, c, prec);
    let mut exps = Vec::with_capacity(n.min(c));
    for k in 0..n.min(c) {
        let (pi, pj) = pivot(&a, k)?;
        a.swap_rows(k, pi);
        u.swap_cols(k, pi);
        a.swap_cols(k, pj);
        v.swap_rows(k, pj);
        let p = a.get(k, k).clone();
        let p_inv = p.inv().expect("nonzero pivot");
        for i in k + 1..n {
            if a.get(i, k).is_exact_zero() {
                continue;
            }
            let f = a.get(i, k).mul(&p_inv);
            a.add_row_multiple(i, k, &f.neg());
            u.add_col_multiple(k, i, &f);
        }
        for j in k + 1..c {
            if a.get(k, j).is_exact_zero() {
                continue;
            }
            let f = a.get(k, j).mul(&p_inv);
            a.add_col_multiple(j, k, &f.neg());
            v.add_row_multiple(k, j, &f);
        }
        let e = p.valuation().expect("certified pivot");
        let unit = p.shift(-e);
        u.scale_col(k, &unit);
        a.set(k, k, LocalElement::pi_power(&prime, e, prec));
        exps.push(e);
    }
    Ok(Snf {
        u,
        exponents: exps,
        v,
    })
}

/// The elementary divisor exponents only.
pub fn elementary_divisors(m: &LocalMatrix) -> Result<Vec<i64>> {
    Ok(smith_normal_form(m)?.exponents)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{FiniteField, Poly, Prime};

    fn setup() -> (Prime, std::sync::Arc<FiniteField>) {
        let f = FiniteField::prime(2).unwrap();
        (Prime::new(Poly::var(&f)).unwrap(), f)
    }

    fn reconstruct(s: &Snf, rows: usize, cols: usize) -> LocalMatrix {
        let p = s.u.prime().clone();
        let mut d = LocalMatrix::zeros(&p, rows, cols);
        for (i, &e) in s.exponents.iter().enumerate() {
            d.set(i, i, LocalElement::pi_power(&p, e, 12));
        }
        s.u.mul(&d).mul(&s.v)
    }

    #[test]
    fn diag_pi_one() {
        let (p, _) = setup();
        let m = LocalMatrix::pi_diag(&p, &[1, 0], 12);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.exponents, vec![0, 1]);
        assert!(reconstruct(&s, 2, 2).agrees_with(&m));
    }

    #[test]
    fn upper_triangular_pi_one_pi() {
        let (p, f) = setup();
        let t = Poly::var(&f);
        let rows = vec![vec![t.clone(), Poly::one(&f)], vec![Poly::zero(&f), t]];
        let m = LocalMatrix::from_polys(&p, &rows, 12).unwrap();
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.exponents, vec![0, 2]);
        assert!(reconstruct(&s, 2, 2).agrees_with(&m));
    }

    #[test]
    fn identity_has_zero_exponents() {
        let (p, _) = setup();
        for r in 1..5 {
            let s = smith_normal_form(&LocalMatrix::identity(&p, r, 12)).unwrap();
            assert_eq!(s.exponents, vec![0; r]);
        }
    }

    #[test]
    fn rectangular_span() {
        let (p, f) = setup();
        let t = Poly::var(&f);
        let rows = vec![
            vec![t.clone(), &t * &t, Poly::zero(&f)],
            vec![Poly::zero(&f), t.clone(), &t * &t],
        ];
        let m = LocalMatrix::from_polys(&p, &rows, 12).unwrap();
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.exponents, vec![1, 1]);
        assert!(reconstruct(&s, 2, 3).agrees_with(&m));
    }
}
