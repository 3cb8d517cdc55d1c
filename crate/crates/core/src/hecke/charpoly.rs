use crate::error::{Error, Result};
use crate::localfield::{LocalElement, LocalMatrix};

/// Coefficients `a_0, …, a_r` of `det(λI − g)`, lowest first, `a_r = 1`.
/// Division-free (Berkowitz), so precision loss comes from cancellation
/// only.
pub fn char_poly(g: &LocalMatrix) -> Result<Vec<LocalElement>> {
    if !g.is_square() || g.rows() == 0 {
        return Err(Error::InvalidArgument("characteristic polynomial needs a square matrix".into()));
    }
    let n = g.rows();
    let prime = g.prime().clone();
    let prec = g.max_rel_prec().max(1);
    let one = LocalElement::one(&prime, prec);
    // Highest coefficient first during the recursion.
    let mut vect = vec![one.clone(), g.get(0, 0).neg()];
    for r in 1..n {
        let a = g.get(r, r);
        // col = [1, -a, -R·C, -R·A·C, …, -R·A^{r-1}·C]
        let mut col = vec![one.clone(), a.neg()];
        let mut cur: Vec<LocalElement> = (0..r).map(|i| g.get(i, r).clone()).collect();
        for step in 0..r {
            if step > 0 {
                cur = (0..r)
                    .map(|i| {
                        let mut acc = LocalElement::zero(&prime);
                        for (j, c) in cur.iter().enumerate() {
                            acc = acc.add(&g.get(i, j).mul(c));
                        }
                        acc
                    })
                    .collect();
            }
            let mut dot = LocalElement::zero(&prime);
            for (j, c) in cur.iter().enumerate() {
                dot = dot.add(&g.get(r, j).mul(c));
            }
            col.push(dot.neg());
        }
        let mut next = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut acc = LocalElement::zero(&prime);
            for j in 0..=i.min(r) {
                acc = acc.add(&col[i - j].mul(&vect[j]));
            }
            next.push(acc);
        }
        vect = next;
    }
    vect.reverse();
    Ok(vect)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{FiniteField, Poly, Prime};

    fn prime_t(p: u64) -> Prime {
        Prime::new(Poly::var(&FiniteField::prime(p).unwrap())).unwrap()
    }

    #[test]
    fn diag_pi_inverse_one() {
        let p = prime_t(2);
        let g = LocalMatrix::pi_diag(&p, &[-1, 0], 12);
        let c = char_poly(&g).unwrap();
        assert_eq!(c[0].valuation(), Some(-1));
        assert_eq!(c[1].valuation(), Some(-1));
        assert_eq!(c[2].valuation(), Some(0));
        let expected = LocalElement::pi_power(&p, -1, 12).add(&LocalElement::one(&p, 12)).neg();
        assert!(c[1].agrees_with(&expected));
    }

    #[test]
    fn identity_r2_in_char_3() {
        let p = prime_t(3);
        let c = char_poly(&LocalMatrix::identity(&p, 2, 12)).unwrap();
        // λ² − 2λ + 1
        assert!(c[0].agrees_with(&LocalElement::one(&p, 12)));
        let two = LocalElement::one(&p, 12).add(&LocalElement::one(&p, 12));
        assert!(c[1].agrees_with(&two.neg()));
    }

    #[test]
    fn companion_of_lambda_squared_minus_pi() {
        let p = prime_t(2);
        let mut g = LocalMatrix::zeros(&p, 2, 2);
        g.set(0, 1, LocalElement::pi_power(&p, 1, 12));
        g.set(1, 0, LocalElement::one(&p, 12));
        let c = char_poly(&g).unwrap();
        assert!(c[0].agrees_with(&LocalElement::pi_power(&p, 1, 12).neg()));
        assert!(c[1].is_zero());
    }

    #[test]
    fn three_by_three_matches_cofactor_expansion() {
        let p = prime_t(5);
        let f = p.field().clone();
        let e = |c: &[u64]| LocalElement::from_poly(&p, &Poly::new(&f, c.to_vec()), 12);
        let g = LocalMatrix::from_fn(&p, 3, 3, |i, j| e(&[((i * j * j + i + 2 * j + 1) % 5) as u64, ((i * i + j) % 5) as u64]));
        let c = char_poly(&g).unwrap();
        // a_0 = −det g, a_2 = −trace g
        assert!(c[0].agrees_with(&g.det().unwrap().neg()));
        let tr = g.get(0, 0).add(g.get(1, 1)).add(g.get(2, 2));
        assert!(c[2].agrees_with(&tr.neg()));
    }
}
