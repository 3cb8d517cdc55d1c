//! JSON encodings shared by the library reports and the CLI.

use std::fmt::Display;

use serde::Serializer;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ffpoly::text::parse_ratfunc;
use crate::ffpoly::{Poly, Prime, RatFunc};
use crate::localfield::{LocalElement, LocalMatrix};

pub(crate) fn ser_display<T: Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn ser_display_vec<T: Display, S: Serializer>(
    v: &[T],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// `{prime, valuation, digits, precision}`; an exact zero has valuation
/// `null` and no digits.
pub fn local_element(e: &LocalElement) -> Value {
    let digits = e.digits().unwrap_or_default();
    json!({
        "prime": e.prime().to_string(),
        "valuation": e.valuation(),
        "digits": digits,
        "precision": e.rel_prec(),
    })
}

/// The element as a rational function in `t`, exact up to its precision.
pub fn element_expr(e: &LocalElement) -> String {
    let v = match e.valuation() {
        Some(v) => v,
        None => return "0".into(),
    };
    let prime = e.prime();
    let field = prime.field();
    let unit = e.unit().clone();
    if v >= 0 {
        (&unit * &prime.power(v as usize)).to_string()
    } else {
        RatFunc::new(unit, prime.power((-v) as usize))
            .map(|r| r.to_string())
            .unwrap_or_else(|| Poly::zero(field).to_string())
    }
}

/// Row-major array of expression strings.
pub fn matrix_exprs(m: &LocalMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| element_expr(m.get(i, j))).collect())
        .collect()
}

pub fn parse_prime(src: &str, field: &std::sync::Arc<crate::ffpoly::FiniteField>) -> Result<Prime> {
    Prime::new(crate::ffpoly::text::parse_poly(src, field)?)
}

/// Square matrix over `F_℘` from expression strings.
pub fn parse_matrix(rows: &[Vec<String>], prime: &Prime, r: usize, prec: u32) -> Result<LocalMatrix> {
    if rows.len() != r || rows.iter().any(|row| row.len() != r) {
        return Err(Error::Parse(format!("expected a {r}×{r} matrix")));
    }
    let entries = rows
        .iter()
        .map(|row| row.iter().map(|s| parse_ratfunc(s, prime.field())).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    LocalMatrix::from_ratfuncs(prime, &entries, prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::FiniteField;

    #[test]
    fn expressions_round_trip() {
        let f = FiniteField::prime(3).unwrap();
        let p = Prime::new(crate::ffpoly::text::parse_poly("t^2+1", &f).unwrap()).unwrap();
        let rows = vec![
            vec!["1".to_string(), "t/(t^2+1)".to_string()],
            vec!["0".to_string(), "(t^2+1)^2".to_string()],
        ];
        let m = parse_matrix(&rows, &p, 2, 12).unwrap();
        let again = parse_matrix(&matrix_exprs(&m), &p, 2, 12).unwrap();
        assert!(m.agrees_with(&again));
        assert_eq!(matrix_exprs(&again), matrix_exprs(&m));
    }

    #[test]
    fn element_json_shape() {
        let f = FiniteField::prime(2).unwrap();
        let p = Prime::new(Poly::var(&f)).unwrap();
        let v = local_element(&LocalElement::pi_power(&p, -1, 4));
        assert_eq!(v["valuation"], json!(-1));
        assert_eq!(v["digits"], json!([1, 0, 0, 0]));
        assert_eq!(v["prime"], json!("t"));
    }
}
