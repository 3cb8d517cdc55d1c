use std::fmt;

use crate::error::{Error, Result};
use crate::ffpoly::{Poly, Prime, RatFunc};
use crate::localfield::element::LocalElement;

/// A dense matrix over `F_℘`, row-major.
#[derive(Clone)]
pub struct LocalMatrix {
    prime: Prime,
    rows: usize,
    cols: usize,
    data: Vec<LocalElement>,
}

impl LocalMatrix {
    pub fn from_fn(
        prime: &Prime,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> LocalElement,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        LocalMatrix {
            prime: prime.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(prime: &Prime, rows: usize, cols: usize) -> Self {
        Self::from_fn(prime, rows, cols, |_, _| LocalElement::zero(prime))
    }

    pub fn identity(prime: &Prime, n: usize, prec: u32) -> Self {
        Self::from_fn(prime, n, n, |i, j| {
            if i == j {
                LocalElement::one(prime, prec)
            } else {
                LocalElement::zero(prime)
            }
        })
    }

    /// Diagonal matrix `diag(π^{e_1}, …)`.
    pub fn pi_diag(prime: &Prime, exps: &[i64], prec: u32) -> Self {
        let n = exps.len();
        Self::from_fn(prime, n, n, |i, j| {
            if i == j {
                LocalElement::pi_power(prime, exps[i], prec)
            } else {
                LocalElement::zero(prime)
            }
        })
    }

    pub fn from_polys(prime: &Prime, rows: &[Vec<Poly>], prec: u32) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("ragged matrix".into()));
        }
        Ok(Self::from_fn(prime, r, c, |i, j| {
            LocalElement::from_poly(prime, &rows[i][j], prec)
        }))
    }

    pub fn from_ratfuncs(prime: &Prime, rows: &[Vec<RatFunc>], prec: u32) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("ragged matrix".into()));
        }
        Ok(Self::from_fn(prime, r, c, |i, j| {
            LocalElement::from_ratfunc(prime, &rows[i][j], prec)
        }))
    }

    pub fn prime(&self) -> &Prime {
        &self.prime
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LocalElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: LocalElement) {
        self.data[i * self.cols + j] = e;
    }

    pub fn entries(&self) -> &[LocalElement] {
        &self.data
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row_dst += c·row_src`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &LocalElement) {
        for j in 0..self.cols {
            let t = c.mul(self.get(src, j));
            let v = self.get(dst, j).add(&t);
            self.set(dst, j, v);
        }
    }

    /// `col_dst += c·col_src`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &LocalElement) {
        for i in 0..self.rows {
            let t = self.get(i, src).mul(c);
            let v = self.get(i, dst).add(&t);
            self.set(i, dst, v);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &LocalElement) {
        for j in 0..self.cols {
            let v = self.get(i, j).mul(c);
            self.set(i, j, v);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &LocalElement) {
        for i in 0..self.rows {
            let v = self.get(i, j).mul(c);
            self.set(i, j, v);
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        Self::from_fn(&self.prime, self.rows, o.cols, |i, j| {
            let mut acc = LocalElement::zero(&self.prime);
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(o.get(k, j)));
            }
            acc
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_fn(&self.prime, self.rows, self.cols, |i, j| self.get(i, j).add(o.get(i, j)))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_fn(&self.prime, self.rows, self.cols, |i, j| self.get(i, j).sub(o.get(i, j)))
    }

    pub fn scale(&self, c: &LocalElement) -> Self {
        Self::from_fn(&self.prime, self.rows, self.cols, |i, j| self.get(i, j).mul(c))
    }

    /// `π^n·self`.
    pub fn shift(&self, n: i64) -> Self {
        Self::from_fn(&self.prime, self.rows, self.cols, |i, j| self.get(i, j).shift(n))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.prime, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn pow(&self, n: u32) -> Self {
        let prec = self.max_rel_prec().max(1);
        let mut acc = Self::identity(&self.prime, self.rows, prec);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Columns `from..to`.
    pub fn col_range(&self, from: usize, to: usize) -> Self {
        Self::from_fn(&self.prime, self.rows, to - from, |i, j| self.get(i, from + j).clone())
    }

    /// `[self | o]`.
    pub fn hcat(&self, o: &Self) -> Self {
        Self::from_fn(&self.prime, self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                o.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn block_diag(blocks: &[LocalMatrix]) -> Self {
        let prime = blocks[0].prime.clone();
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Self::zeros(&prime, n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.rows;
        }
        m
    }

    pub fn max_rel_prec(&self) -> u32 {
        self.data.iter().map(LocalElement::rel_prec).max().unwrap_or(0)
    }

    pub fn truncate_rel(&self, prec: u32) -> Self {
        Self::from_fn(&self.prime, self.rows, self.cols, |i, j| self.get(i, j).truncate_rel(prec))
    }

    /// Smallest lower bound on entry valuations (over nonzero entries if
    /// any; otherwise over all).
    pub fn min_valuation(&self) -> Option<i64> {
        self.data.iter().filter_map(LocalElement::valuation).min()
    }

    /// Certified integrality of every entry.
    pub fn is_integral(&self) -> Result<bool> {
        for e in &self.data {
            if !e.is_integral()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Entries reduced to `A/℘^n` (integral matrices only).
    pub fn to_polys_mod(&self, n: u32) -> Result<Vec<Vec<Poly>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_poly_mod(n)).collect())
            .collect()
    }

    /// Inverse by Gauss–Jordan elimination with minimum-valuation pivots.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::InvalidArgument("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let prec = self.max_rel_prec().max(1);
        let mut a = self.clone();
        let mut inv = Self::identity(&self.prime, n, prec);
        let mut col_perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (pi, pj) = pivot(&a, k)?;
            a.swap_rows(k, pi);
            inv.swap_rows(k, pi);
            a.swap_cols(k, pj);
            col_perm.swap(k, pj);
            let p_inv = a.get(k, k).inv().expect("nonzero pivot");
            a.scale_row(k, &p_inv);
            inv.scale_row(k, &p_inv);
            for i in 0..n {
                if i != k && !a.get(i, k).is_exact_zero() {
                    let c = a.get(i, k).neg();
                    a.add_row_multiple(i, k, &c);
                    inv.add_row_multiple(i, k, &c);
                }
            }
        }
        // a·P = I after elimination means the rows of inv must be permuted
        // back: (M P)^{-1} = P^{-1} M^{-1}.
        let mut out = Self::zeros(&self.prime, n, n);
        for (k, &orig) in col_perm.iter().enumerate() {
            for j in 0..n {
                out.set(orig, j, inv.get(k, j).clone());
            }
        }
        Ok(out)
    }

    /// Determinant by elimination with minimum-valuation pivots.
    pub fn det(&self) -> Result<LocalElement> {
        let n = self.rows;
        let mut a = self.clone();
        let prec = self.max_rel_prec().max(1);
        let mut d = LocalElement::one(&self.prime, prec);
        for k in 0..n {
            let (pi, pj) = match pivot(&a, k) {
                Ok(p) => p,
                Err(Error::Singular) => return Ok(LocalElement::zero(&self.prime)),
                Err(e) => return Err(e),
            };
            if pi != k {
                a.swap_rows(k, pi);
                d = d.neg();
            }
            if pj != k {
                a.swap_cols(k, pj);
                d = d.neg();
            }
            let p = a.get(k, k).clone();
            d = d.mul(&p);
            let p_inv = p.inv().expect("nonzero pivot");
            for i in k + 1..n {
                if !a.get(i, k).is_exact_zero() {
                    let c = a.get(i, k).mul(&p_inv).neg();
                    a.add_row_multiple(i, k, &c);
                }
            }
        }
        Ok(d)
    }

    /// Whether all entries agree with `o` up to known precision.
    pub fn agrees_with(&self, o: &Self) -> bool {
        self.rows == o.rows
            && self.cols == o.cols
            && self.data.iter().zip(&o.data).all(|(a, b)| a.agrees_with(b))
    }
}

/// Minimum-valuation entry of the trailing block starting at `(k, k)`,
/// ties broken row-major.
pub(crate) fn pivot(a: &LocalMatrix, k: usize) -> Result<(usize, usize)> {
    let mut best: Option<(i64, usize, usize)> = None;
    let mut approx = false;
    for i in k..a.rows {
        for j in k..a.cols {
            let e = a.get(i, j);
            match e.valuation() {
                Some(v) => {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
                None => approx |= !e.is_exact_zero(),
            }
        }
    }
    match best {
        Some((_, i, j)) => Ok((i, j)),
        None if approx => Err(Error::precision("every remaining entry is an approximate zero")),
        None => Err(Error::Singular),
    }
}

impl fmt::Debug for LocalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::FiniteField;

    #[test]
    fn inverse_times_matrix_is_identity() {
        let f = FiniteField::prime(3).unwrap();
        let p = Prime::new(Poly::var(&f)).unwrap();
        let rows = vec![
            vec![Poly::new(&f, vec![0, 1]), Poly::new(&f, vec![1, 2])],
            vec![Poly::new(&f, vec![2]), Poly::new(&f, vec![0, 0, 1])],
        ];
        let m = LocalMatrix::from_polys(&p, &rows, 10).unwrap();
        let i = m.inverse().unwrap();
        assert!(m.mul(&i).agrees_with(&LocalMatrix::identity(&p, 2, 10)));
        assert!(i.mul(&m).agrees_with(&LocalMatrix::identity(&p, 2, 10)));
        assert_eq!(m.det().unwrap().valuation(), Some(0));
    }

    #[test]
    fn singular_matrix_is_reported() {
        let f = FiniteField::prime(2).unwrap();
        let p = Prime::new(Poly::var(&f)).unwrap();
        let one = Poly::one(&f);
        let m = LocalMatrix::from_polys(&p, &[vec![one.clone(), one.clone()], vec![one.clone(), one]], 8)
            .unwrap();
        assert!(matches!(m.inverse(), Err(Error::PrecisionExhausted(_)) | Err(Error::Singular)));
    }
}
