//! Dense linear algebra over a finite field.

use crate::ffpoly::{Elem, FiniteField};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(field: &FiniteField, rows: &mut Vec<Vec<Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    let t = field.mul(f, rows[r][j]);
                    rows[i][j] = field.sub(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(field: &FiniteField, rows: &[Vec<Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// A basis of the span of `vectors`, in reduced echelon form.
pub fn span_basis(field: &FiniteField, vectors: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let mut m = vectors.to_vec();
    rref(field, &mut m);
    m
}

/// Basis of `{x : Σ x_i·images[i] = 0}`.
pub fn kernel(field: &FiniteField, images: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let n = images.len();
    if n == 0 {
        return Vec::new();
    }
    let dim = images[0].len();
    // Columns are the images; solve M x = 0 with M of size dim × n.
    let mut m: Vec<Vec<Elem>> = (0..dim)
        .map(|i| images.iter().map(|v| v[i]).collect())
        .collect();
    let pivots = rref(field, &mut m);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0; n];
            x[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = field.neg(m[row][f]);
            }
            x
        })
        .collect()
}

/// Determinant by elimination.
pub fn det(field: &FiniteField, m: &[Vec<Elem>]) -> Elem {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = 1;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| a[i][c] != 0) else {
            return 0;
        };
        if p != c {
            a.swap(p, c);
            d = field.neg(d);
        }
        d = field.mul(d, a[c][c]);
        let inv = field.inv(a[c][c]).expect("nonzero pivot");
        for i in c + 1..n {
            if a[i][c] != 0 {
                let f = field.mul(a[i][c], inv);
                for j in c..n {
                    let t = field.mul(f, a[c][j]);
                    a[i][j] = field.sub(a[i][j], t);
                }
            }
        }
    }
    d
}

pub fn is_invertible(field: &FiniteField, m: &[Vec<Elem>]) -> bool {
    rank(field, m) == m.len()
}

pub fn add_assign(field: &FiniteField, acc: &mut [Elem], v: &[Elem], scale: Elem) {
    if scale == 0 {
        return;
    }
    for (a, &b) in acc.iter_mut().zip(v) {
        *a = field.add(*a, field.mul(scale, b));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one_map() {
        let f = FiniteField::prime(3).unwrap();
        let images = vec![vec![1, 2], vec![2, 1], vec![0, 0]];
        let k = kernel(&f, &images);
        assert_eq!(k.len(), 2);
        for x in &k {
            let mut acc = vec![0, 0];
            for (i, img) in images.iter().enumerate() {
                add_assign(&f, &mut acc, img, x[i]);
            }
            assert_eq!(acc, vec![0, 0]);
        }
    }

    #[test]
    fn gl2_f2_has_six_elements() {
        let f = FiniteField::prime(2).unwrap();
        let mut count = 0;
        for bits in 0..16u64 {
            let m = vec![vec![bits & 1, bits >> 1 & 1], vec![bits >> 2 & 1, bits >> 3 & 1]];
            if det(&f, &m) != 0 {
                count += 1;
                assert!(is_invertible(&f, &m));
            }
        }
        assert_eq!(count, 6);
    }
}
