//! Brute-force counterparts of the structured computations, for
//! cross-validation over small finite quotients. Nothing else in the crate
//! calls into this module.

use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::extension::{count_places, Extension, ExtensionKind};
use crate::ffpoly::factor::{monic_from_index, Factorization};
use crate::ffpoly::{Elem, FiniteField, Poly, Prime};
use crate::goodprime::LevelMap;
use crate::hecke::degree::principal_part_images;
use crate::linalg;
use crate::localfield::{LocalMatrix, OrderStructure};

fn within(q: u64, n: u32, budget: u64) -> Result<u64> {
    q.checked_pow(n)
        .filter(|&t| t <= budget)
        .ok_or_else(|| Error::budget(BigUint::from(q).pow(n), budget))
}

/// Factorization by trial division with monic polynomials of increasing
/// degree.
pub fn trial_factor(f: &Poly, budget: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field().clone();
    let unit = f.leading();
    let mut g = f.monic();
    let mut factors = Vec::new();
    let mut d = 1;
    while 2 * d <= g.degree().unwrap_or(0) {
        let total = within(field.size(), d as u32, budget)?;
        for n in 0..total {
            let p = monic_from_index(&field, d, n);
            let mut mult = 0;
            while p.divides(&g) {
                g = g.div_exact(&p);
                mult += 1;
            }
            if mult > 0 {
                factors.push((p, mult));
            }
        }
        d += 1;
    }
    if g.degree().unwrap_or(0) > 0 {
        match factors.iter_mut().find(|(p, _)| *p == g) {
            Some(entry) => entry.1 += 1,
            None => factors.push((g, 1)),
        }
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

pub fn is_irreducible_by_trial(f: &Poly, budget: u64) -> Result<bool> {
    Ok(f.degree().unwrap_or(0) > 0 && trial_factor(f, budget)?.is_irreducible())
}

type Trunc = Vec<Elem>;

fn trunc_mul(field: &FiniteField, a: &Trunc, b: &Trunc) -> Trunc {
    let k = a.len();
    let mut c = vec![0; k];
    for i in 0..k {
        if a[i] == 0 {
            continue;
        }
        for j in 0..k - i {
            c[i + j] = field.add(c[i + j], field.mul(a[i], b[j]));
        }
    }
    c
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // Inserting at `pos` adds `n − 1 − pos` inversions.
            out.push((q, odd ^ ((n - 1 - pos) % 2 == 1)));
        }
    }
    out
}

/// `|GL_r(F_{q′}[π]/π^k)|` by computing the determinant of every matrix in
/// the truncated ring.
pub fn gl_count_exhaustive(field: &Arc<FiniteField>, r: usize, k: u32, budget: u64) -> Result<BigUint> {
    let q = field.size();
    let n = (r * r) as u32 * k;
    let total = within(q, n, budget)?;
    let k = k as usize;
    let perms = permutations(r);
    let mut digits = vec![0u64; n as usize];
    let mut count = 0u64;
    for step in 0..total {
        if step > 0 {
            for d in digits.iter_mut() {
                *d += 1;
                if *d < q {
                    break;
                }
                *d = 0;
            }
        }
        let entry = |i: usize, j: usize| -> Trunc { digits[(i * r + j) * k..(i * r + j + 1) * k].to_vec() };
        let mut det = vec![0; k];
        for (p, odd) in &perms {
            let mut term = vec![0; k];
            term[0] = 1;
            for (i, &j) in p.iter().enumerate() {
                term = trunc_mul(field, &term, &entry(i, j));
            }
            for (c, t) in det.iter_mut().zip(&term) {
                *c = if *odd { field.sub(*c, *t) } else { field.add(*c, *t) };
            }
        }
        if det[0] != 0 {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}

/// Every sublattice of `A_℘^r` of index at most `max_index`, as upper
/// triangular Hermite bases: diagonal `℘^{e_i}`, entries right of the
/// diagonal in row `i` reduced modulo `℘^{e_i}`.
pub fn hermite_sublattices(prime: &Prime, r: usize, max_index: u64) -> Vec<Vec<Vec<Poly>>> {
    let field = prime.field().clone();
    let kp = prime.residue_size();
    let mut max_sum = 0u32;
    while kp.checked_pow(max_sum + 1).is_some_and(|v| v <= max_index) {
        max_sum += 1;
    }
    let mut out = Vec::new();
    let mut exps = vec![0u32; r];
    loop {
        if exps.iter().sum::<u32>() <= max_sum {
            push_hermite(prime, &field, &exps, &mut out);
        }
        let mut i = 0;
        loop {
            if i == r {
                return out;
            }
            exps[i] += 1;
            if exps.iter().sum::<u32>() <= max_sum {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

fn push_hermite(prime: &Prime, field: &Arc<FiniteField>, exps: &[u32], out: &mut Vec<Vec<Vec<Poly>>>) {
    let r = exps.len();
    let q = field.size();
    // Free slots: (row, col, coefficient count).
    let slots: Vec<(usize, usize, usize)> = (0..r)
        .flat_map(|i| (i + 1..r).map(move |j| (i, j, exps[i] as usize * prime.degree())))
        .collect();
    let width: usize = slots.iter().map(|s| s.2).sum();
    let total = q.pow(width as u32);
    for mut n in 0..total {
        let mut b = vec![vec![Poly::zero(field); r]; r];
        for (i, row) in b.iter_mut().enumerate() {
            row[i] = prime.power(exps[i] as usize);
        }
        for &(i, j, len) in &slots {
            let mut c = Vec::with_capacity(len);
            for _ in 0..len {
                c.push(n % q);
                n /= q;
            }
            b[i][j] = Poly::new(field, c);
        }
        out.push(b);
    }
}

fn poly_mat_mul(a: &[Vec<Poly>], b: &[Vec<Poly>], modulus: &Poly) -> Vec<Vec<Poly>> {
    let field = modulus.field().clone();
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|j| {
                    let mut acc = Poly::zero(&field);
                    for (l, row) in b.iter().enumerate() {
                        acc = &acc + &(&a[i][l] * &row[j]);
                    }
                    acc.rem(modulus)
                })
                .collect()
        })
        .collect()
}

/// `F_q`-coordinates of the `A/℘^k`-span of the columns of `cols`.
fn column_span_vectors(cols: &[Vec<Poly>], modulus: &Poly, kd: usize) -> Vec<Vec<Elem>> {
    let field = modulus.field().clone();
    let mut vecs = Vec::new();
    let ncols = cols.first().map_or(0, Vec::len);
    for c in 0..ncols {
        for j in 0..kd {
            let tj = Poly::monomial(&field, 1, j);
            let mut v = Vec::new();
            for row in cols {
                let e = (&row[c] * &tj).rem(modulus);
                v.extend((0..kd).map(|i| e.coeff(i)));
            }
            vecs.push(v);
        }
    }
    vecs
}

/// `[GL_{r′}(R′) : Stab(Λ)]` by enumerating `Mat_{r′}(R′/℘^k)`, counting the
/// invertible elements and those that map `Λ/℘^k` into itself.
pub fn stabilizer_index_exhaustive(
    basis: &[Vec<Poly>],
    order: &OrderStructure,
    k: u32,
    budget: u64,
) -> Result<BigUint> {
    let prime = order.prime().clone();
    let field = prime.field().clone();
    let q = field.size();
    let p = field.characteristic();
    let e = field.degree();
    let kd = k as usize * prime.degree();
    let (r, m, rp) = (order.r(), order.m(), order.r_prime());
    let n = (rp * rp * m * kd) as u32;
    let total = within(q, n, budget)?;
    let modulus = prime.power(k as usize);
    let res = prime.residue_field()?;

    let span_b = linalg::span_basis(&field, &column_span_vectors(basis, &modulus, kd));
    let rank_b = span_b.len();

    let comp = order.companion_block();
    let mut powers: Vec<Vec<Vec<Poly>>> = vec![(0..m)
        .map(|i| (0..m).map(|j| if i == j { Poly::one(&field) } else { Poly::zero(&field) }).collect())
        .collect()];
    for i in 1..m {
        let next = poly_mat_mul(&powers[i - 1], &comp, &modulus);
        powers.push(next);
    }
    let mut gens: Vec<Vec<Vec<Poly>>> = Vec::new();
    for a in 0..rp {
        for b in 0..rp {
            for cp in &powers {
                for j in 0..kd {
                    for s in 0..e {
                        let c = Poly::monomial(&field, p.pow(s), j);
                        let mut x = vec![vec![Poly::zero(&field); r]; r];
                        for u in 0..m {
                            for v in 0..m {
                                x[a * m + u][b * m + v] = (&cp[u][v] * &c).rem(&modulus);
                            }
                        }
                        gens.push(x);
                    }
                }
            }
        }
    }

    let mut x = vec![vec![Poly::zero(&field); r]; r];
    let mut digits = vec![0u64; gens.len()];
    let (mut gl, mut stab) = (0u64, 0u64);
    for step in 0..total {
        if step > 0 {
            for (i, d) in digits.iter_mut().enumerate() {
                for (row, grow) in x.iter_mut().zip(&gens[i]) {
                    for (xe, ge) in row.iter_mut().zip(grow) {
                        *xe = &*xe + ge;
                    }
                }
                *d += 1;
                if *d < p {
                    break;
                }
                *d = 0;
            }
        }
        let xbar: Vec<Vec<Elem>> = x.iter().map(|row| row.iter().map(|v| res.reduce(v)).collect()).collect();
        if !linalg::is_invertible(&res.field, &xbar) {
            continue;
        }
        gl += 1;
        let image = column_span_vectors(&poly_mat_mul(&x, basis, &modulus), &modulus, kd);
        let mut all = span_b.clone();
        all.extend(image);
        if linalg::rank(&field, &all) == rank_b {
            stab += 1;
        }
    }
    let (quo, rem) = gl.div_rem(&stab);
    debug_assert_eq!(rem, 0);
    Ok(BigUint::from(quo))
}

/// `h = A_n·(q − 1)/(q^{n+1−g} − 1)` for `n = max(2g − 1, 0)`, where `A_n`
/// counts effective divisors of degree `n` from the place counts.
pub fn class_number_from_divisors(ext: &Extension, budget: u64) -> Result<BigUint> {
    let g = ext.genus() as usize;
    let q = BigUint::from(ext.constant_field_size());
    let n = (2 * g).saturating_sub(1);
    // Coefficients of ∏_d (1 − u^d)^{−b_d} up to u^n.
    let mut series = vec![BigUint::zero(); n + 1];
    series[0] = BigUint::one();
    for d in 1..=n {
        let b = count_places(ext, d as u32, budget)?;
        for _ in 0..b {
            // Multiply by 1/(1 − u^d).
            for i in d..=n {
                let prev = series[i - d].clone();
                series[i] += prev;
            }
        }
    }
    let num = &series[n] * (&q - 1u32);
    let den = q.pow((n + 1 - g) as u32) - 1u32;
    let (h, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::InvalidArgument("divisor counts are not those of a curve".into()));
    }
    Ok(h)
}

/// `|∏_℘ (A/℘^k)^* / F_q^*|` by enumerating unit tuples and keeping the
/// smallest representative of each `F_q^*`-orbit.
pub fn components_exhaustive(level: &LevelMap, budget: u64) -> Result<BigUint> {
    let support = level.congruence_support();
    if support.is_empty() {
        return Ok(BigUint::one());
    }
    let field = level.base().clone();
    let q = field.size();
    let widths: Vec<usize> = support.iter().map(|(p, k)| p.degree() * *k as usize).collect();
    let total = within(q, widths.iter().sum::<usize>() as u32, budget)?;
    let encode = |polys: &[Poly]| -> Vec<u64> {
        polys
            .iter()
            .zip(&widths)
            .map(|(f, &w)| (0..w).rev().fold(0u64, |acc, i| acc * q + f.coeff(i)))
            .collect()
    };
    let mut count = 0u64;
    for mut n in 0..total {
        let mut polys = Vec::with_capacity(widths.len());
        for &w in &widths {
            let mut c = Vec::with_capacity(w);
            for _ in 0..w {
                c.push(n % q);
                n /= q;
            }
            polys.push(Poly::new(&field, c));
        }
        if support.iter().zip(&polys).any(|((p, _), f)| f.rem(p.poly()).is_zero()) {
            continue;
        }
        let code = encode(&polys);
        let canonical = (2..q).all(|c| {
            let scaled: Vec<Poly> = polys.iter().map(|f| f.scale(c)).collect();
            encode(&scaled) >= code
        });
        if canonical {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}

/// `q^{rank}` of the linear map whose kernel is `K ∩ g^{-1}Kg` modulo
/// `K(℘^{2k})`.
pub fn hecke_degree_by_rank(g: &LocalMatrix, k: u32) -> Result<BigUint> {
    let images = principal_part_images(g, k)?;
    let field = g.prime().field().clone();
    Ok(BigUint::from(field.size()).pow(linalg::rank(&field, &images) as u32))
}

/// Degree-`i` primes that split completely, decided by power-residue and
/// trace criteria rather than by factoring the defining polynomial.
pub fn split_primes_by_residue_symbol(ext: &Extension, i: u32, budget: u64) -> Result<u64> {
    let field = ext.base().clone();
    let q = field.size();
    let total = within(q, i, budget)?;
    let residue_size = q.pow(i);
    let mut count = 0;
    for n in 0..total {
        let p = monic_from_index(&field, i as usize, n);
        if !is_irreducible_by_trial(&p, budget)? {
            continue;
        }
        let split = match ext.kind() {
            ExtensionKind::Constant { n } => i.is_multiple_of(*n),
            ExtensionKind::Kummer { n, a } => {
                let u = a.rem(&p);
                !u.is_zero() && u.pow_mod((residue_size - 1) / *n as u64, &p).is_one()
            }
            ExtensionKind::ArtinSchreier { a } => {
                let u = a.rem(&p);
                let ch = field.characteristic();
                let steps = i * field.degree();
                let mut acc = Poly::zero(&field);
                let mut cur = u;
                for _ in 0..steps {
                    acc = &acc + &cur;
                    cur = cur.pow_mod(ch, &p);
                }
                acc.rem(&p).is_zero()
            }
            ExtensionKind::Generic { .. } if ext.is_rational() => true,
            ExtensionKind::Generic { .. } => return Err(Error::NotNormal),
        };
        if split {
            count += 1;
        }
    }
    Ok(count)
}
