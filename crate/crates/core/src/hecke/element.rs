use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::ffpoly::{Poly, Prime};
use crate::hecke::charpoly::char_poly;
use crate::hecke::newton::{newton_polygon, NewtonPolygon};
use crate::localfield::{smith_normal_form, LocalElement, LocalMatrix};

/// `g_℘ = s_℘·diag(π^{-1}, 1, …, 1)·s_℘^{-1}`.
#[derive(Clone, Debug)]
pub struct HeckeElement {
    pub prime: Prime,
    pub r: usize,
    pub matrix: LocalMatrix,
    pub conjugator: LocalMatrix,
    pub declared_degree: BigUint,
}

impl HeckeElement {
    pub fn from_conjugator(s: LocalMatrix) -> Result<Self> {
        let prime = s.prime().clone();
        let r = s.rows();
        let prec = s.max_rel_prec().max(1);
        let d = crate::hecke::degree::standard_hecke_matrix(&prime, r, prec);
        let matrix = s.mul(&d).mul(&s.inverse()?);
        Ok(HeckeElement {
            declared_degree: BigUint::from(prime.residue_size()).pow(r as u32 - 1),
            prime,
            r,
            matrix,
            conjugator: s,
        })
    }
}

/// Single Newton segment of the characteristic polynomial.
pub fn projectively_bounded(g: &LocalMatrix) -> Result<bool> {
    Ok(newton_polygon(&char_poly(g)?)?.segment_count() == 1)
}

/// `e_r − e_1` for the elementary divisors of `g^n`, `n = 1..=max_power`.
pub fn snf_spreads(g: &LocalMatrix, max_power: u32) -> Result<Vec<i64>> {
    let mut out = Vec::with_capacity(max_power as usize);
    let mut acc = g.clone();
    for n in 1..=max_power {
        if n > 1 {
            acc = acc.mul(g);
        }
        out.push(smith_normal_form(&acc)?.spread());
    }
    Ok(out)
}

/// Outcome of the spread test along `n = r, 2r, 3r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadComparison {
    pub single_slope: bool,
    pub spreads: Vec<i64>,
    pub strictly_increasing: bool,
    pub agrees: bool,
}

/// Compares the single-slope predicate with spread growth of `g^r, g^{2r},
/// g^{3r}`: unbounded should mean strictly increasing spread, bounded
/// should not.
pub fn spread_cross_check(g: &LocalMatrix) -> Result<SpreadComparison> {
    let single_slope = projectively_bounded(g)?;
    let r = g.rows() as u32;
    let all = snf_spreads(g, 3 * r)?;
    let spreads: Vec<i64> = [r, 2 * r, 3 * r].iter().map(|&n| all[n as usize - 1]).collect();
    let strictly_increasing = spreads.windows(2).all(|w| w[0] < w[1]);
    Ok(SpreadComparison {
        single_slope,
        agrees: single_slope != strictly_increasing,
        spreads,
        strictly_increasing,
    })
}

/// Valuations of `a_0`, `a_{r-1}` and the Newton polygon of `char_poly(m)`.
#[derive(Clone, Debug)]
pub struct CharPolyProfile {
    pub v_a0: Option<i64>,
    pub v_a_top: Option<i64>,
    pub polygon: NewtonPolygon,
}

impl CharPolyProfile {
    /// `v(a_0) = v(a_{r-1}) = −1` and at least two segments.
    pub fn certifies_unbounded(&self) -> bool {
        self.v_a0 == Some(-1) && self.v_a_top == Some(-1) && self.polygon.segment_count() >= 2
    }
}

pub fn profile(m: &LocalMatrix) -> Result<CharPolyProfile> {
    let c = char_poly(m)?;
    let r = m.rows();
    Ok(CharPolyProfile {
        v_a0: c[0].valuation(),
        v_a_top: c[r - 1].valuation(),
        polygon: newton_polygon(&c)?,
    })
}

/// Random `I + π·X` with `X` integral modulo `℘^prec`.
pub fn random_congruence_element(prime: &Prime, r: usize, prec: u32, rng: &mut ChaCha8Rng) -> LocalMatrix {
    let field = prime.field().clone();
    let len = prec as usize * prime.degree();
    LocalMatrix::from_fn(prime, r, r, |i, j| {
        let x = Poly::new(&field, (0..len).map(|_| rng.gen_range(0..field.size())).collect());
        let e = LocalElement::from_poly(prime, &x, prec).shift(1).truncate_abs(prec as i64);
        if i == j {
            e.add(&LocalElement::one(prime, prec))
        } else {
            e
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleReport {
    pub samples: usize,
    pub passed: usize,
    /// Indices of samples that failed to certify two segments.
    pub violations: Vec<usize>,
}

/// For seeded `k_1, k_2 ∈ K(℘)`, checks `char_poly(k_2^{-1}·d·k_1^{-1})` for
/// `v(a_0) = v(a_{r-1}) = −1` and at least two Newton segments.
pub fn unboundedness_sample_check(d: &LocalMatrix, samples: usize, seed: u64) -> Result<SampleReport> {
    let prime = d.prime().clone();
    let r = d.rows();
    let prec = d.max_rel_prec().max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for s in 0..samples {
        let k1 = random_congruence_element(&prime, r, prec, &mut rng);
        let k2 = random_congruence_element(&prime, r, prec, &mut rng);
        let m = k2.inverse()?.mul(d).mul(&k1.inverse()?);
        let ok = match profile(&m) {
            Ok(p) => p.certifies_unbounded(),
            Err(crate::Error::PrecisionExhausted(_)) => false,
            Err(e) => return Err(e),
        };
        if !ok {
            violations.push(s);
        }
    }
    Ok(SampleReport {
        samples,
        passed: samples - violations.len(),
        violations,
    })
}

/// The `r × r` companion matrix of `λ^r − π`.
pub fn companion_lambda_r_minus_pi(prime: &Prime, r: usize, prec: u32) -> LocalMatrix {
    let mut m = LocalMatrix::zeros(prime, r, r);
    for i in 0..r - 1 {
        m.set(i + 1, i, LocalElement::one(prime, prec));
    }
    m.set(0, r - 1, LocalElement::pi_power(prime, 1, prec));
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::FiniteField;
    use crate::hecke::degree::standard_hecke_matrix;

    fn prime_t(p: u64) -> Prime {
        Prime::new(Poly::var(&FiniteField::prime(p).unwrap())).unwrap()
    }

    #[test]
    fn companion_is_bounded() {
        let p = prime_t(2);
        assert!(projectively_bounded(&companion_lambda_r_minus_pi(&p, 2, 12)).unwrap());
        let c = companion_lambda_r_minus_pi(&p, 2, 12);
        // Its square is the scalar π.
        let sq = c.mul(&c);
        let pi_i = LocalMatrix::pi_diag(&p, &[1, 1], 12);
        assert!(sq.agrees_with(&pi_i));
    }

    #[test]
    fn diag_is_unbounded() {
        let p = prime_t(2);
        assert!(!projectively_bounded(&standard_hecke_matrix(&p, 2, 12)).unwrap());
    }

    #[test]
    fn scalars_are_bounded() {
        let p = prime_t(3);
        assert!(projectively_bounded(&LocalMatrix::pi_diag(&p, &[3, 3, 3], 12)).unwrap());
    }

    #[test]
    fn samples_pass_for_r2_q2() {
        let p = prime_t(2);
        let d = standard_hecke_matrix(&p, 2, 12);
        let rep = unboundedness_sample_check(&d, 100, 0).unwrap();
        assert_eq!(rep.passed, 100);
    }

    #[test]
    fn adversarial_companion_reports_single_segment() {
        let p = prime_t(3);
        let c = companion_lambda_r_minus_pi(&p, 3, 12);
        let prof = profile(&c).unwrap();
        assert_eq!(prof.polygon.segment_count(), 1);
        assert!(!prof.certifies_unbounded());
    }

    #[test]
    fn trivial_conjugator_gives_diag() {
        let p = prime_t(2);
        let h = HeckeElement::from_conjugator(LocalMatrix::identity(&p, 3, 12)).unwrap();
        assert!(h.matrix.agrees_with(&standard_hecke_matrix(&p, 3, 12)));
        assert_eq!(h.declared_degree, BigUint::from(4u32));
    }
}
