use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffpoly::{factor, Poly, Prime};

use super::{Extension, ExtensionKind};

/// Decomposition of `℘` in `F′`: one `(f_i, e_i)` per place above it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingType {
    #[serde(serialize_with = "crate::json::ser_display")]
    pub prime: Prime,
    pub places: Vec<(u32, u32)>,
    pub unramified: bool,
}

impl SplittingType {
    fn new(prime: &Prime, mut places: Vec<(u32, u32)>) -> Self {
        places.sort_unstable();
        SplittingType {
            prime: prime.clone(),
            unramified: places.iter().all(|&(_, e)| e == 1),
            places,
        }
    }

    /// `Σ e_i f_i`.
    pub fn total_degree(&self) -> u32 {
        self.places.iter().map(|&(f, e)| f * e).sum()
    }

    /// Whether some place above `℘` has `e·f = 1`.
    pub fn has_degree_one_place(&self) -> bool {
        self.places.iter().any(|&(f, e)| f * e == 1)
    }

    pub fn splits_completely(&self) -> bool {
        self.places.iter().all(|&(f, e)| f == 1 && e == 1)
    }

    /// `e<TAB>f` rows.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("e\tf\n");
        for &(f, e) in &self.places {
            out.push_str(&format!("{e}\t{f}\n"));
        }
        out
    }
}

/// Residue degrees of the factors of `f` over `k(℘)`, with multiplicities.
fn residue_factor_degrees(prime: &Prime, f: &[Poly]) -> Result<Vec<(u32, u32)>> {
    let k = prime.residue_field()?;
    let fbar = Poly::new(&k.field, f.iter().map(|c| k.reduce(c)).collect());
    Ok(factor(&fbar)?
        .factors
        .iter()
        .map(|(g, e)| (g.degree().unwrap_or(0) as u32, *e))
        .collect())
}

fn unramified_from(prime: &Prime, f: &[Poly]) -> Result<SplittingType> {
    let data = residue_factor_degrees(prime, f)?;
    if data.iter().any(|&(_, e)| e > 1) {
        return Err(Error::UnsupportedRamifiedPrime(prime.to_string()));
    }
    Ok(SplittingType::new(prime, data.into_iter().map(|(d, _)| (d, 1)).collect()))
}

pub fn splitting(ext: &Extension, prime: &Prime) -> Result<SplittingType> {
    if prime.field().size() != ext.base().size() {
        return Err(Error::InvalidArgument("prime and extension live over different fields".into()));
    }
    let d = prime.degree() as u32;
    match ext.kind() {
        ExtensionKind::Constant { n } => {
            let g = d.gcd(n);
            Ok(SplittingType::new(prime, vec![(n / g, 1); g as usize]))
        }
        ExtensionKind::ArtinSchreier { .. } => unramified_from(prime, ext.defining_poly()),
        ExtensionKind::Kummer { n, a } => {
            let (v, cofactor) = a.valuation_at(prime.poly());
            if v == 0 {
                return unramified_from(prime, ext.defining_poly());
            }
            // y^n = π^v·u: the unramified part is z^g = u with g = gcd(n, v).
            let g = n.gcd(&v);
            let k = prime.residue_field()?;
            let u0 = k.reduce(&cofactor);
            let mut z = vec![0; g as usize + 1];
            z[0] = k.field.neg(u0);
            z[g as usize] = 1;
            let places = factor(&Poly::new(&k.field, z))?
                .factors
                .iter()
                .map(|(h, _)| (h.degree().unwrap_or(0) as u32, n / g))
                .collect();
            Ok(SplittingType::new(prime, places))
        }
        ExtensionKind::Generic { .. } => {
            if !ext.is_separable() {
                // Purely inseparable of degree p: one totally ramified place.
                return Ok(SplittingType::new(prime, vec![(1, ext.degree() as u32)]));
            }
            unramified_from(prime, ext.defining_poly())
        }
    }
}
