use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::{splitting, ExtensionKind};

use super::datum::SubvarietyDatum;
use super::search::{is_good_prime, GoodPrimeCertificate, GoodPrimeOutcome};

/// The place of the intermediate field `F″` under the witness place `℘′`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceBelow {
    #[serde(serialize_with = "crate::json::ser_display")]
    pub prime: crate::ffpoly::Prime,
    /// `[F″ : F]`.
    pub field_degree: usize,
    /// Residue degree of `℘″` over `℘`.
    pub residue_degree: u32,
    pub residue_size: u64,
}

#[derive(Clone, Debug)]
pub struct TransferReport {
    pub place: PlaceBelow,
    pub inner: GoodPrimeOutcome,
}

/// Moves a good prime of `outer` (reflex field `F′`) to `inner` (reflex
/// field `F″ ⊆ F′`). Supported towers: `F″ = F`, `F″ = F′`, and constant
/// extensions `F_{q^{n″}}(t) ⊆ F_{q^{n′}}(t)`.
pub fn transfer_good_prime(
    outer: &SubvarietyDatum,
    inner: &SubvarietyDatum,
    cert: &GoodPrimeCertificate,
) -> Result<TransferReport> {
    if !cert.recheck(outer)? {
        return Err(Error::InvalidArgument("certificate does not match the outer datum".into()));
    }
    if inner.r != outer.r || inner.extension.base().size() != outer.extension.base().size() {
        return Err(Error::InvalidArgument("inner datum must share r and the base field".into()));
    }
    let prime = &cert.prime;
    let (fo, eo) = cert.splitting.places[cert.witness_place];
    debug_assert_eq!(fo * eo, 1);
    let ext = &inner.extension;
    let residue_degree = if ext.is_rational() || ext.same_as(&outer.extension) {
        1
    } else {
        match (ext.kind(), outer.extension.kind()) {
            (ExtensionKind::Constant { n: inner_n }, ExtensionKind::Constant { n: outer_n })
                if outer_n % inner_n == 0 =>
            {
                let s = splitting(ext, prime)?;
                s.places[0].0
            }
            _ => return Err(Error::TowerNotSupported),
        }
    };
    let place = PlaceBelow {
        prime: prime.clone(),
        field_degree: ext.degree(),
        residue_degree,
        residue_size: prime.residue_size().pow(residue_degree),
    };
    Ok(TransferReport {
        place,
        inner: is_good_prime(inner, prime)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::Extension;
    use crate::ffpoly::{FiniteField, Prime};
    use crate::goodprime::{shrink_level, LevelMap};

    fn datum(ext: Extension, prime: &Prime) -> SubvarietyDatum {
        let k = ext.base().clone();
        let (level, _) = shrink_level(&LevelMap::maximal(&k, 4, 12), prime).unwrap();
        SubvarietyDatum::new(ext, 4, level).unwrap()
    }

    #[test]
    fn constant_tower_keeps_residue_size() {
        let k = FiniteField::prime(2).unwrap();
        let p = crate::ffpoly::prime::primes_of_degree(&k, 4).unwrap()[0].clone();
        let outer = datum(Extension::constant(&k, 4).unwrap(), &p);
        let cert = is_good_prime(&outer, &p).unwrap().certificate().unwrap().clone();
        for inner_ext in [Extension::constant(&k, 2).unwrap(), Extension::rational(&k), Extension::constant(&k, 4).unwrap()] {
            let inner = datum(inner_ext, &p);
            let rep = transfer_good_prime(&outer, &inner, &cert).unwrap();
            assert_eq!(rep.place.residue_size, 16);
            assert!(rep.inner.certificate().is_some());
        }
    }

    #[test]
    fn unrelated_inner_field_is_refused() {
        let k = FiniteField::prime(2).unwrap();
        let p = crate::ffpoly::prime::primes_of_degree(&k, 4).unwrap()[0].clone();
        let outer = datum(Extension::constant(&k, 4).unwrap(), &p);
        let cert = is_good_prime(&outer, &p).unwrap().certificate().unwrap().clone();
        let inner = datum(
            Extension::artin_schreier(&k, crate::ffpoly::text::parse_poly("t", &k).unwrap()).unwrap(),
            &p,
        );
        assert_eq!(transfer_good_prime(&outer, &inner, &cert).unwrap_err(), Error::TowerNotSupported);
    }
}
