use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::{Extension, ExtensionSpec};
use crate::ffpoly::{FiniteField, Prime};
use crate::json::{matrix_exprs, parse_matrix, parse_prime};
use crate::localfield::{Lattice, LocalMatrix};

/// Local factor `s·G·s^{-1}` of a level, `G = GL_r(A_℘)` or `K(℘^k)`.
#[derive(Clone, Debug)]
pub enum LocalLevel {
    Maximal { s: LocalMatrix },
    Congruence { s: LocalMatrix, depth: u32 },
}

impl LocalLevel {
    pub fn s(&self) -> &LocalMatrix {
        match self {
            LocalLevel::Maximal { s } | LocalLevel::Congruence { s, .. } => s,
        }
    }

    pub fn depth(&self) -> u32 {
        match self {
            LocalLevel::Maximal { .. } => 0,
            LocalLevel::Congruence { depth, .. } => *depth,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelKind {
    Maximal,
    Congruence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelEntrySpec {
    pub prime: String,
    pub kind: LevelKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<Vec<String>>>,
}

/// Finitely supported `℘ ↦ LocalLevel`; `Maximal(identity)` elsewhere.
#[derive(Clone, Debug)]
pub struct LevelMap {
    base: Arc<FiniteField>,
    r: usize,
    prec: u32,
    entries: BTreeMap<Prime, LocalLevel>,
}

impl LevelMap {
    pub fn maximal(base: &Arc<FiniteField>, r: usize, prec: u32) -> Self {
        LevelMap {
            base: base.clone(),
            r,
            prec,
            entries: BTreeMap::new(),
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn base(&self) -> &Arc<FiniteField> {
        &self.base
    }

    pub fn set(&mut self, prime: &Prime, level: LocalLevel) -> Result<()> {
        let s = level.s();
        if s.rows() != self.r || s.cols() != self.r {
            return Err(Error::InvalidArgument(format!("level matrix at {prime} is not {}×{}", self.r, self.r)));
        }
        s.inverse()?;
        if let LocalLevel::Congruence { depth: 0, .. } = level {
            return Err(Error::InvalidArgument("congruence depth must be at least 1".into()));
        }
        self.entries.insert(prime.clone(), level);
        Ok(())
    }

    pub fn get(&self, prime: &Prime) -> LocalLevel {
        self.entries.get(prime).cloned().unwrap_or_else(|| LocalLevel::Maximal {
            s: LocalMatrix::identity(prime, self.r, self.prec),
        })
    }

    pub fn support(&self) -> impl Iterator<Item = (&Prime, &LocalLevel)> {
        self.entries.iter()
    }

    /// `(℘, k)` for every congruence factor.
    pub fn congruence_support(&self) -> Vec<(Prime, u32)> {
        self.entries
            .iter()
            .filter_map(|(p, l)| match l {
                LocalLevel::Congruence { depth, .. } => Some((p.clone(), *depth)),
                LocalLevel::Maximal { .. } => None,
            })
            .collect()
    }

    /// Some factor is a congruence subgroup of positive depth.
    pub fn amply_small(&self) -> bool {
        !self.congruence_support().is_empty()
    }

    pub fn from_spec(base: &Arc<FiniteField>, r: usize, entries: &[LevelEntrySpec], prec: u32) -> Result<Self> {
        let mut map = LevelMap::maximal(base, r, prec);
        for e in entries {
            let prime = parse_prime(&e.prime, base)?;
            if map.entries.contains_key(&prime) {
                return Err(Error::Parse(format!("level given twice at {prime}")));
            }
            let s = match &e.s {
                Some(rows) => parse_matrix(rows, &prime, r, prec)?,
                None => LocalMatrix::identity(&prime, r, prec),
            };
            let level = match e.kind {
                LevelKind::Maximal => {
                    if e.depth.is_some_and(|d| d != 0) {
                        return Err(Error::Parse("a maximal level has no depth".into()));
                    }
                    LocalLevel::Maximal { s }
                }
                LevelKind::Congruence => LocalLevel::Congruence {
                    s,
                    depth: e.depth.ok_or_else(|| Error::Parse("congruence level needs a depth".into()))?,
                },
            };
            map.set(&prime, level)?;
        }
        Ok(map)
    }

    pub fn to_spec(&self) -> Vec<LevelEntrySpec> {
        self.entries
            .iter()
            .map(|(p, l)| LevelEntrySpec {
                prime: p.to_string(),
                kind: match l {
                    LocalLevel::Maximal { .. } => LevelKind::Maximal,
                    LocalLevel::Congruence { .. } => LevelKind::Congruence,
                },
                depth: match l {
                    LocalLevel::Maximal { .. } => None,
                    LocalLevel::Congruence { depth, .. } => Some(*depth),
                },
                s: Some(matrix_exprs(l.s())),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistSpec {
    pub prime: String,
    pub matrix: Vec<Vec<String>>,
}

/// `{extension, r, twists: [{prime, matrix}], level: [{prime, kind, depth, s}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumSpec {
    pub extension: ExtensionSpec,
    pub r: usize,
    #[serde(default)]
    pub twists: Vec<TwistSpec>,
    #[serde(default)]
    pub level: Vec<LevelEntrySpec>,
}

/// A reflex field `F′`, the rank `r = r′·[F′:F]`, local twists of the
/// standard power-basis identification and a level.
#[derive(Clone, Debug)]
pub struct SubvarietyDatum {
    pub extension: Extension,
    pub r: usize,
    twists: BTreeMap<Prime, LocalMatrix>,
    pub level: LevelMap,
}

impl SubvarietyDatum {
    pub fn new(extension: Extension, r: usize, level: LevelMap) -> Result<Self> {
        let m = extension.degree();
        if r == 0 || !r.is_multiple_of(m) {
            return Err(Error::InvalidArgument(format!("r = {r} is not a multiple of [F′:F] = {m}")));
        }
        if level.r() != r {
            return Err(Error::InvalidArgument("level rank does not match r".into()));
        }
        Ok(SubvarietyDatum {
            extension,
            r,
            twists: BTreeMap::new(),
            level,
        })
    }

    pub fn with_twist(mut self, prime: &Prime, g: LocalMatrix) -> Result<Self> {
        if g.rows() != self.r || g.cols() != self.r {
            return Err(Error::InvalidArgument(format!("twist at {prime} is not {}×{}", self.r, self.r)));
        }
        g.inverse()?;
        self.twists.insert(prime.clone(), g);
        Ok(self)
    }

    pub fn r_prime(&self) -> usize {
        self.r / self.extension.degree()
    }

    pub fn precision(&self) -> u32 {
        self.level.precision()
    }

    pub fn twists(&self) -> impl Iterator<Item = (&Prime, &LocalMatrix)> {
        self.twists.iter()
    }

    pub fn twist(&self, prime: &Prime) -> LocalMatrix {
        self.twists
            .get(prime)
            .cloned()
            .unwrap_or_else(|| LocalMatrix::identity(prime, self.r, self.precision()))
    }

    /// `Λ′_℘ = g_℘·A_℘^r` inside `R′^{r′} = A_℘^r`.
    pub fn lattice_at(&self, prime: &Prime) -> Result<Lattice> {
        Lattice::new(self.twist(prime))
    }

    pub fn from_spec(spec: &DatumSpec, prec: u32) -> Result<Self> {
        let ext = Extension::from_spec(&spec.extension)?;
        let base = ext.base().clone();
        let level = LevelMap::from_spec(&base, spec.r, &spec.level, prec)?;
        let mut d = SubvarietyDatum::new(ext, spec.r, level)?;
        for t in &spec.twists {
            let prime = parse_prime(&t.prime, &base)?;
            if d.twists.contains_key(&prime) {
                return Err(Error::Parse(format!("twist given twice at {prime}")));
            }
            let g = parse_matrix(&t.matrix, &prime, spec.r, prec)?;
            d = d.with_twist(&prime, g)?;
        }
        Ok(d)
    }

    pub fn to_spec(&self) -> DatumSpec {
        DatumSpec {
            extension: self.extension.to_spec(),
            r: self.r,
            twists: self
                .twists
                .iter()
                .map(|(p, g)| TwistSpec {
                    prime: p.to_string(),
                    matrix: matrix_exprs(g),
                })
                .collect(),
            level: self.level.to_spec(),
        }
    }
}
