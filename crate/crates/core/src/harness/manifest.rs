//! TOML manifests describing a ring, its sequences and sampling.
//!
//! ```toml
//! [ring]
//! p = 2
//! vars = ["x", "y", "z"]
//! relations = ["x^3+y^3+z^3"]
//!
//! [[sequence]]
//! elements = ["x", "y"]
//!
//! [sampling]
//! count = 5
//! degree = 2
//! seed = 0
//!
//! [known]
//! hsl_top = 1
//! provenance = "..."
//! ```

use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::error::AlgebraError;
use crate::ideal::{Ideal, QuotientRing};
use crate::monomial::MonomialOrder;
use crate::parse::parse_polynomial;
use crate::poly::{PolyRing, Polynomial};

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{id}: {msg}")]
    Toml { id: String, msg: String },
    #[error("{id}: {field}: {source}")]
    Algebra {
        id: String,
        field: String,
        source: AlgebraError,
    },
    #[error("{id}: {msg}")]
    Invalid { id: String, msg: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    ring: RawRing,
    #[serde(default)]
    sequence: Vec<RawSequence>,
    sampling: Option<RawSampling>,
    known: Option<RawKnown>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRing {
    p: i64,
    vars: Vec<String>,
    #[serde(default)]
    relations: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSequence {
    elements: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSampling {
    count: i64,
    degree: i64,
    seed: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKnown {
    hsl_top: Option<i64>,
    provenance: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub count: usize,
    pub degree: u32,
    pub seed: u64,
}

/// HSL of the top local cohomology, declared with where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnownHsl {
    pub hsl_top: u32,
    pub provenance: String,
}

#[derive(Clone, Debug)]
pub struct Manifest {
    pub id: String,
    pub ring: QuotientRing,
    pub relations: Vec<String>,
    pub sequences: Vec<Vec<Polynomial>>,
    pub sampling: Sampling,
    pub known: Option<KnownHsl>,
}

impl Manifest {
    /// Reads a manifest; its id is the file stem.
    pub fn load(path: &Path, order: MonomialOrder) -> Result<Self, ManifestError> {
        let text = std::fs::read_to_string(path).map_err(|e| ManifestError::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "manifest".into());
        Self::parse(&text, &id, order)
    }

    pub fn parse(text: &str, id: &str, order: MonomialOrder) -> Result<Self, ManifestError> {
        let raw: RawManifest = toml::from_str(text).map_err(|e| ManifestError::Toml {
            id: id.into(),
            msg: e.to_string(),
        })?;
        let invalid = |msg: String| ManifestError::Invalid { id: id.into(), msg };
        let algebra = |field: String, source: AlgebraError| ManifestError::Algebra {
            id: id.into(),
            field,
            source,
        };
        let p = u64::try_from(raw.ring.p).map_err(|_| invalid(format!("ring.p = {} is negative", raw.ring.p)))?;
        let ring: Arc<PolyRing> = PolyRing::new(p, &raw.ring.vars, order).map_err(|e| algebra("ring".into(), e))?;
        let relations = raw
            .ring
            .relations
            .iter()
            .enumerate()
            .map(|(i, r)| parse_polynomial(r, &ring).map_err(|e| algebra(format!("ring.relations[{i}]"), e)))
            .collect::<Result<Vec<_>, _>>()?;
        let defining = Ideal::new(&ring, relations).expect("parsed in ring");
        let sequences = raw
            .sequence
            .iter()
            .enumerate()
            .map(|(k, seq)| {
                seq.elements
                    .iter()
                    .enumerate()
                    .map(|(i, e)| {
                        parse_polynomial(e, &ring).map_err(|err| algebra(format!("sequence[{k}].elements[{i}]"), err))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let sampling = match raw.sampling {
            None => Sampling {
                count: 0,
                degree: 1,
                seed: 0,
            },
            Some(s) => Sampling {
                count: usize::try_from(s.count).map_err(|_| invalid("sampling.count must be >= 0".into()))?,
                degree: u32::try_from(s.degree)
                    .ok()
                    .filter(|&d| d >= 1)
                    .ok_or_else(|| invalid("sampling.degree must be >= 1".into()))?,
                seed: u64::try_from(s.seed).map_err(|_| invalid("sampling.seed must be >= 0".into()))?,
            },
        };
        let known = match raw.known {
            None => None,
            Some(RawKnown { hsl_top: None, .. }) => None,
            Some(RawKnown {
                hsl_top: Some(h),
                provenance,
            }) => {
                let hsl_top = u32::try_from(h).map_err(|_| invalid(format!("known.hsl_top = {h} must be >= 0")))?;
                let provenance = provenance
                    .filter(|p| !p.trim().is_empty())
                    .ok_or_else(|| invalid("known.hsl_top requires a provenance note".into()))?;
                Some(KnownHsl { hsl_top, provenance })
            }
        };
        Ok(Manifest {
            id: id.into(),
            ring: QuotientRing::new(defining),
            relations: raw.ring.relations,
            sequences,
            sampling,
            known,
        })
    }
}

impl std::str::FromStr for Manifest {
    type Err = ManifestError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Manifest::parse(s, "manifest", MonomialOrder::Grevlex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FERMAT: &str = r#"
[ring]
p = 2
vars = ["x", "y", "z"]
relations = ["x^3+y^3+z^3"]

[[sequence]]
elements = ["x", "y"]

[sampling]
count = 2
degree = 2
seed = 11

[known]
hsl_top = 1
provenance = "test"
"#;

    #[test]
    fn loads_fermat() {
        let m: Manifest = FERMAT.parse().unwrap();
        assert_eq!(m.ring.characteristic(), 2);
        assert_eq!(m.sequences.len(), 1);
        assert_eq!(m.sampling, Sampling { count: 2, degree: 2, seed: 11 });
        assert_eq!(m.known.unwrap().hsl_top, 1);
    }

    #[test]
    fn empty_relations_is_polynomial_ring() {
        let m: Manifest = "[ring]\np = 5\nvars = [\"a\", \"b\"]\nrelations = []\n".parse().unwrap();
        assert!(m.ring.is_polynomial_ring());
        assert!(m.sequences.is_empty());
    }

    #[test]
    fn rejections() {
        let bad_p = "[ring]\np = 4\nvars = [\"x\"]\n";
        assert!(matches!(
            bad_p.parse::<Manifest>(),
            Err(ManifestError::Algebra { source: AlgebraError::NotPrime(4), .. })
        ));
        let unknown = "[ring]\np = 2\nvars = [\"x\"]\ncolour = 1\n";
        let err = unknown.parse::<Manifest>().unwrap_err();
        assert!(matches!(err, ManifestError::Toml { .. }));
        assert!(err.to_string().contains("line 4"), "{err}");
        let no_prov = "[ring]\np = 2\nvars = [\"x\"]\n[known]\nhsl_top = 1\n";
        assert!(matches!(no_prov.parse::<Manifest>(), Err(ManifestError::Invalid { .. })));
        let neg = "[ring]\np = 2\nvars = [\"x\"]\n[known]\nhsl_top = -1\nprovenance = \"x\"\n";
        assert!(matches!(neg.parse::<Manifest>(), Err(ManifestError::Invalid { .. })));
        let bad_rel = "[ring]\np = 2\nvars = [\"x\"]\nrelations = [\"x+w\"]\n";
        let err = bad_rel.parse::<Manifest>().unwrap_err();
        assert!(err.to_string().contains("ring.relations[0]"), "{err}");
    }
}
