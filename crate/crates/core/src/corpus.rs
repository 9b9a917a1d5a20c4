//! Corpus manifests: named rings and groups, loaded from builtin specs or
//! files, with a few families expanded into many instances.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::{builtin_group, load_group, FiniteGroup, GROUPS_UP_TO_16};
use crate::morphisms::{der_ring, der_subring_trivial_on_omega, hom_ring, TableRing};
use crate::ring::{builtin_ring, enumerate_rings, load_ring, AdditiveType, FiniteRing, DEFAULT_ENUMERATION_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    Ring,
    Group,
}

/// One manifest line. Exactly one of `spec` and `path` is set; `path` is
/// resolved against the manifest's directory.
///
/// Ring specs are builtin ring names plus the families
/// * `enum:{p}:{e1},{e2},...[:{filter}]`: every ring on that additive type,
///   filter one of `any`, `left-p-nil`, `right-p-nil`, `p-nil`, `not-p-nil`
/// * `homS:{group}`, `homZ:{group}`: `Hom(G, S(G))` and `Hom(G, Z(G))`
/// * `der:{group}`: `Der(G, G)` for abelian `G`
/// * `derOmega:{group}`: its subring vanishing on `Omega(G)`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub kind: EntryKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub metadata: Value,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub entries: Vec<ManifestEntry>,
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

pub enum Instance {
    Ring { id: String, ring: FiniteRing },
    Group { id: String, group: FiniteGroup },
}

impl Instance {
    pub fn id(&self) -> &str {
        match self {
            Instance::Ring { id, .. } | Instance::Group { id, .. } => id,
        }
    }
}

/// Groups of the default corpus beyond those of order at most 16.
pub const EXTRA_GROUPS: &[&str] = &[
    "es27", "m27", "c27", "c9xc3", "c3xc3xc3", "c25", "c5xc5", "c81", "c27xc3", "c9xc9", "c32", "c16xc2", "c8xc4",
    "d32", "q32", "sd32", "m32", "d8xc4", "q8xc4",
];

/// Hom and Der rings harvested for the default corpus.
const HARVESTED_RINGS: &[&str] = &[
    "homS:c4",
    "homS:c8",
    "homS:c9",
    "homS:q8",
    "homS:d8",
    "homS:c4xc2",
    "homS:c4xc4",
    "homS:m16",
    "homS:c4:c4",
    "homS:es27",
    "homS:m27",
    "homS:c9xc3",
    "homZ:q8",
    "homZ:d8",
    "homZ:c4xc2",
    "homZ:q16",
    "der:c4",
    "der:c2xc2",
    "der:c8",
    "der:c9",
    "der:c4xc2",
    "derOmega:c8",
    "derOmega:c4xc4",
    "derOmega:c27",
];

const NAMED_RINGS: &[&str] = &[
    "zero1", "zero2", "zero3", "zero5", "zero2x2", "zero3x3", "zero4", "zero9", "zero8x2", "z2", "z3", "z5", "z4",
    "z9", "z25", "z8", "z27", "z16", "z81", "pR:z8", "pR:z16", "pR:z27", "pR:z81", "pR:z125", "3z27", "4z16", "2z8",
    "t2_2", "t2_3", "ut3_2", "ut3_3",
];

impl CorpusManifest {
    pub fn from_json(text: &str) -> Result<Self> {
        let m: CorpusManifest = serde_json::from_str(text)?;
        let mut ids = BTreeSet::new();
        for e in &m.entries {
            if !ids.insert(e.id.as_str()) {
                return Err(Error::Parse(format!("duplicate manifest id {:?}", e.id)));
            }
            if e.spec.is_some() == e.path.is_some() {
                return Err(Error::Parse(format!(
                    "entry {:?} needs exactly one of spec and path",
                    e.id
                )));
            }
        }
        Ok(m)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut m = Self::from_json(&text)?;
        m.base_dir = path.parent().map(Path::to_path_buf);
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    /// The builtin corpus: every group of order at most 16, the extra groups
    /// above, all rings of order p and p^2 for p in {2, 3, 5}, named rings
    /// and harvested Hom/Der rings.
    pub fn default_corpus() -> Self {
        let mut entries = Vec::new();
        let mut push = |id: String, kind, spec: String| {
            entries.push(ManifestEntry {
                id,
                kind,
                spec: Some(spec),
                path: None,
                metadata: Value::Null,
            })
        };
        for p in [2, 3, 5] {
            for exps in ["1", "1,1", "2"] {
                push(
                    format!("enum-{p}-{}", exps.replace(',', "x")),
                    EntryKind::Ring,
                    format!("enum:{p}:{exps}"),
                );
            }
        }
        for spec in NAMED_RINGS.iter().chain(HARVESTED_RINGS) {
            push(spec.to_string(), EntryKind::Ring, spec.to_string());
        }
        for spec in GROUPS_UP_TO_16.iter().chain(EXTRA_GROUPS) {
            push(spec.to_string(), EntryKind::Group, spec.to_string());
        }
        CorpusManifest {
            entries,
            base_dir: None,
        }
    }

    /// Loads every entry, expanding families, in manifest order.
    pub fn instances(&self) -> Result<Vec<Instance>> {
        let mut out = Vec::new();
        for e in &self.entries {
            let context = |err: Error| Error::Parse(format!("entry {:?}: {err}", e.id));
            if let Some(path) = &e.path {
                let full = match &self.base_dir {
                    Some(dir) => dir.join(path),
                    None => PathBuf::from(path),
                };
                out.push(match e.kind {
                    EntryKind::Ring => Instance::Ring {
                        id: e.id.clone(),
                        ring: load_ring(&full).map_err(context)?,
                    },
                    EntryKind::Group => Instance::Group {
                        id: e.id.clone(),
                        group: load_group(&full).map_err(context)?,
                    },
                });
                continue;
            }
            let spec = e.spec.as_deref().expect("validated");
            match e.kind {
                EntryKind::Group => out.push(Instance::Group {
                    id: e.id.clone(),
                    group: builtin_group(spec).map_err(context)?,
                }),
                EntryKind::Ring => {
                    for (suffix, ring) in ring_family(spec).map_err(context)? {
                        out.push(Instance::Ring {
                            id: format!("{}{suffix}", e.id),
                            ring,
                        });
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingFilter {
    Any,
    LeftPNil,
    RightPNil,
    PNil,
    NotPNil,
}

impl RingFilter {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "any" | "none" => RingFilter::Any,
            "left-p-nil" => RingFilter::LeftPNil,
            "right-p-nil" => RingFilter::RightPNil,
            "p-nil" => RingFilter::PNil,
            "not-p-nil" => RingFilter::NotPNil,
            _ => return Err(Error::Parse(format!("unknown ring filter {s:?}"))),
        })
    }

    pub fn accepts(self, r: &FiniteRing) -> bool {
        match self {
            RingFilter::Any => true,
            RingFilter::LeftPNil => r.is_left_p_nil(),
            RingFilter::RightPNil => r.is_right_p_nil(),
            RingFilter::PNil => r.is_p_nil(),
            RingFilter::NotPNil => !r.is_left_p_nil() && !r.is_right_p_nil(),
        }
    }
}

/// Parses `{p}:{e1},{e2},...` into an additive type.
pub fn parse_additive_type(p: &str, exps: &str) -> Result<AdditiveType> {
    let p: u64 = p.parse().map_err(|_| Error::Parse(format!("bad prime {p:?}")))?;
    let exps = exps
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad exponent {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    AdditiveType::new(p, exps)
}

fn table_ring(t: Result<TableRing>, p: u64) -> Result<FiniteRing> {
    Ok(t?.to_finite_ring(p)?.0)
}

fn group_prime(g: &FiniteGroup, spec: &str) -> Result<u64> {
    g.prime()
        .ok_or_else(|| Error::arg(format!("{spec} is not a nontrivial p-group")))
}

/// Rings named by a spec with the id suffix of each; families yield
/// `#k`-suffixed members in enumeration order.
pub fn ring_family(spec: &str) -> Result<Vec<(String, FiniteRing)>> {
    if let Some(rest) = spec.strip_prefix("enum:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let (p, exps, filter) = match parts.as_slice() {
            [p, e] => (*p, *e, RingFilter::Any),
            [p, e, f] => (*p, *e, RingFilter::parse(f)?),
            _ => return Err(Error::Parse(format!("bad family spec {spec:?}"))),
        };
        let atype = parse_additive_type(p, exps)?;
        let rings = enumerate_rings(&atype, DEFAULT_ENUMERATION_BUDGET, move |r| filter.accepts(r))?;
        return Ok(rings.enumerate().map(|(k, r)| (format!("#{k}"), r)).collect());
    }
    let single = |r: FiniteRing| Ok(vec![(String::new(), r)]);
    if let Some(g) = spec.strip_prefix("homS:") {
        let group = builtin_group(g)?;
        let p = group_prime(&group, g)?;
        return single(table_ring(hom_ring(&group, &group.s_subgroup()?, false), p)?);
    }
    if let Some(g) = spec.strip_prefix("homZ:") {
        let group = builtin_group(g)?;
        let p = group_prime(&group, g)?;
        return single(table_ring(hom_ring(&group, &group.center(), false), p)?);
    }
    if let Some(g) = spec.strip_prefix("derOmega:") {
        let group = builtin_group(g)?;
        let p = group_prime(&group, g)?;
        return single(table_ring(der_subring_trivial_on_omega(&group, &group.whole()), p)?);
    }
    if let Some(g) = spec.strip_prefix("der:") {
        let group = builtin_group(g)?;
        let p = group_prime(&group, g)?;
        return single(table_ring(der_ring(&group, &group.whole()), p)?);
    }
    single(builtin_ring(spec)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_round_trip_and_validation() {
        let text = r#"{"entries":[{"id":"a","kind":"ring","spec":"z4"},{"id":"b","kind":"group","spec":"q8","metadata":{"note":1}}]}"#;
        let m = CorpusManifest::from_json(text).unwrap();
        assert_eq!(m.entries.len(), 2);
        assert_eq!(CorpusManifest::from_json(&m.to_json()).unwrap(), m);
        let dup = r#"{"entries":[{"id":"a","kind":"ring","spec":"z4"},{"id":"a","kind":"ring","spec":"z9"}]}"#;
        assert!(CorpusManifest::from_json(dup).is_err());
        let both = r#"{"entries":[{"id":"a","kind":"ring","spec":"z4","path":"x.json"}]}"#;
        assert!(CorpusManifest::from_json(both).is_err());
        assert!(CorpusManifest::from_json(r#"{"entries":[]}"#)
            .unwrap()
            .instances()
            .unwrap()
            .is_empty());
    }

    #[test]
    fn families() {
        // Z_2 carries the zero ring and the field
        assert_eq!(ring_family("enum:2:1").unwrap().len(), 2);
        let nil = ring_family("enum:3:1:left-p-nil").unwrap();
        assert_eq!(nil.len(), 1);
        assert_eq!(nil[0].0, "#0");
        assert_eq!(ring_family("homS:c9").unwrap()[0].1.order(), 3);
        assert_eq!(ring_family("der:c4").unwrap()[0].1.order(), 4);
        assert!(ring_family("homS:c6").is_err());
        assert!(ring_family("enum:4:1").is_err());
    }

    #[test]
    fn default_corpus_loads() {
        let m = CorpusManifest::default_corpus();
        let instances = m.instances().unwrap();
        let ids: BTreeSet<&str> = instances.iter().map(Instance::id).collect();
        assert_eq!(ids.len(), instances.len());
        assert!(ids.contains("q8") && ids.contains("3z27") && ids.contains("enum-5-1x1#0"));
    }
}
