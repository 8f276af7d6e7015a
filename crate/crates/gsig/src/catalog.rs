//! TOML catalog of manifold invariants.
//!
//! One `[[manifold]]` table per entry:
//!
//! ```toml
//! [[manifold]]
//! name = "K3"
//! chi = 24
//! sigma = -16
//! spin = true
//! minimal = true
//! flags = ["sw_nonvanishing", "b1_zero"]
//! h1_zero = true          # optional, defaults to true
//! note = "free text"      # optional
//! ```
//!
//! Property (*) is recomputed from the flags on load and never read from the
//! file.

use std::path::Path;

use gsig_core::evidence::derive_star;
use gsig_core::{ManifoldInvariants, StarEvidence, StarRule};
use serde::{Deserialize, Serialize};

pub const SEED: &str = include_str!("../data/seed_catalog.toml");

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("catalog parse error: {0}")]
    Parse(String),
    #[error("catalog entry {index} ({name}) at line {line}: {source}")]
    Entry {
        index: usize,
        name: String,
        line: usize,
        #[source]
        source: gsig_core::Error,
    },
    #[error("duplicate catalog entry name {name:?} at line {line}")]
    Duplicate { name: String, line: usize },
    #[error("cannot read catalog {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("no manifold named {0:?} in the catalog")]
    NotFound(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub invariants: ManifoldInvariants,
    pub note: String,
    /// Recomputed on load.
    pub star: StarRule,
}

impl CatalogEntry {
    pub fn new(invariants: ManifoldInvariants, note: impl Into<String>) -> gsig_core::Result<Self> {
        invariants.validate()?;
        let star = derive_star(&invariants)?;
        Ok(CatalogEntry { invariants, note: note.into(), star })
    }

    pub fn name(&self) -> &str {
        &self.invariants.name
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: String,
    chi: i64,
    sigma: i64,
    spin: bool,
    minimal: bool,
    #[serde(default)]
    flags: Vec<String>,
    #[serde(default = "default_true")]
    h1_zero: bool,
    #[serde(default)]
    note: String,
}

fn default_true() -> bool {
    true
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(default)]
    manifold: Vec<toml::Spanned<RawEntry>>,
}

#[derive(Serialize)]
struct RawDocumentOut<'a> {
    manifold: Vec<&'a RawEntry>,
}

fn line_of(source: &str, offset: usize) -> usize {
    source[..offset.min(source.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

/// Parses and validates a catalog document.
pub fn load_catalog(source: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let doc: RawDocument = toml::from_str(source).map_err(|e| CatalogError::Parse(e.to_string()))?;
    let mut entries: Vec<CatalogEntry> = Vec::with_capacity(doc.manifold.len());
    for (index, spanned) in doc.manifold.into_iter().enumerate() {
        let line = line_of(source, spanned.span().start);
        let raw = spanned.into_inner();
        let name = raw.name.clone();
        let wrap = |source| CatalogError::Entry { index, name: name.clone(), line, source };
        let facts = StarEvidence::from_flags(raw.flags.iter().map(String::as_str)).map_err(wrap)?;
        let invariants = ManifoldInvariants::new(raw.name.clone(), raw.chi, raw.sigma)
            .map_err(wrap)?
            .with_spin(raw.spin)
            .with_minimal(raw.minimal)
            .with_evidence(facts)
            .with_h1_zero(raw.h1_zero);
        let entry = CatalogEntry::new(invariants, raw.note).map_err(wrap)?;
        if entries.iter().any(|e| e.name().eq_ignore_ascii_case(&name)) {
            return Err(CatalogError::Duplicate { name, line });
        }
        entries.push(entry);
    }
    Ok(entries)
}

pub fn load_catalog_file(path: &Path) -> Result<Vec<CatalogEntry>, CatalogError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CatalogError::Io { path: path.display().to_string(), source })?;
    load_catalog(&text)
}

/// The catalog shipped with the crate.
pub fn seed_catalog() -> Vec<CatalogEntry> {
    load_catalog(SEED).expect("seed catalog is valid")
}

/// Canonical TOML for `entries`: every field written, flags in canonical order.
pub fn serialize_catalog(entries: &[CatalogEntry]) -> String {
    let raw: Vec<RawEntry> = entries
        .iter()
        .map(|e| {
            let m = &e.invariants;
            RawEntry {
                name: m.name.clone(),
                chi: m.chi,
                sigma: m.sigma,
                spin: m.spin,
                minimal: m.minimal,
                flags: m.star_facts.flags().into_iter().map(String::from).collect(),
                h1_zero: m.h1_zero,
                note: e.note.clone(),
            }
        })
        .collect();
    toml::to_string(&RawDocumentOut { manifold: raw.iter().collect() })
        .expect("catalog entries serialize")
}

/// Case-insensitive lookup by name.
pub fn find<'a>(entries: &'a [CatalogEntry], name: &str) -> Result<&'a CatalogEntry, CatalogError> {
    entries
        .iter()
        .find(|e| e.name().eq_ignore_ascii_case(name))
        .ok_or_else(|| CatalogError::NotFound(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use gsig_core::bounds::c1_squared;

    #[test]
    fn seed_loads_with_expected_entries() {
        let seed = seed_catalog();
        assert!(seed.len() >= 6);
        let k3 = find(&seed, "k3").unwrap();
        assert_eq!((k3.invariants.chi, k3.invariants.sigma), (24, -16));
        assert_eq!(k3.star, StarRule::SeibergWitten);
        assert!(find(&seed, "T4").is_err());
    }

    #[test]
    fn seed_audit() {
        let seed = seed_catalog();
        for (name, k) in [("E(1)_{2,3}", 1), ("K3", 2), ("E(3)", 3), ("E(4)", 4)] {
            let m = &find(&seed, name).unwrap().invariants;
            assert_eq!(m.chi, 12 * k, "{name}");
            assert_eq!(c1_squared(m), 0, "{name}");
            assert!(m.minimal);
            assert!(find(&seed, name).unwrap().star.holds(), "{name}");
        }
        for name in ["S2xS2", "CP2#CP2bar", "S2xS2-exotic", "CP2#CP2bar-exotic"] {
            let m = &find(&seed, name).unwrap().invariants;
            assert_eq!((m.chi, c1_squared(m)), (4, 8), "{name}");
        }
        let liu = find(&seed, "CP2#2CP2bar-exotic").unwrap();
        assert_eq!((liu.invariants.chi, liu.invariants.sigma), (5, -1));
        assert!(liu.invariants.minimal && liu.invariants.star_facts.symplectic);
        assert_eq!(liu.star, StarRule::SymplecticBPlusOne);

        for name in ["S2xS2", "CP2#CP2bar", "CP2"] {
            assert_eq!(find(&seed, name).unwrap().star, StarRule::NoEvidence, "{name}");
        }
        assert_eq!(find(&seed, "S2xS2-exotic").unwrap().star, StarRule::SymplecticBPlusOne);
    }

    #[test]
    fn empty_document() {
        assert!(load_catalog("").unwrap().is_empty());
        assert!(load_catalog("# nothing\n").unwrap().is_empty());
    }

    #[test]
    fn parity_violation_names_invariant() {
        let doc = "[[manifold]]\nname = \"bad\"\nchi = 5\nsigma = 0\nspin = false\nminimal = false\n";
        let err = load_catalog(doc).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("chi + sigma even"), "{msg}");
        assert!(msg.contains("bad") && msg.contains("line 1"), "{msg}");
    }

    #[test]
    fn parse_errors_carry_position() {
        let doc = "[[manifold]]\nname = \"x\"\nchi = \"four\"\n";
        let msg = load_catalog(doc).unwrap_err().to_string();
        assert!(msg.contains("line 3"), "{msg}");
        let doc = "[[manifold]]\nname = \"x\"\nchi = 4\nsigma = 0\nspin = false\nminimal = false\ncolour = 1\n";
        let msg = load_catalog(doc).unwrap_err().to_string();
        assert!(msg.contains("colour"), "{msg}");
    }

    #[test]
    fn unknown_flag_and_contradiction() {
        let doc = "[[manifold]]\nname = \"x\"\nchi = 4\nsigma = 0\nspin = false\nminimal = false\nflags = [\"kahler\"]\n";
        assert!(load_catalog(doc).unwrap_err().to_string().contains("kahler"));
        let doc = "[[manifold]]\nname = \"x\"\nchi = 4\nsigma = 0\nspin = false\nminimal = false\nflags = [\"b2plus_zero\"]\n";
        assert!(load_catalog(doc).unwrap_err().to_string().contains("inconsistent evidence"));
    }

    #[test]
    fn duplicates_rejected() {
        let one = "[[manifold]]\nname = \"x\"\nchi = 4\nsigma = 0\nspin = false\nminimal = false\n";
        let doc = format!("{one}{}", one.replace("\"x\"", "\"X\""));
        assert!(matches!(load_catalog(&doc), Err(CatalogError::Duplicate { line: 7, .. })));
    }

    #[test]
    fn seed_serializes_to_normal_form() {
        let seed = seed_catalog();
        let text = serialize_catalog(&seed);
        assert_eq!(load_catalog(&text).unwrap(), seed);
        assert_eq!(serialize_catalog(&load_catalog(&text).unwrap()), text);
    }
}
