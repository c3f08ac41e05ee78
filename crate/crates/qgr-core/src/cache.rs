//! Content-addressed store for completed Groebner bases.
//!
//! The key is a SHA-256 digest of the canonical text rendering of the
//! presentation together with the monomial-order identifier, the
//! truncation bound, and a format version — so a lookup can only ever hit
//! an entry computed from exactly the same input, and format changes
//! silently invalidate old entries (they are never looked up again).
//! Entries are JSON files named `<digest>.json` holding the basis
//! elements as expression strings; writes go through a temporary file and
//! an atomic rename so concurrent invocations never observe a partial
//! entry. A file that fails to parse or fails the basis shape checks is
//! treated as corrupt: the basis is recomputed, the entry rewritten, and a
//! warning recorded.

use crate::free_algebra::Presentation;
use crate::groebner::{self, GroebnerError, TruncatedGB};
use crate::relparse;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

/// Part of every key; bump on any change to the stored representation.
const CACHE_FORMAT_VERSION: u32 = 1;

/// Identifier of the monomial order the completion runs under (degree
/// first, then lexicographic on generator indices, left to right).
const MONOMIAL_ORDER_ID: &str = "deglex-left";

/// How a basis request was satisfied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheOutcome {
    /// Deserialized from an existing entry.
    Hit,
    /// Computed and stored.
    Miss,
    /// Computed without touching any store (cache disabled).
    Bypass,
    /// An entry existed but was unreadable; computed and rewrote it.
    CorruptRecomputed,
}

impl CacheOutcome {
    pub fn label(self) -> &'static str {
        match self {
            CacheOutcome::Hit => "hit",
            CacheOutcome::Miss => "miss",
            CacheOutcome::Bypass => "bypass",
            CacheOutcome::CorruptRecomputed => "corrupt-recomputed",
        }
    }
}

/// Contents of the store directory, as reported by `stats`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CacheStats {
    pub entries: u64,
    pub bytes: u64,
}

#[derive(Serialize, Deserialize)]
struct StoredBasis {
    format_version: u32,
    order: String,
    bound: u32,
    elements: Vec<String>,
}

/// A basis store rooted at a directory, or disabled entirely. Lookup and
/// store failures never fail the computation: the worst outcome is a
/// recompute plus a recorded warning.
#[derive(Debug)]
pub struct GbCache {
    dir: Option<PathBuf>,
    hits: u64,
    misses: u64,
    warnings: Vec<String>,
}

/// Canonical digest of (format, order, bound, presentation).
pub fn cache_key(p: &Presentation, bound: u32) -> String {
    let mut h = Sha256::new();
    h.update(format!("format {CACHE_FORMAT_VERSION}\n"));
    h.update(format!("order {MONOMIAL_ORDER_ID}\n"));
    h.update(format!("bound {bound}\n"));
    h.update(format!("field {}\n", p.field().label()));
    for g in p.generators() {
        h.update(format!("gen {} {}\n", g.name, g.degree));
    }
    for r in p.relations() {
        h.update(format!("rel {}\n", p.poly_to_string(r)));
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl GbCache {
    pub fn at(dir: PathBuf) -> GbCache {
        GbCache { dir: Some(dir), hits: 0, misses: 0, warnings: Vec::new() }
    }

    pub fn disabled() -> GbCache {
        GbCache { dir: None, hits: 0, misses: 0, warnings: Vec::new() }
    }

    pub fn enabled(&self) -> bool {
        self.dir.is_some()
    }

    pub fn directory(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn misses(&self) -> u64 {
        self.misses
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Returns the completed basis for `(p, bound)`, from the store when
    /// possible. Only a failed computation is an error; store trouble
    /// degrades to recomputation with a warning.
    pub fn get_or_compute(
        &mut self,
        p: &Presentation,
        bound: u32,
    ) -> Result<(TruncatedGB, CacheOutcome), GroebnerError> {
        let Some(dir) = self.dir.clone() else {
            return Ok((groebner::complete(p, bound)?, CacheOutcome::Bypass));
        };
        let path = dir.join(format!("{}.json", cache_key(p, bound)));
        let mut corrupt = false;
        match fs::read_to_string(&path) {
            Ok(text) => match parse_entry(&text, p, bound) {
                Ok(gb) => {
                    self.hits += 1;
                    return Ok((gb, CacheOutcome::Hit));
                }
                Err(why) => {
                    corrupt = true;
                    self.warnings.push(format!(
                        "cache entry {} is corrupt ({why}); recomputing",
                        path.display()
                    ));
                }
            },
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => {
                self.warnings.push(format!("cache entry {} unreadable ({e})", path.display()));
            }
        }
        let gb = groebner::complete(p, bound)?;
        self.misses += 1;
        if let Err(e) = store_entry(&dir, &path, &gb) {
            self.warnings.push(format!("could not store cache entry {} ({e})", path.display()));
        }
        Ok((gb, if corrupt { CacheOutcome::CorruptRecomputed } else { CacheOutcome::Miss }))
    }

    /// Counts the entries under a store directory. A missing directory is
    /// an empty store.
    pub fn stats(dir: &Path) -> io::Result<CacheStats> {
        let mut stats = CacheStats { entries: 0, bytes: 0 };
        let listing = match fs::read_dir(dir) {
            Ok(l) => l,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(stats),
            Err(e) => return Err(e),
        };
        for item in listing {
            let item = item?;
            if is_entry_name(&item.file_name().to_string_lossy()) {
                stats.entries += 1;
                stats.bytes += item.metadata()?.len();
            }
        }
        Ok(stats)
    }

    /// Removes every entry under a store directory, returning the count.
    pub fn clear(dir: &Path) -> io::Result<u64> {
        let mut removed = 0;
        let listing = match fs::read_dir(dir) {
            Ok(l) => l,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(e),
        };
        for item in listing {
            let item = item?;
            if is_entry_name(&item.file_name().to_string_lossy()) {
                fs::remove_file(item.path())?;
                removed += 1;
            }
        }
        Ok(removed)
    }
}

/// Entries are named by a 64-digit hex key; everything else in the
/// directory (including in-flight temporaries) is left alone.
fn is_entry_name(name: &str) -> bool {
    match name.strip_suffix(".json") {
        Some(stem) => stem.len() == 64 && stem.bytes().all(|b| b.is_ascii_hexdigit()),
        None => false,
    }
}

fn parse_entry(text: &str, p: &Presentation, bound: u32) -> Result<TruncatedGB, String> {
    let stored: StoredBasis = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if stored.format_version != CACHE_FORMAT_VERSION {
        return Err(format!("format version {} != {CACHE_FORMAT_VERSION}", stored.format_version));
    }
    if stored.order != MONOMIAL_ORDER_ID {
        return Err(format!("monomial order `{}` != `{MONOMIAL_ORDER_ID}`", stored.order));
    }
    if stored.bound != bound {
        return Err(format!("bound {} != {bound}", stored.bound));
    }
    let mut elements = Vec::with_capacity(stored.elements.len());
    for s in &stored.elements {
        elements.push(relparse::parse_relation(s, p).map_err(|e| e.to_string())?);
    }
    groebner::from_parts(p.clone(), bound, elements).map_err(|e| e.to_string())
}

fn store_entry(dir: &Path, path: &Path, gb: &TruncatedGB) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let p = gb.presentation();
    let stored = StoredBasis {
        format_version: CACHE_FORMAT_VERSION,
        order: MONOMIAL_ORDER_ID.to_string(),
        bound: gb.bound(),
        elements: gb.elements().iter().map(|f| p.poly_to_string(f)).collect(),
    };
    let text = serde_json::to_string(&stored).expect("plain data serializes");
    let tmp = dir.join(format!(
        ".tmp-{}-{}",
        std::process::id(),
        path.file_name().unwrap_or_default().to_string_lossy()
    ));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)
}
