//! Plain-text on-disk cache of graded subspace bases.
//!
//! One file per key. Layout:
//!
//! ```text
//! loopsplit-basis v1
//! alphabet <sha256 of p and the generator alphabet>
//! <p> <d> <rows> <cols>
//! <row of residues>
//! ...
//! ```
//!
//! with one `p d rows cols` header per degree `0..=cap`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::CacheError;
use crate::tensor::{GradedSubspace, NCPoly, TensorAlgebra};

pub const CACHE_VERSION: &str = "loopsplit-basis v1";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub p: u32,
    pub n: u32,
    pub cap: u32,
    pub object: String,
}

impl CacheKey {
    pub fn new(p: u32, n: u32, cap: u32, object: &str) -> Self {
        CacheKey {
            p,
            n,
            cap,
            object: object.to_string(),
        }
    }

    fn file_name(&self) -> String {
        format!(
            "p{}-n{}-cap{}-{}.basis",
            self.p, self.n, self.cap, self.object
        )
    }
}

#[derive(Debug, Clone)]
pub struct BasisCache {
    dir: PathBuf,
}

impl BasisCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        BasisCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    /// Writes to a temporary file in the cache directory, then renames.
    pub fn store(&self, key: &CacheKey, s: &GradedSubspace) -> Result<(), CacheError> {
        fs::create_dir_all(&self.dir)?;
        let text = encode(s);
        let path = self.path(key);
        let tmp = self
            .dir
            .join(format!(".{}.{}.tmp", key.file_name(), std::process::id()));
        fs::write(&tmp, text)?;
        fs::rename(&tmp, &path).inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })?;
        Ok(())
    }

    /// `Ok(None)` when there is no entry; an error when the entry exists
    /// but cannot be used.
    pub fn load(
        &self,
        key: &CacheKey,
        algebra: &TensorAlgebra,
    ) -> Result<Option<GradedSubspace>, CacheError> {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        decode(&text, algebra, key.cap)
            .map(Some)
            .map_err(|reason| CacheError::Corrupt {
                path: path.display().to_string(),
                reason,
            })
    }

    /// Loads the entry, or computes and stores it. Unusable entries and
    /// failed writes are logged and otherwise ignored.
    pub fn get_or_compute<E>(
        &self,
        key: &CacheKey,
        algebra: &TensorAlgebra,
        compute: impl FnOnce() -> Result<GradedSubspace, E>,
    ) -> Result<GradedSubspace, E> {
        match self.load(key, algebra) {
            Ok(Some(s)) => {
                log::debug!("cache hit {}", self.path(key).display());
                return Ok(s);
            }
            Ok(None) => {}
            Err(e) => log::warn!("ignoring cache entry: {e}"),
        }
        let s = compute()?;
        if let Err(e) = self.store(key, &s) {
            log::warn!("could not write cache entry: {e}");
        }
        Ok(s)
    }
}

fn encode(s: &GradedSubspace) -> String {
    let alg = s.algebra();
    let mut out = String::new();
    let _ = writeln!(out, "{CACHE_VERSION}");
    let _ = writeln!(out, "alphabet {}", alg.fingerprint());
    for d in 0..=s.cap() {
        let m = s.matrix(d);
        let _ = writeln!(out, "{} {} {} {}", alg.p(), d, m.rank(), m.width());
        for row in m.rows() {
            let mut first = true;
            for &c in row {
                if !first {
                    out.push(' ');
                }
                first = false;
                let _ = write!(out, "{c}");
            }
            out.push('\n');
        }
    }
    out
}

fn decode(text: &str, alg: &TensorAlgebra, cap: u32) -> Result<GradedSubspace, String> {
    let mut lines = text.lines();
    if lines.next() != Some(CACHE_VERSION) {
        return Err("version stamp mismatch".into());
    }
    let fp = lines
        .next()
        .and_then(|l| l.strip_prefix("alphabet "))
        .ok_or("missing alphabet line")?;
    if fp != alg.fingerprint() {
        return Err("alphabet fingerprint mismatch".into());
    }
    if cap > alg.cap() {
        return Err(format!("cap {cap} exceeds the algebra's cap {}", alg.cap()));
    }
    let mut spans = Vec::with_capacity(cap as usize + 1);
    let mut row_counts = Vec::with_capacity(cap as usize + 1);
    for d in 0..=cap {
        let header = lines.next().ok_or_else(|| format!("missing degree {d}"))?;
        let nums: Vec<u64> = header
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        let [p, hd, rows, cols] = nums[..] else {
            return Err(format!("bad header {header:?}"));
        };
        if p != alg.p() as u64 || hd != d as u64 || cols != alg.dim(d) as u64 {
            return Err(format!("header {header:?} does not match degree {d}"));
        }
        let mut vecs = Vec::with_capacity(rows as usize);
        for _ in 0..rows {
            let line = lines.next().ok_or("truncated rows")?;
            let row: Vec<u8> = line
                .split_whitespace()
                .map(|t| match t.parse::<u64>() {
                    Ok(c) if c < p => Ok(c as u8),
                    _ => Err(format!("bad residue {t:?}")),
                })
                .collect::<Result<_, _>>()?;
            if row.len() as u64 != cols {
                return Err(format!("row of length {} in degree {d}", row.len()));
            }
            vecs.push(NCPoly::from_dense(d, 0, &row));
        }
        spans.push(vecs);
        row_counts.push(rows as usize);
    }
    if lines.next().is_some() {
        return Err("trailing data".into());
    }
    let s = GradedSubspace::from_degree_spans(alg, spans).map_err(|e| e.to_string())?;
    for (d, &rows) in row_counts.iter().enumerate() {
        if s.dim(d as u32) != rows {
            return Err(format!("dependent rows in degree {d}"));
        }
    }
    Ok(s)
}
