//! On-disk caches for field moduli and irreducible polynomial lists.
//!
//! The directory comes from `CHARSUM_CACHE_DIR`. Everything read back is
//! re-validated, so a stale or hand-edited file produces an error rather
//! than a wrong answer.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::{make_field, Field, FieldSpec};
use crate::poly::MonicPoly;
use crate::polyseries::IrreduciblesTable;

pub const CACHE_ENV: &str = "CHARSUM_CACHE_DIR";

const FIELDS_FILE: &str = "fields.txt";

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Cache(format!("{}: {e}", path.display()))
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// Opens (creating if needed) a cache rooted at `dir`.
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
        Ok(Self { dir })
    }

    /// The cache named by `CHARSUM_CACHE_DIR`, if set.
    pub fn from_env() -> Result<Option<Self>> {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Self::new(PathBuf::from(d)).map(Some),
            _ => Ok(None),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Field of order `p^k`, reading its modulus from `fields.txt` when
    /// present and appending it otherwise. Lines are `p k c_0 ... c_k`.
    pub fn field(&self, p: u64, k: u32) -> Result<Arc<Field>> {
        let path = self.dir.join(FIELDS_FILE);
        if path.exists() {
            let text = fs::read_to_string(&path).map_err(|e| io_err(&path, e))?;
            for spec in text.lines().filter(|l| !l.trim().is_empty()).map(parse_field_line) {
                let spec = spec?;
                if spec.p as u64 == p && spec.k == k {
                    let f = Field::from_spec(spec)?;
                    if f.spec() != &make_field(p, k)? {
                        return Err(Error::Cache(format!("cached modulus for {p}^{k} is not the canonical one")));
                    }
                    return Ok(Arc::new(f));
                }
            }
        }
        let f = Field::new(p, k)?;
        let s = f.spec();
        let mut line = format!("{} {}", s.p, s.k);
        for c in &s.modulus {
            line.push_str(&format!(" {c}"));
        }
        let mut file = fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|e| io_err(&path, e))?;
        writeln!(file, "{line}").map_err(|e| io_err(&path, e))?;
        Ok(f)
    }

    pub fn irreducibles_path(&self, f: &Field, max_degree: usize) -> PathBuf {
        let s = f.spec();
        self.dir.join(format!("irreducibles_p{}_k{}_D{}.txt", s.p, s.k, max_degree))
    }

    /// Irreducibles up to degree `D`, loaded and re-checked if cached,
    /// otherwise sieved and written. Lines are `d c_0 ... c_{d-1}`.
    pub fn irreducibles(&self, f: &Arc<Field>, max_degree: usize) -> Result<IrreduciblesTable> {
        let path = self.irreducibles_path(f, max_degree);
        if path.exists() {
            let text = fs::read_to_string(&path).map_err(|e| io_err(&path, e))?;
            return load_irreducibles(f, max_degree, &text);
        }
        let table = IrreduciblesTable::build(f, max_degree)?;
        let mut out = String::new();
        for d in 1..=max_degree {
            for p in table.degree(d) {
                out.push_str(&d.to_string());
                for c in p.coeffs() {
                    out.push(' ');
                    out.push_str(&f.format(*c));
                }
                out.push('\n');
            }
        }
        fs::write(&path, out).map_err(|e| io_err(&path, e))?;
        Ok(table)
    }

    /// Deletes every cache file; returns how many were removed.
    pub fn clear(&self) -> Result<usize> {
        let mut removed = 0;
        let entries = fs::read_dir(&self.dir).map_err(|e| io_err(&self.dir, e))?;
        for entry in entries {
            let path = entry.map_err(|e| io_err(&self.dir, e))?.path();
            let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("");
            if name == FIELDS_FILE || (name.starts_with("irreducibles_") && name.ends_with(".txt")) {
                fs::remove_file(&path).map_err(|e| io_err(&path, e))?;
                removed += 1;
            }
        }
        Ok(removed)
    }
}

fn parse_field_line(line: &str) -> Result<FieldSpec> {
    let nums: Vec<u32> = line
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Cache(format!("bad field line `{line}`"))))
        .collect::<Result<_>>()?;
    if nums.len() < 3 || nums.len() != nums[1] as usize + 3 {
        return Err(Error::Cache(format!("bad field line `{line}`")));
    }
    Ok(FieldSpec { p: nums[0], k: nums[1], modulus: nums[2..].to_vec() })
}

fn load_irreducibles(f: &Arc<Field>, max_degree: usize, text: &str) -> Result<IrreduciblesTable> {
    let mut lists = vec![Vec::new(); max_degree + 1];
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let mut tokens = line.split_whitespace();
        let d: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .filter(|&d| (1..=max_degree).contains(&d))
            .ok_or_else(|| Error::Cache(format!("bad irreducible line `{line}`")))?;
        let coeffs = tokens.map(|t| f.parse(t)).collect::<Result<Vec<_>>>()?;
        if coeffs.len() != d {
            return Err(Error::Cache(format!("bad irreducible line `{line}`")));
        }
        lists[d].push(MonicPoly::new(coeffs));
    }
    let table = IrreduciblesTable::from_lists(f, lists)?;
    for d in 1..=max_degree {
        if let Some(p) = table.degree(d).iter().find(|p| !table.is_irreducible(p)) {
            return Err(Error::Cache(format!("cached polynomial {} is reducible", p.format(f))));
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_validation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let f = cache.field(2, 3).unwrap();
        let again = cache.field(2, 3).unwrap();
        assert_eq!(f, again);
        assert_eq!(fs::read_to_string(dir.path().join(FIELDS_FILE)).unwrap(), "2 3 1 0 1 1\n");

        let built = cache.irreducibles(&f, 3).unwrap();
        let loaded = cache.irreducibles(&f, 3).unwrap();
        for d in 1..=3 {
            assert_eq!(built.degree(d), loaded.degree(d));
        }

        // drop one line: the recount must reject the file
        let path = cache.irreducibles_path(&f, 3);
        let text = fs::read_to_string(&path).unwrap();
        let truncated: Vec<&str> = text.lines().skip(1).collect();
        fs::write(&path, truncated.join("\n")).unwrap();
        assert!(matches!(cache.irreducibles(&f, 3), Err(Error::Cache(_))));

        assert_eq!(cache.clear().unwrap(), 2);
    }
}
