//! On-disk cache of presentation files.
//!
//! Entries are written to a temporary file in the cache directory and then
//! renamed into place, so concurrent runs never observe a partial file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use galcov_core::presentation::{parse_presentation, write_presentation, GroupPresentation};

use crate::CliError;

pub const CACHE_ENV: &str = "GALCOV_CACHE";

pub fn default_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".galcov-cache"))
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

/// Writes `contents` to `path` through a sibling temporary file.
pub fn atomic_write(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let name = path.file_name().and_then(|s| s.to_str()).unwrap_or("out");
    let nanos = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.subsec_nanos());
    let tmp = dir.join(format!(".{name}.{}.{nanos}.tmp", std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(io_err(&tmp))?;
    f.write_all(contents).map_err(io_err(&tmp))?;
    f.sync_all().map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.pres"))
    }

    /// Returns the cached presentation for `key`, building and storing it
    /// on a miss. A corrupt entry is rebuilt.
    pub fn presentation<F>(&self, key: &str, build: F) -> Result<GroupPresentation, CliError>
    where
        F: FnOnce() -> Result<GroupPresentation, CliError>,
    {
        let path = self.path_for(key);
        if let Ok(text) = fs::read_to_string(&path) {
            match parse_presentation(&text) {
                Ok(p) => {
                    log::debug!("cache hit {}", path.display());
                    return Ok(p);
                }
                Err(e) => log::warn!("discarding cache entry {}: {e}", path.display()),
            }
        }
        let p = build()?;
        atomic_write(&path, write_presentation(&p).as_bytes())?;
        log::debug!("cached {}", path.display());
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use galcov_core::GeneratorId;

    #[test]
    fn miss_then_hit_is_identical() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let g = GeneratorId::surface(1, false);
        let build = || Ok(GroupPresentation::new("t", 2, vec![g], vec![g.word().pow(2)]));
        let a = cache.presentation("k", build).unwrap();
        let bytes = fs::read(cache.path_for("k")).unwrap();
        let b = cache.presentation("k", || panic!("should hit")).unwrap();
        assert_eq!(a, b);
        cache.presentation("k", build).unwrap();
        assert_eq!(fs::read(cache.path_for("k")).unwrap(), bytes);
    }

    #[test]
    fn corrupt_entry_is_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        fs::write(cache.path_for("bad"), "generators: g1\nq9\n").unwrap();
        let g = GeneratorId::surface(1, false);
        let p = cache.presentation("bad", || Ok(GroupPresentation::new("t", 2, vec![g], vec![]))).unwrap();
        assert!(p.relators.is_empty());
        // no temporary files are left behind
        let names: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
        assert_eq!(names.len(), 1);
    }
}
