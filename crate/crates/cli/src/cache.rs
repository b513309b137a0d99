//! Plain-file JSON cache of computed Betti tables.

use std::fs;
use std::path::{Path, PathBuf};

use confspace::{BettiTable, Instance};
use sha2::{Digest, Sha256};

pub const CACHE_DIR_ENV: &str = "CFG_HOMOLOGY_CACHE_DIR";

// Bump when the table schema or the complex construction changes.
const SCHEMA: &str = "betti-table-v1";

#[derive(Debug, Clone)]
pub struct Cache {
    dir: Option<PathBuf>,
    tag: String,
}

impl Cache {
    pub fn disabled() -> Self {
        Self {
            dir: None,
            tag: version_tag(),
        }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Self {
            dir: Some(dir.into()),
            tag: version_tag(),
        }
    }

    /// `$CFG_HOMOLOGY_CACHE_DIR`, else `$XDG_CACHE_HOME/cfg-homology`, else
    /// `$HOME/.cache/cfg-homology`.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_DIR_ENV)
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("XDG_CACHE_HOME").map(|d| Path::new(&d).join("cfg-homology")))
            .or_else(|| std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache").join("cfg-homology")));
        Self {
            dir,
            tag: version_tag(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path(&self, inst: &Instance) -> Option<PathBuf> {
        let name = format!(
            "g{}-n{}-m{}-{}.json",
            inst.genus, inst.boundaries, inst.points, self.tag
        );
        self.dir.as_ref().map(|d| d.join(name))
    }

    pub fn load(&self, inst: &Instance) -> Option<BettiTable> {
        let text = fs::read_to_string(self.path(inst)?).ok()?;
        match serde_json::from_str::<BettiTable>(&text) {
            Ok(t) if t.instance() == *inst && t.source.is_none() => Some(t),
            Ok(_) => None,
            Err(e) => {
                log::warn!("ignoring unreadable cache entry for {inst}: {e}");
                None
            }
        }
    }

    pub fn store(&self, table: &BettiTable) {
        let Some(path) = self.path(&table.instance()) else {
            return;
        };
        let write = || -> std::io::Result<()> {
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent)?;
            }
            // Write-then-rename so concurrent sweeps never see half a file.
            let tmp = path.with_extension(format!("tmp{}", std::process::id()));
            fs::write(&tmp, serde_json::to_string(table)?)?;
            fs::rename(&tmp, &path)
        };
        if let Err(e) = write() {
            log::warn!("could not cache {}: {e}", table.instance());
        }
    }
}

fn version_tag() -> String {
    let digest = Sha256::digest(format!("{SCHEMA}:{}", env!("CARGO_PKG_VERSION")));
    hex::encode(&digest[..6])
}
