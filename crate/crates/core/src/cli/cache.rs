//! On-disk cache of antisymmetrizer components.
//!
//! Files are named `w-<operator hash>-<ring>-d<d>-n<n>.txt` and hold a machine
//! dump. Writes go to a temporary file in the cache directory that is then
//! renamed into place, so readers never observe partial files.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use tempfile::NamedTempFile;

use super::opfile::{format_machine, format_operator_file, parse_machine};
use crate::tensorlin::ExactMatrix;
use crate::yb::YbOperator;

/// SHA-256 of the canonical operator file plus the verification flag.
pub fn operator_hash(op: &YbOperator) -> String {
    let mut hasher = Sha256::new();
    hasher.update(format_operator_file(op.ring(), op.dim(), op.matrix()).as_bytes());
    hasher.update(if op.is_verified() { "verified" } else { "unchecked" });
    format!("{:x}", hasher.finalize())
}

pub struct WCache {
    dir: PathBuf,
    stem: String,
    op: YbOperator,
}

impl WCache {
    pub fn open(dir: &Path, op: &YbOperator) -> io::Result<Self> {
        fs::create_dir_all(dir)?;
        let ring = op.ring().token().replace(' ', "");
        Ok(WCache {
            dir: dir.to_path_buf(),
            stem: format!("w-{}-{ring}-d{}", &operator_hash(op)[..16], op.dim()),
            op: op.clone(),
        })
    }

    pub fn path(&self, n: usize) -> PathBuf {
        self.dir.join(format!("{}-n{n}.txt", self.stem))
    }

    /// The cached `W_n`, if present and well formed for this operator.
    pub fn load(&self, n: usize) -> Option<ExactMatrix> {
        let text = fs::read_to_string(self.path(n)).ok()?;
        let m = parse_machine(&text).ok()?;
        let size = self.op.dim().pow(n as u32);
        (m.ring() == self.op.ring() && m.rows() == size && m.cols() == size).then_some(m)
    }

    pub fn store(&self, n: usize, m: &ExactMatrix) -> io::Result<()> {
        let mut tmp = NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(format_machine(m).as_bytes())?;
        tmp.flush()?;
        tmp.persist(self.path(n)).map_err(|e| e.error)?;
        Ok(())
    }
}
