//! Versioned JSON-lines cache of constructed Kac modules.
//!
//! Each line is one [`ModuleRecord`]. Records are keyed by
//! `(family, m, n, weight, version)`; loading a record rebuilds the module and
//! re-runs the relation check, so a damaged file is detected rather than used.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{parse_rational, Rational};
use crate::linalg::Matrix;
use crate::rootdata::{build_root_system, Family, RootSystem, Weight};
use crate::superlin::{Parity, SuperSpace};

use super::{kac_module, GModule, RepError};

pub const CACHE_VERSION: u32 = 1;
const FILE_NAME: &str = "modules.jsonl";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("corrupted cache entry at {path}:{line}: {reason}")]
    Corrupt { path: String, line: usize, reason: String },
    #[error(transparent)]
    Rep(#[from] RepError),
}

type Triplets = Vec<(usize, usize, String)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleRecord {
    pub version: u32,
    pub family: Family,
    pub m: usize,
    pub n: usize,
    pub weight: Weight,
    pub name: String,
    pub parities: Vec<u8>,
    pub e: Vec<Triplets>,
    pub f: Vec<Triplets>,
    pub h: Vec<Triplets>,
}

fn to_triplets(m: &Matrix) -> Triplets {
    m.entries().map(|(i, j, x)| (i, j, x.to_string())).collect()
}

fn from_triplets(t: &Triplets, dim: usize) -> Result<Matrix, String> {
    let mut entries = Vec::with_capacity(t.len());
    for (i, j, x) in t {
        if *i >= dim || *j >= dim {
            return Err(format!("entry ({i},{j}) outside dimension {dim}"));
        }
        let x: Rational = parse_rational(x).map_err(|e| e.to_string())?;
        entries.push((*i, *j, x));
    }
    Ok(Matrix::from_triplets(dim, dim, entries))
}

impl ModuleRecord {
    pub fn from_module(module: &GModule, weight: &Weight) -> Self {
        let rs = module.root_system();
        let r = rs.rank();
        ModuleRecord {
            version: CACHE_VERSION,
            family: rs.family,
            m: rs.m,
            n: rs.n,
            weight: weight.clone(),
            name: module.name().to_string(),
            parities: module.space().parities().iter().map(|p| p.bit() as u8).collect(),
            e: (0..r).map(|i| to_triplets(module.e(i).matrix())).collect(),
            f: (0..r).map(|i| to_triplets(module.f(i).matrix())).collect(),
            h: (0..r).map(|i| to_triplets(module.h(i).matrix())).collect(),
        }
    }

    pub fn matches(&self, rs: &RootSystem, weight: &Weight) -> bool {
        self.version == CACHE_VERSION && self.family == rs.family && self.m == rs.m && self.n == rs.n && &self.weight == weight
    }

    /// Rebuilds the module; the relation check runs again.
    pub fn to_module(&self) -> Result<GModule, String> {
        let rs = build_root_system(self.family, self.m, self.n).map_err(|e| e.to_string())?;
        if self.parities.iter().any(|&p| p > 1) {
            return Err("parity outside {0,1}".into());
        }
        let dim = self.parities.len();
        let space = SuperSpace::new(self.parities.iter().map(|&p| Parity::from_bit(p as usize)).collect());
        let conv = |ts: &[Triplets]| ts.iter().map(|t| from_triplets(t, dim)).collect::<Result<Vec<_>, _>>();
        let mut module = GModule::from_matrices(self.name.clone(), &rs, space, conv(&self.e)?, conv(&self.f)?, conv(&self.h)?)
            .map_err(|e| e.to_string())?;
        if !rs.is_typical(&self.weight).map_err(|e| e.to_string())? {
            return Err("recorded weight is atypical".into());
        }
        module.set_highest_weight(self.weight.clone());
        Ok(module)
    }
}

/// Cache directory holding one JSON-lines file.
#[derive(Debug, Clone)]
pub struct ModuleCache {
    dir: PathBuf,
}

impl ModuleCache {
    pub fn new(dir: impl AsRef<Path>) -> Self {
        ModuleCache { dir: dir.as_ref().to_path_buf() }
    }

    pub fn path(&self) -> PathBuf {
        self.dir.join(FILE_NAME)
    }

    /// Every record in file order. Any unreadable line is an error.
    pub fn records(&self) -> Result<Vec<ModuleRecord>, CacheError> {
        let path = self.path();
        if !path.exists() {
            return Ok(Vec::new());
        }
        let text = fs::read_to_string(&path)?;
        let mut out = Vec::new();
        for (k, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let rec: ModuleRecord = serde_json::from_str(line).map_err(|e| CacheError::Corrupt {
                path: path.display().to_string(),
                line: k + 1,
                reason: e.to_string(),
            })?;
            out.push(rec);
        }
        Ok(out)
    }

    /// Loads and rebuilds every record, failing on the first damaged one.
    pub fn validate(&self) -> Result<usize, CacheError> {
        let path = self.path().display().to_string();
        let records = self.records()?;
        for (k, rec) in records.iter().enumerate() {
            rec.to_module().map_err(|reason| CacheError::Corrupt { path: path.clone(), line: k + 1, reason })?;
        }
        Ok(records.len())
    }

    pub fn get(&self, rs: &RootSystem, weight: &Weight) -> Result<Option<GModule>, CacheError> {
        let path = self.path().display().to_string();
        for (k, rec) in self.records()?.into_iter().enumerate() {
            if rec.matches(rs, weight) {
                let module = rec.to_module().map_err(|reason| CacheError::Corrupt { path, line: k + 1, reason })?;
                return Ok(Some(module));
            }
        }
        Ok(None)
    }

    pub fn put(&self, module: &GModule, weight: &Weight) -> Result<(), CacheError> {
        fs::create_dir_all(&self.dir)?;
        let mut line = serde_json::to_string(&ModuleRecord::from_module(module, weight)).expect("record serializes");
        line.push('\n');
        let mut file = OpenOptions::new().create(true).append(true).open(self.path())?;
        file.write_all(line.as_bytes())?;
        Ok(())
    }

    /// Cached `K(λ)`, built and stored on a miss.
    pub fn kac(&self, rs: &RootSystem, weight: &Weight) -> Result<GModule, CacheError> {
        if let Some(m) = self.get(rs, weight)? {
            return Ok(m);
        }
        let m = kac_module(rs, weight)?;
        self.put(&m, weight)?;
        Ok(m)
    }
}
