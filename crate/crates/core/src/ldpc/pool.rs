use std::fs;
use std::path::Path;

use super::{
    construct_peg_with, load_alist, save_alist, DegreeDistribution, ParityCheckMatrix, PegOptions,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::rng::derive_seed;

/// File listing the codes of a pool directory.
pub const MANIFEST_FILE: &str = "manifest.csv";

/// One code of a pool.
#[derive(Debug, Clone, PartialEq)]
pub struct PoolCode {
    pub rate: f64,
    pub matrix: ParityCheckMatrix,
}

/// Codes of a common frame length `n`, sorted by strictly increasing rate.
#[derive(Debug, Clone, PartialEq)]
pub struct CodePool {
    n: usize,
    codes: Vec<PoolCode>,
}

/// Syndrome length of a rate-`rate` code of frame length `n`.
pub fn rows_for_rate(n: usize, rate: f64) -> usize {
    (n as f64 * (1.0 - rate)).round() as usize
}

impl CodePool {
    pub fn new(n: usize, mut codes: Vec<PoolCode>) -> Result<Self> {
        if codes.is_empty() {
            return Err(Error::argument("code pool is empty"));
        }
        codes.sort_by(|a, b| a.rate.total_cmp(&b.rate));
        if codes.windows(2).any(|w| w[0].rate >= w[1].rate) {
            return Err(Error::argument("code pool rates must be distinct"));
        }
        if let Some(c) = codes.iter().find(|c| c.matrix.n() != n) {
            return Err(Error::argument(format!(
                "code of rate {} has frame length {}, pool expects {n}",
                c.rate,
                c.matrix.n()
            )));
        }
        Ok(CodePool { n, codes })
    }

    /// Builds one PEG code per rate. Code `i` uses seed `derive_seed(seed, i)`.
    pub fn generate(
        n: usize,
        rates: &[f64],
        distribution: &DegreeDistribution,
        seed: u64,
        options: PegOptions,
        exec: Execution,
    ) -> Result<Self> {
        if let Some(r) = rates.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
            return Err(Error::argument(format!("rate {r} outside (0, 1)")));
        }
        let jobs: Vec<(usize, f64)> = rates.iter().copied().enumerate().collect();
        let codes = exec.try_map(&jobs, |&(i, rate)| {
            let m = rows_for_rate(n, rate);
            construct_peg_with(n, m, distribution, derive_seed(seed, i as u64), options)
                .map(|matrix| PoolCode { rate, matrix })
        })?;
        CodePool::new(n, codes)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn codes(&self) -> &[PoolCode] {
        &self.codes
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Writes one alist file per code plus `manifest.csv`
    /// (`rate,m,file,girth`; `girth` is empty for acyclic graphs).
    pub fn save(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let mut manifest = String::from("rate,m,file,girth\n");
        for code in &self.codes {
            let file = format!("code_n{}_r{:.4}.alist", self.n, code.rate);
            save_alist(&code.matrix, dir.join(&file))?;
            let girth = code
                .matrix
                .girth()
                .map(|g| g.to_string())
                .unwrap_or_default();
            manifest.push_str(&format!(
                "{},{},{file},{girth}\n",
                code.rate,
                code.matrix.m()
            ));
        }
        let path = dir.join(MANIFEST_FILE);
        fs::write(&path, manifest).map_err(|e| Error::io(&path, e))
    }

    /// Loads a pool written by [`CodePool::save`].
    pub fn load(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let path = dir.join(MANIFEST_FILE);
        let name = path.display().to_string();
        let mut reader = csv::Reader::from_path(&path).map_err(|e| csv_error(&path, e))?;
        let mut codes = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let line = i + 2;
            let record = record.map_err(|e| csv_error(&path, e))?;
            let field = |k: usize| record.get(k).unwrap_or("").trim();
            let rate: f64 = field(0)
                .parse()
                .map_err(|_| Error::parse(&name, line, format!("invalid rate {:?}", field(0))))?;
            let matrix = load_alist(dir.join(field(2)))?;
            if let Ok(m) = field(1).parse::<usize>() {
                if m != matrix.m() {
                    return Err(Error::parse(
                        &name,
                        line,
                        format!("manifest says m={m}, file has m={}", matrix.m()),
                    ));
                }
            }
            codes.push(PoolCode { rate, matrix });
        }
        let n = codes
            .first()
            .map(|c| c.matrix.n())
            .ok_or_else(|| Error::parse(&name, 1, "manifest lists no codes"))?;
        CodePool::new(n, codes)
    }
}

pub(crate) fn csv_error(path: &Path, e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::parse(path.display().to_string(), line, format!("{other:?}")),
    }
}
