//! On-disk cache of the differentials `d_0..d_3`, keyed by `r` and format
//! version and validated by a SHA-256 checksum of the stored matrices.

use std::fs;
use std::path::{Path, PathBuf};

use qcalc_core::{LinOp, Model};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Bump when the basis ordering or matrix format changes.
pub const CACHE_VERSION: u32 = 1;

pub fn path_for(dir: &Path, r: u32) -> PathBuf {
    dir.join(format!("differentials-r{r}-v{CACHE_VERSION}.json"))
}

fn checksum(ops: &Value) -> String {
    let bytes = serde_json::to_vec(ops).expect("serialisable");
    hex::encode(Sha256::digest(&bytes))
}

/// Why a cache file was not used.
#[derive(Debug, PartialEq, Eq)]
pub enum Miss {
    Absent,
    Corrupt(String),
}

pub fn load(dir: &Path, r: u32) -> Result<Vec<LinOp>, Miss> {
    let path = path_for(dir, r);
    let text = fs::read_to_string(&path).map_err(|_| Miss::Absent)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Miss::Corrupt(e.to_string()))?;
    if v["version"] != json!(CACHE_VERSION) || v["r"] != json!(r) {
        return Err(Miss::Corrupt("version or r mismatch".into()));
    }
    let ops = &v["ops"];
    if v["sha256"].as_str() != Some(checksum(ops).as_str()) {
        return Err(Miss::Corrupt("checksum mismatch".into()));
    }
    ops.as_array()
        .ok_or_else(|| Miss::Corrupt("ops is not an array".into()))?
        .iter()
        .map(|o| LinOp::from_json(o).map_err(|e| Miss::Corrupt(e.to_string())))
        .collect()
}

pub fn store(dir: &Path, model: &Model) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let ops = Value::from((0..4).map(|k| model.complex().d(k).to_json()).collect::<Vec<_>>());
    let doc = json!({
        "version": CACHE_VERSION,
        "r": model.r(),
        "sha256": checksum(&ops),
        "ops": ops,
    });
    let tmp = path_for(dir, model.r()).with_extension("tmp");
    fs::write(&tmp, serde_json::to_vec(&doc).expect("serialisable"))?;
    fs::rename(tmp, path_for(dir, model.r()))
}

/// Build the model, going through the cache when a directory is given.
pub fn model(r: u32, dir: Option<&Path>) -> qcalc_core::Result<Model> {
    let Some(dir) = dir else {
        return Model::new(r);
    };
    match load(dir, r) {
        Ok(ops) => match Model::from_differentials(r, ops) {
            Ok(m) => return Ok(m),
            Err(e) => eprintln!("qcalc: ignoring cache for r={r}: {e}"),
        },
        Err(Miss::Corrupt(why)) => eprintln!("qcalc: ignoring cache for r={r}: {why}"),
        Err(Miss::Absent) => {}
    }
    let m = Model::new(r)?;
    if let Err(e) = store(dir, &m) {
        eprintln!("qcalc: could not write cache: {e}");
    }
    Ok(m)
}
