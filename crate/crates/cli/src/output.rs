//! Writing payloads to a file or standard output.

use std::fs::File;
use std::io::{self, Write};

use serde::Serialize;

use crate::config::RunConfig;
use crate::Failure;

/// Version of the JSON layout, emitted as the top-level `schema` field.
pub const SCHEMA: u32 = 1;

pub fn write_bytes(config: &RunConfig, bytes: &[u8]) -> Result<(), Failure> {
    match &config.out {
        Some(path) => File::create(path)
            .and_then(|mut f| f.write_all(bytes))
            .map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Check(format!("cannot write to standard output: {e}")))
        }
    }
}

pub fn write_json<T: Serialize>(config: &RunConfig, value: &T) -> Result<(), Failure> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| Failure::Check(e.to_string()))?;
    bytes.push(b'\n');
    write_bytes(config, &bytes)
}

/// Writes serialisable rows as CSV with a header from the field names.
pub fn write_csv<T: Serialize>(config: &RunConfig, rows: &[T]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Failure::Check(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Check(e.to_string()))?;
    write_bytes(config, &bytes)
}
