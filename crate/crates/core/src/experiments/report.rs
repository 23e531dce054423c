use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// Fails with [`Error::WouldClobber`] if `path` exists and `force` is off.
pub fn ensure_writable(path: &Path, force: bool) -> Result<()> {
    if !force && path.exists() {
        return Err(Error::WouldClobber(path.to_path_buf()));
    }
    Ok(())
}

/// Writes `rows` as CSV with a header derived from the row type.
pub fn write_csv<T: Serialize>(path: &Path, rows: &[T], force: bool) -> Result<()> {
    ensure_writable(path, force)?;
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Mirror<'a, C: Serialize, T: Serialize> {
    config: &'a C,
    rows: &'a T,
}

/// Writes `{"config": …, "rows": …}` as pretty JSON.
pub fn write_json<C: Serialize, T: Serialize>(
    path: &Path,
    config: &C,
    rows: &T,
    force: bool,
) -> Result<()> {
    ensure_writable(path, force)?;
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, &Mirror { config, rows })?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}
