use std::path::{Path, PathBuf};

use ranksat_core::cert::Certificate;
use ranksat_core::linalg::System;
use ranksat_core::rankcov::Code;
use ranksat_core::{Elt, FieldSpec};

use crate::Failure;

pub const CODE_MAGIC: &str = "%RANKSAT-CODE v1";

pub fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

pub fn write(path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
    }
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

pub fn read_cert(path: &Path) -> Result<Certificate, Failure> {
    Certificate::parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

pub fn read_system(path: &Path) -> Result<System, Failure> {
    read_cert(path)?
        .system()?
        .ok_or_else(|| Failure::Usage(format!("{}: no field, k and gen lines", path.display())))
}

/// `%RANKSAT-CODE v1`, a field line, `n N`, then one `row` per generator.
pub fn read_code(path: &Path) -> Result<Code, Failure> {
    let text = read(path)?;
    let bad = |m: &str| Failure::Usage(format!("{}: {m}", path.display()));
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    if lines.next() != Some(CODE_MAGIC) {
        return Err(bad("missing magic line"));
    }
    let field = FieldSpec::parse_line(lines.next().ok_or_else(|| bad("missing field line"))?)?;
    let mut n = None;
    let mut rows: Vec<Vec<Elt>> = Vec::new();
    for l in lines {
        let (head, rest) = l.split_once(' ').unwrap_or((l, ""));
        match head {
            "n" => n = Some(rest.trim().parse::<usize>().map_err(|_| bad("bad length"))?),
            "row" => rows.push(
                rest.split_whitespace()
                    .map(|x| x.parse().map_err(|_| bad(&format!("bad entry {x}"))))
                    .collect::<Result<_, _>>()?,
            ),
            _ => return Err(bad(&format!("unknown record {head}"))),
        }
    }
    let n = n.ok_or_else(|| bad("missing `n` line"))?;
    Ok(Code::new(&field, n, &rows)?)
}

pub fn out_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os("RANKSAT_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("ranksat-out"))
}
