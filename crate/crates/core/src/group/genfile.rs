//! Plain-text generator files.
//!
//! ```text
//! # comment
//! degree 5
//! (0 1 2)
//! img 0 1 3 4 2
//! ```
//!
//! The first content line is `degree <n>`; each further nonempty line is one
//! permutation in cycle notation or as an `img` image list. `#` starts a
//! comment anywhere on a line.

use std::path::Path;

use super::perm::{Permutation, Point};
use crate::error::{Error, Result};

pub fn parse_generator_text(text: &str) -> Result<Vec<Permutation>> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |msg: String| Error::Parse(format!("line {}: {msg}", lineno + 1));
        let inner = |e: Error| match e {
            Error::Parse(m) => at(m),
            other => at(other.to_string()),
        };
        let Some(n) = degree else {
            let value = line
                .strip_prefix("degree")
                .ok_or_else(|| at("expected `degree <n>`".into()))?
                .trim();
            let n: usize = value
                .parse()
                .map_err(|_| at(format!("bad degree {value:?}")))?;
            if n == 0 {
                return Err(at("degree must be positive".into()));
            }
            degree = Some(n);
            continue;
        };
        let perm = if let Some(rest) = line.strip_prefix("img") {
            let images = rest
                .split_whitespace()
                .map(|s| s.parse::<Point>().map_err(|_| at(format!("bad image {s:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if images.len() != n {
                return Err(at(format!("image list has {} entries, expected {n}", images.len())));
            }
            Permutation::from_images(images).map_err(inner)?
        } else {
            Permutation::parse_cycles(n, line).map_err(inner)?
        };
        gens.push(perm);
    }
    if degree.is_none() {
        return Err(Error::Parse("missing `degree <n>` line".into()));
    }
    Ok(gens)
}

pub fn read_generator_file(path: impl AsRef<Path>) -> Result<Vec<Permutation>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_generator_text(&text)
}

pub fn write_generator_text(gens: &[Permutation]) -> String {
    let degree = gens.first().map_or(0, Permutation::degree);
    let mut out = format!("degree {degree}\n");
    for g in gens {
        out.push_str(&g.to_cycle_string());
        out.push('\n');
    }
    out
}
