//! Textual group and automorphism selectors: `A5`, `PSL2(7)`, `file:x.gens`;
//! `inn`, `aut`, `file:auts.gens`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::automorphism::{AutLabel, AutRealization};
use super::families::{make_alternating, make_pgl2, make_psl2, make_psl3, make_symmetric, Construction};
use crate::error::{Error, Result};
use crate::group::{enumerate_group, read_generator_file};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Alternating(usize),
    Symmetric(usize),
    Psl2(u64),
    Pgl2(u64),
    Psl3(u64),
    File(PathBuf),
}

fn parenthesized(s: &str, head: &str) -> Option<Result<u64>> {
    let rest = s.strip_prefix(head)?;
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    Some(
        inner
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad field order in {s:?}"))),
    )
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(GroupSpec::File(PathBuf::from(path)));
        }
        for (head, make) in [
            ("PSL2", GroupSpec::Psl2 as fn(u64) -> GroupSpec),
            ("PGL2", GroupSpec::Pgl2),
            ("PSL3", GroupSpec::Psl3),
        ] {
            if let Some(q) = parenthesized(s, head) {
                return Ok(make(q?));
            }
        }
        let degree = |rest: &str| {
            rest.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad degree in {s:?}")))
        };
        if let Some(rest) = s.strip_prefix('A') {
            return Ok(GroupSpec::Alternating(degree(rest)?));
        }
        if let Some(rest) = s.strip_prefix('S') {
            return Ok(GroupSpec::Symmetric(degree(rest)?));
        }
        Err(Error::Parse(format!("unknown group {s:?}")))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Psl2(q) => write!(f, "PSL2({q})"),
            GroupSpec::Pgl2(q) => write!(f, "PGL2({q})"),
            GroupSpec::Psl3(q) => write!(f, "PSL3({q})"),
            GroupSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl GroupSpec {
    pub fn build(&self, order_cap: usize) -> Result<Construction> {
        match self {
            GroupSpec::Alternating(n) => make_alternating(*n, order_cap),
            GroupSpec::Symmetric(n) => make_symmetric(*n, order_cap),
            GroupSpec::Psl2(q) => make_psl2(*q, order_cap),
            GroupSpec::Pgl2(q) => make_pgl2(*q, order_cap),
            GroupSpec::Psl3(q) => make_psl3(*q, order_cap),
            GroupSpec::File(path) => Ok(Construction {
                name: self.to_string(),
                group: enumerate_group(&read_generator_file(path)?, order_cap)?,
                automorphisms: Vec::new(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AutSelector {
    Inner,
    Full,
    /// A generator file of normalizing permutations.
    File(PathBuf),
}

impl FromStr for AutSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inn" => Ok(AutSelector::Inner),
            "aut" => Ok(AutSelector::Full),
            other => other
                .strip_prefix("file:")
                .map(|p| AutSelector::File(PathBuf::from(p)))
                .ok_or_else(|| Error::Parse(format!("unknown automorphism selector {other:?}"))),
        }
    }
}

impl fmt::Display for AutSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutSelector::Inner => f.write_str("inn"),
            AutSelector::Full => f.write_str("aut"),
            AutSelector::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl AutSelector {
    /// Automorphisms beyond the inner ones, each checked to normalize the group.
    pub fn resolve(&self, construction: &Construction) -> Result<Vec<AutRealization>> {
        let auts = match self {
            AutSelector::Inner => Vec::new(),
            AutSelector::Full => construction.automorphisms.clone(),
            AutSelector::File(path) => read_generator_file(path)?
                .into_iter()
                .map(|p| AutRealization::conjugation(AutLabel::Custom, p))
                .collect(),
        };
        for a in &auts {
            a.element_map(&construction.group)?;
        }
        Ok(auts)
    }
}
