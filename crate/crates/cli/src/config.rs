//! Run configuration: command-line flags over a `key=value` file over
//! environment variables over built-in defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use serde::Serialize;

use orbwidth::characters::DEFAULT_TABLE_CAP;
use orbwidth::diagonal::DEFAULT_POINT_CAP;
use orbwidth::group::DEFAULT_ORDER_CAP;
use orbwidth::widths::DEFAULT_CN_CAP;
use orbwidth::{Error, Result};

pub const ENV_ORDER_CAP: &str = "ORBWIDTH_ORDER_CAP";
pub const ENV_POINT_CAP: &str = "ORBWIDTH_POINT_CAP";
pub const ENV_CN_CAP: &str = "ORBWIDTH_CN_CAP";
pub const ENV_TABLE_CAP: &str = "ORBWIDTH_TABLE_CAP";

const KEYS: &[&str] = &[
    "order_cap",
    "point_cap",
    "cn_cap",
    "table_cap",
    "format",
    "threads",
    "output",
    "max_seconds",
    "aut",
    "variant",
    "k",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Format::from_str_opt(s).ok_or_else(|| Error::Parse(format!("unknown format {s:?}")))
    }
}

impl Format {
    fn from_str_opt(s: &str) -> Option<Self> {
        <Format as ValueEnum>::from_str(s, true).ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub order_cap: usize,
    pub point_cap: usize,
    pub cn_cap: u32,
    pub table_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            order_cap: DEFAULT_ORDER_CAP,
            point_cap: DEFAULT_POINT_CAP,
            cn_cap: DEFAULT_CN_CAP,
            table_cap: DEFAULT_TABLE_CAP,
        }
    }
}

/// Parsed `key=value` lines; `#` starts a comment.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", n + 1)))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(Error::Parse(format!("config line {}: unknown key {key:?}", n + 1)));
            }
            values.insert(key.to_string(), value.trim().to_string());
        }
        Ok(ConfigFile { values })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        ConfigFile::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get(key)
            .map(|v| v.parse().map_err(|_| Error::Parse(format!("config {key}: bad value {v:?}"))))
            .transpose()
    }
}

/// Values given on the command line; `None` falls through to the file,
/// then the environment.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub order_cap: Option<usize>,
    pub point_cap: Option<usize>,
    pub cn_cap: Option<u32>,
    pub table_cap: Option<usize>,
    pub format: Option<Format>,
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
    pub max_seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub caps: Caps,
    pub format: Format,
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
    pub max_seconds: Option<f64>,
    #[serde(skip)]
    pub file: ConfigFile,
}

fn from_env<T: FromStr>(name: &str, lookup: &dyn Fn(&str) -> Option<String>) -> Result<Option<T>> {
    lookup(name)
        .map(|v| v.parse().map_err(|_| Error::Parse(format!("{name}: bad value {v:?}"))))
        .transpose()
}

fn positive<T: PartialOrd + Default + Copy>(name: &str, v: T) -> Result<T> {
    if v > T::default() {
        Ok(v)
    } else {
        Err(Error::InvalidArgument(format!("{name} must be positive")))
    }
}

impl RunConfig {
    pub fn resolve(over: Overrides, file: ConfigFile, lookup: &dyn Fn(&str) -> Option<String>) -> Result<Self> {
        let d = Caps::default();
        let caps = Caps {
            order_cap: over
                .order_cap
                .or(file.parsed("order_cap")?)
                .or(from_env(ENV_ORDER_CAP, lookup)?)
                .unwrap_or(d.order_cap),
            point_cap: over
                .point_cap
                .or(file.parsed("point_cap")?)
                .or(from_env(ENV_POINT_CAP, lookup)?)
                .unwrap_or(d.point_cap),
            cn_cap: over
                .cn_cap
                .or(file.parsed("cn_cap")?)
                .or(from_env(ENV_CN_CAP, lookup)?)
                .unwrap_or(d.cn_cap),
            table_cap: over
                .table_cap
                .or(file.parsed("table_cap")?)
                .or(from_env(ENV_TABLE_CAP, lookup)?)
                .unwrap_or(d.table_cap),
        };
        positive("order_cap", caps.order_cap)?;
        positive("point_cap", caps.point_cap)?;
        positive("cn_cap", caps.cn_cap)?;
        positive("table_cap", caps.table_cap)?;
        let threads = over.threads.or(file.parsed("threads")?);
        if let Some(t) = threads {
            positive("threads", t)?;
        }
        let max_seconds = over.max_seconds.or(file.parsed("max_seconds")?);
        if let Some(s) = max_seconds {
            if !(s > 0.0) {
                return Err(Error::InvalidArgument("max_seconds must be positive".into()));
            }
        }
        Ok(RunConfig {
            caps,
            format: over.format.or(file.parsed("format")?).unwrap_or(Format::Json),
            threads,
            output: over.output.or(file.get("output").map(PathBuf::from)),
            max_seconds,
            file,
        })
    }

    /// A per-command setting: the flag, else the config file, else `default`.
    pub fn setting<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T> {
        Ok(flag.or(self.file.parsed(key)?).unwrap_or(default))
    }
}
