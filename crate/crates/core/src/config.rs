//! Process-wide limits and tuning knobs.
//!
//! The CLI loads these from an optional TOML file; library callers can
//! install their own with [`set_config`].

use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    /// Fields with at most this many elements get log/antilog tables.
    pub table_threshold: u64,
    /// Cap on the number of vectors enumerated for a single linear set.
    pub vector_cap: u64,
    /// Cap on the number of projective points in a marking bitmap.
    pub point_cap: u64,
    /// Cap on enumerated subspaces or ambient vectors in exhaustive loops.
    pub enum_cap: u64,
    /// Cap on search candidates processed in one run (0 = unlimited).
    pub node_cap: u64,
    /// Worker threads (0 = rayon default).
    pub threads: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            table_threshold: 1 << 20,
            vector_cap: 1 << 28,
            point_cap: 1 << 32,
            enum_cap: 1 << 32,
            node_cap: 0,
            threads: 0,
        }
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Config> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

static CONFIG: RwLock<Option<Config>> = RwLock::new(None);

pub fn config() -> Config {
    CONFIG.read().unwrap().unwrap_or_default()
}

pub fn set_config(c: Config) {
    *CONFIG.write().unwrap() = Some(c);
}

pub(crate) fn check_budget(what: &str, needed: u128, cap: u64) -> Result<()> {
    if needed > cap as u128 {
        Err(Error::BudgetExceeded(format!("{what}: need {needed}, cap {cap}")))
    } else {
        Ok(())
    }
}
