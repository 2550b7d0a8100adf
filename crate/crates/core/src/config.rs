//! Run configuration shared by the library entry points and the CLI.

use serde::{Deserialize, Serialize};

pub const DEFAULT_MAX_ENUM: u64 = 10_000_000;
pub const DEFAULT_ARTIN_BOUND: u64 = 7;
pub const DEFAULT_HEIGHT: u64 = 10;
pub const DEFAULT_SEED: u64 = 0x6d6f_6e6f;

/// Environment variable overriding [`Config::max_enum`].
pub const MAX_ENUM_ENV: &str = "MONOGEN_MAX_ENUM";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputMode {
    #[default]
    Human,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Largest number of points any brute-force enumeration may visit.
    pub max_enum: u64,
    /// Primes up to this bound get the Artinian cross-check in reports.
    pub artin_bound: u64,
    pub height: u64,
    pub output: OutputMode,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_enum: DEFAULT_MAX_ENUM,
            artin_bound: DEFAULT_ARTIN_BOUND,
            height: DEFAULT_HEIGHT,
            output: OutputMode::Human,
            seed: DEFAULT_SEED,
        }
    }
}

impl Config {
    /// Defaults, with the enumeration cap taken from `MONOGEN_MAX_ENUM` when
    /// it holds a positive integer.
    pub fn from_env() -> Self {
        let mut c = Config::default();
        if let Some(cap) = std::env::var(MAX_ENUM_ENV).ok().and_then(|s| s.trim().parse::<u64>().ok()) {
            if cap > 0 {
                c.max_enum = cap;
            }
        }
        c
    }

    pub fn with_height(mut self, h: u64) -> Self {
        self.height = h;
        self
    }

    pub fn with_artin_bound(mut self, p: u64) -> Self {
        self.artin_bound = p;
        self
    }

    pub fn with_max_enum(mut self, cap: u64) -> Self {
        self.max_enum = cap.max(1);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = Config::default();
        assert_eq!(c.max_enum, 10_000_000);
        assert_eq!(c.artin_bound, 7);
        assert_eq!(c.height, 10);
        assert_eq!(c.output, OutputMode::Human);
        assert_eq!(Config::default().with_max_enum(0).max_enum, 1);
    }
}
