//! Guard rails for the exhaustive enumeration kernels.
//!
//! Every limit can be raised (at the caller's own risk) through the
//! `AOFORGE_MAX_N` environment variable, which replaces the *vertex-count*
//! style limits below. State-space limits scale accordingly only where
//! noted.

use std::env;

pub const PAO_MAX_N: usize = 16;
pub const NC_CHAIN_MAX_N: usize = 7;
pub const FOREST_IDENTITY_MAX_N: usize = 8;
pub const PARKING_MAX_N: usize = 7;
pub const BRUTEFORCE_GRAPHS_MAX_N: usize = 5;
pub const PERCOLATION_MAX_N: usize = 20;
pub const TRANSITION_MAX_STATES: usize = 20_000;

/// Reads the `AOFORGE_MAX_N` override, if set and parseable.
pub fn env_override() -> Option<usize> {
    env::var("AOFORGE_MAX_N").ok().and_then(|s| s.parse().ok())
}

/// Effective limit: the larger of the built-in default and the override.
pub fn effective(default: usize) -> usize {
    match env_override() {
        Some(n) => n.max(default),
        None => default,
    }
}

/// Returns an error message builder for limit violations.
pub fn check(value: usize, default: usize, what: &str) -> crate::Result<()> {
    let limit = effective(default);
    if value > limit {
        Err(crate::Error::ResourceLimit(format!(
            "{what}: {value} exceeds limit {limit} (override with AOFORGE_MAX_N)"
        )))
    } else {
        Ok(())
    }
}
