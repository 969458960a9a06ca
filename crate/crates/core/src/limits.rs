//! Resource caps. Two of them can be overridden from the environment.

use std::sync::OnceLock;

pub const DEFAULT_MAX_CYCLES: usize = 1_000_000;
pub const DEFAULT_MAX_GROUND: usize = 16;
/// Largest ground set accepted by the graphic oracle.
pub const GRAPHIC_MAX_GROUND: usize = 12;
/// Largest rank accepted by the graphic oracle.
pub const GRAPHIC_MAX_RANK: usize = 7;
/// Largest ground set accepted by the census.
pub const CENSUS_MAX_GROUND: usize = 14;
/// Largest vertex budget accepted by the census.
pub const CENSUS_MAX_VERTICES: usize = 7;

fn env_or(name: &str, default: usize) -> usize {
    std::env::var(name)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

/// Cap on the number of cycles materialized for one graph (`BIASFORGE_MAX_CYCLES`).
pub fn max_cycles() -> usize {
    static V: OnceLock<usize> = OnceLock::new();
    *V.get_or_init(|| env_or("BIASFORGE_MAX_CYCLES", DEFAULT_MAX_CYCLES))
}

/// Cap on ground-set size for exhaustive matroid searches (`BIASFORGE_MAX_GROUND`).
pub fn max_ground() -> usize {
    static V: OnceLock<usize> = OnceLock::new();
    *V.get_or_init(|| env_or("BIASFORGE_MAX_GROUND", DEFAULT_MAX_GROUND))
}
