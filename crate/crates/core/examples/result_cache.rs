//! Persisting Borel-Weil-Bott and Ext results between runs.
//!
//! Run with `cargo run --example result_cache -- /tmp/grsod-cache`; the
//! second run reads everything from disk.

use grsod::cache::ResultCache;
use grsod::collections::{total_space_collection, verify};
use grsod::homspaces::Engine;

fn main() -> grsod::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| std::env::temp_dir().join("grsod-cache").display().to_string());
    let engine = Engine::with_cache(ResultCache::on_disk(&dir)?);
    let report = verify(&engine, &total_space_collection(2, 5)?, 6)?;
    println!("verify Tot(U) over Gr(2,5): {}", report.overall());

    let s = engine.cache().stats();
    println!(
        "cache at {dir}: {} from memory, {} from disk, {} computed",
        s.memory_hits, s.disk_hits, s.computed
    );
    Ok(())
}
