//! Kapranov's collection and its mutated form on Gr(2,5).
//!
//! Run with `cargo run --example grassmannian_collections`.

use grsod::collections::{kapranov_collection, modified_collection, verify};
use grsod::homspaces::Engine;

fn main() -> grsod::Result<()> {
    let engine = Engine::new();
    for spec in [kapranov_collection(2, 5)?, modified_collection(2, 5)?] {
        let names: Vec<String> = spec.items.iter().map(|i| i.name()).collect();
        println!("{}", names.join(", "));
        print!("{}", verify(&engine, &spec, 6)?);
        println!();
    }
    println!("Gram matrix of the Kapranov collection on Gr(2,4):");
    for row in engine.gram_matrix(2, 4)? {
        println!("  {row:?}");
    }
    Ok(())
}
