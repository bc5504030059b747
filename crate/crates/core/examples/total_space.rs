//! The semiorthogonal decomposition of Tot(U) over Gr(k,n), and what breaks
//! when two of its pieces are swapped.
//!
//! Run with `cargo run --example total_space -- 2 5`.

use grsod::collections::{total_space_collection, verify};
use grsod::homspaces::Engine;

fn main() -> grsod::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<usize>().expect("k and n are integers"));
    let k = args.next().unwrap_or(2);
    let n = args.next().unwrap_or(5);

    let engine = Engine::new();
    let spec = total_space_collection(k, n)?;
    let (push, pull) = spec.block_sizes();
    println!("Tot(U) over Gr({k},{n}): {push} pushforwards, {pull} pullbacks");
    print!("{}", verify(&engine, &spec, 6)?);

    if spec.len() > 1 {
        let report = verify(&engine, &spec.swapped(0, 1)?, 6)?;
        println!("\nwith the first two items swapped: {}", report.overall());
        for c in report.failures() {
            println!("  {}: {}", c.name, c.witness);
        }
    }
    Ok(())
}
