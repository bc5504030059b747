//! Littlewood-Richardson products and tensor products of GL(r) modules.
//!
//! Run with `cargo run --example littlewood_richardson`.

use grsod::tensor::{dim_schur, lr_coefficient, lr_product, tensor_schur};
use grsod::young::{Partition, Weight};

fn main() -> grsod::Result<()> {
    let l: Partition = "2,1".parse()?;
    println!("s_(2,1) * s_(2,1) =");
    for (nu, c) in lr_product(&l, &l).iter().rev() {
        println!("  {c} * s_({nu})");
    }
    let nu: Partition = "3,2,1".parse()?;
    println!("c^(3,2,1)_(2,1),(2,1) = {}", lr_coefficient(&l, &l, &nu));

    // negative weights are handled by twisting with a power of the determinant
    let lambda = Weight::new(vec![1, 0, -2])?;
    let sum = tensor_schur(&lambda, &"1,1".parse()?, 3)?;
    println!("L_({lambda}) (x) wedge^2 in GL(3):");
    for (w, m) in sum.iter() {
        println!("  {m} * L_({w})  dim {}", dim_schur(w)?);
    }
    println!("total dimension {} = {} * 3", sum.dimension()?, dim_schur(&lambda)?);
    Ok(())
}
