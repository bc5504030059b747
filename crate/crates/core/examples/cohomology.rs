//! Sheaf cohomology of homogeneous bundles by Borel-Weil-Bott.
//!
//! Run with `cargo run --example cohomology`.

use grsod::bott::{bwb, cohomology};
use grsod::tensor::BundleExpression;
use grsod::young::Weight;

fn main() -> grsod::Result<()> {
    // line bundles on P^1: O(-a) is L_(a) U
    for a in [-2i64, -1, 0, 1, 2, 3] {
        let c = bwb(1, 2, &Weight::new(vec![a])?, &Weight::zero(1))?;
        println!("O({:>2}) on P^1: {:?}, dim {}", -a, c.degree(), c.dimension()?);
    }

    // symmetric powers of U^dual on Gr(2,4) only have global sections
    for m in 0..=4 {
        let h = cohomology(&BundleExpression::sym_u_dual(2, 4, m)?)?;
        println!("H*(S^{m} U^dual) on Gr(2,4) = {h}");
    }

    // the canonical bundle has its cohomology in the top degree
    let omega = BundleExpression::canonical(2, 4)?;
    println!("H*({omega}) on Gr(2,4) = {}", cohomology(&omega)?);
    Ok(())
}
