//! Mutations in K_0: the resolution of L_{λ^T} Q by Schur powers of U and
//! the rotation that turns one collection into the other.
//!
//! Run with `cargo run --example mutations`.

use grsod::homspaces::{Engine, GrObject};
use grsod::mutation::{
    rotate_right_k, rotation_periodicity, verify_mutation_equivalence, verify_resolution, KCollection,
};
use grsod::young::Partition;

fn main() -> grsod::Result<()> {
    let engine = Engine::new();
    let lambda: Partition = "2,1".parse()?;
    print!("{}", verify_resolution(&engine, &lambda, 2, 4)?);
    print!("{}", verify_mutation_equivalence(&engine, &lambda, 2, 4)?);

    // Beilinson's collection on P^2, rotated once
    let basis = engine.kbasis(1, 3)?;
    let classes = basis
        .diagrams()
        .members()
        .iter()
        .map(|l| engine.kclass(&GrObject::u_diagram(1, 3, l)?))
        .collect::<grsod::Result<Vec<_>>>()?;
    let rotated = rotate_right_k(&basis, &KCollection::new(classes))?;
    println!("rotated collection on P^2, in the basis O(-2), O(-1), O:");
    for c in &rotated.classes {
        println!("  {:?}", basis.expand(c)?);
    }

    let per = rotation_periodicity(&engine, 2, 4)?;
    println!(
        "{} rotations on Gr(2,4): back to start {}, Serre twist {}",
        per.rotations, per.returns_to_original, per.matches_serre_twist
    );
    Ok(())
}
