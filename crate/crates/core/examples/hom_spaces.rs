//! Graded Hom spaces on Gr(2,4) and on the total space of U, using the
//! text syntax for objects.
//!
//! Run with `cargo run --example hom_spaces`.

use grsod::homspaces::Engine;
use grsod::syntax::{parse_object, ParsedObject};

fn main() -> grsod::Result<()> {
    let (k, n) = (2, 4);
    let engine = Engine::new();
    let pairs = [
        ("U[2,1]", "U[2,1]"),
        ("U[1,1]", "U[2]"),
        ("O", "U[0,-2]"),
        ("Q[1] + O@1", "Q[1]*Q[1]"),
        ("push:U[1,1]", "push:U[1,1]"),
        ("push:U[2,2]", "push:U[2,1]"),
        ("pull:O", "push:U[1,1]"),
        ("pull:Q[1]", "pull:Q[1]"),
    ];
    for (from, to) in pairs {
        match (parse_object(from, k, n)?, parse_object(to, k, n)?) {
            (ParsedObject::Gr(f), ParsedObject::Gr(e)) => {
                println!("Hom({f}, {e}) = {}", engine.ext_gr(&f, &e)?);
            }
            (ParsedObject::Tot(f), ParsedObject::Tot(e)) => {
                let h = engine.hom_tot(&f, &e, 4)?;
                let more = if h.truncated { " + ..." } else { "" };
                println!("Hom({f}, {e}) = {}{more}", h.total);
            }
            _ => unreachable!("both sides use the same space"),
        }
    }
    Ok(())
}
