//! Nielsen classes of small finite groups by union-find over G^n.

use nielsen::explorer::{components, DEFAULT_VERTEX_CAP};
use nielsen::{Group, GroupSpec};

fn main() -> nielsen::Result<()> {
    let cases = [
        (GroupSpec::FiniteAbelianExp { m: 5, d: 1 }, 1),
        (GroupSpec::FiniteAbelianExp { m: 5, d: 1 }, 2),
        (GroupSpec::FiniteAbelianExp { m: 3, d: 2 }, 2),
        (GroupSpec::FiniteAbelianExp { m: 5, d: 2 }, 2),
        (GroupSpec::BurnsideB23, 2),
        (GroupSpec::BurnsideB23, 3),
    ];
    for (spec, n) in cases {
        let g = Group::new(spec)?;
        let c = components(&g, n, DEFAULT_VERTEX_CAP)?;
        println!("{:<45} n={n}  {} tuples  sizes {:?}", g.spec().to_json(), c.tuples.len(), c.sizes);
    }
    Ok(())
}
