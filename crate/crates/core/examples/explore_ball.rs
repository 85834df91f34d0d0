//! Breadth-first ball in N_2(Z) around (1,1), with a window that keeps
//! large tuples as unexpanded frontier.

use nielsen::explorer::{BallOptions, Fragment};
use nielsen::nielsen::int_tuple;
use nielsen::{Group, GroupSpec};

fn main() -> nielsen::Result<()> {
    let z = Group::new(GroupSpec::Integers)?;
    let root = int_tuple(&[1, 1]);
    let opts = BallOptions {
        window: Some(5),
        ..BallOptions::default()
    };
    let frag = Fragment::ball_with(&z, &root, 6, &opts)?;
    frag.check_invariants()?;
    println!("vertices {}  expanded {}  darts {}", frag.len(), frag.expanded_count(), frag.dart_count());
    for v in frag.vertices().iter().take(8) {
        println!("  depth {}  {}{}", v.depth, v.tuple, if v.expanded { "" } else { "  (frontier)" });
    }
    Ok(())
}
