//! Isoperimetric ratios |∂S|/|S| of balls and prefix sets in N_2(Z).

use nielsen::amenability::{ball_reports, cheeger_search, Strategy};
use nielsen::explorer::Fragment;
use nielsen::nielsen::int_tuple;
use nielsen::{Group, GroupSpec};

fn main() -> nielsen::Result<()> {
    let z = Group::new(GroupSpec::Integers)?;
    let frag = Fragment::ball(&z, &int_tuple(&[1, 1]), 9)?;
    for rep in ball_reports(&frag, None) {
        println!("{:<14} |S| = {:>5}  |∂S| = {:>5}  ratio {}", rep.description, rep.set_size, rep.boundary, rep.ratio);
    }
    for strategy in [Strategy::Balls, Strategy::Sweep] {
        let best = cheeger_search(&frag, strategy, None)?;
        println!("{strategy}: best {} over {} sets (upper bound on h)", best.best.ratio, best.sets_evaluated);
    }
    Ok(())
}
