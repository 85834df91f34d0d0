//! Linear versus exponential ball growth: N_2(D∞) against N_2(Z).

use nielsen::explorer::Fragment;
use nielsen::{Group, GroupSpec, Tuple};

fn sizes(spec: GroupSpec, root: &str, radius: u32) -> nielsen::Result<Vec<usize>> {
    let g = Group::new(spec)?;
    let root = Tuple::parse(&g, root)?;
    let frag = Fragment::ball(&g, &root, radius)?;
    Ok(frag.growth_profile()?.into_iter().map(|(_, s)| s).collect())
}

fn main() -> nielsen::Result<()> {
    let d = sizes(GroupSpec::InfiniteDihedral, "[[0,1],[1,1]]", 12)?;
    let z = sizes(GroupSpec::Integers, "[1,1]", 12)?;
    println!("{:>3} {:>8} {:>8}", "r", "D∞", "Z");
    for r in 0..d.len() {
        println!("{r:>3} {:>8} {:>8}", d[r], z[r]);
    }
    Ok(())
}
