//! DOT and JSONL serializations of a fragment, and a JSONL round trip.

use nielsen::explorer::Fragment;
use nielsen::{Group, GroupSpec, Tuple};

fn main() -> nielsen::Result<()> {
    let d = Group::new(GroupSpec::InfiniteDihedral)?;
    let root = Tuple::parse(&d, "[[0,1],[1,0]]")?;
    let frag = Fragment::ball(&d, &root, 1)?;
    print!("{}", frag.to_dot());

    let jsonl = frag.to_jsonl();
    println!("{}", jsonl.lines().next().unwrap_or_default());
    let back = Fragment::read_jsonl(&d, jsonl.as_bytes())?;
    println!("round trip identical: {}", back == frag);
    Ok(())
}
