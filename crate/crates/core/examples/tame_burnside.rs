//! Tame automorphisms of the free Burnside group B(2,3) and the component
//! structure of its Nielsen graph N_2.

use nielsen::tame::{aut_group, tame_subgroup, verify_tame_classes};
use nielsen::{Group, GroupSpec};

fn main() -> nielsen::Result<()> {
    let b = Group::new(GroupSpec::BurnsideB23)?;
    let act = aut_group(&b, 2, None)?;
    let tame = tame_subgroup(&act);
    println!("|Aut B(2,3)| = {}", act.order());
    println!("|T|          = {}", tame.order);
    println!("index        = {}", tame.index);

    let report = verify_tame_classes(&b, 2)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
