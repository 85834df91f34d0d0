//! A Euclid certificate: a move word carrying a gcd-1 integer tuple to
//! (1, 0, ..., 0).

use nielsen::explorer::euclid_reduce;
use nielsen::nielsen::{eval_word, int_tuple};
use nielsen::{Group, GroupSpec};

fn main() -> nielsen::Result<()> {
    let z = Group::new(GroupSpec::Integers)?;
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let xs = if args.is_empty() { vec![6, 10, 15] } else { args };
    let t = int_tuple(&xs);
    let w = euclid_reduce(&t)?;
    println!("{t}");
    println!("  word ({} moves): {w}", w.len());
    println!("  result: {}", eval_word(&z, &t, &w)?);
    Ok(())
}
