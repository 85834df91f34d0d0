//! The covering N_2(Z^2) -> N_2(Z) induced by projecting to the first
//! coordinate: star commutation, path lifting and walk counts.

use nielsen::amenability::closed_walks;
use nielsen::covering::{lift_fragment, sample_generating_tuples, verify_star_bijection, EpiRule, Epimorphism};
use nielsen::explorer::{Fragment, DEFAULT_VERTEX_CAP};
use nielsen::{Element, Tuple};

fn main() -> nielsen::Result<()> {
    let pi = Epimorphism::new(EpiRule::Project { d: 2, coords: vec![1] })?;
    let samples = sample_generating_tuples(pi.domain(), 2, 500, 1)?;
    let star = verify_star_bijection(&pi, &samples)?;
    println!("stars: {} checked, {} darts, {} violations", star.checked, star.darts_checked, star.violations.len());

    let seed = Tuple::new(vec![Element::Vector(vec![1, 0]), Element::Vector(vec![1, 1])]);
    let image = pi.push(&seed)?;
    let frag = Fragment::ball(pi.codomain(), &image, 3)?;
    let (report, lifts) = lift_fragment(&pi, &frag, &seed)?;
    println!("lifted {}/{} vertices, longest word {}", report.lifted, report.vertices, report.max_word_length);
    for (v, lift) in frag.vertices().iter().zip(&lifts).skip(1).take(5) {
        let lift = lift.as_ref().expect("every vertex lifts");
        println!("  {} <- {}", v.tuple, lift.preimage);
    }

    let up = closed_walks(pi.domain(), &seed, 8, None, DEFAULT_VERTEX_CAP)?;
    let down = closed_walks(pi.codomain(), &image, 8, None, DEFAULT_VERTEX_CAP)?;
    for k in (2..=8).step_by(2) {
        println!("  a_{k}: cover {}  base {}", up[k], down[k]);
    }
    Ok(())
}
