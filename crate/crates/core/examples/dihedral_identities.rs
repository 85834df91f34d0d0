//! Move-word identities in N_2(D∞) and the classification of the vertices
//! of the degree-8 subgraph ball around (a, b).

use nielsen::dihedral::{check_identity, classify_ball, corrected_fourth, identities};

fn main() -> nielsen::Result<()> {
    for (k, id) in identities().iter().enumerate() {
        let c = check_identity(id, 20)?;
        let verdict = match &c.first_counterexample {
            None => "holds for all checked n".to_string(),
            Some(ce) => format!("fails, e.g. n={}: {} vs {}", ce.n, ce.lhs, ce.rhs),
        };
        println!("{}. {:<58} {verdict}", k + 1, id.text);
    }
    let fixed = corrected_fourth();
    println!("   {:<58} holds: {}", fixed.text, check_identity(&fixed, 20)?.holds());

    let c = classify_ball(20)?;
    println!("\nB_20 has {} vertices; unclassified: {}", c.vertices, c.unclassified.len());
    for (family, count) in &c.by_family {
        println!("  {family:<26} {count}");
    }
    Ok(())
}
