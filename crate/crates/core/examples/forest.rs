//! The rooted subforest of N_n(Z): verification inside a window, plus one
//! component rendered as DOT.

use nielsen::forest::{forest_dot, verify_forest, ForestSpec, DEFAULT_WINDOW_CAP};

fn main() -> nielsen::Result<()> {
    for (n, m) in [(2, 20), (3, 8)] {
        let r = verify_forest(n, m, DEFAULT_WINDOW_CAP)?;
        println!(
            "n={n} M={m}: ok={} vertices={} components={}/{} min interior degree={}",
            r.ok(),
            r.vertices,
            r.components,
            r.expected_components,
            r.min_interior_degree
        );
        for rd in &r.root_degrees {
            println!("    {:<12} root {}  degree {}", rd.component, rd.root, rd.degree);
        }
    }
    // Gamma_{{}, {}} for n = 2: the component of positive tuples.
    let spec = ForestSpec::new(2, &[], &[], 4)?;
    print!("{}", forest_dot(&spec)?);
    Ok(())
}
