//! Exact closed-walk counts and the finite-k spectral estimates
//! (1/m) a_k^(1/k).

use nielsen::amenability::{closed_walks, spectral_from_count};
use nielsen::explorer::DEFAULT_VERTEX_CAP;
use nielsen::{Group, GroupSpec, Tuple};

fn main() -> nielsen::Result<()> {
    let k = 16;
    for (spec, root) in [
        (GroupSpec::Integers, "[1,1]"),
        (GroupSpec::InfiniteDihedral, "[[0,1],[1,1]]"),
        (GroupSpec::InfiniteDihedral, "[[0,1],[1,0]]"),
    ] {
        let g = Group::new(spec)?;
        let root = Tuple::parse(&g, root)?;
        let walks = closed_walks(&g, &root, k, None, DEFAULT_VERTEX_CAP)?;
        let est = spectral_from_count(k, walks[k], 10)?;
        println!("{:<30} {root}  a_{k} = {}  rho_hat = {:.4}", g.spec().to_json(), est.a_k, est.rho_hat);
    }
    Ok(())
}
