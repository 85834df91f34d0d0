//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line with
//! its measured values and elapsed time; the process fails if any does.

mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_integer::Integer;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nielsen::amenability::{ball_reports, closed_walks, spectral_from_count};
use nielsen::covering::{sample_generating_tuples, verify_star_bijection, verify_surjectivity_on_fragment, EpiRule, Epimorphism};
use nielsen::dihedral;
use nielsen::explorer::{components, euclid_reduce, Fragment, DEFAULT_VERTEX_CAP};
use nielsen::forest::{verify_forest, DEFAULT_WINDOW_CAP};
use nielsen::nielsen::{apply_move, eval_word, int_tuple, move_set};
use nielsen::tame::verify_tame_classes;
use nielsen::{Element, Group, GroupSpec, NielsenMove, Tuple};

use common::*;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn integers() -> Group {
    Group::new(GroupSpec::Integers).unwrap()
}

fn dinf() -> Group {
    Group::new(GroupSpec::InfiniteDihedral).unwrap()
}

fn dinf_root(g: &Group, lit: &str) -> Tuple {
    Tuple::parse(g, lit).unwrap()
}

fn c1_n1_integers() -> Result<String, String> {
    let g = integers();
    let frag = Fragment::ball(&g, &int_tuple(&[1]), 3).map_err(|e| e.to_string())?;
    let tuples: HashSet<Tuple> = frag.vertices().iter().map(|v| v.tuple.clone()).collect();
    ensure(tuples == HashSet::from([int_tuple(&[1]), int_tuple(&[-1])]), || format!("vertices {tuples:?}"))?;
    ensure(frag.expanded_count() == 2, || "not all vertices expanded".into())?;
    let reached = frag.paths_from(0).iter().skip(1).all(Option::is_some);
    ensure(reached, || "not connected".into())?;
    for v in 0..frag.len() as u32 {
        for d in frag.darts(v) {
            let mv = frag.moves()[d.mv as usize];
            ensure(matches!(mv, NielsenMove::I { .. }), || format!("non-I edge {mv}"))?;
        }
    }
    Ok(format!("2 vertices, connected, {} darts all I-labeled", frag.dart_count()))
}

fn c2_euclid() -> Result<String, String> {
    let g = integers();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut done = 0;
    let mut longest = 0;
    while done < 1000 {
        let n = if done % 2 == 0 { 2 } else { 3 };
        let xs: Vec<i64> = (0..n).map(|_| rng.gen_range(-10_000..=10_000)).collect();
        if xs.iter().fold(0i64, |a, &x| a.gcd(&x)) != 1 {
            continue;
        }
        let t = int_tuple(&xs);
        let w = euclid_reduce(&t).map_err(|e| format!("{t}: {e}"))?;
        let end = eval_word(&g, &t, &w).map_err(|e| e.to_string())?;
        let mut e1 = vec![0; n];
        e1[0] = 1;
        ensure(end == int_tuple(&e1), || format!("{t} reduced to {end}"))?;
        longest = longest.max(w.len());
        done += 1;
    }
    Ok(format!("1000 gcd-1 tuples reduced to e_1, longest word {longest}"))
}

fn c3_forest() -> Result<String, String> {
    let mut lines = Vec::new();
    for (n, m) in [(2, 30), (3, 12)] {
        let r = verify_forest(n, m, DEFAULT_WINDOW_CAP).map_err(|e| e.to_string())?;
        ensure(r.acyclic, || format!("n={n} M={m}: cycle"))?;
        ensure(r.min_interior_degree >= 3, || format!("n={n} M={m}: interior degree {}", r.min_interior_degree))?;
        ensure(r.descent_ok, || format!("n={n} M={m}: descent fails"))?;
        ensure(r.coverage_ok, || format!("n={n} M={m}: coverage fails"))?;
        ensure(r.ok(), || format!("n={n} M={m}: {:?}", r.violations))?;
        lines.push(format!(
            "n={n} M={m}: {} vertices, {} components, min interior degree {}",
            r.vertices, r.components, r.min_interior_degree
        ));
    }
    Ok(lines.join("; "))
}

fn c4_cheeger() -> Result<String, String> {
    let g = integers();
    let root = int_tuple(&[1, 1]);
    let frag = Fragment::ball(&g, &root, 12).map_err(|e| e.to_string())?;
    let reports = ball_reports(&frag, Some(10_000));
    let bound = Ratio::new(1u64, 5);
    let mut worst = Ratio::new(u64::MAX, 1);
    let mut largest = 0;
    for rep in &reports {
        let r = Ratio::new(rep.boundary, rep.set_size as u64);
        ensure(r >= bound, || format!("{}: ratio {r}", rep.description))?;
        worst = worst.min(r);
        largest = largest.max(rep.set_size);
    }
    // The next ball already exceeds the size limit.
    let next = frag.vertices().iter().filter(|v| v.depth <= 12).count();
    ensure(next > 10_000, || format!("B_12 has only {next} vertices"))?;

    // Recount every boundary directly from the moves.
    for rep in &reports {
        let set: HashSet<Tuple> = frag.vertices()[..rep.set_size].iter().map(|v| v.tuple.clone()).collect();
        let mut boundary = 0u64;
        for t in &set {
            for m in move_set(2) {
                if !set.contains(&apply_move(&g, t, m).unwrap()) {
                    boundary += 1;
                }
            }
        }
        ensure(boundary == rep.boundary, || format!("{}: recount {boundary} vs {}", rep.description, rep.boundary))?;
    }
    Ok(format!("{} balls up to |S| = {largest}, min ratio {worst} >= 1/5", reports.len()))
}

fn profile(g: &Group, root: &Tuple, radius: u32) -> Result<Vec<usize>, String> {
    let frag = Fragment::ball(g, root, radius).map_err(|e| e.to_string())?;
    let p = frag.growth_profile().map_err(|e| e.to_string())?;
    Ok(p.into_iter().map(|(_, s)| s).collect())
}

fn c5_growth() -> Result<String, String> {
    let d = dinf();
    let bd = profile(&d, &dinf_root(&d, "[[0,1],[1,1]]"), 41)?;
    let mut max_inc = 0;
    for r in 5..=40 {
        let inc = bd[r + 1] - bd[r];
        ensure(inc <= 64, || format!("D∞: |B_{}| - |B_{r}| = {inc}", r + 1))?;
        max_inc = max_inc.max(inc);
    }
    let z = integers();
    let bz = profile(&z, &int_tuple(&[1, 1]), 13)?;
    let mut min_ratio = Ratio::new(u64::MAX, 1);
    for r in 4..=12 {
        let q = Ratio::new(bz[r + 1] as u64, bz[r] as u64);
        ensure(q >= Ratio::new(13, 10), || format!("Z: |B_{}|/|B_{r}| = {q}", r + 1))?;
        min_ratio = min_ratio.min(q);
    }
    Ok(format!(
        "D∞ max increment {max_inc} <= 64 (|B_41| = {}); Z min ratio {min_ratio} >= 13/10 (|B_13| = {})",
        bd[41], bz[13]
    ))
}

fn c6_identities() -> Result<String, String> {
    let mut held = Vec::new();
    let mut failed = Vec::new();
    for (k, id) in dihedral::identities().iter().enumerate() {
        let c = dihedral::check_identity(id, 20).map_err(|e| e.to_string())?;
        if c.holds() {
            held.push(k + 1);
        } else {
            let ce = c.first_counterexample.unwrap();
            failed.push(format!(
                "#{} `{}` fails for {} values of n, first n={}: {} vs {}",
                k + 1,
                id.text,
                c.failures.len(),
                ce.n,
                ce.lhs,
                ce.rhs
            ));
        }
    }
    let fixed = dihedral::check_identity(&dihedral::corrected_fourth(), 20).map_err(|e| e.to_string())?;
    let summary = format!("hold: {held:?}; corrected #4 with leading I1 holds: {}", fixed.holds());
    if failed.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; {}", failed.join("; ")))
    }
}

fn c7_classification() -> Result<String, String> {
    let c = dihedral::classify_ball(20).map_err(|e| e.to_string())?;
    ensure(c.complete(), || format!("unclassified: {:?}", c.unclassified))?;
    let counts: Vec<String> = c.by_family.iter().map(|(f, k)| format!("{f}: {k}")).collect();
    Ok(format!("all {} vertices of B_20 classified ({})", c.vertices, counts.join(", ")))
}

fn c8_covering() -> Result<String, String> {
    let pi = Epimorphism::new(EpiRule::Project { d: 2, coords: vec![1] }).map_err(|e| e.to_string())?;
    let samples = sample_generating_tuples(pi.domain(), 2, 1000, 8).map_err(|e| e.to_string())?;
    let star = verify_star_bijection(&pi, &samples).map_err(|e| e.to_string())?;
    ensure(star.checked == 1000 && star.darts_checked == 10_000, || format!("checked {}", star.checked))?;
    ensure(star.violations.is_empty(), || format!("star violations: {:?}", &star.violations[..1]))?;

    let z = integers();
    let image_root = int_tuple(&[1, 1]);
    let frag = Fragment::ball(&z, &image_root, 6).map_err(|e| e.to_string())?;
    let seed = Tuple::new(vec![Element::Vector(vec![1, 0]), Element::Vector(vec![1, 1])]);
    ensure(pi.push(&seed).unwrap() == image_root, || "seed does not cover (1,1)".into())?;
    let lift = verify_surjectivity_on_fragment(&pi, &frag, &seed).map_err(|e| e.to_string())?;
    ensure(lift.lifted == frag.len() && lift.unreached == 0, || {
        format!("lifted {} of {}, unreached {}", lift.lifted, frag.len(), lift.unreached)
    })?;
    ensure(lift.violations.is_empty(), || format!("lift violations: {:?}", lift.violations))?;

    let up = closed_walks(pi.domain(), &seed, 12, None, DEFAULT_VERTEX_CAP).map_err(|e| e.to_string())?;
    let down = closed_walks(&z, &image_root, 12, None, DEFAULT_VERTEX_CAP).map_err(|e| e.to_string())?;
    for k in 0..=12 {
        ensure(up[k] <= down[k], || format!("a_{k}: lift {} > image {}", up[k], down[k]))?;
    }
    Ok(format!(
        "1000 stars commute; all {} vertices of B_6 lift; a_12 lift {} <= image {}",
        frag.len(),
        up[12],
        down[12]
    ))
}

fn c9_tame() -> Result<String, String> {
    let z5 = abelian(&[5]);
    let r = verify_tame_classes(&z5, 1).map_err(|e| e.to_string())?;
    ensure(r.num_components == 2 && r.component_sizes == [2, 2] && r.index == 2, || format!("Z/5: {r:?}"))?;
    ensure(r.ok(), || format!("Z/5: {r:?}"))?;

    let z3sq = abelian(&[3, 3]);
    let r = verify_tame_classes(&z3sq, 2).map_err(|e| e.to_string())?;
    ensure(r.num_components == 1 && r.component_sizes == [48], || format!("(Z/3)^2: {r:?}"))?;
    ensure(r.ok(), || format!("(Z/3)^2: {r:?}"))?;

    let b = Group::new(GroupSpec::BurnsideB23).unwrap();
    let r = verify_tame_classes(&b, 2).map_err(|e| e.to_string())?;
    ensure(r.num_components == r.index, || format!("B(2,3): {} components, index {}", r.num_components, r.index))?;
    ensure(r.component_sizes.iter().all(|&s| s == r.tame_order), || format!("B(2,3): sizes {:?}", r.component_sizes))?;
    ensure(r.cayley_match && r.components_isomorphic, || format!("B(2,3): {:?}", r.counterexamples))?;
    Ok(format!(
        "Z/5: 2 x 2, index 2; (Z/3)^2: 1 x 48; B(2,3): |Aut| = {}, |T| = {}, {} component(s) = index, Cayley match",
        r.aut_order, r.tame_order, r.num_components
    ))
}

/// Enough for `16^6` tuples; rank-3 groups of order 16 and anything larger
/// need at least `16^7`.
const PAK_CAP: usize = 1 << 25;

fn battery() -> Vec<(&'static str, Group, usize)> {
    vec![
        ("Z/2", abelian(&[2]), 1),
        ("Z/3", abelian(&[3]), 1),
        ("Z/4", abelian(&[4]), 1),
        ("Z/5", abelian(&[5]), 1),
        ("Z/6", abelian(&[6]), 1),
        ("Z/7", abelian(&[7]), 1),
        ("Z/8", abelian(&[8]), 1),
        ("Z/9", abelian(&[9]), 1),
        ("Z/10", abelian(&[10]), 1),
        ("Z/11", abelian(&[11]), 1),
        ("Z/12", abelian(&[12]), 1),
        ("Z/13", abelian(&[13]), 1),
        ("Z/14", abelian(&[14]), 1),
        ("Z/15", abelian(&[15]), 1),
        ("Z/16", abelian(&[16]), 1),
        ("(Z/2)^2", abelian(&[2, 2]), 2),
        ("(Z/2)^3", abelian(&[2, 2, 2]), 3),
        ("Z/4 x Z/2", abelian(&[4, 2]), 2),
        ("(Z/3)^2", abelian(&[3, 3]), 2),
        ("Z/6 x Z/2", abelian(&[6, 2]), 2),
        ("S3", symmetric3(), 2),
        ("D4", dihedral(4), 2),
        ("Q8", quaternion(), 2),
        ("D5", dihedral(5), 2),
        ("D6", dihedral(6), 2),
        ("A4", alternating4(), 2),
        ("D7", dihedral(7), 2),
        ("D8", dihedral(8), 2),
        ("Z/4 x Z/4", abelian(&[4, 4]), 2),
    ]
}

fn c10_connectivity() -> Result<String, String> {
    let b = Group::new(GroupSpec::BurnsideB23).unwrap();
    let c = components(&b, 3, DEFAULT_VERTEX_CAP).map_err(|e| e.to_string())?;
    ensure(c.count() == 1, || format!("N_3(B(2,3)) has {} components", c.count()))?;
    let b_tuples = c.tuples.len();

    let mut names = Vec::new();
    for (name, g, rank) in battery() {
        let order = g.order().unwrap();
        let n = rank + (order as f64).log2().ceil() as usize;
        let c = components(&g, n, PAK_CAP).map_err(|e| format!("{name}: {e}"))?;
        ensure(c.count() == 1, || format!("N_{n}({name}) has {} components", c.count()))?;
        ensure(c.sizes.iter().sum::<usize>() == c.tuples.len(), || format!("{name}: sizes do not add up"))?;
        names.push(format!("{name}/n={n}"));
    }
    Ok(format!(
        "N_3(B(2,3)) connected ({b_tuples} tuples); {} battery groups connected at n = rank + ceil(log2|G|): {}",
        names.len(),
        names.join(" ")
    ))
}

fn c11_walks() -> Result<String, String> {
    let z = integers();
    let d = dinf();
    let z_root = int_tuple(&[1, 1]);
    let cases = [
        ("Z at (1,1)", z.clone(), z_root.clone()),
        ("D∞ at ((0,1),(1,1))", d.clone(), dinf_root(&d, "[[0,1],[1,1]]")),
        ("D∞ at ((0,1),(1,0))", d.clone(), dinf_root(&d, "[[0,1],[1,0]]")),
    ];
    for (name, g, root) in &cases {
        let dp = closed_walks(g, root, 6, None, DEFAULT_VERTEX_CAP).map_err(|e| e.to_string())?;
        let bf = brute_force_walks(g, root, 6);
        ensure(dp == bf, || format!("{name}: dp {dp:?} vs enumeration {bf:?}"))?;
    }
    let mut rho16 = Vec::new();
    for (name, g, root) in &cases {
        let walks = closed_walks(g, root, 16, None, DEFAULT_VERTEX_CAP).map_err(|e| e.to_string())?;
        for (k, &a_k) in walks.iter().enumerate().skip(1) {
            let est = spectral_from_count(k, a_k, 10).map_err(|e| e.to_string())?;
            ensure(est.rho_hat <= 1.0, || format!("{name}: rho_hat(k={k}) = {}", est.rho_hat))?;
        }
        rho16.push(spectral_from_count(16, walks[16], 10).unwrap().rho_hat);
    }
    ensure(rho16[1] > rho16[0], || format!("rho_hat D∞ {} <= Z {}", rho16[1], rho16[0]))?;
    ensure(rho16[2] > rho16[0], || format!("rho_hat D∞ {} <= Z {}", rho16[2], rho16[0]))?;
    Ok(format!(
        "DP = enumeration for k <= 6; rho_hat <= 1 for k <= 16; k=16: D∞ {:.4} / {:.4} > Z {:.4}",
        rho16[1], rho16[2], rho16[0]
    ))
}

fn main() {
    let criteria: [(u32, &str, Check, u64); 11] = [
        (1, "N_1(Z) is two vertices joined by I", c1_n1_integers, 1),
        (2, "Euclid certificates", c2_euclid, 30),
        (3, "forest verification", c3_forest, 300),
        (4, "Cheeger ball ratios >= 1/5", c4_cheeger, 120),
        (5, "growth dichotomy", c5_growth, 120),
        (6, "dihedral move-word identities", c6_identities, 1),
        (7, "dihedral vertex families", c7_classification, 10),
        (8, "covering Z^2 -> Z", c8_covering, 120),
        (9, "Nielsen classes and tame automorphisms", c9_tame, 300),
        (10, "connectivity above the generator bounds", c10_connectivity, 600),
        (11, "closed walks and spectral estimates", c11_walks, 300),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failures = 0;
    for (id, name, check, limit) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed <= Duration::from_secs(limit) {
                Ok(msg)
            } else {
                Err(format!("{msg}; took {elapsed:.1?}, limit {limit} s"))
            }
        });
        match outcome {
            Ok(msg) => println!("criterion {id:>2} PASS [{elapsed:.2?}] {name}: {msg}"),
            Err(msg) => {
                failures += 1;
                println!("criterion {id:>2} FAIL [{elapsed:.2?}] {name}: {msg}");
            }
        }
    }
    if failures > 0 {
        println!("{failures} criterion(s) failed");
        std::process::exit(1);
    }
}
