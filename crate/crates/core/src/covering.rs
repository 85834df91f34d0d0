//! Coverings `N_n(G) → N_n(H)` induced by epimorphisms `π: G → H`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::explorer::Fragment;
use crate::group::{Element, Group, GroupSpec};
use crate::nielsen::{apply_move, designated_tuple, move_set, random_walk, Tuple};

/// The catalogue of supported epimorphisms, as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case", deny_unknown_fields)]
pub enum EpiRule {
    /// `Z^d → Z^e` keeping the listed coordinates (1-based). `d = 1` means
    /// `Z`, and a single kept coordinate lands in `Z`.
    Project { d: usize, coords: Vec<usize> },
    /// `Z^d → (Z/m)^d`.
    Mod { d: usize, m: u32 },
    /// `D∞ → Z/2`, the reflection bit.
    DihedralParity,
    /// `H → Z^2`, `(x, y, z) ↦ (x, y)`.
    HeisenbergAbelianization,
    /// A Cayley-table group onto its quotient by the listed normal subgroup.
    FiniteQuotient { table: Vec<Vec<u32>>, identity: u32, normal: Vec<u32> },
    /// Identity map of any group.
    Identity { group: GroupSpec },
}

impl EpiRule {
    pub fn from_json(s: &str) -> Result<EpiRule> {
        crate::json::from_str_strict(s, "epimorphism rule")
    }
}

#[derive(Clone, Debug)]
enum Map {
    Project(Vec<usize>),
    Mod(u32),
    Parity,
    Abelianize,
    Cosets(Vec<u32>),
    Identity,
}

/// A validated epimorphism.
#[derive(Clone, Debug)]
pub struct Epimorphism {
    rule: EpiRule,
    domain: Group,
    codomain: Group,
    map: Map,
}

fn lattice(d: usize) -> GroupSpec {
    if d == 1 {
        GroupSpec::Integers
    } else {
        GroupSpec::FreeAbelian { d }
    }
}

fn ints(g: &Element) -> Vec<i64> {
    match g {
        Element::Int(x) => vec![*x],
        Element::Vector(v) => v.clone(),
        _ => Vec::new(),
    }
}

fn from_ints(mut v: Vec<i64>) -> Element {
    if v.len() == 1 {
        Element::Int(v.pop().unwrap())
    } else {
        Element::Vector(v)
    }
}

/// Left cosets of `normal`, numbered by least representative, after
/// checking that `normal` is a normal subgroup.
fn quotient(table: &[Vec<u32>], identity: u32, normal: &[u32]) -> Result<(Vec<u32>, GroupSpec)> {
    let order = table.len();
    let mut in_n = vec![false; order];
    for &x in normal {
        *in_n
            .get_mut(x as usize)
            .ok_or_else(|| Error::usage(format!("element {x} is not in the table")))? = true;
    }
    let inv: Vec<u32> = (0..order)
        .map(|a| (0..order as u32).find(|&b| table[a][b as usize] == identity).unwrap())
        .collect();
    if !in_n[identity as usize] {
        return Err(Error::usage("the normal subgroup must contain the identity"));
    }
    for a in 0..order {
        for b in 0..order {
            if in_n[a] && in_n[b] && !in_n[table[a][b] as usize] {
                return Err(Error::usage("listed subset is not closed under multiplication"));
            }
            // conjugate b a b^-1
            if in_n[a] && !in_n[table[table[b][a] as usize][inv[b] as usize] as usize] {
                return Err(Error::usage("listed subgroup is not normal"));
            }
        }
    }
    let mut coset = vec![u32::MAX; order];
    let mut count = 0u32;
    for g in 0..order {
        if coset[g] != u32::MAX {
            continue;
        }
        for (h, _) in in_n.iter().enumerate().filter(|(_, &m)| m) {
            coset[table[g][h] as usize] = count;
        }
        count += 1;
    }
    let mut rep = vec![0usize; count as usize];
    for g in (0..order).rev() {
        rep[coset[g] as usize] = g;
    }
    let q: Vec<Vec<u32>> = (0..count as usize)
        .map(|a| (0..count as usize).map(|b| coset[table[rep[a]][rep[b]] as usize]).collect())
        .collect();
    Ok((
        coset.clone(),
        GroupSpec::FiniteCayley {
            table: q,
            identity: coset[identity as usize],
        },
    ))
}

impl Epimorphism {
    pub fn new(rule: EpiRule) -> Result<Epimorphism> {
        let (domain, codomain, map) = match &rule {
            EpiRule::Project { d, coords } => {
                if *d == 0 || coords.is_empty() {
                    return Err(Error::usage("projection needs d >= 1 and at least one coordinate"));
                }
                let mut sorted = coords.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != coords.len() || coords.iter().any(|&c| c == 0 || c > *d) {
                    return Err(Error::usage(format!("coordinates must be distinct and in 1..={d}")));
                }
                (lattice(*d), lattice(coords.len()), Map::Project(coords.iter().map(|c| c - 1).collect()))
            }
            EpiRule::Mod { d, m } => (lattice(*d), GroupSpec::FiniteAbelianExp { m: *m, d: *d }, Map::Mod(*m)),
            EpiRule::DihedralParity => (
                GroupSpec::InfiniteDihedral,
                GroupSpec::FiniteAbelianExp { m: 2, d: 1 },
                Map::Parity,
            ),
            EpiRule::HeisenbergAbelianization => (GroupSpec::Heisenberg, lattice(2), Map::Abelianize),
            EpiRule::FiniteQuotient { table, identity, normal } => {
                let domain = GroupSpec::FiniteCayley {
                    table: table.clone(),
                    identity: *identity,
                };
                Group::new(domain.clone())?;
                let (coset, q) = quotient(table, *identity, normal)?;
                (domain, q, Map::Cosets(coset))
            }
            EpiRule::Identity { group } => (group.clone(), group.clone(), Map::Identity),
        };
        let epi = Epimorphism {
            rule,
            domain: Group::new(domain)?,
            codomain: Group::new(codomain)?,
            map,
        };
        let images: Vec<Element> = epi
            .domain
            .generators()
            .iter()
            .map(|g| epi.apply(g))
            .collect::<Result<_>>()?;
        if !epi.codomain.is_generating(&images)? {
            return Err(Error::Assertion("epimorphism rule is not surjective".into()));
        }
        Ok(epi)
    }

    pub fn from_json(s: &str) -> Result<Epimorphism> {
        Epimorphism::new(EpiRule::from_json(s)?)
    }

    pub fn rule(&self) -> &EpiRule {
        &self.rule
    }

    pub fn domain(&self) -> &Group {
        &self.domain
    }

    pub fn codomain(&self) -> &Group {
        &self.codomain
    }

    pub fn apply(&self, g: &Element) -> Result<Element> {
        self.domain.check(g)?;
        Ok(match (&self.map, g) {
            (Map::Project(keep), _) => {
                let v = ints(g);
                from_ints(keep.iter().map(|&c| v[c]).collect())
            }
            (Map::Mod(m), _) => Element::Residues(ints(g).iter().map(|x| x.rem_euclid(*m as i64) as u32).collect()),
            (Map::Parity, Element::Dihedral { flip, .. }) => Element::Residues(vec![*flip as u32]),
            (Map::Abelianize, Element::Heisenberg([x, y, _])) => Element::Vector(vec![*x, *y]),
            (Map::Cosets(coset), Element::Index(i)) => Element::Index(coset[*i as usize]),
            (Map::Identity, _) => g.clone(),
            _ => unreachable!("element checked against the domain"),
        })
    }

    /// Entrywise image of a tuple.
    pub fn push(&self, t: &Tuple) -> Result<Tuple> {
        Ok(Tuple::new(t.entries.iter().map(|g| self.apply(g)).collect::<Result<_>>()?))
    }

    /// `π(gh) = π(g)π(h)` on `samples` random pairs, or on all pairs for a
    /// finite domain of order at most 4096.
    pub fn check_homomorphism(&self, samples: usize, seed: u64) -> Result<usize> {
        let pairs: Vec<(Element, Element)> = match self.domain.order() {
            Some(o) if o <= 4096 => {
                let els = self.domain.finite_table()?.elements().to_vec();
                els.iter()
                    .flat_map(|a| els.iter().map(move |b| (a.clone(), b.clone())))
                    .collect()
            }
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..samples)
                    .map(|_| (self.domain.random_element(&mut rng, 1000), self.domain.random_element(&mut rng, 1000)))
                    .collect()
            }
        };
        for (a, b) in &pairs {
            let lhs = self.apply(&self.domain.mul(a, b)?)?;
            let rhs = self.codomain.mul(&self.apply(a)?, &self.apply(b)?)?;
            if lhs != rhs {
                return Err(Error::Assertion(format!("π({a}·{b}) = {lhs} but π({a})π({b}) = {rhs}")));
            }
        }
        Ok(pairs.len())
    }
}

/// Pseudo-random generating tuples of length `n`: random walks of random
/// length from the designated tuple.
pub fn sample_generating_tuples(group: &Group, n: usize, count: usize, seed: u64) -> Result<Vec<Tuple>> {
    use rand::Rng;
    let start = designated_tuple(group, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let steps = rng.gen_range(0..=24);
            random_walk(group, &start, steps, &mut rng)
        })
        .collect()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct StarReport {
    pub checked: usize,
    pub darts_checked: usize,
    pub violations: Vec<String>,
}

/// Checks `π(s·t) = s·π(t)` for every move `s` at every sample `t`.
/// Since both stars carry one dart per move label, commutation is exactly
/// a label-preserving bijection of stars.
pub fn verify_star_bijection(pi: &Epimorphism, samples: &[Tuple]) -> Result<StarReport> {
    let per: Vec<Result<(usize, Vec<String>)>> = samples
        .par_iter()
        .map(|t| {
            if !pi.domain.is_generating(&t.entries)? {
                return Err(Error::usage(format!("sample {t} is not generating")));
            }
            let image = pi.push(t)?;
            let mut bad = Vec::new();
            if !pi.codomain.is_generating(&image.entries)? {
                bad.push(format!("image {image} of {t} is not generating"));
            }
            let moves = move_set(t.len());
            for &s in &moves {
                let up = pi.push(&apply_move(&pi.domain, t, s)?)?;
                let down = apply_move(&pi.codomain, &image, s)?;
                if up != down {
                    bad.push(format!("move {s} at {t}: π(s·t) = {up}, s·π(t) = {down}"));
                }
            }
            Ok((moves.len(), bad))
        })
        .collect();
    let mut report = StarReport::default();
    for r in per {
        let (darts, bad) = r?;
        report.checked += 1;
        report.darts_checked += darts;
        report.violations.extend(bad);
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftReport {
    pub vertices: usize,
    pub lifted: usize,
    pub unreached: usize,
    pub max_word_length: usize,
    pub violations: Vec<String>,
}

/// One lifted vertex: the move word from the seed image and its preimage.
#[derive(Clone, Debug)]
pub struct Lift {
    pub word: Vec<crate::NielsenMove>,
    pub preimage: Tuple,
}

/// Lifts every vertex of a codomain fragment along BFS parent pointers from
/// `push(seed)`, replaying each path's move word on `seed`.
pub fn lift_fragment(pi: &Epimorphism, frag: &Fragment, seed: &Tuple) -> Result<(LiftReport, Vec<Option<Lift>>)> {
    if frag.group() != &pi.codomain {
        return Err(Error::usage("fragment is not over the codomain of π"));
    }
    if !pi.domain.is_generating(&seed.entries)? {
        return Err(Error::usage(format!("seed {seed} is not generating")));
    }
    let image = pi.push(seed)?;
    let start = frag
        .id_of_tuple(&image)
        .ok_or_else(|| Error::usage(format!("π(seed) = {image} is not in the fragment")))?;
    let parents = frag.paths_from(start);
    let mut lifts: Vec<Option<Lift>> = vec![None; frag.len()];
    lifts[start as usize] = Some(Lift {
        word: Vec::new(),
        preimage: seed.clone(),
    });
    // parents precede children in BFS order, so sort by word length
    let mut order: Vec<(usize, u32)> = Vec::new();
    for v in 0..frag.len() as u32 {
        let mut len = 0;
        let mut cur = v;
        while let Some((p, _)) = parents[cur as usize] {
            len += 1;
            cur = p;
        }
        if cur == start {
            order.push((len, v));
        }
    }
    order.sort_unstable();
    let moves = frag.moves();
    let mut violations = Vec::new();
    for &(_, v) in &order {
        let Some((p, mv)) = parents[v as usize] else { continue };
        let parent = lifts[p as usize].as_ref().expect("parent lifted first");
        let mv = moves[mv as usize];
        let pre = apply_move(&pi.domain, &parent.preimage, mv)?;
        let mut word = parent.word.clone();
        word.push(mv);
        if pi.push(&pre)? != frag.vertex(v).tuple {
            violations.push(format!("lift of {} pushes elsewhere", frag.vertex(v).tuple));
        }
        lifts[v as usize] = Some(Lift { word, preimage: pre });
    }
    let lifted = lifts.iter().filter(|l| l.is_some()).count();
    let report = LiftReport {
        vertices: frag.len(),
        lifted,
        unreached: frag.len() - lifted,
        max_word_length: lifts.iter().flatten().map(|l| l.word.len()).max().unwrap_or(0),
        violations,
    };
    Ok((report, lifts))
}

pub fn verify_surjectivity_on_fragment(pi: &Epimorphism, frag: &Fragment, seed: &Tuple) -> Result<LiftReport> {
    lift_fragment(pi, frag, seed).map(|(r, _)| r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nielsen::{eval_word, int_tuple, MoveWord};

    fn z2_to_z() -> Epimorphism {
        Epimorphism::new(EpiRule::Project { d: 2, coords: vec![1] }).unwrap()
    }

    #[test]
    fn push_examples() {
        let pi = z2_to_z();
        let t = Tuple::new(vec![Element::Vector(vec![2, 1]), Element::Vector(vec![1, 1])]);
        assert_eq!(pi.push(&t).unwrap(), int_tuple(&[2, 1]));

        let par = Epimorphism::new(EpiRule::DihedralParity).unwrap();
        let t = Tuple::new(vec![Element::Dihedral { t: 0, flip: true }, Element::Dihedral { t: 1, flip: false }]);
        let r = |x| Element::Residues(vec![x]);
        assert_eq!(par.push(&t).unwrap(), Tuple::new(vec![r(1), r(0)]));

        let m5 = Epimorphism::new(EpiRule::Mod { d: 1, m: 5 }).unwrap();
        let five = |x| Element::Residues(vec![x]);
        assert_eq!(m5.push(&int_tuple(&[7, 3])).unwrap(), Tuple::new(vec![five(2), five(3)]));
        assert_eq!(m5.push(&int_tuple(&[-1])).unwrap(), Tuple::new(vec![five(4)]));
    }

    #[test]
    fn rule_json() {
        let pi = Epimorphism::from_json(r#"{"rule":"project","d":2,"coords":[1]}"#).unwrap();
        assert_eq!(pi.codomain().spec(), &GroupSpec::Integers);
        assert!(Epimorphism::from_json(r#"{"rule":"project","d":2,"coords":[3]}"#).is_err());
        assert!(Epimorphism::from_json(r#"{"rule":"dihedral_parity","x":1}"#).is_err());
        assert!(Epimorphism::from_json(r#"{"rule":"mod","d":2,"m":1}"#).is_err());
    }

    #[test]
    fn homomorphism_checks() {
        for rule in [
            EpiRule::Project { d: 3, coords: vec![3, 1] },
            EpiRule::Mod { d: 2, m: 4 },
            EpiRule::DihedralParity,
            EpiRule::HeisenbergAbelianization,
            EpiRule::Identity { group: GroupSpec::FreeGroup { d: 2 } },
        ] {
            let pi = Epimorphism::new(rule).unwrap();
            assert_eq!(pi.check_homomorphism(1000, 7).unwrap(), 1000);
        }
    }

    #[test]
    fn finite_quotient_of_z6() {
        let table: Vec<Vec<u32>> = (0..6).map(|a| (0..6).map(|b| (a + b) % 6).collect()).collect();
        let pi = Epimorphism::new(EpiRule::FiniteQuotient { table: table.clone(), identity: 0, normal: vec![0, 3] }).unwrap();
        assert_eq!(pi.codomain().order(), Some(3));
        assert_eq!(pi.check_homomorphism(0, 0).unwrap(), 36);
        let bad = EpiRule::FiniteQuotient { table, identity: 0, normal: vec![0, 2] };
        assert!(Epimorphism::new(bad).is_err());
    }

    #[test]
    fn star_commutation() {
        let pi = z2_to_z();
        let samples = sample_generating_tuples(pi.domain(), 2, 200, 1).unwrap();
        let r = verify_star_bijection(&pi, &samples).unwrap();
        assert_eq!((r.checked, r.darts_checked), (200, 2000));
        assert!(r.violations.is_empty());

        let m5 = Epimorphism::new(EpiRule::Mod { d: 1, m: 5 }).unwrap();
        let r = verify_star_bijection(&m5, &[int_tuple(&[1])]).unwrap();
        assert!(r.violations.is_empty());
    }

    #[test]
    fn lifting_replays_words() {
        let pi = z2_to_z();
        let frag = Fragment::ball(pi.codomain(), &int_tuple(&[1, 1]), 3).unwrap();
        let seed = Tuple::new(vec![Element::Vector(vec![1, 0]), Element::Vector(vec![1, 1])]);
        let (report, lifts) = lift_fragment(&pi, &frag, &seed).unwrap();
        assert_eq!(report.unreached, 0);
        assert!(report.violations.is_empty());
        for (v, l) in lifts.iter().enumerate() {
            let l = l.as_ref().unwrap();
            let replay = eval_word(pi.domain(), &seed, &MoveWord::new(l.word.clone())).unwrap();
            assert_eq!(replay, l.preimage);
            assert_eq!(pi.push(&replay).unwrap(), frag.vertex(v as u32).tuple);
        }
        let bare = Fragment::ball(pi.codomain(), &int_tuple(&[1, 1]), 0).unwrap();
        let r = verify_surjectivity_on_fragment(&pi, &bare, &seed).unwrap();
        assert_eq!((r.vertices, r.lifted), (1, 1));
    }
}
