//! Move-word identities and the vertex families of `N_2(D∞)`.
//!
//! `D∞ = ⟨a, b | a², aba = b⁻¹⟩` with `a` the reflection `(0,1)` and `b` the
//! unit translation `(1,0)`. Words are written in operator notation: in
//! `R12 R21 R12^n (a,b)` the power `R12^n` is applied first.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::Result;
use crate::group::{Element, Group, GroupSpec};
use crate::nielsen::{apply_move, eval_word, MoveWord, NielsenMove, Sign, Tuple};

const R12: NielsenMove = NielsenMove::R { i: 0, j: 1, sign: Sign::Plus };
const R21: NielsenMove = NielsenMove::R { i: 1, j: 0, sign: Sign::Plus };
const I1: NielsenMove = NielsenMove::I { j: 0 };
const I2: NielsenMove = NielsenMove::I { j: 1 };

pub fn group() -> Group {
    Group::new(GroupSpec::InfiniteDihedral).expect("D∞ needs no validation")
}

pub fn a() -> Element {
    Element::Dihedral { t: 0, flip: true }
}

pub fn b() -> Element {
    Element::Dihedral { t: 1, flip: false }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Start {
    #[serde(rename = "(a,b)")]
    AB,
    #[serde(rename = "(b,a)")]
    BA,
}

impl Start {
    pub fn tuple(self) -> Tuple {
        match self {
            Start::AB => Tuple::new(vec![a(), b()]),
            Start::BA => Tuple::new(vec![b(), a()]),
        }
    }
}

/// `prefix · power^(n - offset)` applied to a start tuple.
#[derive(Clone, Debug)]
pub struct Side {
    pub prefix: Vec<NielsenMove>,
    pub power: Vec<NielsenMove>,
    pub offset: usize,
    pub start: Start,
}

impl Side {
    fn new(prefix: &[NielsenMove], power: &[NielsenMove], start: Start) -> Self {
        Side {
            prefix: prefix.to_vec(),
            power: power.to_vec(),
            offset: 0,
            start,
        }
    }

    /// The move word for exponent `n`, in application order.
    pub fn word(&self, n: usize) -> MoveWord {
        let mut ops = self.prefix.clone();
        for _ in 0..n - self.offset {
            ops.extend_from_slice(&self.power);
        }
        MoveWord::from_operators(&ops)
    }

    pub fn eval(&self, n: usize) -> Result<Tuple> {
        eval_word(&group(), &self.start.tuple(), &self.word(n))
    }
}

#[derive(Clone, Debug)]
pub struct Identity {
    pub text: &'static str,
    pub lhs: Side,
    pub rhs: Side,
    pub min_n: usize,
}

/// The eight identities exactly as displayed, in order.
pub fn identities() -> Vec<Identity> {
    use Start::*;
    let c12 = [I2, R12, I2];
    let c21 = [I1, R21, I1];
    let mut last_rhs = Side::new(&[I1, R12, R21], &c12, AB);
    last_rhs.offset = 1;
    vec![
        Identity {
            text: "R12 R21 R12^n (a,b) = R21 I1 R21^n (b,a)",
            lhs: Side::new(&[R12, R21], &[R12], AB),
            rhs: Side::new(&[R21, I1], &[R21], BA),
            min_n: 0,
        },
        Identity {
            text: "R21 R12 R21 I1 R21^n (b,a) = R12^n (a,b)",
            lhs: Side::new(&[R21, R12, R21, I1], &[R21], BA),
            rhs: Side::new(&[], &[R12], AB),
            min_n: 0,
        },
        Identity {
            text: "R12 I2 R12^n (a,b) = R21 R12 R21^n (b,a)",
            lhs: Side::new(&[R12, I2], &[R12], AB),
            rhs: Side::new(&[R21, R12], &[R21], BA),
            min_n: 0,
        },
        Identity {
            text: "R21^n (b,a) = R12 R21 R12 I1 R12^n (a,b)",
            lhs: Side::new(&[], &[R21], BA),
            rhs: Side::new(&[R12, R21, R12, I1], &[R12], AB),
            min_n: 0,
        },
        Identity {
            text: "R12 R21 (I2 R12 I2)^n (a,b) = R21 I1 (I1 R21 I1)^n (b,a)",
            lhs: Side::new(&[R12, R21], &c12, AB),
            rhs: Side::new(&[R21, I1], &c21, BA),
            min_n: 0,
        },
        Identity {
            text: "R21 R12 R21 I1 (I1 R21 I1)^n (b,a) = (I2 R12 I2)^n (a,b)",
            lhs: Side::new(&[R21, R12, R21, I1], &c21, BA),
            rhs: Side::new(&[], &c12, AB),
            min_n: 0,
        },
        Identity {
            text: "R12 I2 (I2 R12 I2)^n (a,b) = R21 R12 (I1 R21 I1)^n (b,a)",
            lhs: Side::new(&[R12, I2], &c12, AB),
            rhs: Side::new(&[R21, R12], &c21, BA),
            min_n: 0,
        },
        Identity {
            text: "(I1 R21 I1)^n (b,a) = I1 R12 R21 (I2 R12 I2)^(n-1) (a,b)",
            lhs: Side::new(&[], &c21, BA),
            rhs: last_rhs,
            min_n: 1,
        },
    ]
}

/// The fourth identity with the missing leading `I1` restored. The
/// displayed form fails already at `n = 0`, where it reads
/// `(b,a) = (b⁻¹, a)`.
pub fn corrected_fourth() -> Identity {
    Identity {
        text: "R21^n (b,a) = I1 R12 R21 R12 R12^n (a,b)",
        lhs: Side::new(&[], &[R21], Start::BA),
        rhs: Side::new(&[I1, R12, R21, R12], &[R12], Start::AB),
        min_n: 0,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub n: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub checked: Vec<usize>,
    pub failures: Vec<usize>,
    pub first_counterexample: Option<Counterexample>,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates both sides for every `n` in `min_n..=n_max`.
pub fn check_identity(id: &Identity, n_max: usize) -> Result<IdentityCheck> {
    let mut check = IdentityCheck {
        identity: id.text.to_string(),
        checked: Vec::new(),
        failures: Vec::new(),
        first_counterexample: None,
    };
    for n in id.min_n..=n_max {
        let (l, r) = (id.lhs.eval(n)?, id.rhs.eval(n)?);
        check.checked.push(n);
        if l != r {
            check.failures.push(n);
            check.first_counterexample.get_or_insert(Counterexample {
                n,
                lhs: l.to_string(),
                rhs: r.to_string(),
            });
        }
    }
    Ok(check)
}

/// The moves of the degree-8 subgraph: `R12`, `R21`, `I1`, `I2` and the
/// reverses of the two `R` moves, so that the ball is taken with darts
/// traversed in either direction.
pub fn subgraph_moves() -> Vec<NielsenMove> {
    vec![R12, R12.inverse(), R21, R21.inverse(), I1, I2]
}

/// Breadth-first ball of the given radius in the subgraph, in discovery
/// order, with depths.
pub fn subgraph_ball(root: &Tuple, radius: u32) -> Result<Vec<(Tuple, u32)>> {
    let g = group();
    let moves = subgraph_moves();
    let mut seen: HashSet<Tuple> = HashSet::from([root.clone()]);
    let mut out = vec![(root.clone(), 0)];
    let mut head = 0;
    while head < out.len() {
        let (t, d) = out[head].clone();
        head += 1;
        if d == radius {
            continue;
        }
        for &m in &moves {
            let s = apply_move(&g, &t, m)?;
            if seen.insert(s.clone()) {
                out.push((s, d + 1));
            }
        }
    }
    Ok(out)
}

pub const FAMILIES: [&str; 6] = [
    "(ab^n, b^±1)",
    "(b^±1, ab^n)",
    "R21 R12^n (a,b)",
    "R12 R21^n (b,a)",
    "R21 (I2 R12 I2)^n (a,b)",
    "R12 (I1 R21 I1)^n (b,a)",
];

/// Members of each family for `|n| ≤ bound` (or `0 ≤ n ≤ bound` for the
/// word families), keyed by family name.
pub fn family_members(bound: i64) -> Result<Vec<(&'static str, HashSet<Tuple>)>> {
    let g = group();
    let mut out = Vec::new();
    let ab_n = |n: i64| -> Result<Element> {
        let bn = g.pow(&b(), n.unsigned_abs())?;
        let bn = if n < 0 { g.inv(&bn)? } else { bn };
        g.mul(&a(), &bn)
    };
    let b_inv = g.inv(&b())?;
    let mut first = HashSet::new();
    let mut second = HashSet::new();
    for n in -bound..=bound {
        let x = ab_n(n)?;
        for y in [b(), b_inv.clone()] {
            first.insert(Tuple::new(vec![x.clone(), y.clone()]));
            second.insert(Tuple::new(vec![y, x.clone()]));
        }
    }
    out.push((FAMILIES[0], first));
    out.push((FAMILIES[1], second));
    let words = [
        Side::new(&[R21], &[R12], Start::AB),
        Side::new(&[R12], &[R21], Start::BA),
        Side::new(&[R21], &[I2, R12, I2], Start::AB),
        Side::new(&[R12], &[I1, R21, I1], Start::BA),
    ];
    for (name, side) in FAMILIES[2..].iter().zip(words) {
        let members = (0..=bound as usize).map(|n| side.eval(n)).collect::<Result<HashSet<_>>>()?;
        out.push((*name, members));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub radius: u32,
    pub vertices: usize,
    pub by_family: BTreeMap<String, usize>,
    pub unclassified: Vec<String>,
}

impl Classification {
    pub fn complete(&self) -> bool {
        self.unclassified.is_empty()
    }
}

/// Assigns every vertex of `B_radius((a,b))` to the first family that
/// contains it.
pub fn classify_ball(radius: u32) -> Result<Classification> {
    let ball = subgraph_ball(&Start::AB.tuple(), radius)?;
    let g = group();
    // Each move changes a translation part by at most the other entry's,
    // so this bound comfortably covers the ball.
    let reach = ball
        .iter()
        .flat_map(|(t, _)| t.entries.iter().map(|e| g.element_size(e) as i64))
        .max()
        .unwrap_or(0);
    let families = family_members(2 * reach + 4)?;
    let mut by_family: BTreeMap<String, usize> = FAMILIES.iter().map(|f| (f.to_string(), 0)).collect();
    let mut unclassified = Vec::new();
    for (t, _) in &ball {
        match families.iter().find(|(_, set)| set.contains(t)) {
            Some((name, _)) => *by_family.get_mut(*name).unwrap() += 1,
            None => unclassified.push(t.to_string()),
        }
    }
    Ok(Classification {
        radius,
        vertices: ball.len(),
        by_family,
        unclassified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(t: i64, flip: bool) -> Element {
        Element::Dihedral { t, flip }
    }

    #[test]
    fn presentation_relations() {
        let g = group();
        assert_eq!(g.mul(&a(), &a()).unwrap(), g.identity());
        let aba = g.mul(&g.mul(&a(), &b()).unwrap(), &a()).unwrap();
        assert_eq!(aba, g.inv(&b()).unwrap());
    }

    #[test]
    fn operator_order() {
        // R12 I2 (a,b): first b -> b^-1, then a -> a b^-1 = (1,1).
        let side = Side::new(&[R12, I2], &[], Start::AB);
        assert_eq!(side.eval(0).unwrap(), Tuple::new(vec![d(1, true), d(-1, false)]));
    }

    #[test]
    fn identities_as_displayed() {
        let results: Vec<bool> = identities().iter().map(|id| check_identity(id, 20).unwrap().holds()).collect();
        assert_eq!(results, [true, true, true, false, true, true, true, true]);
        let fourth = check_identity(&identities()[3], 20).unwrap();
        assert_eq!(fourth.failures.len(), 21);
        let ce = fourth.first_counterexample.unwrap();
        assert_eq!((ce.n, ce.lhs.as_str(), ce.rhs.as_str()), (0, "((1,0), (0,1))", "((-1,0), (0,1))"));
    }

    #[test]
    fn corrected_fourth_holds() {
        assert!(check_identity(&corrected_fourth(), 40).unwrap().holds());
    }

    #[test]
    fn last_identity_starts_at_one() {
        let c = check_identity(&identities()[7], 5).unwrap();
        assert_eq!(c.checked, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn ball_is_closed_under_moves() {
        let ball = subgraph_ball(&Start::AB.tuple(), 6).unwrap();
        let set: HashSet<Tuple> = ball.iter().map(|(t, _)| t.clone()).collect();
        let g = group();
        for (t, depth) in &ball {
            if *depth < 6 {
                for m in subgraph_moves() {
                    assert!(set.contains(&apply_move(&g, t, m).unwrap()));
                }
            }
        }
    }

    #[test]
    fn ball_grows_linearly() {
        let sizes: Vec<usize> = (0..=20).map(|r| subgraph_ball(&Start::AB.tuple(), r).unwrap().len()).collect();
        for w in sizes.windows(2).skip(4) {
            assert!(w[1] - w[0] <= 16, "{sizes:?}");
        }
        assert_eq!(sizes[20], 230);
    }

    #[test]
    fn classification_is_complete() {
        let c = classify_ball(20).unwrap();
        assert!(c.complete(), "{:?}", c.unclassified);
        assert_eq!(c.by_family.values().sum::<usize>(), 230);
    }
}
