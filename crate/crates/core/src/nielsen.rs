//! Elementary Nielsen moves on tuples of group elements.
//!
//! Indices are 0-based in the API and 1-based in the text syntax
//! (`"R+:1,2"`, `"L-:2,1"`, `"I:1"`).

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, Group};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// `R(i,j,±)`: `g_i <- g_i g_j^±1`; `L(i,j,±)`: `g_i <- g_j^±1 g_i`;
/// `I(j)`: `g_j <- g_j^-1`. Indices are 0-based and `i != j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NielsenMove {
    R { i: usize, j: usize, sign: Sign },
    L { i: usize, j: usize, sign: Sign },
    I { j: usize },
}

impl NielsenMove {
    pub fn r(i: usize, j: usize, sign: Sign) -> Result<Self> {
        if i == j {
            return Err(Error::usage(format!("R move needs distinct indices, got {i},{j}")));
        }
        Ok(NielsenMove::R { i, j, sign })
    }

    pub fn l(i: usize, j: usize, sign: Sign) -> Result<Self> {
        if i == j {
            return Err(Error::usage(format!("L move needs distinct indices, got {i},{j}")));
        }
        Ok(NielsenMove::L { i, j, sign })
    }

    pub fn inv(j: usize) -> Self {
        NielsenMove::I { j }
    }

    pub fn inverse(self) -> Self {
        match self {
            NielsenMove::R { i, j, sign } => NielsenMove::R { i, j, sign: sign.flip() },
            NielsenMove::L { i, j, sign } => NielsenMove::L { i, j, sign: sign.flip() },
            NielsenMove::I { j } => NielsenMove::I { j },
        }
    }

    /// Largest index used, plus one.
    pub fn arity(self) -> usize {
        match self {
            NielsenMove::R { i, j, .. } | NielsenMove::L { i, j, .. } => i.max(j) + 1,
            NielsenMove::I { j } => j + 1,
        }
    }
}

impl fmt::Display for NielsenMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NielsenMove::R { i, j, sign } => write!(f, "R{}:{},{}", sign.symbol(), i + 1, j + 1),
            NielsenMove::L { i, j, sign } => write!(f, "L{}:{},{}", sign.symbol(), i + 1, j + 1),
            NielsenMove::I { j } => write!(f, "I:{}", j + 1),
        }
    }
}

impl FromStr for NielsenMove {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::usage(format!("bad move {s:?}; expected R+:i,j, R-:i,j, L+:i,j, L-:i,j or I:j"));
        let (head, args) = s.trim().split_once(':').ok_or_else(bad)?;
        let idx = |t: &str| -> Result<usize> {
            let k: usize = t.trim().parse().map_err(|_| bad())?;
            k.checked_sub(1).ok_or_else(bad)
        };
        if head == "I" {
            return Ok(NielsenMove::I { j: idx(args)? });
        }
        let (a, b) = args.split_once(',').ok_or_else(bad)?;
        let (i, j) = (idx(a)?, idx(b)?);
        match head {
            "R+" => NielsenMove::r(i, j, Sign::Plus),
            "R-" => NielsenMove::r(i, j, Sign::Minus),
            "L+" => NielsenMove::l(i, j, Sign::Plus),
            "L-" => NielsenMove::l(i, j, Sign::Minus),
            _ => Err(bad()),
        }
    }
}

/// All `4n(n-1) + n` moves for tuples of length `n`, in the frozen order:
/// R before L before I, index pairs lexicographic, `+` before `-`.
pub fn move_set(n: usize) -> Vec<NielsenMove> {
    let mut out = Vec::with_capacity(4 * n * n.saturating_sub(1) + n);
    for left in [false, true] {
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for sign in [Sign::Plus, Sign::Minus] {
                    out.push(if left {
                        NielsenMove::L { i, j, sign }
                    } else {
                        NielsenMove::R { i, j, sign }
                    });
                }
            }
        }
    }
    out.extend((0..n).map(|j| NielsenMove::I { j }));
    out
}

/// Position of `mv` inside [`move_set`]`(n)`.
pub fn move_index(n: usize, mv: NielsenMove) -> usize {
    let pair = |i: usize, j: usize| i * (n - 1) + if j > i { j - 1 } else { j };
    let half = 2 * n * (n - 1);
    match mv {
        NielsenMove::R { i, j, sign } => 2 * pair(i, j) + (sign == Sign::Minus) as usize,
        NielsenMove::L { i, j, sign } => half + 2 * pair(i, j) + (sign == Sign::Minus) as usize,
        NielsenMove::I { j } => 2 * half + j,
    }
}

/// An ordered tuple of group elements: the vertex type of a Nielsen graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tuple {
    pub entries: Vec<Element>,
}

impl Tuple {
    pub fn new(entries: Vec<Element>) -> Self {
        Tuple { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Canonical byte key: concatenated element encodings.
    pub fn key(&self, group: &Group) -> Vec<u8> {
        let mut out = Vec::with_capacity(16 * self.entries.len());
        for g in &self.entries {
            group.encode(g, &mut out);
        }
        out
    }

    pub fn from_key(group: &Group, mut bytes: &[u8]) -> Result<Self> {
        let mut entries = Vec::new();
        while !bytes.is_empty() {
            let (g, used) = group.decode(bytes)?;
            entries.push(g);
            bytes = &bytes[used..];
        }
        Ok(Tuple { entries })
    }

    pub fn parse(group: &Group, literal: &str) -> Result<Self> {
        Ok(Tuple::new(group.parse_tuple(literal)?))
    }
}

impl From<Vec<Element>> for Tuple {
    fn from(entries: Vec<Element>) -> Self {
        Tuple { entries }
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Convenience constructor for integer tuples.
pub fn int_tuple(xs: &[i64]) -> Tuple {
    Tuple::new(xs.iter().map(|&x| Element::Int(x)).collect())
}

pub fn apply_move(group: &Group, t: &Tuple, mv: NielsenMove) -> Result<Tuple> {
    let n = t.len();
    if mv.arity() > n {
        return Err(Error::usage(format!("move {mv} out of range for tuple length {n}")));
    }
    let mut out = t.clone();
    match mv {
        NielsenMove::R { i, j, sign } => {
            let gj = match sign {
                Sign::Plus => t.entries[j].clone(),
                Sign::Minus => group.inv(&t.entries[j])?,
            };
            out.entries[i] = group.mul(&t.entries[i], &gj)?;
        }
        NielsenMove::L { i, j, sign } => {
            let gj = match sign {
                Sign::Plus => t.entries[j].clone(),
                Sign::Minus => group.inv(&t.entries[j])?,
            };
            out.entries[i] = group.mul(&gj, &t.entries[i])?;
        }
        NielsenMove::I { j } => {
            out.entries[j] = group.inv(&t.entries[j])?;
        }
    }
    Ok(out)
}

/// A finite sequence of moves, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MoveWord {
    pub moves: Vec<NielsenMove>,
}

impl MoveWord {
    pub fn new(moves: Vec<NielsenMove>) -> Self {
        MoveWord { moves }
    }

    pub fn empty() -> Self {
        MoveWord::default()
    }

    /// Builds a word from operator notation, where `A B C (t)` means
    /// `A(B(C(t)))`: the rightmost factor is applied first.
    pub fn from_operators(factors: &[NielsenMove]) -> Self {
        MoveWord {
            moves: factors.iter().rev().copied().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn push(&mut self, mv: NielsenMove) {
        self.moves.push(mv);
    }

    /// The word undoing this one.
    pub fn inverse(&self) -> MoveWord {
        MoveWord {
            moves: self.moves.iter().rev().map(|m| m.inverse()).collect(),
        }
    }

    pub fn then(mut self, other: &MoveWord) -> MoveWord {
        self.moves.extend_from_slice(&other.moves);
        self
    }

    /// `self` repeated `k` times.
    pub fn repeat(&self, k: usize) -> MoveWord {
        MoveWord {
            moves: self.moves.repeat(k),
        }
    }
}

impl fmt::Display for MoveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, m) in self.moves.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for MoveWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(MoveWord::new)
    }
}

pub fn eval_word(group: &Group, t: &Tuple, w: &MoveWord) -> Result<Tuple> {
    if let Some(m) = w.moves.iter().find(|m| m.arity() > t.len()) {
        return Err(Error::usage(format!(
            "word uses move {m}, incompatible with tuple length {}",
            t.len()
        )));
    }
    let mut cur = t.clone();
    for &m in &w.moves {
        cur = apply_move(group, &cur, m)?;
    }
    Ok(cur)
}

/// The designated generators padded with identities to length `n`.
pub fn designated_tuple(group: &Group, n: usize) -> Result<Tuple> {
    let gens = group.generators();
    if n < gens.len() {
        return Err(Error::usage(format!(
            "n = {n} is below the {} designated generators of {}",
            gens.len(),
            group.spec().to_json()
        )));
    }
    let mut entries = gens.to_vec();
    entries.resize(n, group.identity());
    Ok(Tuple::new(entries))
}

/// Random walk of `steps` uniformly chosen moves starting at `start`.
pub fn random_walk<R: Rng + ?Sized>(group: &Group, start: &Tuple, steps: usize, rng: &mut R) -> Result<Tuple> {
    let moves = move_set(start.len());
    let mut cur = start.clone();
    for _ in 0..steps {
        let m = moves[rng.gen_range(0..moves.len())];
        cur = apply_move(group, &cur, m)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn ints() -> Group {
        Group::new(GroupSpec::Integers).unwrap()
    }

    #[test]
    fn move_set_sizes_and_order() {
        assert_eq!(move_set(1), vec![NielsenMove::I { j: 0 }]);
        assert_eq!(move_set(2).len(), 10);
        assert_eq!(move_set(3).len(), 27);
        let labels: Vec<String> = move_set(2).iter().map(|m| m.to_string()).collect();
        assert_eq!(
            labels,
            ["R+:1,2", "R-:1,2", "R+:2,1", "R-:2,1", "L+:1,2", "L-:1,2", "L+:2,1", "L-:2,1", "I:1", "I:2"]
        );
    }

    #[test]
    fn move_index_matches_move_set() {
        for n in 1..=5 {
            for (k, m) in move_set(n).into_iter().enumerate() {
                assert_eq!(move_index(n, m), k);
            }
        }
    }

    #[test]
    fn text_syntax_round_trips() {
        for m in move_set(4) {
            assert_eq!(m.to_string().parse::<NielsenMove>().unwrap(), m);
        }
        assert!("R+:1,1".parse::<NielsenMove>().is_err());
        assert!("I:0".parse::<NielsenMove>().is_err());
        assert!("Q:1".parse::<NielsenMove>().is_err());
    }

    #[test]
    fn apply_examples() {
        let z = ints();
        let t = int_tuple(&[2, 3]);
        let m = NielsenMove::r(0, 1, Sign::Plus).unwrap();
        assert_eq!(apply_move(&z, &t, m).unwrap(), int_tuple(&[5, 3]));
        assert_eq!(apply_move(&z, &int_tuple(&[1]), NielsenMove::inv(0)).unwrap(), int_tuple(&[-1]));
    }

    #[test]
    fn dihedral_left_minus() {
        let d = Group::new(GroupSpec::InfiniteDihedral).unwrap();
        let t = Tuple::parse(&d, "[[0,1],[1,0]]").unwrap();
        let m: NielsenMove = "L-:1,2".parse().unwrap();
        assert_eq!(apply_move(&d, &t, m).unwrap(), Tuple::parse(&d, "[[-1,1],[1,0]]").unwrap());
    }

    #[test]
    fn out_of_range_is_usage_error() {
        let z = ints();
        let m = NielsenMove::r(0, 2, Sign::Plus).unwrap();
        assert!(matches!(apply_move(&z, &int_tuple(&[1, 1]), m), Err(Error::Usage(_))));
        let w: MoveWord = "I:3".parse().unwrap();
        assert!(matches!(eval_word(&z, &int_tuple(&[1, 1]), &w), Err(Error::Usage(_))));
    }

    #[test]
    fn inverse_table() {
        let r = NielsenMove::r(0, 1, Sign::Plus).unwrap();
        assert_eq!(r.inverse(), NielsenMove::r(0, 1, Sign::Minus).unwrap());
        assert_eq!(NielsenMove::inv(1).inverse(), NielsenMove::inv(1));
        let l = NielsenMove::l(0, 1, Sign::Minus).unwrap();
        assert_eq!(l.inverse(), NielsenMove::l(0, 1, Sign::Plus).unwrap());
    }

    #[test]
    fn words() {
        let z = ints();
        let t = int_tuple(&[2, 3]);
        assert_eq!(eval_word(&z, &t, &MoveWord::empty()).unwrap(), t);
        let w: MoveWord = "R+:1,2 R-:1,2".parse().unwrap();
        assert_eq!(eval_word(&z, &t, &w).unwrap(), t);
        let w: MoveWord = "R+:1,2 I:2 L+:2,1".parse().unwrap();
        let back = eval_word(&z, &eval_word(&z, &t, &w).unwrap(), &w.inverse()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn operator_notation_applies_rightmost_first() {
        let z = ints();
        let r12 = NielsenMove::r(0, 1, Sign::Plus).unwrap();
        let i1 = NielsenMove::inv(0);
        // I_1 R_12 (2,3) = I_1 (5,3) = (-5,3)
        let w = MoveWord::from_operators(&[i1, r12]);
        assert_eq!(eval_word(&z, &int_tuple(&[2, 3]), &w).unwrap(), int_tuple(&[-5, 3]));
    }

    #[test]
    fn key_round_trip() {
        let d = Group::new(GroupSpec::InfiniteDihedral).unwrap();
        let t = Tuple::parse(&d, "[[0,1],[-7,0],[3,1]]").unwrap();
        assert_eq!(Tuple::from_key(&d, &t.key(&d)).unwrap(), t);
    }
}
