//! Concrete groups with unique normal forms.
//!
//! Every supported group is described by a serializable [`GroupSpec`] and
//! validated into a [`Group`], which carries the group law, inversion and a
//! generation test for tuples. Elements are plain [`Element`] values; the
//! group checks that every operand actually belongs to it.

mod codec;
mod finite;
mod folding;
mod lattice;
mod sample;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub use finite::FiniteTable;
pub use folding::{fold_words, FoldedGraph};
pub use lattice::is_unit_lattice;

/// Largest order for which a full multiplication table is materialized.
pub const MAX_TABLE_ORDER: usize = 1 << 14;

/// Serializable description of a supported group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum GroupSpec {
    Integers,
    FreeAbelian { d: usize },
    InfiniteDihedral,
    /// Multiplication table over element indices `0..order`.
    FiniteCayley { table: Vec<Vec<u32>>, identity: u32 },
    Heisenberg,
    FiniteAbelianExp { m: u32, d: usize },
    BurnsideB23,
    FreeGroup { d: usize },
}

impl GroupSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        crate::json::from_str_strict(s, "group spec")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("group spec serializes")
    }
}

/// A group element in normal form.
///
/// Which variant is valid depends on the owning group:
///
/// | group              | variant                         |
/// |--------------------|---------------------------------|
/// | `Integers`         | `Int`                           |
/// | `FreeAbelian`      | `Vector` of length `d`          |
/// | `InfiniteDihedral` | `Dihedral` (translation, flip)  |
/// | `FiniteCayley`     | `Index`                         |
/// | `Heisenberg`       | `Heisenberg` Mal'cev triple     |
/// | `FiniteAbelianExp` | `Residues` of length `d`        |
/// | `BurnsideB23`      | `Burnside` triple over Z/3      |
/// | `FreeGroup`        | `Word`, freely reduced          |
///
/// Free group words store letters as `±k` for the `k`-th generator
/// (1-based); negative letters are inverses.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Int(i64),
    Vector(Vec<i64>),
    Dihedral { t: i64, flip: bool },
    Index(u32),
    Heisenberg([i64; 3]),
    Residues(Vec<u32>),
    Burnside([u8; 3]),
    Word(Vec<i8>),
}

#[derive(Debug)]
struct Inner {
    spec: GroupSpec,
    generators: Vec<Element>,
    table: OnceLock<std::result::Result<FiniteTable, String>>,
}

/// A validated group instance. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Group {
    inner: Arc<Inner>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.inner.spec == other.inner.spec
    }
}

impl Eq for Group {}

fn checked_add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow("group law"))
}

fn checked_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow("group law"))
}

fn checked_neg(a: i64) -> Result<i64> {
    a.checked_neg().ok_or(Error::Overflow("group inverse"))
}

impl Group {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        match &spec {
            GroupSpec::FreeAbelian { d } | GroupSpec::FreeGroup { d } if *d == 0 => {
                return Err(Error::usage("rank d must be at least 1"));
            }
            GroupSpec::FreeGroup { d } if *d > 26 => {
                return Err(Error::usage("free groups support at most 26 letters"));
            }
            GroupSpec::FiniteAbelianExp { m, d } => {
                if *m < 2 {
                    return Err(Error::usage("modulus m must be at least 2"));
                }
                if *d == 0 {
                    return Err(Error::usage("rank d must be at least 1"));
                }
            }
            GroupSpec::FiniteCayley { table, identity } => {
                finite::validate_cayley(table, *identity)?;
            }
            _ => {}
        }
        let generators = designated_generators(&spec);
        let group = Group {
            inner: Arc::new(Inner {
                spec,
                generators,
                table: OnceLock::new(),
            }),
        };
        if let GroupSpec::BurnsideB23 = group.spec() {
            group.check_burnside()?;
        }
        Ok(group)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Group::new(GroupSpec::from_json(s)?)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.inner.spec
    }

    /// The designated generators: the standard basis, `(a, b)` for the
    /// dihedral group, or a minimum-size generating set of a Cayley table.
    pub fn generators(&self) -> &[Element] {
        &self.inner.generators
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn order(&self) -> Option<u64> {
        match self.spec() {
            GroupSpec::FiniteCayley { table, .. } => Some(table.len() as u64),
            GroupSpec::FiniteAbelianExp { m, d } => (*m as u64).checked_pow(*d as u32),
            GroupSpec::BurnsideB23 => Some(27),
            _ => None,
        }
    }

    pub fn identity(&self) -> Element {
        match self.spec() {
            GroupSpec::Integers => Element::Int(0),
            GroupSpec::FreeAbelian { d } => Element::Vector(vec![0; *d]),
            GroupSpec::InfiniteDihedral => Element::Dihedral { t: 0, flip: false },
            GroupSpec::FiniteCayley { identity, .. } => Element::Index(*identity),
            GroupSpec::Heisenberg => Element::Heisenberg([0; 3]),
            GroupSpec::FiniteAbelianExp { d, .. } => Element::Residues(vec![0; *d]),
            GroupSpec::BurnsideB23 => Element::Burnside([0; 3]),
            GroupSpec::FreeGroup { .. } => Element::Word(Vec::new()),
        }
    }

    /// Checks that `g` is a well-formed element of this group.
    pub fn check(&self, g: &Element) -> Result<()> {
        let ok = match (self.spec(), g) {
            (GroupSpec::Integers, Element::Int(_)) => true,
            (GroupSpec::FreeAbelian { d }, Element::Vector(v)) => v.len() == *d,
            (GroupSpec::InfiniteDihedral, Element::Dihedral { .. }) => true,
            (GroupSpec::FiniteCayley { table, .. }, Element::Index(i)) => (*i as usize) < table.len(),
            (GroupSpec::Heisenberg, Element::Heisenberg(_)) => true,
            (GroupSpec::FiniteAbelianExp { m, d }, Element::Residues(v)) => {
                v.len() == *d && v.iter().all(|x| x < m)
            }
            (GroupSpec::BurnsideB23, Element::Burnside(c)) => c.iter().all(|x| *x < 3),
            (GroupSpec::FreeGroup { d }, Element::Word(w)) => {
                w.iter().all(|&l| l != 0 && (l.unsigned_abs() as usize) <= *d)
                    && w.windows(2).all(|p| p[0] != -p[1])
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "element {g:?} does not belong to group {}",
                self.spec().to_json()
            )))
        }
    }

    pub fn mul(&self, g: &Element, h: &Element) -> Result<Element> {
        use Element::*;
        let out = match (self.spec(), g, h) {
            (GroupSpec::Integers, Int(a), Int(b)) => Int(checked_add(*a, *b)?),
            (GroupSpec::FreeAbelian { d }, Vector(a), Vector(b)) if a.len() == *d && b.len() == *d => {
                Vector(
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| checked_add(*x, *y))
                        .collect::<Result<_>>()?,
                )
            }
            (GroupSpec::InfiniteDihedral, Dihedral { t: t1, flip: f1 }, Dihedral { t: t2, flip: f2 }) => {
                let t2 = if *f1 { checked_neg(*t2)? } else { *t2 };
                Dihedral {
                    t: checked_add(*t1, t2)?,
                    flip: f1 ^ f2,
                }
            }
            (GroupSpec::FiniteCayley { table, .. }, Index(a), Index(b))
                if (*a as usize) < table.len() && (*b as usize) < table.len() =>
            {
                Index(table[*a as usize][*b as usize])
            }
            (GroupSpec::Heisenberg, Heisenberg([x1, y1, z1]), Heisenberg([x2, y2, z2])) => Heisenberg([
                checked_add(*x1, *x2)?,
                checked_add(*y1, *y2)?,
                checked_add(checked_add(*z1, *z2)?, checked_mul(*x1, *y2)?)?,
            ]),
            (GroupSpec::FiniteAbelianExp { m, d }, Residues(a), Residues(b))
                if a.len() == *d && b.len() == *d =>
            {
                Residues(a.iter().zip(b).map(|(x, y)| (x + y) % m).collect())
            }
            (GroupSpec::BurnsideB23, Burnside([x1, y1, z1]), Burnside([x2, y2, z2])) => {
                Burnside([(x1 + x2) % 3, (y1 + y2) % 3, (z1 + z2 + x1 * y2) % 3])
            }
            (GroupSpec::FreeGroup { .. }, Word(a), Word(b)) => {
                let mut w = a.clone();
                for &l in b {
                    if w.last() == Some(&-l) {
                        w.pop();
                    } else {
                        w.push(l);
                    }
                }
                Word(w)
            }
            _ => {
                return Err(Error::usage(format!(
                    "operands {g:?} and {h:?} do not both belong to group {}",
                    self.spec().to_json()
                )))
            }
        };
        Ok(out)
    }

    pub fn inv(&self, g: &Element) -> Result<Element> {
        use Element::*;
        self.check(g)?;
        let out = match (self.spec(), g) {
            (GroupSpec::Integers, Int(a)) => Int(checked_neg(*a)?),
            (GroupSpec::FreeAbelian { .. }, Vector(a)) => {
                Vector(a.iter().map(|x| checked_neg(*x)).collect::<Result<_>>()?)
            }
            (GroupSpec::InfiniteDihedral, Dihedral { t, flip: true }) => Dihedral { t: *t, flip: true },
            (GroupSpec::InfiniteDihedral, Dihedral { t, flip: false }) => Dihedral {
                t: checked_neg(*t)?,
                flip: false,
            },
            (GroupSpec::FiniteCayley { table, identity }, Index(a)) => {
                let row = &table[*a as usize];
                let b = row
                    .iter()
                    .position(|x| x == identity)
                    .expect("validated table has inverses");
                Index(b as u32)
            }
            (GroupSpec::Heisenberg, Heisenberg([x, y, z])) => Heisenberg([
                checked_neg(*x)?,
                checked_neg(*y)?,
                checked_add(checked_mul(*x, *y)?, checked_neg(*z)?)?,
            ]),
            (GroupSpec::FiniteAbelianExp { m, .. }, Residues(a)) => {
                Residues(a.iter().map(|x| (m - x) % m).collect())
            }
            (GroupSpec::BurnsideB23, Burnside(_)) => self.mul(g, g)?,
            (GroupSpec::FreeGroup { .. }, Word(w)) => Word(w.iter().rev().map(|l| -l).collect()),
            _ => unreachable!("checked above"),
        };
        Ok(out)
    }

    /// `g^k` for `k >= 0` by repeated squaring.
    pub fn pow(&self, g: &Element, mut k: u64) -> Result<Element> {
        let mut base = g.clone();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Decides whether the entries generate the whole group.
    pub fn is_generating(&self, entries: &[Element]) -> Result<bool> {
        if entries.is_empty() {
            return Err(Error::usage("tuple length must be at least 1"));
        }
        for g in entries {
            self.check(g)?;
        }
        let generating = match self.spec() {
            GroupSpec::Integers => {
                let g = entries.iter().fold(0i64, |acc, e| match e {
                    Element::Int(x) => acc.gcd(x),
                    _ => unreachable!(),
                });
                g == 1
            }
            GroupSpec::FreeAbelian { d } => {
                let rows: Vec<Vec<i64>> = entries
                    .iter()
                    .map(|e| match e {
                        Element::Vector(v) => v.clone(),
                        _ => unreachable!(),
                    })
                    .collect();
                is_unit_lattice(&rows, *d)?
            }
            GroupSpec::InfiniteDihedral => dihedral_generates(entries),
            GroupSpec::Heisenberg => {
                let rows: Vec<Vec<i64>> = entries
                    .iter()
                    .map(|e| match e {
                        Element::Heisenberg([x, y, _]) => vec![*x, *y],
                        _ => unreachable!(),
                    })
                    .collect();
                is_unit_lattice(&rows, 2)?
            }
            GroupSpec::FiniteAbelianExp { m, d } => {
                let mut rows: Vec<Vec<i64>> = entries
                    .iter()
                    .map(|e| match e {
                        Element::Residues(v) => v.iter().map(|&x| x as i64).collect(),
                        _ => unreachable!(),
                    })
                    .collect();
                for i in 0..*d {
                    let mut r = vec![0; *d];
                    r[i] = *m as i64;
                    rows.push(r);
                }
                is_unit_lattice(&rows, *d)?
            }
            GroupSpec::FiniteCayley { .. } | GroupSpec::BurnsideB23 => {
                let table = self.finite_table()?;
                let gens: Vec<u32> = entries.iter().map(|e| table.index_of(e) as u32).collect();
                table.closure_size(&gens) == table.order()
            }
            GroupSpec::FreeGroup { d } => {
                let words: Vec<&[i8]> = entries
                    .iter()
                    .map(|e| match e {
                        Element::Word(w) => w.as_slice(),
                        _ => unreachable!(),
                    })
                    .collect();
                fold_words(&words).is_rose(*d)
            }
        };
        Ok(generating)
    }

    /// Multiplication table for finite groups of order at most
    /// [`MAX_TABLE_ORDER`].
    pub fn finite_table(&self) -> Result<&FiniteTable> {
        let built = self.inner.table.get_or_init(|| match self.order() {
            None => Err("group is infinite".to_string()),
            Some(n) if n as usize > MAX_TABLE_ORDER => {
                Err(format!("group order {n} exceeds table cap {MAX_TABLE_ORDER}"))
            }
            Some(_) => FiniteTable::build(self).map_err(|e| e.to_string()),
        });
        match built {
            Ok(t) => Ok(t),
            Err(msg) if self.is_finite() => Err(Error::Resource {
                what: msg.clone(),
                cap: MAX_TABLE_ORDER as u64,
            }),
            Err(msg) => Err(Error::usage(msg.clone())),
        }
    }

    /// Size of an element for windowing: max absolute coordinate, or word
    /// length for free groups. Finite groups report 0.
    pub fn element_size(&self, g: &Element) -> u64 {
        match g {
            Element::Int(x) => x.unsigned_abs(),
            Element::Vector(v) => v.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0),
            Element::Dihedral { t, .. } => t.unsigned_abs(),
            Element::Heisenberg(c) => c.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0),
            Element::Word(w) => w.len() as u64,
            Element::Index(_) | Element::Residues(_) | Element::Burnside(_) => 0,
        }
    }

    pub fn parse_element(&self, v: &Value) -> Result<Element> {
        let bad = || Error::usage(format!("cannot parse {v} as an element of {}", self.spec().to_json()));
        let ints = |v: &Value| -> Result<Vec<i64>> {
            v.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|x| x.as_i64().ok_or_else(bad))
                .collect()
        };
        let g = match self.spec() {
            GroupSpec::Integers => Element::Int(v.as_i64().ok_or_else(bad)?),
            GroupSpec::FreeAbelian { .. } => Element::Vector(ints(v)?),
            GroupSpec::InfiniteDihedral => {
                let c = ints(v)?;
                match c.as_slice() {
                    [t, 0] => Element::Dihedral { t: *t, flip: false },
                    [t, 1] => Element::Dihedral { t: *t, flip: true },
                    _ => return Err(bad()),
                }
            }
            GroupSpec::FiniteCayley { .. } => {
                Element::Index(u32::try_from(v.as_u64().ok_or_else(bad)?).map_err(|_| bad())?)
            }
            GroupSpec::Heisenberg => {
                let c = ints(v)?;
                Element::Heisenberg(c.try_into().map_err(|_| bad())?)
            }
            GroupSpec::FiniteAbelianExp { .. } => Element::Residues(
                ints(v)?
                    .into_iter()
                    .map(|x| u32::try_from(x).map_err(|_| bad()))
                    .collect::<Result<_>>()?,
            ),
            GroupSpec::BurnsideB23 => {
                let c = ints(v)?;
                if c.len() != 3 || c.iter().any(|x| !(0..3).contains(x)) {
                    return Err(bad());
                }
                Element::Burnside([c[0] as u8, c[1] as u8, c[2] as u8])
            }
            GroupSpec::FreeGroup { .. } => parse_word(v.as_str().ok_or_else(bad)?)?,
        };
        self.check(&g)?;
        Ok(g)
    }

    pub fn element_json(&self, g: &Element) -> Value {
        match g {
            Element::Int(x) => Value::from(*x),
            Element::Vector(v) => Value::from(v.clone()),
            Element::Dihedral { t, flip } => Value::from(vec![*t, *flip as i64]),
            Element::Index(i) => Value::from(*i),
            Element::Heisenberg(c) => Value::from(c.to_vec()),
            Element::Residues(v) => Value::from(v.clone()),
            Element::Burnside(c) => Value::from(c.iter().map(|&x| x as i64).collect::<Vec<_>>()),
            Element::Word(w) => Value::from(format_word(w)),
        }
    }

    /// Parses a JSON array literal such as `[1, 2]` or `["a", "aB"]`.
    pub fn parse_tuple(&self, s: &str) -> Result<Vec<Element>> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::usage(format!("bad tuple literal: {e}")))?;
        self.parse_tuple_value(&v)
    }

    pub fn parse_tuple_value(&self, v: &Value) -> Result<Vec<Element>> {
        v.as_array()
            .ok_or_else(|| Error::usage(format!("tuple literal {v} is not an array")))?
            .iter()
            .map(|e| self.parse_element(e))
            .collect()
    }

    pub fn tuple_json(&self, entries: &[Element]) -> Value {
        Value::from(entries.iter().map(|g| self.element_json(g)).collect::<Vec<_>>())
    }

    /// Serializes an element as `[u32 LE payload length][payload]`.
    pub fn encode(&self, g: &Element, out: &mut Vec<u8>) {
        codec::encode(g, out)
    }

    /// Inverse of [`Group::encode`]; returns the element and the number of
    /// bytes consumed.
    pub fn decode(&self, bytes: &[u8]) -> Result<(Element, usize)> {
        let (g, used) = codec::decode(self.spec(), bytes)?;
        self.check(&g)?;
        Ok((g, used))
    }

    fn check_burnside(&self) -> Result<()> {
        let table = self.finite_table()?;
        if table.order() != 27 {
            return Err(Error::Assertion("B(2,3) must have order 27".into()));
        }
        for g in table.elements() {
            let cube = self.pow(g, 3)?;
            if cube != self.identity() {
                return Err(Error::Assertion(format!("{g:?} has g^3 != 1")));
            }
        }
        if !self.is_generating(self.generators())? {
            return Err(Error::Assertion("B(2,3) designated pair does not generate".into()));
        }
        Ok(())
    }
}

fn designated_generators(spec: &GroupSpec) -> Vec<Element> {
    let basis = |d: usize, unit: &dyn Fn(usize) -> Element| (0..d).map(unit).collect::<Vec<_>>();
    match spec {
        GroupSpec::Integers => vec![Element::Int(1)],
        GroupSpec::FreeAbelian { d } => basis(*d, &|i| {
            let mut v = vec![0; *d];
            v[i] = 1;
            Element::Vector(v)
        }),
        // a = reflection, b = unit translation: aba = b^-1.
        GroupSpec::InfiniteDihedral => vec![
            Element::Dihedral { t: 0, flip: true },
            Element::Dihedral { t: 1, flip: false },
        ],
        GroupSpec::FiniteCayley { table, identity } => finite::minimum_generating_set(table, *identity)
            .into_iter()
            .map(Element::Index)
            .collect(),
        GroupSpec::Heisenberg => vec![Element::Heisenberg([1, 0, 0]), Element::Heisenberg([0, 1, 0])],
        GroupSpec::FiniteAbelianExp { d, .. } => basis(*d, &|i| {
            let mut v = vec![0; *d];
            v[i] = 1;
            Element::Residues(v)
        }),
        GroupSpec::BurnsideB23 => vec![Element::Burnside([1, 0, 0]), Element::Burnside([0, 1, 0])],
        GroupSpec::FreeGroup { d } => (1..=*d as i8).map(|l| Element::Word(vec![l])).collect(),
    }
}

/// D∞ generation: some entry is a reflection, and the translation parts of
/// rotations together with pairwise differences of reflection translations
/// have gcd 1.
fn dihedral_generates(entries: &[Element]) -> bool {
    let mut rotations = Vec::new();
    let mut reflections = Vec::new();
    for e in entries {
        match e {
            Element::Dihedral { t, flip: false } => rotations.push(*t),
            Element::Dihedral { t, flip: true } => reflections.push(*t),
            _ => unreachable!(),
        }
    }
    let Some(&first) = reflections.first() else {
        return false;
    };
    // differences against one reflection generate all pairwise differences
    let g = rotations
        .iter()
        .map(|&t| t as i128)
        .chain(reflections.iter().map(|&t| t as i128 - first as i128))
        .fold(0i128, |acc, x| acc.gcd(&x));
    g == 1
}

/// Parses a free-group word: lowercase letters are generators, uppercase
/// letters their inverses. `""` and `"e"` denote the identity.
pub fn parse_word(s: &str) -> Result<Element> {
    let mut w: Vec<i8> = Vec::with_capacity(s.len());
    if s == "e" {
        return Ok(Element::Word(w));
    }
    for c in s.chars() {
        let l = match c {
            'a'..='z' => (c as u8 - b'a' + 1) as i8,
            'A'..='Z' => -((c as u8 - b'A' + 1) as i8),
            _ => return Err(Error::usage(format!("bad letter {c:?} in word {s:?}"))),
        };
        if w.last() == Some(&-l) {
            w.pop();
        } else {
            w.push(l);
        }
    }
    Ok(Element::Word(w))
}

pub fn format_word(w: &[i8]) -> String {
    w.iter()
        .map(|&l| {
            if l > 0 {
                (b'a' + (l as u8 - 1)) as char
            } else {
                (b'A' + ((-l) as u8 - 1)) as char
            }
        })
        .collect()
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Int(x) => write!(f, "{x}"),
            Element::Index(i) => write!(f, "{i}"),
            Element::Dihedral { t, flip } => write!(f, "({t},{})", *flip as u8),
            Element::Vector(v) => write_list(f, v),
            Element::Heisenberg(c) => write_list(f, c),
            Element::Residues(v) => write_list(f, v),
            Element::Burnside(c) => write_list(f, c),
            Element::Word(w) if w.is_empty() => write!(f, "e"),
            Element::Word(w) => write!(f, "{}", format_word(w)),
        }
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}
