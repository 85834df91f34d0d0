use super::{Element, Group, GroupSpec};
use crate::error::{Error, Result};

/// Dense multiplication table of a finite group over indices `0..order`.
///
/// Element `i` of the table corresponds to `elements()[i]`; the ordering is
/// the natural index order for Cayley tables and mixed-radix order of the
/// coordinates otherwise.
#[derive(Debug, Clone)]
pub struct FiniteTable {
    order: usize,
    identity: u32,
    mul: Vec<u32>,
    inv: Vec<u32>,
    elements: Vec<Element>,
    spec: GroupSpec,
}

impl FiniteTable {
    pub(super) fn build(group: &Group) -> Result<Self> {
        let elements = enumerate(group.spec());
        let order = elements.len();
        let spec = group.spec().clone();
        let mut table = FiniteTable {
            order,
            identity: 0,
            mul: vec![0; order * order],
            inv: vec![0; order],
            elements,
            spec,
        };
        table.identity = table.index_of(&group.identity()) as u32;
        for a in 0..order {
            for b in 0..order {
                let p = group.mul(&table.elements[a], &table.elements[b])?;
                table.mul[a * order + b] = table.index_of(&p) as u32;
            }
            let i = group.inv(&table.elements[a])?;
            table.inv[a] = table.index_of(&i) as u32;
        }
        Ok(table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// Index of an element that belongs to the group.
    pub fn index_of(&self, g: &Element) -> usize {
        match (&self.spec, g) {
            (GroupSpec::FiniteCayley { .. }, Element::Index(i)) => *i as usize,
            (GroupSpec::FiniteAbelianExp { m, .. }, Element::Residues(v)) => {
                v.iter().fold(0usize, |acc, &x| acc * *m as usize + x as usize)
            }
            (GroupSpec::BurnsideB23, Element::Burnside(c)) => c.iter().fold(0usize, |acc, &x| acc * 3 + x as usize),
            _ => panic!("element {g:?} is not in this finite group"),
        }
    }

    /// Size of the subgroup generated by `gens`.
    pub fn closure_size(&self, gens: &[u32]) -> usize {
        self.closure(gens).iter().filter(|&&b| b).count()
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Vec<bool> {
        let mut seen = vec![false; self.order];
        let mut stack = vec![self.identity];
        seen[self.identity as usize] = true;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Minimum number of elements needed to generate the group.
    pub fn rank(&self) -> usize {
        minimum_generating_set_by(self.order, self.identity, |a, b| self.mul(a, b)).len()
    }
}

fn enumerate(spec: &GroupSpec) -> Vec<Element> {
    match spec {
        GroupSpec::FiniteCayley { table, .. } => (0..table.len() as u32).map(Element::Index).collect(),
        GroupSpec::FiniteAbelianExp { m, d } => {
            let order = (*m as usize).pow(*d as u32);
            (0..order)
                .map(|mut k| {
                    let mut v = vec![0u32; *d];
                    for slot in v.iter_mut().rev() {
                        *slot = (k % *m as usize) as u32;
                        k /= *m as usize;
                    }
                    Element::Residues(v)
                })
                .collect()
        }
        GroupSpec::BurnsideB23 => (0..27u8).map(|k| Element::Burnside([k / 9, (k / 3) % 3, k % 3])).collect(),
        _ => unreachable!("only finite kinds are enumerated"),
    }
}

pub(super) fn validate_cayley(table: &[Vec<u32>], identity: u32) -> Result<()> {
    let n = table.len();
    let bad = |why: String| Err(Error::usage(format!("invalid Cayley table: {why}")));
    if n == 0 {
        return bad("empty table".into());
    }
    if identity as usize >= n {
        return bad(format!("identity {identity} out of range"));
    }
    for (a, row) in table.iter().enumerate() {
        if row.len() != n {
            return bad(format!("row {a} has length {} (expected {n})", row.len()));
        }
        let mut seen = vec![false; n];
        for &x in row {
            if x as usize >= n || std::mem::replace(&mut seen[x as usize], true) {
                return bad(format!("row {a} is not a permutation"));
            }
        }
    }
    for b in 0..n {
        let mut seen = vec![false; n];
        for row in table {
            if std::mem::replace(&mut seen[row[b] as usize], true) {
                return bad(format!("column {b} is not a permutation"));
            }
        }
    }
    let e = identity as usize;
    for (a, row) in table.iter().enumerate() {
        if table[e][a] as usize != a || row[e] as usize != a {
            return bad(format!("{identity} is not a two-sided identity at {a}"));
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b] as usize;
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c] as usize] {
                    return bad(format!("not associative at ({a},{b},{c})"));
                }
            }
        }
    }
    // Latin rows plus identity give right inverses; associativity makes them two-sided
    Ok(())
}

pub(super) fn minimum_generating_set(table: &[Vec<u32>], identity: u32) -> Vec<u32> {
    minimum_generating_set_by(table.len(), identity, |a, b| table[a as usize][b as usize])
}

/// Lexicographically first generating set of minimum size.
fn minimum_generating_set_by(order: usize, identity: u32, mul: impl Fn(u32, u32) -> u32) -> Vec<u32> {
    let generates = |gens: &[u32]| {
        let mut seen = vec![false; order];
        let mut stack = vec![identity];
        seen[identity as usize] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == order
    };
    if order == 1 {
        return vec![identity];
    }
    let candidates: Vec<u32> = (0..order as u32).filter(|&x| x != identity).collect();
    for size in 1..=candidates.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let gens: Vec<u32> = idx.iter().map(|&i| candidates[i]).collect();
            if generates(&gens) {
                return gens;
            }
            // next combination
            let mut k = size;
            while k > 0 && idx[k - 1] == candidates.len() - size + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            idx[k - 1] += 1;
            for j in k..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    unreachable!("the whole group generates itself")
}
