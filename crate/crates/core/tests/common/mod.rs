#![allow(dead_code)]

use std::collections::HashMap;
use std::hash::Hash;

use nielsen::nielsen::{apply_move, move_set};
use nielsen::{Group, GroupSpec, Tuple};

/// Cayley table of the group generated by `gens` under `mul`, found by
/// closure. Index 0 is the identity.
pub fn table_from<T, F>(identity: T, gens: &[T], mul: F) -> Vec<Vec<u32>>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut elems = vec![identity];
    let mut index: HashMap<T, usize> = HashMap::from([(elems[0].clone(), 0)]);
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head].clone();
        head += 1;
        for g in gens {
            let y = mul(&x, g);
            if !index.contains_key(&y) {
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
    }
    elems
        .iter()
        .map(|x| elems.iter().map(|y| index[&mul(x, y)] as u32).collect())
        .collect()
}

pub fn cayley(table: Vec<Vec<u32>>) -> Group {
    Group::new(GroupSpec::FiniteCayley { table, identity: 0 }).unwrap()
}

/// Abelian group `Z/m_1 x ... x Z/m_k`.
pub fn abelian(ms: &[u32]) -> Group {
    let gens: Vec<Vec<u32>> = (0..ms.len())
        .map(|i| (0..ms.len()).map(|j| u32::from(i == j)).collect())
        .collect();
    let ms = ms.to_vec();
    cayley(table_from(vec![0; ms.len()], &gens, |a, b| {
        a.iter().zip(b).zip(&ms).map(|((x, y), m)| (x + y) % m).collect()
    }))
}

fn compose(p: &[u8], q: &[u8]) -> Vec<u8> {
    // (p q)(i) = p(q(i))
    q.iter().map(|&i| p[i as usize]).collect()
}

pub fn permutation_group(degree: u8, gens: &[Vec<u8>]) -> Group {
    cayley(table_from((0..degree).collect(), gens, |p, q| compose(p, q)))
}

/// Dihedral group of order `2k` acting on a `k`-gon.
pub fn dihedral(k: u8) -> Group {
    let rot: Vec<u8> = (0..k).map(|i| (i + 1) % k).collect();
    let refl: Vec<u8> = (0..k).map(|i| (k - i) % k).collect();
    permutation_group(k, &[rot, refl])
}

pub fn symmetric3() -> Group {
    permutation_group(3, &[vec![1, 2, 0], vec![1, 0, 2]])
}

pub fn alternating4() -> Group {
    permutation_group(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
}

/// Quaternion group as 2x2 matrices over the Gaussian integers.
pub fn quaternion() -> Group {
    type M = [(i8, i8); 4];
    let mul = |a: &M, b: &M| -> M {
        let cm = |x: (i8, i8), y: (i8, i8)| (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0);
        let add = |x: (i8, i8), y: (i8, i8)| (x.0 + y.0, x.1 + y.1);
        [
            add(cm(a[0], b[0]), cm(a[1], b[2])),
            add(cm(a[0], b[1]), cm(a[1], b[3])),
            add(cm(a[2], b[0]), cm(a[3], b[2])),
            add(cm(a[2], b[1]), cm(a[3], b[3])),
        ]
    };
    let one: M = [(1, 0), (0, 0), (0, 0), (1, 0)];
    let i: M = [(0, 1), (0, 0), (0, 0), (0, -1)];
    let j: M = [(0, 0), (1, 0), (-1, 0), (0, 0)];
    cayley(table_from(one, &[i, j], mul))
}

/// Number of closed walks of each length `0..=k` at `root`, by plain
/// enumeration of all move sequences.
pub fn brute_force_walks(group: &Group, root: &Tuple, k: usize) -> Vec<u128> {
    fn go(group: &Group, root: &Tuple, cur: &Tuple, depth: usize, k: usize, counts: &mut [u128]) {
        if cur == root {
            counts[depth] += 1;
        }
        if depth == k {
            return;
        }
        for m in move_set(cur.len()) {
            let next = apply_move(group, cur, m).unwrap();
            go(group, root, &next, depth + 1, k, counts);
        }
    }
    let mut counts = vec![0; k + 1];
    go(group, root, root, 0, k, &mut counts);
    counts
}
