//! Stallings folding of a bouquet of words.
//!
//! Each word becomes a closed path at the base vertex; edges carrying the
//! same label out of (or into) a common vertex are identified until the
//! graph is folded. The subgroup spanned by the words is all of `F_d`
//! exactly when the folded graph is a single vertex carrying one loop per
//! letter.

use std::collections::BTreeMap;

/// Result of folding. Vertex 0 is the base point.
#[derive(Debug, Clone)]
pub struct FoldedGraph {
    /// `(source, letter, target)` with `letter > 0`, deduplicated.
    pub edges: Vec<(usize, i8, usize)>,
    pub vertex_count: usize,
}

impl FoldedGraph {
    pub fn is_rose(&self, d: usize) -> bool {
        self.vertex_count == 1
            && self.edges.len() == d
            && (1..=d as i8).all(|l| self.edges.iter().any(|&(_, e, _)| e == l))
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
}

pub fn fold_words(words: &[&[i8]]) -> FoldedGraph {
    // build the bouquet; every edge stored as (u, letter>0, v)
    let mut vertex_count = 1usize;
    let mut raw: Vec<(usize, i8, usize)> = Vec::new();
    for w in words {
        if w.is_empty() {
            continue;
        }
        let mut cur = 0usize;
        for (k, &l) in w.iter().enumerate() {
            let next = if k + 1 == w.len() {
                0
            } else {
                vertex_count += 1;
                vertex_count - 1
            };
            if l > 0 {
                raw.push((cur, l, next));
            } else {
                raw.push((next, -l, cur));
            }
            cur = next;
        }
    }

    let mut dsu = Dsu {
        parent: (0..vertex_count).collect(),
    };
    // adjacency per representative: signed label -> neighbour
    let mut adj: Vec<BTreeMap<i8, usize>> = vec![BTreeMap::new(); vertex_count];
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let attach = |adj: &mut Vec<BTreeMap<i8, usize>>, pending: &mut Vec<(usize, usize)>, u: usize, l: i8, v: usize| {
        match adj[u].get(&l) {
            Some(&w) if w != v => pending.push((w, v)),
            Some(_) => {}
            None => {
                adj[u].insert(l, v);
            }
        }
    };
    for &(u, l, v) in &raw {
        attach(&mut adj, &mut pending, u, l, v);
        attach(&mut adj, &mut pending, v, -l, u);
    }
    while let Some((a, b)) = pending.pop() {
        let (ra, rb) = (dsu.find(a), dsu.find(b));
        if ra == rb {
            continue;
        }
        // merge the smaller adjacency into the larger
        let (keep, gone) = if adj[ra].len() >= adj[rb].len() { (ra, rb) } else { (rb, ra) };
        dsu.parent[gone] = keep;
        let moved = std::mem::take(&mut adj[gone]);
        for (l, v) in moved {
            match adj[keep].get(&l) {
                Some(&w) => pending.push((w, v)),
                None => {
                    adj[keep].insert(l, v);
                }
            }
        }
    }

    // renumber representatives with the base point first
    let mut ids = BTreeMap::new();
    let base = dsu.find(0);
    ids.insert(base, 0usize);
    for x in 0..vertex_count {
        let r = dsu.find(x);
        let next = ids.len();
        ids.entry(r).or_insert(next);
    }
    let mut edges: Vec<(usize, i8, usize)> = Vec::new();
    for &(u, l, v) in &raw {
        let e = (ids[&dsu.find(u)], l, ids[&dsu.find(v)]);
        edges.push(e);
    }
    edges.sort_unstable();
    edges.dedup();
    // a vertex that carries no edges can only be the isolated base point
    let vertex_count = if raw.is_empty() { 1 } else { ids.len() };
    FoldedGraph { edges, vertex_count }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_is_rose() {
        let g = fold_words(&[&[1], &[2]]);
        assert!(g.is_rose(2));
    }

    #[test]
    fn conjugate_pair_folds_to_rose() {
        // <a, a b a^-1> = F_2
        let g = fold_words(&[&[1], &[1, 2, -1]]);
        assert!(g.is_rose(2));
    }

    #[test]
    fn proper_subgroup_is_not_rose() {
        // <a, b a b^-1> has a hair towards the conjugating letter
        let g = fold_words(&[&[1], &[2, 1, -2]]);
        assert!(!g.is_rose(2));
        assert_eq!(g.vertex_count, 2);
        // <a^2, b>
        assert!(!fold_words(&[&[1, 1], &[2]]).is_rose(2));
    }

    #[test]
    fn empty_words() {
        let g = fold_words(&[&[], &[]]);
        assert_eq!(g.vertex_count, 1);
        assert!(g.edges.is_empty());
        assert!(!g.is_rose(1));
    }
}
