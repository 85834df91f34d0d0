use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{FiniteTable, Group};
use crate::nielsen::Tuple;

/// Nielsen classes of all generating `n`-tuples of a finite group.
///
/// Tuples are coded in base `|G|` with the first entry most significant.
#[derive(Debug, Clone)]
pub struct Components {
    pub n: usize,
    pub order: usize,
    /// Codes of all generating tuples, increasing.
    pub tuples: Vec<u64>,
    /// Component id of each entry of `tuples`.
    pub ids: Vec<u32>,
    /// Component sizes; components are numbered by their smallest member.
    pub sizes: Vec<usize>,
    pub representatives: Vec<u64>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn decode(&self, group: &Group, code: u64) -> Result<Tuple> {
        let table = group.finite_table()?;
        Ok(Tuple::new(
            digits(code, self.order, self.n)
                .into_iter()
                .map(|d| table.elements()[d as usize].clone())
                .collect(),
        ))
    }

    pub fn encode(&self, group: &Group, t: &Tuple) -> Result<u64> {
        let table = group.finite_table()?;
        Ok(t
            .entries
            .iter()
            .fold(0u64, |acc, g| acc * self.order as u64 + table.index_of(g) as u64))
    }

    pub fn component_of(&self, code: u64) -> Option<u32> {
        self.tuples.binary_search(&code).ok().map(|k| self.ids[k])
    }
}

fn digits(mut code: u64, order: usize, n: usize) -> Vec<u32> {
    let mut out = vec![0u32; n];
    for slot in out.iter_mut().rev() {
        *slot = (code % order as u64) as u32;
        code /= order as u64;
    }
    out
}

fn undigits(ds: &[u32], order: usize) -> u64 {
    ds.iter().fold(0u64, |acc, &d| acc * order as u64 + d as u64)
}

struct Dsu {
    parent: Vec<u32>,
}

impl Dsu {
    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins so representatives are canonical
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Images of a digit tuple under every `R+`, `L+` and `I` move. The `-`
/// moves are the reverses of the `+` ones and add no new connections.
fn plus_neighbours(table: &FiniteTable, ds: &[u32], out: &mut Vec<u64>) {
    let n = ds.len();
    let order = table.order();
    let mut buf = ds.to_vec();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            buf[i] = table.mul(ds[i], ds[j]);
            out.push(undigits(&buf, order));
            buf[i] = table.mul(ds[j], ds[i]);
            out.push(undigits(&buf, order));
            buf[i] = ds[i];
        }
    }
    for j in 0..n {
        buf[j] = table.inv(ds[j]);
        out.push(undigits(&buf, order));
        buf[j] = ds[j];
    }
}

/// Exhaustively partitions the generating `n`-tuples of a finite group into
/// Nielsen classes with a union-find pass over all moves.
pub fn components(group: &Group, n: usize, cap: usize) -> Result<Components> {
    if n == 0 {
        return Err(Error::usage("n must be at least 1"));
    }
    let table = group.finite_table()?;
    let order = table.order();
    let total = (order as u64)
        .checked_pow(n as u32)
        .filter(|&t| t <= cap as u64 && t < u32::MAX as u64)
        .ok_or_else(|| Error::Resource {
            what: format!("|G|^n = {order}^{n} tuples"),
            cap: cap as u64,
        })?;

    let generating: Vec<bool> = (0..total)
        .into_par_iter()
        .map(|code| {
            let ds = digits(code, order, n);
            table.closure_size(&ds) == order
        })
        .collect();

    let mut dsu = Dsu {
        parent: (0..total as u32).collect(),
    };
    const CHUNK: u64 = 1 << 14;
    let chunks: Vec<u64> = (0..total).step_by(CHUNK as usize).collect();
    for start in chunks {
        let end = (start + CHUNK).min(total);
        let edges: Vec<(u32, Vec<u64>)> = (start..end)
            .into_par_iter()
            .filter(|&c| generating[c as usize])
            .map(|c| {
                let mut out = Vec::new();
                plus_neighbours(table, &digits(c, order, n), &mut out);
                (c as u32, out)
            })
            .collect();
        for (c, nbrs) in edges {
            for t in nbrs {
                dsu.union(c, t as u32);
            }
        }
    }

    let mut tuples = Vec::new();
    let mut ids = Vec::new();
    let mut root_id: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
    let mut sizes = Vec::new();
    let mut representatives = Vec::new();
    for code in 0..total {
        if !generating[code as usize] {
            continue;
        }
        let r = dsu.find(code as u32);
        let id = *root_id.entry(r).or_insert_with(|| {
            sizes.push(0);
            representatives.push(code);
            (sizes.len() - 1) as u32
        });
        sizes[id as usize] += 1;
        tuples.push(code);
        ids.push(id);
    }
    Ok(Components {
        n,
        order,
        tuples,
        ids,
        sizes,
        representatives,
    })
}
