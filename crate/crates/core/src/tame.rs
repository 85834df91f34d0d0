//! Automorphisms and tame automorphisms of finite relatively free groups.
//!
//! An automorphism is stored as a permutation of the element indices of
//! the group's table. For a generating `d`-tuple `u`, `φ_u` is the unique
//! automorphism sending the base tuple to `u` (when it exists). A Nielsen
//! move `s` satisfies `φ_{s(u)} = φ_u ∘ α_s` with `α_s = φ_{s(base)}`, so the
//! Nielsen class of the base is the tame subgroup `T` and moves act on it
//! by right multiplication.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::explorer::components;
use crate::group::{FiniteTable, Group};
use crate::nielsen::{designated_tuple, move_set, NielsenMove, Sign, Tuple};

pub type Perm = Vec<u32>;

fn compose(f: &[u32], g: &[u32]) -> Perm {
    g.iter().map(|&x| f[x as usize]).collect()
}

fn invert(f: &[u32]) -> Perm {
    let mut out = vec![0u32; f.len()];
    for (x, &y) in f.iter().enumerate() {
        out[y as usize] = x as u32;
    }
    out
}

fn code(ds: &[u32], order: usize) -> u64 {
    ds.iter().fold(0u64, |acc, &d| acc * order as u64 + d as u64)
}

fn move_on_indices(table: &FiniteTable, ds: &[u32], mv: NielsenMove) -> Vec<u32> {
    let mut out = ds.to_vec();
    let signed = |j: usize, s: Sign| match s {
        Sign::Plus => ds[j],
        Sign::Minus => table.inv(ds[j]),
    };
    match mv {
        NielsenMove::R { i, j, sign } => out[i] = table.mul(ds[i], signed(j, sign)),
        NielsenMove::L { i, j, sign } => out[i] = table.mul(signed(j, sign), ds[i]),
        NielsenMove::I { j } => out[j] = table.inv(ds[j]),
    }
    out
}

/// Extends `base ↦ images` to a map on all elements, if it is a well
/// defined bijective homomorphism.
fn extend(table: &FiniteTable, base: &[u32], images: &[u32]) -> Option<Perm> {
    let order = table.order();
    let mut map = vec![u32::MAX; order];
    map[table.identity() as usize] = table.identity();
    let mut queue = VecDeque::from([table.identity()]);
    while let Some(g) = queue.pop_front() {
        for (b, im) in base.iter().zip(images) {
            let h = table.mul(g, *b);
            let value = table.mul(map[g as usize], *im);
            if map[h as usize] == u32::MAX {
                map[h as usize] = value;
                queue.push_back(h);
            } else if map[h as usize] != value {
                return None;
            }
        }
    }
    if map.contains(&u32::MAX) {
        return None;
    }
    let mut hit = vec![false; order];
    for &y in &map {
        if std::mem::replace(&mut hit[y as usize], true) {
            return None;
        }
    }
    for a in 0..order as u32 {
        for b in 0..order as u32 {
            if map[table.mul(a, b) as usize] != table.mul(map[a as usize], map[b as usize]) {
                return None;
            }
        }
    }
    Some(map)
}

/// `Aut G` together with its bijection to generating `d`-tuples.
#[derive(Clone, Debug)]
pub struct AutAction {
    group: Group,
    d: usize,
    base: Vec<u32>,
    /// Generating `d`-tuples as index vectors, in increasing code order.
    tuples: Vec<Vec<u32>>,
    autos: Vec<Perm>,
    by_code: HashMap<u64, usize>,
}

impl AutAction {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.autos.len()
    }

    pub fn base(&self) -> Tuple {
        self.to_tuple(&self.base)
    }

    pub fn automorphism(&self, id: usize) -> &[u32] {
        &self.autos[id]
    }

    /// The image of the base under automorphism `id`.
    pub fn image(&self, id: usize) -> Tuple {
        self.to_tuple(&self.tuples[id])
    }

    fn table(&self) -> &FiniteTable {
        self.group.finite_table().expect("checked at construction")
    }

    fn to_tuple(&self, ds: &[u32]) -> Tuple {
        let els = self.table().elements();
        Tuple::new(ds.iter().map(|&i| els[i as usize].clone()).collect())
    }

    /// Id of `φ_u` for a generating index tuple.
    fn id_of(&self, ds: &[u32]) -> usize {
        self.by_code[&code(ds, self.table().order())]
    }

    pub fn id_of_tuple(&self, t: &Tuple) -> Option<usize> {
        let table = self.table();
        let ds: Vec<u32> = t.entries.iter().map(|g| table.index_of(g) as u32).collect();
        self.by_code.get(&code(&ds, table.order())).copied()
    }

    /// `α_s`, the automorphism sending the base to `s(base)`.
    pub fn move_automorphism(&self, mv: NielsenMove) -> usize {
        self.id_of(&move_on_indices(self.table(), &self.base, mv))
    }

    fn compose_ids(&self, f: usize, g: usize) -> usize {
        let p = compose(&self.autos[f], &self.autos[g]);
        let images: Vec<u32> = self.base.iter().map(|&b| p[b as usize]).collect();
        self.id_of(&images)
    }
}

/// Enumerates `Aut G` through generating `d`-tuples.
///
/// Fails with a precondition error when some generating tuple is not the
/// image of `base` under an automorphism, i.e. `G` is not relatively free
/// of rank `d` on `base`.
pub fn aut_group(group: &Group, d: usize, base: Option<&Tuple>) -> Result<AutAction> {
    if d == 0 {
        return Err(Error::usage("d must be at least 1"));
    }
    let table = group.finite_table()?;
    let order = table.order();
    let base_tuple = match base {
        Some(t) => t.clone(),
        None => designated_tuple(group, d)?,
    };
    if base_tuple.len() != d || !group.is_generating(&base_tuple.entries)? {
        return Err(Error::usage(format!("base {base_tuple} is not a generating {d}-tuple")));
    }
    let base: Vec<u32> = base_tuple.entries.iter().map(|g| table.index_of(g) as u32).collect();
    let total = (order as u64).checked_pow(d as u32).filter(|&t| t <= 1 << 24).ok_or_else(|| Error::Resource {
        what: format!("|G|^d = {order}^{d} candidate tuples"),
        cap: 1 << 24,
    })?;
    let digits = |mut c: u64| {
        let mut ds = vec![0u32; d];
        for slot in ds.iter_mut().rev() {
            *slot = (c % order as u64) as u32;
            c /= order as u64;
        }
        ds
    };
    let found: Vec<(Vec<u32>, Option<Perm>)> = (0..total)
        .into_par_iter()
        .filter_map(|c| {
            let ds = digits(c);
            (table.closure_size(&ds) == order).then(|| {
                let p = extend(table, &base, &ds);
                (ds, p)
            })
        })
        .collect();
    let generating = found.len();
    let extendable = found.iter().filter(|(_, p)| p.is_some()).count();
    if extendable != generating {
        return Err(Error::precondition(format!(
            "{} has {generating} generating {d}-tuples but only {extendable} automorphisms \
             extend the base; it is not relatively free of rank {d}",
            group.spec().to_json()
        )));
    }
    let mut tuples = Vec::with_capacity(generating);
    let mut autos = Vec::with_capacity(generating);
    let mut by_code = HashMap::with_capacity(generating);
    for (ds, p) in found {
        by_code.insert(code(&ds, order), tuples.len());
        tuples.push(ds);
        autos.push(p.unwrap());
    }
    Ok(AutAction {
        group: group.clone(),
        d,
        base,
        tuples,
        autos,
        by_code,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TameSubgroup {
    /// Automorphism ids in the order they were reached.
    pub elements: Vec<usize>,
    pub order: usize,
    pub index: usize,
}

/// Closure of the move-induced automorphisms under composition.
pub fn tame_subgroup(act: &AutAction) -> TameSubgroup {
    let gens: Vec<usize> = move_set(act.d).into_iter().map(|m| act.move_automorphism(m)).collect();
    let identity = act.id_of(&act.base);
    let mut seen = vec![false; act.order()];
    seen[identity] = true;
    let mut elements = vec![identity];
    let mut k = 0;
    while k < elements.len() {
        let f = elements[k];
        for &g in &gens {
            let h = act.compose_ids(f, g);
            if !seen[h] {
                seen[h] = true;
                elements.push(h);
            }
        }
        k += 1;
    }
    let order = elements.len();
    TameSubgroup {
        elements,
        order,
        index: act.order() / order,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TameReport {
    pub group: String,
    pub d: usize,
    pub aut_order: usize,
    pub tame_order: usize,
    pub index: usize,
    pub num_components: usize,
    pub component_sizes: Vec<usize>,
    pub components_isomorphic: bool,
    pub cayley_match: bool,
    pub counterexamples: Vec<String>,
}

impl TameReport {
    pub fn ok(&self) -> bool {
        self.num_components == self.index
            && self.component_sizes.iter().all(|&s| s == self.tame_order)
            && self.index * self.tame_order == self.aut_order
            && self.components_isomorphic
            && self.cayley_match
    }
}

/// Exhaustive check that `N_d(G)` splits into `[Aut G : T]` components,
/// each label-isomorphic to `Cay(T, S)`.
pub fn verify_tame_classes(group: &Group, d: usize) -> Result<TameReport> {
    let act = aut_group(group, d, None)?;
    let tame = tame_subgroup(&act);
    let table = act.table();
    let order = table.order();
    let comps = components(group, d, 1 << 24)?;
    let moves = move_set(d);
    let alpha: Vec<usize> = moves.iter().map(|&m| act.move_automorphism(m)).collect();
    let mut in_t = vec![false; act.order()];
    for &t in &tame.elements {
        in_t[t] = true;
    }

    let mut counterexamples = Vec::new();
    let mut note = |msg: String| {
        if counterexamples.len() < 20 {
            counterexamples.push(msg);
        }
    };
    let digits = |c: u64| -> Vec<u32> {
        let mut c = c;
        let mut ds = vec![0u32; d];
        for slot in ds.iter_mut().rev() {
            *slot = (c % order as u64) as u32;
            c /= order as u64;
        }
        ds
    };

    // tuple u in the component of u0 maps to φ_{u0}^{-1} ∘ φ_u in T
    let mut cayley_match = true;
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); comps.count()];
    for (&c, &id) in comps.tuples.iter().zip(&comps.ids) {
        members[id as usize].push(act.id_of(&digits(c)));
    }
    for (cid, ids) in members.iter().enumerate() {
        let u0 = act.id_of(&digits(comps.representatives[cid]));
        let back = invert(&act.autos[u0]);
        let label = |u: usize| {
            let p = compose(&back, &act.autos[u]);
            act.id_of(&act.base.iter().map(|&b| p[b as usize]).collect::<Vec<_>>())
        };
        let mut hit = vec![false; act.order()];
        for &u in ids {
            let tau = label(u);
            if !in_t[tau] {
                cayley_match = false;
                note(format!("component {cid}: {} maps outside T", act.image(u)));
                continue;
            }
            if std::mem::replace(&mut hit[tau], true) {
                cayley_match = false;
                note(format!("component {cid}: two tuples map to the same element of T"));
            }
            for (k, &mv) in moves.iter().enumerate() {
                let v = act.id_of(&move_on_indices(table, &act.tuples[u], mv));
                if label(v) != act.compose_ids(tau, alpha[k]) {
                    cayley_match = false;
                    note(format!("component {cid}: move {mv} at {} breaks the Cayley labelling", act.image(u)));
                }
            }
        }
        if ids.len() != tame.order {
            cayley_match = false;
            note(format!("component {cid} has {} vertices, |T| = {}", ids.len(), tame.order));
        }
    }

    // ψ = φ_{u_c} ∘ φ_{u_0}^{-1} applied entrywise carries component 0 onto c
    let mut components_isomorphic = true;
    if let Some(first) = members.first() {
        let u0 = act.id_of(&digits(comps.representatives[0]));
        let back = invert(&act.autos[u0]);
        for (cid, ids) in members.iter().enumerate().skip(1) {
            let uc = act.id_of(&digits(comps.representatives[cid]));
            let psi = compose(&act.autos[uc], &back);
            let apply = |u: usize| act.id_of(&act.tuples[u].iter().map(|&x| psi[x as usize]).collect::<Vec<_>>());
            let mut image: Vec<usize> = first.iter().map(|&u| apply(u)).collect();
            image.sort_unstable();
            let mut target = ids.clone();
            target.sort_unstable();
            if image != target {
                components_isomorphic = false;
                note(format!("ψ does not carry component 0 onto component {cid}"));
            }
            for &u in first {
                for &mv in &moves {
                    let lhs = apply(act.id_of(&move_on_indices(table, &act.tuples[u], mv)));
                    let rhs = act.id_of(&move_on_indices(table, &act.tuples[apply(u)], mv));
                    if lhs != rhs {
                        components_isomorphic = false;
                        note(format!("ψ does not commute with {mv} at {}", act.image(u)));
                    }
                }
            }
        }
    }

    let report = TameReport {
        group: group.spec().to_json(),
        d,
        aut_order: act.order(),
        tame_order: tame.order,
        index: tame.index,
        num_components: comps.count(),
        component_sizes: comps.sizes.clone(),
        components_isomorphic,
        cayley_match,
        counterexamples,
    };
    if !report.ok() && report.counterexamples.is_empty() {
        let mut r = report;
        r.counterexamples.push(format!(
            "{} components for index {}; sizes {:?} vs |T| = {}",
            r.num_components, r.index, r.component_sizes, r.tame_order
        ));
        return Ok(r);
    }
    Ok(report)
}
