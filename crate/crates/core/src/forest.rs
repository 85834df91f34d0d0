//! The rooted spanning subforest `Γ = ∪ Γ_{A,B}` of `N_n(Z)`.
//!
//! `Γ_{A,B}` holds the gcd-1 tuples that are negative on `A`, zero on `B`
//! and positive elsewhere (`|B| <= n - 2`). Its edges come from `R+` moves.
//! Rules are stated for `A = ∅`; other sign patterns are transported by the
//! bijection `σ_A` negating the coordinates in `A`, which turns `R+:i,j`
//! into `R-:i,j` whenever exactly one of `i, j` lies in `A`.
//!
//! At a target `z` the incoming `R+` edges are indexed by their move alone,
//! since `R+:i,j` is injective. The survivor is the distinguished move
//! `(p, q)` or its reverse `(q, p)` if either comes in (never both), and the
//! lexicographically largest incoming move otherwise. Every non-root vertex
//! therefore keeps exactly one incoming edge, which is what makes `Γ` a
//! forest.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Element;
use crate::nielsen::{int_tuple, NielsenMove, Sign, Tuple};

/// Default bound on the number of window tuples `(2M+1)^n`.
pub const DEFAULT_WINDOW_CAP: u64 = 20_000_000;

/// Index sets of one component, 0-based and increasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ComponentId {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl ComponentId {
    /// The root `(ε_1, ..., ε_n)`: `-1` on `A`, `0` on `B`, `1` elsewhere.
    pub fn root(&self, n: usize) -> Tuple {
        int_tuple(&(0..n).map(|i| self.sign(i)).collect::<Vec<_>>())
    }

    fn sign(&self, i: usize) -> i64 {
        if self.a.contains(&i) {
            -1
        } else if self.b.contains(&i) {
            0
        } else {
            1
        }
    }

    /// Lexicographically least ordered pair of indices outside `B`.
    pub fn distinguished_pair(&self, n: usize) -> (usize, usize) {
        let mut free = (0..n).filter(|i| !self.b.contains(i));
        (free.next().unwrap(), free.next().unwrap())
    }

    pub fn label(&self) -> String {
        let one = |s: &[usize]| s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
        format!("A={{{}}} B={{{}}}", one(&self.a), one(&self.b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeletionReason {
    Kept,
    /// Another edge into the same target uses the distinguished move.
    DupOf12,
    /// Another edge into the same target uses the reversed distinguished move.
    DupOf21,
    /// Lost the lexicographic comparison at its target.
    LexLoser,
    /// Not a candidate: the move fixes the tuple.
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestSpec {
    pub n: usize,
    pub component: ComponentId,
    /// Maximum absolute coordinate.
    pub window: i64,
}

impl ForestSpec {
    pub fn new(n: usize, a: &[usize], b: &[usize], window: i64) -> Result<ForestSpec> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        a.sort_unstable();
        a.dedup();
        b.sort_unstable();
        b.dedup();
        if n < 2 {
            return Err(Error::usage("the forest needs n >= 2"));
        }
        if a.iter().chain(&b).any(|&i| i >= n) {
            return Err(Error::usage(format!("index sets must lie in 1..={n}")));
        }
        if a.iter().any(|i| b.contains(i)) {
            return Err(Error::usage("A and B must be disjoint"));
        }
        if b.len() + 2 > n {
            return Err(Error::usage("|B| must be at most n - 2"));
        }
        if window < 1 {
            return Err(Error::usage("window must be at least 1"));
        }
        Ok(ForestSpec {
            n,
            component: ComponentId { a, b },
            window,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForestEdge {
    #[serde(serialize_with = "ser_tuple")]
    pub source: Tuple,
    #[serde(serialize_with = "ser_tuple")]
    pub target: Tuple,
    /// 0-based indices of the underlying `R+` move.
    pub i: usize,
    pub j: usize,
    /// The move realizing the edge in `N_n(Z)`.
    #[serde(serialize_with = "ser_display")]
    pub mv: NielsenMove,
    pub in_forest: bool,
    pub deletion_reason: DeletionReason,
}

fn ser_tuple<S: serde::Serializer>(t: &Tuple, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(t)
}

fn ser_display<S: serde::Serializer>(m: &NielsenMove, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(m)
}

fn coords(t: &Tuple) -> Result<Vec<i64>> {
    t.entries
        .iter()
        .map(|e| match e {
            Element::Int(x) => Ok(*x),
            _ => Err(Error::usage("the forest lives in N_n(Z); expected an integer tuple")),
        })
        .collect()
}

fn gcd_of(xs: &[i64]) -> i64 {
    xs.iter().fold(0i64, |acc, x| acc.gcd(x))
}

fn classify(xs: &[i64]) -> Option<ComponentId> {
    let n = xs.len();
    let a: Vec<usize> = (0..n).filter(|&i| xs[i] < 0).collect();
    let b: Vec<usize> = (0..n).filter(|&i| xs[i] == 0).collect();
    (b.len() + 2 <= n).then_some(ComponentId { a, b })
}

/// Component `(A, B)` of a gcd-1 integer tuple, or `None` for the `2n`
/// signed standard basis vectors (and, for `n = 1`, both vertices).
pub fn component_of(t: &Tuple) -> Result<Option<ComponentId>> {
    let xs = coords(t)?;
    if xs.is_empty() || gcd_of(&xs) != 1 {
        return Err(Error::usage(format!("{t} is not a generating tuple of Z")));
    }
    Ok(classify(&xs))
}

/// Rules in `σ_A` coordinates, where the component is `Γ_{∅,B}`.
struct Rules {
    free: Vec<usize>,
    p: usize,
    q: usize,
}

impl Rules {
    fn new(n: usize, c: &ComponentId) -> Rules {
        let (p, q) = c.distinguished_pair(n);
        Rules {
            free: (0..n).filter(|i| !c.b.contains(i)).collect(),
            p,
            q,
        }
    }

    /// Moves `(k, l)` with an `R+` edge into `u` from inside the component.
    fn incoming(&self, u: &[i64]) -> impl Iterator<Item = (usize, usize)> + '_ {
        let u = u.to_vec();
        self.free
            .iter()
            .flat_map(move |&k| self.free.iter().map(move |&l| (k, l)))
            .filter(move |&(k, l)| k != l && u[k] - u[l] > 0)
    }

    /// The surviving incoming edge and the reason any other loses.
    fn survivor(&self, u: &[i64]) -> Option<((usize, usize), DeletionReason)> {
        let mut lex: Option<(usize, usize)> = None;
        for e in self.incoming(u) {
            if e == (self.p, self.q) {
                return Some((e, DeletionReason::DupOf12));
            }
            if e == (self.q, self.p) {
                return Some((e, DeletionReason::DupOf21));
            }
            lex = lex.max(Some(e));
        }
        lex.map(|e| (e, DeletionReason::LexLoser))
    }

    fn decide(&self, target: &[i64], e: (usize, usize)) -> DeletionReason {
        match self.survivor(target) {
            Some((s, _)) if s == e => DeletionReason::Kept,
            Some((_, why)) => why,
            None => unreachable!("an incoming edge exists"),
        }
    }
}

fn flip(xs: &mut [i64], a: &[usize]) {
    for &i in a {
        xs[i] = -xs[i];
    }
}

/// The forest decision for the edge `σ_A ∘ R+:i,j ∘ σ_A` at `source`.
pub fn edge_in_forest(source: &Tuple, i: usize, j: usize, spec: &ForestSpec) -> Result<ForestEdge> {
    let n = spec.n;
    let c = &spec.component;
    let xs = coords(source)?;
    if xs.len() != n || i >= n || j >= n || i == j {
        return Err(Error::usage(format!("move ({}, {}) does not apply to {source}", i + 1, j + 1)));
    }
    if component_of(source)?.as_ref() != Some(c) {
        return Err(Error::usage(format!("{source} is not a vertex of Γ {}", c.label())));
    }
    let sign = if c.a.contains(&i) == c.a.contains(&j) { Sign::Plus } else { Sign::Minus };
    let mv = NielsenMove::R { i, j, sign };
    let mut u = xs.clone();
    flip(&mut u, &c.a);
    let mut z = u.clone();
    z[i] = z[i].checked_add(z[j]).ok_or(Error::Overflow("forest move"))?;
    let mut target = z.clone();
    flip(&mut target, &c.a);
    let in_window = |v: &[i64]| v.iter().all(|x| x.abs() <= spec.window);
    let reason = if z == u {
        DeletionReason::None
    } else if classify(&target).as_ref() != Some(c) {
        return Err(Error::usage(format!(
            "{source} -> {} leaves Γ {}",
            int_tuple(&target),
            c.label()
        )));
    } else if !in_window(&xs) || !in_window(&target) {
        return Err(Error::usage(format!("edge from {source} leaves the window {}", spec.window)));
    } else {
        Rules::new(n, c).decide(&z, (i, j))
    };
    Ok(ForestEdge {
        source: source.clone(),
        target: int_tuple(&target),
        i,
        j,
        mv,
        in_forest: reason == DeletionReason::Kept,
        deletion_reason: reason,
    })
}

/// All tuples of `[-M, M]^n`, coded in base `2M + 1`.
struct Window {
    n: usize,
    m: i64,
    side: u64,
    total: u64,
}

impl Window {
    fn new(n: usize, m: i64, cap: u64) -> Result<Window> {
        let side = 2 * m as u64 + 1;
        let total = side
            .checked_pow(n as u32)
            .filter(|&t| t <= cap && t <= u32::MAX as u64)
            .ok_or_else(|| Error::Resource {
                what: format!("window [-{m},{m}]^{n}"),
                cap,
            })?;
        Ok(Window { n, m, side, total })
    }

    fn decode(&self, mut code: u64) -> Vec<i64> {
        let mut xs = vec![0; self.n];
        for x in xs.iter_mut() {
            *x = (code % self.side) as i64 - self.m;
            code /= self.side;
        }
        xs
    }

    fn encode(&self, xs: &[i64]) -> Option<u64> {
        let mut code = 0u64;
        for &x in xs.iter().rev() {
            if x.abs() > self.m {
                return None;
            }
            code = code * self.side + (x + self.m) as u64;
        }
        Some(code)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootDegree {
    pub component: String,
    #[serde(serialize_with = "ser_tuple")]
    pub root: Tuple,
    pub degree: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ForestReport {
    pub n: usize,
    pub window: i64,
    pub vertices: usize,
    pub kept_edges: usize,
    pub components: usize,
    pub expected_components: usize,
    pub acyclic: bool,
    pub root_degrees: Vec<RootDegree>,
    /// Minimum forest degree over non-root vertices whose children all lie
    /// in the window.
    pub min_interior_degree: usize,
    pub interior_vertices: usize,
    pub coverage_ok: bool,
    pub descent_ok: bool,
    /// Every kept edge is a dart of `N_n(Z)` with the recorded label.
    pub edges_realized: bool,
    pub violations: Vec<String>,
}

impl ForestReport {
    pub fn ok(&self) -> bool {
        self.acyclic
            && self.coverage_ok
            && self.descent_ok
            && self.edges_realized
            && self.min_interior_degree >= 3
            && self.components == self.expected_components
    }
}

fn valid_components(n: usize) -> usize {
    // each index goes to A, B or neither, with |B| <= n - 2
    let binom = |k: usize| -> usize { (0..k).fold(1usize, |acc, t| acc * (n - t) / (t + 1)) };
    (0..=n - 2).map(|k| binom(k) * (1usize << (n - k))).sum()
}

struct Dsu(Vec<u32>);

impl Dsu {
    fn find(&mut self, mut x: u32) -> u32 {
        while self.0[x as usize] != x {
            let p = self.0[x as usize];
            self.0[x as usize] = self.0[p as usize];
            x = p;
        }
        x
    }

    /// False if `a` and `b` were already joined.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb) as usize] = ra.min(rb);
        true
    }
}

/// Per-vertex data of the window scan.
struct Scan {
    component: Option<ComponentId>,
    /// Source code and move of the kept incoming edge.
    parent: Option<(u64, (usize, usize))>,
    /// Whether every `R+` child stays in the window.
    interior: bool,
}

fn scan_vertex(win: &Window, xs: &[i64], rules: &BTreeMap<ComponentId, Rules>) -> Scan {
    let Some(c) = classify(xs) else {
        return Scan { component: None, parent: None, interior: false };
    };
    let r = &rules[&c];
    let mut u = xs.to_vec();
    flip(&mut u, &c.a);
    let parent = r.survivor(&u).map(|((k, l), _)| {
        let mut y = u.clone();
        y[k] -= y[l];
        flip(&mut y, &c.a);
        (win.encode(&y).expect("parents have smaller coordinates"), (k, l))
    });
    let interior = r
        .free
        .iter()
        .all(|&i| r.free.iter().all(|&j| i == j || u[i] + u[j] <= win.m));
    Scan { component: Some(c), parent, interior }
}

/// Exhaustive check of the forest on `[-M, M]^n`.
pub fn verify_forest(n: usize, m: i64, cap: u64) -> Result<ForestReport> {
    if n < 2 {
        return Err(Error::usage("the forest needs n >= 2"));
    }
    if m < 1 {
        return Err(Error::usage("window must be at least 1"));
    }
    let win = Window::new(n, m, cap)?;
    let mut rules = BTreeMap::new();
    for code in 0..(3u64.pow(n as u32)) {
        let xs: Vec<i64> = (0..n).map(|i| (code / 3u64.pow(i as u32) % 3) as i64 - 1).collect();
        if let Some(c) = classify(&xs) {
            rules.entry(c.clone()).or_insert_with(|| Rules::new(n, &c));
        }
    }

    let gcd_one: Vec<bool> = (0..win.total).into_par_iter().map(|c| gcd_of(&win.decode(c)) == 1).collect();
    let scans: Vec<Option<Scan>> = (0..win.total)
        .into_par_iter()
        .map(|c| gcd_one[c as usize].then(|| scan_vertex(&win, &win.decode(c), &rules)))
        .collect();

    let mut violations = Vec::new();
    let note = |v: &mut Vec<String>, msg: String| {
        if v.len() < 20 {
            v.push(msg);
        }
    };

    // coverage: everything outside Γ is a signed basis vector
    let mut coverage_ok = true;
    let mut vertices = 0usize;
    let mut seen_components = BTreeMap::new();
    for (code, s) in scans.iter().enumerate() {
        let Some(s) = s else { continue };
        let xs = win.decode(code as u64);
        match &s.component {
            Some(c) => {
                vertices += 1;
                *seen_components.entry(c.clone()).or_insert(0usize) += 1;
            }
            None => {
                let basis = xs.iter().filter(|&&x| x != 0).count() == 1 && xs.iter().any(|&x| x.abs() == 1);
                if !basis {
                    coverage_ok = false;
                    note(&mut violations, format!("uncovered vertex {}", int_tuple(&xs)));
                }
            }
        }
    }

    // acyclicity, degrees and realization over the kept edges
    let mut dsu = Dsu((0..win.total as u32).collect());
    let mut acyclic = true;
    let mut edges_realized = true;
    let mut kept_edges = 0usize;
    let mut out_deg = vec![0u32; win.total as usize];
    for (code, s) in scans.iter().enumerate() {
        let Some(Scan { component: Some(c), parent: Some((src, (k, l))), .. }) = s else { continue };
        kept_edges += 1;
        out_deg[*src as usize] += 1;
        let from = win.decode(*src);
        let to = win.decode(code as u64);
        let sign = if c.a.contains(k) == c.a.contains(l) { 1 } else { -1 };
        let mut image = from.clone();
        image[*k] += sign * from[*l];
        if image != to || classify(&from).as_ref() != Some(c) {
            edges_realized = false;
            note(&mut violations, format!("edge {} -> {} is not an R move", int_tuple(&from), int_tuple(&to)));
        }
        if !dsu.union(*src as u32, code as u32) {
            acyclic = false;
            note(&mut violations, format!("cycle closed by {} -> {}", int_tuple(&from), int_tuple(&to)));
        }
    }

    let mut root_degrees = Vec::new();
    let mut min_interior_degree = usize::MAX;
    let mut interior_vertices = 0usize;
    for (code, s) in scans.iter().enumerate() {
        let Some(Scan { component: Some(c), parent, interior }) = s else { continue };
        let degree = out_deg[code] as usize + parent.is_some() as usize;
        let xs = win.decode(code as u64);
        if xs == coords(&c.root(n)).unwrap() {
            root_degrees.push(RootDegree {
                component: c.label(),
                root: c.root(n),
                degree,
            });
            if parent.is_some() {
                note(&mut violations, format!("root {} has a parent", int_tuple(&xs)));
            }
        } else if *interior {
            interior_vertices += 1;
            min_interior_degree = min_interior_degree.min(degree);
        }
    }
    root_degrees.sort_by(|a, b| a.component.cmp(&b.component));
    if interior_vertices == 0 {
        return Err(Error::usage(format!(
            "window {m} contains no non-root vertex with all its children; enlarge it"
        )));
    }

    // descent: parent pointers strictly decrease Σ|x_i| down to the root
    let descent_ok = (0..win.total)
        .into_par_iter()
        .filter(|&c| matches!(&scans[c as usize], Some(Scan { component: Some(_), .. })))
        .all(|code| {
            let c = scans[code as usize].as_ref().unwrap().component.clone().unwrap();
            let root = coords(&c.root(n)).unwrap();
            let mut cur = code;
            let mut weight: i64 = win.decode(cur).iter().map(|x| x.abs()).sum();
            loop {
                match &scans[cur as usize].as_ref().unwrap().parent {
                    None => return win.decode(cur) == root,
                    Some((src, _)) => {
                        let w: i64 = win.decode(*src).iter().map(|x| x.abs()).sum();
                        if w >= weight {
                            return false;
                        }
                        weight = w;
                        cur = *src;
                    }
                }
            }
        });
    if !descent_ok {
        note(&mut violations, "descent to a root failed".to_string());
    }

    Ok(ForestReport {
        n,
        window: m,
        vertices,
        kept_edges,
        components: seen_components.len(),
        expected_components: valid_components(n),
        acyclic,
        root_degrees,
        min_interior_degree,
        interior_vertices,
        coverage_ok,
        descent_ok,
        edges_realized,
        violations,
    })
}

/// Graphviz rendering of the kept edges of one component inside the window.
pub fn forest_dot(spec: &ForestSpec) -> Result<String> {
    let n = spec.n;
    let c = &spec.component;
    let win = Window::new(n, spec.window, DEFAULT_WINDOW_CAP)?;
    let mut rules = BTreeMap::new();
    rules.insert(c.clone(), Rules::new(n, c));
    let root = coords(&c.root(n))?;
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for code in 0..win.total {
        let xs = win.decode(code);
        if gcd_of(&xs) != 1 || classify(&xs).as_ref() != Some(c) {
            continue;
        }
        let s = scan_vertex(&win, &xs, &rules);
        nodes.push(xs.clone());
        if let Some((src, (k, l))) = s.parent {
            let sign = if c.a.contains(&k) == c.a.contains(&l) { Sign::Plus } else { Sign::Minus };
            edges.push((win.decode(src), xs, NielsenMove::R { i: k, j: l, sign }));
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "// {} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "// forest component {} n: {n} window: {}", c.label(), spec.window);
    out.push_str("digraph forest {\n");
    for xs in &nodes {
        let style = if *xs == root { ", shape=doublecircle, style=filled" } else { "" };
        let _ = writeln!(out, "  \"{}\" [label=\"{}\"{style}];", int_tuple(xs), int_tuple(xs));
    }
    for (from, to, mv) in &edges {
        let _ = writeln!(out, "  \"{}\" -> \"{}\" [label=\"{mv}\"];", int_tuple(from), int_tuple(to));
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Group, GroupSpec};
    use crate::nielsen::apply_move;

    fn spec(n: usize, a: &[usize], b: &[usize], m: i64) -> ForestSpec {
        ForestSpec::new(n, a, b, m).unwrap()
    }

    #[test]
    fn components_by_sign_pattern() {
        let c = component_of(&int_tuple(&[1, 1])).unwrap().unwrap();
        assert_eq!(c, ComponentId { a: vec![], b: vec![] });
        assert_eq!(component_of(&int_tuple(&[1, 0])).unwrap(), None);
        assert_eq!(component_of(&int_tuple(&[0, -1, 0])).unwrap(), None);
        let c = component_of(&int_tuple(&[-3, 2, 0])).unwrap().unwrap();
        assert_eq!(c, ComponentId { a: vec![0], b: vec![2] });
        assert!(matches!(component_of(&int_tuple(&[2, 4])), Err(Error::Usage(_))));
    }

    #[test]
    fn roots() {
        let c = ComponentId { a: vec![0], b: vec![] };
        assert_eq!(c.root(3), int_tuple(&[-1, 1, 1]));
        let c = ComponentId { a: vec![], b: vec![0] };
        assert_eq!(c.distinguished_pair(3), (1, 2));
    }

    #[test]
    fn distinguished_edges_are_kept() {
        let s = spec(3, &[], &[], 30);
        for xs in [[1, 1, 1], [2, 3, 5], [4, 1, 1], [3, 3, 2]] {
            let t = int_tuple(&xs);
            assert!(edge_in_forest(&t, 0, 1, &s).unwrap().in_forest, "{t}");
            assert!(edge_in_forest(&t, 1, 0, &s).unwrap().in_forest, "{t}");
        }
        let root = int_tuple(&[1, 1]);
        let s2 = spec(2, &[], &[], 30);
        let a = edge_in_forest(&root, 0, 1, &s2).unwrap();
        let b = edge_in_forest(&root, 1, 0, &s2).unwrap();
        assert_ne!(a.target, b.target);
    }

    #[test]
    fn same_source_duplicate_is_deleted() {
        // R+:1,3 and R+:1,2 agree at (2,1,1)
        let s = spec(3, &[], &[], 30);
        let e = edge_in_forest(&int_tuple(&[2, 1, 1]), 0, 2, &s).unwrap();
        assert_eq!(e.deletion_reason, DeletionReason::DupOf12);
    }

    #[test]
    fn cross_source_duplicate_is_deleted() {
        // (3,1,2) is R+:1,2 of (2,1,2) and R+:1,3 of (1,1,2)
        let s = spec(3, &[], &[], 30);
        let e = edge_in_forest(&int_tuple(&[1, 1, 2]), 0, 2, &s).unwrap();
        assert_eq!(e.target, int_tuple(&[3, 1, 2]));
        assert_eq!(e.deletion_reason, DeletionReason::DupOf12);
    }

    #[test]
    fn lexicographic_survivor() {
        // (1,1,3) has incoming R+:3,1 and R+:3,2 only; the larger pair wins
        let s = spec(3, &[], &[], 30);
        let lo = edge_in_forest(&int_tuple(&[1, 1, 2]), 2, 0, &s).unwrap();
        let hi = edge_in_forest(&int_tuple(&[1, 1, 2]), 2, 1, &s).unwrap();
        assert_eq!(lo.target, hi.target);
        assert_eq!(lo.deletion_reason, DeletionReason::LexLoser);
        assert!(hi.in_forest);
    }

    #[test]
    fn loops_are_not_candidates() {
        let s = spec(3, &[], &[2], 30);
        let e = edge_in_forest(&int_tuple(&[2, 1, 0]), 0, 2, &s).unwrap();
        assert_eq!(e.deletion_reason, DeletionReason::None);
        assert!(matches!(edge_in_forest(&int_tuple(&[2, 1, 0]), 2, 0, &s), Err(Error::Usage(_))));
    }

    #[test]
    fn negative_components_use_conjugated_moves() {
        let z = Group::new(GroupSpec::Integers).unwrap();
        let s = spec(2, &[0], &[], 30);
        let e = edge_in_forest(&int_tuple(&[-1, 1]), 0, 1, &s).unwrap();
        assert_eq!(e.mv.to_string(), "R-:1,2");
        assert_eq!(e.target, int_tuple(&[-2, 1]));
        assert_eq!(apply_move(&z, &e.source, e.mv).unwrap(), e.target);
        assert!(e.in_forest);
    }

    #[test]
    fn small_windows() {
        let r = verify_forest(2, 10, DEFAULT_WINDOW_CAP).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.components, 4);
        assert!(r.root_degrees.iter().all(|d| d.degree == 2));
        let r = verify_forest(3, 6, DEFAULT_WINDOW_CAP).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.components, 8 + 3 * 4);
        assert!(matches!(verify_forest(2, 2, DEFAULT_WINDOW_CAP), Err(Error::Usage(_))));
    }

    #[test]
    fn dot_highlights_root() {
        let dot = forest_dot(&spec(2, &[], &[], 4)).unwrap();
        assert!(dot.contains("\"(1, 1)\" [label=\"(1, 1)\", shape=doublecircle"));
        assert!(dot.contains("\"(1, 1)\" -> \"(2, 1)\" [label=\"R+:1,2\"]"));
    }
}
