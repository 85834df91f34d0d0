//! Breadth-first exploration of Nielsen graphs.
//!
//! [`Fragment::ball`] grows a finite, edge-labelled piece of `N_n(G)` around
//! a root tuple. Vertices are stored in canonical order (BFS depth, then
//! byte key), which makes every downstream report reproducible regardless of
//! how many worker threads expanded the frontier.

mod components;
mod euclid;
mod export;

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::nielsen::{apply_move, move_index, move_set, NielsenMove, Tuple};

pub use components::{components, Components};
pub use euclid::euclid_reduce;
pub use export::ExportFormat;

/// Default vertex cap for explorations.
pub const DEFAULT_VERTEX_CAP: usize = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub tuple: Tuple,
    pub key: Vec<u8>,
    pub depth: u32,
    pub expanded: bool,
}

/// One outgoing dart: the position of its move in `move_set(n)` and the
/// target vertex index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dart {
    pub mv: u16,
    pub to: u32,
}

#[derive(Clone, Debug)]
pub struct BallOptions {
    /// Maximum element size (max |coordinate| or word length). Tuples with
    /// a larger entry are kept as unexpanded frontier vertices.
    pub window: Option<u64>,
    pub cap: usize,
}

impl Default for BallOptions {
    fn default() -> Self {
        BallOptions {
            window: None,
            cap: DEFAULT_VERTEX_CAP,
        }
    }
}

/// A finitely explored piece of a Nielsen graph.
///
/// Equality compares the graph itself (group, root, vertices, darts); the
/// requested radius and window are provenance only.
#[derive(Clone, Debug)]
pub struct Fragment {
    group: Group,
    n: usize,
    moves: Vec<NielsenMove>,
    root: Tuple,
    radius: u32,
    window: Option<u64>,
    vertices: Vec<Vertex>,
    index: HashMap<Vec<u8>, u32>,
    darts: Vec<Vec<Dart>>,
}

impl PartialEq for Fragment {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.n == other.n
            && self.root == other.root
            && self.vertices == other.vertices
            && self.darts == other.darts
    }
}

fn in_window(group: &Group, t: &Tuple, window: Option<u64>) -> bool {
    match window {
        None => true,
        Some(w) => t.entries.iter().all(|g| group.element_size(g) <= w),
    }
}

impl Fragment {
    pub fn ball(group: &Group, root: &Tuple, radius: u32) -> Result<Fragment> {
        Fragment::ball_with(group, root, radius, &BallOptions::default())
    }

    /// Vertices at distance `<= radius` from `root`. Vertices on the last
    /// layer or outside the window are present but unexpanded.
    pub fn ball_with(group: &Group, root: &Tuple, radius: u32, opts: &BallOptions) -> Result<Fragment> {
        if !group.is_generating(&root.entries)? {
            return Err(Error::usage(format!("root {root} is not a generating tuple")));
        }
        let n = root.len();
        let mut frag = Fragment::empty(group, root, radius, opts.window);
        frag.push_vertex(root.clone(), frag.root.key(group), 0);

        let mut layer_start = 0usize;
        for depth in 0..radius {
            let layer_end = frag.vertices.len();
            let layer: Vec<u32> = (layer_start as u32..layer_end as u32)
                .filter(|&v| in_window(group, &frag.vertices[v as usize].tuple, opts.window))
                .collect();
            if layer.is_empty() {
                break;
            }
            let moves = &frag.moves;
            let vertices = &frag.vertices;
            let expansions: Vec<Vec<(Tuple, Vec<u8>)>> = layer
                .par_iter()
                .map(|&v| {
                    let t = &vertices[v as usize].tuple;
                    moves
                        .iter()
                        .map(|&m| {
                            let u = apply_move(group, t, m)?;
                            let k = u.key(group);
                            Ok((u, k))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;

            let mut fresh: HashMap<&[u8], &Tuple> = HashMap::new();
            for nbrs in &expansions {
                for (u, k) in nbrs {
                    if !frag.index.contains_key(k.as_slice()) {
                        fresh.entry(k.as_slice()).or_insert(u);
                    }
                }
            }
            let mut fresh: Vec<(&[u8], &Tuple)> = fresh.into_iter().collect();
            fresh.sort_unstable_by(|a, b| a.0.cmp(b.0));
            if frag.vertices.len() + fresh.len() > opts.cap {
                return Err(Error::Resource {
                    what: format!("vertex count {}", frag.vertices.len() + fresh.len()),
                    cap: opts.cap as u64,
                });
            }
            for (k, u) in fresh {
                frag.push_vertex(u.clone(), k.to_vec(), depth + 1);
            }
            for (&v, nbrs) in layer.iter().zip(&expansions) {
                let darts = nbrs
                    .iter()
                    .enumerate()
                    .map(|(mi, (_, k))| Dart {
                        mv: mi as u16,
                        to: frag.index[k.as_slice()],
                    })
                    .collect();
                frag.darts[v as usize] = darts;
                frag.vertices[v as usize].expanded = true;
            }
            debug_assert!(n == frag.n);
            layer_start = layer_end;
        }
        Ok(frag)
    }

    fn empty(group: &Group, root: &Tuple, radius: u32, window: Option<u64>) -> Fragment {
        Fragment {
            group: group.clone(),
            n: root.len(),
            moves: move_set(root.len()),
            root: root.clone(),
            radius,
            window,
            vertices: Vec::new(),
            index: HashMap::new(),
            darts: Vec::new(),
        }
    }

    fn push_vertex(&mut self, tuple: Tuple, key: Vec<u8>, depth: u32) -> u32 {
        let id = self.vertices.len() as u32;
        self.index.insert(key.clone(), id);
        self.vertices.push(Vertex {
            tuple,
            key,
            depth,
            expanded: false,
        });
        self.darts.push(Vec::new());
        id
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> &Tuple {
        &self.root
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn window(&self) -> Option<u64> {
        self.window
    }

    pub fn moves(&self) -> &[NielsenMove] {
        &self.moves
    }

    /// Regular degree `4n(n-1) + n`.
    pub fn degree(&self) -> usize {
        self.moves.len()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: u32) -> &Vertex {
        &self.vertices[id as usize]
    }

    pub fn darts(&self, id: u32) -> &[Dart] {
        &self.darts[id as usize]
    }

    pub fn id_of(&self, key: &[u8]) -> Option<u32> {
        self.index.get(key).copied()
    }

    pub fn id_of_tuple(&self, t: &Tuple) -> Option<u32> {
        self.id_of(&t.key(&self.group))
    }

    pub fn expanded_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.expanded).count()
    }

    pub fn dart_count(&self) -> usize {
        self.darts.iter().map(Vec::len).sum()
    }

    pub fn in_window(&self, t: &Tuple) -> bool {
        in_window(&self.group, t, self.window)
    }

    /// True if any explored vertex lies outside the window.
    pub fn is_truncated(&self) -> bool {
        self.vertices.iter().any(|v| !self.in_window(&v.tuple))
    }

    pub fn max_depth(&self) -> u32 {
        self.vertices.iter().map(|v| v.depth).max().unwrap_or(0)
    }

    /// Cumulative ball sizes `(r, |B_r|)` for `r = 0..=max depth`.
    pub fn growth_profile(&self) -> Result<Vec<(u32, usize)>> {
        if self.is_truncated() {
            return Err(Error::precondition(
                "growth profile needs a fragment without window truncation",
            ));
        }
        let mut counts = vec![0usize; self.max_depth() as usize + 1];
        for v in &self.vertices {
            counts[v.depth as usize] += 1;
        }
        let mut acc = 0;
        Ok(counts
            .into_iter()
            .enumerate()
            .map(|(r, c)| {
                acc += c;
                (r as u32, acc)
            })
            .collect())
    }

    /// Checks the structural invariants: full out-degree at expanded
    /// vertices, targets present, and reverse darts between expanded
    /// vertices.
    pub fn check_invariants(&self) -> Result<()> {
        let m = self.degree();
        for (v, darts) in self.darts.iter().enumerate() {
            let vert = &self.vertices[v];
            if vert.expanded != !darts.is_empty() || (vert.expanded && darts.len() != m) {
                return Err(Error::Assertion(format!(
                    "vertex {} has {} darts (expanded = {})",
                    vert.tuple,
                    darts.len(),
                    vert.expanded
                )));
            }
            for d in darts {
                let target = self.vertices.get(d.to as usize).ok_or_else(|| {
                    Error::Assertion(format!("dart from {} points outside the fragment", vert.tuple))
                })?;
                if target.expanded {
                    let back = move_index(self.n, self.moves[d.mv as usize].inverse()) as u16;
                    let rev = self.darts[d.to as usize]
                        .iter()
                        .any(|r| r.mv == back && r.to as usize == v);
                    if !rev {
                        return Err(Error::Assertion(format!(
                            "missing reverse of {} from {}",
                            self.moves[d.mv as usize], vert.tuple
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// BFS parent pointers from `source` over the explored darts; returns
    /// for each reachable vertex the move word from `source`.
    pub fn paths_from(&self, source: u32) -> Vec<Option<(u32, u16)>> {
        let mut parent: Vec<Option<(u32, u16)>> = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        seen[source as usize] = true;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for d in &self.darts[v as usize] {
                if !seen[d.to as usize] {
                    seen[d.to as usize] = true;
                    parent[d.to as usize] = Some((v, d.mv));
                    queue.push_back(d.to);
                }
            }
        }
        parent
    }
}
