//! Isoperimetric ratios, closed-walk counts and spectral estimates.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::explorer::{BallOptions, Fragment};
use crate::group::Group;
use crate::nielsen::Tuple;

/// Boundary measurement of a finite vertex set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsoReport {
    pub set_size: usize,
    pub boundary: u64,
    #[serde(skip)]
    pub ratio: Ratio<u64>,
    pub ratio_num: u64,
    pub ratio_den: u64,
    pub ratio_decimal: f64,
    pub description: String,
}

impl IsoReport {
    fn new(set_size: usize, boundary: u64, description: String) -> IsoReport {
        let ratio = Ratio::new(boundary, set_size as u64);
        IsoReport {
            set_size,
            boundary,
            ratio,
            ratio_num: *ratio.numer(),
            ratio_den: *ratio.denom(),
            ratio_decimal: *ratio.numer() as f64 / *ratio.denom() as f64,
            description,
        }
    }
}

/// `|∂S| / |S|` where `∂S` is the set of darts from `S` to its complement.
///
/// Every member of `S` must be expanded. A dart and its reverse form one
/// edge, so counting the darts that leave `S` counts each cut edge once;
/// loops never leave.
pub fn iso_ratio(frag: &Fragment, set: &[u32]) -> Result<IsoReport> {
    if set.is_empty() {
        return Err(Error::usage("vertex set S is empty"));
    }
    let mut member = vec![false; frag.len()];
    for &v in set {
        let vert = frag
            .vertices()
            .get(v as usize)
            .ok_or_else(|| Error::usage(format!("vertex id {v} is not in the fragment")))?;
        if !vert.expanded {
            return Err(Error::usage(format!("vertex {} of S is not expanded", vert.tuple)));
        }
        member[v as usize] = true;
    }
    let size = member.iter().filter(|&&m| m).count();
    let mut boundary = 0u64;
    for (v, _) in member.iter().enumerate().filter(|(_, &m)| m) {
        boundary += frag.darts(v as u32).iter().filter(|d| !member[d.to as usize]).count() as u64;
    }
    Ok(IsoReport::new(size, boundary, "custom".into()))
}

pub fn iso_ratio_of_tuples(frag: &Fragment, set: &[Tuple]) -> Result<IsoReport> {
    let ids = set
        .iter()
        .map(|t| {
            frag.id_of_tuple(t)
                .ok_or_else(|| Error::usage(format!("tuple {t} is not in the fragment")))
        })
        .collect::<Result<Vec<_>>>()?;
    iso_ratio(frag, &ids)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// All BFS balls around the root.
    Balls,
    /// Every prefix of the canonical (depth, key) vertex order.
    Sweep,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "balls" => Ok(Strategy::Balls),
            "sweep" => Ok(Strategy::Sweep),
            _ => Err(Error::usage(format!("unknown strategy {s:?} (balls, sweep)"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Balls => "balls",
            Strategy::Sweep => "sweep",
        })
    }
}

/// Ratios of the nested prefix sets of the canonical vertex order, stopping
/// at the first unexpanded vertex or once `max_size` is exceeded.
///
/// Adding an expanded vertex `v` to `S` turns each dart from `v` into `S`
/// (and its reverse) from a boundary dart into an interior one, so the
/// boundary is updated in `O(deg)` per vertex.
fn prefix_sweep(frag: &Fragment, max_size: Option<usize>, mut visit: impl FnMut(usize, u64, u32)) {
    let mut member = vec![false; frag.len()];
    let mut boundary: i64 = 0;
    for (v, vert) in frag.vertices().iter().enumerate() {
        if !vert.expanded || max_size.is_some_and(|m| v + 1 > m) {
            break;
        }
        for d in frag.darts(v as u32) {
            let t = d.to as usize;
            if t == v {
                continue;
            }
            boundary += if member[t] { -1 } else { 1 };
        }
        member[v] = true;
        visit(v + 1, boundary as u64, vert.depth);
    }
}

/// Ratios of the balls `B_0, B_1, ...` that are fully expanded.
pub fn ball_reports(frag: &Fragment, max_size: Option<usize>) -> Vec<IsoReport> {
    let verts = frag.vertices();
    let mut out = Vec::new();
    prefix_sweep(frag, max_size, |size, boundary, depth| {
        let closes_ball = verts.get(size).is_none_or(|next| next.depth > depth);
        if closes_ball {
            out.push(IsoReport::new(size, boundary, format!("ball radius {depth}")));
        }
    });
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CheegerResult {
    pub strategy: String,
    pub best: IsoReport,
    pub sets_evaluated: usize,
    /// Always true: a finite search only bounds `h` from above.
    pub upper_bound: bool,
}

pub fn cheeger_search(frag: &Fragment, strategy: Strategy, max_size: Option<usize>) -> Result<CheegerResult> {
    let candidates = match strategy {
        Strategy::Balls => ball_reports(frag, max_size),
        Strategy::Sweep => {
            let mut out = Vec::new();
            prefix_sweep(frag, max_size, |size, boundary, _| {
                out.push(IsoReport::new(size, boundary, format!("sweep prefix {size}")));
            });
            out
        }
    };
    let sets_evaluated = candidates.len();
    let best = candidates
        .into_iter()
        .min_by(|a, b| a.ratio.cmp(&b.ratio).then(a.set_size.cmp(&b.set_size)))
        .ok_or_else(|| Error::usage("fragment has no fully expanded candidate set"))?;
    Ok(CheegerResult {
        strategy: strategy.to_string(),
        best,
        sets_evaluated,
        upper_bound: true,
    })
}

/// Ball radius that [`closed_walks`] explores for walks of length `k_max`.
pub fn walk_radius(k_max: usize) -> u32 {
    k_max.div_ceil(2) as u32 + 1
}

/// Exact closed-walk counts `a_0..=a_k_max` at `root`, counting move
/// sequences.
pub fn closed_walks(group: &Group, root: &Tuple, k_max: usize, window: Option<u64>, cap: usize) -> Result<Vec<u128>> {
    let opts = BallOptions { window, cap };
    let frag = Fragment::ball_with(group, root, walk_radius(k_max), &opts)?;
    closed_walks_in(&frag, k_max)
}

/// Closed walks at the root of a prepared fragment. Every vertex within
/// distance `ceil(k_max / 2)` of the root must be expanded.
pub fn closed_walks_in(frag: &Fragment, k_max: usize) -> Result<Vec<u128>> {
    let need = k_max.div_ceil(2) as u32;
    if let Some(v) = frag.vertices().iter().find(|v| v.depth <= need && !v.expanded) {
        return Err(Error::precondition(format!(
            "closed walks of length {k_max} need every vertex within distance {need} of the root \
             in the window; {} at distance {} is not",
            v.tuple, v.depth
        )));
    }
    let depth: Vec<u32> = frag.vertices().iter().map(|v| v.depth).collect();
    let mut cur = vec![0u128; frag.len()];
    cur[0] = 1;
    let mut out = vec![1u128];
    for s in 0..k_max {
        // a walk that must be back in k_max - s - 1 steps cannot go deeper
        let limit = (k_max - s - 1) as u32;
        let mut next = vec![0u128; frag.len()];
        for (v, &count) in cur.iter().enumerate() {
            if count == 0 {
                continue;
            }
            for d in frag.darts(v as u32) {
                let t = d.to as usize;
                if depth[t] <= limit {
                    next[t] = next[t].checked_add(count).ok_or(Error::Overflow("closed walk count"))?;
                }
            }
        }
        out.push(next[0]);
        cur = next;
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralEstimate {
    pub k: usize,
    pub a_k: u128,
    pub m: usize,
    pub rho_hat: f64,
    pub note: &'static str,
}

pub const SPECTRAL_NOTE: &str = "finite-k sample of a limsup; not a bound in either direction";

pub fn spectral_from_count(k: usize, a_k: u128, m: usize) -> Result<SpectralEstimate> {
    if k == 0 {
        return Err(Error::usage("k must be at least 1"));
    }
    let rho_hat = if a_k == 0 {
        0.0
    } else {
        (a_k as f64).powf(1.0 / k as f64) / m as f64
    };
    Ok(SpectralEstimate {
        k,
        a_k,
        m,
        rho_hat,
        note: SPECTRAL_NOTE,
    })
}

/// `(1/m) a_k^{1/k}` from the exact count `a_k`.
pub fn spectral_estimate(group: &Group, root: &Tuple, k: usize, window: Option<u64>, cap: usize) -> Result<SpectralEstimate> {
    if k == 0 {
        return Err(Error::usage("k must be at least 1"));
    }
    let walks = closed_walks(group, root, k, window, cap)?;
    let m = crate::nielsen::move_set(root.len()).len();
    spectral_from_count(k, walks[k], m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explorer::DEFAULT_VERTEX_CAP;
    use crate::group::{Element, GroupSpec};
    use crate::nielsen::{apply_move, int_tuple, move_set};

    fn z() -> Group {
        Group::new(GroupSpec::Integers).unwrap()
    }

    fn dihedral_root() -> (Group, Tuple) {
        let d = Group::new(GroupSpec::InfiniteDihedral).unwrap();
        let t = Tuple::new(vec![Element::Dihedral { t: 0, flip: true }, Element::Dihedral { t: 1, flip: true }]);
        (d, t)
    }

    #[test]
    fn single_vertex_boundary() {
        let frag = Fragment::ball(&z(), &int_tuple(&[1, 1]), 1).unwrap();
        let r = iso_ratio(&frag, &[0]).unwrap();
        assert_eq!((r.boundary, r.ratio), (10, Ratio::from_integer(10)));
    }

    #[test]
    fn whole_finite_graph_has_no_boundary() {
        let frag = Fragment::ball(&z(), &int_tuple(&[1]), 4).unwrap();
        let r = iso_ratio(&frag, &[0, 1]).unwrap();
        assert_eq!(r.ratio, Ratio::from_integer(0));
        let best = cheeger_search(&frag, Strategy::Balls, None).unwrap();
        assert_eq!(best.best.ratio, Ratio::from_integer(0));
    }

    #[test]
    fn empty_or_unexpanded_sets_rejected() {
        let frag = Fragment::ball(&z(), &int_tuple(&[1, 1]), 1).unwrap();
        assert!(matches!(iso_ratio(&frag, &[]), Err(Error::Usage(_))));
        assert!(matches!(iso_ratio(&frag, &[0, 1]), Err(Error::Usage(_))));
        let bare = Fragment::ball(&z(), &int_tuple(&[1, 1]), 0).unwrap();
        assert!(matches!(cheeger_search(&bare, Strategy::Sweep, None), Err(Error::Usage(_))));
    }

    #[test]
    fn incremental_sweep_matches_direct_count() {
        let (d, root) = dihedral_root();
        let frag = Fragment::ball(&d, &root, 6).unwrap();
        let mut checked = 0;
        prefix_sweep(&frag, None, |size, boundary, _| {
            let ids: Vec<u32> = (0..size as u32).collect();
            assert_eq!(iso_ratio(&frag, &ids).unwrap().boundary, boundary);
            checked += 1;
        });
        assert_eq!(checked, frag.expanded_count());
    }

    #[test]
    fn ball_ratios_n2_integers() {
        let frag = Fragment::ball(&z(), &int_tuple(&[1, 1]), 5).unwrap();
        let ratios: Vec<Ratio<u64>> = ball_reports(&frag, None).into_iter().map(|r| r.ratio).collect();
        assert_eq!(ratios[0], Ratio::from_integer(10));
        assert_eq!(ratios[1], Ratio::new(32, 7));
        assert!(ratios[2..].iter().all(|&r| r == Ratio::new(10, 3)));
    }

    fn brute_force_walks(group: &Group, root: &Tuple, k_max: usize) -> Vec<u128> {
        let moves = move_set(root.len());
        let mut counts = vec![0u128; k_max + 1];
        fn go(g: &Group, root: &Tuple, cur: &Tuple, depth: usize, k_max: usize, moves: &[crate::NielsenMove], counts: &mut [u128]) {
            if cur == root {
                counts[depth] += 1;
            }
            if depth == k_max {
                return;
            }
            for &m in moves {
                let next = apply_move(g, cur, m).unwrap();
                go(g, root, &next, depth + 1, k_max, moves, counts);
            }
        }
        go(group, root, root, 0, k_max, &moves, &mut counts);
        counts
    }

    #[test]
    fn dp_matches_brute_force_small_k() {
        let (d, root) = dihedral_root();
        for (g, t) in [(z(), int_tuple(&[1, 1])), (d, root)] {
            let dp = closed_walks(&g, &t, 4, None, DEFAULT_VERTEX_CAP).unwrap();
            assert_eq!(dp, brute_force_walks(&g, &t, 4));
        }
    }

    #[test]
    fn n1_integers_walks() {
        let walks = closed_walks(&z(), &int_tuple(&[1]), 8, None, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(walks, vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
        let est = spectral_estimate(&z(), &int_tuple(&[1]), 8, None, DEFAULT_VERTEX_CAP).unwrap();
        assert!((est.rho_hat - 1.0).abs() < 1e-12);
    }

    #[test]
    fn window_too_small_is_a_precondition_error() {
        let r = closed_walks(&z(), &int_tuple(&[1, 1]), 8, Some(2), DEFAULT_VERTEX_CAP);
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn k_zero_rejected() {
        let r = spectral_estimate(&z(), &int_tuple(&[1, 1]), 0, None, DEFAULT_VERTEX_CAP);
        assert!(matches!(r, Err(Error::Usage(_))));
    }
}
