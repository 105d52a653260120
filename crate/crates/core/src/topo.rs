//! Vietoris–Rips probes of sampled fibers: Betti numbers b₀ and b₁ over GF(2)
//! on an ε-grid.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphoid::{FiberCloud, FiberPoint};
use crate::rational::{to_f64, Q};
use crate::xreal::XReal;

pub const MAX_CLOUD: usize = 512;

/// Tuples in S̄^m with the max-of-chordal product metric.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCloud {
    pub points: Vec<Vec<XReal>>,
    /// Witness base point of each tuple, when known.
    #[serde(default, skip_serializing_if = "Vec::is_empty", with = "crate::rational::serde_q::vec2")]
    pub provenance: Vec<Vec<Q>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Line {
    Fiber(FiberPoint),
    Tagged {
        point: Vec<XReal>,
    },
    Bare(Vec<XReal>),
    /// Header records such as `{"tool": ..., "manifest": ...}` are skipped.
    Meta {
        #[allow(dead_code)]
        tool: serde_json::Value,
    },
}

impl PointCloud {
    pub fn new(points: Vec<Vec<XReal>>) -> Result<Self> {
        let c = PointCloud { points, provenance: Vec::new() };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(first) = self.points.first() {
            if first.is_empty() {
                return Err(Error::Invalid("points need at least one coordinate".into()));
            }
            if let Some(p) = self.points.iter().find(|p| p.len() != first.len()) {
                return Err(Error::Arity { expected: first.len(), got: p.len() });
            }
        }
        if !self.provenance.is_empty() && self.provenance.len() != self.points.len() {
            return Err(Error::Invalid("provenance length differs from point count".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Member values in id order; witnesses become provenance.
    pub fn from_fiber(f: &FiberCloud) -> Result<Self> {
        let c = PointCloud {
            points: f.points.iter().map(|p| p.values.values().cloned().collect()).collect(),
            provenance: f.points.iter().map(|p| p.witness.clone()).collect(),
        };
        c.validate()?;
        Ok(c)
    }

    /// One point per line: a fiber sample record, `{"point": [...]}`, or a
    /// bare array of extended reals.
    pub fn from_jsonl(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        let mut provenance = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let l: Line = serde_json::from_str(line).map_err(|e| Error::Invalid(format!("line {}: {e}", n + 1)))?;
            match l {
                Line::Fiber(p) => {
                    points.push(p.values.into_values().collect());
                    provenance.push(p.witness);
                }
                Line::Tagged { point } | Line::Bare(point) => points.push(point),
                Line::Meta { .. } => {}
            }
        }
        if !provenance.is_empty() && provenance.len() != points.len() {
            provenance.clear();
        }
        let c = PointCloud { points, provenance };
        c.validate()?;
        Ok(c)
    }
}

fn angular_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| 2.0 * ((u - v) / 2.0).sin().abs()).fold(0.0, f64::max)
}

/// Product distance `max_k d(aₖ, bₖ)`.
pub fn distance(a: &[XReal], b: &[XReal]) -> f64 {
    let ang = |p: &[XReal]| p.iter().map(XReal::angle).collect::<Vec<_>>();
    angular_distance(&ang(a), &ang(b))
}

/// Chord of the largest gap between circularly consecutive samples of a
/// one-coordinate cloud.
pub fn max_circular_gap(c: &PointCloud) -> Result<f64> {
    if c.points.iter().any(|p| p.len() != 1) {
        return Err(Error::Invalid("circular gap needs one coordinate".into()));
    }
    let mut ang: Vec<f64> = c.points.iter().map(|p| p[0].angle()).collect();
    if ang.len() < 2 {
        return Ok(0.0);
    }
    ang.sort_by(f64::total_cmp);
    let mut gap = ang[0] + std::f64::consts::TAU - ang[ang.len() - 1];
    for w in ang.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    Ok(2.0 * (gap / 2.0).sin())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RipsSummary {
    #[serde(with = "crate::rational::serde_q")]
    pub eps: Q,
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub betti0: usize,
    pub betti1: usize,
}

struct Dist {
    n: usize,
    d: Vec<f64>,
}

impl Dist {
    fn new(c: &PointCloud) -> Self {
        let n = c.len();
        let angles: Vec<Vec<f64>> = c.points.iter().map(|p| p.iter().map(XReal::angle).collect()).collect();
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = angular_distance(&angles[i], &angles[j]);
                d[i * n + j] = v;
                d[j * n + i] = v;
            }
        }
        Dist { n, d }
    }

    fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }
}

fn check_size(c: &PointCloud) -> Result<()> {
    if c.len() > MAX_CLOUD {
        return Err(Error::CloudTooLarge { size: c.len(), cap: MAX_CLOUD });
    }
    c.validate()
}

fn positive(eps: &Q) -> Result<f64> {
    if *eps <= Q::from_integer(0.into()) {
        return Err(Error::Invalid("ε must be positive".into()));
    }
    Ok(to_f64(eps))
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Rips 2-skeleton at scale ε (edges where `d ≤ ε`) with b₀, b₁ over GF(2).
pub fn rips_betti(c: &PointCloud, eps: &Q) -> Result<RipsSummary> {
    check_size(c)?;
    let e = positive(eps)?;
    Ok(summary(&Dist::new(c), eps, e))
}

fn summary(dist: &Dist, eps: &Q, e: f64) -> RipsSummary {
    let n = dist.n;
    let mut nbr: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            if dist.get(i, j) <= e {
                index.insert((i, j), index.len());
                nbr[i].push(j);
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let edges = index.len();
    let betti0 = (0..n).filter(|&i| find(&mut parent, i) == i).count();
    let cycles = edges + betti0 - n;

    let mut adj = vec![false; n * n];
    for &(i, j) in index.keys() {
        adj[i * n + j] = true;
    }
    let mut triangles = 0usize;
    let mut rank = 0usize;
    let mut pivots: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..n {
        for (a, &j) in nbr[i].iter().enumerate() {
            for &k in &nbr[i][a + 1..] {
                if !adj[j * n + k] {
                    continue;
                }
                triangles += 1;
                if rank == cycles {
                    continue;
                }
                let mut col = vec![index[&(i, j)], index[&(i, k)], index[&(j, k)]];
                col.sort_unstable();
                while let Some(&low) = col.last() {
                    match pivots.get(&low) {
                        Some(p) => col = xor(&col, p),
                        None => break,
                    }
                }
                if let Some(&low) = col.last() {
                    pivots.insert(low, col);
                    rank += 1;
                }
            }
        }
    }
    RipsSummary { eps: eps.clone(), vertices: n, edges, triangles, betti0, betti1: cycles - rank }
}

fn xor(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Maximal run of consecutive grid scales with constant (b₀, b₁).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableRun {
    #[serde(with = "crate::rational::serde_q")]
    pub lo: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub hi: Q,
    pub steps: usize,
    pub betti0: usize,
    pub betti1: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableRange {
    pub summaries: Vec<RipsSummary>,
    pub longest: Option<StableRun>,
}

/// Summaries over an ascending grid and the longest constant-(b₀, b₁) run,
/// counted in grid steps; ties go to the wider ε-extent, then the earlier run.
pub fn stable_range(c: &PointCloud, grid: &[Q]) -> Result<StableRange> {
    check_size(c)?;
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("ε-grid must be strictly ascending".into()));
    }
    let dist = Dist::new(c);
    let mut summaries = Vec::with_capacity(grid.len());
    for eps in grid {
        let e = positive(eps)?;
        summaries.push(summary(&dist, eps, e));
    }
    let mut best: Option<StableRun> = None;
    let mut start = 0;
    for i in 0..summaries.len() {
        let last = i + 1 == summaries.len();
        let same = |a: &RipsSummary, b: &RipsSummary| (a.betti0, a.betti1) == (b.betti0, b.betti1);
        if last || !same(&summaries[i], &summaries[i + 1]) {
            let run = StableRun {
                lo: grid[start].clone(),
                hi: grid[i].clone(),
                steps: i + 1 - start,
                betti0: summaries[i].betti0,
                betti1: summaries[i].betti1,
            };
            let better = match &best {
                None => true,
                Some(b) => run.steps > b.steps || (run.steps == b.steps && &run.hi - &run.lo > &b.hi - &b.lo),
            };
            if better {
                best = Some(run);
            }
            start = i + 1;
        }
    }
    Ok(StableRange { summaries, longest: best })
}

/// `count` scales `lo + k·(hi − lo)/(count − 1)`.
pub fn linear_grid(lo: &Q, hi: &Q, count: usize) -> Vec<Q> {
    match count {
        0 => Vec::new(),
        1 => vec![lo.clone()],
        _ => {
            let step = (hi - lo) / Q::from_integer((count as i64 - 1).into());
            (0..count).map(|k| lo + &step * Q::from_integer((k as i64).into())).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{from_f64_dyadic, qr};

    fn circle(n: usize) -> PointCloud {
        let pts = (0..n)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / n as f64 - std::f64::consts::PI + 0.01;
                vec![XReal::Finite(from_f64_dyadic((t / 2.0).tan(), 50))]
            })
            .collect();
        PointCloud::new(pts).unwrap()
    }

    #[test]
    fn circle_has_one_loop() {
        let spacing = 2.0 * (std::f64::consts::PI / 20.0).sin();
        let eps = from_f64_dyadic(1.2 * spacing, 40);
        let s = rips_betti(&circle(20), &eps).unwrap();
        assert_eq!((s.betti0, s.betti1), (1, 1));
        assert_eq!(s.edges, 20);
        assert_eq!(s.triangles, 0);
    }

    #[test]
    fn two_clusters() {
        let mut pts = Vec::new();
        for k in 0..10 {
            pts.push(vec![XReal::Finite(qr(k, 1000)), XReal::zero()]);
            pts.push(vec![XReal::Finite(qr(k, 1000)), XReal::Finite(qr(1, 1))]);
        }
        let s = rips_betti(&PointCloud::new(pts).unwrap(), &qr(1, 10)).unwrap();
        assert_eq!((s.betti0, s.betti1), (2, 0));
    }

    #[test]
    fn full_simplex_and_single_point() {
        let s = rips_betti(&circle(30), &qr(5, 2)).unwrap();
        assert_eq!((s.betti0, s.betti1, s.edges, s.triangles), (1, 0, 435, 4060));
        let one = PointCloud::new(vec![vec![XReal::Infinity]]).unwrap();
        let r = stable_range(&one, &linear_grid(&qr(1, 10), &qr(2, 1), 8)).unwrap();
        assert!(r.summaries.iter().all(|s| (s.betti0, s.betti1) == (1, 0)));
        assert_eq!(r.longest.unwrap().steps, 8);
    }

    #[test]
    fn circle_scan() {
        let r = stable_range(&circle(40), &linear_grid(&qr(1, 20), &qr(2, 1), 40)).unwrap();
        let best = r.longest.unwrap();
        assert_eq!((best.betti0, best.betti1), (1, 1));
    }

    fn fiber(expr: &str, a: Q, b: Q) -> PointCloud {
        let e = crate::ratfunc::FunctionFamily::from_exprs(&[("f", expr)], None).unwrap();
        let base = [XReal::Finite(a), XReal::Finite(b)];
        PointCloud::from_fiber(&crate::graphoid::fiber_sample(&e, &base, 64, &qr(1, 1000), 7).unwrap()).unwrap()
    }

    #[test]
    fn fibers_over_singular_points_are_circles() {
        let c = fiber("x/y", qr(0, 1), qr(0, 1));
        let gap = max_circular_gap(&c).unwrap();
        let s = rips_betti(&c, &from_f64_dyadic(2.0 * gap, 40)).unwrap();
        assert_eq!((s.betti0, s.betti1), (1, 1));
        let grid = linear_grid(&qr(1, 20), &qr(2, 1), 40);
        for (expr, a, b) in
            [("x/y", qr(0, 1), qr(0, 1)), ("(x-1)/(y-2)", qr(1, 1), qr(2, 1)), ("(x+1/2)/(y-1/3)", qr(-1, 2), qr(1, 3))]
        {
            let best = stable_range(&fiber(expr, a, b), &grid).unwrap().longest.unwrap();
            assert_eq!((best.betti0, best.betti1), (1, 1), "{expr}");
        }
    }

    #[test]
    fn limits() {
        let big = PointCloud::new(vec![vec![XReal::zero()]; MAX_CLOUD + 1]).unwrap();
        assert!(matches!(rips_betti(&big, &qr(1, 2)), Err(Error::CloudTooLarge { .. })));
        assert!(rips_betti(&circle(3), &qr(0, 1)).is_err());
        assert!(PointCloud::new(vec![vec![XReal::zero()], vec![]]).is_err());
        let text = "[\"0\"]\n{\"point\": [\"inf\"]}\n\n";
        assert_eq!(PointCloud::from_jsonl(text).unwrap().len(), 2);
    }
}
