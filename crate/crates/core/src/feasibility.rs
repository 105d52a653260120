//! Strict polynomial inequality systems on boxes of S̄ⁿ, decided by interval
//! branch-and-prune with exact witness checks.
//!
//! A [`Verdict::Witness`] is a rational point re-checked exactly. A
//! [`Verdict::Infeasible`] carries a bisection tree whose every leaf names a
//! constraint (or a sum of two) whose enclosure is violated on that leaf, and
//! [`verify_cover`] re-derives it independently of the search.

use std::collections::{HashMap, VecDeque};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chart::{decompose, Chart, Piece};
use crate::error::{Error, Result};
use crate::interval::Iv;
use crate::poly::Poly;
use crate::ratfunc::{FunctionFamily, Region};
use crate::rational::{midpoint, pow2, Q};
use crate::sturm::SturmSeq;
use crate::upoly::UPoly;
use crate::xreal::XReal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">0")]
    Gt,
    #[serde(rename = "<0")]
    Lt,
    #[serde(rename = "!=0")]
    Ne,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub poly: Poly,
    pub rel: Relation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl Constraint {
    pub fn gt(poly: Poly) -> Self {
        Constraint { poly, rel: Relation::Gt, label: None }
    }

    pub fn labeled(mut self, l: impl Into<String>) -> Self {
        self.label = Some(l.into());
        self
    }

    pub fn holds_at(&self, x: &Q, y: &Q) -> bool {
        let v = self.poly.eval(x, y);
        match self.rel {
            Relation::Gt => v.is_positive(),
            Relation::Lt => v.is_negative(),
            Relation::Ne => !v.is_zero(),
        }
    }
}

/// Neighborhood of a target value with rational bounds `alpha < beta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    /// The open interval ]alpha, beta[.
    Finite {
        #[serde(with = "crate::rational::serde_q")]
        alpha: Q,
        #[serde(with = "crate::rational::serde_q")]
        beta: Q,
    },
    /// S̄ ∖ [alpha, beta], a neighborhood of ∞.
    AtInfinity {
        #[serde(with = "crate::rational::serde_q")]
        alpha: Q,
        #[serde(with = "crate::rational::serde_q")]
        beta: Q,
    },
}

impl Target {
    fn bounds(&self) -> (&Q, &Q) {
        match self {
            Target::Finite { alpha, beta } | Target::AtInfinity { alpha, beta } => (alpha, beta),
        }
    }

    pub fn contains(&self, v: &XReal) -> bool {
        match (self, v) {
            (Target::Finite { alpha, beta }, XReal::Finite(t)) => alpha < t && t < beta,
            (Target::Finite { .. }, XReal::Infinity) => false,
            (Target::AtInfinity { alpha, beta }, XReal::Finite(t)) => t < alpha || t > beta,
            (Target::AtInfinity { .. }, XReal::Infinity) => true,
        }
    }
}

/// Which part of the family partition a constraint group came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TargetClass {
    /// Finite target α < f < β.
    E0,
    /// Infinite target, branch f > β.
    EPlus,
    /// Infinite target, branch f < α.
    EMinus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    pub member: String,
    pub class: TargetClass,
    #[serde(with = "crate::rational::serde_q")]
    pub alpha: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub beta: Q,
    /// Sign assumed for the denominator; 0 when it is a constant.
    pub q_sign: i8,
    /// Indices into the system's constraints.
    pub constraints: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalitySystem {
    pub nvars: usize,
    pub constraints: Vec<Constraint>,
    pub region: Region,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<Group>,
}

impl InequalitySystem {
    pub fn new(nvars: usize, constraints: Vec<Constraint>, region: Region) -> Result<Self> {
        let s = InequalitySystem { nvars, constraints, region, groups: Vec::new() };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=2).contains(&self.nvars) {
            return Err(Error::Invalid(format!("systems have 1 or 2 variables, not {}", self.nvars)));
        }
        if self.region.dim() != self.nvars {
            return Err(Error::Arity { expected: self.nvars, got: self.region.dim() });
        }
        if self.nvars == 1 && self.constraints.iter().any(|c| c.poly.uses_y()) {
            return Err(Error::Invalid("one-variable system mentions y".into()));
        }
        for g in &self.groups {
            if g.alpha >= g.beta {
                return Err(Error::InvalidTarget { id: g.member.clone(), msg: "needs alpha < beta".into() });
            }
            if g.constraints.iter().any(|&i| i >= self.constraints.len()) {
                return Err(Error::Invalid(format!("group `{}` names a missing constraint", g.member)));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: InequalitySystem = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("system: {e}")))?;
        s.validate()?;
        Ok(s)
    }

    /// Exact check that a finite point lies in the region and satisfies
    /// every constraint.
    pub fn satisfied_by(&self, point: &[Q]) -> bool {
        if point.len() != self.nvars || !self.region.contains_finite(point) {
            return false;
        }
        let zero = Q::zero();
        let y = point.get(1).unwrap_or(&zero);
        self.constraints.iter().all(|c| c.holds_at(&point[0], y))
    }
}

struct Branch {
    constraints: Vec<Constraint>,
    class: TargetClass,
    q_sign: i8,
}

fn member_branches(id: &str, p: &Poly, q: &Poly, target: &Target) -> Vec<Branch> {
    let (alpha, beta) = target.bounds();
    let lower = p.sub(&q.scale(alpha)); // p - αq
    let upper = q.scale(beta).sub(p); // βq - p
    let above = p.sub(&q.scale(beta)); // p - βq
    let below = q.scale(alpha).sub(p); // αq - p
    let signs: Vec<i8> = match q.constant_value() {
        Some(c) => vec![if c.is_positive() { 0 } else { -2 }],
        None => vec![1, -1],
    };
    let mut out = Vec::new();
    for s in signs {
        // s = 0 or -2 mark a constant denominator of that sign
        let flip = s < 0;
        let orient = |h: &Poly| if flip { h.neg() } else { h.clone() };
        let mut head = Vec::new();
        if s == 1 || s == -1 {
            head.push(Constraint::gt(orient(q)).labeled(format!("{id}: {}q>0", if flip { "-" } else { "" })));
        }
        let sign_out = if s.abs() == 1 { s } else { 0 };
        match target {
            Target::Finite { .. } => {
                let mut c = head.clone();
                c.push(Constraint::gt(orient(&lower)).labeled(format!("{id}: p-alpha*q")));
                c.push(Constraint::gt(orient(&upper)).labeled(format!("{id}: beta*q-p")));
                out.push(Branch { constraints: c, class: TargetClass::E0, q_sign: sign_out });
            }
            Target::AtInfinity { .. } => {
                let mut c = head.clone();
                c.push(Constraint::gt(orient(&above)).labeled(format!("{id}: p-beta*q")));
                out.push(Branch { constraints: c, class: TargetClass::EPlus, q_sign: sign_out });
                let mut c = head;
                c.push(Constraint::gt(orient(&below)).labeled(format!("{id}: alpha*q-p")));
                out.push(Branch { constraints: c, class: TargetClass::EMinus, q_sign: sign_out });
            }
        }
    }
    out
}

/// The sign-branch systems whose union expresses `f(x) ∈ target_f` for all
/// members. Iterating is lazy; the number of systems is the product of the
/// per-member branch counts.
pub struct SystemBranches {
    nvars: usize,
    region: Region,
    ids: Vec<String>,
    alphas: Vec<(Q, Q)>,
    per: Vec<Vec<Branch>>,
    counter: Vec<usize>,
    done: bool,
}

impl SystemBranches {
    pub fn len(&self) -> usize {
        self.per.iter().map(|b| b.len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Iterator for SystemBranches {
    type Item = InequalitySystem;

    fn next(&mut self) -> Option<InequalitySystem> {
        if self.done {
            return None;
        }
        let mut constraints = Vec::new();
        let mut groups = Vec::new();
        for (k, &c) in self.counter.iter().enumerate() {
            let b = &self.per[k][c];
            let start = constraints.len();
            constraints.extend(b.constraints.iter().cloned());
            groups.push(Group {
                member: self.ids[k].clone(),
                class: b.class,
                alpha: self.alphas[k].0.clone(),
                beta: self.alphas[k].1.clone(),
                q_sign: b.q_sign,
                constraints: (start..constraints.len()).collect(),
            });
        }
        // advance the mixed-radix counter
        let mut k = 0;
        loop {
            if k == self.counter.len() {
                self.done = true;
                break;
            }
            self.counter[k] += 1;
            if self.counter[k] < self.per[k].len() {
                break;
            }
            self.counter[k] = 0;
            k += 1;
        }
        Some(InequalitySystem { nvars: self.nvars, constraints, region: self.region.clone(), groups })
    }
}

/// Lazy form of [`build_system`].
pub fn system_branches(e: &FunctionFamily, targets: &[Target], region: &Region) -> Result<SystemBranches> {
    if targets.len() != e.len() {
        return Err(Error::Arity { expected: e.len(), got: targets.len() });
    }
    if region.dim() != e.nvars() {
        return Err(Error::Arity { expected: e.nvars(), got: region.dim() });
    }
    let mut per = Vec::new();
    let mut alphas = Vec::new();
    let mut ids = Vec::new();
    for (m, t) in e.members().iter().zip(targets) {
        let (a, b) = t.bounds();
        if a >= b {
            return Err(Error::InvalidTarget { id: m.id.clone(), msg: "needs alpha < beta".into() });
        }
        per.push(member_branches(&m.id, m.f.numer(), m.f.denom(), t));
        alphas.push((a.clone(), b.clone()));
        ids.push(m.id.clone());
    }
    Ok(SystemBranches {
        nvars: e.nvars(),
        region: region.clone(),
        ids,
        alphas,
        counter: vec![0; per.len()],
        per,
        done: false,
    })
}

/// One system per sign branch of the denominators (and per side of each ∞
/// target). Points where a denominator vanishes are not covered.
pub fn build_system(e: &FunctionFamily, targets: &[Target], region: &Region) -> Result<Vec<InequalitySystem>> {
    Ok(system_branches(e, targets, region)?.collect())
}

/// Why a leaf of an infeasibility cover is empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    /// The enclosure of this constraint violates its relation.
    Single(usize),
    /// Both constraints are `> 0`-type and the enclosure of the sum of their
    /// normalized forms is `<= 0`.
    PairSum(usize, usize),
    /// The box has a coordinate fixed at ∞, so it holds no point of ℝⁿ.
    NoFinitePoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverNode {
    Leaf(Reason),
    Split { axis: usize, lo: Box<CoverNode>, hi: Box<CoverNode> },
}

impl CoverNode {
    fn leaves(&self) -> usize {
        match self {
            CoverNode::Leaf(_) => 1,
            CoverNode::Split { lo, hi, .. } => lo.leaves() + hi.leaves(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverRoot {
    pub pieces: Vec<Piece>,
    pub tree: CoverNode,
}

/// Bisection trees over the chart boxes of the region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    pub roots: Vec<CoverRoot>,
}

impl Cover {
    pub fn num_boxes(&self) -> usize {
        self.roots.iter().map(|r| r.tree.leaves()).sum()
    }

    /// Every leaf as a box of S̄ⁿ with its reason.
    pub fn leaves(&self) -> Vec<(Region, Reason)> {
        fn walk(p: &[Piece], n: &CoverNode, out: &mut Vec<(Region, Reason)>) {
            match n {
                CoverNode::Leaf(r) => out.push((Region::new(p.iter().map(|x| x.to_arc()).collect()), r.clone())),
                CoverNode::Split { axis, lo, hi } => {
                    let (a, b) = p[*axis].split();
                    let mut pa = p.to_vec();
                    pa[*axis] = a;
                    walk(&pa, lo, out);
                    pa[*axis] = b;
                    walk(&pa, hi, out);
                }
            }
        }
        let mut out = Vec::new();
        for r in &self.roots {
            walk(&r.pieces, &r.tree, &mut out);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Witness {
        #[serde(with = "crate::rational::serde_q::vec")]
        point: Vec<Q>,
    },
    Infeasible {
        cover: Cover,
    },
    Unknown {
        depth: u32,
        steps: usize,
    },
}

impl Verdict {
    pub fn is_witness(&self) -> bool {
        matches!(self, Verdict::Witness { .. })
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, Verdict::Infeasible { .. })
    }
}

#[derive(Clone, Debug)]
pub struct FeasOptions {
    pub max_depth: u32,
    pub max_steps: usize,
    /// Run one-dimensional fiber solves on boxes whose depth is a multiple
    /// of this (0 disables them).
    pub fiber_every: u32,
    /// Candidate points checked before the search starts.
    pub hints: Vec<Vec<Q>>,
}

impl Default for FeasOptions {
    fn default() -> Self {
        FeasOptions { max_depth: 40, max_steps: 1_000_000, fiber_every: 3, hints: Vec::new() }
    }
}

pub fn feasible(sys: &InequalitySystem, max_depth: u32) -> Verdict {
    feasible_with(sys, &FeasOptions { max_depth, ..FeasOptions::default() })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Pos,
    NonZero,
}

/// Constraints rewritten as `h > 0` or `h != 0`.
fn normalized(sys: &InequalitySystem) -> Vec<(Poly, Kind)> {
    sys.constraints
        .iter()
        .map(|c| match c.rel {
            Relation::Gt => (c.poly.clone(), Kind::Pos),
            Relation::Lt => (c.poly.neg(), Kind::Pos),
            Relation::Ne => (c.poly.clone(), Kind::NonZero),
        })
        .collect()
}

const MAX_PAIR_CONSTRAINTS: usize = 10;

struct ChartPolys {
    hs: Vec<Poly>,
    pairs: Vec<(usize, usize, Poly)>,
}

/// Pulls `h` to the chart: `u^d h(1/u)` times `sign(u)^d` on the negative
/// side, so its sign matches that of `h` wherever u ≠ 0.
fn to_chart(h: &Poly, cx: Chart, cy: Chart) -> Poly {
    let mut g = h.clone();
    if cx != Chart::X {
        let d = g.deg_x();
        g = g.reverse_x();
        if cx == Chart::UNeg && d % 2 == 1 {
            g = g.neg();
        }
    }
    if cy != Chart::X {
        let d = g.deg_y();
        g = g.reverse_y();
        if cy == Chart::UNeg && d % 2 == 1 {
            g = g.neg();
        }
    }
    g
}

struct Engine<'a> {
    sys: &'a InequalitySystem,
    cons: Vec<(Poly, Kind)>,
    charts: HashMap<(Chart, Chart), ChartPolys>,
}

fn chart_key(p: &[Piece]) -> (Chart, Chart) {
    (p[0].chart(), p.get(1).map_or(Chart::X, |q| q.chart()))
}

fn box_ivs(p: &[Piece]) -> (Iv, Iv) {
    (p[0].iv().clone(), p.get(1).map_or_else(Iv::zero, |q| q.iv().clone()))
}

impl<'a> Engine<'a> {
    fn new(sys: &'a InequalitySystem) -> Self {
        Engine { sys, cons: normalized(sys), charts: HashMap::new() }
    }

    fn chart(&mut self, key: (Chart, Chart)) -> &ChartPolys {
        let cons = &self.cons;
        self.charts.entry(key).or_insert_with(|| {
            let hs: Vec<Poly> = cons.iter().map(|(h, _)| to_chart(h, key.0, key.1)).collect();
            let pos: Vec<usize> = (0..cons.len()).filter(|&i| cons[i].1 == Kind::Pos).collect();
            let mut pairs = Vec::new();
            if pos.len() <= MAX_PAIR_CONSTRAINTS {
                for (a, &i) in pos.iter().enumerate() {
                    for &j in &pos[a + 1..] {
                        pairs.push((i, j, hs[i].add(&hs[j])));
                    }
                }
            }
            ChartPolys { hs, pairs }
        })
    }

    fn to_global(&self, pieces: &[Piece], local: &[Q]) -> Option<Vec<Q>> {
        pieces.iter().zip(local).map(|(p, t)| p.global(t)).collect()
    }

    fn check(&self, pt: &[Q]) -> bool {
        self.sys.satisfied_by(pt)
    }

    /// Enclosure-based status of every constraint on the box:
    /// `Err(reason)` when certified empty, otherwise the satisfied mask.
    fn classify(&mut self, pieces: &[Piece], mask: u64) -> std::result::Result<u64, Reason> {
        if pieces.iter().any(|p| matches!(p, Piece::U(iv) if iv.lo.is_zero() && iv.hi.is_zero())) {
            return Err(Reason::NoFinitePoint);
        }
        let (ix, iy) = box_ivs(pieces);
        let key = chart_key(pieces);
        let kinds: Vec<Kind> = self.cons.iter().map(|c| c.1).collect();
        let cp = self.chart(key);
        let mut mask = mask;
        for (i, h) in cp.hs.iter().enumerate() {
            if i < 64 && mask & (1 << i) != 0 {
                continue;
            }
            let e = h.eval_iv(&ix, &iy);
            match kinds[i] {
                Kind::Pos => {
                    if !e.hi.is_positive() {
                        return Err(Reason::Single(i));
                    }
                    if e.lo.is_positive() && i < 64 {
                        mask |= 1 << i;
                    }
                }
                Kind::NonZero => {
                    if e.lo.is_zero() && e.hi.is_zero() {
                        return Err(Reason::Single(i));
                    }
                    if !e.contains_zero() && i < 64 {
                        mask |= 1 << i;
                    }
                }
            }
        }
        for (i, j, h) in &cp.pairs {
            let sat = |k: &usize| *k < 64 && mask & (1 << k) != 0;
            if sat(i) || sat(j) {
                continue;
            }
            if !h.eval_iv(&ix, &iy).hi.is_positive() {
                return Err(Reason::PairSum(*i, *j));
            }
        }
        Ok(mask)
    }

    fn center_local(pieces: &[Piece]) -> Vec<Q> {
        pieces.iter().map(|p| p.iv().mid()).collect()
    }

    fn try_center(&self, pieces: &[Piece]) -> Option<Vec<Q>> {
        let g = self.to_global(pieces, &Self::center_local(pieces))?;
        self.check(&g).then_some(g)
    }

    /// Fix all but one local coordinate at the center and test one point in
    /// every sign cell of the constraints along the remaining axis.
    fn try_fibers(&mut self, pieces: &[Piece]) -> Option<Vec<Q>> {
        let n = pieces.len();
        let center = Self::center_local(pieces);
        let key = chart_key(pieces);
        let hs: Vec<Poly> = self.chart(key).hs.clone();
        for axis in 0..n {
            let iv = pieces[axis].iv();
            if iv.lo == iv.hi {
                continue;
            }
            let mut factors: Vec<UPoly> = Vec::new();
            for h in &hs {
                let u = if n == 1 {
                    h.subs_y(&Q::zero())
                } else if axis == 0 {
                    h.subs_y(&center[1])
                } else {
                    h.subs_x(&center[0])
                };
                if u.is_zero() || u.is_constant() {
                    continue;
                }
                let u = u.squarefree().monic();
                if !factors.contains(&u) {
                    factors.push(u);
                }
            }
            let width = (&iv.hi - &iv.lo) / pow2(16);
            let mut ends = vec![iv.lo.clone(), iv.hi.clone()];
            for u in &factors {
                let s = SturmSeq::new(u);
                for (a, b) in s.isolate_in(&iv.lo, &iv.hi) {
                    let (a, b) = s.refine(&a, &b, &width);
                    ends.push(a.max(iv.lo.clone()));
                    ends.push(b.min(iv.hi.clone()));
                }
            }
            ends.sort();
            ends.dedup();
            let mut cands = vec![iv.lo.clone(), iv.hi.clone()];
            cands.extend(ends.windows(2).map(|w| midpoint(&w[0], &w[1])));
            for t in cands {
                let mut local = center.clone();
                local[axis] = t;
                if let Some(g) = self.to_global(pieces, &local) {
                    if self.check(&g) {
                        return Some(g);
                    }
                }
            }
        }
        None
    }
}

struct Node {
    pieces: Vec<Piece>,
    depth: u32,
    mask: u64,
    state: NodeState,
}

enum NodeState {
    Pending,
    Leaf(Reason),
    Split(usize, usize, usize),
    Open,
}

fn widest_axis(pieces: &[Piece]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, p) in pieces.iter().enumerate() {
        if p.is_point() {
            continue;
        }
        let w = p.chordal_width();
        if best.is_none_or(|(_, bw)| w > bw) {
            best = Some((i, w));
        }
    }
    best.map(|b| b.0)
}

/// Chart boxes covering the region, in a fixed order.
pub fn root_boxes(region: &Region) -> Vec<Vec<Piece>> {
    let per: Vec<Vec<Piece>> = region.arcs.iter().map(decompose).collect();
    let mut out: Vec<Vec<Piece>> = vec![Vec::new()];
    for ps in per {
        let mut next = Vec::new();
        for prefix in &out {
            for p in &ps {
                let mut v = prefix.clone();
                v.push(p.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

pub fn feasible_with(sys: &InequalitySystem, opts: &FeasOptions) -> Verdict {
    let mut eng = Engine::new(sys);
    for h in &opts.hints {
        if eng.check(h) {
            return Verdict::Witness { point: h.clone() };
        }
    }
    let roots = root_boxes(&sys.region);
    let mut arena: Vec<Node> = Vec::new();
    let mut queue = VecDeque::new();
    let mut root_ids = Vec::new();
    for pieces in roots {
        root_ids.push(arena.len());
        queue.push_back(arena.len());
        arena.push(Node { pieces, depth: 0, mask: 0, state: NodeState::Pending });
    }
    let mut steps = 0usize;
    let mut open_depth: Option<u32> = None;
    while let Some(id) = queue.pop_front() {
        steps += 1;
        if steps > opts.max_steps {
            return Verdict::Unknown { depth: arena[id].depth, steps: steps - 1 };
        }
        let pieces = arena[id].pieces.clone();
        let depth = arena[id].depth;
        let mask = match eng.classify(&pieces, arena[id].mask) {
            Err(r) => {
                arena[id].state = NodeState::Leaf(r);
                continue;
            }
            Ok(m) => m,
        };
        if let Some(w) = eng.try_center(&pieces) {
            return Verdict::Witness { point: w };
        }
        if opts.fiber_every > 0 && depth.is_multiple_of(opts.fiber_every) {
            if let Some(w) = eng.try_fibers(&pieces) {
                return Verdict::Witness { point: w };
            }
        }
        let axis = match widest_axis(&pieces) {
            Some(a) if depth < opts.max_depth => a,
            _ => {
                arena[id].state = NodeState::Open;
                open_depth = Some(open_depth.map_or(depth, |d| d.max(depth)));
                continue;
            }
        };
        let (a, b) = pieces[axis].split();
        let mut pa = pieces.clone();
        pa[axis] = a;
        let mut pb = pieces;
        pb[axis] = b;
        let ia = arena.len();
        arena.push(Node { pieces: pa, depth: depth + 1, mask, state: NodeState::Pending });
        let ib = arena.len();
        arena.push(Node { pieces: pb, depth: depth + 1, mask, state: NodeState::Pending });
        arena[id].state = NodeState::Split(axis, ia, ib);
        queue.push_back(ia);
        queue.push_back(ib);
    }
    if let Some(d) = open_depth {
        return Verdict::Unknown { depth: d, steps };
    }
    fn build(arena: &[Node], id: usize) -> CoverNode {
        match &arena[id].state {
            NodeState::Leaf(r) => CoverNode::Leaf(r.clone()),
            NodeState::Split(axis, a, b) => {
                CoverNode::Split { axis: *axis, lo: Box::new(build(arena, *a)), hi: Box::new(build(arena, *b)) }
            }
            NodeState::Pending | NodeState::Open => unreachable!("unresolved node in a finished search"),
        }
    }
    let roots =
        root_ids.iter().map(|&r| CoverRoot { pieces: arena[r].pieces.clone(), tree: build(&arena, r) }).collect();
    Verdict::Infeasible { cover: Cover { roots } }
}

/// Re-checks an infeasibility cover from scratch: the roots must be the
/// region's chart boxes, and every leaf's reason must hold.
pub fn verify_cover(sys: &InequalitySystem, cover: &Cover) -> bool {
    let roots = root_boxes(&sys.region);
    if roots.len() != cover.roots.len() || roots.iter().zip(&cover.roots).any(|(a, b)| a != &b.pieces) {
        return false;
    }
    let cons = normalized(sys);
    fn leaf_ok(cons: &[(Poly, Kind)], pieces: &[Piece], r: &Reason) -> bool {
        let (ix, iy) = box_ivs(pieces);
        let (cx, cy) = chart_key(pieces);
        let enc = |h: &Poly| to_chart(h, cx, cy).eval_iv(&ix, &iy);
        match r {
            Reason::NoFinitePoint => {
                pieces.iter().any(|p| matches!(p, Piece::U(iv) if iv.lo.is_zero() && iv.hi.is_zero()))
            }
            Reason::Single(i) => match cons.get(*i) {
                Some((h, Kind::Pos)) => !enc(h).hi.is_positive(),
                Some((h, Kind::NonZero)) => {
                    let e = enc(h);
                    e.lo.is_zero() && e.hi.is_zero()
                }
                None => false,
            },
            Reason::PairSum(i, j) => match (cons.get(*i), cons.get(*j)) {
                (Some((a, Kind::Pos)), Some((b, Kind::Pos))) => {
                    !to_chart(a, cx, cy).add(&to_chart(b, cx, cy)).eval_iv(&ix, &iy).hi.is_positive()
                }
                _ => false,
            },
        }
    }
    fn walk(cons: &[(Poly, Kind)], pieces: &[Piece], n: &CoverNode) -> bool {
        match n {
            CoverNode::Leaf(r) => leaf_ok(cons, pieces, r),
            CoverNode::Split { axis, lo, hi } => {
                if *axis >= pieces.len() || pieces[*axis].is_point() {
                    return false;
                }
                let (a, b) = pieces[*axis].split();
                let mut pa = pieces.to_vec();
                pa[*axis] = a;
                if !walk(cons, &pa, lo) {
                    return false;
                }
                pa[*axis] = b;
                walk(cons, &pa, hi)
            }
        }
    }
    cover.roots.iter().all(|r| walk(&cons, &r.pieces, &r.tree))
}
