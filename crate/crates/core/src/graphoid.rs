//! Graphoid membership, cluster sets and fiber samples.
//!
//! A point γ = (a, (b_f)) lies in the graphoid of a family E when every
//! neighborhood of a contains a point x' of dom(E) with every f(x') near
//! b_f. [`member`] tests this on a schedule of chordal radii.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feasibility::{system_branches, verify_cover, Cover, FeasOptions, Target, Verdict};
use crate::interval::Iv;
use crate::poly::Poly;
use crate::ratfunc::{quotient_arc, FunctionFamily, RatFunc, Region};
use crate::rational::{from_f64_dyadic, pow2_floor, q, Q};
use crate::sturm::SturmSeq;
use crate::upoly::UPoly;
use crate::xreal::{chordal_dist_sq, chordal_lt, ArcSet, XInterval, XReal};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphoidPoint {
    pub base: Vec<XReal>,
    pub values: BTreeMap<String, XReal>,
}

impl GraphoidPoint {
    pub fn new(base: Vec<XReal>, values: impl IntoIterator<Item = (String, XReal)>) -> Self {
        GraphoidPoint { base, values: values.into_iter().collect() }
    }

    /// Checks arity and that the values are keyed exactly by the member ids.
    pub fn validate(&self, e: &FunctionFamily) -> Result<()> {
        if self.base.len() != e.nvars() {
            return Err(Error::Arity { expected: e.nvars(), got: self.base.len() });
        }
        for m in e.members() {
            if !self.values.contains_key(&m.id) {
                return Err(Error::UnknownMember(m.id.clone()));
            }
        }
        if let Some(k) = self.values.keys().find(|k| e.get(k).is_none()) {
            return Err(Error::UnknownMember(k.clone()));
        }
        Ok(())
    }

    fn value(&self, id: &str) -> &XReal {
        &self.values[id]
    }
}

/// A closed arc with rational endpoints lying in the open chordal ball of
/// radius `rho` around `c` and containing `c` in its interior.
pub fn ball_arc(c: &XReal, rho: &Q) -> XInterval {
    let one = Q::one();
    let (flip, u0) = match c {
        XReal::Finite(v) if v.abs() <= one => (false, v.clone()),
        XReal::Finite(v) => (true, v.recip()),
        XReal::Infinity => (true, Q::zero()),
    };
    let r = if rho > &one { one.clone() } else { rho.clone() };
    let mut h = pow2_floor(&(&r * (&one + &u0 * &u0) / q(2)));
    loop {
        let (a, b) = (&u0 - &h, &u0 + &h);
        if !flip || (!a.is_zero() && !b.is_zero()) {
            let (lo, hi) = if flip { (b.recip(), a.recip()) } else { (a, b) };
            let (lo, hi) = (XReal::Finite(lo), XReal::Finite(hi));
            if chordal_lt(&lo, c, rho) && chordal_lt(&hi, c, rho) {
                return XInterval::arc(lo, hi);
            }
        }
        h /= q(2);
    }
}

/// The neighborhood target for an arc built by [`ball_arc`].
pub fn target_of(arc: &XInterval) -> Target {
    let lo = arc.lo().finite().cloned().expect("finite endpoint");
    let hi = arc.hi().finite().cloned().expect("finite endpoint");
    if lo < hi {
        Target::Finite { alpha: lo, beta: hi }
    } else {
        Target::AtInfinity { alpha: hi, beta: lo }
    }
}

/// Local coordinates around a base point: x − a for finite coordinates,
/// u = 1/x for infinite ones, with a symmetric half-width that keeps the
/// box inside the ball.
#[derive(Clone, Debug)]
struct Frame {
    uchart: Vec<bool>,
    center: Vec<Q>,
    half: Vec<Q>,
}

impl Frame {
    fn new(base: &[XReal], rho: &Q) -> Frame {
        let mut f = Frame { uchart: Vec::new(), center: Vec::new(), half: Vec::new() };
        for a in base {
            let arc = ball_arc(a, rho);
            let lo = arc.lo().finite().cloned().expect("finite");
            let hi = arc.hi().finite().cloned().expect("finite");
            match a {
                XReal::Infinity => {
                    f.uchart.push(true);
                    f.center.push(Q::zero());
                    let (l, h) = (lo.recip(), -hi.recip());
                    f.half.push(if l < h { l } else { h });
                }
                XReal::Finite(c) => {
                    f.uchart.push(false);
                    f.center.push(c.clone());
                    let h = if lo < hi {
                        let (l, r) = (c - &lo, &hi - c);
                        if l < r {
                            l
                        } else {
                            r
                        }
                    } else if &lo <= c {
                        c - &lo
                    } else {
                        &hi - c
                    };
                    f.half.push(h);
                }
            }
        }
        f
    }

    fn global(&self, off: &[Q]) -> Option<Vec<Q>> {
        self.uchart
            .iter()
            .zip(&self.center)
            .zip(off)
            .map(|((u, c), d)| {
                let t = c + d;
                if *u {
                    (!t.is_zero()).then(|| t.recip())
                } else {
                    Some(t)
                }
            })
            .collect()
    }

    /// Numerator and denominator of `f` in local coordinates.
    fn local(&self, f: &RatFunc) -> (Poly, Poly) {
        let ux = self.uchart.first().copied().unwrap_or(false);
        let uy = self.uchart.get(1).copied().unwrap_or(false);
        let (p, qq) = f.chart(ux, uy);
        let z = Q::zero();
        let cx = self.center.first().unwrap_or(&z);
        let cy = self.center.get(1).unwrap_or(&z);
        (p.shift(cx, cy), qq.shift(cx, cy))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadiusWitness {
    #[serde(with = "crate::rational::serde_q")]
    pub radius: Q,
    #[serde(with = "crate::rational::serde_q::vec")]
    pub point: Vec<Q>,
}

/// Why a neighborhood of γ misses the graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Exclusion {
    /// The enclosure of one member over the box avoids the closed ball.
    Enclosure { member: String, region: Region, enclosure: XInterval },
    /// Every sign branch of the neighborhood system is certified empty.
    Cover { region: Region, targets: Vec<Target>, covers: Vec<Cover> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MembershipVerdict {
    ConfirmedToRadius {
        #[serde(with = "crate::rational::serde_q")]
        radius: Q,
        witnesses: Vec<RadiusWitness>,
    },
    Excluded {
        #[serde(with = "crate::rational::serde_q")]
        radius: Q,
        proof: Exclusion,
    },
    Unknown {
        witnesses: Vec<RadiusWitness>,
        #[serde(with = "crate::rational::serde_q")]
        unresolved: Q,
    },
}

impl MembershipVerdict {
    pub fn is_confirmed(&self) -> bool {
        matches!(self, MembershipVerdict::ConfirmedToRadius { .. })
    }

    pub fn is_excluded(&self) -> bool {
        matches!(self, MembershipVerdict::Excluded { .. })
    }
}

/// `10^-1, …, 10^-6`.
pub fn default_radii() -> Vec<Q> {
    (1..=6).map(|k| Q::new(1.into(), num_bigint::BigInt::from(10).pow(k))).collect()
}

pub fn validate_radii(radii: &[Q]) -> Result<()> {
    if radii.is_empty() {
        return Err(Error::InvalidRadii("empty schedule".into()));
    }
    if radii.iter().any(|r| !r.is_positive() || r >= &q(2)) {
        return Err(Error::InvalidRadii("radii must lie in (0, 2)".into()));
    }
    if radii.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::InvalidRadii("radii must decrease strictly".into()));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct MemberOptions {
    pub max_depth: u32,
    pub max_steps: usize,
}

impl Default for MemberOptions {
    fn default() -> Self {
        MemberOptions { max_depth: 40, max_steps: 200_000 }
    }
}

/// Exact check that `x` is a witness for γ at radius `rho`.
pub fn is_witness(g: &GraphoidPoint, e: &FunctionFamily, rho: &Q, x: &[Q]) -> bool {
    x.len() == g.base.len()
        && x.iter().zip(&g.base).all(|(v, a)| chordal_lt(&XReal::Finite(v.clone()), a, rho))
        && e.members().iter().all(|m| match m.f.eval_exact(x) {
            Some(v) => chordal_lt(&v, g.value(&m.id), rho),
            None => false,
        })
}

enum Search {
    Found(Vec<Q>),
    Empty(Vec<Cover>),
    Open,
}

fn search(
    e: &FunctionFamily,
    targets: &[Target],
    region: &Region,
    hints: Vec<Vec<Q>>,
    o: &MemberOptions,
) -> Result<Search> {
    let opts = FeasOptions { max_depth: o.max_depth, max_steps: o.max_steps, hints, ..FeasOptions::default() };
    let mut covers = Vec::new();
    let mut open = false;
    for sys in system_branches(e, targets, region)? {
        match crate::feasibility::feasible_with(&sys, &opts) {
            Verdict::Witness { point } => return Ok(Search::Found(point)),
            Verdict::Infeasible { cover } => {
                if !verify_cover(&sys, &cover) {
                    return Err(Error::Internal("infeasibility cover failed re-verification".into()));
                }
                covers.push(cover);
            }
            Verdict::Unknown { .. } => open = true,
        }
    }
    Ok(if open { Search::Open } else { Search::Empty(covers) })
}

/// Points `a ± ρ·2^-k·d` on lines through a finite base point, for slopes
/// from a small Farey set and the vertical.
fn ray_witness(g: &GraphoidPoint, e: &FunctionFamily, rho: &Q) -> Option<Vec<Q>> {
    let base: Vec<Q> = g.base.iter().map(|a| a.finite().cloned()).collect::<Option<_>>()?;
    let dirs: Vec<Vec<Q>> = if base.len() == 1 {
        vec![vec![Q::one()]]
    } else {
        let mut slopes = vec![Q::zero()];
        for t in farey(RAY_ORDER).into_iter().filter(|t| t.is_positive()) {
            slopes.extend([t.clone(), -t.clone()]);
            if t != Q::one() {
                slopes.extend([t.recip(), -t.recip()]);
            }
        }
        let mut d: Vec<Vec<Q>> = slopes.into_iter().map(|t| vec![Q::one(), t]).collect();
        d.push(vec![Q::zero(), Q::one()]);
        d
    };
    let mut step = rho.clone();
    for _ in 0..RAY_STEPS {
        step /= q(2);
        for d in &dirs {
            for sign in [1, -1] {
                let p: Vec<Q> = base.iter().zip(d).map(|(a, v)| a + &step * v * q(sign)).collect();
                if is_witness(g, e, rho, &p) {
                    return Some(p);
                }
            }
        }
    }
    None
}

const RAY_ORDER: u64 = 8;
const RAY_STEPS: usize = 24;

pub fn member(g: &GraphoidPoint, e: &FunctionFamily, radii: &[Q]) -> Result<MembershipVerdict> {
    member_with(g, e, radii, &MemberOptions::default())
}

/// Runs the radius schedule: an exclusion at any radius is returned at
/// once, otherwise witnesses are collected radius by radius.
pub fn member_with(g: &GraphoidPoint, e: &FunctionFamily, radii: &[Q], o: &MemberOptions) -> Result<MembershipVerdict> {
    g.validate(e)?;
    validate_radii(radii)?;
    let mut witnesses: Vec<RadiusWitness> = Vec::new();
    let mut unresolved: Option<Q> = None;
    for rho in radii {
        let region = Region::new(g.base.iter().map(|a| ball_arc(a, rho)).collect());
        for m in e.members() {
            let enc = m.f.eval_interval(&region);
            if enc.disjoint_from_ball(g.value(&m.id), rho) {
                let proof = Exclusion::Enclosure { member: m.id.clone(), region, enclosure: enc };
                return Ok(MembershipVerdict::Excluded { radius: rho.clone(), proof });
            }
        }
        if unresolved.is_some() {
            continue;
        }
        let base: Option<Vec<Q>> = g.base.iter().map(|a| a.finite().cloned()).collect();
        let reuse = witnesses.last().map(|w| w.point.clone()).into_iter().chain(base);
        if let Some(p) = reuse.into_iter().find(|p| is_witness(g, e, rho, p)) {
            witnesses.push(RadiusWitness { radius: rho.clone(), point: p });
            continue;
        }
        if let Some(p) = ray_witness(g, e, rho) {
            witnesses.push(RadiusWitness { radius: rho.clone(), point: p });
            continue;
        }
        let targets: Vec<Target> = e.members().iter().map(|m| target_of(&ball_arc(g.value(&m.id), rho))).collect();
        let hints = witnesses.last().map(|w| vec![w.point.clone()]).unwrap_or_default();
        match search(e, &targets, &region, hints, o)? {
            Search::Found(point) => {
                if !is_witness(g, e, rho, &point) {
                    return Err(Error::Internal("witness failed exact re-verification".into()));
                }
                witnesses.push(RadiusWitness { radius: rho.clone(), point });
            }
            Search::Empty(covers) => {
                let proof = Exclusion::Cover { region, targets, covers };
                return Ok(MembershipVerdict::Excluded { radius: rho.clone(), proof });
            }
            Search::Open => unresolved = Some(rho.clone()),
        }
    }
    Ok(match unresolved {
        None => MembershipVerdict::ConfirmedToRadius { radius: radii.last().unwrap().clone(), witnesses },
        Some(r) => MembershipVerdict::Unknown { witnesses, unresolved: r },
    })
}

/// Inner and outer approximations of the cluster set f̄(a).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterSet {
    pub inner: ArcSet,
    pub outer: ArcSet,
}

impl ClusterSet {
    fn singleton(v: XReal) -> ClusterSet {
        let s = ArcSet::from_arcs([XInterval::point(v)]);
        ClusterSet { inner: s.clone(), outer: s }
    }

    pub fn is_singleton(&self) -> Option<&XReal> {
        match self.outer.arcs() {
            [a] if a.is_point() => Some(a.lo()),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClusterBudget {
    /// Chordal radius of the box used for the outer enclosure.
    pub radius: Q,
    /// Number of slope pieces per blow-up chart.
    pub pieces: usize,
    /// Extra bisections allowed for a piece whose enclosure is the circle.
    pub refine: u32,
    /// Order of the Farey sequence of probe slopes.
    pub farey_order: u64,
}

impl Default for ClusterBudget {
    fn default() -> Self {
        ClusterBudget { radius: Q::new(1.into(), 1000.into()), pieces: 64, refine: 6, farey_order: 32 }
    }
}

/// The Farey sequence of order `n` in [0, 1].
pub fn farey(n: u64) -> Vec<Q> {
    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, n.max(1));
    let mut out = vec![Q::zero()];
    while c <= n {
        let k = (n + b) / d;
        (a, b, c, d) = (c, d, k * c - a, k * d - b);
        out.push(Q::new(a.into(), b.into()));
    }
    out
}

fn signed_slopes(n: u64) -> Vec<Q> {
    let f = farey(n);
    let mut v: Vec<Q> = f.iter().rev().map(|t| -t.clone()).collect();
    v.extend(f.into_iter().skip(1));
    v
}

/// The restriction of `p` to the curve X = kx·s^ex, Y = ky·s^ey.
fn on_curve(p: &Poly, kx: &Q, ex: usize, ky: &Q, ey: usize) -> UPoly {
    let mut c: Vec<Q> = Vec::new();
    for (m, a) in p.terms() {
        let d = m.x as usize * ex + m.y as usize * ey;
        if c.len() <= d {
            c.resize(d + 1, Q::zero());
        }
        c[d] += a * num_traits::pow(kx.clone(), m.x as usize) * num_traits::pow(ky.clone(), m.y as usize);
    }
    UPoly::from_coeffs(c)
}

fn low_order(u: &UPoly) -> Option<usize> {
    u.coeffs().iter().position(|c| !c.is_zero())
}

/// Limit of `p/q` as s → 0, the two being coprime one-variable restrictions.
fn limit_at_zero(p: &UPoly, q: &UPoly) -> XReal {
    match (low_order(p), low_order(q)) {
        (None, _) => XReal::zero(),
        (_, None) => XReal::Infinity,
        (Some(a), Some(b)) if a > b => XReal::zero(),
        (Some(a), Some(b)) if a < b => XReal::Infinity,
        (Some(a), Some(b)) => XReal::Finite(&p.coeffs()[a] / &q.coeffs()[b]),
    }
}

fn roots_in_closed(s: &Option<SturmSeq>, u: &UPoly, a: &Q, b: &Q) -> usize {
    match s {
        None => 0,
        Some(s) => s.count(a, b) + usize::from(u.eval(a).is_zero()),
    }
}

/// Arcs certified inside the image of `[a, b]` under the one-variable
/// function `n/d`, which has no common factor.
fn image_arcs(
    n: &UPoly,
    d: &UPoly,
    sn: &Option<SturmSeq>,
    sd: &Option<SturmSeq>,
    a: &Q,
    b: &Q,
    out: &mut Vec<XInterval>,
) {
    let poles = roots_in_closed(sd, d, a, b);
    let val = |t: &Q| XReal::Finite(n.eval(t) / d.eval(t));
    if poles == 0 {
        let (u, v) = (n.eval(a) / d.eval(a), n.eval(b) / d.eval(b));
        out.push(if u <= v { XInterval::finite(u, v) } else { XInterval::finite(v, u) });
        return;
    }
    if roots_in_closed(sn, n, a, b) > 0 {
        return;
    }
    // no zeros: from any regular point the value runs monotonically to ∞
    let mut refs: Vec<Q> = [a, b].into_iter().filter(|t| !d.eval(t).is_zero()).cloned().collect();
    if refs.is_empty() {
        let m = crate::rational::midpoint(a, b);
        if !d.eval(&m).is_zero() {
            refs.push(m);
        }
    }
    for t in refs {
        let v = val(&t);
        let pos = n.eval(&t).is_positive() == d.eval(&t).is_positive();
        out.push(if pos { XInterval::arc(v, XReal::Infinity) } else { XInterval::arc(XReal::Infinity, v) });
    }
}

fn sturm_of(u: &UPoly) -> Option<SturmSeq> {
    (!u.is_constant()).then(|| SturmSeq::new(u))
}

/// Leading homogeneous parts restricted to a blow-up chart, reduced.
fn tangent_ratio(p: &Poly, q: &Poly, x_chart: bool) -> Option<(UPoly, UPoly)> {
    let (k, m) = (p.order(), q.order());
    if k != m {
        return None;
    }
    let (pk, qk) = (p.homogeneous_part(k), q.homogeneous_part(m));
    let (n, d) = if x_chart {
        (pk.subs_x(&Q::one()), qk.subs_x(&Q::one()))
    } else {
        (pk.subs_y(&Q::one()), qk.subs_y(&Q::one()))
    };
    let g = UPoly::gcd(&n, &d);
    Some((n.div_exact(&g).unwrap_or(n), d.div_exact(&g).unwrap_or(d)))
}

fn inner_probes(p: &Poly, q: &Poly, order: u64) -> ArcSet {
    let one = Q::one();
    let slopes = signed_slopes(order);
    let mut arcs = Vec::new();
    for t in &slopes {
        // Y = tX and X = tY
        arcs.push(XInterval::point(limit_at_zero(&on_curve(p, &one, 1, t, 1), &on_curve(q, &one, 1, t, 1))));
        arcs.push(XInterval::point(limit_at_zero(&on_curve(p, t, 1, &one, 1), &on_curve(q, t, 1, &one, 1))));
    }
    for sg in [one.clone(), -one.clone()] {
        arcs.push(XInterval::point(limit_at_zero(&on_curve(p, &one, 1, &sg, 2), &on_curve(q, &one, 1, &sg, 2))));
        arcs.push(XInterval::point(limit_at_zero(&on_curve(p, &sg, 2, &one, 1), &on_curve(q, &sg, 2, &one, 1))));
    }
    for x_chart in [true, false] {
        if let Some((n, d)) = tangent_ratio(p, q, x_chart) {
            let (sn, sd) = (sturm_of(&n), sturm_of(&d));
            for w in slopes.windows(2) {
                image_arcs(&n, &d, &sn, &sd, &w[0], &w[1], &mut arcs);
            }
        }
    }
    ArcSet::from_arcs(arcs)
}

/// `p` in the blow-up chart X = s, Y = ts (`x_chart`) or X = rs, Y = s,
/// divided by `s^k`: the result has `s` in the x slot and the slope in y.
fn blow_up(p: &Poly, x_chart: bool) -> (Poly, u32) {
    let k = p.order();
    let t = p.terms().map(|(m, c)| {
        let slope = if x_chart { m.y } else { m.x };
        (m.x + m.y - k, slope, c.clone())
    });
    (Poly::from_terms(t), k)
}

fn outer_sectors(p: &Poly, q: &Poly, sx: &Q, sy: &Q, b: &ClusterBudget) -> ArcSet {
    let mut arcs = Vec::new();
    for x_chart in [true, false] {
        let (mut bp, k) = blow_up(p, x_chart);
        let (mut bq, m) = blow_up(q, x_chart);
        if k > m {
            bp = bp.shift_exponents(k - m, 0);
        } else {
            bq = bq.shift_exponents(m - k, 0);
        }
        let s = Iv::symmetric(if x_chart { sx.clone() } else { sy.clone() });
        let n = b.pieces.max(1) as i64;
        let mut stack: Vec<(Iv, u32)> = (0..n)
            .map(|i| (Iv::new(Q::new((2 * i - n).into(), n.into()), Q::new((2 * i + 2 - n).into(), n.into())), 0))
            .collect();
        while let Some((t, depth)) = stack.pop() {
            let arc = quotient_arc(&bp.eval_iv(&s, &t), &bq.eval_iv(&s, &t));
            if arc.is_full() && depth < b.refine {
                let (l, r) = t.split();
                stack.push((l, depth + 1));
                stack.push((r, depth + 1));
                continue;
            }
            arcs.push(arc);
        }
    }
    ArcSet::from_arcs(arcs)
}

/// Inner and outer arcs for the cluster set of `f` at `a`.
pub fn cluster_set(f: &RatFunc, a: &[XReal], budget: &ClusterBudget) -> Result<ClusterSet> {
    if a.is_empty() || a.len() > 2 {
        return Err(Error::Arity { expected: 2, got: a.len() });
    }
    if a.len() == 1 && f.uses_y() {
        return Err(Error::Arity { expected: 2, got: 1 });
    }
    if !budget.radius.is_positive() || budget.radius >= q(2) {
        return Err(Error::InvalidRadii("cluster radius must lie in (0, 2)".into()));
    }
    let frame = Frame::new(a, &budget.radius);
    let (p, qq) = frame.local(f);
    let (p0, q0) = (p.eval(&Q::zero(), &Q::zero()), qq.eval(&Q::zero(), &Q::zero()));
    if !q0.is_zero() {
        return Ok(ClusterSet::singleton(XReal::Finite(p0 / q0)));
    }
    if !p0.is_zero() {
        return Ok(ClusterSet::singleton(XReal::Infinity));
    }
    if a.len() == 1 {
        return Err(Error::Internal("one-variable function in lowest terms with a common zero".into()));
    }
    let inner = inner_probes(&p, &qq, budget.farey_order);
    let outer = outer_sectors(&p, &qq, &frame.half[0], &frame.half[1], budget);
    debug_assert!(inner.subset_of(&outer), "inner {:?} outer {:?}", inner, outer);
    Ok(ClusterSet { inner, outer })
}

/// The continuous extension S̄ → S̄ of a function of x alone.
pub fn one_var_extension(f: &RatFunc, a: &XReal) -> Result<XReal> {
    if f.uses_y() {
        return Err(Error::Arity { expected: 1, got: 2 });
    }
    match a {
        XReal::Finite(v) => f
            .eval_exact(std::slice::from_ref(v))
            .ok_or_else(|| Error::Internal("common zero of a reduced fraction".into())),
        XReal::Infinity => {
            let (p, qq) = f.chart(true, false);
            let z = Q::zero();
            let (pv, qv) = (p.eval(&z, &z), qq.eval(&z, &z));
            Ok(if qv.is_zero() { XReal::Infinity } else { XReal::Finite(pv / qv) })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberPoint {
    #[serde(with = "crate::rational::serde_q::vec")]
    pub witness: Vec<Q>,
    pub values: BTreeMap<String, XReal>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberCloud {
    pub points: Vec<FiberPoint>,
    /// Per member, the chordal covering radius of S̄ by the sampled values.
    pub net_radius: BTreeMap<String, f64>,
}

/// Largest chordal distance from a point of S̄ to the nearest sample.
pub fn circle_net_radius(values: &[XReal]) -> f64 {
    if values.is_empty() {
        return 2.0;
    }
    let mut ang: Vec<f64> = values.iter().map(|v| v.angle()).collect();
    ang.sort_by(|a, b| a.total_cmp(b));
    let tau = std::f64::consts::TAU;
    let mut gap = ang[0] + tau - ang[ang.len() - 1];
    for w in ang.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    2.0 * (gap / 4.0).sin()
}

const SCALE_LEVELS: i32 = 4;

/// Up to `count` tuples of values at rational points of the punctured ball
/// of chordal radius `radius` around `a`, spread over directions and scales.
pub fn fiber_sample(e: &FunctionFamily, a: &[XReal], count: usize, radius: &Q, seed: u64) -> Result<FiberCloud> {
    if count == 0 {
        return Err(Error::Invalid("count must be at least 1".into()));
    }
    if a.len() != e.nvars() {
        return Err(Error::Arity { expected: e.nvars(), got: a.len() });
    }
    validate_radii(std::slice::from_ref(radius))?;
    let frame = Frame::new(a, radius);
    let half: Vec<f64> = frame.half.iter().map(crate::rational::to_f64).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::new();
    let mut misses = 0usize;
    let mut k = 0usize;
    while points.len() < count {
        if misses > 64 * count {
            break;
        }
        let theta = std::f64::consts::TAU * (k as f64 + rng.gen::<f64>()) / count as f64;
        let level = (k as i32) % SCALE_LEVELS;
        let scale = 0.9 * 4f64.powi(-level) * (0.5 + 0.5 * rng.gen::<f64>());
        k += 1;
        let dirs: Vec<f64> = if a.len() == 1 {
            vec![if theta < std::f64::consts::PI { 1.0 } else { -1.0 }]
        } else {
            vec![theta.cos(), theta.sin()]
        };
        let off: Vec<Q> = dirs.iter().zip(&half).map(|(d, h)| from_f64_dyadic(scale * d * h, 60)).collect();
        if off.iter().all(|v| v.is_zero()) {
            misses += 1;
            continue;
        }
        let Some(x) = frame.global(&off) else {
            misses += 1;
            continue;
        };
        let inside = x.iter().zip(a).all(|(v, c)| chordal_dist_sq(&XReal::Finite(v.clone()), c) < radius * radius);
        let values: Option<BTreeMap<String, XReal>> =
            e.members().iter().map(|m| m.f.eval_exact(&x).map(|v| (m.id.clone(), v))).collect();
        match (inside, values) {
            (true, Some(values)) => points.push(FiberPoint { witness: x, values }),
            _ => misses += 1,
        }
    }
    if points.is_empty() {
        return Err(Error::Internal("no sample of the ball lies in the domain".into()));
    }
    let net_radius = e
        .members()
        .iter()
        .map(|m| {
            let v: Vec<XReal> = points.iter().map(|p| p.values[&m.id].clone()).collect();
            (m.id.clone(), circle_net_radius(&v))
        })
        .collect();
    Ok(FiberCloud { points, net_radius })
}
