//! The extended real line S̄ = ℝ ∪ {∞} (one point at infinity, no signs),
//! its multivalued sum and product, the chordal metric, and closed arcs.
//!
//! # Arc orientation
//!
//! This is the one place the arc convention is fixed. S̄ is a circle; we
//! traverse it in the direction of increasing real values, so moving from
//! a large positive number continues through ∞ and comes back from large
//! negative numbers. An arc `[lo, hi]` is the closed set swept when walking
//! from `lo` to `hi` in that direction:
//!
//! * `[1, 3]` is the ordinary interval,
//! * `[3, 1]` is `[3, +∞) ∪ {∞} ∪ (−∞, 1]`,
//! * `[2, ∞]` is `[2, +∞) ∪ {∞}` and `[∞, 2]` is `{∞} ∪ (−∞, 2]`,
//! * `[a, a]` is the single point `a`.
//!
//! The whole circle carries an explicit `full` flag so it is never confused
//! with a degenerate arc. Serialized arcs are `{"lo": .., "hi": ..}` or
//! `{"full": true}`; serialized points are `"inf"`, `"n"` or `"n/d"`.
//!
//! The chordal metric comes from the embedding
//! `t ↦ (2t, t² − 1)/(1 + t²)`, `∞ ↦ (0, 1)` of S̄ onto the unit circle. In
//! angle terms `t = tan(θ/2)`, `θ ∈ (−π, π]`, and walking in the arc
//! direction increases θ. Squared distances are rational and compared
//! exactly; the `f64` helpers are for reporting and heuristics only.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, parse_rational, q, to_f64, Q};

/// A point of S̄.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum XReal {
    Finite(Q),
    Infinity,
}

impl XReal {
    pub fn zero() -> Self {
        XReal::Finite(Q::zero())
    }

    pub fn int(n: i64) -> Self {
        XReal::Finite(q(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, XReal::Infinity)
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            XReal::Finite(v) => Some(v),
            XReal::Infinity => None,
        }
    }

    /// Angular coordinate θ = 2·atan(t) in (−π, π], ∞ at π.
    pub fn angle(&self) -> f64 {
        match self {
            XReal::Finite(v) => 2.0 * to_f64(v).atan(),
            XReal::Infinity => std::f64::consts::PI,
        }
    }

    /// Inverse of [`XReal::angle`], rounded to a dyadic rational.
    pub fn from_angle(theta: f64) -> Self {
        let t = wrap_angle(theta);
        if (t - std::f64::consts::PI).abs() < 1e-300 {
            return XReal::Infinity;
        }
        let v = (t / 2.0).tan();
        if !v.is_finite() || v.abs() > 1e15 {
            XReal::Infinity
        } else {
            XReal::Finite(crate::rational::from_f64_dyadic(v, 52))
        }
    }

    /// The antipodal point: 0 ↔ ∞, t ↔ −1/t.
    pub fn antipode(&self) -> XReal {
        match self {
            XReal::Infinity => XReal::zero(),
            XReal::Finite(v) if v.is_zero() => XReal::Infinity,
            XReal::Finite(v) => XReal::Finite(-v.recip()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            XReal::Finite(v) => to_f64(v),
            XReal::Infinity => f64::INFINITY,
        }
    }
}

impl From<Q> for XReal {
    fn from(v: Q) -> Self {
        XReal::Finite(v)
    }
}

impl fmt::Display for XReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XReal::Finite(v) => f.write_str(&fmt_rational(v)),
            XReal::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for XReal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            Ok(XReal::Infinity)
        } else {
            parse_rational(t).map(XReal::Finite)
        }
    }
}

impl Serialize for XReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for XReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            S(String),
            I(i64),
        }
        match Raw::deserialize(d)? {
            Raw::S(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::I(i) => Ok(XReal::int(i)),
        }
    }
}

/// Value of a multivalued operation: one point or all of S̄.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XSet {
    Singleton(XReal),
    All,
}

impl XSet {
    pub fn contains(&self, v: &XReal) -> bool {
        match self {
            XSet::All => true,
            XSet::Singleton(s) => s == v,
        }
    }
}

/// r ⊕ s; only ∞ ⊕ ∞ is unconstrained.
pub fn xadd(r: &XReal, s: &XReal) -> XSet {
    match (r, s) {
        (XReal::Finite(a), XReal::Finite(b)) => XSet::Singleton(XReal::Finite(a + b)),
        (XReal::Infinity, XReal::Infinity) => XSet::All,
        _ => XSet::Singleton(XReal::Infinity),
    }
}

/// r ⊙ s; only {r, s} = {0, ∞} is unconstrained.
pub fn xmul(r: &XReal, s: &XReal) -> XSet {
    match (r, s) {
        (XReal::Finite(a), XReal::Finite(b)) => XSet::Singleton(XReal::Finite(a * b)),
        (XReal::Finite(a), XReal::Infinity) | (XReal::Infinity, XReal::Finite(a)) => {
            if a.is_zero() {
                XSet::All
            } else {
                XSet::Singleton(XReal::Infinity)
            }
        }
        (XReal::Infinity, XReal::Infinity) => XSet::Singleton(XReal::Infinity),
    }
}

/// Exact squared chordal distance, a rational in [0, 4].
pub fn chordal_dist_sq(u: &XReal, v: &XReal) -> Q {
    let one = Q::one();
    match (u, v) {
        (XReal::Finite(a), XReal::Finite(b)) => {
            let d = a - b;
            q(4) * &d * &d / ((&one + a * a) * (&one + b * b))
        }
        (XReal::Finite(a), XReal::Infinity) | (XReal::Infinity, XReal::Finite(a)) => q(4) / (&one + a * a),
        (XReal::Infinity, XReal::Infinity) => Q::zero(),
    }
}

/// Chordal distance to working precision.
pub fn chordal_dist(u: &XReal, v: &XReal) -> f64 {
    to_f64(&chordal_dist_sq(u, v)).sqrt()
}

/// `d(u, v) < rho`, decided exactly.
pub fn chordal_lt(u: &XReal, v: &XReal, rho: &Q) -> bool {
    chordal_dist_sq(u, v) < rho * rho
}

/// Total order used to cut the circle open at ∞: finite values ascending,
/// then ∞ last.
pub fn lin_cmp(a: &XReal, b: &XReal) -> Ordering {
    match (a, b) {
        (XReal::Finite(x), XReal::Finite(y)) => x.cmp(y),
        (XReal::Finite(_), XReal::Infinity) => Ordering::Less,
        (XReal::Infinity, XReal::Finite(_)) => Ordering::Greater,
        (XReal::Infinity, XReal::Infinity) => Ordering::Equal,
    }
}

/// Orders points by their position when walking from `base` in the arc
/// direction (base itself first).
fn cyclic_cmp(base: &XReal, a: &XReal, b: &XReal) -> Ordering {
    let ka = lin_cmp(a, base) == Ordering::Less;
    let kb = lin_cmp(b, base) == Ordering::Less;
    ka.cmp(&kb).then_with(|| lin_cmp(a, b))
}

fn wrap_angle(t: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut r = t % two_pi;
    if r <= -std::f64::consts::PI {
        r += two_pi;
    }
    if r > std::f64::consts::PI {
        r -= two_pi;
    }
    r
}

/// Compares the sizes of the open gaps walked from `a1` to `b1` and from
/// `a2` to `b2` (each pair distinct), exactly.
fn gap_cmp(a1: &XReal, b1: &XReal, a2: &XReal, b2: &XReal) -> Ordering {
    // 0: less than half the circle, 1: exactly half, 2: more than half
    let class = |a: &XReal, b: &XReal| {
        let anti = a.antipode();
        if &anti == b {
            1
        } else if cyclic_cmp(a, &anti, b) == Ordering::Less {
            2
        } else {
            0
        }
    };
    let (c1, c2) = (class(a1, b1), class(a2, b2));
    if c1 != c2 {
        return c1.cmp(&c2);
    }
    let d1 = chordal_dist_sq(a1, b1);
    let d2 = chordal_dist_sq(a2, b2);
    match c1 {
        0 => d1.cmp(&d2),
        1 => Ordering::Equal,
        _ => d2.cmp(&d1),
    }
}

/// A closed arc of S̄ (see the module docs for orientation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XInterval {
    lo: XReal,
    hi: XReal,
    full: bool,
}

impl XInterval {
    pub fn full() -> Self {
        XInterval { lo: XReal::Infinity, hi: XReal::Infinity, full: true }
    }

    pub fn arc(lo: XReal, hi: XReal) -> Self {
        XInterval { lo, hi, full: false }
    }

    pub fn point(v: XReal) -> Self {
        XInterval { lo: v.clone(), hi: v, full: false }
    }

    /// Ordinary finite interval `[lo, hi]`, `lo <= hi`.
    pub fn finite(lo: Q, hi: Q) -> Self {
        debug_assert!(lo <= hi);
        XInterval::arc(XReal::Finite(lo), XReal::Finite(hi))
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn lo(&self) -> &XReal {
        &self.lo
    }

    pub fn hi(&self) -> &XReal {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        !self.full && self.lo == self.hi
    }

    /// True when cutting the circle at ∞ splits the arc in two.
    pub fn wraps(&self) -> bool {
        !self.full && lin_cmp(&self.lo, &self.hi) == Ordering::Greater
    }

    pub fn contains_infinity(&self) -> bool {
        self.full || self.wraps() || self.hi.is_infinite()
    }

    pub fn contains(&self, x: &XReal) -> bool {
        if self.full {
            return true;
        }
        if self.wraps() {
            lin_cmp(x, &self.lo) != Ordering::Less || lin_cmp(x, &self.hi) != Ordering::Greater
        } else {
            lin_cmp(x, &self.lo) != Ordering::Less && lin_cmp(x, &self.hi) != Ordering::Greater
        }
    }

    /// Angular length in [0, 2π].
    pub fn angular_length(&self) -> f64 {
        if self.full {
            return 2.0 * std::f64::consts::PI;
        }
        if self.lo == self.hi {
            return 0.0;
        }
        let mut d = self.hi.angle() - self.lo.angle();
        if d < 0.0 {
            d += 2.0 * std::f64::consts::PI;
        }
        d
    }

    /// Largest chordal distance between two points of the arc.
    pub fn chordal_diameter(&self) -> f64 {
        let len = self.angular_length();
        if len >= std::f64::consts::PI {
            2.0
        } else {
            2.0 * (len / 2.0).sin()
        }
    }

    pub fn midpoint_angle(&self) -> f64 {
        wrap_angle(self.lo.angle() + self.angular_length() / 2.0)
    }

    /// True when every point of the arc is at chordal distance `> rho` from
    /// `center`, decided exactly.
    pub fn disjoint_from_ball(&self, center: &XReal, rho: &Q) -> bool {
        if self.full || self.contains(center) {
            return false;
        }
        // the nearest point of an arc missing `center` is an endpoint
        let r2 = rho * rho;
        chordal_dist_sq(&self.lo, center) > r2 && chordal_dist_sq(&self.hi, center) > r2
    }
}

impl XInterval {
    /// A point strictly outside the arc, `None` for the full circle.
    pub fn outside_point(&self) -> Option<XReal> {
        if self.full {
            return None;
        }
        Some(match (&self.hi, &self.lo) {
            (XReal::Infinity, XReal::Infinity) => XReal::zero(),
            (XReal::Infinity, XReal::Finite(l)) => XReal::Finite(l - Q::one()),
            (XReal::Finite(h), XReal::Infinity) => XReal::Finite(h + Q::one()),
            (XReal::Finite(h), XReal::Finite(l)) if h < l => XReal::Finite(crate::rational::midpoint(h, l)),
            _ => XReal::Infinity,
        })
    }

    /// Whether `other` is a subset of this arc.
    pub fn contains_arc(&self, other: &XInterval) -> bool {
        if self.full {
            return true;
        }
        if other.full || !self.contains(&other.lo) || !self.contains(&other.hi) {
            return false;
        }
        // an arc with both ends inside that leaves must cover the whole gap
        !other.contains(&self.outside_point().expect("not full"))
    }
}

impl fmt::Display for XInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.full {
            f.write_str("S̄")
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ArcRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lo: Option<XReal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hi: Option<XReal>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    full: bool,
}

impl Serialize for XInterval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let r = if self.full {
            ArcRepr { lo: None, hi: None, full: true }
        } else {
            ArcRepr { lo: Some(self.lo.clone()), hi: Some(self.hi.clone()), full: false }
        };
        r.serialize(s)
    }
}

impl<'de> Deserialize<'de> for XInterval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ArcRepr::deserialize(d)?;
        if r.full {
            return Ok(XInterval::full());
        }
        match (r.lo, r.hi) {
            (Some(lo), Some(hi)) => Ok(XInterval::arc(lo, hi)),
            _ => Err(serde::de::Error::custom("arc needs `lo` and `hi`, or `full: true`")),
        }
    }
}

/// Smallest closed arc containing `points`. The full circle is returned
/// when no single smallest proper arc exists (several largest gaps tie).
pub fn arc_hull(points: &[XReal]) -> Result<XInterval> {
    if points.is_empty() {
        return Err(Error::Empty("arc_hull needs at least one point"));
    }
    let mut pts: Vec<XReal> = points.to_vec();
    pts.sort_by(lin_cmp);
    pts.dedup();
    if pts.len() == 1 {
        return Ok(XInterval::point(pts.pop().unwrap()));
    }
    let comps: Vec<XInterval> = pts.into_iter().map(XInterval::point).collect();
    Ok(hull_of_components(&comps, true))
}

/// Hull of disjoint, sorted components: complement of their largest gap.
fn hull_of_components(comps: &[XInterval], tie_full: bool) -> XInterval {
    if comps.len() == 1 {
        return comps[0].clone();
    }
    let n = comps.len();
    let mut best = 0usize;
    let mut tied = false;
    for i in 1..n {
        let (a1, b1) = (&comps[best].hi, &comps[(best + 1) % n].lo);
        let (a2, b2) = (&comps[i].hi, &comps[(i + 1) % n].lo);
        match gap_cmp(a2, b2, a1, b1) {
            Ordering::Greater => {
                best = i;
                tied = false;
            }
            Ordering::Equal => tied = true,
            Ordering::Less => {}
        }
    }
    if tied && tie_full {
        return XInterval::full();
    }
    XInterval::arc(comps[(best + 1) % n].lo.clone(), comps[best].hi.clone())
}

/// Finite union of closed arcs, kept as disjoint components ordered along
/// the circle starting after ∞.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ArcSet {
    arcs: Vec<XInterval>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Cut {
    Start,
    At(Q),
    End,
}

impl ArcSet {
    pub fn empty() -> Self {
        ArcSet { arcs: Vec::new() }
    }

    pub fn from_arcs<I: IntoIterator<Item = XInterval>>(arcs: I) -> Self {
        let mut s = ArcSet::empty();
        for a in arcs {
            s.arcs.push(a);
        }
        s.normalize();
        s
    }

    pub fn push(&mut self, arc: XInterval) {
        self.arcs.push(arc);
        self.normalize();
    }

    pub fn extend<I: IntoIterator<Item = XInterval>>(&mut self, arcs: I) {
        self.arcs.extend(arcs);
        self.normalize();
    }

    pub fn arcs(&self) -> &[XInterval] {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.arcs.len() == 1 && self.arcs[0].is_full()
    }

    pub fn contains(&self, x: &XReal) -> bool {
        self.arcs.iter().any(|a| a.contains(x))
    }

    /// Smallest single arc containing the whole set.
    pub fn hull(&self) -> Option<XInterval> {
        if self.arcs.is_empty() {
            None
        } else {
            Some(hull_of_components(&self.arcs, false))
        }
    }

    pub fn chordal_diameter(&self) -> f64 {
        self.hull().map_or(0.0, |h| h.chordal_diameter())
    }

    pub fn total_angular_length(&self) -> f64 {
        self.arcs.iter().map(|a| a.angular_length()).sum()
    }

    fn normalize(&mut self) {
        if self.arcs.iter().any(|a| a.full) {
            self.arcs = vec![XInterval::full()];
            return;
        }
        let cut = |x: &XReal| match x {
            XReal::Finite(v) => Cut::At(v.clone()),
            XReal::Infinity => Cut::End,
        };
        let mut segs: Vec<(Cut, Cut)> = Vec::new();
        for a in &self.arcs {
            if a.wraps() {
                segs.push((cut(&a.lo), Cut::End));
                segs.push((Cut::Start, cut(&a.hi)));
            } else {
                segs.push((cut(&a.lo), cut(&a.hi)));
            }
        }
        segs.sort();
        let mut merged: Vec<(Cut, Cut)> = Vec::new();
        for (lo, hi) in segs {
            if let Some(last) = merged.last_mut() {
                if lo <= last.1 {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                    continue;
                }
            }
            merged.push((lo, hi));
        }
        let back = |c: &Cut| match c {
            Cut::At(v) => XReal::Finite(v.clone()),
            _ => XReal::Infinity,
        };
        if !merged.is_empty() && merged[0].0 == Cut::Start {
            let first = merged.remove(0);
            if first.1 == Cut::End {
                self.arcs = vec![XInterval::full()];
                return;
            }
            let lo = match merged.last() {
                Some(last) if last.1 == Cut::End => {
                    let l = back(&last.0);
                    merged.pop();
                    l
                }
                _ => XReal::Infinity,
            };
            let mut out: Vec<XInterval> = merged.iter().map(|(l, h)| XInterval::arc(back(l), back(h))).collect();
            out.push(XInterval::arc(lo, back(&first.1)));
            self.arcs = out;
        } else {
            self.arcs = merged.iter().map(|(l, h)| XInterval::arc(back(l), back(h))).collect();
        }
    }
}

impl ArcSet {
    /// Whether every component lies inside some component of `other`.
    pub fn subset_of(&self, other: &ArcSet) -> bool {
        self.arcs.iter().all(|a| other.arcs.iter().any(|b| b.contains_arc(a)))
    }
}

impl Serialize for ArcSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.arcs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ArcSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(ArcSet::from_arcs(Vec::<XInterval>::deserialize(d)?))
    }
}

/// Sorts finite reals first, used to print deterministic lists.
pub fn sort_xreals(v: &mut [XReal]) {
    v.sort_by(lin_cmp);
}

pub fn is_positive_finite(v: &XReal) -> bool {
    matches!(v, XReal::Finite(x) if x.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    fn x(n: i64) -> XReal {
        XReal::int(n)
    }

    #[test]
    fn sums_and_products() {
        assert_eq!(xadd(&x(2), &x(3)), XSet::Singleton(x(5)));
        assert_eq!(xadd(&XReal::Infinity, &x(5)), XSet::Singleton(XReal::Infinity));
        assert_eq!(xadd(&XReal::Infinity, &XReal::Infinity), XSet::All);
        assert_eq!(xmul(&x(2), &x(3)), XSet::Singleton(x(6)));
        assert_eq!(xmul(&x(0), &XReal::Infinity), XSet::All);
        assert_eq!(xmul(&XReal::Infinity, &x(5)), XSet::Singleton(XReal::Infinity));
        assert!(XSet::All.contains(&x(17)));
    }

    #[test]
    fn chordal_examples() {
        assert_eq!(chordal_dist(&x(3), &x(3)), 0.0);
        assert!((chordal_dist(&x(0), &XReal::Infinity) - 2.0).abs() < 1e-15);
        // images (1, 0) and (0, 1)
        assert!((chordal_dist(&x(1), &XReal::Infinity) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(chordal_dist_sq(&x(1), &XReal::Infinity), q(2));
    }

    #[test]
    fn arc_membership() {
        let a = XInterval::arc(x(3), x(1));
        assert!(a.contains(&XReal::Infinity));
        assert!(a.contains(&x(100)) && a.contains(&x(-100)) && a.contains(&x(1)));
        assert!(!a.contains(&x(2)));
        let b = XInterval::arc(x(2), XReal::Infinity);
        assert!(b.contains(&XReal::Infinity) && b.contains(&x(5)) && !b.contains(&x(-5)));
        let c = XInterval::arc(XReal::Infinity, x(2));
        assert!(c.contains(&XReal::Infinity) && c.contains(&x(-5)) && !c.contains(&x(5)));
        let d = XInterval::point(XReal::Infinity);
        assert!(d.contains(&XReal::Infinity) && !d.contains(&x(0)));
    }

    #[test]
    fn hull_examples() {
        assert_eq!(arc_hull(&[x(3)]).unwrap(), XInterval::point(x(3)));
        assert_eq!(arc_hull(&[x(0), x(1), x(2)]).unwrap(), XInterval::finite(q(0), q(2)));
        assert!(arc_hull(&[x(0), x(1), XReal::Infinity, x(-1)]).unwrap().is_full());
        assert!(arc_hull(&[]).is_err());
        // through infinity when that gap is shorter
        let h = arc_hull(&[x(10), x(-10), x(20)]).unwrap();
        assert_eq!(h, XInterval::arc(x(10), x(-10)));
    }

    /// Brute force over the four gaps of the evenly spread configuration.
    #[test]
    fn even_spread_gaps_all_tie() {
        let pts = [x(0), x(1), XReal::Infinity, x(-1)];
        let gaps: Vec<Q> = (0..4).map(|i| chordal_dist_sq(&pts[i], &pts[(i + 1) % 4])).collect();
        assert!(gaps.iter().all(|g| *g == gaps[0]));
    }

    #[test]
    fn arcset_merges_through_infinity() {
        let s = ArcSet::from_arcs([
            XInterval::arc(x(5), XReal::Infinity),
            XInterval::arc(XReal::Infinity, x(-5)),
            XInterval::finite(q(0), q(1)),
        ]);
        assert_eq!(s.arcs().len(), 2);
        assert!(s.contains(&XReal::Infinity));
        assert!(s.arcs().contains(&XInterval::arc(x(5), x(-5))));
        let full = ArcSet::from_arcs([XInterval::arc(x(0), x(-1)), XInterval::finite(q(-2), q(1))]);
        assert!(full.is_full());
        let touching = ArcSet::from_arcs([XInterval::finite(q(0), q(1)), XInterval::finite(q(1), q(2))]);
        assert_eq!(touching.arcs(), &[XInterval::finite(q(0), q(2))]);
    }

    #[test]
    fn ball_disjointness() {
        let a = XInterval::finite(qr(9, 10), qr(11, 10));
        assert!(a.disjoint_from_ball(&x(2), &qr(1, 10)));
        assert!(!a.disjoint_from_ball(&x(1), &qr(1, 10)));
        assert!(!XInterval::full().disjoint_from_ball(&x(2), &qr(1, 100)));
    }

    #[test]
    fn serde_shapes() {
        let a = XInterval::arc(XReal::Infinity, qr(-7, 3).into());
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"lo":"inf","hi":"-7/3"}"#);
        assert_eq!(serde_json::from_str::<XInterval>(&s).unwrap(), a);
        assert_eq!(serde_json::to_string(&XInterval::full()).unwrap(), r#"{"full":true}"#);
        assert_eq!(serde_json::from_str::<XReal>("5").unwrap(), x(5));
        assert_eq!("inf".parse::<XReal>().unwrap(), XReal::Infinity);
    }
}
