//! Rational functions p/q over ℚ in lowest terms, families of them, and
//! their exact and interval evaluation into S̄.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::chart::{decompose, Piece};
use crate::error::{Error, Result};
use crate::interval::Iv;
use crate::poly::Poly;
use crate::rational::Q;
use crate::resultant::resultant_y;
use crate::sturm::SturmSeq;
use crate::upoly::UPoly;
use crate::xreal::{ArcSet, XInterval, XReal};

/// An irreducible fraction `p/q`. Both have integer coefficients with joint
/// content 1, and the graded-lex leading coefficient of `q` is positive, so
/// equal functions have equal representations. A constant denominator is
/// folded into the coefficients when printing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    p: Poly,
    q: Poly,
}

/// Reduce `p/q` to the canonical irreducible form.
pub fn normalize(p: &Poly, q: &Poly) -> Result<RatFunc> {
    if q.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if p.is_zero() {
        return Ok(RatFunc { p: Poly::zero(), q: Poly::one() });
    }
    let g = Poly::gcd(p, q);
    let (p, q) = if g.is_constant() {
        (p.clone(), q.clone())
    } else {
        (p.div_exact(&g).expect("gcd divides"), q.div_exact(&g).expect("gcd divides"))
    };
    let (lp, gp) = p.integer_content();
    let (lq, gq) = q.integer_content();
    let l = num_integer::Integer::lcm(&lp, &lq);
    let sp = &gp * (&l / &lp);
    let sq = &gq * (&l / &lq);
    let mut k = num_integer::Integer::gcd(&sp, &sq);
    if q.lc().is_negative() {
        k = -k;
    }
    let factor = Q::new(l, k);
    Ok(RatFunc { p: p.scale(&factor), q: q.scale(&factor) })
}

impl RatFunc {
    pub fn new(p: Poly, q: Poly) -> Result<Self> {
        normalize(&p, &q)
    }

    pub fn from_poly(p: Poly) -> Self {
        normalize(&p, &Poly::one()).expect("denominator one")
    }

    pub fn constant(c: Q) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn x() -> Self {
        RatFunc::from_poly(Poly::x())
    }

    pub fn y() -> Self {
        RatFunc::from_poly(Poly::y())
    }

    pub fn numer(&self) -> &Poly {
        &self.p
    }

    pub fn denom(&self) -> &Poly {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    pub fn constant_value(&self) -> Option<Q> {
        let a = self.p.constant_value()?;
        let b = self.q.constant_value()?;
        Some(a / b)
    }

    pub fn is_polynomial(&self) -> bool {
        self.q.is_constant()
    }

    pub fn uses_y(&self) -> bool {
        self.p.uses_y() || self.q.uses_y()
    }

    pub fn uses_x(&self) -> bool {
        self.p.deg_x() > 0 || self.q.deg_x() > 0
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        let p = self.p.mul(&o.q).add(&o.p.mul(&self.q));
        normalize(&p, &self.q.mul(&o.q)).expect("nonzero denominators")
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { p: self.p.neg(), q: self.q.clone() }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        normalize(&self.p.mul(&o.p), &self.q.mul(&o.q)).expect("nonzero denominators")
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        if o.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        normalize(&self.p.mul(&o.q), &self.q.mul(&o.p))
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        // lowest terms are preserved by powers
        RatFunc { p: self.p.pow(e), q: self.q.pow(e) }.renormalized()
    }

    fn renormalized(self) -> RatFunc {
        normalize(&self.p, &self.q).expect("nonzero denominator")
    }

    /// `p(a)/q(a)`, ∞ where only `q` vanishes, `None` (undefined) where both
    /// vanish. Missing coordinates are read as 0.
    pub fn eval_exact(&self, point: &[Q]) -> Option<XReal> {
        let zero = Q::zero();
        let x = point.first().unwrap_or(&zero);
        let y = point.get(1).unwrap_or(&zero);
        let pv = self.p.eval(x, y);
        let qv = self.q.eval(x, y);
        if !qv.is_zero() {
            Some(XReal::Finite(pv / qv))
        } else if !pv.is_zero() {
            Some(XReal::Infinity)
        } else {
            None
        }
    }

    /// Numerator and denominator after `x → 1/x` (when `ux`) and `y → 1/y`
    /// (when `uy`), cleared by the common power of the chart variable.
    pub fn chart(&self, ux: bool, uy: bool) -> (Poly, Poly) {
        let mut p = self.p.clone();
        let mut q = self.q.clone();
        if ux {
            let d = p.deg_x().max(q.deg_x());
            p = p.reverse_x().shift_exponents(d - self.p.deg_x(), 0);
            q = q.reverse_x().shift_exponents(d - self.q.deg_x(), 0);
        }
        if uy {
            let d = p.deg_y().max(q.deg_y());
            let (dp, dq) = (p.deg_y(), q.deg_y());
            p = p.reverse_y().shift_exponents(0, d - dp);
            q = q.reverse_y().shift_exponents(0, d - dq);
        }
        (p, q)
    }

    /// A closed arc containing `f(region ∩ dom f)`.
    pub fn eval_interval(&self, region: &Region) -> XInterval {
        let origin = || vec![Piece::X(Iv::zero())];
        let px = if self.uses_x() && !region.arcs.is_empty() { decompose(&region.arcs[0]) } else { origin() };
        let py = if self.uses_y() {
            match region.arcs.get(1) {
                Some(a) => decompose(a),
                None => return XInterval::full(),
            }
        } else {
            origin()
        };
        let mut charts: [[Option<(Poly, Poly)>; 2]; 2] = Default::default();
        let mut set = ArcSet::empty();
        let mut arcs = Vec::new();
        for a in &px {
            for b in &py {
                let (ux, uy) = (matches!(a, Piece::U(_)), matches!(b, Piece::U(_)));
                let slot = &mut charts[ux as usize][uy as usize];
                let (p, q) = slot.get_or_insert_with(|| self.chart(ux, uy));
                let arc = quotient_arc(&p.eval_iv(a.iv(), b.iv()), &q.eval_iv(a.iv(), b.iv()));
                if arc.is_full() {
                    return arc;
                }
                arcs.push(arc);
            }
        }
        set.extend(arcs);
        set.hull().unwrap_or_else(XInterval::full)
    }

    /// The common zero locus `{p = 0, q = 0}`, outside of which the
    /// function is defined.
    pub fn domain_excluded(&self) -> ExcludedLocus {
        ExcludedLocus::of(self)
    }

    /// Whether `point` lies in dom(f).
    pub fn in_domain(&self, point: &[Q]) -> bool {
        self.eval_exact(point).is_some()
    }

    pub fn to_text(&self) -> String {
        if let Some(c) = self.q.constant_value() {
            self.p.scale(&c.recip()).to_text()
        } else {
            format!("({})/({})", self.p.to_text(), self.q.to_text())
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl std::str::FromStr for RatFunc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse(s)
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Arc containing `{a/b : a ∈ p, b ∈ q}` (with a/0 = ∞ for a ≠ 0).
pub fn quotient_arc(p: &Iv, q: &Iv) -> XInterval {
    let fin = |v: Q| XReal::Finite(v);
    if !q.contains_zero() {
        let c = [&p.lo / &q.lo, &p.lo / &q.hi, &p.hi / &q.lo, &p.hi / &q.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        return XInterval::finite(lo, hi);
    }
    if p.contains_zero() {
        return XInterval::full();
    }
    let (q1z, q2z) = (q.lo.is_zero(), q.hi.is_zero());
    if q1z && q2z {
        return XInterval::point(XReal::Infinity);
    }
    if p.is_positive() {
        let a = &p.lo;
        match (q1z, q2z) {
            (true, _) => XInterval::arc(fin(a / &q.hi), XReal::Infinity),
            (_, true) => XInterval::arc(XReal::Infinity, fin(a / &q.lo)),
            _ => XInterval::arc(fin(a / &q.hi), fin(a / &q.lo)),
        }
    } else {
        let a = &p.hi;
        match (q1z, q2z) {
            (true, _) => XInterval::arc(XReal::Infinity, fin(a / &q.hi)),
            (_, true) => XInterval::arc(fin(a / &q.lo), XReal::Infinity),
            _ => XInterval::arc(fin(a / &q.lo), fin(a / &q.hi)),
        }
    }
}

/// A box of S̄ⁿ: one closed arc per variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub arcs: Vec<XInterval>,
}

impl Region {
    pub fn new(arcs: Vec<XInterval>) -> Self {
        Region { arcs }
    }

    pub fn full(n: usize) -> Self {
        Region { arcs: vec![XInterval::full(); n] }
    }

    pub fn finite(bounds: &[(Q, Q)]) -> Self {
        Region { arcs: bounds.iter().map(|(a, b)| XInterval::finite(a.clone(), b.clone())).collect() }
    }

    pub fn point(p: &[XReal]) -> Self {
        Region { arcs: p.iter().cloned().map(XInterval::point).collect() }
    }

    pub fn dim(&self) -> usize {
        self.arcs.len()
    }

    pub fn contains(&self, p: &[XReal]) -> bool {
        p.len() == self.arcs.len() && self.arcs.iter().zip(p).all(|(a, v)| a.contains(v))
    }

    pub fn contains_finite(&self, p: &[Q]) -> bool {
        p.len() == self.arcs.len() && self.arcs.iter().zip(p).all(|(a, v)| a.contains(&XReal::Finite(v.clone())))
    }
}

/// The common zeros of numerator and denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExcludedLocus {
    /// The defining system `{p = 0, q = 0}`.
    pub system: [Poly; 2],
    /// True when the locus is certified to have no real points.
    pub empty: bool,
    /// The rational points of the locus.
    #[serde(with = "crate::rational::serde_q::vec2")]
    pub rational_points: Vec<Vec<Q>>,
    /// True when the locus may contain irrational real points beyond
    /// `rational_points`.
    pub may_have_irrational: bool,
}

impl ExcludedLocus {
    fn of(f: &RatFunc) -> Self {
        let system = [f.p.clone(), f.q.clone()];
        let trivial =
            |system| ExcludedLocus { system, empty: true, rational_points: vec![], may_have_irrational: false };
        // coprime polynomials with no y have no common root at all
        if f.p.is_constant() || f.q.is_constant() || !f.uses_y() {
            return trivial(system);
        }
        // project to x, then solve the fibers
        let (a, b, swap) = if f.p.uses_y() && f.q.uses_y() {
            (f.p.clone(), f.q.clone(), false)
        } else {
            (swap_xy(&f.p), swap_xy(&f.q), true)
        };
        let r = resultant_y(&a, &b);
        let s = SturmSeq::new(&r);
        let nreal = s.count_all();
        let mut pts = Vec::new();
        let mut seen_x = 0usize;
        for x0 in r.rational_roots() {
            seen_x += 1;
            let g = UPoly::gcd(&a.subs_x(&x0), &b.subs_x(&x0));
            for y0 in g.rational_roots() {
                pts.push(if swap { vec![y0, x0.clone()] } else { vec![x0.clone(), y0] });
            }
        }
        pts.sort();
        let may_irr = nreal > seen_x || pts.len() < seen_x;
        ExcludedLocus { system, empty: nreal == 0, rational_points: pts, may_have_irrational: may_irr }
    }

    pub fn contains(&self, point: &[Q]) -> bool {
        let zero = Q::zero();
        let x = point.first().unwrap_or(&zero);
        let y = point.get(1).unwrap_or(&zero);
        self.system[0].eval(x, y).is_zero() && self.system[1].eval(x, y).is_zero()
    }
}

fn swap_xy(p: &Poly) -> Poly {
    Poly::from_terms(p.terms().map(|(m, c)| (m.y, m.x, c.clone())))
}

/// One member of a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Member {
    pub id: String,
    #[serde(rename = "expr")]
    pub f: RatFunc,
}

/// A finite family of distinct rational functions with unique identifiers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionFamily {
    nvars: usize,
    members: Vec<Member>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FamilyRepr {
    List(Vec<Member>),
    Full { nvars: Option<usize>, members: Vec<Member> },
}

impl FunctionFamily {
    /// `nvars` defaults to 2 when some member uses y, else 1.
    pub fn new(members: Vec<Member>, nvars: Option<usize>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Empty("family has no members"));
        }
        let uses_y = members.iter().any(|m| m.f.uses_y());
        let n = nvars.unwrap_or(if uses_y { 2 } else { 1 });
        if !(1..=2).contains(&n) {
            return Err(Error::Invalid(format!("families have 1 or 2 variables, not {n}")));
        }
        if n == 1 && uses_y {
            return Err(Error::Invalid("one-variable family uses y".into()));
        }
        for (i, m) in members.iter().enumerate() {
            for o in &members[..i] {
                if o.id == m.id {
                    return Err(Error::DuplicateMember(format!("identifier `{}`", m.id)));
                }
                if o.f == m.f {
                    return Err(Error::DuplicateMember(format!("`{}` and `{}` are both {}", o.id, m.id, m.f)));
                }
            }
        }
        Ok(FunctionFamily { nvars: n, members })
    }

    /// Family from `(id, expression)` pairs.
    pub fn from_exprs(items: &[(&str, &str)], nvars: Option<usize>) -> Result<Self> {
        let members = items
            .iter()
            .map(|(id, e)| Ok(Member { id: id.to_string(), f: crate::parse::parse(e)? }))
            .collect::<Result<Vec<_>>>()?;
        FunctionFamily::new(members, nvars)
    }

    /// Reads `[{"id": .., "expr": ..}, ..]` or
    /// `{"nvars": n, "members": [..]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let r: FamilyRepr = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("family manifest: {e}")))?;
        match r {
            FamilyRepr::List(m) => FunctionFamily::new(m, None),
            FamilyRepr::Full { nvars, members } => FunctionFamily::new(members, nvars),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&RatFunc> {
        self.members.iter().find(|m| m.id == id).map(|m| &m.f)
    }

    pub fn id_of(&self, f: &RatFunc) -> Option<&str> {
        self.members.iter().find(|m| &m.f == f).map(|m| m.id.as_str())
    }

    /// Whether `point` lies in dom(E), the intersection of the domains.
    pub fn in_domain(&self, point: &[Q]) -> bool {
        self.members.iter().all(|m| m.f.in_domain(point))
    }

    /// The family with `f` appended under `id` unless already present.
    pub fn with_member(&self, id: &str, f: RatFunc) -> Result<Self> {
        if self.id_of(&f).is_some() {
            return Ok(self.clone());
        }
        let mut m = self.members.clone();
        m.push(Member { id: id.to_string(), f });
        FunctionFamily::new(m, Some(self.nvars))
    }
}

/// Integer-coefficient view used by callers that need `BigInt`s.
pub fn integer_coeffs(p: &Poly) -> Option<Vec<(u32, u32, BigInt)>> {
    p.terms().map(|(m, c)| c.is_integer().then(|| (m.x, m.y, c.to_integer()))).collect()
}
