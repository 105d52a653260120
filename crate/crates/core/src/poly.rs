//! Sparse polynomials over ℚ in the variables x and y.
//!
//! One-variable polynomials are the ones in which y does not occur; the
//! variable count is carried by the enclosing family, not by the terms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::interval::Iv;
use crate::rational::{fmt_rational, Q};
use crate::upoly::UPoly;

/// Exponent pair of `x^x * y^y`, ordered graded-lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mono {
    pub x: u32,
    pub y: u32,
}

impl Mono {
    pub fn new(x: u32, y: u32) -> Self {
        Mono { x, y }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y
    }

    fn divides(&self, o: &Mono) -> bool {
        self.x <= o.x && self.y <= o.y
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then(self.x.cmp(&o.x))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Poly::monomial(c, 0, 0)
    }

    pub fn int(c: i64) -> Self {
        Poly::constant(Q::from_integer(c.into()))
    }

    pub fn x() -> Self {
        Poly::monomial(Q::one(), 1, 0)
    }

    pub fn y() -> Self {
        Poly::monomial(Q::one(), 0, 1)
    }

    pub fn monomial(c: Q, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::new(i, j), c);
        }
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, u32, Q)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (i, j, c) in it {
            p.add_term(Mono::new(i, j), c);
        }
        p
    }

    /// `u(x)` as a polynomial.
    pub fn from_upoly_x(u: &UPoly) -> Self {
        Poly::from_terms(u.coeffs().iter().enumerate().map(|(i, c)| (i as u32, 0, c.clone())))
    }

    /// `u(y)` as a polynomial.
    pub fn from_upoly_y(u: &UPoly) -> Self {
        Poly::from_terms(u.coeffs().iter().enumerate().map(|(j, c)| (0, j as u32, c.clone())))
    }

    fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Q {
        self.terms.get(&Mono::new(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value when the polynomial is constant.
    pub fn constant_value(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Mono::new(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn uses_y(&self) -> bool {
        self.terms.keys().any(|m| m.y > 0)
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|m| m.x).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|m| m.y).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Largest term in graded-lex order.
    pub fn leading(&self) -> Option<(Mono, Q)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c.clone()))
    }

    pub fn lc(&self) -> Q {
        self.leading().map(|t| t.1).unwrap_or_else(Q::zero)
    }

    /// Lowest total degree among the terms (0 for the zero polynomial).
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).min().unwrap_or(0)
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (*m, c.clone())).collect() }
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c);
        }
        r
    }

    pub fn scale(&self, k: &Q) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                r.add_term(Mono::new(a.x + b.x, a.y + b.y), ca * cb);
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, x: &Q, y: &Q) -> Q {
        let dx = self.deg_x() as usize;
        let dy = self.deg_y() as usize;
        let xp = powers(x, dx);
        let yp = powers(y, dy);
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            acc += c * &xp[m.x as usize] * &yp[m.y as usize];
        }
        acc
    }

    /// `self(x + a, y + b)`.
    pub fn shift(&self, a: &Q, b: &Q) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let dx = self.deg_x() as usize + 1;
        let dy = self.deg_y() as usize + 1;
        let mut g = vec![vec![Q::zero(); dy]; dx];
        for (m, c) in &self.terms {
            g[m.x as usize][m.y as usize] = c.clone();
        }
        if !a.is_zero() {
            for j in 0..dy {
                for i in 0..dx {
                    for k in (i..dx - 1).rev() {
                        let t = &g[k + 1][j] * a;
                        g[k][j] += t;
                    }
                }
            }
        }
        if !b.is_zero() {
            for row in g.iter_mut() {
                for i in 0..dy {
                    for k in (i..dy - 1).rev() {
                        let t = &row[k + 1] * b;
                        row[k] += t;
                    }
                }
            }
        }
        let mut r = Poly::zero();
        for (i, row) in g.into_iter().enumerate() {
            for (j, c) in row.into_iter().enumerate() {
                r.add_term(Mono::new(i as u32, j as u32), c);
            }
        }
        r
    }

    /// Centered-form enclosure of the range over the box `x × y`.
    pub fn eval_iv(&self, x: &Iv, y: &Iv) -> Iv {
        if let Some(c) = self.constant_value() {
            return Iv::point(c);
        }
        let mx = x.mid();
        let my = y.mid();
        let rx = &x.hi - &mx;
        let ry = &y.hi - &my;
        let s = self.shift(&mx, &my);
        let xp = powers(&rx, s.deg_x() as usize);
        let yp = powers(&ry, s.deg_y() as usize);
        let mut lo = Q::zero();
        let mut hi = Q::zero();
        for (m, c) in &s.terms {
            if m.x == 0 && m.y == 0 {
                lo += c;
                hi += c;
                continue;
            }
            let mag = &xp[m.x as usize] * &yp[m.y as usize];
            let t = c * &mag;
            if m.x % 2 == 0 && m.y % 2 == 0 {
                if t.is_positive() {
                    hi += t;
                } else {
                    lo += t;
                }
            } else {
                let a = t.abs();
                hi += &a;
                lo -= a;
            }
        }
        Iv::new(lo, hi)
    }

    /// `self(xs, ys)`.
    pub fn compose(&self, xs: &Poly, ys: &Poly) -> Poly {
        let xp = poly_powers(xs, self.deg_x() as usize);
        let yp = poly_powers(ys, self.deg_y() as usize);
        let mut r = Poly::zero();
        for (m, c) in &self.terms {
            r = r.add(&xp[m.x as usize].mul(&yp[m.y as usize]).scale(c));
        }
        r
    }

    /// `x^dx * self(1/x, y)` with `dx = deg_x`.
    pub fn reverse_x(&self) -> Poly {
        let d = self.deg_x();
        Poly { terms: self.terms.iter().map(|(m, c)| (Mono::new(d - m.x, m.y), c.clone())).collect() }
    }

    /// `y^dy * self(x, 1/y)` with `dy = deg_y`.
    pub fn reverse_y(&self) -> Poly {
        let d = self.deg_y();
        Poly { terms: self.terms.iter().map(|(m, c)| (Mono::new(m.x, d - m.y), c.clone())).collect() }
    }

    /// Multiply by `x^i y^j`.
    pub fn shift_exponents(&self, i: u32, j: u32) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (Mono::new(m.x + i, m.y + j), c.clone())).collect() }
    }

    /// Substitute `x = c`, leaving a polynomial in y.
    pub fn subs_x(&self, c: &Q) -> UPoly {
        let xp = powers(c, self.deg_x() as usize);
        let mut v = vec![Q::zero(); self.deg_y() as usize + 1];
        for (m, a) in &self.terms {
            v[m.y as usize] += a * &xp[m.x as usize];
        }
        UPoly::from_coeffs(v)
    }

    /// Substitute `y = c`, leaving a polynomial in x.
    pub fn subs_y(&self, c: &Q) -> UPoly {
        let yp = powers(c, self.deg_y() as usize);
        let mut v = vec![Q::zero(); self.deg_x() as usize + 1];
        for (m, a) in &self.terms {
            v[m.x as usize] += a * &yp[m.y as usize];
        }
        UPoly::from_coeffs(v)
    }

    /// The polynomial as one in x, when y does not occur.
    pub fn as_upoly_x(&self) -> Option<UPoly> {
        if self.uses_y() {
            return None;
        }
        Some(self.subs_y(&Q::zero()))
    }

    /// Coefficients with respect to y, each a polynomial in x.
    pub fn y_coeffs(&self) -> Vec<UPoly> {
        let mut v: Vec<Vec<Q>> = vec![vec![Q::zero(); self.deg_x() as usize + 1]; self.deg_y() as usize + 1];
        for (m, a) in &self.terms {
            v[m.y as usize][m.x as usize] = a.clone();
        }
        if self.is_zero() {
            return Vec::new();
        }
        v.into_iter().map(UPoly::from_coeffs).collect()
    }

    pub fn from_y_coeffs(v: &[UPoly]) -> Poly {
        let mut r = Poly::zero();
        for (j, u) in v.iter().enumerate() {
            for (i, c) in u.coeffs().iter().enumerate() {
                r.add_term(Mono::new(i as u32, j as u32), c.clone());
            }
        }
        r
    }

    /// Exact quotient, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        let inv = dc.recip();
        let mut r = self.clone();
        let mut qt = Poly::zero();
        while let Some((m, c)) = r.leading() {
            if !dm.divides(&m) {
                return None;
            }
            let t = Poly::monomial(c * &inv, m.x - dm.x, m.y - dm.y);
            r = r.sub(&t.mul(d));
            qt = qt.add(&t);
        }
        Some(qt)
    }

    /// Least common denominator of the coefficients and gcd of the
    /// rescaled numerators.
    pub fn integer_content(&self) -> (BigInt, BigInt) {
        let mut l = BigInt::one();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(&(c * Q::from_integer(l.clone())).to_integer());
        }
        (l, g)
    }

    /// Partial derivative in x.
    pub fn dx(&self) -> Poly {
        Poly::from_terms(
            self.terms.iter().filter(|(m, _)| m.x > 0).map(|(m, c)| (m.x - 1, m.y, c * Q::from_integer(m.x.into()))),
        )
    }

    /// Partial derivative in y.
    pub fn dy(&self) -> Poly {
        Poly::from_terms(
            self.terms.iter().filter(|(m, _)| m.y > 0).map(|(m, c)| (m.x, m.y - 1, c * Q::from_integer(m.y.into()))),
        )
    }

    /// Greatest common divisor up to a nonzero rational factor.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if let (Some(ua), Some(ub)) = (a.as_upoly_x(), b.as_upoly_x()) {
            return Poly::from_upoly_x(&UPoly::gcd(&ua, &ub));
        }
        let av = a.y_coeffs();
        let bv = b.y_coeffs();
        let ca = content(&av);
        let cb = content(&bv);
        let c = UPoly::gcd(&ca, &cb);
        let mut u = prim(&av, &ca);
        let mut v = prim(&bv, &cb);
        if u.len() < v.len() {
            std::mem::swap(&mut u, &mut v);
        }
        while !v.is_empty() {
            let r = prem(&u, &v);
            u = v;
            if r.is_empty() {
                break;
            }
            let cr = content(&r);
            v = prim(&r, &cr);
        }
        let cu = content(&u);
        let g = prim(&u, &cu);
        Poly::from_y_coeffs(&g).mul(&Poly::from_upoly_x(&c))
    }

    /// Parses an expression that must simplify to a polynomial.
    pub fn from_text(text: &str) -> crate::error::Result<Poly> {
        let f = crate::parse::parse(text)?;
        match f.denom().constant_value() {
            Some(c) => Ok(f.numer().scale(&c.recip())),
            None => Err(crate::error::Error::Invalid(format!("`{text}` is not a polynomial"))),
        }
    }

    /// Canonical text, terms in descending graded-lex order.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut f: Vec<String> = Vec::new();
            if !mag.is_one() || (m.x == 0 && m.y == 0) {
                f.push(fmt_rational(&mag));
            }
            match m.x {
                0 => {}
                1 => f.push("x".into()),
                e => f.push(format!("x^{e}")),
            }
            match m.y {
                0 => {}
                1 => f.push("y".into()),
                e => f.push(format!("y^{e}")),
            }
            out.push_str(&f.join("*"));
        }
        out
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> serde::Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        Poly::from_text(&s).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn powers(v: &Q, n: usize) -> Vec<Q> {
    let mut p = Vec::with_capacity(n + 1);
    p.push(Q::one());
    for i in 0..n {
        let next = &p[i] * v;
        p.push(next);
    }
    p
}

fn poly_powers(v: &Poly, n: usize) -> Vec<Poly> {
    let mut p = Vec::with_capacity(n + 1);
    p.push(Poly::one());
    for i in 0..n {
        let next = p[i].mul(v);
        p.push(next);
    }
    p
}

fn content(v: &[UPoly]) -> UPoly {
    v.iter().fold(UPoly::zero(), |g, c| UPoly::gcd(&g, c))
}

fn prim(v: &[UPoly], c: &UPoly) -> Vec<UPoly> {
    v.iter().map(|u| u.div_exact(c).expect("content divides")).collect()
}

/// Pseudo-remainder of `a` by `b` in y over ℚ[x]; both nonempty.
fn prem(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r: Vec<UPoly> = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let s = dr - db;
        for u in r.iter_mut() {
            *u = u.mul(&lb);
        }
        for (j, bj) in b.iter().enumerate() {
            r[j + s] = r[j + s].sub(&bj.mul(&lr));
        }
        while r.last().is_some_and(|u| u.is_zero()) {
            r.pop();
        }
    }
    r
}
