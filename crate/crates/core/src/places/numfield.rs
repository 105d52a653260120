//! Real algebraic numbers and the fields they generate.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::irreducible::{certify_irreducible, Irreducibility};
use crate::error::{Error, Result};
use crate::interval::Iv;
use crate::poly::Poly;
use crate::rational::{fmt_rational, midpoint, to_f64, Q};
use crate::sturm::SturmSeq;
use crate::upoly::UPoly;

/// Parses a polynomial in x with rational coefficients.
pub fn parse_upoly(text: &str) -> Result<UPoly> {
    let p = Poly::from_text(text)?;
    p.as_upoly_x().ok_or_else(|| Error::Invalid(format!("`{text}` mentions y")))
}

pub(crate) mod serde_upoly {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &UPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&p.fmt_var("x"))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<UPoly, D::Error> {
        let s = String::deserialize(d)?;
        parse_upoly(&s).map_err(serde::de::Error::custom)
    }
}

/// A real root of an irreducible integer polynomial, given by an interval
/// `[lo, hi]` holding no other root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicNumber {
    #[serde(with = "serde_upoly")]
    pub min_poly: UPoly,
    #[serde(with = "crate::rational::serde_q")]
    pub lo: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub hi: Q,
}

fn roots_in_closed(s: &SturmSeq, p: &UPoly, lo: &Q, hi: &Q) -> usize {
    s.count(lo, hi) + usize::from(p.eval(lo).is_zero())
}

impl AlgebraicNumber {
    /// Checks irreducibility and isolation.
    pub fn new(min_poly: &UPoly, lo: Q, hi: Q) -> Result<Self> {
        let p = min_poly.primitive();
        match certify_irreducible(&p)? {
            Irreducibility::Irreducible(_) => {}
            Irreducibility::Reducible { factor, .. } => return Err(Error::Reducible { factor: factor.fmt_var("x") }),
            Irreducibility::Unresolved => {
                return Err(Error::Invalid(format!("irreducibility of {} could not be certified", p.fmt_var("x"))))
            }
        }
        Self::isolated(p, lo, hi)
    }

    /// Skips the irreducibility check, for polynomials already certified.
    pub fn isolated(p: UPoly, lo: Q, hi: Q) -> Result<Self> {
        if lo > hi {
            return Err(Error::Invalid("isolating interval has lo > hi".into()));
        }
        let s = SturmSeq::new(&p);
        if roots_in_closed(&s, &p, &lo, &hi) != 1 {
            return Err(Error::Invalid(format!(
                "[{}, {}] does not isolate one root",
                fmt_rational(&lo),
                fmt_rational(&hi)
            )));
        }
        if p.deg() == 1 {
            let r = -p.coeff(0) / p.coeff(1);
            return Ok(AlgebraicNumber { min_poly: p, lo: r.clone(), hi: r });
        }
        Ok(AlgebraicNumber { min_poly: p, lo, hi })
    }

    /// A rational number as a degree-one algebraic number.
    pub fn rational(r: Q) -> Self {
        AlgebraicNumber { min_poly: UPoly::linear_root(r.clone()).primitive(), lo: r.clone(), hi: r }
    }

    pub fn degree(&self) -> usize {
        self.min_poly.deg()
    }

    pub fn enclosure(&self) -> Iv {
        Iv::new(self.lo.clone(), self.hi.clone())
    }

    /// Bisection with exact signs until the interval is at most `width` wide.
    pub fn refined(&self, width: &Q) -> AlgebraicNumber {
        let (mut a, mut b) = (self.lo.clone(), self.hi.clone());
        let p = &self.min_poly;
        let sa = p.sign_at(&a);
        while &(&b - &a) > width {
            let m = midpoint(&a, &b);
            let sm = p.sign_at(&m);
            if sm == 0 {
                a = m.clone();
                b = m;
                break;
            }
            if sm == sa {
                a = m;
            } else {
                b = m;
            }
        }
        AlgebraicNumber { min_poly: p.clone(), lo: a, hi: b }
    }

    pub fn approx(&self) -> f64 {
        to_f64(&self.refined(&Q::new(1.into(), (1u64 << 60).into())).enclosure().mid())
    }

    /// The negation as an algebraic number.
    pub fn neg(&self) -> AlgebraicNumber {
        AlgebraicNumber {
            min_poly: self.min_poly.scale_var(&-Q::one()).primitive(),
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    /// `c·α` for rational `c ≠ 0`.
    pub fn scaled(&self, c: &Q) -> AlgebraicNumber {
        assert!(!c.is_zero());
        let p = self.min_poly.scale_var(&c.recip()).primitive();
        let (a, b) = (c * &self.lo, c * &self.hi);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        AlgebraicNumber { min_poly: p, lo, hi }
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "root of {} in [{}, {}] (≈{:.6})",
            self.min_poly.fmt_var("x"),
            fmt_rational(&self.lo),
            fmt_rational(&self.hi),
            self.approx()
        )
    }
}

/// The element `c₀ + c₁α + … + c_{d−1}α^{d−1}` of ℚ(α).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberFieldElement {
    #[serde(with = "crate::rational::serde_q::vec")]
    pub coords: Vec<Q>,
}

impl NumberFieldElement {
    /// `p(α)` reduced modulo the minimal polynomial.
    pub fn from_upoly(p: &UPoly, alpha: &AlgebraicNumber) -> Self {
        let r = p.rem(&alpha.min_poly);
        let mut coords = r.coeffs().to_vec();
        coords.resize(alpha.degree(), Q::zero());
        NumberFieldElement { coords }
    }

    pub fn constant(c: Q, alpha: &AlgebraicNumber) -> Self {
        Self::from_upoly(&UPoly::constant(c), alpha)
    }

    pub fn validate(&self, alpha: &AlgebraicNumber) -> Result<()> {
        if self.coords.len() != alpha.degree() {
            return Err(Error::Arity { expected: alpha.degree(), got: self.coords.len() });
        }
        Ok(())
    }

    pub fn as_upoly(&self) -> UPoly {
        UPoly::from_coeffs(self.coords.clone())
    }

    /// The rational value when the element lies in ℚ.
    pub fn rational_value(&self) -> Option<Q> {
        self.coords.iter().skip(1).all(|c| c.is_zero()).then(|| self.coords.first().cloned().unwrap_or_else(Q::zero))
    }

    /// Interval image of the α-enclosure.
    pub fn eval_iv(&self, alpha: &AlgebraicNumber) -> Iv {
        self.as_upoly().eval_iv(&alpha.enclosure())
    }

    /// Refines α until the image is at most `width` wide.
    pub fn enclosure(&self, alpha: &AlgebraicNumber, width: &Q) -> Iv {
        if let Some(c) = self.rational_value() {
            return Iv::point(c);
        }
        let mut a = alpha.clone();
        let mut w = alpha.hi.clone() - &alpha.lo;
        loop {
            let e = self.eval_iv(&a);
            if &e.width() <= width || a.lo == a.hi {
                return e;
            }
            w /= Q::from_integer(16.into());
            a = a.refined(&w);
        }
    }
}

/// A rational within `precision` of the real number `x` (the canonical
/// place of the Archimedean ordered field ℚ(α) ⊂ ℝ).
pub fn canonical_place(alpha: &AlgebraicNumber, x: &NumberFieldElement, precision: &Q) -> Result<Q> {
    x.validate(alpha)?;
    if !precision.is_positive() {
        return Err(Error::Invalid("precision must be positive".into()));
    }
    Ok(x.enclosure(alpha, precision).mid())
}

/// Rationals `a < x < b`, witnessing that `x` is in the Archimedean part.
pub fn archimedean_bounds(alpha: &AlgebraicNumber, x: &NumberFieldElement) -> Result<(Q, Q)> {
    x.validate(alpha)?;
    if let Some(c) = x.rational_value() {
        return Ok((&c - Q::one(), c + Q::one()));
    }
    // x is irrational, so the closed enclosure bounds it strictly
    let e = x.enclosure(alpha, &Q::new(1.into(), 8.into()));
    Ok((e.lo, e.hi))
}

/// Every ℝ-place of ℚ(α), one per real root of the minimal polynomial.
pub fn enumerate_places(min_poly: &UPoly) -> Result<Vec<AlgebraicNumber>> {
    let p = min_poly.primitive();
    match certify_irreducible(&p)? {
        Irreducibility::Irreducible(_) => {}
        Irreducibility::Reducible { factor, .. } => return Err(Error::Reducible { factor: factor.fmt_var("x") }),
        Irreducibility::Unresolved => {
            return Err(Error::Invalid(format!("irreducibility of {} could not be certified", p.fmt_var("x"))))
        }
    }
    real_roots_of(&p)
}

/// Isolated real roots of an irreducible polynomial, increasing.
pub fn real_roots_of(p: &UPoly) -> Result<Vec<AlgebraicNumber>> {
    let s = SturmSeq::new(p);
    s.isolate().into_iter().map(|(a, b)| AlgebraicNumber::isolated(p.clone(), a, b)).collect()
}

/// Arithmetic in ℚ[t]/(m) for an irreducible `m`.
#[derive(Clone, Debug)]
pub struct Field {
    pub modulus: UPoly,
}

impl Field {
    pub fn new(modulus: UPoly) -> Self {
        Field { modulus }
    }

    pub fn reduce(&self, a: &UPoly) -> UPoly {
        a.rem(&self.modulus)
    }

    pub fn mul(&self, a: &UPoly, b: &UPoly) -> UPoly {
        self.reduce(&a.mul(b))
    }

    /// Inverse by the extended Euclidean algorithm, `None` for zero.
    pub fn inv(&self, a: &UPoly) -> Option<UPoly> {
        let a = self.reduce(a);
        if a.is_zero() {
            return None;
        }
        let (mut r0, mut r1) = (self.modulus.clone(), a);
        let (mut s0, mut s1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (qt, r) = r0.div_rem(&r1);
            let s = s0.sub(&qt.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant since the modulus is irreducible
        let c = r0.coeff(0);
        if !r0.is_constant() || c.is_zero() {
            return None;
        }
        Some(self.reduce(&s0.scale(&c.recip())))
    }
}

/// Polynomials in y over a [`Field`], low degree first.
pub type FieldPoly = Vec<UPoly>;

fn fp_trim(mut a: FieldPoly) -> FieldPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

impl Field {
    pub fn poly_rem(&self, a: &FieldPoly, b: &FieldPoly) -> FieldPoly {
        let b = fp_trim(b.clone());
        let db = b.len() - 1;
        let il = self.inv(&b[db]).expect("nonzero leading coefficient");
        let mut r = fp_trim(a.clone());
        while r.len() > db {
            let k = r.len() - 1;
            let c = self.mul(&r[k], &il);
            for i in 0..=db {
                let t = self.mul(&c, &b[i]);
                r[k - db + i] = self.reduce(&r[k - db + i].sub(&t));
            }
            r = fp_trim(r);
        }
        r
    }

    /// Monic gcd.
    pub fn poly_gcd(&self, a: &FieldPoly, b: &FieldPoly) -> FieldPoly {
        let (mut a, mut b) = (fp_trim(a.clone()), fp_trim(b.clone()));
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        if let Some(l) = a.last().cloned() {
            let il = self.inv(&l).expect("nonzero");
            a = a.iter().map(|c| self.mul(c, &il)).collect();
        }
        a
    }

    /// `f(g(y))` for rational `f` and `g` over the field.
    pub fn compose(&self, f: &UPoly, g: &FieldPoly) -> FieldPoly {
        let mut acc: FieldPoly = Vec::new();
        for c in f.coeffs().iter().rev() {
            let mut next: FieldPoly = vec![UPoly::zero(); acc.len() + g.len()];
            for (i, a) in acc.iter().enumerate() {
                for (j, b) in g.iter().enumerate() {
                    next[i + j] = self.reduce(&next[i + j].add(&a.mul(b)));
                }
            }
            if next.is_empty() {
                next.push(UPoly::zero());
            }
            next[0] = next[0].add(&UPoly::constant(c.clone()));
            acc = fp_trim(next);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    fn up(c: &[i64]) -> UPoly {
        UPoly::from_ints(c)
    }

    #[test]
    fn quartic_powers() {
        let a = AlgebraicNumber::new(&up(&[2, 0, -5, 0, 1]), q(2), q(3)).unwrap();
        let sq = NumberFieldElement::from_upoly(&up(&[0, 0, 1]), &a);
        let v = to_f64(&canonical_place(&a, &sq, &qr(1, 100_000)).unwrap());
        assert!((v - (5.0 + 17f64.sqrt()) / 2.0).abs() < 1e-5);
        let cube = NumberFieldElement::from_upoly(&up(&[0, 0, 0, 1]), &a);
        let (lo, hi) = archimedean_bounds(&a, &cube).unwrap();
        let exact = ((5.0 + 17f64.sqrt()) / 2.0).powf(1.5);
        assert!(to_f64(&lo) < exact && exact < to_f64(&hi) && to_f64(&(hi - lo)) < 1.0);
    }

    #[test]
    fn sqrt2_place() {
        let a = AlgebraicNumber::new(&up(&[-2, 0, 1]), q(1), q(2)).unwrap();
        let x = NumberFieldElement::from_upoly(&UPoly::x(), &a);
        let v = canonical_place(&a, &x, &qr(1, 1000)).unwrap();
        assert!((to_f64(&v) - 2f64.sqrt()).abs() < 1e-3);
        let (lo, hi) = archimedean_bounds(&a, &x).unwrap();
        assert!(q(1) <= lo && &lo * &lo < q(2) && q(2) < &hi * &hi && hi <= q(2));
        let z = NumberFieldElement::constant(q(0), &a);
        assert_eq!(archimedean_bounds(&a, &z).unwrap(), (q(-1), q(1)));
        let c = NumberFieldElement::constant(qr(7, 3), &a);
        assert_eq!(canonical_place(&a, &c, &qr(1, 10)).unwrap(), qr(7, 3));
    }

    #[test]
    fn places_of_small_fields() {
        assert_eq!(enumerate_places(&up(&[2, 0, -5, 0, 1])).unwrap().len(), 4);
        assert_eq!(enumerate_places(&up(&[1, 0, 1])).unwrap().len(), 0);
        assert_eq!(enumerate_places(&up(&[-2, 0, 1])).unwrap().len(), 2);
        assert!(matches!(enumerate_places(&up(&[-1, 0, 1])), Err(Error::Reducible { .. })));
    }

    #[test]
    fn field_inverse() {
        let k = Field::new(up(&[-2, 0, 1]));
        let a = up(&[1, 1]);
        let i = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &i), UPoly::one());
    }
}
