//! Dense univariate polynomials over ℚ.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::interval::Iv;
use crate::rational::{fmt_rational, Q};

/// Coefficients lowest degree first; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    c: Vec<Q>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly::constant(Q::one())
    }

    pub fn x() -> Self {
        UPoly { c: vec![Q::zero(), Q::one()] }
    }

    pub fn constant(v: Q) -> Self {
        UPoly::from_coeffs(vec![v])
    }

    pub fn from_coeffs(c: Vec<Q>) -> Self {
        let mut p = UPoly { c };
        p.trim();
        p
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::from_coeffs(c.iter().map(|&v| Q::from_integer(v.into())).collect())
    }

    /// `x - r`.
    pub fn linear_root(r: Q) -> Self {
        UPoly { c: vec![-r, Q::one()] }
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|v| v.is_zero()) {
            self.c.pop();
        }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.c.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    /// Sign of the value at `x`: -1, 0 or 1.
    pub fn sign_at(&self, x: &Q) -> i8 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Centered-form enclosure of the range over `x`.
    pub fn eval_iv(&self, x: &Iv) -> Iv {
        if self.is_constant() {
            return Iv::point(self.coeff(0));
        }
        let m = x.mid();
        let r = &x.hi - &m;
        let s = self.shift(&m);
        let mut lo = s.coeff(0);
        let mut hi = lo.clone();
        let mut rp = Q::one();
        for a in s.c.iter().skip(1) {
            rp = &rp * &r;
            let t = a.abs() * &rp;
            hi += &t;
            lo -= t;
        }
        Iv::new(lo, hi)
    }

    pub fn neg(&self) -> UPoly {
        UPoly { c: self.c.iter().map(|v| -v).collect() }
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::from_coeffs((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn scale(&self, k: &Q) -> UPoly {
        if k.is_zero() {
            return UPoly::zero();
        }
        UPoly { c: self.c.iter().map(|v| v * k).collect() }
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(c)
    }

    pub fn pow(&self, n: u32) -> UPoly {
        let mut acc = UPoly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::from_coeffs(self.c.iter().enumerate().skip(1).map(|(i, a)| a * Q::from_integer(i.into())).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.deg();
        if self.c.len() < d.c.len() {
            return (UPoly::zero(), self.clone());
        }
        let inv = d.lc().recip();
        let mut r = self.c.clone();
        let mut qc = vec![Q::zero(); self.c.len() - dd];
        for k in (0..qc.len()).rev() {
            let t = &r[k + dd] * &inv;
            if t.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[k + j] -= &t * b;
            }
            qc[k] = t;
        }
        r.truncate(dd);
        (UPoly::from_coeffs(qc), UPoly::from_coeffs(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Exact quotient, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&self.lc().recip())
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree(&self) -> UPoly {
        if self.is_constant() {
            return self.monic();
        }
        let g = UPoly::gcd(self, &self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut l = BigInt::one();
        for a in &self.c {
            l = l.lcm(a.denom());
        }
        let ints: Vec<BigInt> = self.c.iter().map(|a| (a * Q::from_integer(l.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        if self.lc().is_negative() {
            g = -g;
        }
        UPoly::from_coeffs(ints.into_iter().map(|v| Q::from_integer(v / &g)).collect())
    }

    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.c.iter().map(|a| a.is_integer().then(|| a.to_integer())).collect()
    }

    /// `p(x + a)`.
    pub fn shift(&self, a: &Q) -> UPoly {
        let mut c = self.c.clone();
        let n = c.len();
        if a.is_zero() {
            return self.clone();
        }
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        UPoly::from_coeffs(c)
    }

    /// `p(k x)`.
    pub fn scale_var(&self, k: &Q) -> UPoly {
        let mut f = Q::one();
        let mut c = Vec::with_capacity(self.c.len());
        for a in &self.c {
            c.push(a * &f);
            f *= k;
        }
        UPoly::from_coeffs(c)
    }

    /// `x^d p(1/x)` with `d = deg p`.
    pub fn reverse(&self) -> UPoly {
        let mut c = self.c.clone();
        c.reverse();
        UPoly::from_coeffs(c)
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(q).add(&UPoly::constant(a.clone()));
        }
        acc
    }

    /// Every real root has absolute value below this bound.
    pub fn root_bound(&self) -> Q {
        let lc = self.lc().abs();
        let mut m = Q::zero();
        for a in &self.c[..self.c.len().saturating_sub(1)] {
            let v = a.abs() / &lc;
            if v > m {
                m = v;
            }
        }
        Q::one() + m
    }

    /// Rational numbers `r` with `self(r) = 0`, found by the rational root
    /// test on the primitive integer form.
    pub fn rational_roots(&self) -> Vec<Q> {
        let p = self.primitive();
        let Some(ints) = p.integer_coeffs() else { return Vec::new() };
        let mut roots = Vec::new();
        if ints.is_empty() {
            return roots;
        }
        let mut k = 0;
        while k < ints.len() && ints[k].is_zero() {
            k += 1;
        }
        if k > 0 {
            roots.push(Q::zero());
        }
        let rest = &ints[k..];
        if rest.len() <= 1 {
            return roots;
        }
        let nums = divisors(&rest[0]);
        let dens = divisors(rest.last().unwrap());
        let mut cand: Vec<Q> = Vec::new();
        for n in &nums {
            for d in &dens {
                let r = Q::new(n.clone(), d.clone());
                cand.push(r.clone());
                cand.push(-r);
            }
        }
        cand.sort();
        cand.dedup();
        for r in cand {
            if p.eval(&r).is_zero() {
                roots.push(r);
            }
        }
        roots.sort();
        roots
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", fmt_rational(&mag), mono));
            }
        }
        out
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

/// Positive divisors of `|n|` (n ≠ 0) by trial division.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let e = &n / &d;
            if e != d {
                large.push(e);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}
