//! Closed intervals with exact rational endpoints.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{fmt_rational, midpoint, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Iv {
    #[serde(with = "crate::rational::serde_q")]
    pub lo: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub hi: Q,
}

fn min2(a: Q, b: Q) -> Q {
    if a <= b {
        a
    } else {
        b
    }
}

fn max2(a: Q, b: Q) -> Q {
    if a >= b {
        a
    } else {
        b
    }
}

impl Iv {
    pub fn new(lo: Q, hi: Q) -> Self {
        debug_assert!(lo <= hi, "empty interval");
        Iv { lo, hi }
    }

    pub fn point(v: Q) -> Self {
        Iv { lo: v.clone(), hi: v }
    }

    pub fn zero() -> Self {
        Iv::point(Q::zero())
    }

    /// `[-r, r]`.
    pub fn symmetric(r: Q) -> Self {
        Iv { lo: -r.clone(), hi: r }
    }

    pub fn contains(&self, v: &Q) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Q {
        midpoint(&self.lo, &self.hi)
    }

    /// Largest absolute value attained.
    pub fn mag(&self) -> Q {
        max2(self.lo.abs(), self.hi.abs())
    }

    pub fn hull(&self, other: &Iv) -> Iv {
        Iv { lo: min2(self.lo.clone(), other.lo.clone()), hi: max2(self.hi.clone(), other.hi.clone()) }
    }

    pub fn add(&self, o: &Iv) -> Iv {
        Iv { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Iv) -> Iv {
        Iv { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Iv {
        Iv { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn scale(&self, c: &Q) -> Iv {
        let a = c * &self.lo;
        let b = c * &self.hi;
        if a <= b {
            Iv { lo: a, hi: b }
        } else {
            Iv { lo: b, hi: a }
        }
    }

    pub fn mul(&self, o: &Iv) -> Iv {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mut lo = p[0].clone();
        let mut hi = p[0].clone();
        for v in &p[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        Iv { lo, hi }
    }

    /// Exact range of `t^n` over the interval.
    pub fn powi(&self, n: u32) -> Iv {
        if n == 0 {
            return Iv::point(Q::one());
        }
        let a = num_traits::pow(self.lo.clone(), n as usize);
        let b = num_traits::pow(self.hi.clone(), n as usize);
        if n % 2 == 1 {
            Iv { lo: a, hi: b }
        } else if self.contains_zero() {
            Iv { lo: Q::zero(), hi: max2(a, b) }
        } else {
            Iv { lo: min2(a.clone(), b.clone()), hi: max2(a, b) }
        }
    }

    pub fn split(&self) -> (Iv, Iv) {
        let m = self.mid();
        (Iv { lo: self.lo.clone(), hi: m.clone() }, Iv { lo: m, hi: self.hi.clone() })
    }
}

impl fmt::Display for Iv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fmt_rational(&self.lo), fmt_rational(&self.hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn even_powers_straddling_zero() {
        let i = Iv::new(q(-2), q(1));
        assert_eq!(i.powi(2), Iv::new(q(0), q(4)));
        assert_eq!(i.powi(3), Iv::new(q(-8), q(1)));
        assert_eq!(Iv::new(q(-3), q(-1)).powi(2), Iv::new(q(1), q(9)));
    }

    #[test]
    fn products() {
        let a = Iv::new(q(-1), q(2));
        let b = Iv::new(q(-3), q(1));
        assert_eq!(a.mul(&b), Iv::new(q(-6), q(3)));
        assert_eq!(a.sub(&b), Iv::new(q(-2), q(5)));
    }
}
