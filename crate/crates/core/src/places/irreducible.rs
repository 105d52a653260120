//! Irreducibility over ℚ of integer polynomials in one variable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Iv;
use crate::rational::{exact_sqrt_int, pow2, Q};
use crate::sturm::SturmSeq;
use crate::upoly::{divisors, UPoly};

/// Why a polynomial is irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Linear,
    /// Irreducible modulo a prime not dividing the leading coefficient.
    ModP {
        p: u64,
    },
    /// No rational root and, in degree 4, no quadratic factor with integer
    /// coefficients.
    FactorSearch,
    /// Every root is real, and for each proper subset of the isolated
    /// roots some coefficient of the scaled product has an enclosure free
    /// of integers.
    RealRootSubsets {
        #[serde(with = "crate::rational::serde_q")]
        width: Q,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Irreducibility {
    Irreducible(Certificate),
    Reducible {
        #[serde(serialize_with = "super::numfield::serde_upoly::serialize")]
        factor: UPoly,
        #[serde(serialize_with = "super::numfield::serde_upoly::serialize")]
        cofactor: UPoly,
    },
    Unresolved,
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible(_))
    }
}

const PRIMES: [u64; 25] =
    [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

fn reducible(f: &UPoly, factor: UPoly) -> Irreducibility {
    let factor = factor.primitive();
    let cofactor = f.div_exact(&factor).expect("exact factor").primitive();
    Irreducibility::Reducible { factor, cofactor }
}

fn ints_of(f: &UPoly) -> Vec<BigInt> {
    f.integer_coeffs().expect("integer polynomial")
}

/// Dense polynomials over 𝔽_p, low degree first, no trailing zeros.
mod fp {
    pub type P = Vec<u64>;

    pub fn trim(mut a: P) -> P {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    pub fn rem(a: &P, m: &P, p: u64) -> P {
        let mut r = a.clone();
        let dm = m.len() - 1;
        let il = inv(m[dm], p);
        while r.len() > dm {
            let k = r.len() - 1;
            let c = r[k] * il % p;
            if c != 0 {
                for i in 0..=dm {
                    let t = c * m[i] % p;
                    r[k - dm + i] = (r[k - dm + i] + p - t) % p;
                }
            }
            r.pop();
            r = trim(r);
            if r.len() <= dm {
                break;
            }
        }
        trim(r)
    }

    pub fn mulmod(a: &P, b: &P, m: &P, p: u64) -> P {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut c = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                c[i + j] = (c[i + j] + x * y) % p;
            }
        }
        rem(&trim(c), m, p)
    }

    pub fn powmod(b: &P, mut e: u64, m: &P, p: u64) -> P {
        let mut r: P = vec![1];
        let mut b = rem(b, m, p);
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(&r, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            e >>= 1;
        }
        r
    }

    pub fn sub(a: &P, b: &P, p: u64) -> P {
        let n = a.len().max(b.len());
        let mut c = vec![0u64; n];
        for (i, v) in c.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *v = (x + p - y) % p;
        }
        trim(c)
    }

    pub fn gcd(a: &P, b: &P, p: u64) -> P {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }
}

/// Prime `p` such that `f` stays irreducible of the same degree mod `p`.
pub fn mod_p_witness(f: &UPoly) -> Option<u64> {
    let f = f.primitive();
    let n = f.deg();
    if n <= 1 {
        return None;
    }
    let ints = ints_of(&f);
    for &p in &PRIMES {
        let pb = BigInt::from(p);
        let red: Vec<u64> = ints.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
        if red[n] == 0 {
            continue;
        }
        let m = fp::trim(red);
        let x: fp::P = vec![0, 1];
        let mut xp = x.clone();
        let mut ok = true;
        for _ in 0..n / 2 {
            xp = fp::powmod(&xp, p, &m, p);
            let g = fp::gcd(&m, &fp::sub(&xp, &x, p), p);
            if g.len() > 1 {
                ok = false;
                break;
            }
        }
        if ok {
            return Some(p);
        }
    }
    None
}

fn int_q(v: &BigInt) -> Q {
    Q::from_integer(v.clone())
}

/// Quadratic factor of a primitive quartic with no rational roots.
fn quadratic_factor(f: &UPoly) -> Option<UPoly> {
    let a = ints_of(f);
    let (a0, a1, a2, a3, a4) = (&a[0], &a[1], &a[2], &a[3], &a[4]);
    let mut found: Vec<UPoly> = Vec::new();
    for b2 in divisors(a4) {
        let c2 = a4 / &b2;
        for b0a in divisors(a0) {
            for b0 in [b0a.clone(), -b0a] {
                let c0 = a0 / &b0;
                let mut cands: Vec<(BigInt, BigInt)> = Vec::new();
                let det = &c2 * &b0 - &b2 * &c0;
                if !det.is_zero() {
                    // c2 b1 + b2 c1 = a3, c0 b1 + b0 c1 = a1
                    let nb1 = a3 * &b0 - &b2 * a1;
                    let nc1 = &c2 * a1 - &c0 * a3;
                    if (&nb1 % &det).is_zero() && (&nc1 % &det).is_zero() {
                        cands.push((nb1 / &det, nc1 / &det));
                    }
                } else {
                    // c1 = (a3 - b1 c2) / b2, then a quadratic in b1
                    let k = a2 - &b2 * &c0 - &b0 * &c2;
                    let disc = a3 * a3 - BigInt::from(4) * &c2 * &b2 * &k;
                    if !disc.is_negative() {
                        if let Some(s) = exact_sqrt_int(&disc) {
                            for num in [a3 + &s, a3 - &s] {
                                let den = BigInt::from(2) * &c2;
                                if (&num % &den).is_zero() {
                                    let b1 = num / &den;
                                    let r = a3 - &b1 * &c2;
                                    if (&r % &b2).is_zero() {
                                        cands.push((b1, r / &b2));
                                    }
                                }
                            }
                        }
                    }
                }
                for (b1, c1) in cands {
                    let g = UPoly::from_coeffs(vec![int_q(&b0), int_q(&b1), int_q(&b2)]);
                    let h = UPoly::from_coeffs(vec![int_q(&c0), int_q(&c1), int_q(&c2)]);
                    if g.mul(&h) == *f {
                        found.push(g.primitive());
                        found.push(h.primitive());
                    }
                }
            }
        }
    }
    found.sort_by(|x, y| x.coeffs().cmp(y.coeffs()));
    found.pop()
}

/// Decides irreducibility over ℚ for degree at most 4.
pub fn irreducible_over_q(f: &UPoly) -> Result<Irreducibility> {
    let f = check_input(f)?;
    if f.deg() > 4 {
        return Err(Error::UnsupportedDegree { degree: f.deg(), max: 4 });
    }
    Ok(small_degree(&f))
}

fn check_input(f: &UPoly) -> Result<UPoly> {
    if f.is_constant() {
        return Err(Error::Invalid("constant polynomials are not irreducible".into()));
    }
    Ok(f.primitive())
}

fn small_degree(f: &UPoly) -> Irreducibility {
    if f.deg() == 1 {
        return Irreducibility::Irreducible(Certificate::Linear);
    }
    if let Some(p) = mod_p_witness(f) {
        return Irreducibility::Irreducible(Certificate::ModP { p });
    }
    if let Some(r) = f.rational_roots().pop() {
        return reducible(f, UPoly::linear_root(r));
    }
    if f.deg() == 4 {
        if let Some(g) = quadratic_factor(f) {
            return reducible(f, g);
        }
    }
    Irreducibility::Irreducible(Certificate::FactorSearch)
}

const MAX_SUBSET_DEGREE: usize = 12;

/// Shows that no proper subset of the (all real) roots is the root set of
/// a factor over ℚ.
pub fn real_root_subsets(f: &UPoly) -> Irreducibility {
    let f = f.primitive();
    let n = f.deg();
    if n > MAX_SUBSET_DEGREE {
        return Irreducibility::Unresolved;
    }
    let g = UPoly::gcd(&f, &f.derivative());
    if !g.is_constant() {
        return reducible(&f, g);
    }
    let s = SturmSeq::new(&f);
    if s.count_all() != n {
        return Irreducibility::Unresolved;
    }
    let iso = s.isolate();
    let lc = f.lc();
    for bits in [16i64, 48, 128, 256] {
        let w = pow2(-bits);
        let roots: Vec<Iv> = iso
            .iter()
            .map(|(a, b)| {
                let (l, h) = s.refine(a, b, &w);
                Iv::new(l, h)
            })
            .collect();
        let mut open = false;
        for mask in 1u32..(1 << n) - 1 {
            let k = mask.count_ones() as usize;
            if 2 * k > n || (2 * k == n && mask & 1 == 0) {
                continue;
            }
            let mut prod = vec![Iv::point(lc.clone())];
            for (i, r) in roots.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    let mut next = vec![Iv::zero(); prod.len() + 1];
                    for (j, c) in prod.iter().enumerate() {
                        next[j + 1] = next[j + 1].add(c);
                        next[j] = next[j].sub(&c.mul(r));
                    }
                    prod = next;
                }
            }
            let excluded = prod.iter().any(|c| {
                let lo = crate::rational::ceil(&c.lo);
                int_q(&lo) > c.hi
            });
            if excluded {
                continue;
            }
            let cand = UPoly::from_coeffs(
                prod.iter().map(|c| int_q(&crate::rational::floor(&(c.mid() + Q::new(1.into(), 2.into()))))).collect(),
            );
            if !cand.is_constant() && f.rem(&cand).is_zero() {
                return reducible(&f, cand);
            }
            open = true;
            break;
        }
        if !open {
            return Irreducibility::Irreducible(Certificate::RealRootSubsets { width: w });
        }
    }
    Irreducibility::Unresolved
}

/// Best available decision for any degree: exact search up to degree 4,
/// then a mod-p witness or the real-root subset test.
pub fn certify_irreducible(f: &UPoly) -> Result<Irreducibility> {
    let f = check_input(f)?;
    if f.deg() <= 4 {
        return Ok(small_degree(&f));
    }
    if let Some(p) = mod_p_witness(&f) {
        return Ok(Irreducibility::Irreducible(Certificate::ModP { p }));
    }
    if let Some(r) = f.rational_roots().pop() {
        return Ok(reducible(&f, UPoly::linear_root(r)));
    }
    Ok(real_root_subsets(&f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(c: &[i64]) -> UPoly {
        UPoly::from_ints(c)
    }

    #[test]
    fn quartic_of_the_remark() {
        let f = up(&[2, 0, -5, 0, 1]);
        assert!(irreducible_over_q(&f).unwrap().is_irreducible());
        assert!(mod_p_witness(&f).is_some());
    }

    #[test]
    fn explicit_factors() {
        match irreducible_over_q(&up(&[-1, 0, 1])).unwrap() {
            Irreducibility::Reducible { factor, .. } => assert_eq!(factor, up(&[-1, 1])),
            r => panic!("{r:?}"),
        }
        match irreducible_over_q(&up(&[4, 0, 0, 0, 1])).unwrap() {
            Irreducibility::Reducible { factor, cofactor } => {
                assert_eq!(factor, up(&[2, 2, 1]));
                assert_eq!(cofactor, up(&[2, -2, 1]));
            }
            r => panic!("{r:?}"),
        }
        assert!(matches!(irreducible_over_q(&up(&[1, 0, 0, 0, 0, 1])), Err(Error::UnsupportedDegree { .. })));
    }

    #[test]
    fn subset_test_on_products() {
        // (x^2-2)(x^2-3) is caught; x^4-10x^2+1 (all real roots) is certified
        assert!(matches!(real_root_subsets(&up(&[6, 0, -5, 0, 1])), Irreducibility::Reducible { .. }));
        assert!(real_root_subsets(&up(&[1, 0, -10, 0, 1])).is_irreducible());
        // never irreducible modulo any prime, yet irreducible over ℚ
        assert_eq!(mod_p_witness(&up(&[1, 0, -10, 0, 1])), None);
    }
}
