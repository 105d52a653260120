//! Minimal polynomials of α + cβ and the subfield comparison of conjugate
//! roots.

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::irreducible::{certify_irreducible, Certificate, Irreducibility};
use super::numfield::{real_roots_of, serde_upoly, AlgebraicNumber, Field, FieldPoly};
use crate::error::{Error, Result};
use crate::interval::Iv;
use crate::poly::Poly;
use crate::rational::{fmt_rational, q, qr, to_f64, Q};
use crate::resultant::resultant_y;
use crate::sturm::SturmSeq;
use crate::upoly::UPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MinPoly {
    Certified {
        #[serde(with = "serde_upoly")]
        poly: UPoly,
        certificate: Certificate,
    },
    /// No factor could be certified; the resultant is returned as is.
    Unresolved {
        #[serde(with = "serde_upoly")]
        resultant: UPoly,
    },
}

impl MinPoly {
    pub fn poly(&self) -> Option<&UPoly> {
        match self {
            MinPoly::Certified { poly, .. } => Some(poly),
            MinPoly::Unresolved { .. } => None,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.poly().map(|p| p.deg())
    }
}

/// `p(x − y)` as a bivariate polynomial.
fn shifted(p: &UPoly) -> Poly {
    let xy = Poly::x().sub(&Poly::y());
    let mut acc = Poly::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(&xy).add(&Poly::constant(c.clone()));
    }
    acc
}

/// Complex roots by simultaneous Newton iteration.
fn complex_roots(p: &UPoly) -> Vec<Complex64> {
    let n = p.deg();
    let lc = to_f64(&p.lc());
    let c: Vec<f64> = p.coeffs().iter().map(|v| to_f64(v) / lc).collect();
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::zero(), |acc, a| acc * z + a);
    let deriv =
        |z: Complex64| c.iter().enumerate().skip(1).rev().fold(Complex64::zero(), |acc, (i, a)| acc * z + a * i as f64);
    let r = 1.0 + c[..n].iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(r * 0.9, 0.4 + std::f64::consts::TAU * k as f64 / n as f64)).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let w = eval(z[i]) / deriv(z[i]);
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = w / (Complex64::new(1.0, 0.0) - w * s);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Integer polynomial `lc · Π(x − zᵢ)` when the product is numerically
/// integral.
fn candidate(lc: f64, roots: &[Complex64]) -> Option<UPoly> {
    let mut c = vec![Complex64::new(lc, 0.0)];
    for r in roots {
        let mut next = vec![Complex64::zero(); c.len() + 1];
        for (j, v) in c.iter().enumerate() {
            next[j + 1] += v;
            next[j] -= v * r;
        }
        c = next;
    }
    let mut out = Vec::with_capacity(c.len());
    for v in c.iter().rev() {
        let tol = 1e-6 * (1.0 + v.norm());
        let k = v.re.round();
        if v.im.abs() > tol || (v.re - k).abs() > tol || k.abs() > 1e15 {
            return None;
        }
        out.push(q(k as i64));
    }
    out.reverse();
    Some(UPoly::from_coeffs(out))
}

fn subsets_with(n: usize, fixed: usize, size: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        start: usize,
        n: usize,
        fixed: usize,
        left: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if left == 0 {
            return f(cur);
        }
        for i in start..n {
            if i == fixed {
                continue;
            }
            cur.push(i);
            if rec(i + 1, n, fixed, left - 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = vec![fixed];
    rec(0, n, fixed, size - 1, &mut cur, f)
}

const MAX_FACTOR_SEARCH: usize = 16;

/// Exact factor of `s` with a root at the unique root of `s` in `enc`.
fn factor_through(s: &UPoly, enc: &Iv) -> Option<UPoly> {
    let n = s.deg();
    if n > MAX_FACTOR_SEARCH {
        return None;
    }
    let roots = complex_roots(s);
    let target = to_f64(&enc.mid());
    let fixed = (0..n).min_by(|&i, &j| {
        let d = |k: usize| (roots[k] - Complex64::new(target, 0.0)).norm();
        d(i).total_cmp(&d(j))
    })?;
    let lc = to_f64(&s.primitive().lc());
    let sp = s.primitive();
    for size in 1..n {
        let mut found = None;
        subsets_with(n, fixed, size, &mut |idx| {
            let rs: Vec<Complex64> = idx.iter().map(|&i| roots[i]).collect();
            if let Some(g) = candidate(lc, &rs) {
                let g = g.primitive();
                if !g.is_constant() && sp.rem(&g).is_zero() && has_root_in(&g, enc) {
                    found = Some(g);
                    return true;
                }
            }
            false
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn has_root_in(p: &UPoly, enc: &Iv) -> bool {
    let s = SturmSeq::new(p);
    s.count(&enc.lo, &enc.hi) + usize::from(p.eval(&enc.lo).is_zero()) > 0
}

/// Enclosure of `α + cβ` that meets exactly one root of `s`.
fn isolating_enclosure(alpha: &AlgebraicNumber, cbeta: &AlgebraicNumber, s: &UPoly) -> Iv {
    let sq = SturmSeq::new(s);
    let mut w = qr(1, 10);
    loop {
        let e = alpha.refined(&w).enclosure().add(&cbeta.refined(&w).enclosure());
        let k = sq.count(&e.lo, &e.hi) + usize::from(s.eval(&e.lo).is_zero());
        if k <= 1 {
            return e;
        }
        w /= q(64);
    }
}

/// Minimal polynomial of `α + cβ`: the certified irreducible factor of
/// `Res_y(m_α(y), m_{cβ}(x − y))` vanishing at the enclosure of the value.
pub fn min_poly_of_lincomb(alpha: &AlgebraicNumber, beta: &AlgebraicNumber, c: &Q) -> Result<MinPoly> {
    if c.is_zero() {
        return Err(Error::Invalid("coefficient must be nonzero".into()));
    }
    let cb = beta.scaled(c);
    let r = resultant_y(&Poly::from_upoly_y(&alpha.min_poly), &shifted(&cb.min_poly)).primitive();
    let s = r.squarefree().primitive();
    let enc = isolating_enclosure(alpha, &cb, &s);
    let first = certify_irreducible(&s);
    let factor = match first {
        Ok(Irreducibility::Irreducible(cert)) => return Ok(MinPoly::Certified { poly: s, certificate: cert }),
        _ => {
            let rat: Vec<Q> = s.rational_roots().into_iter().filter(|v| enc.contains(v)).collect();
            match rat.first() {
                Some(v) => Some(UPoly::linear_root(v.clone()).primitive()),
                None => factor_through(&s, &enc),
            }
        }
    };
    let Some(g) = factor else {
        return Ok(MinPoly::Unresolved { resultant: r });
    };
    Ok(match certify_irreducible(&g)? {
        Irreducibility::Irreducible(cert) => MinPoly::Certified { poly: g, certificate: cert },
        _ => MinPoly::Unresolved { resultant: r },
    })
}

pub fn min_poly_of_sum(alpha: &AlgebraicNumber, beta: &AlgebraicNumber) -> Result<MinPoly> {
    min_poly_of_lincomb(alpha, beta, &Q::from_integer(1.into()))
}

/// How `β` relates to `ℚ(α)` for one pair of roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "relation", rename_all = "snake_case")]
pub enum PairVerdict {
    /// `β = h(α)` for the exhibited polynomial `h`.
    Contained {
        #[serde(with = "serde_upoly")]
        h: UPoly,
    },
    /// `α + cβ` has degree above `[ℚ(α):ℚ]`, so it is not in ℚ(α).
    NotContained {
        #[serde(with = "crate::rational::serde_q")]
        c: Q,
        #[serde(with = "serde_upoly")]
        min_poly: UPoly,
        certificate: Certificate,
    },
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    pub alpha_index: usize,
    pub beta_index: usize,
    pub alpha: f64,
    pub beta: f64,
    pub opposite: bool,
    /// Degree of the minimal polynomial of `α + β`, when certified.
    pub sum_degree: Option<usize>,
    pub verdict: PairVerdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubfieldConclusion {
    IsomorphicNotEqual,
    EqualSubfields,
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubfieldReport {
    #[serde(with = "serde_upoly")]
    pub poly: UPoly,
    pub roots: Vec<AlgebraicNumber>,
    pub pairs: Vec<PairReport>,
    pub conclusion: SubfieldConclusion,
    pub text: String,
}

/// `β ∈ ℚ(α)` decided through `γ = α + cβ` of degree `≤ d`: the common
/// roots of `f(y)` and `m_γ(α + cy)` over ℚ(α) form a linear factor
/// exactly when `β` is the only one, and then `β` lies in ℚ(α).
fn contained_via(alpha: &AlgebraicNumber, c: &Q, m_gamma: &UPoly) -> Option<UPoly> {
    let k = Field::new(alpha.min_poly.clone());
    let f: FieldPoly = alpha.min_poly.coeffs().iter().map(|v| UPoly::constant(v.clone())).collect();
    let arg: FieldPoly = vec![UPoly::x(), UPoly::constant(c.clone())];
    let g = k.compose(m_gamma, &arg);
    let d = k.poly_gcd(&f, &g);
    if d.len() != 2 {
        return None;
    }
    // monic: y + d0, so β = −d0
    Some(k.reduce(&d[0].neg()))
}

const COEFFS: [i64; 4] = [1, 2, 3, 5];

/// Compares ℚ(α) and ℚ(β) inside ℝ for every pair of real roots of an
/// irreducible polynomial.
pub fn subfields_distinct(poly: &UPoly) -> Result<SubfieldReport> {
    let p = poly.primitive();
    match certify_irreducible(&p)? {
        Irreducibility::Irreducible(_) => {}
        Irreducibility::Reducible { factor, .. } => return Err(Error::Reducible { factor: factor.fmt_var("x") }),
        Irreducibility::Unresolved => return Err(Error::Invalid("irreducibility could not be certified".into())),
    }
    let roots = real_roots_of(&p)?;
    if roots.len() < 2 {
        return Err(Error::Invalid("needs at least two real roots".into()));
    }
    let d = p.deg();
    let mut pairs = Vec::new();
    for i in (0..roots.len()).rev() {
        for j in (0..i).rev() {
            let (a, b) = (&roots[i], &roots[j]);
            let opposite = is_opposite(a, b);
            let sum = min_poly_of_sum(a, b)?;
            let mut verdict = PairVerdict::Unresolved;
            for c in COEFFS {
                let c = q(c);
                let m = if c == q(1) { sum.clone() } else { min_poly_of_lincomb(a, b, &c)? };
                let MinPoly::Certified { poly: mg, certificate } = m else { continue };
                if mg.deg() > d {
                    verdict = PairVerdict::NotContained { c, min_poly: mg, certificate };
                    break;
                }
                if let Some(h) = contained_via(a, &c, &mg) {
                    verdict = PairVerdict::Contained { h };
                    break;
                }
            }
            pairs.push(PairReport {
                alpha_index: i,
                beta_index: j,
                alpha: a.approx(),
                beta: b.approx(),
                opposite,
                sum_degree: sum.degree(),
                verdict,
            });
        }
    }
    let conclusion = if pairs.iter().any(|p| matches!(p.verdict, PairVerdict::NotContained { .. })) {
        SubfieldConclusion::IsomorphicNotEqual
    } else if pairs.iter().all(|p| matches!(p.verdict, PairVerdict::Contained { .. })) {
        SubfieldConclusion::EqualSubfields
    } else {
        SubfieldConclusion::Unresolved
    };
    let text = render(&p, &pairs, conclusion);
    Ok(SubfieldReport { poly: p, roots, pairs, conclusion, text })
}

fn is_opposite(a: &AlgebraicNumber, b: &AlgebraicNumber) -> bool {
    let n = a.neg();
    if n.min_poly != b.min_poly {
        return false;
    }
    // −α is a root of the same polynomial; compare on an isolating interval
    let s = SturmSeq::new(&b.min_poly);
    let lo = if n.lo < b.lo { n.lo.clone() } else { b.lo.clone() };
    let hi = if n.hi > b.hi { n.hi.clone() } else { b.hi.clone() };
    s.count(&lo, &hi) + usize::from(b.min_poly.eval(&lo).is_zero()) == 1
}

fn render(p: &UPoly, pairs: &[PairReport], c: SubfieldConclusion) -> String {
    let mut out = format!("f = {}\n", p.fmt_var("x"));
    for r in pairs {
        let head = format!("pair (α≈{:.4}, β≈{:.4})", r.alpha, r.beta);
        let sum = r.sum_degree.map_or("unresolved".to_string(), |k| k.to_string());
        let line = match &r.verdict {
            PairVerdict::Contained { h } => format!("{head}: β = {} ∈ ℚ(α), deg(α+β) = {sum}", h.fmt_var("α")),
            PairVerdict::NotContained { c, min_poly, .. } => format!(
                "{head}: deg(α+β) = {sum}; α+{}β has minimal polynomial of degree {} > {}, so β ∉ ℚ(α)",
                fmt_rational(c),
                min_poly.deg(),
                p.deg()
            ),
            PairVerdict::Unresolved => format!("{head}: unresolved, deg(α+β) = {sum}"),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str(match c {
        SubfieldConclusion::IsomorphicNotEqual => {
            "conclusion: isomorphic, but not equal (the roots share a minimal polynomial but generate different subfields of ℝ)"
        }
        SubfieldConclusion::EqualSubfields => "conclusion: equal subfields",
        SubfieldConclusion::Unresolved => "conclusion: unresolved",
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(c: &[i64]) -> UPoly {
        UPoly::from_ints(c)
    }

    fn root(p: &[i64], lo: i64, hi: i64) -> AlgebraicNumber {
        AlgebraicNumber::new(&up(p), q(lo), q(hi)).unwrap()
    }

    #[test]
    fn sqrt2_plus_sqrt3() {
        let m = min_poly_of_sum(&root(&[-2, 0, 1], 1, 2), &root(&[-3, 0, 1], 1, 2)).unwrap();
        assert_eq!(m.poly(), Some(&up(&[1, 0, -10, 0, 1])));
        let m = min_poly_of_sum(&root(&[-2, 0, 1], 1, 2), &root(&[-2, 0, 1], -2, -1)).unwrap();
        assert_eq!(m.poly(), Some(&up(&[0, 1])));
    }

    #[test]
    fn remark_quartic_pairs() {
        let f = [2, 0, -5, 0, 1];
        let a = root(&f, 2, 3);
        let b = root(&f, 0, 1);
        assert_eq!(min_poly_of_sum(&a, &b).unwrap().poly(), Some(&up(&[17, 0, -10, 0, 1])));
        let m = min_poly_of_lincomb(&a, &b, &q(2)).unwrap();
        assert_eq!(m.degree(), Some(8));
        let r = subfields_distinct(&up(&f)).unwrap();
        assert_eq!(r.conclusion, SubfieldConclusion::IsomorphicNotEqual);
        let w = r.pairs.iter().find(|p| matches!(p.verdict, PairVerdict::NotContained { .. })).unwrap();
        assert!((w.alpha - 2.1358).abs() < 1e-4 && (w.beta - 0.6621).abs() < 1e-4, "{}", r.text);
        assert!(r.text.contains("α≈2.1358"), "{}", r.text);
        assert!(r.text.contains("isomorphic, but not equal"));
    }

    #[test]
    fn galois_quartic_and_quadratic() {
        let r = subfields_distinct(&up(&[1, 0, -10, 0, 1])).unwrap();
        assert_eq!(r.conclusion, SubfieldConclusion::EqualSubfields, "{}", r.text);
        let r = subfields_distinct(&up(&[-2, 0, 1])).unwrap();
        assert_eq!(r.conclusion, SubfieldConclusion::EqualSubfields);
        assert!(r.pairs[0].opposite);
    }
}
