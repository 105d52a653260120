//! Resultants of univariate polynomials and of bivariate ones with respect
//! to y.

use num_traits::{One, Zero};

use crate::poly::Poly;
use crate::rational::Q;
use crate::upoly::UPoly;

/// `Res(a, b)` by the Euclidean recurrence over ℚ.
pub fn resultant(a: &UPoly, b: &UPoly) -> Q {
    if a.is_zero() || b.is_zero() {
        return Q::zero();
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = Q::one();
    loop {
        let da = a.deg();
        let db = b.deg();
        if db == 0 {
            return acc * num_traits::pow(b.lc(), da);
        }
        if da == 0 {
            return acc * num_traits::pow(a.lc(), db);
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return Q::zero();
        }
        let dr = r.deg();
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        acc *= num_traits::pow(b.lc(), da - dr);
        a = b;
        b = r;
    }
}

/// Newton interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Q], ys: &[Q]) -> UPoly {
    let n = xs.len();
    let mut dd: Vec<Q> = ys.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - k]);
        }
    }
    let mut p = UPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = p.mul(&UPoly::linear_root(xs[i].clone())).add(&UPoly::constant(dd[i].clone()));
    }
    p
}

/// `Res_y(p, q)` as a polynomial in x, by evaluation at integer points
/// where neither leading coefficient in y vanishes.
pub fn resultant_y(p: &Poly, q: &Poly) -> UPoly {
    if p.is_zero() || q.is_zero() {
        return UPoly::zero();
    }
    let pc = p.y_coeffs();
    let qc = q.y_coeffs();
    let lp = pc.last().unwrap().clone();
    let lq = qc.last().unwrap().clone();
    let bound = (p.deg_y() * q.deg_x() + q.deg_y() * p.deg_x()) as usize;
    let mut xs = Vec::with_capacity(bound + 1);
    let mut ys = Vec::with_capacity(bound + 1);
    let mut k: i64 = 0;
    while xs.len() <= bound {
        let x = Q::from_integer(k.into());
        k = if k >= 0 { -k - 1 } else { -k };
        if lp.eval(&x).is_zero() || lq.eval(&x).is_zero() {
            continue;
        }
        ys.push(resultant(&p.subs_x(&x), &q.subs_x(&x)));
        xs.push(x);
    }
    interpolate(&xs, &ys)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Sylvester determinant, computed by fraction-free elimination.
    fn sylvester(a: &UPoly, b: &UPoly) -> Q {
        let (m, n) = (a.deg(), b.deg());
        let size = m + n;
        let mut s = vec![vec![Q::zero(); size]; size];
        for i in 0..n {
            for j in 0..=m {
                s[i][i + j] = a.coeff(m - j);
            }
        }
        for i in 0..m {
            for j in 0..=n {
                s[n + i][i + j] = b.coeff(n - j);
            }
        }
        let mut det = Q::one();
        for c in 0..size {
            let Some(piv) = (c..size).find(|&r| !s[r][c].is_zero()) else { return Q::zero() };
            if piv != c {
                s.swap(piv, c);
                det = -det;
            }
            det *= &s[c][c];
            for r in c + 1..size {
                let f = &s[r][c] / &s[c][c];
                for k in c..size {
                    let t = &f * &s[c][k];
                    s[r][k] -= t;
                }
            }
        }
        det
    }

    #[test]
    fn matches_sylvester() {
        let cases = [
            (vec![2, 0, -5, 0, 1], vec![-3, 0, 1]),
            (vec![1, 2, 3], vec![4, 5]),
            (vec![-1, 0, 0, 2], vec![7, -1, 0, 3, 1]),
            (vec![0, 1], vec![0, 0, 1]),
        ];
        for (a, b) in cases {
            let (a, b) = (UPoly::from_ints(&a), UPoly::from_ints(&b));
            assert_eq!(resultant(&a, &b), sylvester(&a, &b));
        }
    }

    #[test]
    fn sum_of_square_roots() {
        // Res_y(y^2 - 2, (x - y)^2 - 3) = x^4 - 10 x^2 + 1
        let a = Poly::y().mul(&Poly::y()).sub(&Poly::int(2));
        let d = Poly::x().sub(&Poly::y());
        let b = d.mul(&d).sub(&Poly::int(3));
        assert_eq!(resultant_y(&a, &b), UPoly::from_ints(&[1, 0, -10, 0, 1]));
        assert_eq!(resultant_y(&Poly::x(), &Poly::y()), UPoly::from_ints(&[0, 1]));
    }
}
