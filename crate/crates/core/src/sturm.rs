//! Sturm sequences: exact counting and isolation of real roots.

use crate::rational::{midpoint, Q};
use crate::upoly::UPoly;

/// Sturm sequence of the squarefree part of a nonzero polynomial.
#[derive(Clone, Debug)]
pub struct SturmSeq {
    seq: Vec<UPoly>,
}

impl SturmSeq {
    pub fn new(p: &UPoly) -> Self {
        assert!(!p.is_zero(), "Sturm sequence of the zero polynomial");
        let s0 = p.squarefree();
        let mut seq = vec![s0.clone()];
        if !s0.is_constant() {
            let mut a = s0;
            let mut b = a.derivative();
            while !b.is_zero() {
                let r = a.rem(&b).neg();
                seq.push(b.clone());
                a = b;
                b = r;
            }
        }
        SturmSeq { seq }
    }

    /// The squarefree polynomial whose roots are counted.
    pub fn base(&self) -> &UPoly {
        &self.seq[0]
    }

    pub fn variations(&self, x: &Q) -> usize {
        let mut last: i8 = 0;
        let mut v = 0;
        for p in &self.seq {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    }

    /// Distinct real roots in the half-open interval (a, b].
    pub fn count(&self, a: &Q, b: &Q) -> usize {
        if a >= b {
            return 0;
        }
        self.variations(a) - self.variations(b)
    }

    /// Every real root lies in (-B, B) for the returned B.
    pub fn bound(&self) -> Q {
        self.seq[0].root_bound()
    }

    pub fn count_all(&self) -> usize {
        let b = self.bound();
        self.count(&-b.clone(), &b)
    }

    /// Disjoint half-open intervals (lo, hi], each holding exactly one root,
    /// in increasing order.
    pub fn isolate(&self) -> Vec<(Q, Q)> {
        let b = self.bound();
        self.isolate_in(&-b.clone(), &b)
    }

    pub fn isolate_in(&self, lo: &Q, hi: &Q) -> Vec<(Q, Q)> {
        let mut out = Vec::new();
        let mut stack = vec![(lo.clone(), hi.clone())];
        while let Some((a, b)) = stack.pop() {
            match self.count(&a, &b) {
                0 => {}
                1 => out.push((a, b)),
                _ => {
                    let m = midpoint(&a, &b);
                    stack.push((m.clone(), b));
                    stack.push((a, m));
                }
            }
        }
        out.sort();
        out
    }

    /// Shrink an isolating interval until its width is at most `width`.
    pub fn refine(&self, lo: &Q, hi: &Q, width: &Q) -> (Q, Q) {
        let (mut a, mut b) = (lo.clone(), hi.clone());
        while &(&b - &a) > width {
            let m = midpoint(&a, &b);
            if self.seq[0].sign_at(&m) == 0 {
                return (midpoint(&a, &m), m);
            }
            if self.count(&a, &m) == 1 {
                b = m;
            } else {
                a = m;
            }
        }
        (a, b)
    }
}

/// Distinct real roots of `p` in (a, b].
pub fn sturm_count(p: &UPoly, a: &Q, b: &Q) -> usize {
    SturmSeq::new(p).count(a, b)
}

/// Distinct real roots of `p` on the whole line.
pub fn sturm_count_all(p: &UPoly) -> usize {
    SturmSeq::new(p).count_all()
}

/// Sorted distinct real roots of `p` as isolating intervals of width at
/// most `width`, or exact points when a root is rational and met exactly.
pub fn real_roots(p: &UPoly, width: &Q) -> Vec<(Q, Q)> {
    let s = SturmSeq::new(p);
    s.isolate().into_iter().map(|(a, b)| s.refine(&a, &b, width)).collect()
}

/// Whether `p` has a root in the closed interval [a, b].
pub fn has_root_in_closed(s: &SturmSeq, a: &Q, b: &Q) -> bool {
    s.base().sign_at(a) == 0 || s.count(a, b) > 0
}

/// Rational sample points, one inside each open interval between
/// consecutive roots of the base polynomial in (a, b), with a < b.
pub fn cell_points(s: &SturmSeq, a: &Q, b: &Q) -> Vec<Q> {
    let base = s.base();
    if base.is_constant() {
        return vec![midpoint(a, b)];
    }
    let mut iv: Vec<(Q, Q)> = s.isolate_in(a, b).into_iter().filter(|(_, h)| h < b || base.sign_at(h) != 0).collect();
    // an isolating interval ending at b holds a root at b only when b is a root
    let step = |l: &mut Q, h: &mut Q| {
        let m = midpoint(l, h);
        if base.sign_at(&m) == 0 {
            *h = m.clone();
            *l = midpoint(l, &m);
        } else if s.count(l, &m) == 1 {
            *h = m;
        } else {
            *l = m;
        }
    };
    for _ in 0..10_000 {
        let mut changed = false;
        for k in 0..iv.len() {
            let left_bad = if k == 0 { iv[0].0 <= *a } else { iv[k].0 <= iv[k - 1].1 };
            let right_bad = if k + 1 == iv.len() { iv[k].1 >= *b } else { false };
            if left_bad || right_bad {
                let (l, h) = &mut iv[k];
                step(l, h);
                if k > 0 && left_bad {
                    let (l, h) = &mut iv[k - 1];
                    step(l, h);
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut pts = Vec::with_capacity(iv.len() + 1);
    let mut left = a.clone();
    for (l, h) in &iv {
        if &left < l {
            pts.push(midpoint(&left, l));
        }
        left = h.clone();
    }
    if &left < b {
        pts.push(midpoint(&left, b));
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn counts() {
        let f = UPoly::from_ints(&[2, 0, -5, 0, 1]);
        assert_eq!(sturm_count_all(&f), 4);
        assert_eq!(sturm_count_all(&UPoly::from_ints(&[1, 0, 1])), 0);
        let g = UPoly::from_ints(&[0, -1, 0, 1]);
        assert_eq!(sturm_count(&g, &q(0), &q(2)), 1);
        assert_eq!(sturm_count(&g, &q(-1), &q(0)), 1);
        assert_eq!(sturm_count(&g, &q(-2), &q(-1)), 1);
        assert_eq!(sturm_count_all(&g.mul(&g)), 3);
    }

    #[test]
    fn isolation_is_disjoint() {
        let f = UPoly::from_ints(&[2, 0, -5, 0, 1]);
        let s = SturmSeq::new(&f);
        let iv = s.isolate();
        assert_eq!(iv.len(), 4);
        for w in iv.windows(2) {
            assert!(w[0].1 <= w[1].0);
        }
        for (a, b) in iv {
            assert_eq!(s.count(&a, &b), 1);
        }
    }

    #[test]
    fn cells_between_roots() {
        // roots -1, 0, 1: four cells in (-2, 2), three in (-1, 1]
        let g = UPoly::from_ints(&[0, -1, 0, 1]);
        let s = SturmSeq::new(&g);
        let pts = cell_points(&s, &q(-2), &q(2));
        assert_eq!(pts.len(), 4);
        assert!(pts.iter().all(|p| g.sign_at(p) != 0));
        let pts = cell_points(&s, &q(-1), &q(1));
        assert_eq!(pts.len(), 2);
        assert!(pts.iter().all(|p| p > &q(-1) && p < &q(1) && g.sign_at(p) != 0));
    }
}
