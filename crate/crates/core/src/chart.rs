//! Splitting arcs of S̄ into pieces that interval arithmetic can handle.
//!
//! A piece is either a finite interval of x, or an interval of the chart
//! coordinate u = 1/x lying in [−1, 1] on one side of 0. Arcs through ∞ are
//! cut at |x| = 1.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::interval::Iv;
use crate::rational::Q;
use crate::xreal::{XInterval, XReal};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "chart", rename_all = "lowercase")]
pub enum Piece {
    /// x in the interval.
    X(Iv),
    /// u = 1/x in the interval, which is inside [−1, 1] and does not
    /// straddle 0. u = 0 stands for ∞.
    U(Iv),
}

/// Which chart a piece uses, with the side of 0 for the u chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chart {
    X,
    UPos,
    UNeg,
}

impl Piece {
    pub fn chart(&self) -> Chart {
        match self {
            Piece::X(_) => Chart::X,
            Piece::U(iv) => {
                if iv.hi.is_positive() {
                    Chart::UPos
                } else {
                    Chart::UNeg
                }
            }
        }
    }

    /// The interval in the piece's own coordinate.
    pub fn iv(&self) -> &Iv {
        match self {
            Piece::X(iv) | Piece::U(iv) => iv,
        }
    }

    pub fn to_arc(&self) -> XInterval {
        match self {
            Piece::X(iv) => XInterval::arc(XReal::Finite(iv.lo.clone()), XReal::Finite(iv.hi.clone())),
            Piece::U(iv) => {
                let inv = |v: &Q| if v.is_zero() { XReal::Infinity } else { XReal::Finite(v.recip()) };
                if iv.lo.is_zero() && iv.hi.is_zero() {
                    XInterval::point(XReal::Infinity)
                } else if iv.lo.is_zero() {
                    XInterval::arc(inv(&iv.hi), XReal::Infinity)
                } else if iv.hi.is_zero() {
                    XInterval::arc(XReal::Infinity, inv(&iv.lo))
                } else {
                    XInterval::arc(inv(&iv.hi), inv(&iv.lo))
                }
            }
        }
    }

    pub fn chordal_width(&self) -> f64 {
        self.to_arc().chordal_diameter()
    }

    pub fn is_point(&self) -> bool {
        self.iv().lo == self.iv().hi
    }

    pub fn split(&self) -> (Piece, Piece) {
        let (a, b) = self.iv().split();
        match self {
            Piece::X(_) => (Piece::X(a), Piece::X(b)),
            Piece::U(_) => (Piece::U(a), Piece::U(b)),
        }
    }

    /// A point of the piece in x, ∞ for the degenerate u = 0 piece.
    pub fn center(&self) -> XReal {
        let m = self.iv().mid();
        match self {
            Piece::X(_) => XReal::Finite(m),
            Piece::U(_) if m.is_zero() => XReal::Infinity,
            Piece::U(_) => XReal::Finite(m.recip()),
        }
    }

    /// Translate an x value in the piece to the piece coordinate.
    pub fn local(&self, x: &Q) -> Option<Q> {
        match self {
            Piece::X(_) => Some(x.clone()),
            Piece::U(_) if x.is_zero() => None,
            Piece::U(_) => Some(x.recip()),
        }
    }

    /// Translate a local coordinate back to x, `None` for u = 0.
    pub fn global(&self, t: &Q) -> Option<Q> {
        match self {
            Piece::X(_) => Some(t.clone()),
            Piece::U(_) if t.is_zero() => None,
            Piece::U(_) => Some(t.recip()),
        }
    }
}

fn pos_tail(lo: &Q, out: &mut Vec<Piece>) {
    // [lo, ∞]
    if lo >= &Q::one() {
        out.push(Piece::U(Iv::new(Q::zero(), lo.recip())));
    } else {
        out.push(Piece::X(Iv::new(lo.clone(), Q::one())));
        out.push(Piece::U(Iv::new(Q::zero(), Q::one())));
    }
}

fn neg_tail(hi: &Q, out: &mut Vec<Piece>) {
    // [∞, hi]
    if hi <= &-Q::one() {
        out.push(Piece::U(Iv::new(hi.recip(), Q::zero())));
    } else {
        out.push(Piece::U(Iv::new(-Q::one(), Q::zero())));
        out.push(Piece::X(Iv::new(-Q::one(), hi.clone())));
    }
}

/// Pieces whose union is exactly the arc.
pub fn decompose(arc: &XInterval) -> Vec<Piece> {
    let mut out = Vec::new();
    if arc.is_full() {
        out.push(Piece::U(Iv::new(-Q::one(), Q::zero())));
        out.push(Piece::X(Iv::new(-Q::one(), Q::one())));
        out.push(Piece::U(Iv::new(Q::zero(), Q::one())));
        return out;
    }
    match (arc.lo(), arc.hi()) {
        (XReal::Infinity, XReal::Infinity) => out.push(Piece::U(Iv::point(Q::zero()))),
        (XReal::Finite(lo), XReal::Infinity) => pos_tail(lo, &mut out),
        (XReal::Infinity, XReal::Finite(hi)) => neg_tail(hi, &mut out),
        (XReal::Finite(lo), XReal::Finite(hi)) => {
            if lo <= hi {
                out.push(Piece::X(Iv::new(lo.clone(), hi.clone())));
            } else {
                pos_tail(lo, &mut out);
                neg_tail(hi, &mut out);
            }
        }
    }
    out
}
