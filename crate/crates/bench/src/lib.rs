//! Fixtures shared by the criterion benchmarks in `benches/`.

use graphoid_core::feasibility::{Constraint, InequalitySystem, Relation};
use graphoid_core::rational::{q, qr};
use graphoid_core::{parse, FunctionFamily, PointCloud, Region, XReal};

/// A one-member family `f = expr` in two variables.
pub fn family(expr: &str) -> FunctionFamily {
    FunctionFamily::from_exprs(&[("f", expr)], Some(2)).expect("valid expression")
}

pub fn origin() -> Vec<XReal> {
    vec![XReal::Finite(q(0)), XReal::Finite(q(0))]
}

/// Inside the unit disc and right of x = 1/2: feasible, needs a few splits.
pub fn disc_system() -> InequalitySystem {
    let c = |s: &str, rel| Constraint { poly: parse(s).expect("valid polynomial").numer().clone(), rel, label: None };
    let region = Region::finite(&[(q(-2), q(2)), (q(-2), q(2))]);
    InequalitySystem::new(2, vec![c("x^2 + y^2 - 1", Relation::Lt), c("2*x - 1", Relation::Gt)], region)
        .expect("valid system")
}

/// `n` points of the circle x = (1 - t²)/(1 + t²), y = 2t/(1 + t²), t over a symmetric grid plus ∞.
pub fn circle_cloud(n: usize) -> PointCloud {
    let half = (n / 2) as i64;
    let mut pts: Vec<Vec<XReal>> = (-half + 1..half)
        .map(|k| {
            let t = qr(k, 4);
            let d = q(1) + &t * &t;
            vec![XReal::Finite((q(1) - &t * &t) / &d), XReal::Finite(q(2) * &t / &d)]
        })
        .collect();
    pts.push(vec![XReal::Finite(q(-1)), XReal::Finite(q(0))]);
    PointCloud::new(pts).expect("valid cloud")
}
