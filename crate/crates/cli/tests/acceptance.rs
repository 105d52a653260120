//! Acceptance run: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use graphoid_cli::{run, RunManifest};
use graphoid_core::feasibility::{feasible_with, Constraint, FeasOptions, InequalitySystem, Relation, Verdict};
use graphoid_core::graphoid::{default_radii, ClusterBudget};
use graphoid_core::places::{
    check_place_table, delta_place, irreducible_over_q, min_poly_of_sum, numfield::real_roots_of, subfields_distinct,
    Certificate, Irreducibility, MinPoly, Op, SubfieldConclusion,
};
use graphoid_core::rational::{q, qr, to_f64};
use graphoid_core::sturm::sturm_count_all;
use graphoid_core::topo::{linear_grid, stable_range, PointCloud};
use graphoid_core::{
    chordal_dist, cluster_set, fiber_sample, member, one_var_extension, verify_cover, xadd, xmul, ArcSet,
    FunctionFamily, GraphoidPoint, Member, MembershipVerdict, Poly, RatFunc, Region, XReal, XSet, Q,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("multivalued arithmetic, 9 structural cases", 1, c1_arithmetic),
        ("one-variable cluster sets are points", 60, c2_one_variable),
        ("graphoid membership at the origin", 20, c3_membership),
        ("cluster sets at the origin", 30, c4_cluster_sets),
        ("feasibility soundness, 1000 systems", 300, c5_feasibility),
        ("x^4 - 5x^2 + 2 end to end", 30, c6_remark),
        ("place tables from confirmed points", 60, c7_places),
        ("circle fibers", 60, c8_circle_fibers),
        ("byte-identical reruns", 120, c9_determinism),
    ];
    let only: Option<usize> = std::env::args().nth(1).and_then(|a| a.parse().ok());
    let mut failed = 0;
    for (i, (title, limit, f)) in criteria.iter().enumerate() {
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        let t = Instant::now();
        let out = f();
        let dt = t.elapsed();
        let in_time = dt <= Duration::from_secs(*limit);
        let pass = out.pass && in_time;
        failed += usize::from(!pass);
        let timing =
            if in_time { format!("{:.2}s", dt.as_secs_f64()) } else { format!("{:.2}s > {limit}s", dt.as_secs_f64()) };
        println!("criterion {}: {} {title} ({}; {timing})", i + 1, if pass { "PASS" } else { "FAIL" }, out.detail);
    }
    let ran = only.map_or(criteria.len(), |_| 1);
    println!("acceptance: {} of {ran} criteria passed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn x(v: i64) -> XReal {
    XReal::Finite(q(v))
}

fn xq(v: Q) -> XReal {
    XReal::Finite(v)
}

fn c1_arithmetic() -> Outcome {
    let nonzero = [qr(3, 1), qr(-7, 2), qr(1, 5)];
    let classes: [Vec<XReal>; 3] =
        [nonzero.iter().cloned().map(XReal::Finite).collect(), vec![XReal::zero()], vec![XReal::Infinity]];
    let mut bad = Vec::new();
    let mut pairs = 0;
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate() {
            pairs += 1;
            for r in ci {
                for s in cj {
                    let add = match (r, s) {
                        (XReal::Finite(a), XReal::Finite(b)) => XSet::Singleton(xq(a + b)),
                        (XReal::Infinity, XReal::Infinity) => XSet::All,
                        _ => XSet::Singleton(XReal::Infinity),
                    };
                    let mul = match (r, s) {
                        (XReal::Finite(a), XReal::Finite(b)) => XSet::Singleton(xq(a * b)),
                        (XReal::Finite(a), XReal::Infinity) | (XReal::Infinity, XReal::Finite(a)) if a == &q(0) => {
                            XSet::All
                        }
                        _ => XSet::Singleton(XReal::Infinity),
                    };
                    if xadd(r, s) != add || xmul(r, s) != mul {
                        bad.push(format!("classes ({i},{j}) at ({r}, {s})"));
                    }
                }
            }
        }
    }
    Outcome::new(bad.is_empty() && pairs == 9, format!("{pairs} case pairs, mismatches: {bad:?}"))
}

fn rand_q(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Q {
    qr(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

/// Random f = p/d with deg p, deg d ≤ 5. Every real root of d is drawn as a
/// rational, optionally times a quadratic with no real roots.
fn random_one_var(rng: &mut ChaCha8Rng) -> RatFunc {
    loop {
        let dp = rng.gen_range(0..=5);
        let num = Poly::from_terms((0..=dp).map(|i| (i, 0, q(rng.gen_range(-5..=5)))));
        let mut den = Poly::constant(q(rng.gen_range(1..=4)));
        let linear = rng.gen_range(0..=3);
        for _ in 0..linear {
            den = den.mul(&Poly::x().sub(&Poly::constant(rand_q(rng, 8, 3))));
        }
        if rng.gen_bool(0.5) {
            let (b, c) = (q(rng.gen_range(-2..=2)), q(rng.gen_range(2..=6)));
            den = den.mul(&Poly::from_terms([(2, 0, q(1)), (1, 0, b), (0, 0, c)]));
        }
        if num.is_zero() {
            continue;
        }
        if let Ok(f) = RatFunc::new(num, den) {
            return f;
        }
    }
}

fn c2_one_variable() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let budget = ClusterBudget::default();
    let (mut checked, mut worst_diam, mut worst_mid) = (0usize, 0f64, 0f64);
    let mut bad = Vec::new();
    for _ in 0..50 {
        let f = random_one_var(&mut rng);
        let d = f.denom().as_upoly_x().expect("one variable");
        let poles = d.rational_roots();
        if poles.len() != sturm_count_all(&d) {
            bad.push(format!("{f}: irrational pole"));
            continue;
        }
        let mut at: Vec<XReal> = poles.into_iter().map(XReal::Finite).collect();
        at.push(XReal::Infinity);
        at.extend((0..20).map(|_| xq(rand_q(&mut rng, 40, 12))));
        for a in at {
            checked += 1;
            let r = cluster_set(&f, std::slice::from_ref(&a), &budget).and_then(|c| {
                let hull = c.outer.hull().expect("nonempty outer set");
                let mid = XReal::from_angle(hull.midpoint_angle());
                Ok((hull.chordal_diameter(), chordal_dist(&mid, &one_var_extension(&f, &a)?)))
            });
            match r {
                Ok((diam, mid)) => {
                    worst_diam = worst_diam.max(diam);
                    worst_mid = worst_mid.max(mid);
                    if diam >= 1e-3 || mid >= 1e-3 {
                        bad.push(format!("{f} at {a}: diameter {diam:e}, midpoint {mid:e}"));
                    }
                }
                Err(e) => bad.push(format!("{f} at {a}: {e}")),
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("{checked} base points, max diameter {worst_diam:.2e}, max midpoint error {worst_mid:.2e}, failures {bad:?}"),
    )
}

fn c3_membership() -> Outcome {
    let e = FunctionFamily::from_exprs(&[("f", "x/y")], Some(2)).unwrap();
    let origin = vec![x(0), x(0)];
    let mut parts = Vec::new();
    let mut pass = true;
    let target = qr(1, 1_000_000);
    let verdict = |base: &Vec<XReal>, c: XReal| {
        let t = Instant::now();
        let v = member(&GraphoidPoint::new(base.clone(), [("f".to_string(), c)]), &e, &default_radii());
        (v, t.elapsed())
    };
    for c in [x(0), x(1), XReal::Infinity, xq(qr(-7, 3))] {
        let (v, dt) = verdict(&origin, c.clone());
        let ok = matches!(&v, Ok(MembershipVerdict::ConfirmedToRadius { radius, .. }) if *radius == target)
            && dt < Duration::from_secs(5);
        pass &= ok;
        parts.push(format!("c={c}: {} {:.2}s", label(&v), dt.as_secs_f64()));
    }
    let (v, dt) = verdict(&vec![x(1), x(1)], x(2));
    let ok = matches!(&v, Ok(MembershipVerdict::Excluded { .. })) && dt < Duration::from_secs(5);
    pass &= ok;
    parts.push(format!("(1,1)↦2: {} {:.2}s", label(&v), dt.as_secs_f64()));
    Outcome::new(pass, parts.join(", "))
}

fn label(v: &graphoid_core::Result<MembershipVerdict>) -> String {
    match v {
        Ok(MembershipVerdict::ConfirmedToRadius { radius, .. }) => format!("confirmed to {radius}"),
        Ok(MembershipVerdict::Excluded { radius, .. }) => format!("excluded at {radius}"),
        Ok(MembershipVerdict::Unknown { unresolved, .. }) => format!("unknown at {unresolved}"),
        Err(e) => format!("error {e}"),
    }
}

/// Limit of f along the path (u(s), v(s)) as s → 0, from lowest-order terms.
fn path_limit(f: &RatFunc, u: &Poly, v: &Poly) -> XReal {
    let lowest = |p: &Poly| {
        let w = p.compose(u, v).as_upoly_x().expect("path in one parameter");
        (0..=w.deg()).find(|&i| w.coeff(i) != q(0)).map(|i| (i, w.coeff(i)))
    };
    match (lowest(f.numer()), lowest(f.denom())) {
        (None, _) => XReal::zero(),
        (Some(_), None) => XReal::Infinity,
        (Some((i, a)), Some((j, b))) => match i.cmp(&j) {
            std::cmp::Ordering::Greater => XReal::zero(),
            std::cmp::Ordering::Less => XReal::Infinity,
            std::cmp::Ordering::Equal => xq(a / b),
        },
    }
}

/// Limits of f at `a` along lines of slope `slopes`, the vertical line and
/// the four parabolas.
fn probe_limits(f: &RatFunc, a: &[Q], slopes: &[Q]) -> Vec<XReal> {
    let s = Poly::x();
    let at = |p: Poly, c: &Q| p.add(&Poly::constant(c.clone()));
    let mut paths: Vec<(Poly, Poly)> = slopes.iter().map(|t| (s.clone(), s.scale(t))).collect();
    paths.push((Poly::zero(), s.clone()));
    for sign in [q(1), q(-1)] {
        paths.push((s.clone(), s.mul(&s).scale(&sign)));
        paths.push((s.mul(&s).scale(&sign), s.clone()));
    }
    paths.into_iter().map(|(u, v)| path_limit(f, &at(u, &a[0]), &at(v, &a[1]))).collect()
}

/// Chordal distance from a point to a union of arcs.
fn dist_to_arcs(p: f64, arcs: &[(f64, f64)]) -> f64 {
    let tau = std::f64::consts::TAU;
    let norm = |t: f64| t.rem_euclid(tau);
    let mut best = f64::MAX;
    for &(lo, len) in arcs {
        let off = norm(p - lo);
        if off <= len + 1e-15 {
            return 0.0;
        }
        let ang = (off - len).min(tau - off);
        best = best.min(2.0 * (ang / 2.0).sin());
    }
    best
}

fn arcs_of(s: &ArcSet) -> Vec<(f64, f64)> {
    if s.is_full() {
        return vec![(0.0, std::f64::consts::TAU)];
    }
    s.arcs().iter().map(|a| (a.lo().angle(), a.angular_length())).collect()
}

/// One direction of the chordal Hausdorff distance, sampled densely.
fn directed_hausdorff(from: &[(f64, f64)], to: &[(f64, f64)]) -> f64 {
    let mut worst = 0f64;
    for &(lo, len) in from {
        let n = 20_000;
        for k in 0..=n {
            worst = worst.max(dist_to_arcs(lo + len * k as f64 / n as f64, to));
        }
    }
    worst
}

fn hausdorff(a: &ArcSet, b: &ArcSet) -> f64 {
    let (a, b) = (arcs_of(a), arcs_of(b));
    directed_hausdorff(&a, &b).max(directed_hausdorff(&b, &a))
}

fn c4_cluster_sets() -> Outcome {
    let budget = ClusterBudget { pieces: 4096, ..ClusterBudget::default() };
    let mut slopes: Vec<Q> = (-400..=400).map(|k| qr(k, 20)).collect();
    slopes.extend((1..=400).flat_map(|k| [qr(20, k), qr(-20, k)]));
    let at = vec![x(0), x(0)];
    let zero = [q(0), q(0)];
    let mut parts = Vec::new();
    let mut pass = true;
    for (expr, oracle) in
        [("x^2/(x^2+y^2)", Some((q(0), q(1)))), ("x*y/(x^2+y^2)", Some((qr(-1, 2), qr(1, 2)))), ("x/y", None)]
    {
        let f = graphoid_core::parse(expr).unwrap();
        let limits = probe_limits(&f, &zero, &slopes);
        let c = match cluster_set(&f, &at, &budget) {
            Ok(c) => c,
            Err(e) => {
                pass = false;
                parts.push(format!("{expr}: {e}"));
                continue;
            }
        };
        match oracle {
            Some((lo, hi)) => {
                let in_range = limits.iter().all(|v| matches!(v, XReal::Finite(t) if *t >= lo && *t <= hi));
                let attained = limits.contains(&xq(lo.clone())) && limits.contains(&xq(hi.clone()));
                let want = ArcSet::from_arcs([graphoid_core::XInterval::finite(lo.clone(), hi.clone())]);
                let h = hausdorff(&c.outer, &want);
                let ok = in_range && attained && h <= 1e-3;
                pass &= ok;
                parts.push(format!("{expr}: oracle [{lo}, {hi}] from probes {ok}, Hausdorff {h:.2e}"));
            }
            None => {
                let mut angles: Vec<f64> = limits.iter().map(XReal::angle).collect();
                angles.sort_by(f64::total_cmp);
                let gap = angles
                    .windows(2)
                    .map(|w| w[1] - w[0])
                    .fold(angles[0] + std::f64::consts::TAU - angles[angles.len() - 1], f64::max);
                let ok = c.outer.is_full()
                    && gap < 0.1
                    && limits.contains(&XReal::zero())
                    && limits.contains(&XReal::Infinity);
                pass &= ok;
                parts.push(format!("{expr}: full {} (probe gap {gap:.3} rad)", c.outer.is_full()));
            }
        }
    }
    Outcome::new(pass, parts.join(", "))
}

fn random_poly(rng: &mut ChaCha8Rng, deg: u32) -> Poly {
    loop {
        let p = Poly::from_terms(
            (0..=deg).flat_map(|i| (0..=deg - i).map(move |j| (i, j))).map(|(i, j)| (i, j, q(rng.gen_range(-3..=3)))),
        );
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_system(rng: &mut ChaCha8Rng) -> InequalitySystem {
    let n = rng.gen_range(1..=4);
    let constraints = (0..n)
        .map(|_| {
            let deg = rng.gen_range(1..=3);
            let rel = [Relation::Gt, Relation::Lt, Relation::Ne][rng.gen_range(0..3)];
            Constraint { poly: random_poly(rng, deg), rel, label: None }
        })
        .collect();
    let mut side = || {
        let lo = rng.gen_range(-8..8);
        let hi = rng.gen_range(lo + 1..=8);
        (qr(lo, 2), qr(hi, 2))
    };
    let b = [side(), side()];
    InequalitySystem::new(2, constraints, Region::finite(&b)).unwrap()
}

fn int(v: &impl std::fmt::Display) -> i128 {
    v.to_string().parse().expect("grid value fits in i128")
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

type IntConstraint = (Vec<(u32, u32, i128)>, u32, Relation);

/// Exact sign test on the 100 × 100 midpoint grid of the region. Every grid
/// coordinate is X/d for one integer d, so each constraint is evaluated as
/// d^deg · P(X/d, Y/d) in integer arithmetic.
fn grid_hit(sys: &InequalitySystem) -> bool {
    let n = 100i128;
    let b: Vec<[(i128, i128); 2]> = sys
        .region
        .arcs
        .iter()
        .map(|a| [a.lo(), a.hi()].map(|e| e.finite().unwrap()).map(|v| (int(v.numer()), int(v.denom()))))
        .collect();
    let d = b.iter().flatten().fold(2 * n, |acc, &(_, den)| acc / gcd(acc, den) * den);
    let axis = |k: usize| -> Vec<i128> {
        let [(ln, ld), (hn, hd)] = b[k];
        let (lo, hi) = (ln * (d / ld), hn * (d / hd));
        (0..n).map(|i| lo + (hi - lo) * (2 * i + 1) / (2 * n)).collect()
    };
    let (xs, ys) = (axis(0), axis(1));
    let polys: Vec<IntConstraint> = sys
        .constraints
        .iter()
        .map(|c| {
            let scale = c.poly.terms().fold(1i128, |acc, (_, v)| {
                let den = int(v.denom());
                acc / gcd(acc, den) * den
            });
            let terms = c.poly.terms().map(|(m, v)| (m.x, m.y, int(v.numer()) * (scale / int(v.denom())))).collect();
            (terms, c.poly.total_degree(), c.rel)
        })
        .collect();
    xs.iter().any(|&x| {
        ys.iter().any(|&y| {
            polys.iter().all(|(terms, deg, rel)| {
                let v: i128 = terms.iter().map(|&(i, j, c)| c * x.pow(i) * y.pow(j) * d.pow(deg - i - j)).sum();
                match rel {
                    Relation::Gt => v > 0,
                    Relation::Lt => v < 0,
                    Relation::Ne => v != 0,
                }
            })
        })
    })
}

fn c5_feasibility() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let opts = FeasOptions { max_depth: 16, max_steps: 20_000, ..FeasOptions::default() };
    let (mut witness, mut infeasible, mut unknown, mut unsound) = (0, 0, 0, 0);
    for _ in 0..1000 {
        let sys = random_system(&mut rng);
        match feasible_with(&sys, &opts) {
            Verdict::Witness { point } => {
                witness += 1;
                unsound += usize::from(!sys.satisfied_by(&point));
            }
            Verdict::Infeasible { cover } => {
                infeasible += 1;
                unsound += usize::from(!verify_cover(&sys, &cover) || grid_hit(&sys));
            }
            Verdict::Unknown { .. } => unknown += 1,
        }
    }
    Outcome::new(
        unsound == 0,
        format!(
            "{witness} witnesses, {infeasible} infeasible, {unknown} unknown (rate {:.1}%), {unsound} unsound",
            unknown as f64 / 10.0
        ),
    )
}

fn c6_remark() -> Outcome {
    let f = graphoid_core::UPoly::from_ints(&[2, 0, -5, 0, 1]);
    let mut checks: Vec<(String, bool)> = Vec::new();
    let irr = irreducible_over_q(&f);
    checks.push((
        format!("irreducible {:?}", irr.as_ref().map(|i| i.is_irreducible())),
        matches!(irr, Ok(Irreducibility::Irreducible(_))),
    ));

    let width = qr(1, 10_000_000_000);
    let roots: Vec<_> = real_roots_of(&f).unwrap().iter().map(|r| r.refined(&width)).collect();
    let r17 = 17f64.sqrt();
    let oracle = {
        let (big, small) = (((5.0 + r17) / 2.0).sqrt(), ((5.0 - r17) / 2.0).sqrt());
        [-big, -small, small, big]
    };
    let widths_ok = roots.iter().all(|r| &r.hi - &r.lo <= width);
    let near = roots.len() == 4 && roots.iter().zip(oracle).all(|(r, o)| (r.approx() - o).abs() < 1e-4);
    let listed = [2.1358, 0.6621];
    let listed_ok = roots.iter().all(|r| listed.iter().any(|l| (r.approx().abs() - l).abs() < 1e-4));
    checks.push((format!("{} roots at width 1e-10", roots.len()), roots.len() == 4 && widths_ok));
    checks.push(("roots match the radical oracle and ±2.1358, ±0.6621".into(), near && listed_ok));

    let (alpha, beta) = (&roots[3], &roots[2]);
    match min_poly_of_sum(alpha, beta) {
        Ok(m) => {
            let deg = m.degree();
            checks.push((
                format!(
                    "min_poly_of_sum(α≈{:.4}, β≈{:.4}) has degree {}, wanted 8",
                    alpha.approx(),
                    beta.approx(),
                    deg.map_or("?".into(), |d| d.to_string())
                ),
                deg == Some(8),
            ));
            let modp = matches!(&m, MinPoly::Certified { certificate: Certificate::ModP { .. }, .. });
            let cert = match &m {
                MinPoly::Certified { certificate, .. } => format!("{certificate:?}"),
                MinPoly::Unresolved { .. } => "none".into(),
            };
            checks.push((format!("mod-p certificate for it (got {cert})"), modp));
        }
        Err(e) => checks.push((format!("min_poly_of_sum: {e}"), false)),
    }

    match subfields_distinct(&f) {
        Ok(r) => {
            let ok =
                r.conclusion == SubfieldConclusion::IsomorphicNotEqual && r.text.contains("isomorphic, but not equal");
            checks.push(("report concludes \"isomorphic, but not equal\"".into(), ok));
        }
        Err(e) => checks.push((format!("subfield report: {e}"), false)),
    }
    let pass = checks.iter().all(|(_, ok)| *ok);
    let mut detail = String::new();
    for (i, (what, ok)) in checks.iter().enumerate() {
        let _ = write!(detail, "{}{} {what}", if i > 0 { "; " } else { "" }, if *ok { "ok" } else { "FAILED" });
    }
    Outcome::new(pass, detail)
}

fn random_ratfunc(rng: &mut ChaCha8Rng) -> RatFunc {
    loop {
        let (dp, dd) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        let (p, d) = (random_poly(rng, dp), random_poly(rng, dd));
        if let Ok(f) = RatFunc::new(p, d) {
            return f;
        }
    }
}

/// A random line through `a`.
fn line_through(rng: &mut ChaCha8Rng, a: &[Q]) -> Poly {
    let (u, v) = loop {
        let (u, v) = (q(rng.gen_range(-3..=3)), q(rng.gen_range(-3..=3)));
        if u != q(0) || v != q(0) {
            break (u, v);
        }
    };
    Poly::x().sub(&Poly::constant(a[0].clone())).scale(&u).add(&Poly::y().sub(&Poly::constant(a[1].clone())).scale(&v))
}

/// A point of the graphoid of {f, g, f+g, f·g}: a regular point, a pole of
/// f or g, or a point where f is 0/0. Values off dom(E) are limits along a
/// random line.
fn random_graphoid_point(rng: &mut ChaCha8Rng) -> Option<(GraphoidPoint, FunctionFamily)> {
    let (mut f, g) = (random_ratfunc(rng), random_ratfunc(rng));
    let a = match rng.gen_range(0..3) {
        0 => vec![rand_q(rng, 6, 3), rand_q(rng, 6, 3)],
        1 => (0..40).find_map(|_| {
            let d = if rng.gen_bool(0.5) { f.denom() } else { g.denom() };
            let c = rand_q(rng, 6, 3);
            let horizontal = rng.gen_bool(0.5);
            let roots = if horizontal { d.subs_y(&c) } else { d.subs_x(&c) }.rational_roots();
            let r = roots.get(rng.gen_range(0..roots.len().max(1)))?.clone();
            Some(if horizontal { vec![r, c] } else { vec![c, r] })
        })?,
        _ => {
            let a = vec![rand_q(rng, 6, 3), rand_q(rng, 6, 3)];
            let (n, d) = (line_through(rng, &a), line_through(rng, &a));
            f = f.add(&RatFunc::new(n, d).ok()?);
            a
        }
    };
    let members = [("f", f.clone()), ("g", g.clone()), ("s", f.add(&g)), ("p", f.mul(&g))];
    let mut seen = BTreeSet::new();
    if !members.iter().all(|(_, h)| seen.insert(h.to_text())) {
        return None;
    }
    let e = FunctionFamily::new(
        members.iter().map(|(id, h)| Member { id: id.to_string(), f: h.clone() }).collect(),
        Some(2),
    )
    .ok()?;
    let values: Vec<(String, XReal)> = if e.in_domain(&a) {
        members.iter().map(|(id, h)| (id.to_string(), h.eval_exact(&a).unwrap())).collect()
    } else {
        let t = rand_q(rng, 5, 2);
        members
            .iter()
            .map(|(id, h)| (id.to_string(), probe_limits(h, &a, std::slice::from_ref(&t))[0].clone()))
            .collect()
    };
    Some((GraphoidPoint::new(a.into_iter().map(XReal::Finite).collect(), values), e))
}

fn c7_places() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut tables = Vec::new();
    let (mut attempts, mut at_poles, mut off_domain, mut violating) = (0, 0, 0, 0);
    while tables.len() < 100 && attempts < 5000 {
        attempts += 1;
        let Some((gamma, e)) = random_graphoid_point(&mut rng) else { continue };
        let mv = member(&gamma, &e, &default_radii());
        if !matches!(mv, Ok(v) if v.is_confirmed()) {
            continue;
        }
        let a: Vec<Q> = gamma.base.iter().map(|v| v.finite().unwrap().clone()).collect();
        if !e.in_domain(&a) {
            off_domain += 1;
        } else if gamma.values.values().any(XReal::is_infinite) {
            at_poles += 1;
        }
        match delta_place(&gamma, &e) {
            Ok(t) => {
                violating += usize::from(!check_place_table(&t).is_empty());
                tables.push(t);
            }
            Err(_) => violating += 1,
        }
    }
    let mut mutated = 0;
    let mut missed = 0;
    'outer: for _ in 0..50 {
        for t in &tables {
            if mutated == 100 {
                break 'outer;
            }
            let constrained: Vec<_> = t
                .relations
                .iter()
                .filter(|r| {
                    let (a, b) = (&t.entries[&r.f], &t.entries[&r.g]);
                    let out = if r.op == Op::Sum { xadd(a, b) } else { xmul(a, b) };
                    r.h != r.f && r.h != r.g && matches!(out, XSet::Singleton(_))
                })
                .collect();
            if constrained.is_empty() {
                continue;
            }
            let r = constrained[rng.gen_range(0..constrained.len())];
            let old = t.entries[&r.h].clone();
            let shift = if rng.gen_bool(0.3) { XReal::Infinity } else { xq(rand_q(&mut rng, 20, 7)) };
            let new = if chordal_dist(&old, &shift) > 1e-2 { shift } else { old.antipode() };
            let mut bad = t.clone();
            bad.entries.insert(r.h.clone(), new);
            mutated += 1;
            missed += usize::from(check_place_table(&bad).is_empty());
        }
    }
    Outcome::new(
        tables.len() == 100 && violating == 0 && mutated == 100 && missed == 0,
        format!(
            "{} confirmed points ({at_poles} with a pole, {off_domain} off dom(E)) from {attempts} draws, {violating} with violations; \
             {mutated} mutated tables, {missed} undetected",
            tables.len()
        ),
    )
}

fn c8_circle_fibers() -> Outcome {
    let grid = linear_grid(&qr(1, 20), &q(2), 40);
    let mut parts = Vec::new();
    let mut pass = true;
    for (expr, at) in [("x/y", [0, 0]), ("(x-1)/(y-2)", [1, 2])] {
        let e = FunctionFamily::from_exprs(&[("f", expr)], Some(2)).unwrap();
        let base: Vec<XReal> = at.iter().map(|&v| x(v)).collect();
        let r = fiber_sample(&e, &base, 64, &qr(1, 1000), 0)
            .and_then(|c| PointCloud::from_fiber(&c))
            .and_then(|c| stable_range(&c, &grid));
        match r {
            Ok(r) => {
                let run = r.longest.as_ref();
                let ok = run.is_some_and(|b| (b.betti0, b.betti1) == (1, 1));
                pass &= ok;
                parts.push(match run {
                    Some(b) => format!(
                        "{expr}: ({}, {}) over {} steps, ε ∈ [{}, {}]",
                        b.betti0,
                        b.betti1,
                        b.steps,
                        to_f64(&b.lo),
                        to_f64(&b.hi)
                    ),
                    None => format!("{expr}: no stable run"),
                });
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{expr}: {e}"));
            }
        }
    }
    Outcome::new(pass, parts.join(", "))
}

fn c9_determinism() -> Outcome {
    let dir = tempfile::TempDir::new().unwrap();
    let p = |n: &str| dir.path().join(n);
    std::fs::write(p("fam.json"), r#"[{"id": "f", "expr": "x/y"}, {"id": "g", "expr": "x^2/(x^2+y^2)"}]"#).unwrap();
    std::fs::write(p("pt.json"), r#"{"base": ["0", "0"], "values": {"f": "-7/3", "g": "49/58"}}"#).unwrap();
    std::fs::write(
        p("sys.json"),
        r#"{"nvars": 2, "constraints": [{"poly": "x^2 + y^2 - 1", "rel": "<0"}, {"poly": "x*y - 1/4", "rel": ">0"}],
            "region": {"arcs": [{"lo": "-2", "hi": "2"}, {"lo": "-2", "hi": "2"}]}}"#,
    )
    .unwrap();
    std::fs::write(
        p("table.json"),
        r#"{"entries": {"0": "0", "1": "1", "x": "inf", "y": "2", "x + y": "inf"}, "sums": [["x", "y", "x + y"]], "products": []}"#,
    )
    .unwrap();
    let manifests = vec![
        RunManifest::new("parse").arg("(x^2 - y^2)/(x - y)"),
        RunManifest::new("eval").arg("x/y").arg("1").arg("0"),
        RunManifest::new("feas").arg("check").input("system", p("sys.json")),
        RunManifest::new("member").input("family", p("fam.json")).input("point", p("pt.json")),
        RunManifest::new("cluster").arg("x*y/(x^2+y^2)").param("at", "0,0"),
        {
            let mut m = RunManifest::new("fiber").input("family", p("fam.json")).param("at", "0,0");
            m.seed = 99;
            m
        },
        RunManifest::new("place-check").input("table", p("table.json")),
        RunManifest::new("nf").arg("distinct").arg("x^4 - 5*x^2 + 2"),
        RunManifest::new("nf").arg("chi").arg("x^2 - 2").arg("a^3 - a").arg("1/1024"),
        RunManifest::new("demo-remark-as"),
    ];
    let mut differing = Vec::new();
    let mut count = 0;
    let runs = |m: &RunManifest, tag: &str, k: usize| -> Result<Vec<u8>, String> {
        let mut m = m.clone();
        let path = p(&format!("{}-{tag}-{k}.out", m.verb));
        m.out = Some(path.clone());
        run(&m).map_err(|e| format!("{}: {e}", m.verb))?;
        std::fs::read(&path).map_err(|e| e.to_string())
    };
    for m in &manifests {
        count += 1;
        match (runs(m, "a", count), runs(m, "b", count)) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(_), Ok(_)) => differing.push(m.verb.clone()),
            (Err(e), _) | (_, Err(e)) => differing.push(e),
        }
    }
    let fiber = p("fiber-a-6.out");
    let scan = RunManifest::new("probe").arg("scan").input("cloud", fiber);
    count += 1;
    match (runs(&scan, "a", count), runs(&scan, "b", count)) {
        (Ok(a), Ok(b)) if a == b => {}
        other => differing.push(format!("probe: {:?}", other.0.err())),
    }
    Outcome::new(differing.is_empty(), format!("{count} manifests run twice, differing: {differing:?}"))
}
