//! ℝ-places on finite tables, the place induced by a graphoid point, and the
//! real places of number fields.

pub mod irreducible;
pub mod minpoly;
pub mod numfield;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphoid::GraphoidPoint;
use crate::ratfunc::{FunctionFamily, RatFunc};
use crate::rational::{q, qr};
use crate::xreal::{xadd, xmul, XReal, XSet};

pub use crate::sturm::{sturm_count, sturm_count_all};
pub use irreducible::{certify_irreducible, irreducible_over_q, Certificate, Irreducibility};
pub use minpoly::{
    min_poly_of_lincomb, min_poly_of_sum, subfields_distinct, MinPoly, SubfieldConclusion, SubfieldReport,
};
pub use numfield::{
    archimedean_bounds, canonical_place, enumerate_places, parse_upoly, AlgebraicNumber, NumberFieldElement,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Op {
    Sum,
    Product,
}

impl Op {
    fn apply(self, f: &RatFunc, g: &RatFunc) -> RatFunc {
        match self {
            Op::Sum => f.add(g),
            Op::Product => f.mul(g),
        }
    }

    /// `h = f op g` as an identity, by cross-multiplication.
    pub fn holds(self, f: &RatFunc, g: &RatFunc, h: &RatFunc) -> bool {
        let probes = [(q(3), q(-7)), (qr(-5, 2), qr(11, 3))];
        for (x, y) in &probes {
            let v = |r: &RatFunc| r.eval_exact(&[x.clone(), y.clone()]);
            if let (Some(XReal::Finite(a)), Some(XReal::Finite(b)), Some(XReal::Finite(c))) = (v(f), v(g), v(h)) {
                let lhs = match self {
                    Op::Sum => a + b,
                    Op::Product => a * b,
                };
                if lhs != c {
                    return false;
                }
            }
        }
        let (fq, gq) = (f.denom(), g.denom());
        let lhs = match self {
            Op::Sum => f.numer().mul(gq).add(&g.numer().mul(fq)),
            Op::Product => f.numer().mul(g.numer()),
        };
        lhs.mul(h.denom()) == h.numer().mul(&fq.mul(gq))
    }

    fn apply_x(self, r: &XReal, s: &XReal) -> XSet {
        match self {
            Op::Sum => xadd(r, s),
            Op::Product => xmul(r, s),
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Op::Sum => "+",
            Op::Product => "*",
        }
    }
}

/// `h = f + g` or `h = f · g`, keyed by canonical expression text.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Relation {
    pub op: Op,
    pub f: String,
    pub g: String,
    pub h: String,
}

impl std::fmt::Display for Relation {
    fn fmt(&self, w: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(w, "({}) {} ({}) = {}", self.f, self.op.symbol(), self.g, self.h)
    }
}

/// A finite restriction of a candidate ℝ-place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceTable {
    pub entries: BTreeMap<String, XReal>,
    pub relations: Vec<Relation>,
}

fn canonical(expr: &str) -> Result<(String, RatFunc)> {
    let f: RatFunc = expr.parse()?;
    Ok((f.to_text(), f))
}

#[derive(Deserialize)]
struct TableRepr {
    entries: BTreeMap<String, XReal>,
    #[serde(default)]
    sums: Vec<[String; 3]>,
    #[serde(default)]
    products: Vec<[String; 3]>,
}

impl PlaceTable {
    /// Canonicalizes keys and checks the table invariants: 0 and 1 present,
    /// relation operands present, relations true as identities of rational
    /// functions.
    pub fn new(entries: impl IntoIterator<Item = (String, XReal)>, relations: Vec<Relation>) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut funcs = BTreeMap::new();
        for (k, v) in entries {
            let (key, f) = canonical(&k)?;
            if let Some(old) = map.insert(key.clone(), v.clone()) {
                if old != v {
                    return Err(Error::Invalid(format!("conflicting values for `{key}`: {old} and {v}")));
                }
            }
            funcs.insert(key, f);
        }
        for c in ["0", "1"] {
            if !map.contains_key(c) {
                return Err(Error::MissingCompound(c.into()));
            }
        }
        let mut rels = Vec::with_capacity(relations.len());
        for r in relations {
            let mut keys = Vec::with_capacity(3);
            for e in [&r.f, &r.g, &r.h] {
                let (key, _) = canonical(e)?;
                if !funcs.contains_key(&key) {
                    return Err(Error::MissingCompound(key));
                }
                keys.push(key);
            }
            let rel = Relation { op: r.op, h: keys.pop().unwrap(), g: keys.pop().unwrap(), f: keys.pop().unwrap() };
            if !r.op.holds(&funcs[&rel.f], &funcs[&rel.g], &funcs[&rel.h]) {
                return Err(Error::FalseRelation(rel.to_string()));
            }
            rels.push(rel);
        }
        rels.sort();
        rels.dedup();
        Ok(PlaceTable { entries: map, relations: rels })
    }

    /// `{entries: {expr: xreal}, sums: [[f, g, h]], products: [[f, g, h]]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let repr: TableRepr = serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
        let rel = |op, [f, g, h]: [String; 3]| Relation { op, f, g, h };
        let relations = repr
            .sums
            .into_iter()
            .map(|t| rel(Op::Sum, t))
            .chain(repr.products.into_iter().map(|t| rel(Op::Product, t)))
            .collect();
        PlaceTable::new(repr.entries, relations)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pick = |op| {
            self.relations
                .iter()
                .filter(|r| r.op == op)
                .map(|r| [r.f.clone(), r.g.clone(), r.h.clone()])
                .collect::<Vec<_>>()
        };
        serde_json::json!({
            "entries": self.entries,
            "sums": pick(Op::Sum),
            "products": pick(Op::Product),
        })
    }

    pub fn get(&self, expr: &str) -> Option<&XReal> {
        self.entries.get(expr).or_else(|| canonical(expr).ok().and_then(|(k, _)| self.entries.get(&k)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// The relation, or `χ(0) = 0` / `χ(1) = 1`.
    pub relation: String,
    pub values: Vec<(String, XReal)>,
    pub message: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, w: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(w, "{}: {}", self.relation, self.message)
    }
}

/// Every way the table fails to preserve 0, 1 and the recorded relations.
pub fn check_place_table(t: &PlaceTable) -> Vec<Violation> {
    let mut out = Vec::new();
    for (c, want) in [("0", XReal::zero()), ("1", XReal::int(1))] {
        match t.entries.get(c) {
            Some(v) if *v == want => {}
            Some(v) => out.push(Violation {
                relation: format!("χ({c}) = {c}"),
                values: vec![(c.into(), v.clone())],
                message: format!("χ({c}) = {v}"),
            }),
            None => out.push(Violation {
                relation: format!("χ({c}) = {c}"),
                values: vec![],
                message: format!("{c} is missing"),
            }),
        }
    }
    for r in &t.relations {
        let (Some(a), Some(b), Some(h)) = (t.entries.get(&r.f), t.entries.get(&r.g), t.entries.get(&r.h)) else {
            out.push(Violation { relation: r.to_string(), values: vec![], message: "operand missing".into() });
            continue;
        };
        let allowed = r.op.apply_x(a, b);
        if !allowed.contains(h) {
            let XSet::Singleton(s) = &allowed else { unreachable!() };
            out.push(Violation {
                relation: r.to_string(),
                values: vec![(r.f.clone(), a.clone()), (r.g.clone(), b.clone()), (r.h.clone(), h.clone())],
                message: format!("{h} ∉ {a} {} {b} = {{{s}}}", if r.op == Op::Sum { "⊕" } else { "⊙" }),
            });
        }
    }
    out
}

/// A relation the caller needs recorded; the compound must be a member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Request {
    pub op: Op,
    pub f: String,
    pub g: String,
}

/// The table of `δ_γ`: members to their values, constants to themselves,
/// coordinates to the base point, and every sum and product relation that
/// holds among these entries.
pub fn delta_place(gamma: &GraphoidPoint, e: &FunctionFamily) -> Result<PlaceTable> {
    delta_place_with(gamma, e, &[])
}

pub fn delta_place_with(gamma: &GraphoidPoint, e: &FunctionFamily, requests: &[Request]) -> Result<PlaceTable> {
    gamma.validate(e)?;
    let mut funcs: BTreeMap<String, (RatFunc, XReal)> = BTreeMap::new();
    let mut put = |f: RatFunc, v: XReal| -> Result<()> {
        let key = f.to_text();
        match funcs.get(&key) {
            Some((_, old)) if *old != v => Err(Error::Invalid(format!("`{key}` receives both {old} and {v}"))),
            Some(_) => Ok(()),
            None => {
                funcs.insert(key, (f, v));
                Ok(())
            }
        }
    };
    put(RatFunc::constant(q(0)), XReal::zero())?;
    put(RatFunc::constant(q(1)), XReal::int(1))?;
    let coords = [RatFunc::x(), RatFunc::y()];
    for (x, a) in coords.iter().zip(&gamma.base) {
        put(x.clone(), a.clone())?;
    }
    for m in e.members() {
        let v = match m.f.constant_value() {
            Some(c) => XReal::Finite(c),
            None => gamma.values[&m.id].clone(),
        };
        put(m.f.clone(), v)?;
    }
    for r in requests {
        let (_, f) = canonical(&r.f)?;
        let (_, g) = canonical(&r.g)?;
        for k in [f.to_text(), g.to_text(), r.op.apply(&f, &g).to_text()] {
            if !funcs.contains_key(&k) {
                return Err(Error::MissingCompound(k));
            }
        }
    }
    let keys: Vec<&String> = funcs.keys().collect();
    let mut relations = Vec::new();
    for (i, a) in keys.iter().enumerate() {
        for b in &keys[i..] {
            for op in [Op::Sum, Op::Product] {
                for h in &keys {
                    if op.holds(&funcs[*a].0, &funcs[*b].0, &funcs[*h].0) {
                        relations.push(Relation { op, f: (*a).clone(), g: (*b).clone(), h: (*h).clone() });
                    }
                }
            }
        }
    }
    Ok(PlaceTable { entries: funcs.into_iter().map(|(k, (_, v))| (k, v)).collect(), relations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xr(s: &str) -> XReal {
        s.parse().unwrap()
    }

    fn table(entries: &[(&str, &str)], sums: &[[&str; 3]], products: &[[&str; 3]]) -> Result<PlaceTable> {
        let rel = |op, t: &[&str; 3]| Relation { op, f: t[0].into(), g: t[1].into(), h: t[2].into() };
        PlaceTable::new(
            entries.iter().map(|(k, v)| (k.to_string(), xr(v))),
            sums.iter().map(|t| rel(Op::Sum, t)).chain(products.iter().map(|t| rel(Op::Product, t))).collect(),
        )
    }

    #[test]
    fn zero_times_infinity_is_unconstrained() {
        let t = table(&[("0", "0"), ("1", "1"), ("x", "inf"), ("1/x", "0")], &[], &[["x", "1/x", "1"]]).unwrap();
        assert!(check_place_table(&t).is_empty());
    }

    #[test]
    fn bad_sum_is_reported() {
        let t = table(&[("0", "0"), ("1", "1"), ("x", "2"), ("2*x", "5")], &[["x", "x", "2*x"]], &[]).unwrap();
        let v = check_place_table(&t);
        assert_eq!(v.len(), 1);
        assert!(v[0].message.contains('4'), "{}", v[0].message);
    }

    #[test]
    fn table_invariants() {
        assert!(matches!(table(&[("1", "1")], &[], &[]), Err(Error::MissingCompound(_))));
        assert!(matches!(
            table(&[("0", "0"), ("1", "1"), ("x", "2")], &[["x", "x", "y"]], &[]),
            Err(Error::MissingCompound(_))
        ));
        assert!(matches!(
            table(&[("0", "0"), ("1", "1"), ("x", "2"), ("y", "4")], &[["x", "x", "y"]], &[]),
            Err(Error::FalseRelation(_))
        ));
        let t = table(&[("0", "0"), ("1", "0")], &[], &[]).unwrap();
        assert_eq!(check_place_table(&t).len(), 1);
    }

    #[test]
    fn json_schema() {
        let t = PlaceTable::from_json(
            r#"{"entries": {"0": "0", "1": "1", "x": "inf", "1/x": "0"}, "products": [["x", "1/x", "1"]]}"#,
        )
        .unwrap();
        assert_eq!(t.relations.len(), 1);
        let back = PlaceTable::from_json(&t.to_json().to_string()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn delta_place_examples() {
        let e = FunctionFamily::from_exprs(&[("r", "x/y"), ("x", "x"), ("y", "y"), ("p", "x*(x/y)")], None).unwrap();
        let one = || XReal::int(1);
        let g = GraphoidPoint::new(
            vec![one(), one()],
            [("r", one()), ("x", one()), ("y", one()), ("p", one())].map(|(k, v)| (k.to_string(), v)),
        );
        let t = delta_place_with(&g, &e, &[Request { op: Op::Product, f: "x".into(), g: "x/y".into() }]).unwrap();
        assert_eq!(t.get("x*x/y"), Some(&one()));
        assert!(t.relations.iter().any(|r| r.op == Op::Product && r.h == canonical("x^2/y").unwrap().0));
        assert!(check_place_table(&t).is_empty());

        let e = FunctionFamily::from_exprs(&[("r", "x/y")], None).unwrap();
        let g = GraphoidPoint::new(vec![XReal::zero(), XReal::zero()], [("r".to_string(), XReal::int(7))]);
        let t = delta_place(&g, &e).unwrap();
        assert!(t.relations.iter().any(|r| r.op == Op::Product && r.h == "x"));
        assert!(check_place_table(&t).is_empty());
        let err = delta_place_with(&g, &e, &[Request { op: Op::Sum, f: "x".into(), g: "y".into() }]);
        assert!(matches!(err, Err(Error::MissingCompound(_))));

        let e = FunctionFamily::from_exprs(&[("a", "2"), ("b", "3"), ("c", "5")], Some(1)).unwrap();
        let g = GraphoidPoint::new(
            vec![XReal::int(9)],
            [("a", 2), ("b", 3), ("c", 5)].map(|(k, v)| (k.to_string(), XReal::int(v))),
        );
        let t = delta_place(&g, &e).unwrap();
        assert_eq!(t.get("5"), Some(&XReal::Finite(q(5))));
        assert!(t.relations.contains(&Relation { op: Op::Sum, f: "2".into(), g: "3".into(), h: "5".into() }));
        assert!(check_place_table(&t).is_empty());
    }
}
