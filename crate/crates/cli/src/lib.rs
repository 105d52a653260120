//! Manifest-driven runs of the graphoid toolkit. Every run is described by a
//! [`RunManifest`]; [`run`] turns it into a deterministic artifact that
//! embeds the manifest and the tool version.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use graphoid_core::feasibility::{feasible_with, FeasOptions};
use graphoid_core::graphoid::{default_radii, ClusterBudget};
use graphoid_core::places::{
    archimedean_bounds, canonical_place, check_place_table, enumerate_places, irreducible_over_q,
    numfield::real_roots_of, parse_upoly, subfields_distinct, AlgebraicNumber, Irreducibility, NumberFieldElement,
    PlaceTable,
};
use graphoid_core::rational::{fmt_rational, parse_rational, q, to_f64};
use graphoid_core::sturm::SturmSeq;
use graphoid_core::topo::{linear_grid, max_circular_gap, rips_betti, stable_range, PointCloud};
use graphoid_core::{
    cluster_set, fiber_sample, member, parse, Error, FunctionFamily, GraphoidPoint, InequalitySystem,
    MembershipVerdict, Verdict, XReal, Q,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const TOOL: &str = concat!("graphoid ", env!("CARGO_PKG_VERSION"));

/// The verbs a manifest may name.
pub const VERBS: [&str; 10] =
    ["parse", "eval", "feas", "member", "cluster", "fiber", "place-check", "nf", "probe", "demo-remark-as"];

/// A complete description of one run. Identical manifests give identical
/// artifacts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub verb: String,
    #[serde(default)]
    pub args: Vec<String>,
    /// Named input files.
    #[serde(default)]
    pub inputs: BTreeMap<String, PathBuf>,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    #[serde(default)]
    pub seed: u64,
    /// Artifact destination; not part of the embedded manifest.
    #[serde(default, skip_serializing)]
    pub out: Option<PathBuf>,
}

impl RunManifest {
    pub fn new(verb: &str) -> Self {
        RunManifest {
            verb: verb.to_string(),
            args: Vec::new(),
            inputs: BTreeMap::new(),
            params: BTreeMap::new(),
            seed: 0,
            out: None,
        }
    }

    pub fn arg(mut self, a: impl Into<String>) -> Self {
        self.args.push(a.into());
        self
    }

    pub fn input(mut self, k: &str, p: impl Into<PathBuf>) -> Self {
        self.inputs.insert(k.to_string(), p.into());
        self
    }

    pub fn param(mut self, k: &str, v: impl Into<String>) -> Self {
        self.params.insert(k.to_string(), v.into());
        self
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::bad(format!("manifest: {e}")))
    }

    fn param_or(&self, k: &str, default: &str) -> String {
        self.params.get(k).cloned().unwrap_or_else(|| default.to_string())
    }

    fn read(&self, k: &str) -> Result<String, CliError> {
        let p = self.inputs.get(k).ok_or_else(|| CliError::bad(format!("missing input `{k}`")))?;
        fs::read_to_string(p).map_err(|e| CliError::bad(format!("{}: {e}", p.display())))
    }

    fn arg_at(&self, i: usize, what: &str) -> Result<&str, CliError> {
        self.args.get(i).map(String::as_str).ok_or_else(|| CliError::bad(format!("missing argument: {what}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    BadInput,
    Internal,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error, Serialize)]
#[error("{message}")]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn bad(message: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::BadInput, message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Internal, message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::BadInput => 2,
            ErrorKind::Internal => 1,
        }
    }

    /// `{"error": {"kind": ..., "message": ...}}`.
    pub fn to_json(&self) -> String {
        json!({ "error": self }).to_string()
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(m) => CliError::internal(m),
            other => CliError::bad(other.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// The run finished but the verdict is Unknown.
    Unknown,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Unknown => 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub status: Status,
    /// Artifact bytes, JSON or JSON lines.
    pub artifact: Vec<u8>,
    /// Human-readable summary.
    pub text: String,
}

struct Report {
    result: Value,
    text: String,
    status: Status,
}

impl Report {
    fn ok(result: Value, text: String) -> Self {
        Report { result, text, status: Status::Ok }
    }
}

fn header(m: &RunManifest) -> serde_json::Map<String, Value> {
    let mut h = serde_json::Map::new();
    h.insert("tool".into(), json!(TOOL));
    h.insert("manifest".into(), serde_json::to_value(m).expect("manifest serializes"));
    h
}

fn json_artifact(m: &RunManifest, r: &Report) -> Vec<u8> {
    let mut h = header(m);
    h.insert("result".into(), r.result.clone());
    let mut out = serde_json::to_vec_pretty(&Value::Object(h)).expect("artifact serializes");
    out.push(b'\n');
    out
}

/// Writes `bytes` to `path` through a temporary file in the same directory
/// and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp-{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

/// Runs a manifest and writes its artifact when `out` is set.
pub fn run(m: &RunManifest) -> Result<RunOutput, CliError> {
    let out = execute(m)?;
    if let Some(path) = &m.out {
        write_atomic(path, &out.artifact).map_err(|e| CliError::bad(format!("{}: {e}", path.display())))?;
    }
    Ok(out)
}

/// Runs a manifest without touching the file system beyond its inputs.
pub fn execute(m: &RunManifest) -> Result<RunOutput, CliError> {
    if m.verb == "fiber" {
        return fiber(m);
    }
    let r = match m.verb.as_str() {
        "parse" => parse_verb(m)?,
        "eval" => eval_verb(m)?,
        "feas" => feas_verb(m)?,
        "member" => member_verb(m)?,
        "cluster" => cluster_verb(m)?,
        "place-check" => place_check(m)?,
        "nf" => nf_verb(m)?,
        "probe" => probe_verb(m)?,
        "demo-remark-as" => demo_remark_as()?,
        v => return Err(CliError::bad(format!("unknown verb `{v}`; expected one of {}", VERBS.join(", ")))),
    };
    Ok(RunOutput { status: r.status, artifact: json_artifact(m, &r), text: r.text })
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn rat(s: &str) -> Result<Q, CliError> {
    Ok(parse_rational(s)?)
}

fn xreals(s: &str) -> Result<Vec<XReal>, CliError> {
    s.split(',').map(|t| t.trim().parse::<XReal>().map_err(CliError::from)).collect()
}

/// `1e-1..1e-6` (decades) or a comma list.
pub fn parse_radii(s: &str) -> Result<Vec<Q>, CliError> {
    if let Some((a, b)) = s.split_once("..") {
        let (lo, hi) = (rat(a)?, rat(b)?);
        let ten = q(10);
        let mut v = vec![lo.clone()];
        let mut r = lo;
        while r > hi {
            r /= &ten;
            v.push(r.clone());
        }
        if v.last() != Some(&hi) {
            return Err(CliError::bad(format!("`{s}` is not a decade range")));
        }
        Ok(v)
    } else {
        s.split(',').map(rat).collect()
    }
}

/// `e1,e2,...` or `lo..hi:n` (n equally spaced scales).
pub fn parse_grid(s: &str) -> Result<Vec<Q>, CliError> {
    if let Some((range, n)) = s.split_once(':') {
        let (a, b) = range.split_once("..").ok_or_else(|| CliError::bad(format!("bad grid `{s}`")))?;
        let n: usize = n.trim().parse().map_err(|_| CliError::bad(format!("bad grid count in `{s}`")))?;
        Ok(linear_grid(&rat(a)?, &rat(b)?, n))
    } else {
        s.split(',').map(rat).collect()
    }
}

pub const DEFAULT_GRID: &str = "1/20..2:40";

fn parse_verb(m: &RunManifest) -> Result<Report, CliError> {
    let text = m.arg_at(0, "expression")?;
    let f = parse(text)?;
    let result = json!({
        "input": text,
        "canonical": f.to_text(),
        "numerator": f.numer().to_text(),
        "denominator": f.denom().to_text(),
        "excluded": to_json(&f.domain_excluded()),
    });
    Ok(Report::ok(result, f.to_text()))
}

fn eval_verb(m: &RunManifest) -> Result<Report, CliError> {
    let f = parse(m.arg_at(0, "expression")?)?;
    let point: Vec<Q> = m.args[1..].iter().map(|s| rat(s)).collect::<Result<_, _>>()?;
    let needed = if f.uses_y() {
        2
    } else if f.uses_x() {
        1
    } else {
        0
    };
    if point.len() < needed || point.len() > 2 {
        return Err(CliError::bad(format!("expected {needed} coordinate(s), got {}", point.len())));
    }
    let v = f.eval_exact(&point);
    let text = v.as_ref().map_or("undefined".to_string(), XReal::to_string);
    Ok(Report::ok(json!({ "expr": f.to_text(), "point": to_json(&rat_strings(&point)), "value": text }), text))
}

fn rat_strings(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

fn feas_verb(m: &RunManifest) -> Result<Report, CliError> {
    let mode = m.arg_at(0, "feas mode (check)")?;
    if mode != "check" {
        return Err(CliError::bad(format!("unknown feas mode `{mode}`")));
    }
    let sys = InequalitySystem::from_json(&m.read("system")?)?;
    let opts = FeasOptions {
        max_depth: m.param_or("depth", "40").parse().map_err(|_| CliError::bad("depth must be an integer"))?,
        max_steps: m.param_or("steps", "1000000").parse().map_err(|_| CliError::bad("steps must be an integer"))?,
        ..FeasOptions::default()
    };
    let v = feasible_with(&sys, &opts);
    let (text, status) = match &v {
        Verdict::Witness { point } => (format!("witness ({})", rat_strings(point).join(", ")), Status::Ok),
        Verdict::Infeasible { cover } => (format!("infeasible ({} boxes)", cover.num_boxes()), Status::Ok),
        Verdict::Unknown { depth, steps } => (format!("unknown (depth {depth}, {steps} steps)"), Status::Unknown),
    };
    Ok(Report { result: to_json(&v), text, status })
}

fn member_verb(m: &RunManifest) -> Result<Report, CliError> {
    let e = FunctionFamily::from_json(&m.read("family")?)?;
    let g: GraphoidPoint = serde_json::from_str(&m.read("point")?).map_err(|e| CliError::bad(format!("point: {e}")))?;
    let radii = match m.params.get("radii") {
        Some(s) => parse_radii(s)?,
        None => default_radii(),
    };
    let v = member(&g, &e, &radii)?;
    let (text, status) = match &v {
        MembershipVerdict::ConfirmedToRadius { radius, .. } => {
            (format!("confirmed to radius {}", fmt_rational(radius)), Status::Ok)
        }
        MembershipVerdict::Excluded { radius, .. } => {
            (format!("excluded at radius {}", fmt_rational(radius)), Status::Ok)
        }
        MembershipVerdict::Unknown { unresolved, .. } => {
            (format!("unknown at radius {}", fmt_rational(unresolved)), Status::Unknown)
        }
    };
    Ok(Report { result: to_json(&v), text, status })
}

fn budget(m: &RunManifest) -> Result<ClusterBudget, CliError> {
    let d = ClusterBudget::default();
    let int = |k: &str, v: u64| -> Result<u64, CliError> {
        m.params.get(k).map_or(Ok(v), |s| s.parse().map_err(|_| CliError::bad(format!("{k} must be an integer"))))
    };
    Ok(ClusterBudget {
        radius: m.params.get("radius").map_or(Ok(d.radius.clone()), |s| rat(s))?,
        pieces: int("pieces", d.pieces as u64)? as usize,
        refine: int("refine", d.refine as u64)? as u32,
        farey_order: int("farey", d.farey_order)?,
    })
}

fn cluster_verb(m: &RunManifest) -> Result<Report, CliError> {
    let f = parse(m.arg_at(0, "expression")?)?;
    let a = xreals(m.params.get("at").ok_or_else(|| CliError::bad("missing --at"))?)?;
    let c = cluster_set(&f, &a, &budget(m)?)?;
    let full = c.outer.is_full();
    let diameter = c.outer.chordal_diameter();
    let text = format!(
        "inner {}; outer {}{}",
        arcs_text(c.inner.arcs()),
        arcs_text(c.outer.arcs()),
        if full { " (full circle)" } else { "" }
    );
    let result = json!({
        "expr": f.to_text(),
        "at": to_json(&a),
        "inner": to_json(&c.inner),
        "outer": to_json(&c.outer),
        "full": full,
        "singleton": c.is_singleton().map(XReal::to_string),
        "outer_chordal_diameter": diameter,
    });
    Ok(Report::ok(result, text))
}

fn arcs_text(arcs: &[graphoid_core::XInterval]) -> String {
    if arcs.is_empty() {
        return "∅".into();
    }
    arcs.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ∪ ")
}

fn fiber(m: &RunManifest) -> Result<RunOutput, CliError> {
    let e = FunctionFamily::from_json(&m.read("family")?)?;
    let a = xreals(m.params.get("at").ok_or_else(|| CliError::bad("missing --at"))?)?;
    let count: usize = m.param_or("count", "64").parse().map_err(|_| CliError::bad("count must be an integer"))?;
    let radius = rat(&m.param_or("radius", "1/1000"))?;
    let cloud = fiber_sample(&e, &a, count, &radius, m.seed)?;
    let mut h = header(m);
    h.insert("net_radius".into(), to_json(&cloud.net_radius));
    h.insert("points".into(), json!(cloud.points.len()));
    let mut out = serde_json::to_vec(&Value::Object(h)).expect("header serializes");
    out.push(b'\n');
    for p in &cloud.points {
        out.extend(serde_json::to_vec(p).expect("point serializes"));
        out.push(b'\n');
    }
    let text = format!("{} fiber points; net radius {:?}", cloud.points.len(), cloud.net_radius);
    Ok(RunOutput { status: Status::Ok, artifact: out, text })
}

fn place_check(m: &RunManifest) -> Result<Report, CliError> {
    let t = PlaceTable::from_json(&m.read("table")?)?;
    let v = check_place_table(&t);
    let text = if v.is_empty() {
        format!("ok: {} entries, {} relations, no violations", t.entries.len(), t.relations.len())
    } else {
        v.iter().map(|x| format!("violation: {x}")).collect::<Vec<_>>().join("\n")
    };
    Ok(Report::ok(json!({ "ok": v.is_empty(), "violations": to_json(&v), "table": t.to_json() }), text))
}

fn root_json(r: &AlgebraicNumber) -> Value {
    json!({ "lo": fmt_rational(&r.lo), "hi": fmt_rational(&r.hi), "approx": r.approx() })
}

fn choose_root(m: &RunManifest, p: &graphoid_core::UPoly) -> Result<AlgebraicNumber, CliError> {
    if let Some(s) = m.params.get("isolate") {
        let (a, b) = s.split_once(',').ok_or_else(|| CliError::bad("isolate needs `lo,hi`"))?;
        return Ok(AlgebraicNumber::new(p, rat(a)?, rat(b)?)?);
    }
    let roots = enumerate_places(p)?;
    if roots.is_empty() {
        return Err(CliError::bad("the polynomial has no real root"));
    }
    match m.params.get("root") {
        Some(k) => {
            let k: usize = k.parse().map_err(|_| CliError::bad("root must be an index"))?;
            roots.get(k).cloned().ok_or_else(|| CliError::bad(format!("root index {k} out of range")))
        }
        None => Ok(roots.last().unwrap().clone()),
    }
}

fn nf_verb(m: &RunManifest) -> Result<Report, CliError> {
    let mode = m.arg_at(0, "nf mode (roots|places|distinct|chi)")?;
    let p = parse_upoly(m.arg_at(1, "polynomial")?)?.primitive();
    match mode {
        "roots" => {
            let width = rat(&m.param_or("width", "1e-10"))?;
            let s = SturmSeq::new(&p);
            let roots: Vec<Value> = s
                .isolate()
                .into_iter()
                .map(|(a, b)| {
                    let (lo, hi) = s.refine(&a, &b, &width);
                    let approx = to_f64(&((&lo + &hi) / q(2)));
                    json!({ "lo": fmt_rational(&lo), "hi": fmt_rational(&hi), "approx": approx })
                })
                .collect();
            let text = format!(
                "{} real root(s): {}",
                roots.len(),
                roots.iter().map(|r| format!("{:.10}", r["approx"].as_f64().unwrap())).collect::<Vec<_>>().join(", ")
            );
            Ok(Report::ok(json!({ "poly": p.fmt_var("x"), "width": fmt_rational(&width), "roots": roots }), text))
        }
        "places" => {
            let places = enumerate_places(&p)?;
            let text = format!("{} real place(s) of ℚ(α), α a root of {}", places.len(), p.fmt_var("x"));
            let list: Vec<Value> = places.iter().map(root_json).collect();
            Ok(Report::ok(json!({ "poly": p.fmt_var("x"), "count": places.len(), "places": list }), text))
        }
        "distinct" => {
            let r = subfields_distinct(&p)?;
            Ok(Report::ok(to_json(&r), r.text.clone()))
        }
        "chi" => {
            let alpha = choose_root(m, &p)?;
            let x = NumberFieldElement::from_upoly(
                &parse_upoly(&m.arg_at(2, "element")?.replace(['a', 'α'], "x"))?,
                &alpha,
            );
            let prec = rat(m.arg_at(3, "precision")?)?;
            let v = canonical_place(&alpha, &x, &prec)?;
            let (lo, hi) = archimedean_bounds(&alpha, &x)?;
            let text = format!(
                "χ(x) ≈ {} (≈ {:.12}); {} < x < {}",
                fmt_rational(&v),
                to_f64(&v),
                fmt_rational(&lo),
                fmt_rational(&hi)
            );
            let result = json!({
                "alpha": root_json(&alpha),
                "element": x.as_upoly().fmt_var("α"),
                "precision": fmt_rational(&prec),
                "value": fmt_rational(&v),
                "approx": to_f64(&v),
                "bounds": [fmt_rational(&lo), fmt_rational(&hi)],
            });
            Ok(Report::ok(result, text))
        }
        other => Err(CliError::bad(format!("unknown nf mode `{other}`"))),
    }
}

fn probe_verb(m: &RunManifest) -> Result<Report, CliError> {
    let mode = m.arg_at(0, "probe mode (betti|scan)")?;
    let cloud = PointCloud::from_jsonl(&m.read("cloud")?)?;
    match mode {
        "betti" => {
            let eps = match m.params.get("eps").map(String::as_str) {
                Some("auto") | None => {
                    let g = max_circular_gap(&cloud)?;
                    graphoid_core::rational::from_f64_dyadic(2.0 * g, 40)
                }
                Some(s) => rat(s)?,
            };
            let s = rips_betti(&cloud, &eps)?;
            let text = format!(
                "ε = {}: b0 = {}, b1 = {} ({} vertices, {} edges, {} triangles)",
                fmt_rational(&s.eps),
                s.betti0,
                s.betti1,
                s.vertices,
                s.edges,
                s.triangles
            );
            Ok(Report::ok(to_json(&s), text))
        }
        "scan" => {
            let grid = parse_grid(&m.param_or("grid", DEFAULT_GRID))?;
            let r = stable_range(&cloud, &grid)?;
            let text = match &r.longest {
                Some(b) => format!(
                    "longest stable run: (b0, b1) = ({}, {}) for ε ∈ [{}, {}] over {} grid steps",
                    b.betti0,
                    b.betti1,
                    fmt_rational(&b.lo),
                    fmt_rational(&b.hi),
                    b.steps
                ),
                None => "empty grid".into(),
            };
            Ok(Report::ok(to_json(&r), text))
        }
        other => Err(CliError::bad(format!("unknown probe mode `{other}`"))),
    }
}

/// The full pipeline for x⁴ − 5x² + 2.
fn demo_remark_as() -> Result<Report, CliError> {
    let f = graphoid_core::UPoly::from_ints(&[2, 0, -5, 0, 1]);
    let irr = irreducible_over_q(&f)?;
    let Irreducibility::Irreducible(cert) = &irr else {
        return Err(CliError::internal("x^4 - 5*x^2 + 2 was not certified irreducible"));
    };
    let width = q(1) / q(10_000_000_000);
    let roots: Vec<AlgebraicNumber> = real_roots_of(&f)?.iter().map(|r| r.refined(&width)).collect();
    let report = subfields_distinct(&f)?;
    let mut text = format!("f = {}\n", f.fmt_var("x"));
    text.push_str(&format!("irreducible over ℚ: yes ({})\n", json!(cert)));
    text.push_str(&format!(
        "real roots: {} ({})\n",
        roots.len(),
        roots.iter().map(|r| format!("{:.10}", r.approx())).collect::<Vec<_>>().join(", ")
    ));
    text.push_str(&format!("ℝ-places of ℚ(α): {}\n", roots.len()));
    let sum_degrees: Vec<usize> = report.pairs.iter().filter(|p| !p.opposite).filter_map(|p| p.sum_degree).collect();
    text.push_str(&format!("deg min_poly(α+β) over non-opposite pairs: {sum_degrees:?}\n"));
    text.push_str(&report.text);
    text.push('\n');
    let result = json!({
        "poly": f.fmt_var("x"),
        "irreducibility": to_json(&irr),
        "roots": roots.iter().map(root_json).collect::<Vec<_>>(),
        "places": roots.len(),
        "subfields": to_json(&report),
    });
    Ok(Report::ok(result, text))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radii_and_grids() {
        assert_eq!(parse_radii("1e-1..1e-3").unwrap(), vec![q(1) / q(10), q(1) / q(100), q(1) / q(1000)]);
        assert_eq!(parse_radii("1/2,1/4").unwrap().len(), 2);
        assert!(parse_radii("1e-1..3e-3").is_err());
        assert_eq!(parse_grid("0.1..0.5:5").unwrap().len(), 5);
        assert_eq!(parse_grid("1/10,1/5").unwrap()[1], q(1) / q(5));
    }

    #[test]
    fn eval_infinity() {
        let m = RunManifest::new("eval").arg("x/y").arg("1").arg("0");
        assert_eq!(execute(&m).unwrap().text, "inf");
        let m = RunManifest::new("eval").arg("x/y").arg("0").arg("0");
        assert_eq!(execute(&m).unwrap().text, "undefined");
    }

    #[test]
    fn errors_carry_exit_codes() {
        let e = execute(&RunManifest::new("eval").arg("x/(")).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_json().contains("bad_input"));
        assert_eq!(execute(&RunManifest::new("nope")).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn manifest_embeds_seed_but_not_destination() {
        let mut m = RunManifest::new("parse").arg("x/y");
        m.out = Some("somewhere.json".into());
        let v: Value = serde_json::from_slice(&execute(&m).unwrap().artifact).unwrap();
        assert_eq!(v["manifest"]["seed"], json!(0));
        assert!(v["manifest"].get("out").is_none());
        assert_eq!(v["tool"], json!(TOOL));
    }
}
