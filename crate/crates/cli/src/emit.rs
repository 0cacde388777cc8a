//! Output documents. Integers beyond 2^53 in absolute value are written as
//! strings; object keys are sorted.

use serde_json::{json, Map, Value};
use toric_monoid::algebra::{AlgebraPresentation, Chart, OverlapKind, SchemeAtlas};
use toric_monoid::classify::{SeparationReason, Verdict};
use toric_monoid::fanspace::MonoidedSpace;
use toric_monoid::lattice::{IntMatrix, IntVector};
use toric_monoid::monoid::AffineMonoid;
use toric_monoid::polyhedral::ClassicFan;
use toric_monoid::BigInt;

const SAFE: i64 = 1 << 53;

pub fn integer(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) if (-SAFE..=SAFE).contains(&v) => Value::from(v),
        _ => Value::String(x.to_string()),
    }
}

pub fn vector(v: &IntVector) -> Value {
    Value::Array(v.iter().map(integer).collect())
}

pub fn vectors(vs: &[IntVector]) -> Value {
    Value::Array(vs.iter().map(vector).collect())
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array(m.row_vectors().iter().map(vector).collect())
}

fn stalk(s: &AffineMonoid) -> Value {
    json!({ "ambient_rank": s.ambient(), "generators": vectors(s.generators()) })
}

pub fn monoid(s: &AffineMonoid) -> Value {
    json!({ "kind": "monoid", "ambient_rank": s.ambient(), "generators": vectors(s.generators()) })
}

/// Point indices in output order: as stored, or by name when `sorted`.
pub fn point_order(x: &MonoidedSpace, sorted: bool) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    if sorted {
        idx.sort_by(|&a, &b| x.name(a).cmp(x.name(b)));
    }
    idx
}

fn covers(x: &MonoidedSpace, sorted: bool) -> Vec<(usize, usize)> {
    let mut c = x.covers();
    if sorted {
        c.sort_by(|a, b| (x.name(a.0), x.name(a.1)).cmp(&(x.name(b.0), x.name(b.1))));
    }
    c
}

pub fn space(x: &MonoidedSpace, sorted: bool) -> Value {
    let points: Vec<Value> = point_order(x, sorted).iter().map(|&p| Value::from(x.name(p))).collect();
    let cs = covers(x, sorted);
    let order: Vec<Value> = cs.iter().map(|&(p, q)| json!([x.name(p), x.name(q)])).collect();
    let stalks: Map<String, Value> = (0..x.len()).map(|p| (x.name(p).to_string(), stalk(x.stalk(p)))).collect();
    let maps: Map<String, Value> =
        cs.iter().map(|&(p, q)| (format!("{}->{}", x.name(q), x.name(p)), matrix(&x.gen_map(q, p)))).collect();
    json!({ "kind": "monoided_space", "points": points, "order": order, "stalks": stalks, "gen_maps": maps })
}

/// Maximal cones only, as the input format expects.
pub fn classic_fan(f: &ClassicFan) -> Value {
    let cones: Vec<Value> =
        f.maximal_cones().iter().map(|&i| json!({ "rays": vectors(f.cones()[i].rays()) })).collect();
    json!({ "kind": "classic_fan", "lattice_rank": f.lattice_rank(), "cones": cones })
}

pub fn presentation_body(p: &AlgebraPresentation) -> Map<String, Value> {
    let vars: Vec<Value> = p
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| json!({ "name": format!("x{i}"), "exponent": vector(g) }))
        .collect();
    let rels: Vec<Value> = p.relations.iter().map(|(u, v)| json!([vector(u), vector(v)])).collect();
    let mut m = Map::new();
    m.insert("base_ring".into(), Value::from(p.base_ring.clone()));
    m.insert("variables".into(), Value::Array(vars));
    m.insert("relations".into(), Value::Array(rels));
    m.insert("completeness_degree".into(), Value::from(p.completeness_degree));
    m.insert("next_degree_connected".into(), Value::from(p.next_degree_connected));
    m.insert("text".into(), Value::from(p.to_string()));
    m
}

pub fn presentation(p: &AlgebraPresentation) -> Value {
    let mut m = presentation_body(p);
    m.insert("kind".into(), Value::from("algebra_presentation"));
    Value::Object(m)
}

pub fn chart(c: &Chart) -> Value {
    let mut m = presentation_body(&c.presentation);
    m.insert("point".into(), Value::from(c.name.clone()));
    Value::Object(m)
}

pub fn atlas(x: &MonoidedSpace, a: &SchemeAtlas) -> Value {
    let charts: Vec<Value> = a.charts.iter().map(chart).collect();
    let overlaps: Vec<Value> = a
        .overlaps
        .iter()
        .map(|o| {
            let (from, to) = (&a.charts[o.from].name, &a.charts[o.to].name);
            match &o.kind {
                OverlapKind::Affine { point, localizing, transition } => {
                    let t: Vec<Value> = transition
                        .iter()
                        .enumerate()
                        .map(|(j, m)| {
                            json!({ "variable": format!("x{j}"), "exponents": vector(&m.exponents), "inverse_power": integer(&m.inverse_power) })
                        })
                        .collect();
                    json!({ "from": from, "to": to, "affine": true, "meet": x.name(*point), "localizing": vector(localizing), "transition": t })
                }
                OverlapKind::NonAffine { maximal } => {
                    let names: Vec<&str> = maximal.iter().map(|&p| x.name(p)).collect();
                    json!({ "from": from, "to": to, "affine": false, "maximal": names })
                }
            }
        })
        .collect();
    json!({
        "kind": "scheme_atlas",
        "base_ring": a.base_ring,
        "generic_point": x.name(a.generic_point),
        "charts": charts,
        "overlaps": overlaps,
    })
}

pub fn summary(x: Option<&MonoidedSpace>, v: &Verdict) -> String {
    if v.classic_toric {
        return "classic toric".to_string();
    }
    let name = |p: usize| x.map_or_else(|| format!("#{p}"), |x| x.name(p).to_string());
    let mut why = Vec::new();
    if !v.is_fan {
        why.push("not a fan".to_string());
    }
    if v.is_fan && !v.irreducible {
        why.push("not irreducible".to_string());
    }
    if !v.integral && v.irreducible {
        why.push("not integral".to_string());
    }
    if v.is_fan && !v.normal {
        let pts: Vec<String> = v.non_saturated.iter().map(|w| name(w.point)).collect();
        why.push(format!("not normal at {}", pts.join(", ")));
    }
    if v.is_fan && !v.separated {
        let pairs: Vec<String> =
            v.separation_failures.iter().map(|f| format!("charts {} and {}", name(f.first), name(f.second))).collect();
        why.push(format!("not separated: {}", pairs.join("; ")));
    }
    if why.is_empty() {
        why.push(v.notes.last().cloned().unwrap_or_default());
    }
    format!("not classic toric ({})", why.join("; "))
}

pub fn verdict(x: Option<&MonoidedSpace>, v: &Verdict, sorted: bool) -> Value {
    let name = |p: usize| x.map_or_else(|| format!("#{p}"), |x| x.name(p).to_string());
    let mut non_saturated: Vec<(String, Value)> =
        v.non_saturated.iter().map(|w| (name(w.point), vector(&w.element))).collect();
    let mut separation: Vec<(String, String, Value)> = v
        .separation_failures
        .iter()
        .map(|f| {
            let detail = match &f.reason {
                SeparationReason::SeveralMaximal(ps) => {
                    json!({ "reason": f.reason.to_string(), "maximal": ps.iter().map(|&p| name(p)).collect::<Vec<_>>() })
                }
                SeparationReason::NotGenerated { meet } => json!({ "reason": f.reason.to_string(), "meet": name(*meet) }),
            };
            (name(f.first), name(f.second), detail)
        })
        .collect();
    if sorted {
        non_saturated.sort_by(|a, b| a.0.cmp(&b.0));
        separation.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    }
    let non_saturated: Vec<Value> =
        non_saturated.into_iter().map(|(p, e)| json!({ "point": p, "element": e })).collect();
    let separation: Vec<Value> = separation
        .into_iter()
        .map(|(a, b, mut d)| {
            d["first"] = Value::from(a);
            d["second"] = Value::from(b);
            d
        })
        .collect();
    json!({
        "kind": "verdict",
        "summary": summary(x, v),
        "classic_toric": v.classic_toric,
        "is_fan": v.is_fan,
        "fan_failure": v.fan_failure.as_ref().map(|f| format!("{}: {}", name(f.point), f.reason)),
        "irreducible": v.irreducible,
        "generic_point": v.generic_point.map(name),
        "finite_type": v.finite_type,
        "integral": v.integral,
        "normal": v.normal,
        "non_saturated": non_saturated,
        "separated": v.separated,
        "separation_failures": separation,
        "realized": v.realized.as_ref().map(classic_fan),
        "notes": v.notes,
    })
}

fn minimal_generators(s: &AffineMonoid) -> Vec<IntVector> {
    let mut out: Vec<IntVector> = Vec::new();
    for b in s.unit_lattice().basis() {
        out.push(b.clone());
        out.push(-b);
    }
    out.extend(s.irreducibles());
    out.sort();
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", escape(s))
}

/// The specialization poset as a DOT digraph, edges along covering pairs
/// from the generization to the specialization.
pub fn dot(x: &MonoidedSpace, sorted: bool) -> String {
    let mut out = String::from("digraph space {\n  rankdir=BT;\n  node [shape=box];\n");
    for p in point_order(x, sorted) {
        let gens: Vec<String> = minimal_generators(x.stalk(p)).iter().map(|g| g.to_string()).collect();
        let label = format!("\"{}\\n<{}>\"", escape(x.name(p)), escape(&gens.join(", ")));
        out.push_str(&format!("  {} [label={label}];\n", quote(x.name(p))));
    }
    for (p, q) in covers(x, sorted) {
        out.push_str(&format!("  {} -> {};\n", quote(x.name(p)), quote(x.name(q))));
    }
    out.push_str("}\n");
    out
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// A markdown rendering of a verdict.
pub fn report(x: Option<&MonoidedSpace>, v: &Verdict) -> String {
    let name = |p: usize| x.map_or_else(|| format!("#{p}"), |x| x.name(p).to_string());
    let mut out = String::from("# Classification report\n\n");
    if let Some(x) = x {
        out.push_str(&format!("Space with {} points, {} maximal.\n\n", x.len(), x.maximal_points().len()));
    }
    out.push_str("| check | result |\n|---|---|\n");
    for (label, ok) in [
        ("fan", v.is_fan),
        ("irreducible", v.irreducible),
        ("finite type", v.finite_type),
        ("integral", v.integral),
        ("normal", v.normal),
        ("separated", v.separated),
        ("classic toric", v.classic_toric),
    ] {
        out.push_str(&format!("| {label} | {} |\n", yes(ok)));
    }
    out.push_str(&format!("\n**Verdict:** {}\n", summary(x, v)));
    if let Some(f) = &v.fan_failure {
        out.push_str(&format!("\n## Fan check\n\n- at `{}`: {}\n", name(f.point), f.reason));
    }
    if !v.non_saturated.is_empty() {
        out.push_str("\n## Non-saturated stalks\n\n");
        for w in &v.non_saturated {
            out.push_str(&format!("- `{}`: missing {}\n", name(w.point), w.element));
        }
    }
    if !v.separation_failures.is_empty() {
        out.push_str("\n## Separation failures\n\n");
        for f in &v.separation_failures {
            out.push_str(&format!("- charts `{}` and `{}`: {}\n", name(f.first), name(f.second), f.reason));
        }
    }
    if let Some(fan) = &v.realized {
        out.push_str(&format!("\n## Realized fan\n\nLattice rank {}, maximal cones:\n\n", fan.lattice_rank()));
        for i in fan.maximal_cones() {
            out.push_str(&format!("- {}\n", fan.cones()[i]));
        }
    }
    if !v.notes.is_empty() {
        out.push_str("\n## Notes\n\n");
        for n in &v.notes {
            out.push_str(&format!("- {n}\n"));
        }
    }
    out
}
