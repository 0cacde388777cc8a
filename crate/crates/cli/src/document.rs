//! Parsing of input documents.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{Map, Value};
use thiserror::Error;
use toric_monoid::fanspace::MonoidedSpace;
use toric_monoid::lattice::{IntMatrix, IntVector};
use toric_monoid::monoid::{AffineMonoid, PresentedMonoid};
use toric_monoid::polyhedral::{ClassicFan, Cone, Polytope};
use toric_monoid::BigInt;

#[derive(Debug, Error)]
#[error("{0}")]
pub struct InputError(pub String);

impl InputError {
    fn at(path: &str, msg: impl std::fmt::Display) -> Self {
        InputError(format!("{path}: {msg}"))
    }
}

pub enum Document {
    Monoid(AffineMonoid),
    PresentedMonoid(PresentedMonoid),
    Cone(Cone),
    ClassicFan(ClassicFan),
    Polytope(Polytope),
    Space(MonoidedSpace),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Monoid(_) => "monoid",
            Document::PresentedMonoid(_) => "presented_monoid",
            Document::Cone(_) => "cone",
            Document::ClassicFan(_) => "classic_fan",
            Document::Polytope(_) => "polytope",
            Document::Space(_) => "monoided_space",
        }
    }
}

pub fn parse(text: &str) -> Result<Document, InputError> {
    let value: Value = serde_json::from_str(text).map_err(|e| InputError(format!("invalid JSON: {e}")))?;
    let top = object(&value, "$")?;
    let kind = top.get("kind").ok_or_else(|| InputError::at("$", "missing field `kind`"))?;
    let kind = kind.as_str().ok_or_else(|| InputError::at("$.kind", "expected a string"))?;
    match kind {
        "monoid" => monoid(top, "$", true).map(Document::Monoid),
        "presented_monoid" => presented(top).map(Document::PresentedMonoid),
        "cone" => cone(top).map(Document::Cone),
        "classic_fan" => classic_fan(top).map(Document::ClassicFan),
        "polytope" => polytope(top).map(Document::Polytope),
        "monoided_space" => space(top).map(Document::Space),
        other => Err(InputError::at("$.kind", format!("unknown kind `{other}`"))),
    }
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, InputError> {
    v.as_object().ok_or_else(|| InputError::at(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, InputError> {
    v.as_array().ok_or_else(|| InputError::at(path, "expected an array"))
}

/// Rejects fields outside `allowed` and returns the required ones.
fn fields<'a>(
    obj: &'a Map<String, Value>,
    path: &str,
    required: &[&str],
    optional: &[&str],
) -> Result<Vec<&'a Value>, InputError> {
    for key in obj.keys() {
        if !required.contains(&key.as_str()) && !optional.contains(&key.as_str()) {
            return Err(InputError::at(path, format!("unknown field `{key}`")));
        }
    }
    required.iter().map(|&k| obj.get(k).ok_or_else(|| InputError::at(path, format!("missing field `{k}`")))).collect()
}

fn integer(v: &Value, path: &str) -> Result<BigInt, InputError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(InputError::at(path, "expected an integer")),
    };
    text.parse::<BigInt>().map_err(|_| InputError::at(path, format!("`{text}` is not an integer")))
}

fn size(v: &Value, path: &str) -> Result<usize, InputError> {
    let n = integer(v, path)?;
    usize::try_from(n).map_err(|_| InputError::at(path, "expected a nonnegative size"))
}

fn vector(v: &Value, len: usize, path: &str) -> Result<IntVector, InputError> {
    let items = array(v, path)?;
    if items.len() != len {
        return Err(InputError::at(path, format!("expected {len} entries, found {}", items.len())));
    }
    items.iter().enumerate().map(|(i, x)| integer(x, &format!("{path}[{i}]"))).collect()
}

fn vectors(v: &Value, len: usize, path: &str) -> Result<Vec<IntVector>, InputError> {
    array(v, path)?.iter().enumerate().map(|(i, x)| vector(x, len, &format!("{path}[{i}]"))).collect()
}

fn matrix(v: &Value, rows: usize, cols: usize, path: &str) -> Result<IntMatrix, InputError> {
    let items = array(v, path)?;
    if items.len() != rows {
        return Err(InputError::at(path, format!("expected {rows} rows, found {}", items.len())));
    }
    let rs = items
        .iter()
        .enumerate()
        .map(|(i, r)| vector(r, cols, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntMatrix::from_rows(&rs, cols))
}

fn monoid(obj: &Map<String, Value>, path: &str, top: bool) -> Result<AffineMonoid, InputError> {
    let optional: &[&str] = if top { &[] } else { &["kind"] };
    let required: &[&str] = if top { &["kind", "ambient_rank", "generators"] } else { &["ambient_rank", "generators"] };
    let f = fields(obj, path, required, optional)?;
    if !top {
        if let Some(k) = obj.get("kind") {
            if k.as_str() != Some("monoid") {
                return Err(InputError::at(path, "stalk must be a monoid"));
            }
        }
    }
    let (rank_v, gens_v) = if top { (f[1], f[2]) } else { (f[0], f[1]) };
    let d = size(rank_v, &format!("{path}.ambient_rank"))?;
    let gens = vectors(gens_v, d, &format!("{path}.generators"))?;
    Ok(AffineMonoid::new(d, gens))
}

fn presented(obj: &Map<String, Value>) -> Result<PresentedMonoid, InputError> {
    let f = fields(obj, "$", &["kind", "generators", "relations"], &[])?;
    let n = size(f[1], "$.generators")?;
    let mut rels = Vec::new();
    for (i, r) in array(f[2], "$.relations")?.iter().enumerate() {
        let p = format!("$.relations[{i}]");
        let pair = array(r, &p)?;
        if pair.len() != 2 {
            return Err(InputError::at(&p, "expected a pair [left, right]"));
        }
        rels.push((vector(&pair[0], n, &format!("{p}[0]"))?, vector(&pair[1], n, &format!("{p}[1]"))?));
    }
    PresentedMonoid::new(n, rels).map_err(|e| InputError::at("$.relations", e))
}

fn cone(obj: &Map<String, Value>) -> Result<Cone, InputError> {
    let f = fields(obj, "$", &["kind", "ambient_rank", "rays"], &[])?;
    let d = size(f[1], "$.ambient_rank")?;
    Ok(Cone::new(d, vectors(f[2], d, "$.rays")?))
}

fn classic_fan(obj: &Map<String, Value>) -> Result<ClassicFan, InputError> {
    let f = fields(obj, "$", &["kind", "lattice_rank", "cones"], &[])?;
    let d = size(f[1], "$.lattice_rank")?;
    let mut cones = Vec::new();
    for (i, c) in array(f[2], "$.cones")?.iter().enumerate() {
        let p = format!("$.cones[{i}]");
        let cf = fields(object(c, &p)?, &p, &["rays"], &[])?;
        cones.push(Cone::new(d, vectors(cf[0], d, &format!("{p}.rays"))?));
    }
    ClassicFan::from_maximal(d, cones).map_err(|e| InputError::at("$.cones", e))
}

fn polytope(obj: &Map<String, Value>) -> Result<Polytope, InputError> {
    let f = fields(obj, "$", &["kind", "ambient_rank", "vertices"], &[])?;
    let d = size(f[1], "$.ambient_rank")?;
    Polytope::new(d, vectors(f[2], d, "$.vertices")?).map_err(|e| InputError::at("$.vertices", e))
}

fn space(obj: &Map<String, Value>) -> Result<MonoidedSpace, InputError> {
    let f = fields(obj, "$", &["kind", "points", "order", "stalks"], &["gen_maps"])?;
    let mut names = Vec::new();
    for (i, n) in array(f[1], "$.points")?.iter().enumerate() {
        let name = n.as_str().ok_or_else(|| InputError::at(&format!("$.points[{i}]"), "expected a string"))?;
        if name.contains("->") {
            return Err(InputError::at(&format!("$.points[{i}]"), "point names may not contain `->`"));
        }
        names.push(name.to_string());
    }
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    if index.len() != names.len() {
        return Err(InputError::at("$.points", "duplicate point name"));
    }
    let lookup = |name: &Value, path: &str| -> Result<usize, InputError> {
        let s = name.as_str().ok_or_else(|| InputError::at(path, "expected a point name"))?;
        index.get(s).copied().ok_or_else(|| InputError::at(path, format!("unknown point `{s}`")))
    };
    let mut order = Vec::new();
    for (i, pair) in array(f[2], "$.order")?.iter().enumerate() {
        let p = format!("$.order[{i}]");
        let pq = array(pair, &p)?;
        if pq.len() != 2 {
            return Err(InputError::at(&p, "expected a pair [smaller, larger]"));
        }
        order.push((lookup(&pq[0], &p)?, lookup(&pq[1], &p)?));
    }
    let stalk_obj = object(f[3], "$.stalks")?;
    let mut stalks = Vec::with_capacity(names.len());
    for name in &names {
        let p = format!("$.stalks.{name}");
        let s = stalk_obj.get(name).ok_or_else(|| InputError::at("$.stalks", format!("missing stalk for `{name}`")))?;
        stalks.push(monoid(object(s, &p)?, &p, false)?);
    }
    if let Some(extra) = stalk_obj.keys().find(|k| !index.contains_key(k.as_str())) {
        return Err(InputError::at("$.stalks", format!("stalk for unknown point `{extra}`")));
    }
    let mut maps = BTreeMap::new();
    if let Some(gm) = obj.get("gen_maps") {
        for (key, m) in object(gm, "$.gen_maps")? {
            let p = format!("$.gen_maps.{key}");
            let (qn, pn) = key.split_once("->").ok_or_else(|| InputError::at(&p, "keys are `q->p`"))?;
            let q = *index.get(qn).ok_or_else(|| InputError::at(&p, format!("unknown point `{qn}`")))?;
            let pt = *index.get(pn).ok_or_else(|| InputError::at(&p, format!("unknown point `{pn}`")))?;
            maps.insert((q, pt), matrix(m, stalks[pt].ambient(), stalks[q].ambient(), &p)?);
        }
    }
    let listed: BTreeSet<(usize, usize)> = order.iter().copied().collect();
    for &(p, q) in &listed {
        if !maps.contains_key(&(q, p)) && stalks[p].ambient() == stalks[q].ambient() {
            maps.insert((q, p), IntMatrix::identity(stalks[p].ambient()));
        }
    }
    MonoidedSpace::new(names, &order, stalks, maps).map_err(|e| InputError::at("$", e))
}
