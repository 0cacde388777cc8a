//! The subcommands, as functions from document text to output text and an
//! exit code.

use toric_monoid::algebra::{monoid_algebra, scheme_atlas};
use toric_monoid::classify::{classify, classify_presented, Verdict};
use toric_monoid::fanspace::{from_classic_fan, polytope_face_space, spec, MonoidedSpace};
use toric_monoid::monoid::AffineMonoid;
use toric_monoid::polyhedral::{hilbert_basis, lattice_point_generators};

use crate::document::{parse, Document, InputError};
use crate::emit;

/// Exit code for a negative verdict.
pub const NEGATIVE: i32 = 1;
/// Exit code for unreadable or invalid input.
pub const INPUT_ERROR: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Spec { degree: usize },
    Convert,
    Hilbert,
    Saturate { degree: usize },
    Algebra { degree: usize, base: String },
    Atlas { degree: usize, base: String },
    Classify { degree: usize },
    Dot,
    Report { degree: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn json(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn wrong(cmd: &str, doc: &Document, expected: &str) -> InputError {
    InputError(format!("`{cmd}` expects {expected}, got a `{}` document", doc.kind()))
}

/// The affine monoid of a `monoid` or `presented_monoid` document.
fn affine(cmd: &str, doc: Document, degree: usize) -> Result<AffineMonoid, InputError> {
    match doc {
        Document::Monoid(s) => Ok(s),
        Document::PresentedMonoid(p) => p
            .affinize(degree)
            .map(|a| a.monoid)
            .map_err(|e| InputError(format!("presented monoid has no affine model up to degree {degree}: {e}"))),
        other => Err(wrong(cmd, &other, "a monoid")),
    }
}

/// The space of a document that names one: a space, a classic fan or
/// polytope (converted), or a monoid (its spectrum).
fn as_space(cmd: &str, doc: Document) -> Result<MonoidedSpace, InputError> {
    match doc {
        Document::Space(x) => Ok(x),
        Document::ClassicFan(f) => Ok(from_classic_fan(&f)),
        Document::Polytope(p) => polytope_face_space(&p).map(|f| f.fan_space).map_err(|e| InputError(e.to_string())),
        Document::Monoid(s) => Ok(spec(&s)),
        other => Err(wrong(cmd, &other, "a space, classic fan, polytope or monoid")),
    }
}

fn verdict_for(doc: Document, degree: usize) -> Result<(Option<MonoidedSpace>, Verdict), InputError> {
    match doc {
        Document::PresentedMonoid(p) => {
            let space = p.affinize(degree).ok().map(|a| spec(&a.monoid));
            Ok((space, classify_presented(&p, degree)))
        }
        other => {
            let x = as_space("classify", other)?;
            let v = classify(&x);
            Ok((Some(x), v))
        }
    }
}

pub fn run(cmd: &Command, input: &str, sorted: bool) -> Result<Output, InputError> {
    let doc = parse(input)?;
    match cmd {
        Command::Spec { degree } => {
            let s = affine("spec", doc, *degree)?;
            Ok(Output::ok(json(&emit::space(&spec(&s), sorted))))
        }
        Command::Convert => match doc {
            Document::ClassicFan(_) | Document::Polytope(_) => {
                Ok(Output::ok(json(&emit::space(&as_space("convert", doc)?, sorted))))
            }
            other => Err(wrong("convert", &other, "a classic fan or polytope")),
        },
        Command::Hilbert => match doc {
            Document::Cone(c) => {
                let pointed = c.is_strongly_convex();
                let gens = if pointed {
                    hilbert_basis(&c).map_err(|e| InputError(e.to_string()))?
                } else {
                    lattice_point_generators(&c)
                };
                let v = serde_json::json!({
                    "kind": "hilbert_basis",
                    "ambient_rank": c.ambient(),
                    "pointed": pointed,
                    "generators": emit::vectors(&gens),
                });
                Ok(Output::ok(json(&v)))
            }
            other => Err(wrong("hilbert", &other, "a cone")),
        },
        Command::Saturate { degree } => {
            let s = affine("saturate", doc, *degree)?;
            Ok(Output::ok(json(&emit::monoid(&s.saturation()))))
        }
        Command::Algebra { degree, base } => match doc {
            Document::Monoid(_) | Document::PresentedMonoid(_) => {
                let s = affine("algebra", doc, *degree)?;
                let pres = monoid_algebra(&s, base, *degree).map_err(|e| InputError(e.to_string()))?;
                Ok(Output::ok(json(&emit::presentation(&pres))))
            }
            other => {
                let x = as_space("algebra", other)?;
                let mut charts = Vec::new();
                for p in x.maximal_points() {
                    let pres = monoid_algebra(x.stalk(p), base, *degree).map_err(|e| InputError(e.to_string()))?;
                    let mut body = emit::presentation_body(&pres);
                    body.insert("point".into(), x.name(p).into());
                    charts.push(serde_json::Value::Object(body));
                }
                if sorted {
                    charts.sort_by(|a, b| a["point"].as_str().cmp(&b["point"].as_str()));
                }
                Ok(Output::ok(json(&serde_json::json!({ "kind": "chart_presentations", "charts": charts }))))
            }
        },
        Command::Atlas { degree, base } => {
            let x = as_space("atlas", doc)?;
            match scheme_atlas(&x, base, *degree) {
                Ok(a) => Ok(Output::ok(json(&emit::atlas(&x, &a)))),
                Err(e) => Ok(Output { text: format!("no atlas: {e}\n"), code: NEGATIVE }),
            }
        }
        Command::Classify { degree } => {
            let (x, v) = verdict_for(doc, *degree)?;
            let code = if v.classic_toric { 0 } else { NEGATIVE };
            Ok(Output { text: json(&emit::verdict(x.as_ref(), &v, sorted)), code })
        }
        Command::Report { degree } => {
            let (x, v) = verdict_for(doc, *degree)?;
            let code = if v.classic_toric { 0 } else { NEGATIVE };
            Ok(Output { text: emit::report(x.as_ref(), &v), code })
        }
        Command::Dot => {
            let x = as_space("dot", doc)?;
            Ok(Output::ok(emit::dot(&x, sorted)))
        }
    }
}
