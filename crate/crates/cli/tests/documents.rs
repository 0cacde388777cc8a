use std::path::PathBuf;
use std::process::Command as Process;

use proptest::prelude::*;
use serde_json::Value;
use toric_monoid::corpus;
use toric_monoid::fanspace::{from_classic_fan, iso_check, polytope_face_space, spec, MonoidedSpace};
use toric_monoid::monoid::AffineMonoid;
use toric_monoid::IntVector;
use toric_monoid_cli::{emit, parse, run, Command, Document};

fn corpus_files() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
}

fn reparse_space(text: &str) -> MonoidedSpace {
    match parse(text).expect("emitted document parses") {
        Document::Space(x) => x,
        other => panic!("expected a space, got {}", other.kind()),
    }
}

fn in_memory(doc: Document) -> Option<MonoidedSpace> {
    match doc {
        Document::Monoid(s) => Some(spec(&s)),
        Document::ClassicFan(f) => Some(from_classic_fan(&f)),
        Document::Polytope(p) => Some(polytope_face_space(&p).unwrap().fan_space),
        Document::Space(x) => Some(x),
        _ => None,
    }
}

#[test]
fn emitted_spaces_round_trip() {
    for f in corpus_files() {
        let text = std::fs::read_to_string(&f).unwrap();
        let Some(x) = in_memory(parse(&text).unwrap()) else { continue };
        for sorted in [false, true] {
            let y = reparse_space(&emit::space(&x, sorted).to_string());
            assert!(iso_check(&x, &y), "{}", f.display());
        }
        let cmd = match parse(&text).unwrap() {
            Document::Monoid(_) => Command::Spec { degree: 4 },
            Document::ClassicFan(_) | Document::Polytope(_) => Command::Convert,
            _ => continue,
        };
        let out = run(&cmd, &text, true).unwrap();
        assert_eq!(out.code, 0);
        assert!(iso_check(&x, &reparse_space(&out.text)), "{}", f.display());
    }
}

#[test]
fn glued_spaces_round_trip() {
    for x in [
        corpus::doubled_line(),
        corpus::glued_projective_line(),
        corpus::cuspidal_projective_line(),
        corpus::two_lines_apart(),
    ] {
        assert!(iso_check(&x, &reparse_space(&emit::space(&x, false).to_string())));
    }
}

fn plane_monoid() -> impl Strategy<Value = AffineMonoid> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, 2).prop_map(|v| IntVector::from_i64s(&v)), 1..=4)
        .prop_map(|g| AffineMonoid::new(2, g))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_spectra_round_trip(s in plane_monoid(), sorted in any::<bool>()) {
        let x = spec(&s);
        prop_assert!(iso_check(&x, &reparse_space(&emit::space(&x, sorted).to_string())));
    }
}

#[test]
fn spec_of_the_naturals_has_two_points() {
    let out = run(&Command::Spec { degree: 4 }, r#"{"kind": "monoid", "ambient_rank": 1, "generators": [[1]]}"#, false)
        .unwrap();
    assert_eq!(reparse_space(&out.text).len(), 2);
}

#[test]
fn projective_plane_classifies_as_classic() {
    let text =
        std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus/fan_projective_plane.json"))
            .unwrap();
    let out = run(&Command::Classify { degree: 4 }, &text, false).unwrap();
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.text).unwrap();
    assert_eq!(v["summary"], "classic toric");
}

#[test]
fn large_integers_are_strings() {
    let big = "36893488147419103232"; // 2^65
    let doc = format!(r#"{{"kind": "monoid", "ambient_rank": 1, "generators": [["{big}"]]}}"#);
    let out = run(&Command::Saturate { degree: 4 }, &doc, false).unwrap();
    let v: Value = serde_json::from_str(&out.text).unwrap();
    // already saturated in its own group
    assert_eq!(v["generators"], serde_json::json!([[big]]));
    let out = run(&Command::Spec { degree: 4 }, &doc, false).unwrap();
    assert!(out.text.contains(&format!("\"{big}\"")), "{}", out.text);
    let x = reparse_space(&out.text);
    assert!(x.stalks().iter().any(|s| s.generators().iter().any(|g| g[0].to_string() == big)));
}

#[test]
fn bad_documents_are_input_errors() {
    let bad = [
        "not json",
        r#"{"kind": "monoid", "ambient_rank": 1, "generators": [[1]], "extra": 0}"#,
        r#"{"kind": "lattice"}"#,
        r#"{"kind": "monoid", "ambient_rank": 2, "generators": [[1]]}"#,
        r#"{"kind": "monoid", "ambient_rank": 1, "generators": [[1.5]]}"#,
        r#"{"kind": "classic_fan", "lattice_rank": 1, "cones": [{"rays": [[1], [-1]]}]}"#,
    ];
    for text in bad {
        assert!(run(&Command::Spec { degree: 4 }, text, false).is_err(), "{text}");
    }
    // the right document for the wrong command
    assert!(run(&Command::Hilbert, r#"{"kind": "monoid", "ambient_rank": 1, "generators": [[1]]}"#, false).is_err());
}

fn binary(args: &[&str], stdin: Option<&str>) -> (Option<i32>, String) {
    use std::io::Write;
    let mut child = Process::new(env!("CARGO_BIN_EXE_toricmon"))
        .args(args)
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::null())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn exit_codes() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let path = |name: &str| dir.join(name).to_string_lossy().into_owned();
    assert_eq!(binary(&["classify", &path("fan_projective_plane.json")], None).0, Some(0));
    assert_eq!(binary(&["classify", &path("space_doubled_line.json")], None).0, Some(1));
    assert_eq!(binary(&["report", &path("monoid_cusp.json")], None).0, Some(1));
    assert_eq!(binary(&["hilbert", &path("fan_projective_plane.json")], None).0, Some(2));
    assert_eq!(binary(&["spec"], Some("{}")).0, Some(2));
    assert_eq!(binary(&["spec", "/nonexistent/file.json"], None).0, Some(2));
    let (code, text) = binary(&["spec", "-"], Some(r#"{"kind": "monoid", "ambient_rank": 1, "generators": [[1]]}"#));
    assert_eq!(code, Some(0));
    assert_eq!(reparse_space(&text).len(), 2);
}

#[test]
fn seedless_output_is_sorted() {
    let text = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus/fan_blowup_plane.json"))
        .unwrap();
    let out = run(&Command::Convert, &text, true).unwrap();
    let v: Value = serde_json::from_str(&out.text).unwrap();
    let points: Vec<&str> = v["points"].as_array().unwrap().iter().map(|p| p.as_str().unwrap()).collect();
    let mut sorted = points.clone();
    sorted.sort();
    assert_eq!(points, sorted);
    let order: Vec<(String, String)> = v["order"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e[0].as_str().unwrap().to_string(), e[1].as_str().unwrap().to_string()))
        .collect();
    let mut sorted = order.clone();
    sorted.sort();
    assert_eq!(order, sorted);
}

#[test]
fn dot_draws_covering_edges() {
    let text =
        std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus/space_doubled_line.json"))
            .unwrap();
    let out = run(&Command::Dot, &text, true).unwrap();
    assert!(out.text.starts_with("digraph space {"));
    assert_eq!(out.text.matches(" -> ").count(), 2);
    assert!(out.text.contains("\"generic\" -> \"left\""));
}
