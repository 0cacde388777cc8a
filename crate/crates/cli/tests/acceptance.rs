//! One line per acceptance criterion. Runs without the test harness so the
//! lines always show; exits nonzero when any criterion fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;

use toric_monoid::algebra::monoid_algebra;
use toric_monoid::classify::{classify, normalize, SeparationReason};
use toric_monoid::corpus;
use toric_monoid::fanspace::{basic_open, from_classic_fan, is_fan, iso_check, polytope_face_space, sections, spec};
use toric_monoid::monoid::{AffineMonoid, Bounded, PresentedMonoid};
use toric_monoid::polyhedral::{hilbert_basis, normal_fan, ClassicFan, Cone, Polytope};
use toric_monoid::{BigInt, IntVector};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn v(x: &[i64]) -> IntVector {
    IntVector::from_i64s(x)
}

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

/// Distinct zero sets of functionals in `[-6, 6]^2` that are nonnegative on
/// every generator; for affine monoids in rank two these are the faces.
fn face_oracle(gens: &[IntVector]) -> usize {
    let mut zero_sets = BTreeSet::new();
    for a in -6i64..=6 {
        for b in -6i64..=6 {
            let u = v(&[a, b]);
            let values: Vec<BigInt> = gens.iter().map(|g| u.dot(&pad(g))).collect();
            if values.iter().all(|x| x >= &BigInt::from(0)) {
                let zeros: BTreeSet<usize> = (0..gens.len()).filter(|&i| values[i] == BigInt::from(0)).collect();
                zero_sets.insert(zeros);
            }
        }
    }
    zero_sets.len()
}

/// Rank-one vectors are read as `(x, 0)`.
fn pad(g: &IntVector) -> IntVector {
    if g.len() == 2 {
        g.clone()
    } else {
        let mut x: Vec<BigInt> = g.iter().cloned().collect();
        x.push(BigInt::from(0));
        x.into_iter().collect()
    }
}

fn mutual_membership(a: &AffineMonoid, b: &AffineMonoid) -> bool {
    a.generators().iter().all(|g| b.contains(g)) && b.generators().iter().all(|g| a.contains(g))
}

fn spec_structure() -> Outcome {
    for (name, s) in corpus::monoids() {
        let x = spec(&s);
        let oracle = face_oracle(s.generators());
        check(x.len() == oracle, format!("{name}: {} points, oracle {oracle}", x.len()))?;
        for f in s.generators() {
            let d = basic_open(&s, f).map_err(|e| e.to_string())?;
            let gamma = sections(&x, &d).map_err(|e| e.to_string())?;
            let mut local = s.generators().to_vec();
            local.push(-f);
            let expected = AffineMonoid::new(s.ambient(), local);
            check(mutual_membership(&gamma, &expected), format!("{name}: sections over D({f})"))?;
        }
    }
    Ok("6 monoids, point counts and every D(f) agree".into())
}

fn locally_spec() -> Outcome {
    for (name, f) in corpus::theorem_fans() {
        let x = from_classic_fan(&f);
        let cert = is_fan(&x).map_err(|e| format!("{name}: {e}"))?;
        check(cert.recheck(&x), format!("{name}: certificate does not recheck"))?;
        for q in 0..x.len() {
            check(
                iso_check(&x.minimal_open_space(q), &spec(x.stalk(q))),
                format!("{name}: minimal open of {} is not Spec of its stalk", x.name(q)),
            )?;
        }
    }
    Ok("5 fans certified, every minimal open is Spec of its stalk".into())
}

fn round_trip() -> Outcome {
    for (name, f) in corpus::theorem_fans() {
        let verdict = classify(&from_classic_fan(&f));
        check(verdict.classic_toric, format!("{name}: not classic"))?;
        let realized = verdict.realized.ok_or(format!("{name}: nothing realized"))?;
        check(realized.same_cones(&f), format!("{name}: realized fan differs"))?;
    }
    Ok("5 fans classify as classic toric and realize to themselves".into())
}

fn cusp_diagnostics() -> Outcome {
    let cusp = corpus::cusp();
    let x = spec(&cusp);
    let verdict = classify(&x);
    check(!verdict.normal, "cusp reported normal")?;
    let witnesses: Vec<&IntVector> = verdict.non_saturated.iter().map(|w| &w.element).collect();
    check(witnesses == vec![&v(&[1])], format!("witnesses {witnesses:?}"))?;
    check(cusp.saturation().same_monoid(&corpus::naturals()), "saturation is not N")?;
    let p = monoid_algebra(&cusp, "k", 6).map_err(|e| e.to_string())?;
    check(p.generators == vec![v(&[2]), v(&[3])], format!("generators {:?}", p.generators))?;
    check(p.relations == vec![(v(&[3, 0]), v(&[0, 2]))], format!("relations {:?}", p.relations))?;
    let repaired = classify(&normalize(&x).map_err(|e| e.to_string())?);
    check(repaired.classic_toric, "normalized cusp is not classic")?;
    let line = ClassicFan::from_maximal(1, vec![Cone::new(1, vec![v(&[1])])]).map_err(|e| e.to_string())?;
    check(repaired.realized.is_some_and(|f| f.same_cones(&line)), "normalization is not the affine line")?;
    Ok(format!("witness 1, saturation N, {p}, normalization is the affine line"))
}

fn binary() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_toricmon"))
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn non_separated() -> Outcome {
    let x = corpus::doubled_line();
    let verdict = classify(&x);
    check(verdict.is_fan, "doubled line is not a fan")?;
    check(!verdict.separated, "doubled line reported separated")?;
    let generic = verdict.generic_point.ok_or("no generic point")?;
    let closed: BTreeSet<usize> = x.maximal_points().into_iter().collect();
    let pair_found = verdict.separation_failures.iter().any(|f| {
        BTreeSet::from([f.first, f.second]) == closed && f.reason == SeparationReason::NotGenerated { meet: generic }
    });
    check(pair_found, format!("failures {:?}", verdict.separation_failures))?;
    let out = Command::new(binary())
        .arg("classify")
        .arg(corpus_dir().join("space_doubled_line.json"))
        .output()
        .map_err(|e| e.to_string())?;
    check(out.status.code() == Some(1), format!("exit code {:?}", out.status.code()))?;
    let text = String::from_utf8_lossy(&out.stdout);
    check(text.contains("charts left and right"), "report does not name the chart pair")?;
    Ok("fan, not separated at the generic point, classify exits 1".into())
}

fn cuspidal_line() -> Outcome {
    let x = corpus::cuspidal_projective_line();
    let verdict = classify(&x);
    check(verdict.is_fan, "not a fan")?;
    check(verdict.separated, "not separated")?;
    check(!verdict.normal, "normal")?;
    check(x.maximal_points().len() == 2, "not two maximal points")?;
    Ok("fan, separated, not normal, two maximal points; quasi-projectivity not decided".into())
}

fn affine_model_gates() -> Outcome {
    let torsion = PresentedMonoid::new(2, vec![(v(&[2, 0]), v(&[0, 2]))]).map_err(|e| e.to_string())?;
    match torsion.is_torsion_free_bounded(2) {
        Bounded::Fail(w) => check(
            w.n == 2 && BTreeSet::from([w.s.clone(), w.s_prime.clone()]) == BTreeSet::from([v(&[1, 0]), v(&[0, 1])]),
            format!("witness {w:?}"),
        )?,
        Bounded::PassUpTo(_) => return Err("2a = 2b passed the torsion check".into()),
    }
    check(torsion.affinize(2).is_err(), "2a = 2b affinized")?;
    let cusp = PresentedMonoid::new(2, vec![(v(&[3, 0]), v(&[0, 2]))]).map_err(|e| e.to_string())?;
    let a = cusp.affinize(4).map_err(|e| e.to_string())?;
    check(a.monoid.same_monoid(&corpus::cusp()), format!("3x = 2y gives {:?}", a.monoid.generators()))?;
    Ok("2a = 2b fails with witness (2, a, b) and has no affine model; 3x = 2y gives <2, 3>".into())
}

fn hilbert_pipeline() -> Outcome {
    let cone = Cone::new(2, vec![v(&[1, 0]), v(&[1, 2])]);
    let hb: BTreeSet<IntVector> = hilbert_basis(&cone).map_err(|e| e.to_string())?.into_iter().collect();
    let expected = BTreeSet::from([v(&[1, 0]), v(&[1, 1]), v(&[1, 2])]);
    check(hb == expected, format!("hilbert basis {hb:?}"))?;
    // box oracle: nonzero lattice points of the cone that are not a sum of two
    let inside = |x: i64, y: i64| x >= 0 && y >= 0 && y <= 2 * x;
    let mut irreducible = BTreeSet::new();
    for x in 0..=4i64 {
        for y in 0..=8i64 {
            if (x, y) == (0, 0) || !inside(x, y) {
                continue;
            }
            let splits = (0..=x)
                .any(|a| (0..=y).any(|b| (a, b) != (0, 0) && (a, b) != (x, y) && inside(a, b) && inside(x - a, y - b)));
            if !splits {
                irreducible.insert(v(&[x, y]));
            }
        }
    }
    check(hb == irreducible, format!("box oracle {irreducible:?}"))?;
    let simplex = Polytope::new(2, vec![v(&[0, 0]), v(&[1, 0]), v(&[0, 1])]).map_err(|e| e.to_string())?;
    let fs = polytope_face_space(&simplex).map_err(|e| e.to_string())?;
    let classic = from_classic_fan(&normal_fan(&simplex).map_err(|e| e.to_string())?.fan);
    check(fs.faces.len() == 7 && classic.len() == 7, "simplex does not have 7 faces")?;
    check(fs.order_isomorphic, "face poset is not order-isomorphic")?;
    check(iso_check(&fs.fan_space, &classic), "face space differs from the normal fan space")?;
    let p2 = from_classic_fan(&corpus::projective_plane());
    let all: BTreeSet<usize> = (0..p2.len()).collect();
    let global = sections(&p2, &all).map_err(|e| e.to_string())?;
    check(global.generators().iter().all(|g| g.is_zero()), "global sections of P^2 are not {0}")?;
    Ok("box oracle agrees, simplex face space has 7 points, P^2 global sections {0}".into())
}

fn non_projective_substrate() -> Outcome {
    let fan = corpus::non_projective_cube();
    check(fan.is_complete(), "cube fan is not complete")?;
    let x = from_classic_fan(&fan);
    let verdict = classify(&x);
    check(verdict.classic_toric, "cube fan is not classic")?;
    let mut tried = 0;
    for sigma in x.maximal_points() {
        let stalk = x.stalk(sigma);
        for h in stalk.irreducibles() {
            let Ok(thinner) = stalk.remove_irreducible(&h) else { continue };
            if !thinner.saturation().same_monoid(stalk) {
                continue;
            }
            let Ok(y) = x.replace_stalk(sigma, thinner) else { continue };
            tried += 1;
            if is_fan(&y).is_err() {
                continue;
            }
            let v = classify(&y);
            check(
                v.separated && !v.normal,
                format!("replacement at {} is separated={} normal={}", x.name(sigma), v.separated, v.normal),
            )?;
            return Ok(format!(
                "classic; dropping {h} from the stalk at {} keeps a fan, separated and not normal",
                x.name(sigma)
            ));
        }
    }
    Err(format!("no stalk replacement keeps is_fan ({tried} tried)"))
}

fn determinism() -> Outcome {
    let commands = ["spec", "convert", "hilbert", "saturate", "algebra", "atlas", "classify", "dot", "report"];
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .map_err(|e| e.to_string())?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    files.sort();
    let mut jobs = Vec::new();
    for f in &files {
        for c in commands {
            for seedless in [false, true] {
                jobs.push((f.clone(), c, seedless));
            }
        }
    }
    let run = |(f, c, seedless): &(PathBuf, &str, bool)| {
        let mut cmd = Command::new(binary());
        if *seedless {
            cmd.arg("--seedless");
        }
        let out = cmd.arg(c).arg(f).output().expect("binary runs");
        (out.status.code(), out.stdout, out.stderr)
    };
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get());
    let chunk = jobs.len().div_ceil(threads);
    let differing: Vec<String> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .filter(|job| run(job) != run(job))
                        .map(|(f, c, s)| format!("{c} {}{}", f.display(), if *s { " --seedless" } else { "" }))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker")).collect()
    });
    check(differing.is_empty(), format!("differing runs: {differing:?}"))?;
    Ok(format!("{} runs repeated byte-identically over {} corpus files", jobs.len(), files.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("spec structure", spec_structure),
        ("classic fans are locally Spec", locally_spec),
        ("classification round trip", round_trip),
        ("cusp diagnostics", cusp_diagnostics),
        ("non-separated detection", non_separated),
        ("cuspidal projective line", cuspidal_line),
        ("affine model gates", affine_model_gates),
        ("Hilbert basis and polytope pipeline", hilbert_pipeline),
        ("non-projective substrate", non_projective_substrate),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.1}s)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
