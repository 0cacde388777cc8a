use super::*;
use crate::corpus;
use crate::fanspace::{from_classic_fan, glue, iso_check, Identification};
use crate::lattice::IntMatrix;

fn v(x: &[i64]) -> IntVector {
    IntVector::from_i64s(x)
}

#[test]
fn classic_fans_round_trip() {
    for (name, f) in corpus::theorem_fans() {
        let x = from_classic_fan(&f);
        let verdict = classify(&x);
        assert!(verdict.classic_toric, "{name}: {verdict:?}");
        let back = verdict.realized.expect("realized");
        assert!(back.same_cones(&f), "{name}");
        assert!(iso_check(&from_classic_fan(&back), &x), "{name}");
    }
}

#[test]
fn torus_point() {
    let x = spec(&corpus::integers_squared());
    let f = realize_classic(&x).unwrap();
    assert_eq!(f.len(), 1);
    assert_eq!(f.cones()[0].dim(), 0);
}

#[test]
fn cusp_fails_only_normality() {
    let x = spec(&corpus::cusp());
    let v0 = classify(&x);
    assert!(v0.is_fan && v0.irreducible && v0.finite_type && v0.integral && v0.separated);
    assert!(!v0.normal && !v0.classic_toric && v0.realized.is_none());
    let closed = x.maximal_points()[0];
    assert_eq!(v0.non_saturated, vec![NormalityWitness { point: closed, element: v(&[1]) }]);
    assert!(matches!(realize_classic(&x), Err(ClassifyError::PreconditionsNotMet(_))));
    let repaired = classify(&normalize(&x).unwrap());
    assert!(repaired.classic_toric);
    assert!(repaired
        .realized
        .unwrap()
        .same_cones(&ClassicFan::from_maximal(1, vec![Cone::new(1, vec![v(&[1])])]).unwrap()));
}

#[test]
fn doubled_line_fails_only_separation() {
    let x = corpus::doubled_line();
    let verdict = classify(&x);
    assert!(verdict.is_fan && verdict.irreducible && verdict.integral && verdict.normal);
    assert!(!verdict.separated && !verdict.classic_toric);
    let eta = verdict.generic_point.unwrap();
    let maximal = x.maximal_points();
    assert_eq!(
        verdict.separation_failures,
        vec![SeparationFailure {
            first: maximal[0],
            second: maximal[1],
            reason: SeparationReason::NotGenerated { meet: eta }
        }]
    );
    assert!(!is_separated(&x).unwrap().0);
}

#[test]
fn gluing_the_closed_points_repairs_the_doubled_line() {
    let a = spec(&corpus::naturals());
    let b = spec(&corpus::naturals());
    let closed = a.maximal_points()[0];
    let id = IntMatrix::identity(1);
    let line = glue(
        &[a, b],
        &[
            Identification { first: (0, 0), second: (1, 0), iso: id.clone() },
            Identification { first: (0, closed), second: (1, closed), iso: id },
        ],
    )
    .unwrap();
    assert!(iso_check(&line, &spec(&corpus::naturals())));
    assert!(is_separated(&line).unwrap().0);
}

#[test]
fn disjoint_union_fails_only_irreducibility() {
    let x = corpus::two_lines_apart();
    let verdict = classify(&x);
    assert!(verdict.is_fan && verdict.finite_type && verdict.normal && verdict.separated);
    assert!(!verdict.irreducible && !verdict.integral && !verdict.classic_toric);
    assert!(matches!(is_separated(&x), Err(ClassifyError::NotIrreducible(_))));
    assert_eq!(is_irreducible(&x), Ok(false));
}

#[test]
fn cuspidal_projective_line() {
    let x = corpus::cuspidal_projective_line();
    let verdict = classify(&x);
    assert!(verdict.is_fan && verdict.separated && verdict.irreducible);
    assert!(!verdict.normal);
    assert_eq!(x.maximal_points().len(), 2);
    assert_eq!(verdict.non_saturated.len(), 2);
}

#[test]
fn non_fan_short_circuits() {
    let x = from_classic_fan(&corpus::projective_plane());
    let ray = x.index_of("c{0}").unwrap();
    let y = x.remove_points(&[ray].into_iter().collect());
    let verdict = classify(&y);
    assert!(!verdict.is_fan && verdict.fan_failure.is_some() && !verdict.classic_toric);
    assert!(matches!(is_normal(&y), Err(ClassifyError::NotAFan(_))));
}

#[test]
fn presented_monoids() {
    let cusp = PresentedMonoid::new(2, vec![(v(&[3, 0]), v(&[0, 2]))]).unwrap();
    let verdict = classify_presented(&cusp, 4);
    assert!(verdict.is_fan && !verdict.normal);
    let torsion = PresentedMonoid::new(2, vec![(v(&[2, 0]), v(&[0, 2]))]).unwrap();
    let verdict = classify_presented(&torsion, 2);
    assert!(!verdict.integral && !verdict.classic_toric);
    assert!(verdict.notes.iter().any(|n| n.contains("no affine model")));
}

#[test]
fn non_projective_cube_is_classic_and_a_thinned_stalk_is_not_normal() {
    let fan = corpus::non_projective_cube();
    assert!(fan.is_complete());
    let x = from_classic_fan(&fan);
    let verdict = classify(&x);
    assert!(verdict.classic_toric);
    assert!(verdict.realized.unwrap().same_cones(&fan));
    let sigma = x.maximal_points()[0];
    let h = x.stalk(sigma).irreducibles()[0].clone();
    let thinner = x.stalk(sigma).remove_irreducible(&h).unwrap();
    assert!(thinner.saturation().same_monoid(x.stalk(sigma)));
    let y = x.replace_stalk(sigma, thinner).unwrap();
    let verdict = classify(&y);
    assert!(verdict.is_fan, "{:?}", verdict.fan_failure);
    assert!(verdict.separated && !verdict.normal);
}
