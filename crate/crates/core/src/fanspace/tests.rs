use std::collections::BTreeSet;

use super::*;
use crate::corpus;
use crate::lattice::{IntMatrix, IntVector};
use crate::monoid::AffineMonoid;
use crate::polyhedral::{ClassicFan, Cone, Polytope};

fn v(x: &[i64]) -> IntVector {
    IntVector::from_i64s(x)
}

fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

#[test]
fn spec_point_counts() {
    assert_eq!(spec(&corpus::integers_squared()).len(), 1);
    assert_eq!(spec(&corpus::naturals()).len(), 2);
    assert_eq!(spec(&corpus::naturals_squared()).len(), 4);
    assert_eq!(spec(&corpus::integers_times_naturals()).len(), 2);
    assert_eq!(spec(&corpus::quadric_cone()).len(), 4);
}

#[test]
fn spec_has_generic_point_with_group_stalk() {
    let x = spec(&corpus::naturals_squared());
    assert!(x.has_generic_point());
    let generic = x.minimal_points();
    assert_eq!(generic.len(), 1);
    assert!(x.stalk(generic[0]).is_group());
    // the closed point carries the monoid itself
    let closed = x.maximal_points();
    assert_eq!(closed.len(), 1);
    assert!(x.stalk(closed[0]).same_monoid(&corpus::naturals_squared()));
    assert_eq!(x.minimal_open(closed[0]).len(), 4);
}

#[test]
fn basic_open_of_coordinate() {
    let s = corpus::naturals_squared();
    let x = spec(&s);
    let d = basic_open(&s, &v(&[1, 0])).unwrap();
    assert_eq!(d.len(), 2);
    assert!(x.is_open(&d));
    let gamma = sections(&x, &d).unwrap();
    assert!(gamma.same_monoid(&corpus::integers_times_naturals()));
    assert!(basic_open(&s, &v(&[-1, 0])).is_err());
}

#[test]
fn global_sections_of_affine_spec() {
    for (_, s) in corpus::monoids() {
        let x = spec(&s);
        let all: BTreeSet<usize> = (0..x.len()).collect();
        assert!(sections(&x, &all).unwrap().same_monoid(&s));
    }
}

#[test]
fn projective_plane_has_trivial_global_sections() {
    let x = from_classic_fan(&corpus::projective_plane());
    assert_eq!(x.len(), 7);
    let all: BTreeSet<usize> = (0..x.len()).collect();
    let gamma = sections(&x, &all).unwrap();
    assert!(gamma.generators().is_empty());
}

#[test]
fn sections_reject_non_open_sets() {
    let x = spec(&corpus::naturals());
    let closed = x.maximal_points();
    assert!(matches!(sections(&x, &set(&closed)), Err(SpaceError::NotOpen)));
}

#[test]
fn classic_fans_are_fans() {
    for (name, f) in corpus::theorem_fans() {
        let x = from_classic_fan(&f);
        let cert = is_fan(&x).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(cert.recheck(&x), "{name}");
    }
}

#[test]
fn spectra_are_fans() {
    for (name, s) in corpus::monoids() {
        assert!(is_fan(&spec(&s)).is_ok(), "{name}");
    }
}

#[test]
fn deleting_a_ray_breaks_the_fan() {
    let x = from_classic_fan(&corpus::projective_plane());
    let ray = x.index_of("c{0}").unwrap();
    let y = x.remove_points(&set(&[ray]));
    let err = is_fan(&y).unwrap_err();
    assert_eq!(y.minimal_open(err.point).len(), 3);
}

#[test]
fn doubled_line_is_a_non_separated_fan() {
    let x = corpus::doubled_line();
    assert_eq!(x.len(), 3);
    assert!(is_fan(&x).is_ok());
    assert_eq!(x.maximal_points().len(), 2);
    assert!(!iso_check(&x, &from_classic_fan(&corpus::projective_line())));
}

#[test]
fn glued_line_is_the_projective_line() {
    let glued = corpus::glued_projective_line();
    let classic = from_classic_fan(&corpus::projective_line());
    assert_eq!(glued.len(), 3);
    let iso = find_isomorphism(&glued, &classic).expect("isomorphic");
    assert_eq!(iso.point_map.len(), 3);
}

#[test]
fn glue_rejects_wrong_maps() {
    let a = spec(&corpus::naturals());
    let b = spec(&corpus::naturals());
    let closed = a.maximal_points()[0];
    // the closed points carry N; -1 does not carry N onto N
    let bad = Identification { first: (0, closed), second: (1, closed), iso: IntMatrix::from_i64_rows(&[&[-1]]) };
    assert!(matches!(glue(&[a, b], &[bad]), Err(SpaceError::IncompatibleIdentification(_))));
}

#[test]
fn iso_check_examples() {
    let a = spec(&corpus::naturals_squared());
    let fan = from_classic_fan(&corpus::affine_plane());
    assert!(iso_check(&a, &fan));
    assert!(iso_check(&spec(&corpus::cusp()), &spec(&AffineMonoid::new(1, vec![v(&[-2]), v(&[-3])]))));
    assert!(!iso_check(&spec(&corpus::cusp()), &spec(&corpus::naturals())));
    assert!(!iso_check(&spec(&corpus::quadric_cone()), &a));
    assert!(!iso_check(&from_classic_fan(&corpus::projective_plane()), &from_classic_fan(&corpus::product_of_lines())));
    assert!(iso_check(&from_classic_fan(&corpus::hirzebruch(0)), &from_classic_fan(&corpus::product_of_lines())));
}

#[test]
fn space_iso_maps_commute() {
    let x = from_classic_fan(&corpus::blowup_plane());
    let flipped = ClassicFan::from_maximal(
        2,
        vec![Cone::new(2, vec![v(&[0, 1]), v(&[1, 1])]), Cone::new(2, vec![v(&[1, 1]), v(&[1, 0])])],
    )
    .unwrap();
    let y = from_classic_fan(&flipped);
    let iso = find_isomorphism(&x, &y).unwrap();
    for p in 0..x.len() {
        assert!(iso.stalk_maps[p].is_unimodular());
    }
}

#[test]
fn local_homomorphisms() {
    let n = corpus::naturals();
    let z = AffineMonoid::lattice(1);
    let id = IntMatrix::identity(1);
    let local = MonoidMorphismData { source: n.clone(), target: n.clone(), map: id.clone() };
    assert!(is_local_hom(&local).unwrap());
    let to_group = MonoidMorphismData { source: n.clone(), target: z, map: id };
    assert!(!is_local_hom(&to_group).unwrap());
    let zero = MonoidMorphismData { source: n.clone(), target: n.clone(), map: IntMatrix::from_i64_rows(&[&[0]]) };
    assert!(!is_local_hom(&zero).unwrap());
    let outside = MonoidMorphismData { source: n.clone(), target: n.clone(), map: IntMatrix::from_i64_rows(&[&[-1]]) };
    assert!(is_local_hom(&outside).is_err());
    let diag = MonoidMorphismData {
        source: n,
        target: corpus::naturals_squared(),
        map: IntMatrix::from_i64_rows(&[&[1], &[1]]),
    };
    assert!(is_local_hom(&diag).unwrap());
}

#[test]
fn polytope_face_spaces_match_normal_fans() {
    let segment = Polytope::new(1, vec![v(&[0]), v(&[2])]).unwrap();
    let square = Polytope::new(2, vec![v(&[0, 0]), v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap();
    let simplex = Polytope::new(2, vec![v(&[0, 0]), v(&[1, 0]), v(&[0, 1])]).unwrap();
    for (p, faces) in [(segment, 3), (square, 9), (simplex, 7)] {
        let fs = polytope_face_space(&p).unwrap();
        assert_eq!(fs.faces.len(), faces);
        assert!(fs.order_isomorphic);
        assert!(is_fan(&fs.fan_space).is_ok());
    }
}

#[test]
fn minimal_open_space_is_spec_of_stalk() {
    let x = from_classic_fan(&corpus::projective_plane());
    for q in x.maximal_points() {
        let u = x.minimal_open_space(q);
        assert!(iso_check(&u, &spec(x.stalk(q))));
    }
}
