//! Small named examples: classic fans, monoids and glued spaces used by the
//! tests, the benchmarks and the command-line corpus.

use crate::fanspace::{glue, spec, Identification, MonoidedSpace};
use crate::lattice::{IntMatrix, IntVector};
use crate::monoid::AffineMonoid;
use crate::polyhedral::{ClassicFan, Cone};

fn v(x: &[i64]) -> IntVector {
    IntVector::from_i64s(x)
}

fn fan(rank: usize, maximal: &[&[&[i64]]]) -> ClassicFan {
    let cones = maximal.iter().map(|rays| Cone::new(rank, rays.iter().map(|r| v(r)).collect())).collect();
    ClassicFan::from_maximal(rank, cones).expect("corpus fan is valid")
}

/// The first quadrant with its faces.
pub fn affine_plane() -> ClassicFan {
    fan(2, &[&[&[1, 0], &[0, 1]]])
}

/// The plane blown up at the origin: `<e1, e1+e2>` and `<e1+e2, e2>`.
pub fn blowup_plane() -> ClassicFan {
    fan(2, &[&[&[1, 0], &[1, 1]], &[&[1, 1], &[0, 1]]])
}

/// Rays `e1, e2, -e1-e2`.
pub fn projective_plane() -> ClassicFan {
    fan(2, &[&[&[1, 0], &[0, 1]], &[&[0, 1], &[-1, -1]], &[&[-1, -1], &[1, 0]]])
}

/// The four quadrants.
pub fn product_of_lines() -> ClassicFan {
    fan(2, &[&[&[1, 0], &[0, 1]], &[&[0, 1], &[-1, 0]], &[&[-1, 0], &[0, -1]], &[&[0, -1], &[1, 0]]])
}

/// Rays `(1,0), (0,1), (-1,a), (0,-1)`.
pub fn hirzebruch(a: i64) -> ClassicFan {
    fan(2, &[&[&[1, 0], &[0, 1]], &[&[0, 1], &[-1, a]], &[&[-1, a], &[0, -1]], &[&[0, -1], &[1, 0]]])
}

/// `R>=0` and `R<=0` in rank one.
pub fn projective_line() -> ClassicFan {
    fan(1, &[&[&[1]], &[&[-1]]])
}

/// Only the zero cone, in rank `d`.
pub fn torus(d: usize) -> ClassicFan {
    ClassicFan::from_maximal(d, Vec::new()).expect("zero fan")
}

fn cube_fan(moved: Option<[i64; 3]>) -> ClassicFan {
    let vertex = |s: [i64; 3]| -> IntVector {
        match moved {
            Some(m) if s == [1, 1, 1] => v(&m),
            _ => v(&s),
        }
    };
    let mut cones = Vec::new();
    for axis in 0..3 {
        for sign in [1, -1] {
            let mut rays = Vec::new();
            for a in [1, -1] {
                for b in [1, -1] {
                    let mut s = [0i64; 3];
                    s[axis] = sign;
                    s[(axis + 1) % 3] = a;
                    s[(axis + 2) % 3] = b;
                    rays.push(vertex(s));
                }
            }
            cones.push(Cone::new(3, rays));
        }
    }
    ClassicFan::from_maximal(3, cones).expect("cube fan is valid")
}

/// Cones over the faces of the cube with vertices `(±1, ±1, ±1)`.
pub fn cube() -> ClassicFan {
    cube_fan(None)
}

/// The cube fan with the ray through `(1,1,1)` moved to `(1,2,3)`: complete
/// and not projective.
pub fn non_projective_cube() -> ClassicFan {
    cube_fan(Some([1, 2, 3]))
}

/// `N`.
pub fn naturals() -> AffineMonoid {
    AffineMonoid::free(1)
}

/// `N^2`.
pub fn naturals_squared() -> AffineMonoid {
    AffineMonoid::free(2)
}

/// `Z x N`.
pub fn integers_times_naturals() -> AffineMonoid {
    AffineMonoid::new(2, vec![v(&[1, 0]), v(&[-1, 0]), v(&[0, 1])])
}

/// `<2, 3>` in `Z`.
pub fn cusp() -> AffineMonoid {
    AffineMonoid::new(1, vec![v(&[2]), v(&[3])])
}

/// `<(1,0), (1,1), (1,2)>`.
pub fn quadric_cone() -> AffineMonoid {
    AffineMonoid::new(2, vec![v(&[1, 0]), v(&[1, 1]), v(&[1, 2])])
}

/// `Z^2`.
pub fn integers_squared() -> AffineMonoid {
    AffineMonoid::lattice(2)
}

/// Every corpus monoid with a short name.
pub fn monoids() -> Vec<(&'static str, AffineMonoid)> {
    vec![
        ("naturals", naturals()),
        ("naturals_squared", naturals_squared()),
        ("integers_times_naturals", integers_times_naturals()),
        ("cusp", cusp()),
        ("quadric_cone", quadric_cone()),
        ("integers_squared", integers_squared()),
    ]
}

/// The classic fans checked against the locally-`Spec` theorem.
pub fn theorem_fans() -> Vec<(&'static str, ClassicFan)> {
    vec![
        ("affine_plane", affine_plane()),
        ("blowup_plane", blowup_plane()),
        ("projective_plane", projective_plane()),
        ("product_of_lines", product_of_lines()),
        ("hirzebruch_2", hirzebruch(2)),
    ]
}

/// Two spectra glued along their generic points by the identity.
fn glue_generic(a: &AffineMonoid, b: &AffineMonoid) -> MonoidedSpace {
    let (x, y) = (spec(a), spec(b));
    let d = a.ambient();
    glue(&[x, y], &[Identification { first: (0, 0), second: (1, 0), iso: IntMatrix::identity(d) }])
        .expect("generic points glue")
}

/// Two affine lines glued along the generic point only.
pub fn doubled_line() -> MonoidedSpace {
    glue_generic(&naturals(), &naturals())
}

/// `Spec N` and `Spec (-N)` glued along `Z`: the projective line.
pub fn glued_projective_line() -> MonoidedSpace {
    glue_generic(&naturals(), &AffineMonoid::new(1, vec![v(&[-1])]))
}

/// `Spec <2,3>` and `Spec <-2,-3>` glued along `Z`.
pub fn cuspidal_projective_line() -> MonoidedSpace {
    glue_generic(&cusp(), &AffineMonoid::new(1, vec![v(&[-2]), v(&[-3])]))
}

/// `Spec N` and `Spec N` side by side.
pub fn two_lines_apart() -> MonoidedSpace {
    glue(&[spec(&naturals()), spec(&naturals())], &[]).expect("disjoint union")
}
