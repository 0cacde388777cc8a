use std::collections::{BTreeMap, BTreeSet};

use super::{MonoidedSpace, SpaceError};
use crate::lattice::{IntMatrix, IntVector};
use crate::monoid::{AffineMonoid, MonoidError};
use crate::par;
use crate::polyhedral::{dual_cone, lattice_point_generators, normal_fan, ClassicFan, Polytope};

/// `Spec S`: the primes ordered by inclusion, stalk `S + (-F)` at the prime
/// with complementary face `F`, inclusions as maps.
///
/// Points are listed as [`AffineMonoid::primes`] lists them (generic point
/// first) and named after their face, e.g. `p{0,1}`.
pub fn spec(s: &AffineMonoid) -> MonoidedSpace {
    let primes = s.primes();
    let n = primes.len();
    let d = s.ambient();
    let stalks = par::map(&primes, |p| s.localize_at_prime(p).expect("prime of s"));
    let mut order = Vec::new();
    let mut maps = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && primes[i].is_subset_of(&primes[j]) {
                order.push((i, j));
                maps.insert((j, i), IntMatrix::identity(d));
            }
        }
    }
    MonoidedSpace::new(primes.iter().map(|p| p.to_string()).collect(), &order, stalks, maps)
        .expect("spectrum is a valid space")
}

/// `D(f) = {p : f not in p}` as point indices of [`spec`]`(s)`.
pub fn basic_open(s: &AffineMonoid, f: &IntVector) -> Result<BTreeSet<usize>, MonoidError> {
    if f.len() != s.ambient() {
        return Err(MonoidError::DimensionMismatch { expected: s.ambient(), found: f.len() });
    }
    if !s.contains(f) {
        return Err(MonoidError::NotAMember { element: f.to_string(), monoid: s.to_string() });
    }
    Ok(s.primes().iter().enumerate().filter(|(_, p)| s.face_monoid(p).contains(f)).map(|(i, _)| i).collect())
}

/// The monoided space of a classic fan: one point per cone, ordered by the
/// face relation, with stalk `σ^∨ ∩ M` at `σ` (`M` the dual lattice, in dual
/// coordinates) and inclusions as maps.
///
/// Points follow the order of [`ClassicFan::cones`] and are named by the
/// indices of their rays in [`ClassicFan::rays`], e.g. `c{0,2}`.
pub fn from_classic_fan(fan: &ClassicFan) -> MonoidedSpace {
    let d = fan.lattice_rank();
    let cones = fan.cones();
    let rays = fan.rays();
    let names = cones
        .iter()
        .map(|c| {
            let idx: Vec<String> =
                c.rays().iter().map(|r| rays.iter().position(|x| x == r).expect("ray of fan").to_string()).collect();
            format!("c{{{}}}", idx.join(","))
        })
        .collect();
    let stalks = par::map(cones, |c| AffineMonoid::new(d, lattice_point_generators(&dual_cone(c))));
    let face_sets: Vec<BTreeSet<usize>> =
        par::map(cones, |c| c.faces().iter().filter_map(|(f, _)| fan.position(f)).collect::<BTreeSet<usize>>());
    let mut order = Vec::new();
    let mut maps = BTreeMap::new();
    for (j, faces) in face_sets.iter().enumerate() {
        for &i in faces {
            if i != j {
                order.push((i, j));
                maps.insert((j, i), IntMatrix::identity(d));
            }
        }
    }
    MonoidedSpace::new(names, &order, stalks, maps).expect("fan space is valid")
}

/// The face poset of a polytope with the star topology: the star of a face
/// (all faces containing it) is its smallest open neighbourhood, so larger
/// faces are generizations of smaller ones.
#[derive(Clone, Debug)]
pub struct PolytopeFaceSpace {
    /// Nonempty faces as vertex-index sets; the polytope itself included.
    pub faces: Vec<BTreeSet<usize>>,
    /// `leq[i][j]` iff face `i` contains face `j`.
    pub leq: Vec<Vec<bool>>,
    /// `correspondence[i]` is the point of the normal-fan space matching
    /// face `i`.
    pub correspondence: Vec<usize>,
    pub fan_space: MonoidedSpace,
    /// Whether `correspondence` is an order isomorphism onto the
    /// specialization poset of `fan_space`.
    pub order_isomorphic: bool,
}

pub fn polytope_face_space(p: &Polytope) -> Result<PolytopeFaceSpace, SpaceError> {
    let nf = normal_fan(p)?;
    let fan_space = from_classic_fan(&nf.fan);
    let faces = nf.faces.clone();
    let n = faces.len();
    let leq: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| faces[i].is_superset(&faces[j])).collect()).collect();
    let correspondence = nf.face_cone.clone();
    let bijective = n == fan_space.len() && correspondence.iter().collect::<BTreeSet<_>>().len() == n;
    let order_isomorphic =
        bijective && (0..n).all(|i| (0..n).all(|j| leq[i][j] == fan_space.leq(correspondence[i], correspondence[j])));
    Ok(PolytopeFaceSpace { faces, leq, correspondence, fan_space, order_isomorphic })
}
