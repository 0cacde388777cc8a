use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Cone, PolyhedralError};
use crate::lattice::IntVector;
use crate::par;

/// A fan of strongly convex rational polyhedral cones in `N = Z^d`.
///
/// Cones are stored canonically (extreme rays only) and sorted by dimension
/// and rays; the list is closed under faces and validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicFan {
    lattice_rank: usize,
    cones: Vec<Cone>,
}

/// The first reason a cone collection fails to be a fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanViolation {
    WrongAmbient {
        cone: usize,
        ambient: usize,
    },
    NotStronglyConvex {
        cone: usize,
    },
    MissingFace {
        cone: usize,
        face: Cone,
    },
    /// The intersection of two cones is not a face of both.
    BadIntersection {
        first: usize,
        second: usize,
        intersection: Cone,
    },
}

impl fmt::Display for FanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanViolation::WrongAmbient { cone, ambient } => write!(f, "cone {cone} lives in rank {ambient}"),
            FanViolation::NotStronglyConvex { cone } => write!(f, "cone {cone} contains a line"),
            FanViolation::MissingFace { cone, face } => write!(f, "face {face} of cone {cone} is missing"),
            FanViolation::BadIntersection { first, second, intersection } => {
                write!(f, "cones {first} and {second} meet in {intersection}, which is not a face of both")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanValidation {
    pub valid: bool,
    pub violation: Option<FanViolation>,
}

/// Checks that `cones` (in `Z^rank`) are strongly convex, closed under faces,
/// and pairwise meet in a common face. Reports the first violation in index
/// order.
pub fn validate_classic_fan(rank: usize, cones: &[Cone]) -> FanValidation {
    let fail = |v| FanValidation { valid: false, violation: Some(v) };
    for (i, c) in cones.iter().enumerate() {
        if c.ambient() != rank {
            return fail(FanViolation::WrongAmbient { cone: i, ambient: c.ambient() });
        }
    }
    if let Some(i) = par::position(cones, |c| !c.is_strongly_convex()) {
        return fail(FanViolation::NotStronglyConvex { cone: i });
    }
    let canon: BTreeSet<Cone> = cones.iter().map(Cone::canonical).collect();
    let missing = par::map(cones, |c| c.faces().into_iter().map(|(f, _)| f.canonical()).find(|f| !canon.contains(f)));
    if let Some((i, face)) = missing.into_iter().enumerate().find_map(|(i, m)| m.map(|f| (i, f))) {
        return fail(FanViolation::MissingFace { cone: i, face });
    }
    // with faces present, meets of cones that are no other cone's face decide
    // every other meet: faces of a face are faces
    let top: Vec<usize> = (0..cones.len())
        .filter(|&i| !(0..cones.len()).any(|j| cones[j].dim() > cones[i].dim() && cones[j].has_face(&cones[i])))
        .collect();
    let pairs: Vec<(usize, usize)> =
        top.iter().enumerate().flat_map(|(a, &i)| top[a + 1..].iter().map(move |&j| (i, j))).collect();
    let bad = par::map(&pairs, |&(i, j)| {
        let meet = cones[i].intersection(&cones[j]).canonical();
        (!(cones[i].has_face(&meet) && cones[j].has_face(&meet))).then_some(meet)
    });
    if let Some((k, meet)) = bad.into_iter().enumerate().find_map(|(k, b)| b.map(|m| (k, m))) {
        let (first, second) = pairs[k];
        return fail(FanViolation::BadIntersection { first, second, intersection: meet });
    }
    FanValidation { valid: true, violation: None }
}

impl ClassicFan {
    /// Builds the fan generated by `maximal` cones, adding all their faces.
    pub fn from_maximal(lattice_rank: usize, maximal: Vec<Cone>) -> Result<Self, PolyhedralError> {
        let mut all: BTreeSet<Cone> = BTreeSet::new();
        for c in &maximal {
            if c.ambient() != lattice_rank {
                return Err(PolyhedralError::DimensionMismatch { expected: lattice_rank, found: c.ambient() });
            }
            for (f, _) in c.faces() {
                all.insert(f.canonical());
            }
        }
        if maximal.is_empty() {
            all.insert(Cone::zero(lattice_rank));
        }
        Self::from_cones(lattice_rank, all.into_iter().collect())
    }

    /// Builds a fan from a face-closed list of cones.
    pub fn from_cones(lattice_rank: usize, cones: Vec<Cone>) -> Result<Self, PolyhedralError> {
        let mut cones: Vec<Cone> = cones.iter().map(Cone::canonical).collect();
        cones.sort_by(|a, b| (a.dim(), a).cmp(&(b.dim(), b)));
        cones.dedup();
        let check = validate_classic_fan(lattice_rank, &cones);
        match check.violation {
            Some(v) => Err(PolyhedralError::InvalidFan(v)),
            None => Ok(ClassicFan { lattice_rank, cones }),
        }
    }

    pub fn lattice_rank(&self) -> usize {
        self.lattice_rank
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn position(&self, c: &Cone) -> Option<usize> {
        let c = c.canonical();
        self.cones.iter().position(|x| *x == c)
    }

    /// Whether cone `i` is a face of cone `j`.
    pub fn is_face_of(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.cones[i], &self.cones[j]);
        a.rays().iter().all(|r| b.rays().contains(r)) && b.has_face(a)
    }

    pub fn maximal_cones(&self) -> Vec<usize> {
        (0..self.cones.len()).filter(|&i| !(0..self.cones.len()).any(|j| j != i && self.is_face_of(i, j))).collect()
    }

    /// All rays of the fan, sorted.
    pub fn rays(&self) -> Vec<IntVector> {
        let set: BTreeSet<IntVector> = self.cones.iter().flat_map(|c| c.rays().iter().cloned()).collect();
        set.into_iter().collect()
    }

    /// Set equality of the cone collections.
    pub fn same_cones(&self, other: &ClassicFan) -> bool {
        self.lattice_rank == other.lattice_rank && self.cones == other.cones
    }

    /// Facet-pairing completeness: the fan is pure of full dimension and every
    /// codimension-one face of a maximal cone lies in exactly two maximal
    /// cones.
    pub fn is_complete(&self) -> bool {
        let d = self.lattice_rank;
        if d == 0 {
            return true;
        }
        let maximal = self.maximal_cones();
        if maximal.iter().any(|&i| self.cones[i].dim() != d) {
            return false;
        }
        let mut ridges: BTreeMap<Cone, usize> = BTreeMap::new();
        for &i in &maximal {
            for (f, _) in self.cones[i].faces() {
                if f.dim() + 1 == d {
                    *ridges.entry(f.canonical()).or_default() += 1;
                }
            }
        }
        ridges.values().all(|&n| n == 2)
    }
}

impl fmt::Display for ClassicFan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fan in Z^{} with {} cones", self.lattice_rank, self.cones.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivec;

    fn projective_plane() -> ClassicFan {
        let (e1, e2, e3) = (ivec![1, 0], ivec![0, 1], ivec![-1, -1]);
        ClassicFan::from_maximal(
            2,
            vec![
                Cone::new(2, vec![e1.clone(), e2.clone()]),
                Cone::new(2, vec![e2, e3.clone()]),
                Cone::new(2, vec![e3, e1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn projective_plane_is_valid_and_complete() {
        let f = projective_plane();
        assert_eq!(f.len(), 7);
        assert!(validate_classic_fan(2, f.cones()).valid);
        assert!(f.is_complete());
        assert_eq!(f.maximal_cones().len(), 3);
    }

    #[test]
    fn overlapping_cones_rejected() {
        let a = Cone::new(2, vec![ivec![1, 0], ivec![0, 1]]);
        let b = Cone::new(2, vec![ivec![1, 1], ivec![1, -1]]);
        let err = ClassicFan::from_maximal(2, vec![a, b]).unwrap_err();
        assert!(matches!(err, PolyhedralError::InvalidFan(FanViolation::BadIntersection { .. })));
    }

    #[test]
    fn single_cone_with_faces() {
        let q = Cone::new(2, vec![ivec![1, 0], ivec![0, 1]]);
        let f = ClassicFan::from_maximal(2, vec![q]).unwrap();
        assert_eq!(f.len(), 4);
        assert!(!f.is_complete());
    }

    #[test]
    fn missing_face_is_reported() {
        let q = Cone::new(2, vec![ivec![1, 0], ivec![0, 1]]);
        let v = validate_classic_fan(2, &[q]);
        assert!(matches!(v.violation, Some(FanViolation::MissingFace { cone: 0, .. })));
    }
}
