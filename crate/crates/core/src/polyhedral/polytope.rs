use std::collections::BTreeSet;

use super::{face_index_sets, ClassicFan, Cone, PolyhedralError};
use crate::lattice::{saturated_span, IntVector, Sublattice};
use crate::par;

/// A lattice polytope, stored by its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    ambient: usize,
    vertices: Vec<IntVector>,
}

/// The inner normal fan of a polytope together with the face/cone
/// correspondence.
#[derive(Clone, Debug)]
pub struct NormalFan {
    pub fan: ClassicFan,
    /// Nonempty faces of the polytope as vertex-index sets, in the order of
    /// [`Polytope::faces`].
    pub faces: Vec<BTreeSet<usize>>,
    /// `face_cone[i]` is the index in `fan.cones()` of the normal cone of
    /// `faces[i]`.
    pub face_cone: Vec<usize>,
    /// The lattice spanned by edge directions, in which the fan's dual
    /// lattice lives when the polytope is not full-dimensional.
    pub affine_lattice: Sublattice,
}

impl Polytope {
    /// Convex hull of `points`; non-extreme points and duplicates are dropped
    /// and the remaining vertices sorted.
    pub fn new(ambient: usize, points: Vec<IntVector>) -> Result<Self, PolyhedralError> {
        let mut pts: Vec<IntVector> = points;
        for p in &pts {
            if p.len() != ambient {
                return Err(PolyhedralError::DimensionMismatch { expected: ambient, found: p.len() });
            }
        }
        pts.sort();
        pts.dedup();
        if pts.is_empty() {
            return Err(PolyhedralError::DegeneratePolytope("no vertices".into()));
        }
        let lifted: Vec<IntVector> = pts.iter().map(|p| p.concat(&IntVector::from_i64s(&[1]))).collect();
        let hom = Cone::new(ambient + 1, lifted.clone());
        let extreme = &hom.decomposition().rays;
        let vertices: Vec<IntVector> =
            pts.into_iter().zip(&lifted).filter(|(_, l)| extreme.contains(&l.primitive())).map(|(p, _)| p).collect();
        Ok(Polytope { ambient, vertices })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.edge_lattice().rank()
    }

    fn edge_lattice(&self) -> Sublattice {
        let v0 = &self.vertices[0];
        let diffs: Vec<IntVector> = self.vertices.iter().skip(1).map(|v| v - v0).collect();
        saturated_span(&diffs, self.ambient)
    }

    /// Nonempty faces as vertex-index sets, sorted by dimension; the last one
    /// is the polytope itself.
    pub fn faces(&self) -> Vec<BTreeSet<usize>> {
        let lifted: Vec<IntVector> = self.vertices.iter().map(|p| p.concat(&IntVector::from_i64s(&[1]))).collect();
        face_index_sets(&lifted, self.ambient + 1).into_iter().filter(|s| !s.is_empty()).collect()
    }
}

/// The inner normal fan: the cone of a face `F` is the set of functionals
/// minimized on the polytope at (at least) `F`, i.e. the dual of the tangent
/// cone at `F`. Vertices give the maximal cones and the polytope itself the
/// zero cone.
///
/// A polytope that is not full-dimensional is first rewritten in
/// coordinates of the lattice spanned by its edge directions.
pub fn normal_fan(p: &Polytope) -> Result<NormalFan, PolyhedralError> {
    let lattice = p.edge_lattice();
    let k = lattice.rank();
    if k == 0 {
        return Err(PolyhedralError::DegeneratePolytope("a single point has no normal fan".into()));
    }
    let v0 = &p.vertices[0];
    let local: Vec<IntVector> =
        p.vertices.iter().map(|v| lattice.coordinates(&(v - v0)).expect("vertex in affine lattice")).collect();
    let faces = p.faces();
    let cones: Vec<Cone> = par::map(&faces, |f| {
        let base = &local[*f.iter().next().expect("nonempty face")];
        let mut gens: Vec<IntVector> = local.iter().map(|w| w - base).collect();
        gens.extend(f.iter().map(|&i| base - &local[i]));
        super::dual_cone(&Cone::new(k, gens)).canonical()
    });
    let fan = ClassicFan::from_cones(k, cones.clone())?;
    let face_cone = cones.iter().map(|c| fan.position(c).expect("normal cone in fan")).collect();
    Ok(NormalFan { fan, faces, face_cone, affine_lattice: lattice })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivec;

    #[test]
    fn square_normal_fan() {
        let sq = Polytope::new(2, vec![ivec![0, 0], ivec![1, 0], ivec![0, 1], ivec![1, 1]]).unwrap();
        let nf = normal_fan(&sq).unwrap();
        assert_eq!(nf.fan.len(), 9);
        assert!(nf.fan.is_complete());
        assert_eq!(nf.fan.rays(), vec![ivec![-1, 0], ivec![0, -1], ivec![0, 1], ivec![1, 0]]);
    }

    #[test]
    fn simplex_gives_projective_plane() {
        let s = Polytope::new(2, vec![ivec![0, 0], ivec![1, 0], ivec![0, 1]]).unwrap();
        let nf = normal_fan(&s).unwrap();
        assert_eq!(nf.fan.len(), 7);
        assert_eq!(nf.fan.rays(), vec![ivec![-1, -1], ivec![0, 1], ivec![1, 0]]);
        // polytope itself <-> zero cone
        let last = nf.faces.len() - 1;
        assert_eq!(nf.fan.cones()[nf.face_cone[last]].dim(), 0);
    }

    #[test]
    fn segment() {
        let s = Polytope::new(1, vec![ivec![0], ivec![1]]).unwrap();
        let nf = normal_fan(&s).unwrap();
        assert_eq!(nf.fan.len(), 3);
        assert_eq!(nf.fan.rays(), vec![ivec![-1], ivec![1]]);
    }

    #[test]
    fn interior_points_dropped() {
        let p = Polytope::new(2, vec![ivec![0, 0], ivec![2, 0], ivec![0, 2], ivec![1, 0], ivec![0, 0]]).unwrap();
        assert_eq!(p.vertices().len(), 3);
    }

    #[test]
    fn degenerate() {
        assert!(Polytope::new(2, vec![]).is_err());
        let pt = Polytope::new(2, vec![ivec![1, 1]]).unwrap();
        assert!(matches!(normal_fan(&pt), Err(PolyhedralError::DegeneratePolytope(_))));
    }

    #[test]
    fn lower_dimensional_segment_in_plane() {
        let s = Polytope::new(2, vec![ivec![0, 0], ivec![2, 2]]).unwrap();
        let nf = normal_fan(&s).unwrap();
        assert_eq!(nf.fan.lattice_rank(), 1);
        assert_eq!(nf.fan.len(), 3);
    }
}
