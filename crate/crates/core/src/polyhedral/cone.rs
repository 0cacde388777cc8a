use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::{IntMatrix, IntVector};

/// A rational polyhedral cone `R>=0 <rays>` in `R^d`.
///
/// Rays are stored primitive, deduplicated and sorted; a cone with a
/// lineality space lists each lineality direction together with its
/// negative. The zero cone has no rays.
#[derive(Clone)]
pub struct Cone {
    ambient: usize,
    rays: Vec<IntVector>,
    dual: OnceLock<Arc<Decomposition>>,
    own: OnceLock<Arc<Decomposition>>,
}

/// Pointed rays plus a lineality basis, both in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Extreme rays modulo the lineality space, projected onto its
    /// orthogonal complement and made primitive. Sorted.
    pub rays: Vec<IntVector>,
    /// Reduced-echelon basis of the lineality space, rows made primitive.
    pub lineality: Vec<IntVector>,
}

impl Decomposition {
    pub fn generators(&self) -> Vec<IntVector> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(-l);
        }
        g
    }
}

impl Cone {
    pub fn new(ambient: usize, rays: Vec<IntVector>) -> Self {
        let mut rays: Vec<IntVector> = rays
            .into_iter()
            .inspect(|r| assert_eq!(r.len(), ambient, "ray {r} not in Z^{ambient}"))
            .filter(|r| !r.is_zero())
            .map(|r| r.primitive())
            .collect();
        rays.sort();
        rays.dedup();
        Cone { ambient, rays, dual: OnceLock::new(), own: OnceLock::new() }
    }

    pub fn zero(ambient: usize) -> Self {
        Cone::new(ambient, Vec::new())
    }

    /// The whole space `R^d`.
    pub fn full(ambient: usize) -> Self {
        let mut rays = Vec::new();
        for i in 0..ambient {
            rays.push(IntVector::unit(ambient, i));
            rays.push(-&IntVector::unit(ambient, i));
        }
        Cone::new(ambient, rays)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        if self.rays.is_empty() {
            return 0;
        }
        IntMatrix::from_rows(&self.rays, self.ambient).rank()
    }

    /// Facet normals and span equations of the cone, i.e. the decomposition
    /// of the dual cone.
    pub fn dual_decomposition(&self) -> &Decomposition {
        self.dual.get_or_init(|| Arc::new(double_description(&self.rays, self.ambient)))
    }

    /// Canonical extreme rays and lineality of the cone itself.
    pub fn decomposition(&self) -> &Decomposition {
        self.own.get_or_init(|| {
            let dual = self.dual_decomposition().generators();
            Arc::new(double_description(&dual, self.ambient))
        })
    }

    /// Inner facet normals (pointed rays of the dual cone).
    pub fn facet_normals(&self) -> &[IntVector] {
        &self.dual_decomposition().rays
    }

    /// Linear equations cutting out the span of the cone.
    pub fn span_equations(&self) -> &[IntVector] {
        &self.dual_decomposition().lineality
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        let d = self.dual_decomposition();
        d.rays.iter().all(|u| !u.dot(x).is_negative()) && d.lineality.iter().all(|u| u.dot(x).is_zero())
    }

    /// Whether `x` lies in the relative interior.
    pub fn contains_relative_interior(&self, x: &IntVector) -> bool {
        let d = self.dual_decomposition();
        d.rays.iter().all(|u| u.dot(x).is_positive()) && d.lineality.iter().all(|u| u.dot(x).is_zero())
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.decomposition().lineality.is_empty()
    }

    pub fn lineality_basis(&self) -> &[IntVector] {
        &self.decomposition().lineality
    }

    /// The same cone generated by its canonical extreme rays (and lineality).
    pub fn canonical(&self) -> Cone {
        Cone::new(self.ambient, self.decomposition().generators())
    }

    /// Set equality of cones.
    pub fn same_set(&self, other: &Cone) -> bool {
        self.ambient == other.ambient && self.decomposition() == other.decomposition()
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
    }

    pub fn intersection(&self, other: &Cone) -> Cone {
        let mut gens = dual_cone(self).rays;
        gens.extend(dual_cone(other).rays);
        dual_cone(&Cone::new(self.ambient, gens))
    }

    /// All faces with the indices (into [`Cone::rays`]) of the rays they
    /// contain, sorted by dimension and then index set. The cone itself and
    /// its minimal face are included.
    pub fn faces(&self) -> Vec<(Cone, BTreeSet<usize>)> {
        face_index_sets(&self.rays, self.ambient)
            .into_iter()
            .map(|idx| {
                let rays = idx.iter().map(|&i| self.rays[i].clone()).collect();
                (Cone::new(self.ambient, rays), idx)
            })
            .collect()
    }

    /// Whether `other` is a face of `self` (as sets).
    pub fn has_face(&self, other: &Cone) -> bool {
        self.faces().iter().any(|(f, _)| f.same_set(other))
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.rays == other.rays
    }
}

impl Eq for Cone {}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cone {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ambient, self.rays.len(), &self.rays).cmp(&(other.ambient, other.rays.len(), &other.rays))
    }
}

impl std::hash::Hash for Cone {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.rays.hash(state);
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone{self}")
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ">")
    }
}

/// `{u : <u, v> >= 0 for all v in c}`.
pub fn dual_cone(c: &Cone) -> Cone {
    Cone::new(c.ambient, c.dual_decomposition().generators())
}

/// Index sets of the generators lying on each face of `cone(generators)`.
///
/// Faces are obtained as all intersections of facets, starting from the
/// whole cone. The generators need not be primitive or irredundant.
pub fn face_index_sets(generators: &[IntVector], ambient: usize) -> Vec<BTreeSet<usize>> {
    let cone = Cone::new(ambient, generators.to_vec());
    let normals = cone.facet_normals();
    let zero_sets: Vec<BTreeSet<usize>> =
        normals.iter().map(|u| (0..generators.len()).filter(|&i| u.dot(&generators[i]).is_zero()).collect()).collect();
    let mut faces: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let full: BTreeSet<usize> = (0..generators.len()).collect();
    let mut frontier = vec![full.clone()];
    faces.insert(full);
    while let Some(f) = frontier.pop() {
        for z in &zero_sets {
            let g: BTreeSet<usize> = f.intersection(z).copied().collect();
            if faces.insert(g.clone()) {
                frontier.push(g);
            }
        }
    }
    let dim_of = |s: &BTreeSet<usize>| -> usize {
        let rows: Vec<IntVector> = s.iter().map(|&i| generators[i].clone()).collect();
        if rows.is_empty() {
            0
        } else {
            IntMatrix::from_rows(&rows, ambient).rank()
        }
    };
    let mut out: Vec<(usize, BTreeSet<usize>)> = faces.into_iter().map(|s| (dim_of(&s), s)).collect();
    out.sort();
    out.into_iter().map(|(_, s)| s).collect()
}

/// Double description: generators of `{x : <a, x> >= 0 for a in constraints}`.
///
/// Starts from the whole space (lineality = standard basis, no rays) and adds
/// one halfspace at a time. Adjacency of a positive and a negative ray is
/// decided algebraically: the rank of the constraints tight at both must be
/// `d - dim(lineality) - 2`.
pub(crate) fn double_description(constraints: &[IntVector], d: usize) -> Decomposition {
    let mut lin: Vec<IntVector> = (0..d).map(|i| IntVector::unit(d, i)).collect();
    let mut rays: Vec<IntVector> = Vec::new();
    let mut processed: Vec<&IntVector> = Vec::new();
    for a in constraints {
        if a.is_zero() {
            continue;
        }
        if let Some(p) = lin.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l0 = lin.remove(p);
            if a.dot(&l0).is_negative() {
                l0 = -&l0;
            }
            let al0 = a.dot(&l0);
            let project = |v: &IntVector| v.scale(&al0).add_scaled(&-a.dot(v), &l0).primitive();
            lin = lin.iter().map(project).collect();
            rays = rays.iter().map(project).collect();
            rays.push(l0.primitive());
        } else {
            let vals: Vec<BigInt> = rays.iter().map(|r| a.dot(r)).collect();
            let mut next: Vec<IntVector> = Vec::new();
            let (mut pos, mut neg) = (Vec::new(), Vec::new());
            for (i, v) in vals.iter().enumerate() {
                if v.is_negative() {
                    neg.push(i);
                } else {
                    next.push(rays[i].clone());
                    if v.is_positive() {
                        pos.push(i);
                    }
                }
            }
            if !neg.is_empty() {
                let target = d - lin.len();
                let tight: Vec<BTreeSet<usize>> = rays
                    .iter()
                    .map(|r| (0..processed.len()).filter(|&k| processed[k].dot(r).is_zero()).collect())
                    .collect();
                for &p in &pos {
                    for &n in &neg {
                        let common: Vec<IntVector> =
                            tight[p].intersection(&tight[n]).map(|&k| processed[k].clone()).collect();
                        let rank = if common.is_empty() { 0 } else { IntMatrix::from_rows(&common, d).rank() };
                        if rank + 2 != target {
                            continue;
                        }
                        let v = rays[n].scale(&vals[p]).add_scaled(&-&vals[n], &rays[p]).primitive();
                        next.push(v);
                    }
                }
            }
            rays = next;
        }
        processed.push(a);
    }
    canonicalize(rays, lin, d)
}

fn canonicalize(rays: Vec<IntVector>, lin: Vec<IntVector>, d: usize) -> Decomposition {
    let lineality = rational_echelon(&lin, d);
    let mut out: Vec<IntVector> = rays.iter().map(|r| project_off(r, &lineality, d)).collect();
    out.retain(|r| !r.is_zero());
    out.sort();
    out.dedup();
    Decomposition { rays: out, lineality }
}

/// Reduced row echelon basis of the rational span, rows scaled to primitive
/// integer vectors with positive pivot.
fn rational_echelon(vectors: &[IntVector], d: usize) -> Vec<IntVector> {
    let mut rows: Vec<Vec<BigRational>> =
        vectors.iter().map(|v| v.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let mut r = 0;
    for c in 0..d {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in 0..d {
                let v = &rows[r][j] * &f;
                rows[i][j] -= v;
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows.iter().map(|row| integerize(row)).collect()
}

fn integerize(row: &[BigRational]) -> IntVector {
    use num_integer::Integer;
    let den = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    row.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect::<IntVector>().primitive()
}

/// Orthogonal projection onto the complement of `span(basis)`, made primitive.
fn project_off(v: &IntVector, basis: &[IntVector], d: usize) -> IntVector {
    if basis.is_empty() {
        return v.primitive();
    }
    let k = basis.len();
    // Gram system G c = B^T v over Q
    let mut m: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            let mut row: Vec<BigRational> =
                (0..k).map(|j| BigRational::from_integer(basis[i].dot(&basis[j]))).collect();
            row.push(BigRational::from_integer(basis[i].dot(v)));
            row
        })
        .collect();
    for c in 0..k {
        let p = (c..k).find(|&i| !m[i][c].is_zero()).expect("lineality basis is independent");
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..k {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..=k {
                let t = &m[c][j] * &f;
                m[i][j] -= t;
            }
        }
    }
    let coeffs: Vec<BigRational> = (0..k).map(|i| m[i][k].clone()).collect();
    let projected: Vec<BigRational> = (0..d)
        .map(|j| {
            let mut x = BigRational::from_integer(v[j].clone());
            for (c, b) in coeffs.iter().zip(basis) {
                x -= c * BigRational::from_integer(b[j].clone());
            }
            x
        })
        .collect();
    integerize(&projected)
}
