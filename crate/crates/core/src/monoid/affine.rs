use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::MonoidError;
use crate::lattice::{kernel_basis, GradedSearch, IntMatrix, IntVector, Sublattice};
use crate::polyhedral::{face_index_sets, hilbert_basis, lattice_point_generators, Cone};

/// A finitely generated submonoid of `Z^d`.
///
/// Generators are stored sorted and deduplicated, with zero dropped. The
/// cone, grading and unit data are computed on first use and shared between
/// clones.
#[derive(Clone)]
pub struct AffineMonoid {
    ambient: usize,
    generators: Vec<IntVector>,
    structure: OnceLock<Arc<Structure>>,
}

struct Structure {
    cone: Cone,
    /// Zero exactly on the lineality of the cone, positive elsewhere on it.
    grading: IntVector,
    units: Vec<usize>,
    /// Non-unit generator indices, heaviest first.
    non_units: Vec<usize>,
    non_unit_vecs: Vec<IntVector>,
    unit_lattice: Sublattice,
    group: Sublattice,
    /// `suffix_cones[k]` is spanned by `non_units[k..]` and the units.
    suffix_cones: Vec<Cone>,
    /// Strictly positive integer relation among the unit generators.
    unit_relation: Vec<BigInt>,
}

/// A prime ideal of an affine monoid, recorded by the generators of the
/// complementary face.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeIdeal {
    complement_face: BTreeSet<usize>,
}

impl PrimeIdeal {
    pub fn from_face(complement_face: BTreeSet<usize>) -> Self {
        PrimeIdeal { complement_face }
    }

    /// Indices of the generators not in the prime.
    pub fn complement_face(&self) -> &BTreeSet<usize> {
        &self.complement_face
    }

    /// Prime inclusion `self ⊆ other`, i.e. reverse inclusion of faces.
    pub fn is_subset_of(&self, other: &PrimeIdeal) -> bool {
        self.complement_face.is_superset(&other.complement_face)
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{{")?;
        for (k, i) in self.complement_face.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl AffineMonoid {
    pub fn new(ambient: usize, generators: Vec<IntVector>) -> Self {
        for g in &generators {
            assert_eq!(g.len(), ambient, "generator {g} not in Z^{ambient}");
        }
        let mut generators: Vec<IntVector> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        generators.sort();
        generators.dedup();
        AffineMonoid { ambient, generators, structure: OnceLock::new() }
    }

    /// Like [`AffineMonoid::new`], reporting wrongly sized generators.
    pub fn try_new(ambient: usize, generators: Vec<IntVector>) -> Result<Self, MonoidError> {
        if let Some(g) = generators.iter().find(|g| g.len() != ambient) {
            return Err(MonoidError::DimensionMismatch { expected: ambient, found: g.len() });
        }
        Ok(Self::new(ambient, generators))
    }

    /// `N^d`.
    pub fn free(d: usize) -> Self {
        Self::new(d, (0..d).map(|i| IntVector::unit(d, i)).collect())
    }

    /// `Z^d` as a monoid.
    pub fn lattice(d: usize) -> Self {
        let mut g: Vec<IntVector> = (0..d).map(|i| IntVector::unit(d, i)).collect();
        g.extend((0..d).map(|i| -&IntVector::unit(d, i)));
        Self::new(d, g)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    fn structure(&self) -> &Structure {
        self.structure.get_or_init(|| Arc::new(Structure::build(self.ambient, &self.generators)))
    }

    /// The cone `R>=0 S`.
    pub fn cone(&self) -> &Cone {
        &self.structure().cone
    }

    /// A functional vanishing on units and positive on every other element.
    pub fn grading(&self) -> &IntVector {
        &self.structure().grading
    }

    /// Nonnegative coefficients writing `x` in the generators, or `None` when
    /// `x` is not in the monoid.
    pub fn member(&self, x: &IntVector) -> Option<Vec<BigInt>> {
        assert_eq!(x.len(), self.ambient);
        let st = self.structure();
        if !st.group.contains(x) || !st.cone.contains(x) {
            return None;
        }
        let search = GradedSearch::new(&st.non_unit_vecs, &st.grading).expect("grading positive on non-units");
        let prune = |k: usize, r: &IntVector| st.suffix_cones[k].contains(r);
        let modulus = (!st.units.is_empty()).then_some(&st.unit_lattice);
        let part = search.solve(x, modulus, &prune)?;
        let mut coeffs = vec![BigInt::zero(); self.generators.len()];
        let mut rest = x.clone();
        for (k, c) in part.iter().enumerate() {
            let i = st.non_units[k];
            rest = rest.add_scaled(&-c, &self.generators[i]);
            coeffs[i] = c.clone();
        }
        if !st.units.is_empty() {
            let combo = st.unit_lattice.generator_combination(&rest).expect("remainder is a unit");
            let mut t = BigInt::zero();
            for (c, p) in combo.iter().zip(&st.unit_relation) {
                if c.is_negative() {
                    t = t.max((-c).div_ceil(p));
                }
            }
            for (j, &i) in st.units.iter().enumerate() {
                coeffs[i] = &combo[j] + &t * &st.unit_relation[j];
            }
        }
        Some(coeffs)
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        self.member(x).is_some()
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_monoid(&self, other: &AffineMonoid) -> bool {
        self.ambient == other.ambient && other.generators.iter().all(|g| self.contains(g))
    }

    /// Equality as subsets of `Z^d`, by mutual generator membership.
    pub fn same_monoid(&self, other: &AffineMonoid) -> bool {
        self.contains_monoid(other) && other.contains_monoid(self)
    }

    /// Whether `x` is invertible in the monoid.
    pub fn is_unit(&self, x: &IntVector) -> bool {
        self.structure().unit_lattice.contains(x)
    }

    pub fn unit_generators(&self) -> Vec<IntVector> {
        self.structure().units.iter().map(|&i| self.generators[i].clone()).collect()
    }

    /// The unit group `S ∩ (-S)`, generated by the unit generators.
    pub fn units(&self) -> AffineMonoid {
        AffineMonoid::new(self.ambient, self.unit_generators())
    }

    pub fn unit_lattice(&self) -> &Sublattice {
        &self.structure().unit_lattice
    }

    /// Generators of the maximal ideal `S \ S*` (as an ideal): the non-unit
    /// generators, in generator order.
    pub fn maximal_ideal(&self) -> Vec<IntVector> {
        let st = self.structure();
        let mut idx = st.non_units.clone();
        idx.sort();
        idx.into_iter().map(|i| self.generators[i].clone()).collect()
    }

    pub fn is_group(&self) -> bool {
        self.structure().non_units.is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.structure().units.is_empty()
    }

    /// All primes, from the empty prime (complement the whole monoid) down
    /// to the maximal ideal; ties are broken by face index set.
    pub fn primes(&self) -> Vec<PrimeIdeal> {
        let mut faces = face_index_sets(&self.generators, self.ambient);
        faces.reverse();
        faces.into_iter().map(PrimeIdeal::from_face).collect()
    }

    /// The face `S \ p` as a monoid.
    pub fn face_monoid(&self, p: &PrimeIdeal) -> AffineMonoid {
        AffineMonoid::new(self.ambient, p.complement_face.iter().map(|&i| self.generators[i].clone()).collect())
    }

    /// Whether `x` lies in the prime `p`.
    pub fn prime_contains(&self, p: &PrimeIdeal, x: &IntVector) -> bool {
        self.contains(x) && !self.face_monoid(p).contains(x)
    }

    /// `S + N(-f)`.
    pub fn localize(&self, f: &IntVector) -> Result<AffineMonoid, MonoidError> {
        if f.len() != self.ambient {
            return Err(MonoidError::DimensionMismatch { expected: self.ambient, found: f.len() });
        }
        if !self.contains(f) {
            return Err(MonoidError::NotAMember { element: f.to_string(), monoid: self.to_string() });
        }
        let mut g = self.generators.clone();
        g.push(-f);
        Ok(AffineMonoid::new(self.ambient, g))
    }

    /// `S + (-F)` for the complementary face `F` of `p`.
    pub fn localize_at_prime(&self, p: &PrimeIdeal) -> Result<AffineMonoid, MonoidError> {
        if !self.primes().contains(p) {
            return Err(MonoidError::InvalidPrime(p.to_string()));
        }
        let mut g = self.generators.clone();
        g.extend(p.complement_face.iter().map(|&i| -&self.generators[i]));
        Ok(AffineMonoid::new(self.ambient, g))
    }

    /// A relative-interior element of the face of `p`: the sum of its
    /// generators.
    pub fn face_element(&self, p: &PrimeIdeal) -> IntVector {
        p.complement_face.iter().fold(IntVector::zeros(self.ambient), |acc, &i| &acc + &self.generators[i])
    }

    /// The group `ZS`, with a Hermite basis.
    pub fn group_completion(&self) -> Sublattice {
        self.structure().group.clone()
    }

    /// `ZS ∩ R>=0 S`, generated by the Hilbert basis computed in coordinates
    /// of `ZS`.
    pub fn saturation(&self) -> AffineMonoid {
        if self.generators.is_empty() {
            return self.clone();
        }
        let group = &self.structure().group;
        let local: Vec<IntVector> =
            self.generators.iter().map(|g| group.coordinates(g).expect("generator in ZS")).collect();
        let gens = lattice_point_generators(&Cone::new(group.rank(), local));
        AffineMonoid::new(self.ambient, gens.iter().map(|y| group.from_coordinates(y)).collect())
    }

    /// An element of the saturation missing from `S`, if any.
    pub fn saturation_witness(&self) -> Option<IntVector> {
        self.saturation().generators.into_iter().find(|g| !self.contains(g))
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation_witness().is_none()
    }

    /// Non-unit generators that are not a sum of two non-units, one per
    /// class modulo units. For a pointed monoid this is the unique minimal
    /// generating set.
    pub fn irreducibles(&self) -> Vec<IntVector> {
        let st = self.structure();
        let mut idx = st.non_units.clone();
        idx.sort();
        let mut out: Vec<IntVector> = Vec::new();
        for &i in &idx {
            let g = &self.generators[i];
            let reducible = idx.iter().any(|&j| {
                let rest = g - &self.generators[j];
                j != i && !self.is_unit(&rest) && self.contains(&rest)
            });
            if !reducible && !out.iter().any(|h| self.is_unit(&(g - h))) {
                out.push(g.clone());
            }
        }
        out
    }

    /// `S \ {h}` for an irreducible `h` of a pointed monoid, generated by the
    /// other irreducibles, `2h`, `3h` and `h + g` for every other irreducible
    /// `g`.
    pub fn remove_irreducible(&self, h: &IntVector) -> Result<AffineMonoid, MonoidError> {
        if !self.is_pointed() {
            return Err(MonoidError::HasUnits);
        }
        let irr = self.irreducibles();
        if !irr.contains(h) {
            return Err(MonoidError::NotIrreducible(h.to_string()));
        }
        let mut gens: Vec<IntVector> = irr.iter().filter(|g| *g != h).cloned().collect();
        gens.push(h.scale(&BigInt::from(2)));
        gens.push(h.scale(&BigInt::from(3)));
        gens.extend(irr.iter().filter(|g| *g != h).map(|g| g + h));
        Ok(AffineMonoid::new(self.ambient, gens))
    }

    /// `S ∩ T`, generated by the images of the Hilbert basis of the kernel
    /// monoid `{(x, y) in N^m x N^n : G_S x = G_T y}`.
    pub fn intersection(&self, other: &AffineMonoid) -> AffineMonoid {
        assert_eq!(self.ambient, other.ambient);
        if self.contains_monoid(other) {
            return other.clone();
        }
        if other.contains_monoid(self) {
            return self.clone();
        }
        let (ga, gb) = (&self.generators, &other.generators);
        let n = ga.len() + gb.len();
        let mut cols = ga.clone();
        cols.extend(gb.iter().map(|g| -g));
        let mut span = Vec::new();
        for k in kernel_basis(&IntMatrix::from_cols(&cols, self.ambient)) {
            span.push(-&k);
            span.push(k);
        }
        let orthant = Cone::new(n, (0..n).map(|i| IntVector::unit(n, i)).collect());
        let meet = Cone::new(n, span).intersection(&orthant);
        let hb = hilbert_basis(&meet).expect("cone inside the orthant is pointed");
        let gens = hb
            .iter()
            .map(|x| (0..ga.len()).fold(IntVector::zeros(self.ambient), |acc, i| acc.add_scaled(&x[i], &ga[i])))
            .collect();
        AffineMonoid::new(self.ambient, gens)
    }

    /// `S x T` in `Z^(d + e)`.
    pub fn direct_sum(&self, other: &AffineMonoid) -> AffineMonoid {
        let (d, e) = (self.ambient, other.ambient);
        let mut gens: Vec<IntVector> = self.generators.iter().map(|g| g.concat(&IntVector::zeros(e))).collect();
        gens.extend(other.generators.iter().map(|g| IntVector::zeros(d).concat(g)));
        AffineMonoid::new(d + e, gens)
    }

    /// The image monoid under a lattice map `Z^d -> Z^e` given as an
    /// `e x d` matrix.
    pub fn image(&self, map: &IntMatrix) -> AffineMonoid {
        assert_eq!(map.cols(), self.ambient);
        AffineMonoid::new(map.rows(), self.generators.iter().map(|g| map.mul_vec(g)).collect())
    }
}

impl Structure {
    fn build(ambient: usize, gens: &[IntVector]) -> Structure {
        let cone = Cone::new(ambient, gens.to_vec());
        let grading = cone.facet_normals().iter().fold(IntVector::zeros(ambient), |acc, u| &acc + u);
        let (units, mut non_units): (Vec<usize>, Vec<usize>) =
            (0..gens.len()).partition(|&i| grading.dot(&gens[i]).is_zero());
        non_units.sort_by(|&a, &b| grading.dot(&gens[b]).cmp(&grading.dot(&gens[a])).then(a.cmp(&b)));
        let unit_vecs: Vec<IntVector> = units.iter().map(|&i| gens[i].clone()).collect();
        let non_unit_vecs: Vec<IntVector> = non_units.iter().map(|&i| gens[i].clone()).collect();
        let suffix_cones = (0..non_units.len())
            .map(|k| {
                let mut g = non_unit_vecs[k..].to_vec();
                g.extend(unit_vecs.iter().cloned());
                Cone::new(ambient, g)
            })
            .collect();
        Structure {
            grading,
            unit_lattice: Sublattice::generated_by(&unit_vecs, ambient),
            group: Sublattice::generated_by(gens, ambient),
            unit_relation: positive_relation(&unit_vecs, ambient),
            cone,
            units,
            non_units,
            non_unit_vecs,
            suffix_cones,
        }
    }
}

/// A relation `sum p_i v_i = 0` with every `p_i > 0`, for vectors spanning a
/// cone that is a linear subspace.
///
/// Each `v_i` gets a relation `v_i + sum c_j v_j = 0` with `c >= 0`: from
/// `-v_i` itself when it is listed, otherwise from a linearly independent
/// subset whose cone contains `-v_i`. The sum of these is positive.
fn positive_relation(vecs: &[IntVector], ambient: usize) -> Vec<BigInt> {
    let m = vecs.len();
    let rank = IntMatrix::from_cols(vecs, ambient).rank();
    let mut total = vec![BigInt::zero(); m];
    for i in 0..m {
        let neg = -&vecs[i];
        let rel = match vecs.iter().position(|w| *w == neg) {
            Some(j) => {
                let mut r = vec![BigInt::zero(); m];
                r[i] += 1;
                r[j] += 1;
                r
            }
            None => simplicial_relation(vecs, ambient, i, rank).expect("unit generators span a group"),
        };
        for (t, c) in total.iter_mut().zip(rel) {
            *t += c;
        }
    }
    total
}

fn simplicial_relation(vecs: &[IntVector], ambient: usize, i: usize, rank: usize) -> Option<Vec<BigInt>> {
    let others: Vec<usize> = (0..vecs.len()).filter(|&j| j != i).collect();
    for size in 1..=rank {
        let mut pick = Vec::with_capacity(size);
        if let Some(r) = subsets(&others, size, 0, &mut pick, &mut |b: &[usize]| {
            let mut cols: Vec<IntVector> = b.iter().map(|&j| vecs[j].clone()).collect();
            cols.push(vecs[i].clone());
            let ker = kernel_basis(&IntMatrix::from_cols(&cols, ambient));
            let [k] = &ker[..] else { return None };
            let k = if k[size].is_negative() { -k } else { k.clone() };
            if k[size].is_zero() || k.iter().any(|c| c.is_negative()) {
                return None;
            }
            let mut r = vec![BigInt::zero(); vecs.len()];
            for (t, &j) in b.iter().enumerate() {
                r[j] += &k[t];
            }
            r[i] += &k[size];
            Some(r)
        }) {
            return Some(r);
        }
    }
    None
}

fn subsets<R>(
    items: &[usize],
    size: usize,
    from: usize,
    pick: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> Option<R>,
) -> Option<R> {
    if pick.len() == size {
        return visit(pick);
    }
    for k in from..items.len() {
        pick.push(items[k]);
        let found = subsets(items, size, k + 1, pick, visit);
        pick.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

impl PartialEq for AffineMonoid {
    /// Equality of the stored generator lists; use
    /// [`AffineMonoid::same_monoid`] for equality as sets.
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.generators == other.generators
    }
}

impl Eq for AffineMonoid {}

impl fmt::Debug for AffineMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineMonoid{self}")
    }
}

impl fmt::Display for AffineMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivec;

    fn cusp() -> AffineMonoid {
        AffineMonoid::new(1, vec![ivec![2], ivec![3]])
    }

    fn half_plane() -> AffineMonoid {
        AffineMonoid::new(2, vec![ivec![1, 0], ivec![-1, 0], ivec![0, 1]])
    }

    #[test]
    fn membership_with_witness() {
        let s = cusp();
        for (x, expect) in [(0, true), (1, false), (2, true), (5, true), (7, true), (-2, false)] {
            let m = s.member(&ivec![x]);
            assert_eq!(m.is_some(), expect, "{x}");
            if let Some(c) = m {
                assert!(c.iter().all(|c| !c.is_negative()));
                assert_eq!(&c[0] * 2 + &c[1] * 3, BigInt::from(x));
            }
        }
    }

    #[test]
    fn membership_through_units() {
        let s = half_plane();
        let x = ivec![-5, 2];
        let c = s.member(&x).unwrap();
        let sum = s.generators().iter().zip(&c).fold(IntVector::zeros(2), |a, (g, c)| a.add_scaled(c, g));
        assert_eq!(sum, x);
        assert!(c.iter().all(|c| !c.is_negative()));
        assert!(!s.contains(&ivec![0, -1]));
    }

    #[test]
    fn units_and_maximal_ideal() {
        assert!(AffineMonoid::free(2).units().generators().is_empty());
        let s = half_plane();
        assert_eq!(s.unit_generators(), vec![ivec![-1, 0], ivec![1, 0]]);
        assert_eq!(s.maximal_ideal(), vec![ivec![0, 1]]);
        let z = AffineMonoid::lattice(1);
        assert!(z.is_group());
        assert!(z.maximal_ideal().is_empty());
        assert_eq!(cusp().maximal_ideal(), vec![ivec![2], ivec![3]]);
    }

    #[test]
    fn prime_counts() {
        assert_eq!(AffineMonoid::free(1).primes().len(), 2);
        assert_eq!(AffineMonoid::free(2).primes().len(), 4);
        assert_eq!(cusp().primes().len(), 2);
        assert_eq!(AffineMonoid::lattice(2).primes().len(), 1);
        assert_eq!(half_plane().primes().len(), 2);
        let primes = AffineMonoid::free(2).primes();
        assert!(primes[0].complement_face().len() == 2);
        assert!(primes[3].complement_face().is_empty());
    }

    #[test]
    fn localizations() {
        let n = AffineMonoid::free(1);
        assert!(n.localize(&ivec![1]).unwrap().same_monoid(&AffineMonoid::lattice(1)));
        let n2 = AffineMonoid::free(2);
        let zn = n2.localize(&ivec![1, 0]).unwrap();
        assert!(zn.same_monoid(&half_plane()));
        assert!(n2.localize(&ivec![0, 0]).unwrap().same_monoid(&n2));
        assert!(matches!(n2.localize(&ivec![-1, 0]), Err(MonoidError::NotAMember { .. })));
        let primes = n2.primes();
        assert!(n2.localize_at_prime(primes.last().unwrap()).unwrap().same_monoid(&n2));
        assert!(n2.localize_at_prime(&primes[0]).unwrap().same_monoid(&AffineMonoid::lattice(2)));
        let bogus = PrimeIdeal::from_face([0usize, 1, 2].into_iter().collect());
        assert!(n2.localize_at_prime(&bogus).is_err());
    }

    #[test]
    fn group_completions() {
        assert_eq!(cusp().group_completion().basis(), &[ivec![1]]);
        let even = AffineMonoid::new(2, vec![ivec![2, 0], ivec![0, 2]]);
        let g = even.group_completion();
        assert_eq!(g.rank(), 2);
        assert!(!g.contains(&ivec![1, 0]));
    }

    #[test]
    fn saturations() {
        let sat = cusp().saturation();
        assert!(sat.same_monoid(&AffineMonoid::free(1)));
        assert_eq!(cusp().saturation_witness(), Some(ivec![1]));
        assert!(!cusp().is_saturated());
        assert!(AffineMonoid::free(2).is_saturated());
        let s = AffineMonoid::new(2, vec![ivec![1, 0], ivec![1, 1], ivec![1, 3]]);
        assert_eq!(s.saturation().generators(), &[ivec![1, 0], ivec![1, 1], ivec![1, 2], ivec![1, 3]]);
        assert!(s.saturation().is_saturated());
        let even = AffineMonoid::new(2, vec![ivec![2, 0], ivec![0, 2]]);
        assert!(even.is_saturated());
    }

    #[test]
    fn intersections() {
        let n2 = AffineMonoid::free(2);
        let other = AffineMonoid::new(2, vec![ivec![-1, 1], ivec![1, 1]]);
        let meet = n2.intersection(&other);
        assert!(meet.same_monoid(&AffineMonoid::new(2, vec![ivec![0, 2], ivec![1, 1]])));
        let wedge = AffineMonoid::new(2, vec![ivec![-1, 0], ivec![-1, 1]]);
        assert!(n2.intersection(&wedge).generators().is_empty());
        let a = AffineMonoid::new(1, vec![ivec![2]]);
        let b = AffineMonoid::new(1, vec![ivec![3]]);
        assert!(a.intersection(&b).same_monoid(&AffineMonoid::new(1, vec![ivec![6]])));
        let sum = a.direct_sum(&b);
        assert_eq!(sum.generators(), &[ivec![0, 3], ivec![2, 0]]);
    }

    #[test]
    fn irreducibles_and_removal() {
        let s = AffineMonoid::new(1, vec![ivec![2], ivec![3], ivec![4], ivec![5]]);
        assert_eq!(s.irreducibles(), vec![ivec![2], ivec![3]]);
        let n = AffineMonoid::free(1);
        let cusp_again = n.remove_irreducible(&ivec![1]).unwrap();
        assert!(cusp_again.same_monoid(&cusp()));
        assert!(half_plane().remove_irreducible(&ivec![0, 1]).is_err());
        let n2 = AffineMonoid::free(2);
        let smaller = n2.remove_irreducible(&ivec![1, 0]).unwrap();
        assert!(!smaller.contains(&ivec![1, 0]));
        assert!(smaller.contains(&ivec![1, 1]) && smaller.contains(&ivec![2, 0]) && smaller.contains(&ivec![0, 1]));
        assert!(smaller.saturation().same_monoid(&n2));
    }
}
