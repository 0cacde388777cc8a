use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::AffineMonoid;
use crate::lattice::{saturated_span, smith_normal_form, unimodular_inverse, IntMatrix, IntVector, Sublattice};

/// Result of searching for isomorphisms between two affine monoids.
///
/// Each map is a unimodular matrix sending coordinates in the basis of
/// `ZS` to coordinates in the basis of `ZT` (see
/// [`AffineMonoid::group_completion`]). `exhaustive` is false when the unit
/// group is not saturated in `ZS` and only a bounded family of lifts was
/// tried.
#[derive(Clone, Debug)]
pub struct IsoSearch {
    pub maps: Vec<IntMatrix>,
    pub exhaustive: bool,
}

impl AffineMonoid {
    /// Monoid isomorphisms `self -> other`, at most `limit` of them.
    ///
    /// Units are split off: the pointed quotient `ZS / (ZS ∩ R S*)` carries
    /// the irreducibles, and isomorphisms of pointed monoids are bijections
    /// of irreducibles realized by a lattice isomorphism. When `S*` is
    /// saturated in `ZS`, `S` is the full preimage of its quotient and every
    /// quotient isomorphism lifts.
    pub fn isomorphisms(&self, other: &AffineMonoid, limit: usize) -> IsoSearch {
        let none = |exhaustive| IsoSearch { maps: Vec::new(), exhaustive };
        let (ga, gb) = (self.group_completion(), other.group_completion());
        let k = ga.rank();
        if k != gb.rank() || limit == 0 {
            return none(true);
        }
        let coords = |g: &Sublattice, v: &IntVector| g.coordinates(v).expect("element of ZS");
        let split_a = Split::new(&ga, &self.unit_generators(), k);
        let split_b = Split::new(&gb, &other.unit_generators(), k);
        if split_a.lin_rank != split_b.lin_rank || split_a.factors != split_b.factors {
            return none(true);
        }
        let u = split_a.lin_rank;
        let qa: Vec<IntVector> =
            self.maximal_ideal().iter().map(|g| split_a.to_split(&coords(&ga, g)).slice(u..k)).collect();
        let qb: Vec<IntVector> =
            other.maximal_ideal().iter().map(|g| split_b.to_split(&coords(&gb, g)).slice(u..k)).collect();
        let ha = AffineMonoid::new(k - u, qa).irreducibles();
        let hb = AffineMonoid::new(k - u, qb).irreducibles();
        if ha.len() != hb.len() {
            return none(true);
        }
        let saturated = split_a.factors.iter().all(|d| d.is_one());
        let quotient_maps = pointed_isomorphisms(&ha, &hb, k - u, if saturated { limit } else { usize::MAX });
        let mut maps = Vec::new();
        let accept = |phi: &IntMatrix| {
            let ok_fwd =
                self.generators().iter().all(|g| other.contains(&gb.from_coordinates(&phi.mul_vec(&coords(&ga, g)))));
            let inv = unimodular_inverse(phi);
            let ok_back =
                other.generators().iter().all(|g| self.contains(&ga.from_coordinates(&inv.mul_vec(&coords(&gb, g)))));
            ok_fwd && ok_back
        };
        for psi in &quotient_maps {
            if saturated {
                let split = block_diag(&IntMatrix::identity(u), psi);
                let phi = &(&split_b.from_split * &split) * &split_a.into_split;
                debug_assert!(accept(&phi));
                maps.push(phi);
            } else {
                let e = split_a.factors.last().cloned().unwrap_or_else(BigInt::one);
                for (a, x) in bounded_lifts(u, k - u, &e) {
                    let mut split = block_diag(&a, psi);
                    for i in 0..u {
                        for j in 0..k - u {
                            split[(i, u + j)] = x[i * (k - u) + j].clone();
                        }
                    }
                    let phi = &(&split_b.from_split * &split) * &split_a.into_split;
                    if accept(&phi) && !maps.contains(&phi) {
                        maps.push(phi);
                    }
                    if maps.len() >= limit {
                        break;
                    }
                }
            }
            if maps.len() >= limit {
                break;
            }
        }
        IsoSearch { maps, exhaustive: saturated }
    }

    /// Some isomorphism `self -> other`, if one is found.
    pub fn isomorphism_to(&self, other: &AffineMonoid) -> Option<IntMatrix> {
        self.isomorphisms(other, 1).maps.into_iter().next()
    }
}

/// A unimodular change of coordinates on `ZS` moving `ZS ∩ R S*` onto the
/// first coordinates, with the invariant factors of `S*` inside it.
struct Split {
    lin_rank: usize,
    factors: Vec<BigInt>,
    into_split: IntMatrix,
    from_split: IntMatrix,
}

impl Split {
    fn new(group: &Sublattice, units: &[IntVector], k: usize) -> Split {
        let local: Vec<IntVector> = units.iter().map(|g| group.coordinates(g).expect("unit in ZS")).collect();
        let lin = saturated_span(&local, k);
        let u = lin.rank();
        if u == 0 {
            return Split {
                lin_rank: 0,
                factors: Vec::new(),
                into_split: IntMatrix::identity(k),
                from_split: IntMatrix::identity(k),
            };
        }
        let snf = smith_normal_form(&lin.basis_matrix());
        let into_split = snf.u.clone();
        let from_split = snf.u_inv.clone();
        // invariant factors of S* inside the saturated lineality lattice
        let unit_coords: Vec<IntVector> = local.iter().map(|v| lin.coordinates(v).expect("unit in its span")).collect();
        let factors = if unit_coords.is_empty() {
            Vec::new()
        } else {
            smith_normal_form(&IntMatrix::from_cols(&unit_coords, u)).diagonal()
        };
        Split { lin_rank: u, factors, into_split, from_split }
    }

    fn to_split(&self, v: &IntVector) -> IntVector {
        self.into_split.mul_vec(v)
    }
}

/// Lattice automorphisms of `Z^r` mapping the set `ha` onto `hb`; `ha` must
/// span `Q^r`.
fn pointed_isomorphisms(ha: &[IntVector], hb: &[IntVector], r: usize, limit: usize) -> Vec<IntMatrix> {
    if r == 0 {
        return vec![IntMatrix::identity(0)];
    }
    let basis = independent_subset(ha, r);
    if basis.len() < r {
        return Vec::new();
    }
    let b = IntMatrix::from_cols(&basis.iter().map(|&i| ha[i].clone()).collect::<Vec<_>>(), r);
    let snf = smith_normal_form(&b);
    let diag = snf.diagonal();
    let target_set: std::collections::BTreeSet<&IntVector> = hb.iter().collect();
    let mut out = Vec::new();
    let mut choice: Vec<usize> = Vec::with_capacity(r);
    fn rec(choice: &mut Vec<usize>, r: usize, hb: &[IntVector], visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if choice.len() == r {
            return visit(choice);
        }
        for j in 0..hb.len() {
            if choice.contains(&j) {
                continue;
            }
            choice.push(j);
            let stop = rec(choice, r, hb, visit);
            choice.pop();
            if stop {
                return true;
            }
        }
        false
    }
    let mut visit = |c: &[usize]| -> bool {
        // phi = B' B^{-1} = (B' V D^{-1}) U
        let bp = IntMatrix::from_cols(&c.iter().map(|&j| hb[j].clone()).collect::<Vec<_>>(), r);
        let m = &bp * &snf.v;
        let mut scaled = IntMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                let (q, rem) = m[(i, j)].div_rem(&diag[j]);
                if !rem.is_zero() {
                    return false;
                }
                scaled[(i, j)] = q;
            }
        }
        let phi = &scaled * &snf.u;
        if !phi.determinant().abs().is_one() {
            return false;
        }
        let image: std::collections::BTreeSet<IntVector> = ha.iter().map(|h| phi.mul_vec(h)).collect();
        if image.len() == target_set.len() && image.iter().all(|v| target_set.contains(v)) {
            out.push(phi);
        }
        out.len() >= limit
    };
    rec(&mut choice, r, hb, &mut visit);
    out
}

/// Indices of a greedily chosen maximal linearly independent subset.
fn independent_subset(vs: &[IntVector], r: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..vs.len() {
        let mut rows: Vec<IntVector> = chosen.iter().map(|&j| vs[j].clone()).collect();
        rows.push(vs[i].clone());
        if IntMatrix::from_rows(&rows, r).rank() == rows.len() {
            chosen.push(i);
        }
        if chosen.len() == r {
            break;
        }
    }
    chosen
}

fn block_diag(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.rows() + b.rows();
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m[(i, j)] = a[(i, j)].clone();
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            m[(a.rows() + i, a.cols() + j)] = b[(i, j)].clone();
        }
    }
    m
}

/// Unit-part automorphisms with entries in `{-1, 0, 1}` together with shear
/// blocks with entries in `0..e`.
fn bounded_lifts(u: usize, q: usize, e: &BigInt) -> Vec<(IntMatrix, Vec<BigInt>)> {
    let mut autos = Vec::new();
    let cells = u * u;
    let mut digits = vec![-1i64; cells];
    loop {
        let rows: Vec<&[i64]> = digits.chunks(u).collect();
        let a = IntMatrix::from_i64_rows(&rows);
        if a.determinant().abs().is_one() {
            autos.push(a);
        }
        if !odometer(&mut digits, -1, 1) {
            break;
        }
    }
    let e = e.to_string().parse::<i64>().unwrap_or(1).clamp(1, 4);
    let mut shears = Vec::new();
    let mut s = vec![0i64; u * q];
    loop {
        shears.push(s.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        if !odometer(&mut s, 0, e - 1) {
            break;
        }
    }
    let mut out = Vec::new();
    for a in &autos {
        for x in &shears {
            out.push((a.clone(), x.clone()));
        }
    }
    out
}

fn odometer(d: &mut [i64], lo: i64, hi: i64) -> bool {
    for x in d.iter_mut() {
        if *x < hi {
            *x += 1;
            return true;
        }
        *x = lo;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivec;

    #[test]
    fn free_monoid_automorphisms() {
        let n2 = AffineMonoid::free(2);
        let isos = n2.isomorphisms(&n2, 10);
        assert_eq!(isos.maps.len(), 2);
        assert!(isos.exhaustive);
    }

    #[test]
    fn cusp_is_not_free() {
        let cusp = AffineMonoid::new(1, vec![ivec![2], ivec![3]]);
        assert!(cusp.isomorphism_to(&AffineMonoid::free(1)).is_none());
        let neg = AffineMonoid::new(1, vec![ivec![-2], ivec![-3]]);
        let phi = cusp.isomorphism_to(&neg).unwrap();
        assert_eq!(phi, IntMatrix::from_i64_rows(&[&[-1]]));
    }

    #[test]
    fn quadric_cone_vs_sublattice_presentation() {
        let a = AffineMonoid::new(2, vec![ivec![1, 0], ivec![1, 1], ivec![1, 2]]);
        let b = AffineMonoid::new(2, vec![ivec![2, 0], ivec![1, 1], ivec![0, 2]]);
        assert!(a.isomorphism_to(&b).is_some());
        assert!(a.isomorphism_to(&AffineMonoid::free(2)).is_none());
    }

    #[test]
    fn with_units() {
        let a = AffineMonoid::new(2, vec![ivec![1, 0], ivec![-1, 0], ivec![0, 1]]);
        let b = AffineMonoid::new(2, vec![ivec![0, 1], ivec![0, -1], ivec![1, 3]]);
        assert!(a.isomorphism_to(&b).is_some());
        assert!(a.isomorphism_to(&AffineMonoid::lattice(2)).is_none());
        assert!(AffineMonoid::lattice(2).isomorphism_to(&AffineMonoid::lattice(2)).is_some());
    }

    #[test]
    fn non_saturated_units() {
        let a = AffineMonoid::new(2, vec![ivec![2, 0], ivec![-2, 0], ivec![1, 1], ivec![0, 1]]);
        let search = a.isomorphisms(&a, 1);
        assert!(!search.exhaustive);
        assert_eq!(search.maps.len(), 1);
        let b = AffineMonoid::new(2, vec![ivec![1, 0], ivec![-1, 0], ivec![0, 1]]);
        assert!(a.isomorphism_to(&b).is_none());
    }
}
