use std::collections::BTreeSet;

use super::{MonoidedSpace, SpaceError};
use crate::lattice::{unimodular_inverse, IntMatrix, IntVector, Sublattice};
use crate::monoid::AffineMonoid;

/// Bound on stalk isomorphisms tried at an anchor point.
const ANCHOR_LIMIT: usize = 512;

/// An isomorphism of monoided spaces: a poset isomorphism together with
/// stalk isomorphisms (on coordinates of the stalk groups, see
/// [`AffineMonoid::isomorphisms`]) commuting with the maps.
#[derive(Clone, Debug)]
pub struct SpaceIsomorphism {
    pub point_map: Vec<usize>,
    pub stalk_maps: Vec<IntMatrix>,
}

pub fn iso_check(x: &MonoidedSpace, y: &MonoidedSpace) -> bool {
    find_isomorphism(x, y).is_some()
}

/// Searches poset isomorphisms (respecting cheap stalk invariants) and, for
/// each, stalk isomorphisms propagated from an anchor point per connected
/// component.
pub fn find_isomorphism(x: &MonoidedSpace, y: &MonoidedSpace) -> Option<SpaceIsomorphism> {
    let n = x.len();
    if n != y.len() {
        return None;
    }
    let (ix, iy): (Vec<Invariant>, Vec<Invariant>) = (invariants(x), invariants(y));
    let mut sx = ix.clone();
    let mut sy = iy.clone();
    sx.sort();
    sy.sort();
    if sx != sy {
        return None;
    }
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    let mut found = None;
    poset_search(x, y, &ix, &iy, 0, &mut assign, &mut used, &mut |pi| {
        if let Some(maps) = stalk_isomorphisms(x, y, pi) {
            found = Some(SpaceIsomorphism { point_map: pi.to_vec(), stalk_maps: maps });
            true
        } else {
            false
        }
    });
    found
}

type Invariant = (usize, usize, usize, usize, usize, usize);

fn invariants(x: &MonoidedSpace) -> Vec<Invariant> {
    (0..x.len())
        .map(|p| {
            let s = x.stalk(p);
            (
                x.minimal_open(p).len(),
                x.up_set(p).len(),
                s.group_completion().rank(),
                s.unit_lattice().rank(),
                s.irreducibles().len(),
                s.is_saturated() as usize,
            )
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn poset_search(
    x: &MonoidedSpace,
    y: &MonoidedSpace,
    ix: &[Invariant],
    iy: &[Invariant],
    p: usize,
    assign: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let n = x.len();
    if p == n {
        let pi: Vec<usize> = assign.iter().map(|a| a.expect("complete")).collect();
        return visit(&pi);
    }
    for q in 0..n {
        if used[q] || ix[p] != iy[q] {
            continue;
        }
        let consistent = (0..p).all(|r| {
            let s = assign[r].expect("assigned");
            x.leq(r, p) == y.leq(s, q) && x.leq(p, r) == y.leq(q, s)
        });
        if !consistent {
            continue;
        }
        assign[p] = Some(q);
        used[q] = true;
        if poset_search(x, y, ix, iy, p + 1, assign, used, visit) {
            return true;
        }
        assign[p] = None;
        used[q] = false;
    }
    false
}

/// Stalk maps for a fixed poset isomorphism `pi`, or `None`.
fn stalk_isomorphisms(x: &MonoidedSpace, y: &MonoidedSpace, pi: &[usize]) -> Option<Vec<IntMatrix>> {
    let n = x.len();
    let gx: Vec<Sublattice> = (0..n).map(|p| x.stalk(p).group_completion()).collect();
    let gy: Vec<Sublattice> = (0..n).map(|p| y.stalk(pi[p]).group_completion()).collect();
    let ctx = Ctx { x, y, pi, gx: &gx, gy: &gy };
    let mut maps: Vec<Option<IntMatrix>> = vec![None; n];
    for comp in x.components() {
        // anchor: a maximal point with the fewest units, then fewest generators
        let anchor = x
            .maximal_in(&comp)
            .into_iter()
            .min_by_key(|&p| (x.stalk(p).unit_lattice().rank(), x.stalk(p).generators().len(), p))
            .expect("nonempty component");
        let order = hasse_bfs(x, &comp, anchor);
        if !ctx.extend(&order, 0, &mut maps) {
            return None;
        }
    }
    Some(maps.into_iter().map(|m| m.expect("assigned")).collect())
}

/// Points of `comp` in breadth-first order over the Hasse diagram.
fn hasse_bfs(x: &MonoidedSpace, comp: &BTreeSet<usize>, start: usize) -> Vec<usize> {
    let covers = x.covers();
    let mut order = vec![start];
    let mut seen: BTreeSet<usize> = [start].into_iter().collect();
    let mut i = 0;
    while i < order.len() {
        let p = order[i];
        for &(a, b) in &covers {
            let next = if a == p {
                b
            } else if b == p {
                a
            } else {
                continue;
            };
            if comp.contains(&next) && seen.insert(next) {
                order.push(next);
            }
        }
        i += 1;
    }
    order
}

struct Ctx<'a> {
    x: &'a MonoidedSpace,
    y: &'a MonoidedSpace,
    pi: &'a [usize],
    gx: &'a [Sublattice],
    gy: &'a [Sublattice],
}

impl Ctx<'_> {
    fn extend(&self, order: &[usize], k: usize, maps: &mut Vec<Option<IntMatrix>>) -> bool {
        if k == order.len() {
            return true;
        }
        let p = order[k];
        for cand in self.candidates(p, maps) {
            if self.is_stalk_iso(p, &cand) && self.commutes_with_assigned(p, &cand, maps) {
                maps[p] = Some(cand);
                if self.extend(order, k + 1, maps) {
                    return true;
                }
                maps[p] = None;
            }
        }
        false
    }

    /// A forced map when some assigned neighbour determines `φ_p`, else all
    /// stalk isomorphisms at `p` up to the anchor bound.
    fn candidates(&self, p: usize, maps: &[Option<IntMatrix>]) -> Vec<IntMatrix> {
        let n = self.x.len();
        for r in 0..n {
            let Some(phi_r) = &maps[r] else { continue };
            if self.x.leq(r, p) && r != p {
                if let Some(m) = self.push_up(r, p, phi_r) {
                    return vec![m];
                }
                return Vec::new();
            }
            if self.x.leq(p, r) && r != p {
                if let Some(m) = self.push_down(r, p, phi_r) {
                    return vec![m];
                }
            }
        }
        self.x.stalk(p).isomorphisms(self.y.stalk(self.pi[p]), ANCHOR_LIMIT).maps
    }

    /// `φ_q` from `φ_p` for `p < q`: `ρ'^{-1} φ_p ρ` on the basis of `G_q`.
    fn push_up(&self, p: usize, q: usize, phi_p: &IntMatrix) -> Option<IntMatrix> {
        let rho = self.x.gen_map(q, p);
        let rho_y = self.y.gen_map(self.pi[q], self.pi[p]);
        let target_cols: Vec<IntVector> = self.gy[q].basis().iter().map(|b| rho_y.mul_vec(b)).collect();
        let target = Sublattice::generated_by(&target_cols, self.y.stalk(self.pi[p]).ambient());
        let k = self.gx[q].rank();
        let mut cols = Vec::with_capacity(k);
        for b in self.gx[q].basis() {
            let c = self.gx[p].coordinates(&rho.mul_vec(b))?;
            let z = self.gy[p].from_coordinates(&phi_p.mul_vec(&c));
            cols.push(target.generator_combination(&z)?);
        }
        Some(IntMatrix::from_cols(&cols, k))
    }

    /// `φ_p` from `φ_q` for `p < q` when `ρ(G_q) = G_p`.
    fn push_down(&self, q: usize, p: usize, phi_q: &IntMatrix) -> Option<IntMatrix> {
        let rho = self.x.gen_map(q, p);
        let rho_y = self.y.gen_map(self.pi[q], self.pi[p]);
        let image_cols: Vec<IntVector> = self.gx[q].basis().iter().map(|b| rho.mul_vec(b)).collect();
        let image = Sublattice::generated_by(&image_cols, self.x.stalk(p).ambient());
        if !image.same_as(&self.gx[p]) {
            return None;
        }
        let k = self.gx[p].rank();
        let mut cols = Vec::with_capacity(k);
        for b in self.gx[p].basis() {
            let w = image.generator_combination(b)?;
            let z = rho_y.mul_vec(&self.gy[q].from_coordinates(&phi_q.mul_vec(&w)));
            cols.push(self.gy[p].coordinates(&z)?);
        }
        Some(IntMatrix::from_cols(&cols, k))
    }

    fn is_stalk_iso(&self, p: usize, phi: &IntMatrix) -> bool {
        let (sx, sy) = (self.x.stalk(p), self.y.stalk(self.pi[p]));
        if phi.rows() != self.gy[p].rank() || phi.cols() != self.gx[p].rank() || !phi.is_unimodular() {
            return false;
        }
        let inv = unimodular_inverse(phi);
        let fwd = |v: &IntVector| self.gy[p].from_coordinates(&phi.mul_vec(&self.gx[p].coordinates(v).expect("in ZS")));
        let back =
            |v: &IntVector| self.gx[p].from_coordinates(&inv.mul_vec(&self.gy[p].coordinates(v).expect("in ZT")));
        sx.generators().iter().all(|g| sy.contains(&fwd(g))) && sy.generators().iter().all(|g| sx.contains(&back(g)))
    }

    fn commutes_with_assigned(&self, p: usize, phi_p: &IntMatrix, maps: &[Option<IntMatrix>]) -> bool {
        (0..self.x.len()).all(|r| match &maps[r] {
            None => true,
            Some(phi_r) if self.x.leq(r, p) => self.square_commutes(p, r, phi_p, phi_r),
            Some(phi_r) if self.x.leq(p, r) => self.square_commutes(r, p, phi_r, phi_p),
            Some(_) => true,
        })
    }

    /// `φ_p ρ = ρ' φ_q` on `G_q`, for `p <= q`.
    fn square_commutes(&self, q: usize, p: usize, phi_q: &IntMatrix, phi_p: &IntMatrix) -> bool {
        let rho = self.x.gen_map(q, p);
        let rho_y = self.y.gen_map(self.pi[q], self.pi[p]);
        self.gx[q].basis().iter().all(|b| {
            let Some(c) = self.gx[p].coordinates(&rho.mul_vec(b)) else { return false };
            let left = self.gy[p].from_coordinates(&phi_p.mul_vec(&c));
            let cq = self.gx[q].coordinates(b).expect("basis vector");
            let right = rho_y.mul_vec(&self.gy[q].from_coordinates(&phi_q.mul_vec(&cq)));
            left == right
        })
    }
}

/// A lattice map between two affine monoids.
#[derive(Clone, Debug)]
pub struct MonoidMorphismData {
    pub source: AffineMonoid,
    pub target: AffineMonoid,
    /// `target.ambient() x source.ambient()`
    pub map: IntMatrix,
}

/// Whether the morphism sends non-units to non-units. Checking the
/// generators suffices: if an image of a sum is a unit, so is the image of
/// each summand.
pub fn is_local_hom(phi: &MonoidMorphismData) -> Result<bool, SpaceError> {
    let (s, t, m) = (&phi.source, &phi.target, &phi.map);
    if m.rows() != t.ambient() || m.cols() != s.ambient() {
        return Err(SpaceError::IllFormedMorphism(format!(
            "expected a {}x{} matrix, got {}x{}",
            t.ambient(),
            s.ambient(),
            m.rows(),
            m.cols()
        )));
    }
    if let Some(g) = s.generators().iter().find(|g| !t.contains(&m.mul_vec(g))) {
        return Err(SpaceError::IllFormedMorphism(format!("image of {g} is not in the target")));
    }
    Ok(s.maximal_ideal().iter().all(|g| !t.is_unit(&m.mul_vec(g))))
}
