use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::SpaceError;
use crate::lattice::{IntMatrix, IntVector};
use crate::monoid::AffineMonoid;

/// A monoided space on a finite poset.
///
/// `p <= q` means `p` is a generization of `q`; the open sets are the
/// down-sets. For every pair `p <= q` there is a lattice map
/// `stalk(q) -> stalk(p)`, stored as a matrix with `ambient(p)` rows and
/// `ambient(q)` columns. Maps for covering pairs are supplied, the others
/// are their composites, and all chains are checked to compose to the same
/// map on the stalk.
#[derive(Clone, Debug)]
pub struct MonoidedSpace {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    stalks: Vec<AffineMonoid>,
    /// `(q, p) -> map` for every `p < q`
    maps: BTreeMap<(usize, usize), IntMatrix>,
}

impl MonoidedSpace {
    /// `order` lists pairs `(p, q)` with `p <= q` (the reflexive-transitive
    /// closure is taken); `gen_maps` is keyed by `(q, p)` and must contain
    /// every covering pair. Maps for non-covering pairs are allowed and must
    /// agree with the composites.
    pub fn new(
        names: Vec<String>,
        order: &[(usize, usize)],
        stalks: Vec<AffineMonoid>,
        gen_maps: BTreeMap<(usize, usize), IntMatrix>,
    ) -> Result<Self, SpaceError> {
        let n = names.len();
        if stalks.len() != n {
            return Err(SpaceError::StalkCount { points: n, stalks: stalks.len() });
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name) {
                return Err(SpaceError::DuplicatePoint(name.clone()));
            }
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(p, q) in order {
            if p >= n || q >= n {
                return Err(SpaceError::UnknownPoint(format!("#{}", p.max(q))));
            }
            leq[p][q] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for p in 0..n {
            for q in p + 1..n {
                if leq[p][q] && leq[q][p] {
                    return Err(SpaceError::NotAPartialOrder(format!(
                        "{} and {} lie below each other",
                        names[p], names[q]
                    )));
                }
            }
        }
        let mut space = MonoidedSpace { names, leq, stalks, maps: BTreeMap::new() };
        for (&(q, p), m) in &gen_maps {
            if p >= n || q >= n {
                return Err(SpaceError::UnknownPoint(format!("#{}", p.max(q))));
            }
            if p == q || !space.leq[p][q] {
                return Err(space.bad_map(q, p, "points are not comparable"));
            }
            space.check_map(q, p, m)?;
        }
        for (p, q) in space.covers() {
            if !gen_maps.contains_key(&(q, p)) {
                return Err(SpaceError::MissingGenMap { from: space.names[q].clone(), to: space.names[p].clone() });
            }
        }
        // composites, shortest gaps first
        let mut pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|p| (0..n).map(move |q| (p, q))).filter(|&(p, q)| p != q && space.leq[p][q]).collect();
        pairs.sort_by_key(|&(p, q)| (space.interval(p, q).len(), p, q));
        for (p, q) in pairs {
            let mut candidates: Vec<IntMatrix> = Vec::new();
            if let Some(m) = gen_maps.get(&(q, p)) {
                candidates.push(m.clone());
            }
            for r in space.interval(p, q) {
                if r != p && r != q {
                    let via = &space.maps[&(r, p)] * &space.maps[&(q, r)];
                    candidates.push(via);
                }
            }
            let first = candidates.first().cloned().expect("covering pairs have maps");
            let gens = space.stalks[q].generators().to_vec();
            for other in &candidates[1..] {
                if gens.iter().any(|g| first.mul_vec(g) != other.mul_vec(g)) {
                    return Err(SpaceError::InconsistentComposite {
                        from: space.names[q].clone(),
                        to: space.names[p].clone(),
                    });
                }
            }
            space.maps.insert((q, p), first);
        }
        Ok(space)
    }

    fn bad_map(&self, q: usize, p: usize, reason: &str) -> SpaceError {
        SpaceError::BadGenMap { from: self.names[q].clone(), to: self.names[p].clone(), reason: reason.into() }
    }

    fn check_map(&self, q: usize, p: usize, m: &IntMatrix) -> Result<(), SpaceError> {
        let (sq, sp) = (&self.stalks[q], &self.stalks[p]);
        if m.rows() != sp.ambient() || m.cols() != sq.ambient() {
            return Err(self.bad_map(q, p, &format!("expected a {}x{} matrix", sp.ambient(), sq.ambient())));
        }
        if let Some(g) = sq.generators().iter().find(|g| !sp.contains(&m.mul_vec(g))) {
            return Err(self.bad_map(q, p, &format!("image of {g} is not in the target stalk")));
        }
        let basis = sq.group_completion().basis().to_vec();
        let images: Vec<IntVector> = basis.iter().map(|b| m.mul_vec(b)).collect();
        if !images.is_empty() && IntMatrix::from_rows(&images, sp.ambient()).rank() < basis.len() {
            return Err(self.bad_map(q, p, "not injective on the stalk"));
        }
        Ok(())
    }

    /// Points `r` with `p <= r <= q`.
    fn interval(&self, p: usize, q: usize) -> Vec<usize> {
        (0..self.len()).filter(|&r| self.leq[p][r] && self.leq[r][q]).collect()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, p: usize) -> &str {
        &self.names[p]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.leq[p][q]
    }

    pub fn stalk(&self, p: usize) -> &AffineMonoid {
        &self.stalks[p]
    }

    pub fn stalks(&self) -> &[AffineMonoid] {
        &self.stalks
    }

    /// The map `stalk(q) -> stalk(p)` for `p <= q`.
    pub fn gen_map(&self, q: usize, p: usize) -> IntMatrix {
        assert!(self.leq[p][q], "{} is not below {}", self.names[p], self.names[q]);
        if p == q {
            IntMatrix::identity(self.stalks[p].ambient())
        } else {
            self.maps[&(q, p)].clone()
        }
    }

    /// Covering pairs `(p, q)`, `p < q` with nothing strictly between, in
    /// index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if p != q && self.leq[p][q] && self.interval(p, q).len() == 2 {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// The smallest open set containing `q`: all `p <= q`.
    pub fn minimal_open(&self, q: usize) -> BTreeSet<usize> {
        (0..self.len()).filter(|&p| self.leq[p][q]).collect()
    }

    pub fn up_set(&self, p: usize) -> BTreeSet<usize> {
        (0..self.len()).filter(|&q| self.leq[p][q]).collect()
    }

    pub fn is_open(&self, set: &BTreeSet<usize>) -> bool {
        set.iter().all(|&q| (0..self.len()).all(|p| !self.leq[p][q] || set.contains(&p)))
    }

    pub fn minimal_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| (0..self.len()).all(|q| q == p || !self.leq[q][p])).collect()
    }

    pub fn maximal_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| (0..self.len()).all(|q| q == p || !self.leq[p][q])).collect()
    }

    /// Maximal points of a subset.
    pub fn maximal_in(&self, set: &BTreeSet<usize>) -> Vec<usize> {
        set.iter().copied().filter(|&p| set.iter().all(|&q| q == p || !self.leq[p][q])).collect()
    }

    /// Connected components of the comparability graph restricted to `set`,
    /// each sorted, ordered by smallest element.
    pub fn components_of(&self, set: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut left: BTreeSet<usize> = set.clone();
        let mut out = Vec::new();
        while let Some(&start) = left.iter().next() {
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            left.remove(&start);
            while let Some(p) = stack.pop() {
                comp.insert(p);
                let next: Vec<usize> = left.iter().copied().filter(|&q| self.leq[p][q] || self.leq[q][p]).collect();
                for q in next {
                    left.remove(&q);
                    stack.push(q);
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<BTreeSet<usize>> {
        self.components_of(&(0..self.len()).collect())
    }

    /// The induced space on `keep`, with the maps of the remaining
    /// comparable pairs.
    pub fn restrict(&self, keep: &BTreeSet<usize>) -> MonoidedSpace {
        let idx: Vec<usize> = keep.iter().copied().collect();
        let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut order = Vec::new();
        let mut maps = BTreeMap::new();
        for &p in &idx {
            for &q in &idx {
                if p != q && self.leq[p][q] {
                    order.push((pos[&p], pos[&q]));
                    maps.insert((pos[&q], pos[&p]), self.maps[&(q, p)].clone());
                }
            }
        }
        MonoidedSpace::new(
            idx.iter().map(|&p| self.names[p].clone()).collect(),
            &order,
            idx.iter().map(|&p| self.stalks[p].clone()).collect(),
            maps,
        )
        .expect("restriction of a valid space is valid")
    }

    /// The space with the given points deleted.
    pub fn remove_points(&self, drop: &BTreeSet<usize>) -> MonoidedSpace {
        self.restrict(&(0..self.len()).filter(|p| !drop.contains(p)).collect())
    }

    /// The minimal open `↓q` as a space of its own.
    pub fn minimal_open_space(&self, q: usize) -> MonoidedSpace {
        self.restrict(&self.minimal_open(q))
    }

    /// Replaces every stalk by `f(point, stalk)`, keeping the maps. Fails
    /// when a map no longer sends the new stalks into each other.
    pub fn map_stalks(&self, f: impl Fn(usize, &AffineMonoid) -> AffineMonoid) -> Result<MonoidedSpace, SpaceError> {
        let stalks = (0..self.len()).map(|p| f(p, &self.stalks[p])).collect();
        MonoidedSpace::new(self.names.clone(), &self.order_pairs(), stalks, self.covering_maps())
    }

    /// The same space with the stalk at `p` replaced.
    pub fn replace_stalk(&self, p: usize, stalk: AffineMonoid) -> Result<MonoidedSpace, SpaceError> {
        self.map_stalks(|q, s| if q == p { stalk.clone() } else { s.clone() })
    }

    /// Covering pairs `(p, q)` as order data.
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        self.covers()
    }

    /// The maps of the covering pairs, keyed `(q, p)`.
    pub fn covering_maps(&self) -> BTreeMap<(usize, usize), IntMatrix> {
        self.covers().into_iter().map(|(p, q)| ((q, p), self.maps[&(q, p)].clone())).collect()
    }

    /// Whether there is a unique minimal point.
    pub fn has_generic_point(&self) -> bool {
        self.minimal_points().len() == 1
    }
}

impl fmt::Display for MonoidedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "monoided space with {} points", self.len())
    }
}
