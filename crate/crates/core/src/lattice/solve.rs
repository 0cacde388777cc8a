use std::cell::RefCell;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{IntVector, LatticeError, Sublattice};

/// Finds `x` in `N^n` with `sum x_i * generators[i] == v`.
///
/// `grading` must be strictly positive on every nonzero generator; it bounds
/// each multiplicity by `<grading, v> / <grading, g_i>`, so the search is
/// exhaustive. Zero generators always get multiplicity zero.
pub fn solve_nonneg(
    generators: &[IntVector],
    v: &IntVector,
    grading: &IntVector,
) -> Result<Option<Vec<BigInt>>, LatticeError> {
    let search = GradedSearch::new(generators, grading)?;
    Ok(search.solve(v, None, &|_, _| true))
}

/// Grading-bounded depth-first search over nonnegative multiplicities.
///
/// Optionally the target only needs to be hit modulo a sublattice on which
/// the grading vanishes (the unit group of a monoid), and a caller-supplied
/// feasibility test may prune partial assignments: `prune(k, r)` must return
/// `false` only when `r` is certainly not reachable from generators `k..`.
pub struct GradedSearch<'a> {
    generators: Vec<&'a IntVector>,
    original_index: Vec<usize>,
    total: usize,
    grading: &'a IntVector,
    grades: Vec<BigInt>,
}

impl<'a> GradedSearch<'a> {
    pub fn new(generators: &'a [IntVector], grading: &'a IntVector) -> Result<Self, LatticeError> {
        let mut gens = Vec::new();
        let mut idx = Vec::new();
        let mut grades = Vec::new();
        for (i, g) in generators.iter().enumerate() {
            if g.len() != grading.len() {
                return Err(LatticeError::DimensionMismatch { expected: grading.len(), found: g.len() });
            }
            if g.is_zero() {
                continue;
            }
            let w = grading.dot(g);
            if !w.is_positive() {
                return Err(LatticeError::NoPositiveGrading { index: i });
            }
            gens.push(g);
            idx.push(i);
            grades.push(w);
        }
        Ok(GradedSearch { generators: gens, original_index: idx, total: generators.len(), grading, grades })
    }

    /// Indices (into the original generator list) of the generators the
    /// search actually uses, in search order.
    pub fn search_order(&self) -> &[usize] {
        &self.original_index
    }

    pub fn solve(
        &self,
        v: &IntVector,
        modulus: Option<&Sublattice>,
        prune: &dyn Fn(usize, &IntVector) -> bool,
    ) -> Option<Vec<BigInt>> {
        let budget = self.grading.dot(v);
        if budget.is_negative() {
            return None;
        }
        let failed = RefCell::new(HashSet::new());
        let mut x = vec![BigInt::zero(); self.generators.len()];
        if self.dfs(0, v.clone(), &mut x, modulus, prune, &failed) {
            let mut out = vec![BigInt::zero(); self.total];
            for (k, c) in x.into_iter().enumerate() {
                out[self.original_index[k]] = c;
            }
            Some(out)
        } else {
            None
        }
    }

    fn dfs(
        &self,
        k: usize,
        rest: IntVector,
        x: &mut [BigInt],
        modulus: Option<&Sublattice>,
        prune: &dyn Fn(usize, &IntVector) -> bool,
        failed: &RefCell<HashSet<(usize, IntVector)>>,
    ) -> bool {
        let n = self.generators.len();
        if k == n {
            return match modulus {
                Some(l) => l.contains(&rest),
                None => rest.is_zero(),
            };
        }
        if failed.borrow().contains(&(k, rest.clone())) {
            return false;
        }
        if !prune(k, &rest) {
            failed.borrow_mut().insert((k, rest));
            return false;
        }
        let budget = self.grading.dot(&rest);
        let g = self.generators[k];
        if k + 1 == n && modulus.is_none() {
            // last generator: the multiplicity is forced by the grading
            let (c, r) = budget.div_rem(&self.grades[k]);
            if r.is_zero() && rest == g.scale(&c) {
                x[k] = c;
                return true;
            }
            failed.borrow_mut().insert((k, rest));
            return false;
        }
        let max = budget.div_floor(&self.grades[k]);
        let mut c = max;
        while !c.is_negative() {
            let next = rest.add_scaled(&-&c, g);
            if self.dfs(k + 1, next, x, modulus, prune, failed) {
                x[k] = c;
                return true;
            }
            c -= 1;
        }
        failed.borrow_mut().insert((k, rest));
        false
    }
}
