use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::AlgebraError;
use crate::lattice::IntVector;
use crate::monoid::{AffineMonoid, BoundedCongruence};

/// `A[S]` as a polynomial ring with one variable per generator of `S`
/// modulo binomial relations `t^u = t^v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub base_ring: String,
    /// The exponent `g_i` in `S` of variable `i`.
    pub generators: Vec<IntVector>,
    /// Pairs `(u, v)` with `u > v`, sorted.
    pub relations: Vec<(IntVector, IntVector)>,
    /// Every two words of degree at most this bound with the same image are
    /// connected by the relations.
    pub completeness_degree: usize,
    /// Whether the same holds one degree higher.
    pub next_degree_connected: bool,
}

impl AlgebraPresentation {
    pub fn variable_count(&self) -> usize {
        self.generators.len()
    }

    /// `Σ w_i g_i`.
    pub fn evaluate(&self, word: &IntVector) -> IntVector {
        evaluate(&self.generators, self.generators.first().map_or(0, |g| g.len()), word)
    }

    /// Whether two words of degree at most `bound` are related by the
    /// congruence the relations generate, as seen through words under that
    /// bound.
    pub fn connects(&self, a: &IntVector, b: &IntVector, bound: usize) -> bool {
        let ambient = self.generators.first().map_or(0, |g| g.len());
        let (mut cong, _) = close_fibers(&self.generators, ambient, &self.relations, bound, false);
        cong.related(a, b)
    }
}

fn evaluate(gens: &[IntVector], ambient: usize, word: &IntVector) -> IntVector {
    let mut out = IntVector::zeros(ambient);
    for (g, c) in gens.iter().zip(word.iter()) {
        if !c.is_zero() {
            out = out.add_scaled(c, g);
        }
    }
    out
}

/// Binomial relations of `A[S]` up to degree `d`, by fiber enumeration.
///
/// Words are visited by degree; a word not yet connected to the first word
/// of its fiber contributes one relation with it, after cancelling their
/// common factor. The result is then checked at degree `d + 1`.
pub fn monoid_algebra(s: &AffineMonoid, base: &str, d: usize) -> Result<AlgebraPresentation, AlgebraError> {
    if d == 0 {
        return Err(AlgebraError::ZeroDegree);
    }
    let gens = s.generators().to_vec();
    let (_, mut relations) = close_fibers(&gens, s.ambient(), &[], d, true);
    relations.sort();
    let (_, missing) = close_fibers(&gens, s.ambient(), &relations, d + 1, false);
    Ok(AlgebraPresentation {
        base_ring: base.to_string(),
        generators: gens,
        relations,
        completeness_degree: d,
        next_degree_connected: missing.is_empty(),
    })
}

/// Walks the fibers of words up to `bound`, joining each word to the first
/// word of its fiber.
///
/// A pair `u + c`, `v + c` whose reduced form `u`, `v` is already related
/// is joined together with every translate of `u`, `v`: those pairs lie in
/// the congruence the relations generate even when the chain relating `u`
/// and `v` climbs above the bound. Any other unrelated pair is returned in
/// reduced form, and also joined when `record` is set.
fn close_fibers(
    gens: &[IntVector],
    ambient: usize,
    relations: &[(IntVector, IntVector)],
    bound: usize,
    record: bool,
) -> (BoundedCongruence, Vec<(IntVector, IntVector)>) {
    let mut cong = BoundedCongruence::new(gens.len(), relations, bound);
    let words = cong.words().to_vec();
    let mut images: Vec<IntVector> = Vec::with_capacity(words.len());
    for i in 0..words.len() {
        images.push(match cong.step(i) {
            Some((prev, j)) => &images[prev] + &gens[j],
            None => IntVector::zeros(ambient),
        });
    }
    let mut first_of_fiber: HashMap<&IntVector, usize> = HashMap::new();
    let mut found = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let first = *first_of_fiber.entry(img).or_insert(i);
        if first == i || cong.related_indices(first, i) {
            continue;
        }
        let common: IntVector = words[i].iter().zip(words[first].iter()).map(|(a, b)| a.min(b).clone()).collect();
        let (a, b) = (&words[i] - &common, &words[first] - &common);
        let known = cong.related(&a, &b);
        if known || record {
            cong.add_relation(&a, &b);
        }
        if !known {
            found.push(if a > b { (a, b) } else { (b, a) });
        }
    }
    (cong, found)
}

fn monomial(w: &IntVector) -> String {
    let parts: Vec<String> = w
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| if *c == BigInt::from(1) { format!("x{i}") } else { format!("x{i}^{c}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (0..self.variable_count()).map(|i| format!("x{i}")).collect();
        write!(f, "{}[{}]", self.base_ring, vars.join(", "))?;
        if !self.relations.is_empty() {
            let rels: Vec<String> =
                self.relations.iter().map(|(u, v)| format!("{} - {}", monomial(u), monomial(v))).collect();
            write!(f, " / ({})", rels.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn v(x: &[i64]) -> IntVector {
        IntVector::from_i64s(x)
    }

    #[test]
    fn free_monoids_have_no_relations() {
        for k in 0..=4 {
            let p = monoid_algebra(&AffineMonoid::free(k), "k", 4).unwrap();
            assert!(p.relations.is_empty(), "rank {k}");
            assert!(p.next_degree_connected);
        }
    }

    #[test]
    fn cuspidal_cubic() {
        let p = monoid_algebra(&corpus::cusp(), "k", 6).unwrap();
        assert_eq!(p.generators, vec![v(&[2]), v(&[3])]);
        assert_eq!(p.relations, vec![(v(&[3, 0]), v(&[0, 2]))]);
        assert!(p.next_degree_connected);
        assert_eq!(p.to_string(), "k[x0, x1] / (x0^3 - x1^2)");
    }

    #[test]
    fn quadric_cone() {
        let p = monoid_algebra(&corpus::quadric_cone(), "k", 4).unwrap();
        assert_eq!(p.relations, vec![(v(&[1, 0, 1]), v(&[0, 2, 0]))]);
    }

    #[test]
    fn laurent_variables() {
        // Z: generators -1, 1 with x0*x1 = 1
        let p = monoid_algebra(&AffineMonoid::lattice(1), "ZZ", 3).unwrap();
        assert_eq!(p.relations, vec![(v(&[1, 1]), v(&[0, 0]))]);
        assert!(p.next_degree_connected);
    }

    #[test]
    fn zero_degree_rejected() {
        assert_eq!(monoid_algebra(&corpus::cusp(), "k", 0), Err(AlgebraError::ZeroDegree));
    }
}
