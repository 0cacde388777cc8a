use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{AffineMonoid, MonoidError};
use crate::lattice::{hermite_normal_form, smith_normal_form, IntMatrix, IntVector};

/// `<g_1..g_n | u_k = v_k>`: a commutative monoid given by generators and
/// relations between exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedMonoid {
    generators: usize,
    relations: Vec<(IntVector, IntVector)>,
}

/// Outcome of a check that only looks at words up to a degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bounded<W> {
    /// No counterexample among words of degree at most the bound. Not a
    /// proof.
    PassUpTo(usize),
    Fail(W),
}

impl<W> Bounded<W> {
    pub fn passed(&self) -> bool {
        matches!(self, Bounded::PassUpTo(_))
    }
}

/// `a + c = b + c` with `a != b` in the monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancellativityWitness {
    pub a: IntVector,
    pub b: IntVector,
    pub c: IntVector,
}

/// `n s = n s'` with `s != s'` in the monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionWitness {
    pub n: usize,
    pub s: IntVector,
    pub s_prime: IntVector,
}

/// A presented monoid realized inside a lattice.
#[derive(Clone, Debug)]
pub struct Affinization {
    pub monoid: AffineMonoid,
    /// Image of each presentation generator, in generator order.
    pub images: Vec<IntVector>,
    /// Words up to this degree were checked for identifications beyond the
    /// relations.
    pub checked_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffinizeFailure {
    /// The universal group has torsion; these are its nontrivial invariant
    /// factors.
    GroupTorsion(Vec<BigInt>),
    NotCancellative(CancellativityWitness),
    NotTorsionFree(TorsionWitness),
    /// Two words that are not related by the relations have the same image
    /// in the universal group.
    ExtraIdentification {
        left: IntVector,
        right: IntVector,
    },
}

impl fmt::Display for AffinizeFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffinizeFailure::GroupTorsion(d) => {
                let d: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                write!(f, "universal group has torsion (invariant factors {})", d.join(", "))
            }
            AffinizeFailure::NotCancellative(w) => {
                write!(f, "not cancellative: {} + {} = {} + {}", w.a, w.c, w.b, w.c)
            }
            AffinizeFailure::NotTorsionFree(w) => {
                write!(f, "not torsion-free: {} * {} = {} * {}", w.n, w.s, w.n, w.s_prime)
            }
            AffinizeFailure::ExtraIdentification { left, right } => {
                write!(f, "{left} and {right} are identified in the group but not in the monoid")
            }
        }
    }
}

/// All exponent vectors in `N^n` of total degree at most `d`, by degree and
/// then lexicographically descending, so that `x` precedes `y`.
pub fn words_up_to(n: usize, d: usize) -> Vec<IntVector> {
    let mut out = Vec::new();
    for deg in 0..=d {
        let mut current = vec![0usize; n];
        words_of_degree(n, deg, 0, &mut current, &mut out);
    }
    out
}

fn words_of_degree(n: usize, left: usize, i: usize, current: &mut [usize], out: &mut Vec<IntVector>) {
    if i + 1 >= n {
        if n == 0 {
            if left == 0 {
                out.push(IntVector::zeros(0));
            }
            return;
        }
        current[n - 1] = left;
        out.push(current.iter().map(|&c| BigInt::from(c)).collect());
        return;
    }
    for c in (0..=left).rev() {
        current[i] = c;
        words_of_degree(n, left - c, i + 1, current, out);
    }
    current[i] = 0;
}

fn degree(w: &IntVector) -> usize {
    w.total().try_into().expect("degree fits in usize")
}

/// The congruence generated by a set of relations, restricted to words of
/// degree at most a bound: two words are joined when they are translates
/// `u + c`, `v + c` of a relation and both fit under the bound.
pub struct BoundedCongruence {
    generators: usize,
    bound: usize,
    words: Vec<IntVector>,
    // exponents as machine integers, ranked arithmetically rather than hashed
    small: Vec<Vec<u32>>,
    // binomial[a][b] = a choose b
    binomial: Vec<Vec<usize>>,
    parent: Vec<usize>,
}

fn small_word(w: &IntVector) -> Option<Vec<u32>> {
    w.iter().map(|c| u32::try_from(c).ok()).collect()
}

fn binomial_table(size: usize) -> Vec<Vec<usize>> {
    let mut t = vec![vec![0usize; size + 1]; size + 1];
    for a in 0..=size {
        t[a][0] = 1;
        for b in 1..=a {
            t[a][b] = t[a - 1][b - 1] + t[a - 1][b];
        }
    }
    t
}

impl BoundedCongruence {
    pub fn new(generators: usize, relations: &[(IntVector, IntVector)], bound: usize) -> Self {
        let words = words_up_to(generators, bound);
        let small: Vec<Vec<u32>> = words.iter().map(|w| small_word(w).expect("word exponents fit in u32")).collect();
        let parent = (0..words.len()).collect();
        let binomial = binomial_table(generators + bound);
        let mut cong = BoundedCongruence { generators, bound, words, small, binomial, parent };
        for (u, v) in relations {
            cong.add_relation(u, v);
        }
        cong
    }

    /// Words in `m` variables of degree at most `k`.
    fn count_up_to(&self, m: usize, k: usize) -> usize {
        self.binomial[m + k][m]
    }

    /// Position of a word in the order of [`words_up_to`]: by degree, then
    /// lexicographically descending.
    fn rank(&self, w: &[u32]) -> Option<usize> {
        let d = w.iter().map(|&c| c as usize).sum::<usize>();
        if d > self.bound {
            return None;
        }
        let n = self.generators;
        if n == 0 {
            return Some(0);
        }
        let mut pos = if d == 0 { 0 } else { self.count_up_to(n, d - 1) };
        let mut left = d;
        for (i, &c) in w.iter().enumerate().take(n - 1) {
            let c = c as usize;
            if left > c {
                pos += self.count_up_to(n - i - 1, left - c - 1);
            }
            left -= c;
        }
        Some(pos)
    }

    /// Joins every translate `u + c`, `v + c` that fits under the bound.
    pub fn add_relation(&mut self, u: &IntVector, v: &IntVector) {
        let top = degree(u).max(degree(v));
        if top > self.bound {
            return;
        }
        let (Some(u), Some(v)) = (small_word(u), small_word(v)) else { return };
        // words are listed by degree, so the translates form a prefix
        let count = self.count_up_to(self.generators, self.bound - top);
        let mut shifted = vec![0u32; self.generators];
        for k in 0..count {
            let mut ends = [0usize; 2];
            for (end, base) in ends.iter_mut().zip([&u, &v]) {
                for ((s, x), y) in shifted.iter_mut().zip(base.iter()).zip(&self.small[k]) {
                    *s = x + y;
                }
                *end = self.rank(&shifted).expect("translate under the bound");
            }
            self.union(ends[0], ends[1]);
        }
    }

    /// Position of a word in [`BoundedCongruence::words`].
    pub fn word_index(&self, w: &IntVector) -> Option<usize> {
        if w.len() != self.generators {
            return None;
        }
        small_word(w).and_then(|w| self.rank(&w))
    }

    /// For a nonempty word, an earlier word and a generator that it adds to
    /// reach this one.
    pub fn step(&self, i: usize) -> Option<(usize, usize)> {
        let w = &self.small[i];
        let j = w.iter().position(|&c| c > 0)?;
        let mut prev = w.clone();
        prev[j] -= 1;
        Some((self.rank(&prev).expect("shorter word is listed"), j))
    }

    /// Whether two word indices are related.
    pub fn related_indices(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn words(&self) -> &[IntVector] {
        &self.words
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    /// Joins two classes; the smaller word index becomes the root.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Whether two words under the bound are related.
    pub fn related(&mut self, a: &IntVector, b: &IntVector) -> bool {
        let (ia, ib) =
            (self.word_index(a).expect("word under the bound"), self.word_index(b).expect("word under the bound"));
        self.find(ia) == self.find(ib)
    }

    /// Classes as lists of word indices, each sorted, ordered by first word.
    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..self.words.len() {
            let r = self.find(i);
            by_root.entry(r).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
        out.sort();
        out
    }
}

impl PresentedMonoid {
    pub fn new(generators: usize, relations: Vec<(IntVector, IntVector)>) -> Result<Self, MonoidError> {
        for (u, v) in &relations {
            for w in [u, v] {
                if w.len() != generators {
                    return Err(MonoidError::DimensionMismatch { expected: generators, found: w.len() });
                }
                if !w.is_nonnegative() {
                    return Err(MonoidError::NotAMember { element: w.to_string(), monoid: format!("N^{generators}") });
                }
            }
        }
        Ok(PresentedMonoid { generators, relations })
    }

    pub fn free(generators: usize) -> Self {
        PresentedMonoid { generators, relations: Vec::new() }
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &[(IntVector, IntVector)] {
        &self.relations
    }

    pub fn congruence(&self, bound: usize) -> BoundedCongruence {
        BoundedCongruence::new(self.generators, &self.relations, bound)
    }

    /// Looks for `a + c ~ b + c` with `a` and `b` unrelated, among words of
    /// degree at most `d`.
    pub fn is_cancellative_bounded(&self, d: usize) -> Bounded<CancellativityWitness> {
        let mut cong = self.congruence(d);
        let words = cong.words().to_vec();
        for class in cong.classes() {
            for (x, &i) in class.iter().enumerate() {
                for &j in &class[x + 1..] {
                    let (w1, w2) = (&words[i], &words[j]);
                    let common: IntVector = w1.iter().zip(w2.iter()).map(|(a, b)| a.min(b).clone()).collect();
                    for c in words_below(&common) {
                        if c.is_zero() {
                            continue;
                        }
                        let (a, b) = (w2 - &c, w1 - &c);
                        if !cong.related(&a, &b) {
                            return Bounded::Fail(CancellativityWitness { a, b, c });
                        }
                    }
                }
            }
        }
        Bounded::PassUpTo(d)
    }

    /// Looks for `n s ~ n s'` with `s` and `s'` unrelated, among words with
    /// `n s` of degree at most `d`.
    pub fn is_torsion_free_bounded(&self, d: usize) -> Bounded<TorsionWitness> {
        let mut cong = self.congruence(d);
        for n in 2..=d.max(2) {
            let words = words_up_to(self.generators, d / n);
            for (x, s) in words.iter().enumerate() {
                for t in &words[x + 1..] {
                    let k = BigInt::from(n);
                    if cong.related(&s.scale(&k), &t.scale(&k)) && !cong.related(s, t) {
                        return Bounded::Fail(TorsionWitness { n, s: s.clone(), s_prime: t.clone() });
                    }
                }
            }
        }
        Bounded::PassUpTo(d)
    }

    /// Embeds the monoid in its universal group `Z^n / (relations)`.
    ///
    /// The group is computed with the Smith form; its free part gets the
    /// Hermite-normal coordinates, so the images are canonical up to the
    /// order of the generators. Fails on torsion in the group, on the
    /// bounded cancellation and torsion checks, or when two unrelated words
    /// of degree at most `d` share an image.
    pub fn affinize(&self, d: usize) -> Result<Affinization, AffinizeFailure> {
        let n = self.generators;
        let rows: Vec<IntVector> = self.relations.iter().map(|(u, v)| u - v).collect();
        let (r, v) = if rows.is_empty() {
            (0, IntMatrix::identity(n))
        } else {
            let snf = smith_normal_form(&IntMatrix::from_rows(&rows, n));
            let torsion: Vec<BigInt> = snf.diagonal().into_iter().filter(|x| !x.is_zero() && !x.is_one()).collect();
            if !torsion.is_empty() {
                return Err(AffinizeFailure::GroupTorsion(torsion));
            }
            (snf.rank(), snf.v)
        };
        let k = n - r;
        // columns of `free` are the generator images; rows are coordinates
        let mut free = IntMatrix::zeros(k, n);
        for j in 0..n {
            for i in 0..k {
                free[(i, j)] = v[(j, r + i)].clone();
            }
        }
        let canon = hermite_normal_form(&free).h;
        let images: Vec<IntVector> = (0..n).map(|j| canon.col(j)).collect();
        if let Bounded::Fail(w) = self.is_cancellative_bounded(d) {
            return Err(AffinizeFailure::NotCancellative(w));
        }
        if let Bounded::Fail(w) = self.is_torsion_free_bounded(d.max(2)) {
            return Err(AffinizeFailure::NotTorsionFree(w));
        }
        let mut cong = self.congruence(2 * d);
        let mut seen: HashMap<IntVector, IntVector> = HashMap::new();
        for w in words_up_to(n, d) {
            let img = (0..n).fold(IntVector::zeros(k), |acc, j| acc.add_scaled(&w[j], &images[j]));
            match seen.get(&img) {
                Some(first) => {
                    if !cong.related(first, &w) {
                        return Err(AffinizeFailure::ExtraIdentification { left: first.clone(), right: w });
                    }
                }
                None => {
                    seen.insert(img, w);
                }
            }
        }
        Ok(Affinization { monoid: AffineMonoid::new(k, images.clone()), images, checked_degree: d })
    }
}

/// All `c` with `0 <= c <= top` componentwise.
fn words_below(top: &IntVector) -> Vec<IntVector> {
    let mut out = vec![IntVector::zeros(top.len())];
    for i in 0..top.len() {
        let mut next = Vec::new();
        for w in &out {
            let mut c = BigInt::zero();
            while c <= top[i] {
                let mut x = w.clone();
                x[i] = c.clone();
                next.push(x);
                c += 1;
            }
        }
        out = next;
    }
    out.sort_by(|a, b| a.total().cmp(&b.total()).then(b.cmp(a)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivec;

    fn rel(u: IntVector, v: IntVector) -> (IntVector, IntVector) {
        (u, v)
    }

    #[test]
    fn word_order() {
        let w = words_up_to(2, 1);
        assert_eq!(w, vec![ivec![0, 0], ivec![1, 0], ivec![0, 1]]);
        assert_eq!(words_up_to(3, 4).len(), 35);
    }

    #[test]
    fn absorbing_relation_is_not_cancellative() {
        let p = PresentedMonoid::new(2, vec![rel(ivec![1, 1], ivec![1, 0])]).unwrap();
        let Bounded::Fail(w) = p.is_cancellative_bounded(2) else { panic!("expected failure") };
        assert_eq!((w.a, w.b, w.c), (ivec![0, 1], ivec![0, 0], ivec![1, 0]));
    }

    #[test]
    fn free_monoid_passes() {
        let p = PresentedMonoid::free(2);
        assert_eq!(p.is_cancellative_bounded(5), Bounded::PassUpTo(5));
        assert_eq!(p.is_torsion_free_bounded(5), Bounded::PassUpTo(5));
        let a = p.affinize(4).unwrap();
        assert!(a.monoid.same_monoid(&AffineMonoid::free(2)));
    }

    #[test]
    fn two_torsion() {
        let p = PresentedMonoid::new(2, vec![rel(ivec![2, 0], ivec![0, 2])]).unwrap();
        assert_eq!(p.is_cancellative_bounded(3), Bounded::PassUpTo(3));
        let Bounded::Fail(w) = p.is_torsion_free_bounded(2) else { panic!("expected torsion") };
        assert_eq!((w.n, w.s, w.s_prime), (2, ivec![1, 0], ivec![0, 1]));
        assert_eq!(p.affinize(4).unwrap_err(), AffinizeFailure::GroupTorsion(vec![BigInt::from(2)]));
    }

    #[test]
    fn cusp_presentation() {
        let p = PresentedMonoid::new(2, vec![rel(ivec![3, 0], ivec![0, 2])]).unwrap();
        assert!(p.is_torsion_free_bounded(6).passed());
        assert!(p.is_cancellative_bounded(6).passed());
        let a = p.affinize(6).unwrap();
        assert_eq!(a.images, vec![ivec![2], ivec![3]]);
        assert!(a.monoid.same_monoid(&AffineMonoid::new(1, vec![ivec![2], ivec![3]])));
    }

    #[test]
    fn group_presentation() {
        let p = PresentedMonoid::new(2, vec![rel(ivec![1, 1], ivec![0, 0])]).unwrap();
        let a = p.affinize(4).unwrap();
        assert!(a.monoid.is_group());
    }

    #[test]
    fn rejects_negative_exponents() {
        assert!(PresentedMonoid::new(1, vec![rel(ivec![-1], ivec![0])]).is_err());
        assert!(PresentedMonoid::new(2, vec![rel(ivec![1], ivec![0])]).is_err());
    }
}
