use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{monoid_algebra, AlgebraError, AlgebraPresentation};
use crate::fanspace::{is_fan, MonoidedSpace};
use crate::lattice::{IntMatrix, IntVector};
use crate::monoid::AffineMonoid;

/// One chart `Spec A[S_σ]` at a maximal point `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub point: usize,
    pub name: String,
    pub presentation: AlgebraPresentation,
    /// Images of the chart variables in the generic stalk.
    pub generic_images: Vec<IntVector>,
}

/// `t^a · f^{-k}` in the variables of a chart, `f` the localizing monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMonomial {
    pub exponents: IntVector,
    pub inverse_power: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OverlapKind {
    /// `↓σ ∩ ↓τ = ↓γ`: inverting `t^f` in chart `σ` gives the overlap, and
    /// each variable of chart `τ` is a Laurent monomial there.
    Affine { point: usize, localizing: IntVector, transition: Vec<LaurentMonomial> },
    /// The intersection has several maximal points.
    NonAffine { maximal: Vec<usize> },
}

/// The data for one ordered pair of charts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub from: usize,
    pub to: usize,
    pub kind: OverlapKind,
}

/// Charts at the maximal points of a fan and their pairwise overlaps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeAtlas {
    pub base_ring: String,
    /// The unique minimal point, whose stalk holds every chart's exponents.
    pub generic_point: usize,
    pub charts: Vec<Chart>,
    /// Ordered pairs `(i, j)` with `i != j`, in lexicographic order.
    pub overlaps: Vec<Overlap>,
}

/// The glued scheme of a fan as charts and monomial transition maps.
pub fn scheme_atlas(x: &MonoidedSpace, base: &str, d: usize) -> Result<SchemeAtlas, AlgebraError> {
    let cert = is_fan(x).map_err(|e| AlgebraError::NotAFan(e.to_string()))?;
    let minimal = x.minimal_points();
    if minimal.len() != 1 {
        let names: Vec<&str> = minimal.iter().map(|&p| x.name(p)).collect();
        return Err(AlgebraError::NotIrreducible(format!("minimal points {}", names.join(", "))));
    }
    let eta = minimal[0];
    let maximal = x.maximal_points();
    let mut charts = Vec::with_capacity(maximal.len());
    for &sigma in &maximal {
        let stalk = x.stalk(sigma);
        let presentation = monoid_algebra(stalk, base, d)?;
        let rho = x.gen_map(sigma, eta);
        let generic_images = presentation.generators.iter().map(|g| rho.mul_vec(g)).collect();
        charts.push(Chart { point: sigma, name: x.name(sigma).to_string(), presentation, generic_images });
    }
    let mut overlaps = Vec::new();
    for (i, ci) in charts.iter().enumerate() {
        for (j, cj) in charts.iter().enumerate() {
            if i == j {
                continue;
            }
            let meet: BTreeSet<usize> =
                x.minimal_open(ci.point).intersection(&x.minimal_open(cj.point)).copied().collect();
            let tops = x.maximal_in(&meet);
            let kind = if tops.len() != 1 {
                OverlapKind::NonAffine { maximal: tops }
            } else {
                let gamma = tops[0];
                let face = cert.points[ci.point]
                    .primes
                    .iter()
                    .find(|(p, _)| *p == gamma)
                    .map(|(_, prime)| prime.complement_face().clone())
                    .expect("certificate covers the minimal open");
                let localizing: IntVector =
                    (0..ci.generic_images.len()).map(|k| BigInt::from(face.contains(&k) as u8)).collect();
                let transition = cj
                    .generic_images
                    .iter()
                    .map(|h| laurent(&ci.generic_images, &localizing, h, x.stalk(eta).ambient()))
                    .collect();
                OverlapKind::Affine { point: gamma, localizing, transition }
            };
            overlaps.push(Overlap { from: i, to: j, kind });
        }
    }
    Ok(SchemeAtlas { base_ring: base.to_string(), generic_point: eta, charts, overlaps })
}

fn combine(images: &[IntVector], exps: &IntVector, ambient: usize) -> IntVector {
    let mut out = IntVector::zeros(ambient);
    for (g, c) in images.iter().zip(exps.iter()) {
        if !c.is_zero() {
            out = out.add_scaled(c, g);
        }
    }
    out
}

/// Writes `h` as `Σ a_l g_l - k f` with `a >= 0`, `k >= 0`, using the
/// membership search in `S_σ + N(-f)`.
fn laurent(images: &[IntVector], localizing: &IntVector, h: &IntVector, ambient: usize) -> LaurentMonomial {
    let f = combine(images, localizing, ambient);
    let mut gens: Vec<IntVector> = images.to_vec();
    let neg_f = -&f;
    if !f.is_zero() {
        gens.push(neg_f.clone());
    }
    let local = AffineMonoid::new(ambient, gens);
    let coeffs = local.member(h).expect("generator of a chart lies in the overlap");
    let mut exponents = IntVector::zeros(images.len());
    let mut inverse_power = BigInt::zero();
    for (g, c) in local.generators().iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        if !f.is_zero() && *g == neg_f {
            inverse_power += c;
        } else {
            let l = images.iter().position(|x| x == g).expect("generator of the chart");
            exponents[l] += c;
        }
    }
    LaurentMonomial { exponents, inverse_power }
}

impl LaurentMonomial {
    /// The exponent vector in `Z^n` after expanding `f^{-k}`.
    pub fn expanded(&self, localizing: &IntVector) -> IntVector {
        self.exponents.add_scaled(&-&self.inverse_power, localizing)
    }
}

impl SchemeAtlas {
    pub fn overlap(&self, i: usize, j: usize) -> Option<&Overlap> {
        self.overlaps.iter().find(|o| o.from == i && o.to == j)
    }

    /// Whether some ordered pair of charts has a non-affine intersection.
    pub fn has_non_affine_overlap(&self) -> bool {
        self.overlaps.iter().any(|o| matches!(o.kind, OverlapKind::NonAffine { .. }))
    }

    /// Image in the generic stalk of a Laurent exponent vector of chart `i`.
    pub fn evaluate(&self, i: usize, exps: &IntVector) -> IntVector {
        let ambient = self.charts[i].generic_images.first().map_or(0, |g| g.len());
        combine(&self.charts[i].generic_images, exps, ambient)
    }
}

/// The localizing monomial and the transition matrix (columns: variables of
/// chart `j` as Laurent exponents in chart `i`).
pub fn chart_overlap(atlas: &SchemeAtlas, i: usize, j: usize) -> Result<(IntVector, IntMatrix), AlgebraError> {
    for k in [i, j] {
        if k >= atlas.charts.len() {
            return Err(AlgebraError::UnknownChart(k));
        }
    }
    let n = atlas.charts[i].presentation.variable_count();
    if i == j {
        return Ok((IntVector::zeros(n), IntMatrix::identity(n)));
    }
    let overlap = atlas.overlap(i, j).ok_or(AlgebraError::NoOverlap(i, j))?;
    match &overlap.kind {
        OverlapKind::Affine { localizing, transition, .. } => {
            let cols: Vec<IntVector> = transition.iter().map(|m| m.expanded(localizing)).collect();
            Ok((localizing.clone(), IntMatrix::from_cols(&cols, n)))
        }
        OverlapKind::NonAffine { maximal } => Err(AlgebraError::NonAffineOverlap {
            first: i,
            second: j,
            maximal: maximal.iter().map(|&p| atlas_point_name(atlas, p)).collect(),
        }),
    }
}

fn atlas_point_name(atlas: &SchemeAtlas, p: usize) -> String {
    atlas.charts.iter().find(|c| c.point == p).map_or_else(|| format!("#{p}"), |c| c.name.clone())
}

impl Chart {
    /// Whether the chart's presentation has no relations.
    pub fn is_polynomial_ring(&self) -> bool {
        self.presentation.relations.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::fanspace::{from_classic_fan, spec};

    fn v(x: &[i64]) -> IntVector {
        IntVector::from_i64s(x)
    }

    #[test]
    fn projective_line_charts() {
        let x = from_classic_fan(&corpus::projective_line());
        let atlas = scheme_atlas(&x, "k", 4).unwrap();
        assert_eq!(atlas.charts.len(), 2);
        assert!(atlas.charts.iter().all(Chart::is_polynomial_ring));
        let (s, t) = chart_overlap(&atlas, 0, 1).unwrap();
        assert_eq!(s, v(&[1]));
        assert_eq!(t, IntMatrix::from_i64_rows(&[&[-1]]));
        let (s0, id) = chart_overlap(&atlas, 1, 1).unwrap();
        assert!(s0.is_zero() && id.is_identity());
    }

    #[test]
    fn single_spec_has_no_overlaps() {
        let atlas = scheme_atlas(&spec(&corpus::quadric_cone()), "k", 3).unwrap();
        assert_eq!(atlas.charts.len(), 1);
        assert!(atlas.overlaps.is_empty());
        assert_eq!(chart_overlap(&atlas, 0, 1), Err(AlgebraError::UnknownChart(1)));
    }

    #[test]
    fn doubled_line_overlap_is_affine() {
        let atlas = scheme_atlas(&corpus::doubled_line(), "k", 3).unwrap();
        assert!(!atlas.has_non_affine_overlap());
        let (s, t) = chart_overlap(&atlas, 0, 1).unwrap();
        assert_eq!(s, v(&[1]));
        assert!(t.is_identity());
    }

    #[test]
    fn blowup_overlap_along_the_diagonal_ray() {
        let x = from_classic_fan(&corpus::blowup_plane());
        let atlas = scheme_atlas(&x, "k", 3).unwrap();
        let (_, t) = chart_overlap(&atlas, 0, 1).unwrap();
        assert_eq!(t.cols(), 2);
        for j in 0..2 {
            assert_eq!(atlas.evaluate(0, &t.col(j)), atlas.charts[1].generic_images[j]);
        }
    }

    #[test]
    fn transitions_round_trip_and_satisfy_cocycle() {
        let x = from_classic_fan(&corpus::projective_plane());
        let atlas = scheme_atlas(&x, "k", 3).unwrap();
        let n = atlas.charts.len();
        for i in 0..n {
            for j in 0..n {
                let (_, tij) = chart_overlap(&atlas, i, j).unwrap();
                let (_, tji) = chart_overlap(&atlas, j, i).unwrap();
                let round = &tij * &tji;
                for l in 0..round.cols() {
                    assert_eq!(atlas.evaluate(i, &round.col(l)), atlas.charts[i].generic_images[l]);
                }
                for k in 0..n {
                    let (_, tjk) = chart_overlap(&atlas, j, k).unwrap();
                    let (_, tik) = chart_overlap(&atlas, i, k).unwrap();
                    let via = &tij * &tjk;
                    for l in 0..via.cols() {
                        assert_eq!(atlas.evaluate(i, &via.col(l)), atlas.evaluate(i, &tik.col(l)));
                    }
                }
            }
        }
    }

    #[test]
    fn disjoint_union_is_rejected() {
        assert!(matches!(scheme_atlas(&corpus::two_lines_apart(), "k", 2), Err(AlgebraError::NotIrreducible(_))));
    }

    #[test]
    fn non_fan_is_rejected() {
        let x = from_classic_fan(&corpus::projective_plane());
        let ray = x.index_of("c{0}").unwrap();
        let y = x.remove_points(&[ray].into_iter().collect());
        assert!(matches!(scheme_atlas(&y, "k", 2), Err(AlgebraError::NotAFan(_))));
    }
}
