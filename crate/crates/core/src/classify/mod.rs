//! Decides whether the scheme of a fan is a classic toric variety: a fan
//! whose scheme is integral, of finite type, normal and separated comes from
//! a classic fan in `N = Hom(M, Z)`, which [`realize_classic`] rebuilds.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::fanspace::{is_fan, spec, FanFailure, MonoidedSpace, SpaceError};
use crate::lattice::{IntVector, Sublattice};
use crate::monoid::{AffineMonoid, PresentedMonoid};
use crate::par;
use crate::polyhedral::{dual_cone, ClassicFan, Cone, PolyhedralError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("not a fan: {0}")]
    NotAFan(FanFailure),
    #[error("space is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("preconditions not met: {0}")]
    PreconditionsNotMet(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Polyhedral(#[from] PolyhedralError),
}

/// A stalk that is not saturated, with an element of its saturation that
/// it misses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityWitness {
    pub point: usize,
    pub element: IntVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparationReason {
    /// `↓σ ∩ ↓τ` has these maximal points.
    SeveralMaximal(Vec<usize>),
    /// `↓σ ∩ ↓τ = ↓γ` but `S_γ` is not `S_σ + S_τ`.
    NotGenerated { meet: usize },
}

/// A pair of maximal points whose charts do not meet along a common face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationFailure {
    pub first: usize,
    pub second: usize,
    pub reason: SeparationReason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub is_fan: bool,
    pub fan_failure: Option<FanFailure>,
    pub irreducible: bool,
    pub generic_point: Option<usize>,
    pub finite_type: bool,
    pub integral: bool,
    pub normal: bool,
    pub non_saturated: Vec<NormalityWitness>,
    pub separated: bool,
    pub separation_failures: Vec<SeparationFailure>,
    pub classic_toric: bool,
    pub realized: Option<ClassicFan>,
    pub notes: Vec<String>,
}

const DOMAIN_NOTE: &str = "coefficient ring assumed to be an integral domain";

fn require_fan(x: &MonoidedSpace) -> Result<(), ClassifyError> {
    is_fan(x).map(|_| ()).map_err(ClassifyError::NotAFan)
}

/// The unique minimal point, if its stalk is a group.
pub fn generic_point(x: &MonoidedSpace) -> Option<usize> {
    match x.minimal_points()[..] {
        [eta] if x.stalk(eta).is_group() => Some(eta),
        _ => None,
    }
}

/// The lattice `M` of the generic stalk.
pub fn generic_lattice(x: &MonoidedSpace) -> Option<Sublattice> {
    generic_point(x).map(|eta| x.stalk(eta).group_completion())
}

pub fn is_irreducible(x: &MonoidedSpace) -> Result<bool, ClassifyError> {
    require_fan(x)?;
    Ok(generic_point(x).is_some())
}

/// Stalks are affine monoids, hence finitely generated.
pub fn is_finite_type(_x: &MonoidedSpace) -> bool {
    true
}

/// Irreducible with cancellative torsion-free stalks; the latter holds for
/// every affine monoid.
pub fn is_integral(x: &MonoidedSpace) -> Result<bool, ClassifyError> {
    is_irreducible(x)
}

pub fn is_normal(x: &MonoidedSpace) -> Result<(bool, Vec<NormalityWitness>), ClassifyError> {
    require_fan(x)?;
    Ok(normality(x))
}

fn normality(x: &MonoidedSpace) -> (bool, Vec<NormalityWitness>) {
    let witnesses: Vec<NormalityWitness> = par::map_range(x.len(), |p| x.stalk(p).saturation_witness())
        .into_iter()
        .enumerate()
        .filter_map(|(point, w)| w.map(|element| NormalityWitness { point, element }))
        .collect();
    (witnesses.is_empty(), witnesses)
}

/// Checks every pair of maximal points `σ < τ`: `↓σ ∩ ↓τ` must be `↓γ` with
/// `S_γ` generated by the images of `S_σ` and `S_τ` in the generic stalk.
pub fn is_separated(x: &MonoidedSpace) -> Result<(bool, Vec<SeparationFailure>), ClassifyError> {
    require_fan(x)?;
    let eta = generic_point(x).ok_or_else(|| ClassifyError::NotIrreducible(minimal_names(x)))?;
    let failures = separation_failures(x, eta);
    Ok((failures.is_empty(), failures))
}

fn minimal_names(x: &MonoidedSpace) -> String {
    let names: Vec<&str> = x.minimal_points().into_iter().map(|p| x.name(p)).collect();
    format!("minimal points {}", names.join(", "))
}

fn separation_failures(x: &MonoidedSpace, eta: usize) -> Vec<SeparationFailure> {
    let maximal = x.maximal_points();
    let pairs: Vec<(usize, usize)> =
        maximal.iter().enumerate().flat_map(|(i, &s)| maximal[i + 1..].iter().map(move |&t| (s, t))).collect();
    let generic_ambient = x.stalk(eta).ambient();
    let to_generic = |p: usize| x.stalk(p).image(&x.gen_map(p, eta));
    par::map(&pairs, |&(s, t)| {
        let meet: BTreeSet<usize> = x.minimal_open(s).intersection(&x.minimal_open(t)).copied().collect();
        let tops = x.maximal_in(&meet);
        if tops.len() != 1 {
            return Some(SeparationFailure { first: s, second: t, reason: SeparationReason::SeveralMaximal(tops) });
        }
        let gamma = tops[0];
        let mut gens = to_generic(s).generators().to_vec();
        gens.extend(to_generic(t).generators().iter().cloned());
        let sum = AffineMonoid::new(generic_ambient, gens);
        if sum.same_monoid(&to_generic(gamma)) {
            None
        } else {
            Some(SeparationFailure { first: s, second: t, reason: SeparationReason::NotGenerated { meet: gamma } })
        }
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Separatedness of each connected component on its own, in the indices
/// of `x`.
fn componentwise_separation(x: &MonoidedSpace) -> Vec<SeparationFailure> {
    let mut out = Vec::new();
    for comp in x.components() {
        let idx: Vec<usize> = comp.iter().copied().collect();
        let part = x.restrict(&comp);
        let Some(eta) = generic_point(&part) else { continue };
        for f in separation_failures(&part, eta) {
            let reason = match f.reason {
                SeparationReason::SeveralMaximal(ps) => {
                    SeparationReason::SeveralMaximal(ps.iter().map(|&p| idx[p]).collect())
                }
                SeparationReason::NotGenerated { meet } => SeparationReason::NotGenerated { meet: idx[meet] },
            };
            out.push(SeparationFailure { first: idx[f.first], second: idx[f.second], reason });
        }
    }
    out
}

/// Runs every check and, when all pass, rebuilds the classic fan.
pub fn classify(x: &MonoidedSpace) -> Verdict {
    let mut notes = vec![DOMAIN_NOTE.to_string()];
    let fan = is_fan(x);
    let (normal, non_saturated) = normality(x);
    let Err(failure) = fan else {
        let generic = generic_point(x);
        let irreducible = generic.is_some();
        if !irreducible {
            notes.push(format!("no generic point: {}", minimal_names(x)));
        }
        let separation_failures = match generic {
            Some(eta) => separation_failures(x, eta),
            None => componentwise_separation(x),
        };
        let separated = separation_failures.is_empty();
        let classic_toric = irreducible && normal && separated;
        let realized = if classic_toric {
            match realize_unchecked(x) {
                Ok(f) => Some(f),
                Err(e) => {
                    notes.push(format!("realization failed: {e}"));
                    None
                }
            }
        } else {
            None
        };
        return Verdict {
            is_fan: true,
            fan_failure: None,
            irreducible,
            generic_point: generic,
            finite_type: true,
            integral: irreducible,
            normal,
            non_saturated,
            separated,
            separation_failures,
            classic_toric: realized.is_some(),
            realized,
            notes,
        };
    };
    notes.push(format!("not a fan ({failure}); later checks skipped"));
    Verdict {
        is_fan: false,
        fan_failure: Some(failure),
        irreducible: false,
        generic_point: None,
        finite_type: true,
        integral: false,
        normal,
        non_saturated,
        separated: false,
        separation_failures: Vec::new(),
        classic_toric: false,
        realized: None,
        notes,
    }
}

/// Classifies `Spec` of a presented monoid when it has an affine model
/// (checked up to degree `d`); otherwise records the failure as a violation
/// of integrality.
pub fn classify_presented(p: &PresentedMonoid, d: usize) -> Verdict {
    match p.affinize(d) {
        Ok(a) => {
            let mut v = classify(&spec(&a.monoid));
            v.notes.push(format!("affine model checked up to degree {}", a.checked_degree));
            v
        }
        Err(e) => Verdict {
            is_fan: false,
            fan_failure: None,
            irreducible: false,
            generic_point: None,
            finite_type: true,
            integral: false,
            normal: false,
            non_saturated: Vec::new(),
            separated: false,
            separation_failures: Vec::new(),
            classic_toric: false,
            realized: None,
            notes: vec![DOMAIN_NOTE.to_string(), format!("no affine model: {e}")],
        },
    }
}

/// The classic fan in `N = Hom(M, Z)`: each point gives the dual of the
/// cone of its stalk, in coordinates of the generic lattice `M`.
pub fn realize_classic(x: &MonoidedSpace) -> Result<ClassicFan, ClassifyError> {
    let v = classify(x);
    if !v.is_fan || !v.irreducible || !v.normal || !v.separated {
        let mut failed = Vec::new();
        for (ok, name) in
            [(v.is_fan, "fan"), (v.irreducible, "irreducible"), (v.normal, "normal"), (v.separated, "separated")]
        {
            if !ok {
                failed.push(name);
            }
        }
        return Err(ClassifyError::PreconditionsNotMet(format!("not {}", failed.join(", not "))));
    }
    realize_unchecked(x)
}

fn realize_unchecked(x: &MonoidedSpace) -> Result<ClassicFan, ClassifyError> {
    let eta = generic_point(x).ok_or_else(|| ClassifyError::NotIrreducible(minimal_names(x)))?;
    let m = x.stalk(eta).group_completion();
    let r = m.rank();
    let cones = par::map_range(x.len(), |p| {
        let rho = x.gen_map(p, eta);
        let coords: Vec<IntVector> = x
            .stalk(p)
            .generators()
            .iter()
            .map(|g| m.coordinates(&rho.mul_vec(g)).expect("stalk lies in the generic lattice"))
            .collect();
        dual_cone(&Cone::new(r, coords)).canonical()
    });
    Ok(ClassicFan::from_cones(r, cones)?)
}

/// Replaces every stalk by its saturation.
pub fn normalize(x: &MonoidedSpace) -> Result<MonoidedSpace, ClassifyError> {
    Ok(x.map_stalks(|_, s| s.saturation())?)
}

impl fmt::Display for SeparationReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeparationReason::SeveralMaximal(ps) => write!(f, "intersection has {} maximal points", ps.len()),
            SeparationReason::NotGenerated { .. } => write!(f, "meet stalk is not generated by the two charts"),
        }
    }
}

#[cfg(test)]
mod tests;
