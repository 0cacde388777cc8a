use std::collections::BTreeSet;
use std::fmt;

use super::MonoidedSpace;
use crate::monoid::{AffineMonoid, PrimeIdeal};
use crate::par;

/// Evidence that every minimal open `↓σ` is `Spec` of the stalk at `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanCertificate {
    pub points: Vec<PointCertificate>,
}

/// For one point `σ`: each `τ <= σ` with the prime of `stalk(σ)` it
/// corresponds to. The stalk at `τ` equals the localization at that prime
/// pushed along the map `σ -> τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCertificate {
    pub point: usize,
    pub primes: Vec<(usize, PrimeIdeal)>,
}

/// The first point whose minimal open is not an affine spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanFailure {
    pub point: usize,
    pub reason: String,
}

impl fmt::Display for FanFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "point #{}: {}", self.point, self.reason)
    }
}

/// Decides whether the space is locally `Spec`: for each `σ`, sending `τ`
/// to the generators of `stalk(σ)` that become units at `τ` must be a
/// bijection from `↓σ` onto the faces, reverse the order, and identify
/// `stalk(τ)` with the corresponding localization.
pub fn is_fan(x: &MonoidedSpace) -> Result<FanCertificate, FanFailure> {
    let points: Vec<usize> = (0..x.len()).collect();
    let results = par::map(&points, |&s| check_point(x, s));
    let mut certs = Vec::new();
    for r in results {
        certs.push(r?);
    }
    Ok(FanCertificate { points: certs })
}

fn check_point(x: &MonoidedSpace, sigma: usize) -> Result<PointCertificate, FanFailure> {
    let fail = |reason: String| FanFailure { point: sigma, reason };
    let s = x.stalk(sigma);
    let primes = s.primes();
    let below: Vec<usize> = x.minimal_open(sigma).into_iter().collect();
    let mut assigned: Vec<(usize, PrimeIdeal)> = Vec::new();
    for &tau in &below {
        let rho = x.gen_map(sigma, tau);
        let target = x.stalk(tau);
        let face: BTreeSet<usize> =
            (0..s.generators().len()).filter(|&i| target.is_unit(&rho.mul_vec(&s.generators()[i]))).collect();
        let prime = PrimeIdeal::from_face(face);
        if !primes.contains(&prime) {
            return Err(fail(format!("units at {} do not form a face of the stalk", x.name(tau))));
        }
        let mut gens: Vec<_> = s.generators().iter().map(|g| rho.mul_vec(g)).collect();
        gens.extend(prime.complement_face().iter().map(|&i| -&rho.mul_vec(&s.generators()[i])));
        let localized = AffineMonoid::new(target.ambient(), gens);
        if !localized.same_monoid(target) {
            return Err(fail(format!("stalk at {} is not the localization at {prime}", x.name(tau))));
        }
        if let Some((other, _)) = assigned.iter().find(|(_, p)| *p == prime) {
            return Err(fail(format!("{} and {} give the same prime {prime}", x.name(*other), x.name(tau))));
        }
        assigned.push((tau, prime));
    }
    if assigned.len() != primes.len() {
        return Err(fail(format!(
            "minimal open has {} points but the stalk has {} primes",
            assigned.len(),
            primes.len()
        )));
    }
    for (a, pa) in &assigned {
        for (b, pb) in &assigned {
            if x.leq(*a, *b) != pa.is_subset_of(pb) {
                return Err(fail(format!(
                    "order between {} and {} does not match prime inclusion",
                    x.name(*a),
                    x.name(*b)
                )));
            }
        }
    }
    Ok(PointCertificate { point: sigma, primes: assigned })
}

impl FanCertificate {
    /// Re-verifies the recorded correspondence against `x`.
    pub fn recheck(&self, x: &MonoidedSpace) -> bool {
        self.points.len() == x.len()
            && self.points.iter().all(|c| check_point(x, c.point).map(|fresh| fresh == *c).unwrap_or(false))
    }
}
