use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Cone, PolyhedralError};
use crate::lattice::{saturated_span, smith_normal_form, IntMatrix, IntVector};
use crate::par;

/// The unique minimal generating set of the monoid `c ∩ Z^d`.
///
/// Candidates are the rays together with the lattice points of the half-open
/// fundamental parallelepiped of every simplicial cone spanned by a basis of
/// rays; every lattice point of `c` lies in one of these simplicial cones, so
/// the candidates generate. Reducible candidates (those `x` with `x - g` in
/// `c` for another candidate `g`) are then discarded.
pub fn hilbert_basis(c: &Cone) -> Result<Vec<IntVector>, PolyhedralError> {
    if !c.is_strongly_convex() {
        return Err(PolyhedralError::NotStronglyConvex(c.to_string()));
    }
    let d = c.ambient();
    let rays = c.decomposition().rays.clone();
    if rays.is_empty() {
        return Ok(Vec::new());
    }
    let lattice = saturated_span(&rays, d);
    let local: Vec<IntVector> = rays.iter().map(|r| lattice.coordinates(r).expect("ray in its span")).collect();
    let hb = pointed_full_dim_basis(&local, lattice.rank());
    let mut out: Vec<IntVector> = hb.iter().map(|y| lattice.from_coordinates(y)).collect();
    out.sort();
    Ok(out)
}

/// Monoid generators of `c ∩ Z^d` for any rational cone, including cones
/// with a lineality space. The result is the Hilbert basis of the pointed
/// quotient, lifted, plus a basis of the lineality lattice and its negative.
pub fn lattice_point_generators(c: &Cone) -> Vec<IntVector> {
    let d = c.ambient();
    let dec = c.decomposition();
    if dec.lineality.is_empty() {
        return hilbert_basis(c).expect("strongly convex");
    }
    let gens = dec.generators();
    let span = saturated_span(&gens, d);
    let k = span.rank();
    let coords = |v: &IntVector| span.coordinates(v).expect("generator in its span");
    let lin_local: Vec<IntVector> = dec.lineality.iter().map(coords).collect();
    let lin_lattice = saturated_span(&lin_local, k);
    let l = lin_lattice.rank();
    // unimodular change of coordinates sending the lineality lattice onto
    // the first l coordinate axes
    let snf = smith_normal_form(&lin_lattice.basis_matrix());
    let to_split = |v: &IntVector| snf.u.mul_vec(v);
    let quotient: Vec<IntVector> = dec.rays.iter().map(|r| to_split(&coords(r)).slice(l..k)).collect();
    let pointed = Cone::new(k - l, quotient);
    let hb = hilbert_basis(&pointed).expect("quotient by lineality is pointed");
    let mut out: Vec<IntVector> = Vec::new();
    for y in hb {
        let lifted = snf.u_inv.mul_vec(&IntVector::zeros(l).concat(&y));
        out.push(span.from_coordinates(&lifted));
    }
    for b in lin_lattice.basis() {
        let v = span.from_coordinates(b);
        out.push(-&v);
        out.push(v);
    }
    out.sort();
    out.dedup();
    out
}

/// Hilbert basis of a pointed cone given by generators spanning `Q^k`.
fn pointed_full_dim_basis(rays: &[IntVector], k: usize) -> Vec<IntVector> {
    let cone = Cone::new(k, rays.to_vec());
    let rays = cone.decomposition().rays.clone();
    let bases = simplicial_bases(&rays, k);
    let chunks: Vec<Vec<IntVector>> = par::map(&bases, |b| {
        let cols: Vec<IntVector> = b.iter().map(|&i| rays[i].clone()).collect();
        parallelepiped_points(&cols, k)
    });
    let mut candidates: BTreeSet<IntVector> = rays.iter().cloned().collect();
    for pts in chunks {
        candidates.extend(pts.into_iter().filter(|p| !p.is_zero()));
    }
    let candidates: Vec<IntVector> = candidates.into_iter().collect();
    let keep: Vec<bool> = par::map_range(candidates.len(), |i| {
        let x = &candidates[i];
        !candidates.iter().enumerate().any(|(j, g)| j != i && cone.contains(&(x - g)))
    });
    candidates.into_iter().zip(keep).filter_map(|(x, k)| k.then_some(x)).collect()
}

/// All `k`-subsets of rays that are linearly independent.
fn simplicial_bases(rays: &[IntVector], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(rays: &[IntVector], k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            let rows: Vec<IntVector> = current.iter().map(|&i| rays[i].clone()).collect();
            if !IntMatrix::from_rows(&rows, k).determinant().is_zero() {
                out.push(current.clone());
            }
            return;
        }
        for i in start..rays.len() {
            if rays.len() - i < k - current.len() {
                break;
            }
            current.push(i);
            rec(rays, k, i + 1, current, out);
            current.pop();
        }
    }
    rec(rays, k, 0, &mut current, &mut out);
    out
}

/// Lattice points of `{ sum l_i b_i : 0 <= l_i < 1 }` for a basis `b` of `Q^k`.
///
/// Representatives of `Z^k / B Z^k` come from the Smith form `U B V = D`:
/// `x = U^{-1} y` for `y` in the box `prod [0, d_i)`; each is then shifted
/// into the parallelepiped by subtracting `B floor(B^{-1} x)`.
pub(crate) fn parallelepiped_points(basis: &[IntVector], k: usize) -> Vec<IntVector> {
    let b = IntMatrix::from_cols(basis, k);
    let snf = smith_normal_form(&b);
    let diag = snf.diagonal();
    let big_l = diag.iter().fold(BigInt::one(), |acc, x| acc.lcm(x));
    let mut out = Vec::new();
    let mut y: Vec<BigInt> = vec![BigInt::zero(); k];
    loop {
        let x = snf.u_inv.mul_vec(&IntVector::new(y.clone()));
        // B^{-1} x = V D^{-1} y, scaled by L to stay integral
        let scaled: IntVector = y.iter().zip(&diag).map(|(yi, di)| yi * (&big_l / di)).collect();
        let lambda_l = snf.v.mul_vec(&scaled);
        let floors: IntVector = lambda_l.iter().map(|t| t.div_floor(&big_l)).collect();
        out.push(&x - &b.mul_vec(&floors));
        // odometer over the box
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            y[i] += 1;
            if y[i] < diag[i] {
                break;
            }
            y[i] = BigInt::zero();
            i += 1;
        }
    }
}

/// Whether `x` is a sum of two nonzero lattice points of `c`, decided with
/// the Hilbert basis `hb` of `c`.
pub fn is_reducible(c: &Cone, hb: &[IntVector], x: &IntVector) -> bool {
    hb.iter().any(|g| g != x && c.contains(&(x - g)))
}
