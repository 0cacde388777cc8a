use std::collections::{BTreeMap, BTreeSet};

use super::{MonoidedSpace, SpaceError};
use crate::lattice::{unimodular_inverse, IntMatrix};
use crate::monoid::AffineMonoid;

/// `Γ(U, M)` for an open set `U`.
///
/// On each connected component of `U` with a unique minimal point `η`, the
/// sections are the intersection of the images of the maximal stalks in
/// `stalk(η)`. Several components give the direct sum, in order of their
/// smallest point; the empty set gives the zero monoid in rank 0.
pub fn sections(x: &MonoidedSpace, open: &BTreeSet<usize>) -> Result<AffineMonoid, SpaceError> {
    if !x.is_open(open) {
        return Err(SpaceError::NotOpen);
    }
    let mut out = AffineMonoid::new(0, Vec::new());
    for comp in x.components_of(open) {
        let minimal: Vec<usize> =
            comp.iter().copied().filter(|&p| comp.iter().all(|&q| q == p || !x.leq(q, p))).collect();
        if minimal.len() != 1 {
            let names: Vec<&str> = minimal.iter().map(|&p| x.name(p)).collect();
            return Err(SpaceError::NotIrreducible(format!("minimal points {}", names.join(", "))));
        }
        let eta = minimal[0];
        let mut meet: Option<AffineMonoid> = None;
        for sigma in x.maximal_in(&comp) {
            let image = x.stalk(sigma).image(&x.gen_map(sigma, eta));
            meet = Some(match meet {
                None => image,
                Some(m) => m.intersection(&image),
            });
        }
        out = out.direct_sum(&meet.expect("nonempty component"));
    }
    Ok(out)
}

/// One identification of a point of piece `first.0` with a point of piece
/// `second.0`, with a lattice isomorphism carrying the first stalk onto the
/// second.
#[derive(Clone, Debug)]
pub struct Identification {
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub iso: IntMatrix,
}

/// Glues spaces along identified points.
///
/// Points are named `k:name` for piece `k`. Each class of identified points
/// keeps the stalk of its first member; the other members' stalks are moved
/// there by the composed isomorphisms. The result need not be a fan.
pub fn glue(pieces: &[MonoidedSpace], ids: &[Identification]) -> Result<MonoidedSpace, SpaceError> {
    let bad = |m: String| SpaceError::IncompatibleIdentification(m);
    let mut offset = Vec::with_capacity(pieces.len());
    let mut total = 0;
    for p in pieces {
        offset.push(total);
        total += p.len();
    }
    let locate = |g: usize| -> (usize, usize) {
        let k = offset.iter().rposition(|&o| o <= g).expect("point in some piece");
        (k, g - offset[k])
    };
    let stalk_of = |g: usize| {
        let (k, i) = locate(g);
        pieces[k].stalk(i)
    };
    let mut rep: Vec<usize> = (0..total).collect();
    let mut to_rep: Vec<IntMatrix> = (0..total).map(|g| IntMatrix::identity(stalk_of(g).ambient())).collect();
    for id in ids {
        for &(k, i) in [&id.first, &id.second] {
            if k >= pieces.len() || i >= pieces[k].len() {
                return Err(SpaceError::UnknownPoint(format!("{k}:#{i}")));
            }
        }
        let (a, b) = (offset[id.first.0] + id.first.1, offset[id.second.0] + id.second.1);
        let (sa, sb) = (stalk_of(a), stalk_of(b));
        let iso = &id.iso;
        if iso.rows() != sb.ambient() || iso.cols() != sa.ambient() || !iso.is_unimodular() {
            return Err(bad(format!("map for point {a} -> {b} is not a lattice isomorphism")));
        }
        if !sa.image(iso).same_monoid(sb) {
            return Err(bad(format!("map does not carry stalk {sa} onto {sb}")));
        }
        let (ra, rb) = (rep[a], rep[b]);
        if ra == rb {
            let direct = &to_rep[b] * iso;
            if sa.generators().iter().any(|g| direct.mul_vec(g) != to_rep[a].mul_vec(g)) {
                return Err(bad(format!("points {a} and {b} are already identified differently")));
            }
            continue;
        }
        let (keep, absorb, bridge) = if ra < rb {
            // rb -> b -> a -> ra
            (ra, rb, &(&to_rep[a] * &unimodular_inverse(iso)) * &unimodular_inverse(&to_rep[b]))
        } else {
            (rb, ra, &(&to_rep[b] * iso) * &unimodular_inverse(&to_rep[a]))
        };
        for g in 0..total {
            if rep[g] == absorb {
                to_rep[g] = &bridge * &to_rep[g];
                rep[g] = keep;
            }
        }
    }
    let classes: Vec<usize> = (0..total).filter(|&g| rep[g] == g).collect();
    let class_of: BTreeMap<usize, usize> =
        (0..total).map(|g| (g, classes.iter().position(|&c| c == rep[g]).expect("class root"))).collect();
    let names: Vec<String> = classes
        .iter()
        .map(|&g| {
            let (k, i) = locate(g);
            format!("{k}:{}", pieces[k].name(i))
        })
        .collect();
    let stalks: Vec<AffineMonoid> = classes.iter().map(|&g| stalk_of(g).clone()).collect();
    let mut order = Vec::new();
    let mut maps: BTreeMap<(usize, usize), IntMatrix> = BTreeMap::new();
    for (k, piece) in pieces.iter().enumerate() {
        for p in 0..piece.len() {
            for q in 0..piece.len() {
                if p == q || !piece.leq(p, q) {
                    continue;
                }
                let (gp, gq) = (offset[k] + p, offset[k] + q);
                let (cp, cq) = (class_of[&gp], class_of[&gq]);
                if cp == cq {
                    return Err(bad(format!("{} and {} are comparable but identified", piece.name(p), piece.name(q))));
                }
                let m = &(&to_rep[gp] * &piece.gen_map(q, p)) * &unimodular_inverse(&to_rep[gq]);
                if let Some(existing) = maps.get(&(cq, cp)) {
                    if stalks[cq].generators().iter().any(|g| existing.mul_vec(g) != m.mul_vec(g)) {
                        return Err(bad(format!("maps {} -> {} disagree", names[cq], names[cp])));
                    }
                } else {
                    maps.insert((cq, cp), m);
                    order.push((cp, cq));
                }
            }
        }
    }
    MonoidedSpace::new(names, &order, stalks, maps).map_err(|e| bad(e.to_string()))
}
