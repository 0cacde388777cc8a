use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, IntVector};

/// `u * a * v == d` with `d` diagonal, `d[i] | d[i+1]`, all `d[i] >= 0`.
///
/// The inverses of the unimodular factors are tracked alongside them so that
/// callers can move between coordinate systems without a matrix inversion.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// The diagonal entries `d[0], d[1], ...` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

struct Tracker {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Tracker {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    // row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.d.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, &-c);
    }

    // col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.d.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.v_inv.add_row_multiple(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut t = Tracker {
        d: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    for k in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in k..m {
                for j in k..n {
                    let e = &t.d[(i, j)];
                    if e.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| e.abs() < t.d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(t);
            };
            t.swap_rows(k, pi);
            t.swap_cols(k, pj);

            let mut clean = true;
            for i in k + 1..m {
                if t.d[(i, k)].is_zero() {
                    continue;
                }
                let q = &t.d[(i, k)] / &t.d[(k, k)];
                t.add_row(i, k, &-q);
                if !t.d[(i, k)].is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..n {
                if t.d[(k, j)].is_zero() {
                    continue;
                }
                let q = &t.d[(k, j)] / &t.d[(k, k)];
                t.add_col(j, k, &-q);
                if !t.d[(k, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let pivot = t.d[(k, k)].clone();
            let offender = (k + 1..m).find(|&i| (k + 1..n).any(|j| !t.d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => t.add_row(k, i, &BigInt::from(1)),
                None => break,
            }
        }
        if t.d[(k, k)].is_negative() {
            t.negate_row(k);
        }
    }
    finish(t)
}

fn finish(t: Tracker) -> SmithForm {
    let mut t = t;
    for k in 0..t.d.rows().min(t.d.cols()) {
        if t.d[(k, k)].is_negative() {
            t.negate_row(k);
        }
    }
    SmithForm { u: t.u, u_inv: t.u_inv, d: t.d, v: t.v, v_inv: t.v_inv }
}

/// Row-style Hermite normal form: `h == w * a`, `w` unimodular, `h` in row
/// echelon form with positive pivots and entries above each pivot reduced
/// into `[0, pivot)`. Zero rows come last.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub w: IntMatrix,
    /// Pivot column of each nonzero row.
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero rows of `h`.
    pub fn basis(&self) -> Vec<IntVector> {
        (0..self.rank()).map(|i| self.h.row(i)).collect()
    }
}

pub fn hermite_normal_form(a: &IntMatrix) -> HermiteForm {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut w = IntMatrix::identity(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                if best.is_none_or(|b| h[(i, c)].abs() < h[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            w.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -(&h[(i, c)] / &h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                w.add_row_multiple(i, r, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            w.negate_row(r);
        }
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row_multiple(i, r, &q);
            w.add_row_multiple(i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    HermiteForm { h, w, pivots }
}

/// A basis of the integer kernel `{x : a x = 0}`, in Hermite normal form.
pub fn kernel_basis(a: &IntMatrix) -> Vec<IntVector> {
    let n = a.cols();
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let raw: Vec<IntVector> = (r..n).map(|j| snf.v.col(j)).collect();
    if raw.is_empty() {
        return raw;
    }
    hermite_normal_form(&IntMatrix::from_rows(&raw, n)).basis()
}

/// Inverse of a unimodular matrix via its Smith form.
pub fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    debug_assert!(snf.diagonal().iter().all(|d| d.is_one()));
    &snf.v * &snf.u
}
