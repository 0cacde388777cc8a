use num_integer::Integer;
use num_traits::Zero;

use super::{hermite_normal_form, kernel_basis, IntMatrix, IntVector};

/// The subgroup of `Z^d` generated by a finite list of vectors.
///
/// The basis is the Hermite normal form of the generators, so two generating
/// sets of the same subgroup yield the same basis. For a full-rank sublattice
/// of index one the basis is the standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    ambient: usize,
    basis: Vec<IntVector>,
    pivots: Vec<usize>,
    /// `basis[i] = sum_j gen_coeffs[i][j] * generators[j]`
    gen_coeffs: Vec<IntVector>,
}

impl Sublattice {
    pub fn generated_by(generators: &[IntVector], ambient: usize) -> Self {
        let hf = hermite_normal_form(&IntMatrix::from_rows(generators, ambient));
        let rank = hf.rank();
        Sublattice {
            ambient,
            basis: hf.basis(),
            pivots: hf.pivots.clone(),
            gen_coeffs: (0..rank).map(|i| hf.w.row(i)).collect(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis: Vec<IntVector> = (0..ambient).map(|i| IntVector::unit(ambient, i)).collect();
        Self::generated_by(&basis, ambient)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IntVector] {
        &self.basis
    }

    /// Basis vectors as the columns of an `ambient x rank` matrix.
    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_cols(&self.basis, self.ambient)
    }

    /// Integer coefficients expressing each basis vector in the original
    /// generators.
    pub fn generator_coefficients(&self) -> &[IntVector] {
        &self.gen_coeffs
    }

    /// Coordinates of `x` in the basis, or `None` when `x` is not in the
    /// sublattice.
    pub fn coordinates(&self, x: &IntVector) -> Option<IntVector> {
        assert_eq!(x.len(), self.ambient);
        let mut rest = x.clone();
        let mut coords = Vec::with_capacity(self.rank());
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let (q, r) = rest[p].div_rem(&b[p]);
            if !r.is_zero() {
                return None;
            }
            rest = rest.add_scaled(&-&q, b);
            coords.push(q);
        }
        rest.is_zero().then(|| IntVector::new(coords))
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        self.coordinates(x).is_some()
    }

    /// Inverse of [`Sublattice::coordinates`].
    pub fn from_coordinates(&self, y: &IntVector) -> IntVector {
        assert_eq!(y.len(), self.rank());
        let mut out = IntVector::zeros(self.ambient);
        for (c, b) in y.iter().zip(&self.basis) {
            out = out.add_scaled(c, b);
        }
        out
    }

    /// Integer (possibly negative) coefficients writing `x` as a combination
    /// of the generators the sublattice was built from.
    pub fn generator_combination(&self, x: &IntVector) -> Option<IntVector> {
        let y = self.coordinates(x)?;
        let n = self.gen_coeffs.first().map_or(0, |c| c.len());
        let mut out = IntVector::zeros(n);
        for (c, coeffs) in y.iter().zip(&self.gen_coeffs) {
            out = out.add_scaled(c, coeffs);
        }
        Some(out)
    }

    /// Whether the two sublattices coincide.
    pub fn same_as(&self, other: &Sublattice) -> bool {
        self.basis == other.basis
    }
}

/// A basis of `span_R(vectors) ∩ Z^d`, in Hermite normal form.
pub fn saturated_span(vectors: &[IntVector], ambient: usize) -> Sublattice {
    let orth = kernel_basis(&IntMatrix::from_rows(vectors, ambient));
    if orth.is_empty() {
        return Sublattice::full(ambient);
    }
    let basis = kernel_basis(&IntMatrix::from_rows(&orth, ambient));
    Sublattice::generated_by(&basis, ambient)
}

#[cfg(test)]
/// `c` as a `BigInt`, for terse call sites.
pub(crate) fn big(c: i64) -> num_bigint::BigInt {
    num_bigint::BigInt::from(c)
}
