use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::normal_form::{hermite_form, hnf, Hnf};
use crate::{IntMatrix, LatticeError};

pub fn rank(m: &IntMatrix) -> usize {
    hermite_form(m).1.len()
}

/// Saturated ℤ-basis of the left kernel `{x : x·m = 0}`, as rows.
///
/// The rows of the Hermite transform that hit zero rows of `h` are part of
/// a unimodular matrix, so the lattice they span is primitive. The result is
/// returned in Hermite form so it does not depend on elimination order.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let r = hnf(m);
    let rank = r.rank();
    let idx: Vec<usize> = (rank..m.nrows()).collect();
    let raw = r.u.select_rows(&idx);
    hermite_form(&raw).0
}

/// A row lattice with linearly independent generators, prepared for
/// repeated membership queries.
#[derive(Clone, Debug)]
pub struct RowLattice {
    basis_rows: usize,
    hnf: Hnf,
}

impl RowLattice {
    pub fn new(basis: &IntMatrix) -> Result<Self, LatticeError> {
        let hnf = hnf(basis);
        if hnf.rank() < basis.nrows() {
            return Err(LatticeError::DependentBasis {
                rank: hnf.rank(),
                rows: basis.nrows(),
            });
        }
        Ok(RowLattice { basis_rows: basis.nrows(), hnf })
    }

    pub fn rank(&self) -> usize {
        self.basis_rows
    }

    /// Coefficients `c` with `c·basis = target`, or `None` if `target` is
    /// not in the lattice.
    pub fn solve(&self, target: &[BigInt]) -> Result<Option<Vec<BigInt>>, LatticeError> {
        let h = &self.hnf.h;
        if target.len() != h.ncols() {
            return Err(LatticeError::DimensionMismatch {
                expected: h.ncols(),
                found: target.len(),
            });
        }
        let mut residual = target.to_vec();
        let mut coeffs = vec![BigInt::zero(); h.nrows()];
        for (t, &c) in self.hnf.pivots.iter().enumerate() {
            if residual[c].is_zero() {
                continue;
            }
            let (q, rem) = residual[c].div_rem(h.get(t, c));
            if !rem.is_zero() {
                return Ok(None);
            }
            for (x, e) in residual.iter_mut().zip(h.row(t)) {
                if !e.is_zero() {
                    *x -= &q * e;
                }
            }
            coeffs[t] = q;
        }
        if residual.iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        // c_h·h = target and h = u·basis, so c = c_h·u.
        Ok(Some(self.hnf.u.left_mul_vec(&coeffs)))
    }
}

/// Coefficients `c` with `c·basis = target`, or `None` if `target` is not in
/// the row lattice of `basis`.
pub fn solve_in_lattice(
    basis: &IntMatrix,
    target: &[BigInt],
) -> Result<Option<Vec<BigInt>>, LatticeError> {
    if target.len() != basis.ncols() {
        return Err(LatticeError::DimensionMismatch {
            expected: basis.ncols(),
            found: target.len(),
        });
    }
    RowLattice::new(basis)?.solve(target)
}

/// Whether two matrices span the same row lattice.
pub fn same_row_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.ncols() == b.ncols() && hermite_form(a).0 == hermite_form(b).0
}
