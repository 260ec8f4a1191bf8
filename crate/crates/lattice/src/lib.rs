//! Exact integer linear algebra over ℤ.
//!
//! Everything here works on [`IntMatrix`], a dense matrix of arbitrary
//! precision integers. Vectors are rows: a vector `x` acts on a matrix `m`
//! from the left (`x·m`), and every basis is given as a list of rows.
//!
//! - [`hnf`] / [`hermite_form`]: row-style Hermite normal form.
//! - [`snf`] / [`elementary_divisors`]: Smith normal form.
//! - [`kernel_basis`]: saturated ℤ-basis of the left kernel.
//! - [`solve_in_lattice`]: coordinates of a vector in a row lattice.

mod kernel;
mod matrix;
mod normal_form;

pub use kernel::{kernel_basis, rank, same_row_lattice, solve_in_lattice, RowLattice};
pub use matrix::IntMatrix;
pub use normal_form::{elementary_divisors, hermite_form, hnf, snf, Hnf, Snf};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis rows are linearly dependent (rank {rank} of {rows})")]
    DependentBasis { rank: usize, rows: usize },
}
