//! Reduction of arbitrary Manin symbols onto the canonical free basis.
//!
//! Basis order: `y[i,j]` for 1 ≤ i ≤ n−1, 0 ≤ j ≤ n−1, then `x[n−1,j]` for
//! 0 ≤ j ≤ n−1, then `y[0,n−1]`, where `x[i,j] = [AⁱBʲ]` and
//! `y[i,j] = [AⁱBʲτ]`.
//!
//! The relation lattice is put in Hermite form with the non-basis cosets as
//! the leading columns and the basis cosets last. Freeness of the quotient
//! on the chosen basis is then equivalent to: every non-basis column is a
//! pivot, every pivot is 1, and no basis column is a pivot. Each pivot row
//! reads `e_c + Σ w_b e_b`, giving `[c] = −Σ w_b [b]`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use fermat_lattice::{hermite_form, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{boundary_of_label, check_level, coset_index, enumerate_cosets, relation_matrix, ManinError, SymbolVector};
use crate::psl2::CosetLabel;

/// `x[i,j] = [AⁱBʲ]` or `y[i,j] = [AⁱBʲτ]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisSymbol {
    X { i: usize, j: usize },
    Y { i: usize, j: usize },
}

impl BasisSymbol {
    pub fn coset(&self) -> CosetLabel {
        match *self {
            BasisSymbol::X { i, j } => CosetLabel::new(i, j, 0),
            BasisSymbol::Y { i, j } => CosetLabel::new(i, j, 2),
        }
    }
}

impl fmt::Display for BasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisSymbol::X { i, j } => write!(f, "x[{i},{j}]"),
            BasisSymbol::Y { i, j } => write!(f, "y[{i},{j}]"),
        }
    }
}

/// The canonical free basis of rank n² + 1.
pub fn free_basis(n: usize) -> Vec<BasisSymbol> {
    let ys = (1..n).flat_map(|i| (0..n).map(move |j| BasisSymbol::Y { i, j }));
    let xs = (0..n).map(|j| BasisSymbol::X { i: n - 1, j });
    ys.chain(xs)
        .chain(std::iter::once(BasisSymbol::Y { i: 0, j: n - 1 }))
        .collect()
}

/// Coordinates in the canonical free basis (length n² + 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedCoords {
    n: usize,
    coords: Vec<BigInt>,
}

impl ReducedCoords {
    pub fn zero(n: usize) -> Self {
        ReducedCoords { n, coords: vec![BigInt::zero(); n * n + 1] }
    }

    pub fn from_vec(n: usize, coords: Vec<BigInt>) -> Self {
        assert_eq!(coords.len(), n * n + 1, "reduced coordinates have length n²+1");
        ReducedCoords { n, coords }
    }

    pub fn unit(n: usize, position: usize) -> Self {
        let mut v = Self::zero(n);
        v.coords[position] = BigInt::one();
        v
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_vec(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> ReducedCoords {
        ReducedCoords {
            n: self.n,
            coords: self.coords.iter().map(|x| x * k).collect(),
        }
    }
}

impl Add for &ReducedCoords {
    type Output = ReducedCoords;

    fn add(self, rhs: &ReducedCoords) -> ReducedCoords {
        assert_eq!(self.n, rhs.n, "level mismatch");
        ReducedCoords {
            n: self.n,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ReducedCoords {
    type Output = ReducedCoords;

    fn sub(self, rhs: &ReducedCoords) -> ReducedCoords {
        assert_eq!(self.n, rhs.n, "level mismatch");
        ReducedCoords {
            n: self.n,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ReducedCoords {
    type Output = ReducedCoords;

    fn neg(self) -> ReducedCoords {
        ReducedCoords {
            n: self.n,
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

/// The Manin-symbol space of Φ(n) as a free ℤ-module with its reduction map.
#[derive(Clone, Debug)]
pub struct Presentation {
    n: usize,
    basis: Vec<BasisSymbol>,
    /// Row `coset_index(c)` holds the reduced coordinates of `[c]`.
    reduction: IntMatrix,
}

impl Presentation {
    pub fn new(n: usize) -> Result<Self, ManinError> {
        check_level(n)?;
        Self::from_relations(n, &relation_matrix(n)?)
    }

    /// Builds the reduction from an explicit relation matrix with
    /// [`enumerate_cosets`] columns. Fails if the quotient is not free on
    /// the canonical basis.
    pub fn from_relations(n: usize, relations: &IntMatrix) -> Result<Self, ManinError> {
        check_level(n)?;
        let size = 6 * n * n;
        if relations.ncols() != size {
            return Err(ManinError::RelationShape {
                rows: relations.nrows(),
                cols: relations.ncols(),
                expected_rows: 2 * size,
                expected_cols: size,
            });
        }
        let basis = free_basis(n);
        let basis_cols: Vec<usize> = basis.iter().map(|b| coset_index(&b.coset(), n)).collect();
        let basis_set: BTreeSet<usize> = basis_cols.iter().copied().collect();
        let mut order: Vec<usize> = (0..size).filter(|c| !basis_set.contains(c)).collect();
        let nb = order.len();
        order.extend(&basis_cols);

        // Duplicate rows (each σ-pair and τ-triple appears once per member)
        // do not change the lattice.
        let mut seen = BTreeSet::new();
        let rows: Vec<Vec<BigInt>> = relations
            .rows_iter()
            .map(|row| order.iter().map(|&c| row[c].clone()).collect::<Vec<_>>())
            .filter(|row| seen.insert(row.clone()))
            .collect();
        let permuted = IntMatrix::from_rows(size, rows);
        let (h, pivots) = hermite_form(&permuted);

        let torsion = |detail: String| ManinError::TorsionDetected { n, detail };
        if pivots.len() != nb || pivots.iter().enumerate().any(|(t, &c)| t != c) {
            return Err(torsion(format!(
                "relation rank {} with pivots {:?}, expected the {nb} non-basis columns",
                pivots.len(),
                pivots.iter().filter(|&&c| c >= nb).collect::<Vec<_>>()
            )));
        }
        if let Some(t) = (0..nb).find(|&t| !h.get(t, t).is_one()) {
            return Err(torsion(format!("elementary divisor {} at pivot {t}", h.get(t, t))));
        }

        let rank = basis.len();
        let mut reduction = IntMatrix::zeros(size, rank);
        for (t, &c) in order[..nb].iter().enumerate() {
            for b in 0..rank {
                let w = h.get(t, nb + b);
                if !w.is_zero() {
                    reduction.set(c, b, -w);
                }
            }
        }
        for (b, &c) in basis_cols.iter().enumerate() {
            reduction.set(c, b, BigInt::one());
        }
        Ok(Presentation { n, basis, reduction })
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisSymbol] {
        &self.basis
    }

    pub fn basis_labels(&self) -> Vec<String> {
        self.basis.iter().map(ToString::to_string).collect()
    }

    /// The 6n² × (n²+1) reduction map, rows in [`enumerate_cosets`] order.
    pub fn reduction_matrix(&self) -> &IntMatrix {
        &self.reduction
    }

    pub fn reduce_label(&self, label: &CosetLabel) -> ReducedCoords {
        let label = CosetLabel::new(label.i % self.n, label.j % self.n, label.k);
        ReducedCoords {
            n: self.n,
            coords: self.reduction.row(coset_index(&label, self.n)).to_vec(),
        }
    }

    pub fn reduce(&self, v: &SymbolVector) -> ReducedCoords {
        assert_eq!(v.level(), self.n, "level mismatch");
        let mut out = ReducedCoords::zero(self.n);
        for (label, c) in v.terms() {
            let row = self.reduction.row(coset_index(label, self.n));
            for (o, r) in out.coords.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        out
    }

    fn wrap(&self, x: i64) -> usize {
        usize::try_from(x.rem_euclid(self.n as i64)).expect("residue is nonnegative")
    }

    /// Reduced `x[i,j]`, indices taken mod n.
    pub fn x(&self, i: i64, j: i64) -> ReducedCoords {
        self.reduce_label(&CosetLabel::new(self.wrap(i), self.wrap(j), 0))
    }

    /// Reduced `y[i,j]`, indices taken mod n.
    pub fn y(&self, i: i64, j: i64) -> ReducedCoords {
        self.reduce_label(&CosetLabel::new(self.wrap(i), self.wrap(j), 2))
    }

    /// (n²+1) × 3n matrix whose rows are the boundaries of the basis symbols,
    /// columns in [`cusp_set`](super::cusp_set) order.
    pub fn boundary_matrix(&self) -> IntMatrix {
        let rows = self
            .basis
            .iter()
            .map(|b| boundary_of_label(&b.coset(), self.n).to_vector(self.n))
            .collect();
        IntMatrix::from_rows(3 * self.n, rows)
    }

    /// Position of a basis symbol in the canonical order.
    pub fn basis_position(&self, symbol: &BasisSymbol) -> Option<usize> {
        self.basis.iter().position(|b| b == symbol)
    }

    /// Cosets in [`enumerate_cosets`] order, for callers building dense vectors.
    pub fn cosets(&self) -> Vec<CosetLabel> {
        enumerate_cosets(self.n)
    }
}
