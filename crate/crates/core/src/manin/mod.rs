//! Manin symbols for Φ(n).
//!
//! The symbol `[g]` of a right coset Φ(n)g obeys `[g] + [gσ] = 0` and
//! `[g] + [gτ] + [gτ²] = 0`; the J-relation is vacuous in PSL₂(ℤ). The
//! quotient of the free group on the 6n² cosets by these relations is free
//! of rank n² + 1 ([`Presentation`]). Cusps and the boundary map live in
//! [`cusps`].

mod cusps;
mod presentation;

pub use cusps::{
    boundary, boundary_of_label, cusp_class, cusp_set, general_cusp_classify, CuspBase,
    CuspClass, CuspDivisor,
};
pub use presentation::{free_basis, BasisSymbol, Presentation, ReducedCoords};

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use fermat_lattice::IntMatrix;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::psl2::{constants, coset_label, CosetLabel, ProjMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ManinError {
    #[error("level must be at least 1, got {0}")]
    InvalidLevel(usize),
    #[error("relation lattice has torsion or the canonical basis is not free (level {n}): {detail}")]
    TorsionDetected { n: usize, detail: String },
    #[error("relation matrix has shape {rows}×{cols}, expected {expected_rows}×{expected_cols}")]
    RelationShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
}

pub(crate) fn check_level(n: usize) -> Result<(), ManinError> {
    if n == 0 {
        Err(ManinError::InvalidLevel(n))
    } else {
        Ok(())
    }
}

/// All 6n² coset labels, `k` outermost, then `i`, then `j`.
pub fn enumerate_cosets(n: usize) -> Vec<CosetLabel> {
    (0..6)
        .flat_map(|k| (0..n).flat_map(move |i| (0..n).map(move |j| CosetLabel::new(i, j, k))))
        .collect()
}

/// Position of `label` in [`enumerate_cosets`].
pub fn coset_index(label: &CosetLabel, n: usize) -> usize {
    label.k * n * n + label.i * n + label.j
}

/// Label of Φ(n)·AⁱBʲαₖ·g.
///
/// αₖg = γ·α_{k'} with γ ∈ Γ(2), and Γ(2)/Φ(n) is abelian, so the answer is
/// `(i, j, 0) + label(αₖg)`.
pub fn right_multiply(label: &CosetLabel, g: &ProjMatrix, n: usize) -> CosetLabel {
    let shift = coset_label(&constants().alpha[label.k].mul(g), n);
    CosetLabel::new((label.i + shift.i) % n, (label.j + shift.j) % n, shift.k)
}

/// Label of Φ(n)·g·AⁱBʲαₖ. Well defined when `g` normalizes Φ(n), which
/// holds for every element of Γ(2) and for τ.
pub fn left_multiply(g: &ProjMatrix, label: &CosetLabel, n: usize) -> CosetLabel {
    coset_label(&g.mul(&label.representative()), n)
}

/// Labels of (AⁱBʲαₖ)σ and (AⁱBʲαₖ)τ.
pub fn sigma_tau_images(label: &CosetLabel, n: usize) -> (CosetLabel, CosetLabel) {
    let c = constants();
    (right_multiply(label, &c.sigma, n), right_multiply(label, &c.tau, n))
}

/// Column indices of each relation row, σ-rows first. A repeated index
/// would mean a coefficient of 2 or 3.
pub(crate) fn relation_supports(n: usize) -> Vec<Vec<usize>> {
    let cosets = enumerate_cosets(n);
    let tau = &constants().tau;
    let sigma_rows = cosets.iter().map(|a| {
        let (s, _) = sigma_tau_images(a, n);
        vec![coset_index(a, n), coset_index(&s, n)]
    });
    let tau_rows = cosets.iter().map(|a| {
        let t1 = right_multiply(a, tau, n);
        let t2 = right_multiply(&t1, tau, n);
        vec![coset_index(a, n), coset_index(&t1, n), coset_index(&t2, n)]
    });
    sigma_rows.chain(tau_rows).collect()
}

/// The 12n² × 6n² relation matrix: one σ-row `[a] + [aσ]` per coset, then
/// one τ-row `[a] + [aτ] + [aτ²]` per coset, columns in
/// [`enumerate_cosets`] order.
pub fn relation_matrix(n: usize) -> Result<IntMatrix, ManinError> {
    check_level(n)?;
    let size = 6 * n * n;
    let supports = relation_supports(n);
    let mut m = IntMatrix::zeros(supports.len(), size);
    for (r, support) in supports.iter().enumerate() {
        for &c in support {
            let v = m.get(r, c) + 1;
            m.set(r, c, v);
        }
    }
    Ok(m)
}

/// A finite integer combination of Manin symbols (no zero coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymbolVector {
    n: usize,
    terms: BTreeMap<CosetLabel, BigInt>,
}

impl SymbolVector {
    pub fn zero(n: usize) -> Self {
        SymbolVector { n, terms: BTreeMap::new() }
    }

    pub fn symbol(n: usize, label: CosetLabel) -> Self {
        let mut v = Self::zero(n);
        v.add_term(label, BigInt::one());
        v
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, label: CosetLabel, coeff: impl Into<BigInt>) {
        let label = CosetLabel::new(label.i % self.n, label.j % self.n, label.k);
        let entry = self.terms.entry(label).or_insert_with(BigInt::zero);
        *entry += coeff.into();
        if entry.is_zero() {
            self.terms.remove(&label);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CosetLabel, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Dense vector over [`enumerate_cosets`].
    pub fn to_dense(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); 6 * self.n * self.n];
        for (label, c) in &self.terms {
            v[coset_index(label, self.n)] = c.clone();
        }
        v
    }
}

impl Add for &SymbolVector {
    type Output = SymbolVector;

    fn add(self, rhs: &SymbolVector) -> SymbolVector {
        assert_eq!(self.n, rhs.n, "level mismatch");
        let mut out = self.clone();
        for (l, c) in &rhs.terms {
            out.add_term(*l, c.clone());
        }
        out
    }
}

impl Neg for &SymbolVector {
    type Output = SymbolVector;

    fn neg(self) -> SymbolVector {
        SymbolVector {
            n: self.n,
            terms: self.terms.iter().map(|(l, c)| (*l, -c)).collect(),
        }
    }
}

impl Sub for &SymbolVector {
    type Output = SymbolVector;

    fn sub(self, rhs: &SymbolVector) -> SymbolVector {
        self + &(-rhs)
    }
}
