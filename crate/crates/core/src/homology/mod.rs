//! Integral homology of the Fermat curve and the action of its automorphisms.
//!
//! H₁ is the kernel of the boundary map on the free symbol module. Two bases
//! are built from explicit cycles, `s[i,j] = ε₀ⁱε₁ʲ(1−ε₀)(1−ε₁)γ` and
//! `gamma[i,j]`, for 1 ≤ i ≤ n−2 and 0 ≤ j ≤ n−2, and both are checked to
//! be ℤ-bases of the kernel. Action matrices use the columns-are-images
//! convention: column t holds the coordinates of the image of basis vector t.

mod action;
mod bases;
mod closed_form;
mod group_ring;

pub use action::{action_on_homology, action_on_symbols, annihilator_check, AnnihilatorReport};
pub use bases::{gamma_cycle, homology, lim_basis, s_cycle, HomologyData};
pub use closed_form::{closed_form_action, closed_form_coordinates};
pub use group_ring::{geometric_basis, geometric_to_coords, GeometricSymbol, GroupRingElement};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::manin::ManinError;
use crate::psl2::{constants, ProjMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error(transparent)]
    Manin(#[from] ManinError),
    #[error("index ({i},{j}) outside 1 ≤ i ≤ {max_i}, 0 ≤ j ≤ {max_j}")]
    IndexOutOfRange { i: i64, j: i64, max_i: i64, max_j: i64 },
    #[error("level {n}: {what} is not a ℤ-basis of the boundary kernel")]
    NotABasis { n: usize, what: &'static str },
    #[error("level {n}: image of {what} is not in the span of the s-basis")]
    SolveFailed { n: usize, what: String },
    #[error("level {n}: the norm relations are not unimodular in the leading monomials")]
    InconsistentSystem { n: usize },
}

/// Automorphisms acting on symbols and homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    E0,
    E1,
    E0E1,
    Phi,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::E0, Generator::E1, Generator::E0E1, Generator::Phi];

    /// The matrix acting on cosets from the left: A, B⁻¹, B⁻¹A, τ.
    pub fn matrix(self) -> ProjMatrix {
        let c = constants();
        match self {
            Generator::E0 => c.a.clone(),
            Generator::E1 => c.b.inv(),
            Generator::E0E1 => c.b.inv().mul(&c.a),
            Generator::Phi => c.tau.clone(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::E0 => "e0",
            Generator::E1 => "e1",
            Generator::E0E1 => "e0e1",
            Generator::Phi => "phi",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| format!("unknown generator {s:?}, expected e0, e1, e0e1 or phi"))
    }
}
