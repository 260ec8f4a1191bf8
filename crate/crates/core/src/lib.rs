//! Modular symbols for the Fermat groups Φ(n) and the integral homology of
//! the Fermat curve xⁿ + yⁿ = zⁿ.
//!
//! Layers, bottom up:
//! - [`psl2`]: PSL₂(ℤ), Γ(2) words, Φ(n) coset labels.
//! - [`manin`]: Manin symbols, the σ/τ relation lattice, its free basis of
//!   rank n² + 1, cusps and the boundary map.
//! - [`homology`]: the group ring ℤ[μₙ×μₙ], homology bases and the integer
//!   matrices of ε₀, ε₁, ε₀ε₁ and φ.
//! - [`verify`]: the invariant suite behind `fermat-modsym verify`.

pub mod homology;
pub mod manin;
pub mod psl2;
pub mod verify;

pub use fermat_lattice as lattice;
