//! The group ring ℤ[μₙ×μₙ] and the geometric symbols γ, γ̄ over it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::manin::{Presentation, ReducedCoords};

fn wrap(e: i64, n: usize) -> usize {
    usize::try_from(e.rem_euclid(n as i64)).expect("residue is nonnegative")
}

/// Σ c_{p,q} ε₀ᵖ ε₁^q with exponents mod n and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElement {
    n: usize,
    terms: BTreeMap<(usize, usize), BigInt>,
}

impl GroupRingElement {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "level must be positive");
        GroupRingElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0, 0)
    }

    /// ε₀ᵖ ε₁^q.
    pub fn monomial(n: usize, p: i64, q: i64) -> Self {
        let mut g = Self::zero(n);
        g.add_term(p, q, BigInt::one());
        g
    }

    pub fn e0(n: usize) -> Self {
        Self::monomial(n, 1, 0)
    }

    pub fn e1(n: usize) -> Self {
        Self::monomial(n, 0, 1)
    }

    /// Σ_{k<n} xᵏ.
    pub fn norm(x: &GroupRingElement) -> Self {
        let mut acc = Self::zero(x.n);
        let mut power = Self::one(x.n);
        for _ in 0..x.n {
            acc = &acc + &power;
            power = &power * x;
        }
        acc
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, p: i64, q: i64, c: impl Into<BigInt>) {
        let key = (wrap(p, self.n), wrap(q, self.n));
        let entry = self.terms.entry(key).or_insert_with(BigInt::zero);
        *entry += c.into();
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: i64, q: i64) -> BigInt {
        let key = (wrap(p, self.n), wrap(q, self.n));
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.n), |acc, _| &acc * self)
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;

    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        assert_eq!(self.n, rhs.n, "level mismatch");
        let mut out = self.clone();
        for (&(p, q), c) in &rhs.terms {
            out.add_term(p as i64, q as i64, c.clone());
        }
        out
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;

    fn neg(self) -> GroupRingElement {
        GroupRingElement {
            n: self.n,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;

    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        self + &(-rhs)
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;

    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        assert_eq!(self.n, rhs.n, "level mismatch");
        let mut out = GroupRingElement::zero(self.n);
        for (&(p1, q1), c1) in &self.terms {
            for (&(p2, q2), c2) in &rhs.terms {
                out.add_term((p1 + p2) as i64, (q1 + q2) as i64, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (t, ((p, q), c)) in self.terms.iter().enumerate() {
            if t > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*e0^{p}*e1^{q}")?;
        }
        Ok(())
    }
}

/// a·γ + b·γ̄ in the relative homology, a, b ∈ ℤ[μₙ×μₙ].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricSymbol {
    pub gamma_part: GroupRingElement,
    pub gammabar_part: GroupRingElement,
}

impl GeometricSymbol {
    pub fn new(gamma_part: GroupRingElement, gammabar_part: GroupRingElement) -> Self {
        assert_eq!(gamma_part.level(), gammabar_part.level(), "level mismatch");
        GeometricSymbol { gamma_part, gammabar_part }
    }

    pub fn gamma(n: usize) -> Self {
        Self::new(GroupRingElement::one(n), GroupRingElement::zero(n))
    }

    pub fn gammabar(n: usize) -> Self {
        Self::new(GroupRingElement::zero(n), GroupRingElement::one(n))
    }

    pub fn level(&self) -> usize {
        self.gamma_part.level()
    }

    /// r·(aγ + bγ̄) = (ra)γ + (rb)γ̄.
    pub fn scale(&self, r: &GroupRingElement) -> Self {
        Self::new(r * &self.gamma_part, r * &self.gammabar_part)
    }
}

impl Add for &GeometricSymbol {
    type Output = GeometricSymbol;

    fn add(self, rhs: &GeometricSymbol) -> GeometricSymbol {
        GeometricSymbol::new(
            &self.gamma_part + &rhs.gamma_part,
            &self.gammabar_part + &rhs.gammabar_part,
        )
    }
}

impl Sub for &GeometricSymbol {
    type Output = GeometricSymbol;

    fn sub(self, rhs: &GeometricSymbol) -> GeometricSymbol {
        GeometricSymbol::new(
            &self.gamma_part - &rhs.gamma_part,
            &self.gammabar_part - &rhs.gammabar_part,
        )
    }
}

/// Reduced coordinates under ε₀ᵖε₁^q·γ ↦ x[p,−q], ε₀ᵖε₁^q·γ̄ ↦ y[p,−q].
///
/// ε₀ acts as A and ε₁ as B⁻¹, which is where the sign on q comes from.
pub fn geometric_to_coords(g: &GeometricSymbol, p: &Presentation) -> ReducedCoords {
    assert_eq!(g.level(), p.level(), "level mismatch");
    let mut out = ReducedCoords::zero(p.level());
    for (&(a, b), c) in g.gamma_part.terms() {
        out = &out + &p.x(a as i64, -(b as i64)).scale(c);
    }
    for (&(a, b), c) in g.gammabar_part.terms() {
        out = &out + &p.y(a as i64, -(b as i64)).scale(c);
    }
    out
}

/// The generating set ε₀ⁱε₁ʲγ̄ (1 ≤ i ≤ n−1, 0 ≤ j ≤ n−1), ε₀ⁿ⁻¹ε₁ʲγ
/// (0 ≤ j ≤ n−1) and ε₁γ̄, in that order.
pub fn geometric_basis(n: usize) -> Vec<GeometricSymbol> {
    let mono = |p: usize, q: usize| GroupRingElement::monomial(n, p as i64, q as i64);
    let bars = (1..n).flat_map(|i| (0..n).map(move |j| (i, j)));
    bars.map(|(i, j)| GeometricSymbol::gammabar(n).scale(&mono(i, j)))
        .chain((0..n).map(|j| GeometricSymbol::gamma(n).scale(&mono(n - 1, j))))
        .chain(std::iter::once(GeometricSymbol::gammabar(n).scale(&mono(0, 1))))
        .collect()
}
