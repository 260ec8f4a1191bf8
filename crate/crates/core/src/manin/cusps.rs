//! Cusps of Φ(n) and the boundary map on Manin symbols.
//!
//! Every cusp of Φ(n) lies over one of the three cusps 0, 1, ∞ of Γ(2), and
//! exactly n lie over each. A cusp is named by its base and an index mod n:
//! `AⁱBʲ·0 ↦ (zero, i)`, `AⁱBʲ·∞ ↦ (infinity, j)`, `AⁱBʲ·1 ↦ (one, i+j)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SymbolVector;
use crate::psl2::{abelianization, gamma2_membership, residue, CosetLabel, ProjMatrix, ProjPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CuspBase {
    Zero,
    One,
    Infinity,
}

impl CuspBase {
    pub const ALL: [CuspBase; 3] = [CuspBase::Zero, CuspBase::One, CuspBase::Infinity];

    fn position(self) -> usize {
        match self {
            CuspBase::Zero => 0,
            CuspBase::One => 1,
            CuspBase::Infinity => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CuspBase::Zero => "zero",
            CuspBase::One => "one",
            CuspBase::Infinity => "infinity",
        }
    }

    /// A matrix h with h·∞ equal to the base point.
    fn from_infinity(self) -> ProjMatrix {
        let m = |a: i64, b: i64, c: i64, d: i64| {
            ProjMatrix::new(a, b, c, d).expect("determinant one")
        };
        match self {
            CuspBase::Infinity => ProjMatrix::identity(),
            CuspBase::Zero => m(0, -1, 1, 0),
            CuspBase::One => m(1, 0, 1, 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CuspClass {
    pub base: CuspBase,
    pub index: usize,
}

impl CuspClass {
    pub fn new(base: CuspBase, index: usize) -> Self {
        CuspClass { base, index }
    }

    /// Position in [`cusp_set`].
    pub fn position(&self, n: usize) -> usize {
        self.base.position() * n + self.index
    }
}

impl fmt::Display for CuspClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.base.name(), self.index)
    }
}

/// The 3n cusps, bases in the order zero, one, infinity, index inner.
pub fn cusp_set(n: usize) -> Vec<CuspClass> {
    CuspBase::ALL
        .iter()
        .flat_map(|&b| (0..n).map(move |k| CuspClass::new(b, k)))
        .collect()
}

/// Class of AⁱBʲ·base.
pub fn cusp_class(i: usize, j: usize, base: CuspBase, n: usize) -> CuspClass {
    let index = match base {
        CuspBase::Zero => i,
        CuspBase::Infinity => j,
        CuspBase::One => i + j,
    };
    CuspClass::new(base, index % n)
}

/// Φ(n)-class of an arbitrary cusp p/q.
///
/// Writes p/q = g·∞ with g ∈ PSL₂(ℤ), then adjusts g by the stabilizer of
/// ∞ until g·h⁻¹ ∈ Γ(2), where h·∞ is the base cusp of the same parity.
/// Modulo Φ(n) that element is A^a B^b with (a, b) its abelianization.
pub fn general_cusp_classify(point: &ProjPoint, n: usize) -> CuspClass {
    let (p, q) = (point.numerator(), point.denominator());
    let base = match (p.is_odd(), q.is_odd()) {
        (true, false) => CuspBase::Infinity,
        (false, true) => CuspBase::Zero,
        (true, true) => CuspBase::One,
        (false, false) => unreachable!("numerator and denominator are coprime"),
    };
    let e = p.extended_gcd(q);
    let (mut x, mut y) = (e.x, e.y);
    // x p + y q = gcd = ±1
    if e.gcd.is_negative() {
        x = -x;
        y = -y;
    }
    debug_assert!(e.gcd.abs().is_one());
    let g = ProjMatrix::new(p.clone(), -y, q.clone(), x).expect("determinant one");
    let h_inv = base.from_infinity().inv();
    let t = ProjMatrix::new(1, 1, 0, 1).expect("determinant one");
    let mut shifted = g;
    for _ in 0..2 {
        let gamma = shifted.mul(&h_inv);
        if gamma2_membership(&gamma) {
            let (a, b) = abelianization(&gamma).expect("element of Γ(2)");
            return cusp_class(residue(&a, n), residue(&b, n), base, n);
        }
        shifted = shifted.mul(&t);
    }
    unreachable!("one of g, gT lies in Γ(2)·h")
}

/// Sparse integer combination of cusps, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CuspDivisor {
    terms: BTreeMap<CuspClass, BigInt>,
}

impl CuspDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, cusp: CuspClass, coeff: impl Into<BigInt>) {
        let entry = self.terms.entry(cusp).or_insert_with(BigInt::zero);
        *entry += coeff.into();
        if entry.is_zero() {
            self.terms.remove(&cusp);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CuspClass, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, cusp: &CuspClass) -> BigInt {
        self.terms.get(cusp).cloned().unwrap_or_default()
    }

    /// Dense vector over [`cusp_set`].
    pub fn to_vector(&self, n: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); 3 * n];
        for (c, x) in &self.terms {
            v[c.position(n)] = x.clone();
        }
        v
    }
}

/// ∂[g] = class(g·∞) − class(g·0) for g = AⁱBʲαₖ.
pub fn boundary_of_label(label: &CosetLabel, n: usize) -> CuspDivisor {
    let rep = label.representative();
    let mut d = CuspDivisor::zero();
    d.add_term(general_cusp_classify(&rep.act(&ProjPoint::infinity()), n), 1);
    d.add_term(general_cusp_classify(&rep.act(&ProjPoint::integer(0)), n), -1);
    d
}

pub fn boundary(v: &SymbolVector) -> CuspDivisor {
    let n = v.level();
    let mut d = CuspDivisor::zero();
    for (label, c) in v.terms() {
        for (cusp, x) in boundary_of_label(label, n).terms() {
            d.add_term(*cusp, c * x);
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manin::{enumerate_cosets, relation_supports};
    use crate::psl2::constants;

    fn pt(p: i64, q: i64) -> ProjPoint {
        ProjPoint::new(p, q).unwrap()
    }

    #[test]
    fn standard_points() {
        for n in 1..=5 {
            assert_eq!(general_cusp_classify(&pt(0, 1), n), CuspClass::new(CuspBase::Zero, 0));
            assert_eq!(
                general_cusp_classify(&ProjPoint::infinity(), n),
                CuspClass::new(CuspBase::Infinity, 0)
            );
            assert_eq!(general_cusp_classify(&pt(1, 1), n), CuspClass::new(CuspBase::One, 0));
            assert_eq!(general_cusp_classify(&pt(3, 1), n), CuspClass::new(CuspBase::One, 1 % n));
        }
    }

    #[test]
    fn cusp_set_sizes() {
        assert_eq!(cusp_set(1).len(), 3);
        assert_eq!(cusp_set(3).len(), 9);
        for (t, c) in cusp_set(4).iter().enumerate() {
            assert_eq!(c.position(4), t);
        }
    }

    #[test]
    fn a_and_b_powers_of_one_agree() {
        for n in 1..=6 {
            for k in 0..n {
                assert_eq!(cusp_class(k, 0, CuspBase::One, n), cusp_class(0, k, CuspBase::One, n));
                let a = ProjMatrix::a_power(&BigInt::from(k)).act(&pt(1, 1));
                let b = ProjMatrix::b_power(&BigInt::from(k)).act(&pt(1, 1));
                assert_eq!(general_cusp_classify(&a, n), general_cusp_classify(&b, n));
            }
        }
    }

    #[test]
    fn general_classification_matches_closed_forms() {
        let points = [
            (CuspBase::Zero, pt(0, 1)),
            (CuspBase::One, pt(1, 1)),
            (CuspBase::Infinity, ProjPoint::infinity()),
        ];
        for n in 1..=6 {
            for i in 0..n {
                for j in 0..n {
                    let g = ProjMatrix::a_power(&BigInt::from(i))
                        .mul(&ProjMatrix::b_power(&BigInt::from(j)));
                    for (base, p) in &points {
                        assert_eq!(
                            general_cusp_classify(&g.act(p), n),
                            cusp_class(i, j, *base, n),
                            "n={n} i={i} j={j} base={base:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn classification_respects_phi_translation() {
        let n = 4;
        let an = ProjMatrix::a_power(&BigInt::from(n));
        let bn = ProjMatrix::b_power(&BigInt::from(n));
        let c = constants();
        let comm = c.a.mul(&c.b).mul(&c.a.inv()).mul(&c.b.inv());
        for g in [an, bn, comm] {
            for p in [pt(2, 3), pt(-1, 2), pt(5, 7), pt(0, 1)] {
                assert_eq!(general_cusp_classify(&g.act(&p), n), general_cusp_classify(&p, n));
            }
        }
    }

    #[test]
    fn generator_boundaries() {
        for n in 1..=5 {
            for i in 0..n {
                for j in 0..n {
                    let dx = boundary_of_label(&CosetLabel::new(i, j, 0), n);
                    let mut ex = CuspDivisor::zero();
                    ex.add_term(cusp_class(i, j, CuspBase::Infinity, n), 1);
                    ex.add_term(cusp_class(i, j, CuspBase::Zero, n), -1);
                    assert_eq!(dx, ex);

                    let dy = boundary_of_label(&CosetLabel::new(i, j, 2), n);
                    let mut ey = CuspDivisor::zero();
                    ey.add_term(cusp_class(i, j, CuspBase::Zero, n), 1);
                    ey.add_term(cusp_class(i, j, CuspBase::One, n), -1);
                    assert_eq!(dy, ey);
                }
            }
        }
    }

    #[test]
    fn relations_have_zero_boundary() {
        for n in 1..=6 {
            let cosets = enumerate_cosets(n);
            for support in relation_supports(n) {
                let mut v = SymbolVector::zero(n);
                for c in support {
                    v.add_term(cosets[c], 1);
                }
                assert!(boundary(&v).is_zero());
            }
        }
    }
}
