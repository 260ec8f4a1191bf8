//! PSL₂(ℤ), its free subgroup Γ(2) = ⟨A, B⟩, and the right cosets of the
//! Fermat group Φ(n) = ⟨Aⁿ, Bⁿ, Γ(2)′⟩.
//!
//! Every right coset of Φ(n) is `Φ(n)·AⁱBʲαₖ` for a unique [`CosetLabel`]
//! `(i, j, k)`: `k` is read off the reduction mod 2 (the six cosets of Γ(2)
//! biject with SL₂(ℤ/2)) and `(i, j)` is the abelianization of the Γ(2)
//! part reduced mod n.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Psl2Error {
    #[error("matrix [[{a}, {b}], [{c}, {d}]] does not have determinant 1")]
    NotUnimodular { a: BigInt, b: BigInt, c: BigInt, d: BigInt },
    #[error("matrix is not in Γ(2)")]
    NotInGamma2,
    #[error("point {0}/{1} is not in lowest terms")]
    NotReduced(BigInt, BigInt),
}

/// An element of PSL₂(ℤ), stored as the representative whose first nonzero
/// entry in the order (a, b, c, d) is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjMatrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl ProjMatrix {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, Psl2Error> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        if &a * &d - &b * &c != BigInt::one() {
            return Err(Psl2Error::NotUnimodular { a, b, c, d });
        }
        Ok(Self::normalized(a, b, c, d))
    }

    fn normalized(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        let lead = [&a, &b, &c, &d].into_iter().find(|x| !x.is_zero());
        if lead.is_some_and(Signed::is_negative) {
            ProjMatrix { a: -a, b: -b, c: -c, d: -d }
        } else {
            ProjMatrix { a, b, c, d }
        }
    }

    pub fn identity() -> Self {
        ProjMatrix {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: BigInt::one(),
        }
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn mul(&self, rhs: &ProjMatrix) -> ProjMatrix {
        Self::normalized(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }

    pub fn inv(&self) -> ProjMatrix {
        Self::normalized(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn pow(&self, exp: i64) -> ProjMatrix {
        let mut base = if exp < 0 { self.inv() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Aᵏ = [[1, 2k], [0, 1]].
    pub fn a_power(k: &BigInt) -> ProjMatrix {
        ProjMatrix {
            a: BigInt::one(),
            b: k * 2,
            c: BigInt::zero(),
            d: BigInt::one(),
        }
    }

    /// Bᵏ = [[1, 0], [2k, 1]].
    pub fn b_power(k: &BigInt) -> ProjMatrix {
        ProjMatrix {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: k * 2,
            d: BigInt::one(),
        }
    }

    /// Fractional-linear action on P¹(ℚ).
    pub fn act(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::from_pair(
            &self.a * &p.num + &self.b * &p.den,
            &self.c * &p.num + &self.d * &p.den,
        )
    }

    /// Image in SL₂(ℤ/2) as (a, b, c, d) bits packed into one byte.
    pub fn mod2(&self) -> u8 {
        let bit = |x: &BigInt| u8::from(x.is_odd());
        (bit(&self.a) << 3) | (bit(&self.b) << 2) | (bit(&self.c) << 1) | bit(&self.d)
    }
}

impl fmt::Display for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// A point of P¹(ℚ) = ℚ ∪ {∞} as a coprime pair `num/den` with `den ≥ 0`;
/// ∞ is `1/0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    num: BigInt,
    den: BigInt,
}

impl ProjPoint {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, Psl2Error> {
        let (num, den) = (num.into(), den.into());
        if !num.gcd(&den).is_one() {
            return Err(Psl2Error::NotReduced(num, den));
        }
        Ok(Self::from_pair(num, den))
    }

    fn from_pair(num: BigInt, den: BigInt) -> Self {
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_zero() { (num, den) } else { (num / &g, den / &g) };
        if den.is_negative() || (den.is_zero() && num.is_negative()) {
            num = -num;
            den = -den;
        }
        ProjPoint { num, den }
    }

    pub fn infinity() -> Self {
        ProjPoint { num: BigInt::one(), den: BigInt::zero() }
    }

    pub fn integer(k: impl Into<BigInt>) -> Self {
        ProjPoint { num: k.into(), den: BigInt::one() }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_infinity(&self) -> bool {
        self.den.is_zero()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "∞")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// The named matrices A, B, σ, τ, J and the Γ(2) coset representatives α₀…α₅.
#[derive(Clone, Debug)]
pub struct Constants {
    pub a: ProjMatrix,
    pub b: ProjMatrix,
    pub sigma: ProjMatrix,
    pub tau: ProjMatrix,
    /// −I, which is the identity in PSL₂(ℤ).
    pub j: ProjMatrix,
    pub alpha: [ProjMatrix; 6],
    alpha_by_mod2: [Option<usize>; 16],
}

fn pm(a: i64, b: i64, c: i64, d: i64) -> ProjMatrix {
    ProjMatrix::new(a, b, c, d).expect("constant matrices have determinant 1")
}

pub fn constants() -> &'static Constants {
    static CONSTANTS: OnceLock<Constants> = OnceLock::new();
    CONSTANTS.get_or_init(|| {
        let alpha = [
            pm(1, 0, 0, 1),
            pm(1, 1, -1, 0),
            pm(0, -1, 1, -1),
            pm(0, 1, -1, 0),
            pm(1, 1, 0, 1),
            pm(1, 0, 1, 1),
        ];
        let mut alpha_by_mod2 = [None; 16];
        for (k, m) in alpha.iter().enumerate() {
            let slot = &mut alpha_by_mod2[usize::from(m.mod2())];
            assert!(slot.is_none(), "coset representatives must be distinct mod 2");
            *slot = Some(k);
        }
        Constants {
            a: pm(1, 2, 0, 1),
            b: pm(1, 0, 2, 1),
            sigma: pm(0, 1, -1, 0),
            tau: pm(0, -1, 1, -1),
            j: pm(-1, 0, 0, -1),
            alpha,
            alpha_by_mod2,
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    B,
}

/// A reduced word in the free generators A, B of Γ(2).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Gamma2Word {
    letters: Vec<(Gen, BigInt)>,
}

impl Gamma2Word {
    /// Builds a word from arbitrary letters, merging neighbours and dropping
    /// zero exponents.
    pub fn from_letters(letters: impl IntoIterator<Item = (Gen, BigInt)>) -> Self {
        let mut out: Vec<(Gen, BigInt)> = Vec::new();
        for (g, e) in letters {
            if e.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some((last, exp)) if *last == g => {
                    *exp += e;
                    if exp.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        Gamma2Word { letters: out }
    }

    pub fn letters(&self) -> &[(Gen, BigInt)] {
        &self.letters
    }

    pub fn evaluate(&self) -> ProjMatrix {
        self.letters.iter().fold(ProjMatrix::identity(), |acc, (g, e)| match g {
            Gen::A => acc.mul(&ProjMatrix::a_power(e)),
            Gen::B => acc.mul(&ProjMatrix::b_power(e)),
        })
    }

    pub fn inverse(&self) -> Gamma2Word {
        Gamma2Word {
            letters: self.letters.iter().rev().map(|(g, e)| (*g, -e)).collect(),
        }
    }
}

impl fmt::Display for Gamma2Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (g, e) in &self.letters {
            write!(f, "{}^{}", if *g == Gen::A { "A" } else { "B" }, e)?;
        }
        Ok(())
    }
}

pub fn gamma2_membership(m: &ProjMatrix) -> bool {
    m.mod2() == ProjMatrix::identity().mod2()
}

/// Decomposes an element of Γ(2) into its reduced word in A and B.
///
/// Euclid on the first column: left multiplication by Aᵏ changes `a` by
/// `2kc` and by Bᵏ changes `c` by `2ka`. With `a` odd and `c` even the
/// remainder step strictly shrinks `|a| + |c|`, ending at `c = 0`, where the
/// matrix is a power of A.
pub fn gamma2_word(m: &ProjMatrix) -> Result<Gamma2Word, Psl2Error> {
    if !gamma2_membership(m) {
        return Err(Psl2Error::NotInGamma2);
    }
    // peeled[t] is the letter L_t with L_t⁻¹ ⋯ L_1⁻¹ · m reduced, so
    // m = L_1 ⋯ L_t · rest.
    let mut peeled: Vec<(Gen, BigInt)> = Vec::new();
    let mut cur = m.clone();
    while !cur.c.is_zero() {
        if cur.a.magnitude() > cur.c.magnitude() {
            // a ← a − 2kc; nearest multiple so the remainder is below |c|
            let k = nearest_quotient(&cur.a, &(&cur.c * 2));
            cur = ProjMatrix::a_power(&-&k).mul(&cur);
            peeled.push((Gen::A, k));
        } else {
            let k = nearest_quotient(&cur.c, &(&cur.a * 2));
            cur = ProjMatrix::b_power(&-&k).mul(&cur);
            peeled.push((Gen::B, k));
        }
    }
    // cur = [[1, b], [0, 1]] after normalization
    debug_assert!(cur.a.is_one() && cur.d.is_one());
    let tail = (Gen::A, cur.b.div_floor(&BigInt::from(2)));
    Ok(Gamma2Word::from_letters(peeled.into_iter().chain(std::iter::once(tail))))
}

/// The integer `k` minimising `|x − k·m|`.
fn nearest_quotient(x: &BigInt, m: &BigInt) -> BigInt {
    let (q, r) = x.div_mod_floor(m);
    // r has the sign of m; compare 2|r| against |m|
    if r.magnitude() * 2u32 > *m.magnitude() {
        q + m.signum()
    } else {
        q
    }
}

/// Exponent sums (A-exponents, B-exponents) of the reduced word.
pub fn abelianization(m: &ProjMatrix) -> Result<(BigInt, BigInt), Psl2Error> {
    let word = gamma2_word(m)?;
    let mut p = BigInt::zero();
    let mut q = BigInt::zero();
    for (g, e) in word.letters() {
        match g {
            Gen::A => p += e,
            Gen::B => q += e,
        }
    }
    Ok((p, q))
}

pub fn phi_membership(m: &ProjMatrix, n: usize) -> bool {
    match abelianization(m) {
        Ok((p, q)) => {
            let n = BigInt::from(n);
            p.is_multiple_of(&n) && q.is_multiple_of(&n)
        }
        Err(_) => false,
    }
}

/// Names the right coset Φ(n)·AⁱBʲαₖ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetLabel {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl CosetLabel {
    pub fn new(i: usize, j: usize, k: usize) -> Self {
        assert!(k < 6, "coset representative index {k} out of range");
        CosetLabel { i, j, k }
    }

    /// The representative AⁱBʲαₖ.
    pub fn representative(&self) -> ProjMatrix {
        let a = ProjMatrix::a_power(&BigInt::from(self.i));
        let b = ProjMatrix::b_power(&BigInt::from(self.j));
        a.mul(&b).mul(&constants().alpha[self.k])
    }
}

impl fmt::Display for CosetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.i, self.j, self.k)
    }
}

pub(crate) fn residue(x: &BigInt, n: usize) -> usize {
    let r = x.mod_floor(&BigInt::from(n));
    usize::try_from(&r).expect("residue fits in usize")
}

/// Index of the Γ(2)-coset containing `m`, i.e. the `k` with `m·αₖ⁻¹ ∈ Γ(2)`.
pub fn gamma2_coset_index(m: &ProjMatrix) -> usize {
    // m·αₖ⁻¹ ≡ I mod 2 iff m ≡ αₖ mod 2
    constants().alpha_by_mod2[usize::from(m.mod2())]
        .expect("every SL₂(ℤ/2) element is the image of a coset representative")
}

pub fn coset_label(m: &ProjMatrix, n: usize) -> CosetLabel {
    assert!(n >= 1, "level must be positive");
    let k = gamma2_coset_index(m);
    let residual = m.mul(&constants().alpha[k].inv());
    let (p, q) = abelianization(&residual).expect("residual lies in Γ(2) by construction");
    CosetLabel::new(residue(&p, n), residue(&q, n), k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn named_constants() {
        let c = constants();
        assert_eq!(c.alpha[3], c.sigma);
        assert_eq!(c.alpha[2], c.tau);
        assert!(c.j.is_identity());
        assert!(c.alpha[0].is_identity());
    }

    #[test]
    fn sign_normalization() {
        let m = ProjMatrix::new(-1, -2, 0, -1).unwrap();
        assert_eq!(m, constants().a);
        let m = ProjMatrix::new(0, -1, 1, 0).unwrap();
        assert_eq!(m.entries(), [&big(0), &big(1), &big(-1), &big(0)]);
        assert!(ProjMatrix::new(1, 1, 1, 1).is_err());
    }

    #[test]
    fn group_laws() {
        let c = constants();
        assert!(c.a.mul(&c.a.inv()).is_identity());
        assert!(c.tau.mul(&c.tau).mul(&c.tau).is_identity());
        assert!(c.sigma.mul(&c.sigma).is_identity());
        assert_eq!(c.tau.mul(&c.a), c.b.inv().mul(&c.tau));
        // τB⁻¹τ⁻¹ = BA⁻¹ exactly; it agrees with A⁻¹B only modulo Γ(2)′
        assert_eq!(c.tau.mul(&c.b.inv()), c.b.mul(&c.a.inv()).mul(&c.tau));
        assert_ne!(c.tau.mul(&c.b.inv()), c.a.inv().mul(&c.b).mul(&c.tau));
    }

    #[test]
    fn action_on_cusps() {
        let c = constants();
        let zero = ProjPoint::integer(0);
        let one = ProjPoint::integer(1);
        let inf = ProjPoint::infinity();
        assert_eq!(c.tau.act(&zero), one);
        assert_eq!(c.tau.act(&inf), zero);
        let ba = c.b.inv().mul(&c.a);
        assert_eq!(ba.act(&zero), ProjPoint::new(2, -3).unwrap());
        assert_eq!(ba.act(&inf), ProjPoint::new(1, -2).unwrap());
        // BA⁻¹ fixes 1
        assert_eq!(c.b.mul(&c.a.inv()).act(&one), one);
        assert_eq!(c.a.act(&one), ProjPoint::integer(3));
    }

    #[test]
    fn gamma2_membership_examples() {
        let c = constants();
        assert!(gamma2_membership(&c.a));
        assert!(!gamma2_membership(&c.sigma));
        assert!(!gamma2_membership(&c.alpha[1].mul(&c.alpha[4].inv())));
        for i in 0..6 {
            for j in 0..6 {
                if i != j {
                    assert!(!gamma2_membership(&c.alpha[i].mul(&c.alpha[j].inv())));
                }
            }
        }
    }

    #[test]
    fn words_of_simple_elements() {
        let c = constants();
        let w = gamma2_word(&c.a.pow(2)).unwrap();
        assert_eq!(w.letters(), &[(Gen::A, big(2))]);
        let w = gamma2_word(&c.a.mul(&c.b)).unwrap();
        assert_eq!(w.letters(), &[(Gen::A, big(1)), (Gen::B, big(1))]);
        assert!(gamma2_word(&ProjMatrix::identity()).unwrap().letters().is_empty());
        assert_eq!(gamma2_word(&c.sigma), Err(Psl2Error::NotInGamma2));
    }

    #[test]
    fn abelianization_examples() {
        let c = constants();
        assert_eq!(abelianization(&c.a).unwrap(), (big(1), big(0)));
        let comm = c.a.mul(&c.b).mul(&c.a.inv()).mul(&c.b.inv());
        assert_eq!(abelianization(&comm).unwrap(), (big(0), big(0)));
        assert_eq!(abelianization(&c.b.pow(5).mul(&c.a.pow(3))).unwrap(), (big(3), big(5)));
    }

    #[test]
    fn phi_membership_examples() {
        let c = constants();
        for n in 1..8 {
            assert!(phi_membership(&c.a.pow(n as i64), n));
            let comm = c.a.mul(&c.b).mul(&c.a.inv()).mul(&c.b.inv());
            assert!(phi_membership(&comm, n));
            if n >= 2 {
                assert!(!phi_membership(&c.a, n));
            }
        }
        assert!(!phi_membership(&c.tau, 1));
    }

    #[test]
    fn coset_label_examples() {
        let c = constants();
        assert_eq!(coset_label(&ProjMatrix::identity(), 3), CosetLabel::new(0, 0, 0));
        assert_eq!(coset_label(&c.a.mul(&c.b.pow(2)), 3), CosetLabel::new(1, 2, 0));
        assert_eq!(coset_label(&c.sigma, 3), CosetLabel::new(0, 0, 3));
        assert_eq!(coset_label(&c.a.inv(), 4), CosetLabel::new(3, 0, 0));
    }

    #[test]
    fn nearest_quotient_rounds() {
        assert_eq!(nearest_quotient(&big(7), &big(4)), big(2));
        assert_eq!(nearest_quotient(&big(5), &big(4)), big(1));
        assert_eq!(nearest_quotient(&big(-7), &big(4)), big(-2));
        assert_eq!(nearest_quotient(&big(7), &big(-4)), big(-2));
    }
}
