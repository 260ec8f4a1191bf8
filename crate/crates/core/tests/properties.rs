use fermat_core::homology::{geometric_to_coords, GeometricSymbol, GroupRingElement};
use fermat_core::manin::{
    boundary, enumerate_cosets, left_multiply, right_multiply, Presentation, SymbolVector,
};
use fermat_core::psl2::{
    abelianization, constants, coset_label, gamma2_word, phi_membership, CosetLabel, Gen,
    Gamma2Word, ProjMatrix,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn letter() -> impl Strategy<Value = (Gen, i64)> {
    (prop::bool::ANY, prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]))
        .prop_map(|(a, e)| (if a { Gen::A } else { Gen::B }, e))
}

fn word(max_len: usize) -> impl Strategy<Value = Vec<(Gen, i64)>> {
    prop::collection::vec(letter(), 0..=max_len)
}

fn evaluate(letters: &[(Gen, i64)]) -> ProjMatrix {
    letters.iter().fold(ProjMatrix::identity(), |acc, (g, e)| {
        let e = BigInt::from(*e);
        acc.mul(&match g {
            Gen::A => ProjMatrix::a_power(&e),
            Gen::B => ProjMatrix::b_power(&e),
        })
    })
}

fn psl2_element() -> impl Strategy<Value = ProjMatrix> {
    // Γ(2) word times one of the six coset representatives
    (word(8), 0usize..6).prop_map(|(w, k)| evaluate(&w).mul(&constants().alpha[k]))
}

/// A random element of Φ(n): products of Aⁿ, Bⁿ and commutators of random
/// Γ(2) elements.
fn phi_element(n: usize) -> impl Strategy<Value = ProjMatrix> {
    prop::collection::vec((0usize..3, word(4), word(4), prop::bool::ANY), 1..=4).prop_map(
        move |parts| {
            let nb = BigInt::from(n);
            parts.iter().fold(ProjMatrix::identity(), |acc, (kind, u, v, inv)| {
                let g = match kind {
                    0 => ProjMatrix::a_power(&nb),
                    1 => ProjMatrix::b_power(&nb),
                    _ => {
                        let (x, y) = (evaluate(u), evaluate(v));
                        x.mul(&y).mul(&x.inv()).mul(&y.inv())
                    }
                };
                acc.mul(&if *inv { g.inv() } else { g })
            })
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn gamma2_words_round_trip(w in word(20)) {
        let m = evaluate(&w);
        let decomposed = gamma2_word(&m).unwrap();
        prop_assert_eq!(decomposed.evaluate(), m.clone());
        let letters = decomposed.letters();
        prop_assert!(letters.windows(2).all(|p| p[0].0 != p[1].0));
        prop_assert!(letters.iter().all(|(_, e)| *e != BigInt::from(0)));
        prop_assert_eq!(Gamma2Word::from_letters(letters.to_vec()), decomposed.clone());
        // abelianization is the exponent sum of any word for m
        let sum = |g: Gen| w.iter().filter(|l| l.0 == g).map(|l| l.1).sum::<i64>();
        prop_assert_eq!(abelianization(&m).unwrap(), (BigInt::from(sum(Gen::A)), BigInt::from(sum(Gen::B))));
    }

    #[test]
    fn coset_representative_residual_is_in_phi(m in psl2_element(), n in 1usize..=6) {
        let label = coset_label(&m, n);
        prop_assert!(phi_membership(&m.mul(&label.representative().inv()), n));
    }

    #[test]
    fn coset_label_is_phi_invariant(
        (n, g) in (1usize..=6).prop_flat_map(|n| (Just(n), phi_element(n))),
        m in psl2_element(),
    ) {
        prop_assert!(phi_membership(&g, n));
        prop_assert_eq!(coset_label(&g.mul(&m), n), coset_label(&m, n));
    }

    #[test]
    fn right_multiplication_matches_matrices(m in psl2_element(), g in psl2_element(), n in 1usize..=5) {
        let label = coset_label(&m, n);
        prop_assert_eq!(right_multiply(&label, &g, n), coset_label(&m.mul(&g), n));
    }

    #[test]
    fn left_multiplication_by_tau_is_well_defined(
        (n, g) in (1usize..=5).prop_flat_map(|n| (Just(n), phi_element(n))),
        m in psl2_element(),
    ) {
        let tau = &constants().tau;
        let a = left_multiply(tau, &coset_label(&m, n), n);
        prop_assert_eq!(a, coset_label(&tau.mul(&g).mul(&m), n));
    }

    #[test]
    fn reduction_and_boundary_are_linear(
        n in 1usize..=5,
        terms in prop::collection::vec((0usize..6, 0usize..5, 0usize..5, -4i64..=4), 0..8),
    ) {
        let p = Presentation::new(n).unwrap();
        let mut v = SymbolVector::zero(n);
        let mut expected = p.reduce(&v);
        let mut expected_boundary = fermat_core::manin::CuspDivisor::zero();
        for &(k, i, j, c) in &terms {
            let label = CosetLabel::new(i % n, j % n, k);
            v.add_term(label, c);
            expected = &expected + &p.reduce_label(&label).scale(&BigInt::from(c));
            for (cusp, x) in boundary(&SymbolVector::symbol(n, label)).terms() {
                expected_boundary.add_term(*cusp, x * c);
            }
        }
        prop_assert_eq!(p.reduce(&v), expected);
        prop_assert_eq!(boundary(&v), expected_boundary);
    }

    #[test]
    fn dictionary_is_linear(
        n in 1usize..=5,
        a in prop::collection::vec((0i64..5, 0i64..5, -3i64..=3), 0..5),
        b in prop::collection::vec((0i64..5, 0i64..5, -3i64..=3), 0..5),
    ) {
        let p = Presentation::new(n).unwrap();
        let ring = |t: &[(i64, i64, i64)]| {
            let mut g = GroupRingElement::zero(n);
            for &(x, y, c) in t {
                g.add_term(x, y, c);
            }
            g
        };
        let g1 = GeometricSymbol::gamma(n).scale(&ring(&a));
        let g2 = GeometricSymbol::gammabar(n).scale(&ring(&b));
        let sum = geometric_to_coords(&(&g1 + &g2), &p);
        prop_assert_eq!(sum, &geometric_to_coords(&g1, &p) + &geometric_to_coords(&g2, &p));
    }
}

#[test]
fn exactly_six_n_squared_labels() {
    for n in 1..=6 {
        let mut seen = std::collections::BTreeSet::new();
        for label in enumerate_cosets(n) {
            let got = coset_label(&label.representative(), n);
            assert_eq!(got, label);
            seen.insert(got);
        }
        assert_eq!(seen.len(), 6 * n * n);
    }
}
