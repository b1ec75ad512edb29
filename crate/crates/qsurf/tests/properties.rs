//! Property-based invariants of the symbolic layer: the star operation, the
//! free product, and the rewriting engine, fuzzed over random elements of
//! all four algebras with exact coefficients.

use proptest::prelude::*;

use qsurf::algebra::{AlgebraId, Element, Letter, Word};
use qsurf::parse::parse_expression;
use qsurf::scalar::{Exact, QcPoly};
use qsurf::surfaces;

fn arb_algebra() -> impl Strategy<Value = AlgebraId> {
    prop_oneof![
        Just(AlgebraId::Equator),
        Just(AlgebraId::Sphere),
        Just(AlgebraId::Disc),
        Just(AlgebraId::Rp2),
    ]
}

fn arb_word(algebra: AlgebraId, max_len: usize) -> impl Strategy<Value = Word> {
    let count = algebra.gens().len();
    prop::collection::vec((0..count, any::<bool>()), 0..=max_len).prop_map(move |ls| {
        Word(
            ls.into_iter()
                .map(|(g, star)| {
                    if star && !algebra.gens()[g].self_adjoint {
                        Letter::starred(g)
                    } else {
                        Letter::plain(g)
                    }
                })
                .collect(),
        )
    })
}

fn arb_element(algebra: AlgebraId) -> impl Strategy<Value = Element<Exact>> {
    prop::collection::vec(
        (arb_word(algebra, 4), -6i64..=6, 1i64..=3, any::<bool>()),
        1..=3,
    )
    .prop_map(move |terms| {
        let mut acc = Element::zero(Exact, algebra);
        for (w, numer, denom, imag) in terms {
            let mut k = QcPoly::from_ratio(numer, denom);
            if imag {
                k = k.mul(&QcPoly::i());
            }
            acc = &acc + &Element::from_word(Exact, algebra, w, k);
        }
        acc
    })
}

fn one_element() -> impl Strategy<Value = (AlgebraId, Element<Exact>)> {
    arb_algebra().prop_flat_map(|alg| (Just(alg), arb_element(alg)))
}

fn two_elements() -> impl Strategy<Value = (AlgebraId, Element<Exact>, Element<Exact>)> {
    arb_algebra().prop_flat_map(|alg| (Just(alg), arb_element(alg), arb_element(alg)))
}

fn three_elements(
) -> impl Strategy<Value = (AlgebraId, Element<Exact>, Element<Exact>, Element<Exact>)> {
    arb_algebra().prop_flat_map(|alg| {
        (
            Just(alg),
            arb_element(alg),
            arb_element(alg),
            arb_element(alg),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn star_is_an_involution((_, a) in one_element()) {
        prop_assert!(a.star().star() == a);
    }

    #[test]
    fn star_reverses_products((_, a, b) in two_elements()) {
        prop_assert!((&a * &b).star() == &b.star() * &a.star());
    }

    #[test]
    fn multiplication_is_associative((_, a, b, c) in three_elements()) {
        prop_assert!(&(&a * &b) * &c == &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes((_, a, b, c) in three_elements()) {
        prop_assert!(&a * &(&b + &c) == &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn normalization_is_idempotent((alg, a) in one_element()) {
        let pres = surfaces::build_presentation(alg, Exact).unwrap();
        let nf = pres.normal_form(&a).unwrap();
        prop_assert!(pres.normal_form(&nf).unwrap() == nf);
    }

    #[test]
    fn normalization_respects_products((alg, a, b) in two_elements()) {
        let pres = surfaces::build_presentation(alg, Exact).unwrap();
        let direct = pres.normal_form(&(&a * &b)).unwrap();
        let staged = pres
            .normal_form(&(&pres.normal_form(&a).unwrap() * &pres.normal_form(&b).unwrap()))
            .unwrap();
        prop_assert!(direct == staged);
    }

    #[test]
    fn normalization_commutes_with_star((alg, a) in one_element()) {
        let pres = surfaces::build_presentation(alg, Exact).unwrap();
        let lhs = pres.normal_form(&a.star()).unwrap();
        let rhs = pres.normal_form(&pres.normal_form(&a).unwrap().star()).unwrap();
        prop_assert!(lhs == rhs);
    }

    #[test]
    fn printed_elements_parse_back((alg, a) in one_element()) {
        let text = a.to_string();
        let back = parse_expression(&text, Exact, alg).unwrap();
        prop_assert!(back == a, "round-trip failed for `{}`", text);

        // Normal forms bring q-power coefficients into play; they must
        // round-trip as well.
        let pres = surfaces::build_presentation(alg, Exact).unwrap();
        let nf = pres.normal_form(&a).unwrap();
        let text = nf.to_string();
        let back = parse_expression(&text, Exact, alg).unwrap();
        prop_assert!(back == nf, "round-trip failed for `{}`", text);
    }
}
