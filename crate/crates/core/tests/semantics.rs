use dilator_core::element::Budget;
use dilator_core::expr::{dil_expr, sum, DilatorExpr};
use dilator_core::jfunctor::j_eval;
use dilator_core::ordinal::ord;
use dilator_core::validate::{decompose_check, shift_check, Check};
use dilator_core::Ordinal;
use proptest::prelude::*;

fn dilator() -> impl Strategy<Value = DilatorExpr> {
    prop::sample::select(vec!["1", "Const(2)", "Const(w)", "Id", "Id + 1", "Id*2", "Id*w", "omega[Id]", "head[Id]", "Const(w) + Id*2"])
        .prop_map(dil_expr)
}

fn gamma() -> impl Strategy<Value = Ordinal> {
    prop::sample::select(vec![ord("1"), ord("2"), ord("w"), ord("w+2"), ord("w^2")])
}

fn small() -> Budget {
    Budget { width: 2, max_len: 2, cap: 20_000 }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn shift_of_sums_is_coherent(a in dilator(), b in dilator(), g in gamma()) {
        let d = sum(a, b);
        let c = shift_check(&d, &g, 60, &small()).unwrap();
        prop_assert!(c.ok(), "{}: {:?}", d, c);
    }

    #[test]
    fn decomposition_of_sums_is_coherent(a in dilator(), b in dilator()) {
        let d = sum(a, b);
        let c = decompose_check(&d, 60, &small()).unwrap();
        prop_assert!(matches!(c, Check::Verified { .. }), "{}: {:?}", d, c);
    }

    #[test]
    fn composition_law(a in dilator(), b in dilator(), g in gamma()) {
        let g = ord("w").add(&g);
        let (Ok(whole), Ok(first)) = (j_eval(&sum(a.clone(), b.clone()), &g), j_eval(&a, &g)) else {
            return Ok(());
        };
        if let Ok(second) = j_eval(&b, &first.value) {
            prop_assert_eq!(whole.value, second.value);
        }
    }
}
