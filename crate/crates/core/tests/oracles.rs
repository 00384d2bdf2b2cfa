//! Values checked against oracles written independently of the evaluator:
//! hand unfoldings of the clauses, a separate evaluator for sums of constants
//! and `Id`, closed forms for collapses, and brute-force element counts.

use std::cmp::Ordering;

use dilator_core::element::{enum_elements, ordinal_ambient, Budget};
use dilator_core::expr::{dil_expr, parse_raw, DilatorExpr};
use dilator_core::jfunctor::{j_eval, jplus_eval, jprime_eval};
use dilator_core::ordinal::ord;
use dilator_core::psi::{psi_clause_otp, psi_enum, PsiBudget, PsiOrder};
use dilator_core::symbolic::otp_symbolic;
use dilator_core::DilatorExpr::Id;
use dilator_core::{Error, Ordinal};
use proptest::prelude::*;

// ---------------------------------------------------------------------------
// Linear dilators `c0 + Id + c1 + Id + ...`

#[derive(Clone, Debug)]
enum Part {
    C(Ordinal),
    Id,
}

/// J and J' on linear dilators, from the clauses alone. The last part decides
/// the clause: a trailing constant `c` adds `c` to the value of the rest; a
/// trailing `Id` is a type-Omega dilator whose separation at `a` replaces it
/// by `Const(a)`, giving `alpha + J(rest + Const(alpha))`.
fn linear_j(parts: &[Part], gamma: &Ordinal, first_sep: &Ordinal) -> Ordinal {
    match parts.split_last() {
        None => gamma.clone(),
        Some((Part::C(c), rest)) => linear_j(rest, gamma, first_sep).add(c),
        Some((Part::Id, rest)) => {
            let with = |a: &Ordinal| {
                let mut v = rest.to_vec();
                v.push(Part::C(a.clone()));
                linear_j(&v, gamma, first_sep)
            };
            let alpha = with(first_sep);
            alpha.add(&with(&alpha))
        }
    }
}

fn linear_expr(parts: &[Part]) -> DilatorExpr {
    let src: Vec<String> = parts
        .iter()
        .map(|p| match p {
            Part::C(c) => format!("Const({c})"),
            Part::Id => "Id".into(),
        })
        .collect();
    if src.is_empty() {
        return DilatorExpr::Zero;
    }
    src.join(" + ").parse().unwrap()
}

fn part() -> impl Strategy<Value = Part> {
    prop_oneof![
        2 => Just(Part::Id),
        1 => (1u64..4).prop_map(|n| Part::C(Ordinal::nat(n))),
        1 => Just(Part::C(ord("w"))),
    ]
}

fn gamma() -> impl Strategy<Value = Ordinal> {
    prop::sample::select(vec![ord("w"), ord("w+3"), ord("w*2"), ord("w^2"), ord("w^2+w")])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn j_on_linear_dilators(parts in prop::collection::vec(part(), 0..4), g in gamma()) {
        let d = linear_expr(&parts);
        prop_assert_eq!(j_eval(&d, &g).unwrap().value, linear_j(&parts, &g, &Ordinal::zero()), "J({})", d);
    }

    #[test]
    fn jprime_on_linear_dilators(parts in prop::collection::vec(part(), 0..4), g in gamma()) {
        let d = linear_expr(&parts);
        prop_assert_eq!(jprime_eval(&d, &g).unwrap().value, linear_j(&parts, &g, &ord("w")), "J'({})", d);
    }
}

// ---------------------------------------------------------------------------
// Exact values, unfolded by hand

#[test]
fn j_of_small_dilators() {
    let w = ord("w");
    assert_eq!(j_eval(&dil_expr("0"), &w).unwrap().value, w);
    assert_eq!(j_eval(&dil_expr("1"), &w).unwrap().value, ord("w+1"));
    // {Id}^0 = 0 and {Id}^w = Const(w): w + (w + w).
    assert_eq!(j_eval(&dil_expr("Id"), &w).unwrap().value, ord("w*3"));
    assert_eq!(j_eval(&dil_expr("Const(w)"), &w).unwrap().value, ord("w*2"));
    // {Id}^w = Const(w) gives w*2; then Const(w*2) gives w*3.
    assert_eq!(jprime_eval(&dil_expr("Id"), &w).unwrap().value, ord("w*5"));
    // omega[0 + 1] = Const(w); omega[1 + 1] = Const(w^2).
    assert_eq!(jplus_eval(&dil_expr("0"), &w).unwrap().value, ord("w*2"));
    assert_eq!(jplus_eval(&dil_expr("1"), &w).unwrap().value, ord("w^2"));
}

#[test]
fn j_of_omega_power() {
    // omega[Id] = 1 + head[Id]. Separating head[Id] at a keeps w^a - 1 elements,
    // so {omega[Id]}^0 = 1 and {omega[Id]}^(w+1) = 1 + Const(w^(w+1)).
    let w = ord("w");
    let alpha = w.add(&Ordinal::one());
    let beta = w.add(&Ordinal::one().add(&Ordinal::omega_pow(alpha.clone())));
    assert_eq!(beta, ord("w^(w+1)"));
    assert_eq!(j_eval(&dil_expr("omega[Id]"), &w).unwrap().value, alpha.add(&beta));
    assert_eq!(alpha.add(&beta), ord("w^(w+1)"));
}

#[test]
fn jplus_of_omega_type_leaves_the_notation() {
    // The partial sums of omega[Id + 1] are omega[Id]*k, whose J' values form
    // a tower w^w^...; the supremum is epsilon_0.
    let err = jplus_eval(&Id, &ord("w")).unwrap_err();
    let Error::OutOfNotation { lower_bound: Some(lb), .. } = err else { panic!("{err}") };
    assert!(lb.height() >= 4, "{lb}");
    for k in 1..=3 {
        let part = dilator_core::expr::mul_nat(dil_expr("omega[Id]"), k);
        let v = jprime_eval(&part, &ord("w")).unwrap().value;
        assert!(v.height() >= k as usize + 1, "J'(omega[Id]*{k}) = {v}");
    }
}

// ---------------------------------------------------------------------------
// Collapses

fn nonzero_gamma() -> impl Strategy<Value = Ordinal> {
    prop::sample::select(vec![ord("1"), ord("3"), ord("w"), ord("w+1"), ord("w*2"), ord("w^2"), ord("w^w")])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Terms of psi Id^gamma are id(p) with p below gamma or a smaller term:
    /// gamma many on each level, so the order type is gamma * w.
    #[test]
    fn collapse_of_id(g in nonzero_gamma()) {
        prop_assert_eq!(psi_clause_otp(&Id, &g).unwrap(), g.mul_omega());
    }

    #[test]
    fn collapse_of_double_id(g in nonzero_gamma()) {
        prop_assert_eq!(psi_clause_otp(&dil_expr("Id*2"), &g).unwrap(), g.mul_omega().mul_omega());
    }

    #[test]
    fn collapse_of_constant(c in nonzero_gamma(), g in nonzero_gamma()) {
        prop_assert_eq!(psi_clause_otp(&DilatorExpr::constant(c.clone()), &g).unwrap(), c);
    }
}

#[test]
fn collapse_values() {
    assert_eq!(psi_clause_otp(&Id, &ord("w")).unwrap(), ord("w^2"));
    assert_eq!(psi_clause_otp(&Id, &ord("0")).unwrap(), ord("0"));
    assert_eq!(psi_clause_otp(&parse_raw("Const(2) + Const(3)").unwrap(), &ord("0")).unwrap(), ord("5"));
    assert_eq!(psi_clause_otp(&dil_expr("Id*w"), &ord("w")).unwrap(), ord("w^w"));
}

#[test]
fn collapse_counts_on_finite_windows() {
    // Over gamma = k, each nesting level of psi Id^k adds exactly k terms.
    for k in 1..=3u64 {
        for depth in 1..=4 {
            let budget = PsiBudget { depth, ..PsiBudget::default() };
            let terms = psi_enum(&PsiOrder::new(Id, Ordinal::nat(k)), &budget).unwrap();
            assert_eq!(terms.len() as u64, k * depth as u64);
        }
    }
    let raw = parse_raw("Const(2) + Const(3)").unwrap();
    assert_eq!(psi_enum(&PsiOrder::new(raw, Ordinal::zero()), &PsiBudget::default()).unwrap().len(), 5);
    assert!(psi_enum(&PsiOrder::new(Id, Ordinal::zero()), &PsiBudget::default()).unwrap().is_empty());
}

// ---------------------------------------------------------------------------
// Element counts over finite orders

#[derive(Clone, Debug)]
enum Finite {
    One,
    Const(u64),
    Id,
    Sum(Box<Finite>, Box<Finite>),
    Times(Box<Finite>, u64),
}

impl Finite {
    fn count(&self, n: u64) -> u64 {
        match self {
            Finite::One => 1,
            Finite::Const(k) => *k,
            Finite::Id => n,
            Finite::Sum(a, b) => a.count(n) + b.count(n),
            Finite::Times(a, k) => a.count(n) * k,
        }
    }

    fn source(&self) -> String {
        match self {
            Finite::One => "1".into(),
            Finite::Const(k) => format!("Const({k})"),
            Finite::Id => "Id".into(),
            Finite::Sum(a, b) => format!("({}) + ({})", a.source(), b.source()),
            Finite::Times(a, k) => format!("({})*{k}", a.source()),
        }
    }
}

fn finite() -> impl Strategy<Value = Finite> {
    let leaf = prop_oneof![Just(Finite::One), (1u64..4).prop_map(Finite::Const), Just(Finite::Id)];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Finite::Sum(Box::new(a), Box::new(b))),
            (inner, 1u64..4).prop_map(|(a, k)| Finite::Times(Box::new(a), k)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counts_match_order_types(f in finite(), n in 0u64..7) {
        let d: DilatorExpr = f.source().parse().unwrap();
        let alpha = Ordinal::nat(n);
        let budget = Budget { width: 1_000, max_len: 3, cap: 100_000 };
        let elems = enum_elements(&d, &ordinal_ambient(&alpha, &budget), &budget, &|a: &u32, b: &u32| a.cmp(b)).unwrap();
        prop_assert_eq!(elems.len() as u64, f.count(n));
        prop_assert_eq!(otp_symbolic(&d, &alpha).unwrap(), Ordinal::nat(f.count(n)));
        let sorted = elems.windows(2).all(|w| {
            dilator_core::element::compare_elements(&w[0], &w[1], &|a: &u32, b: &u32| a.cmp(b)).unwrap() == Ordering::Less
        });
        prop_assert!(sorted);
    }
}
