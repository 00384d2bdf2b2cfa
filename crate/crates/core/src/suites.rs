//! Named check suites, one per acceptance line, shared by the CLI and the
//! integration tests.

use std::time::Instant;

use serde::Serialize;

use crate::element::Budget;
use crate::error::{Error, Result};
use crate::expr::{dil_expr, mul_nat, parse_raw, sum, DilatorExpr, DilatorExpr::*};
use crate::jfunctor::{j_eval, j_guard_report, jplus_eval, jprime_eval, Mode};
use crate::ordinal::{ord, Ordinal};
use crate::psi::{
    chain_search, psi_chain_search, psi_clause_otp, psi_enum, psi_order_sanity, psi_sum_check, ChainOutcome,
    EmbedOutcome, IntegerFixture, PsiBudget, PsiOrder,
};
use crate::symbolic::{classify, sep, shift, TypeClass};
use crate::validate::{
    count_check, decompose_check, element_order_check, important_index_check, naturality_check, sep_check,
    sep_pred_rank_check, sep_signed_check, shift_check, Check,
};

/// Suite names accepted by `check`, in criterion order.
pub const SUITES: [&str; 7] = ["j-values", "psi-sum", "bound", "j-laws", "coherence", "order", "fuzz"];

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SuiteOptions {
    /// Elements compared per isomorphism or embedding check.
    pub prefix: usize,
    /// Nesting depth of enumerated collapse terms.
    pub depth: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { prefix: 200, depth: 4, trials: 10_000, seed: 0 }
    }
}

/// One group of instances inside a suite.
#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub name: String,
    pub instances: usize,
    /// Instances outside the supported fragment, with the reason.
    pub skipped: Vec<String>,
    pub violations: Vec<String>,
}

impl Section {
    fn new(name: &str) -> Self {
        Section { name: name.into(), instances: 0, skipped: vec![], violations: vec![] }
    }

    fn pass(&mut self) {
        self.instances += 1;
    }

    fn fail(&mut self, msg: String) {
        self.instances += 1;
        self.violations.push(msg);
    }

    fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if ok {
            self.pass()
        } else {
            self.fail(msg())
        }
    }

    fn check(&mut self, label: &str, c: Result<Check>) {
        match c {
            Ok(Check::Verified { .. }) => self.pass(),
            Ok(Check::Violation { reason }) => self.fail(format!("{label}: {reason}")),
            Err(e) if is_unsupported(&e) => self.skipped.push(format!("{label}: {e}")),
            Err(e) => self.fail(format!("{label}: {e}")),
        }
    }

    fn require_at_least(&mut self, n: usize) {
        if self.instances < n {
            self.violations.push(format!("only {} instances, need {n}", self.instances));
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub criterion: u8,
    pub passed: bool,
    pub instances: usize,
    #[serde(skip)]
    pub millis: u128,
    pub sections: Vec<Section>,
}

impl SuiteReport {
    pub fn violations(&self) -> impl Iterator<Item = &String> {
        self.sections.iter().flat_map(|s| s.violations.iter())
    }
}

fn is_unsupported(e: &Error) -> bool {
    e.exit_code() == 2
}

/// The only way a detected limit leaves the notation is an exponential tower
/// of values below epsilon_0, whose supremum is epsilon_0 itself.
fn is_tower_limit(e: &Error) -> bool {
    matches!(e, Error::OutOfNotation { reason, .. } if reason.contains("exponential tower"))
}

fn lower_bound(e: &Error) -> Option<&Ordinal> {
    match e {
        Error::OutOfNotation { lower_bound, .. } => lower_bound.as_ref(),
        _ => None,
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let (criterion, sections) = match name {
        "j-values" => (1, j_values()),
        "psi-sum" => (2, psi_values(opts)),
        "bound" => (3, bound()),
        "j-laws" => (4, j_laws()),
        "coherence" => (5, coherence(opts)),
        "order" => (6, order(opts)),
        "fuzz" => (7, fuzz(opts)),
        _ => return Err(Error::Usage(format!("unknown suite {name:?}; expected one of {} or all", SUITES.join(", ")))),
    };
    let passed = sections.iter().all(|s| s.violations.is_empty());
    Ok(SuiteReport {
        suite: name.into(),
        criterion,
        passed,
        instances: sections.iter().map(|s| s.instances).sum(),
        millis: start.elapsed().as_millis(),
        sections,
    })
}

// ---------------------------------------------------------------------------
// 1. exact J values

/// `(evaluator, dilator, gamma, expected)`.
pub const J_VALUES: [(&str, &str, &str, &str); 8] = [
    ("J", "0", "w", "w"),
    ("J", "1", "w", "w+1"),
    ("J", "Id", "w", "w*3"),
    ("J", "Const(w)", "w", "w*2"),
    ("J'", "Id", "w", "w*5"),
    ("J+", "0", "w", "w*2"),
    ("J+", "1", "w", "w^2"),
    ("J", "omega[Id]", "w", "w^(w+1)"),
];

fn j_values() -> Vec<Section> {
    let mut s = Section::new("exact values");
    for (which, d, g, want) in J_VALUES {
        let (d, g) = (dil_expr(d), ord(g));
        let got = match which {
            "J" => j_eval(&d, &g),
            "J'" => jprime_eval(&d, &g),
            _ => jplus_eval(&d, &g),
        };
        match got {
            Ok(r) => s.expect(r.value == ord(want), || format!("{which}({d}, {g}) = {}, expected {want}", r.value)),
            Err(e) => s.fail(format!("{which}({d}, {g}): {e}")),
        }
    }
    vec![s]
}

// ---------------------------------------------------------------------------
// 2. collapse values

fn psi_values(opts: &SuiteOptions) -> Vec<Section> {
    let budget = PsiBudget { depth: opts.depth, elements: Budget { width: 4, max_len: 2, cap: 20_000 } };
    let mut consts = Section::new("constants");
    for a in ["0", "1", "2", "3", "w", "w^2"] {
        for g in ["0", "w"] {
            let d = DilatorExpr::constant(ord(a));
            match psi_clause_otp(&d, &ord(g)) {
                Ok(v) => consts.expect(v == ord(a), || format!("psi {d}^{g} = {v}, expected {a}")),
                Err(e) => consts.fail(format!("psi {d}^{g}: {e}")),
            }
            if let Some(n) = ord(a).as_nat() {
                let found = psi_enum(&PsiOrder::new(d.clone(), ord(g)), &budget).map(|v| v.len() as u64);
                consts.expect(found.as_ref().ok() == Some(&n), || format!("psi {d}^{g} enumerates {found:?}, expected {n}"));
            }
        }
    }

    let mut clauses = Section::new("clause values");
    let raw = parse_raw("Const(2) + Const(3)").expect("literal");
    let cases: [(&DilatorExpr, &str, &str); 3] = [(&raw, "0", "5"), (&Id, "w", "w^2"), (&Id, "0", "0")];
    for (d, g, want) in cases {
        match psi_clause_otp(d, &ord(g)) {
            Ok(v) => clauses.expect(v == ord(want), || format!("psi {d}^{g} = {v}, expected {want}")),
            Err(e) => clauses.fail(format!("psi {d}^{g}: {e}")),
        }
    }
    let found = psi_enum(&PsiOrder::new(raw.clone(), Ordinal::zero()), &budget).map(|v| v.len());
    clauses.expect(matches!(found, Ok(5)), || format!("psi (Const(2) + Const(3))^0 enumerates {found:?} terms"));
    let found = psi_enum(&PsiOrder::new(Id, Ordinal::zero()), &budget).map(|v| v.len());
    clauses.expect(matches!(found, Ok(0)), || format!("psi Id^0 enumerates {found:?} terms"));

    let mut embed = Section::new("sum split embeddings");
    let pairs = [
        ("Const(2)", "Const(3)", "0"),
        ("Const(2)", "Const(3)", "w"),
        ("Const(2)", "Id", "0"),
        ("Const(2)", "Id", "1"),
        ("1", "Id", "0"),
        ("Const(3)", "Id + 1", "1"),
        ("Const(2)", "Const(w)", "0"),
        ("1", "Id*2", "0"),
    ];
    let small = PsiBudget { depth: opts.depth.min(3), elements: Budget { width: 3, max_len: 2, cap: 20_000 } };
    for (d, e, g) in pairs {
        let label = format!("psi ({d} + {e})^{g}");
        match psi_sum_check(&dil_expr(d), &dil_expr(e), &ord(g), opts.prefix, &small) {
            Ok(EmbedOutcome::Verified { .. }) => embed.pass(),
            Ok(EmbedOutcome::Violation { left, right, reason }) => embed.fail(format!("{label}: {left} vs {right}: {reason}")),
            Err(err) => embed.fail(format!("{label}: {err}")),
        }
    }
    vec![consts, clauses, embed]
}

// ---------------------------------------------------------------------------
// 3. the bound on J

/// Sub-dilators `D'` with a canonical embedding `D' -> D`.
fn embedded_parts(d: &DilatorExpr) -> Vec<DilatorExpr> {
    match d {
        MulNat(a, _) | MulOmega(a) => vec![(**a).clone()],
        Sum(a, b) => vec![(**b).clone(), (**a).clone()],
        _ => vec![],
    }
}

/// A value known to be at most `J+(D, gamma)`: the value itself, the lower
/// bound of an out-of-notation result, or a bound for an embedded part.
fn jplus_floor(d: &DilatorExpr, gamma: &Ordinal) -> Result<(Ordinal, String)> {
    match jplus_eval(d, gamma) {
        Ok(r) => Ok((r.value, "exact".into())),
        Err(e) => {
            if let Some(lb) = lower_bound(&e) {
                return Ok((lb.clone(), "lower bound".into()));
            }
            for part in embedded_parts(d) {
                if let Ok((v, how)) = jplus_floor(&part, gamma) {
                    return Ok((v, format!("{how} of J+({part}) by monotonicity")));
                }
            }
            Err(e)
        }
    }
}

pub const BOUND_DILATORS: [&str; 7] = ["0", "1", "Const(w)", "Id", "Id + 1", "Id*2", "Id*w"];

fn bound() -> Vec<Section> {
    let mut s = Section::new("gamma + psi D^gamma <= J+(D, gamma)");
    for d in BOUND_DILATORS {
        for g in ["w", "w^2"] {
            let (d, g) = (dil_expr(d), ord(g));
            let lhs = match psi_clause_otp(&d, &g) {
                Ok(p) => g.add(&p),
                Err(e) => {
                    s.fail(format!("psi {d}^{g}: {e}"));
                    continue;
                }
            };
            match jplus_floor(&d, &g) {
                Ok((rhs, how)) => s.expect(lhs <= rhs, || format!("{g} + psi {d}^{g} = {lhs} exceeds J+({d}, {g}) >= {rhs} ({how})")),
                Err(e) => s.fail(format!("J+({d}, {g}): {e}")),
            }
        }
    }
    vec![s]
}

// ---------------------------------------------------------------------------
// 4. J laws

const LAW_DILATORS: [&str; 10] =
    ["0", "1", "Const(2)", "Const(w)", "Id", "Id + 1", "Const(3) + Id", "Id*2", "Id*w", "omega[Id]"];
const LAW_GAMMAS: [&str; 3] = ["w", "w*2", "w^2"];

fn pairs() -> Vec<(DilatorExpr, DilatorExpr, Ordinal)> {
    let small = ["0", "1", "Const(2)", "Const(w)", "Id", "Id + 1"];
    let mut out = Vec::new();
    for d in small {
        for e in small {
            for g in ["w", "w^2"] {
                out.push((dil_expr(d), dil_expr(e), ord(g)));
            }
        }
    }
    out
}

fn law_instances() -> Vec<(DilatorExpr, Ordinal)> {
    LAW_DILATORS.iter().flat_map(|d| LAW_GAMMAS.iter().map(move |g| (dil_expr(d), ord(g)))).collect()
}

fn j_laws() -> Vec<Section> {
    let mut comp = Section::new("composition");
    for (d, e, g) in pairs() {
        let lhs = j_eval(&sum(d.clone(), e.clone()), &g).map(|r| r.value);
        let rhs = j_eval(&d, &g).and_then(|r| j_eval(&e, &r.value)).map(|r| r.value);
        match (lhs, rhs) {
            (Ok(a), Ok(b)) => comp.expect(a == b, || format!("J({d} + {e}, {g}) = {a} but J({e}, J({d}, {g})) = {b}")),
            (Err(a), Err(_)) if is_unsupported(&a) => comp.skipped.push(format!("({d}, {e}, {g}): {a}")),
            (a, b) => comp.fail(format!("({d}, {e}, {g}): {a:?} vs {b:?}")),
        }
    }
    comp.require_at_least(20);

    let mut guard = Section::new("determinism and guard audit");
    for (d, g) in law_instances() {
        for mode in [Mode::J, Mode::JPrime] {
            let run = || match mode {
                Mode::J => j_eval(&d, &g),
                Mode::JPrime => jprime_eval(&d, &g),
            };
            match (run(), run()) {
                (Ok(a), Ok(b)) => {
                    let audit = j_guard_report(mode, &d, &g, &a);
                    guard.expect(a.value == b.value && audit.identical && audit.ranks_decrease, || {
                        format!("{mode:?}({d}, {g}): audit {audit:?}")
                    })
                }
                (Err(e), _) if is_unsupported(&e) => guard.skipped.push(format!("{mode:?}({d}, {g}): {e}")),
                (a, b) => guard.fail(format!("{mode:?}({d}, {g}): {:?} vs {:?}", a.map(|r| r.value), b.map(|r| r.value))),
            }
        }
    }
    guard.require_at_least(20);

    let mut props = Section::new("J properties (a)-(e)");
    for (d, g) in law_instances() {
        let Ok(v) = j_eval(&d, &g).map(|r| r.value) else {
            props.skipped.push(format!("J({d}, {g}) does not evaluate"));
            continue;
        };
        props.expect(g <= v, || format!("(a) J({d}, {g}) = {v} is below {g}"));
        if !d.is_zero() {
            props.expect(g.succ() <= v, || format!("(b) J({d}, {g}) = {v} is below {g}+1"));
            props.expect(g.succ() <= v || (v.is_zero() && g.is_zero()), || format!("(d) J({d}, {g}) = {v}"));
        }
        if let Ok(TypeClass::BigOmega { .. }) = classify(&d) {
            match sep(&d, &g.succ()).and_then(|s| j_eval(&s, &g)) {
                Ok(w) => props.expect(w.value <= v, || format!("(c) J(sep({d}, {g}+1), {g}) = {} exceeds {v}", w.value)),
                Err(e) => props.skipped.push(format!("(c) at ({d}, {g}): {e}")),
            }
        }
    }
    for (d, e, g) in pairs() {
        if e.is_zero() {
            continue;
        }
        if let (Ok(whole), Ok(left)) = (j_eval(&sum(d.clone(), e.clone()), &g), j_eval(&d, &g)) {
            if !whole.value.is_zero() {
                props.expect(left.value < whole.value, || {
                    format!("(e) J({d}, {g}) = {} is not below J({d} + {e}, {g}) = {}", left.value, whole.value)
                });
            }
        }
    }
    props.require_at_least(20);

    let mut times8 = Section::new("J'(D) <= J(D*8)");
    let mut robust = Section::new("J'(shift(D, n)) = J'(D)");
    for (d, g) in law_instances() {
        let Ok(p) = jprime_eval(&d, &g).map(|r| r.value) else {
            times8.skipped.push(format!("J'({d}, {g}) does not evaluate"));
            continue;
        };
        match j_eval(&mul_nat(d.clone(), 8), &g) {
            Ok(r) => times8.expect(p <= r.value, || format!("J'({d}, {g}) = {p} exceeds J({d}*8, {g}) = {}", r.value)),
            Err(e) if lower_bound(&e).is_some_and(|lb| p <= *lb) => times8.pass(),
            Err(e) => times8.skipped.push(format!("J({d}*8, {g}): {e}")),
        }
        for n in 1..=4u64 {
            match shift(&d, &Ordinal::nat(n)).and_then(|s| jprime_eval(&s, &g)) {
                Ok(r) => robust.expect(r.value == p, || format!("J'(shift({d}, {n}), {g}) = {} but J'({d}, {g}) = {p}", r.value)),
                Err(e) => robust.fail(format!("J'(shift({d}, {n}), {g}): {e}")),
            }
        }
    }
    times8.require_at_least(20);
    robust.require_at_least(20);

    let mut principal = Section::new("J+ additive principality");
    let omega_type = ["Id", "Const(2) + Id", "Const(w) + Id", "head[Id]", "omega[Id]", "Id + Id + 1"];
    for d in omega_type {
        let d = dil_expr(d);
        if !matches!(classify(&d), Ok(TypeClass::BigOmega { .. }) | Ok(TypeClass::One { .. })) {
            continue;
        }
        for g in ["w", "w*2", "w^2", "w^w"] {
            let g = ord(g);
            // `None` stands for epsilon_0, the supremum of a detected tower.
            let value = match jplus_eval(&d, &g) {
                Ok(r) => Some(r.value),
                Err(e) if is_tower_limit(&e) => None,
                Err(e) => {
                    principal.skipped.push(format!("J+({d}, {g}): {e}"));
                    continue;
                }
            };
            if let Some(v) = &value {
                principal.expect(v.is_principal() && *v > g, || format!("J+({d}, {g}) = {v} is not principal above {g}"));
            } else {
                principal.pass();
            }
            if let Ok(TypeClass::BigOmega { .. }) = classify(&d) {
                for a in [ord("1"), ord("3"), ord("w")] {
                    if a >= g {
                        continue;
                    }
                    match sep(&d, &a).and_then(|s| jplus_eval(&s, &a)) {
                        Ok(r) => principal.expect(value.as_ref().map_or(true, |v| r.value < *v), || {
                            format!("J+(sep({d}, {a}), {a}) = {} is not below J+({d}, {g})", r.value)
                        }),
                        Err(e) => principal.skipped.push(format!("J+(sep({d}, {a}), {a}): {e}")),
                    }
                }
            }
        }
    }
    principal.require_at_least(20);

    vec![comp, guard, props, times8, robust, principal]
}

// ---------------------------------------------------------------------------
// 5. semantic coherence

pub const COHERENCE_DILATORS: [&str; 12] = [
    "1",
    "Const(3)",
    "Const(w)",
    "Id",
    "Id + 1",
    "Id*2",
    "Id*w",
    "Const(w) + Id",
    "Id*3 + Const(2)",
    "omega[Id]",
    "omega[Id + 1]",
    "head[Id]",
];
pub const DOMINATED_ATOMS: [&str; 4] = ["Id", "head[Id]", "head[Const(2) + Id]", "head[Const(w) + Id]"];

fn budget_for(d: &DilatorExpr) -> Budget {
    if d.size() > 4 {
        Budget { width: 2, max_len: 2, cap: 20_000 }
    } else {
        Budget::default()
    }
}

fn coherence(opts: &SuiteOptions) -> Vec<Section> {
    let k = opts.prefix;
    let mut shifts = Section::new("shift");
    let mut decomp = Section::new("decompose");
    let mut counts = Section::new("finite counts");
    for d in COHERENCE_DILATORS {
        let d = dil_expr(d);
        let b = budget_for(&d);
        for g in ["1", "3", "w"] {
            shifts.check(&format!("shift({d}, {g})"), shift_check(&d, &ord(g), k, &b));
        }
        decomp.check(&format!("decompose({d})"), decompose_check(&d, k, &b));
        counts.check(&format!("{d}"), count_check(&d, 6));
    }
    let mut seps = Section::new("sep");
    let mut signed = Section::new("sep_signed");
    for a in DOMINATED_ATOMS {
        let a = dil_expr(a);
        for g in ["1", "3", "w"] {
            let b = budget_for(&a);
            seps.check(&format!("sep({a}, {g})"), sep_check(&a, &ord(g), k, &b));
            signed.check(&format!("sep_signed({a}, {g})"), sep_signed_check(&a, &ord(g), k, &b));
        }
    }
    vec![shifts, seps, signed, decomp, counts]
}

// ---------------------------------------------------------------------------
// 6. order sanity

fn order(opts: &SuiteOptions) -> Vec<Section> {
    let mut tri = Section::new("element order");
    let mut nat = Section::new("naturality and support condition");
    for d in COHERENCE_DILATORS {
        let d = dil_expr(d);
        let b = Budget { width: 3, max_len: 2, cap: 20_000 };
        tri.check(&format!("{d}"), element_order_check(&d, 3, &b));
        nat.check(&format!("{d}"), naturality_check(&d, 3, 6, 200, opts.seed, &b));
    }

    let mut psi = Section::new("collapse term order");
    let budget = PsiBudget { depth: opts.depth.min(3), elements: Budget { width: 3, max_len: 2, cap: 20_000 } };
    for (d, g) in [("Id", "1"), ("Id", "w"), ("Id + 1", "0"), ("omega[Id]", "0"), ("Const(2) + Id", "0")] {
        let order = PsiOrder::new(dil_expr(d), ord(g));
        match psi_enum(&order, &budget).and_then(|ts| psi_order_sanity(&ts, 20_000, opts.seed)) {
            Ok(None) => psi.pass(),
            Ok(Some(v)) => psi.fail(format!("psi {d}^{g}: {v}")),
            Err(e) => psi.fail(format!("psi {d}^{g}: {e}")),
        }
    }

    let mut imp = Section::new("important index");
    for a in ["Id", "head[Id]", "head[Const(2) + Id]", "head[Const(w) + Id]", "head[Id*2]"] {
        let a = dil_expr(a);
        imp.check(&format!("{a}"), important_index_check(&a, 5, &Budget { width: 3, max_len: 2, cap: 50_000 }));
    }

    let mut ranks = Section::new("sep-pred rank decrease");
    let gammas = [ord("0"), ord("1"), ord("3"), ord("w")];
    for d in ["Id", "Const(w) + Id", "head[Id]", "omega[Id]", "Id + 1", "Id*w", "omega[Id + 1]", "Id*2 + Id"] {
        let d = dil_expr(d);
        ranks.check(&format!("{d}"), sep_pred_rank_check(&d, &gammas));
    }
    vec![tri, nat, psi, imp, ranks]
}

// ---------------------------------------------------------------------------
// 7. chain search

pub const CHAIN_DEPTH: usize = 30;

fn fuzz(opts: &SuiteOptions) -> Vec<Section> {
    let mut s = Section::new("descending chains");
    let budget = PsiBudget { depth: opts.depth, elements: Budget { width: 3, max_len: 2, cap: 20_000 } };
    for (d, g) in [("omega[Id]", "0"), ("Id", "w")] {
        let order = PsiOrder::new(dil_expr(d), ord(g));
        match psi_chain_search(&order, &budget, opts.trials, CHAIN_DEPTH, opts.seed) {
            Ok(ChainOutcome::NoneFound { .. }) => s.pass(),
            Ok(ChainOutcome::Counterexample { chain }) => s.fail(format!("psi {d}^{g}: descending chain {}", chain.join(" > "))),
            Err(e) => s.fail(format!("psi {d}^{g}: {e}")),
        }
    }
    match chain_search(&IntegerFixture, opts.trials, CHAIN_DEPTH, opts.seed) {
        ChainOutcome::Counterexample { .. } => s.pass(),
        ChainOutcome::NoneFound { .. } => s.fail("the integer fixture produced no descending chain".into()),
    }
    vec![s]
}
