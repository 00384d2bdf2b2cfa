//! Guarded evaluation of J, J' and J+.
//!
//! The evaluator follows the four clauses by classification: type 0 returns
//! `gamma`, type 1 adds one to the value of the predecessor, type omega takes
//! the supremum over partial sums, and type Omega computes `alpha + beta` from
//! two separations. Every evaluated node is recorded as a [`Step`]; once the
//! value `delta` is known the guards `eta = delta + 1` and
//! `xi = otp(D(w^(1+eta))) + 1` are fixed and each step is checked to lower
//! the rank `otp(E(w^(1+eta)))`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{omega_comp, sum, DilatorExpr, DilatorExpr::*};
use crate::ordinal::{detect_limit_pattern, ord_sup_solve, LimitKind, Ordinal};
use crate::symbolic::{classify, fundamental, otp_symbolic, sep, TypeClass, LIMIT_SAMPLES};

/// Default cap on recorded evaluation steps.
pub const MAX_STEPS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    J,
    JPrime,
}

impl Mode {
    /// The separation parameter of the first summand in the type-Omega clause.
    fn first_sep(self) -> Ordinal {
        match self {
            Mode::J => Ordinal::zero(),
            Mode::JPrime => Ordinal::omega(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Clause {
    /// Type 0 (clause i).
    Zero,
    /// Type 1 (clause ii).
    Successor,
    /// Type omega (clause iii).
    Limit,
    /// Type Omega (clause iv).
    Separation,
    /// A constant dilator `Const(b)`, whose value is `gamma + b`.
    Constant,
    /// `X + Const(b)` evaluated as `J(X, gamma) + b`.
    ConstTail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub expr: DilatorExpr,
    pub clause: Clause,
    pub value: Ordinal,
    /// Index of the step that requested this one.
    pub parent: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JResult {
    pub value: Ordinal,
    pub eta: Ordinal,
    pub xi: Ordinal,
    pub steps: Vec<Step>,
}

/// `w^(1+eta)`, the argument at which ranks are measured.
pub fn rank_argument(eta: &Ordinal) -> Ordinal {
    Ordinal::omega_pow(Ordinal::one().add(eta))
}

/// The rank `otp(D(w^(1+eta)))`.
pub fn rank(d: &DilatorExpr, eta: &Ordinal) -> Result<Ordinal> {
    otp_symbolic(d, &rank_argument(eta))
}

/// Adjusts the lower bound carried by an `OutOfNotation` error.
fn map_lower_bound(e: Error, f: impl FnOnce(&Ordinal) -> Ordinal) -> Error {
    match e {
        Error::OutOfNotation { reason, lower_bound } => Error::OutOfNotation { reason, lower_bound: lower_bound.map(|b| f(&b)) },
        e => e,
    }
}

/// Splits `X + Const(b)` with `b > 0` and `X` non-constant.
fn const_tail(d: &DilatorExpr) -> Option<(DilatorExpr, Ordinal)> {
    match d {
        Sum(a, b) => {
            if let Some(c) = b.as_const() {
                return Some((a.as_ref().clone(), c));
            }
            let (x, c) = const_tail(b)?;
            Some((sum(a.as_ref().clone(), x), c))
        }
        _ => None,
    }
}

/// One evaluation session with its memo table.
pub struct Evaluator {
    mode: Mode,
    gamma: Ordinal,
    memo: HashMap<DilatorExpr, Ordinal>,
    steps: Vec<Step>,
    max_steps: usize,
    /// Guards `(eta, xi)` checked at every node when present.
    guard: Option<(Ordinal, Ordinal)>,
}

impl Evaluator {
    pub fn new(mode: Mode, gamma: Ordinal) -> Self {
        Evaluator { mode, gamma, memo: HashMap::new(), steps: Vec::new(), max_steps: MAX_STEPS, guard: None }
    }

    pub fn with_max_steps(mut self, max_steps: usize) -> Self {
        self.max_steps = max_steps;
        self
    }

    /// Evaluates under fixed guards: every node must have a value below `eta`
    /// and a rank below `xi`.
    pub fn with_guard(mut self, eta: Ordinal, xi: Ordinal) -> Self {
        self.guard = Some((eta, xi));
        self
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn eval(&mut self, d: &DilatorExpr) -> Result<Ordinal> {
        self.eval_node(d, None)
    }

    fn eval_node(&mut self, d: &DilatorExpr, parent: Option<usize>) -> Result<Ordinal> {
        if let Some(v) = self.memo.get(d) {
            return Ok(v.clone());
        }
        if self.steps.len() >= self.max_steps {
            return Err(Error::DepthExceeded(self.steps.len()));
        }
        let idx = self.steps.len();
        self.steps.push(Step { expr: d.clone(), clause: Clause::Zero, value: Ordinal::zero(), parent });
        let (clause, value) = self.clause(d, idx)?;
        if let Some((eta, xi)) = &self.guard {
            if &value >= eta {
                return Err(Error::GuardViolation(format!("value {value} of {d} is not below eta = {eta}")));
            }
            let r = rank(d, eta)?;
            if &r >= xi {
                return Err(Error::GuardViolation(format!("rank {r} of {d} is not below xi = {xi}")));
            }
        }
        self.steps[idx].clause = clause;
        self.steps[idx].value = value.clone();
        self.memo.insert(d.clone(), value.clone());
        Ok(value)
    }

    fn clause(&mut self, d: &DilatorExpr, idx: usize) -> Result<(Clause, Ordinal)> {
        if let Some(c) = d.as_const() {
            let clause = if c.is_zero() { Clause::Zero } else { Clause::Constant };
            return Ok((clause, self.gamma.add(&c)));
        }
        if let Some((x, c)) = const_tail(d) {
            let v = self.eval_node(&x, Some(idx)).map_err(|e| map_lower_bound(e, |b| b.add(&c)))?;
            return Ok((Clause::ConstTail, v.add(&c)));
        }
        match classify(d)? {
            TypeClass::Zero => Ok((Clause::Zero, self.gamma.clone())),
            TypeClass::One { pred } => {
                let v = self.eval_node(&pred, Some(idx)).map_err(|e| map_lower_bound(e, Ordinal::succ))?;
                Ok((Clause::Successor, v.succ()))
            }
            TypeClass::Omega { .. } => {
                let mut seq = Vec::new();
                for k in 1..=LIMIT_SAMPLES {
                    let f = fundamental(d, k)?;
                    seq.push(self.eval_node(&f, Some(idx))?);
                }
                let pattern = detect_limit_pattern(&seq);
                let value = match pattern.kind {
                    LimitKind::Tower => Err(Error::OutOfNotation {
                        reason: format!("partial sums of {d} grow as an exponential tower"),
                        lower_bound: seq.last().cloned(),
                    }),
                    LimitKind::Stationary => Err(Error::UnsupportedLimit(format!(
                        "partial sums of {d} did not grow over {LIMIT_SAMPLES} samples"
                    ))),
                    _ => ord_sup_solve(&pattern),
                }?;
                Ok((Clause::Limit, value))
            }
            TypeClass::BigOmega { .. } => {
                let first = sep(d, &self.mode.first_sep())?;
                let alpha = self.eval_node(&first, Some(idx))?;
                let second = sep(d, &alpha)?;
                let beta = self.eval_node(&second, Some(idx)).map_err(|e| map_lower_bound(e, |b| alpha.add(b)))?;
                Ok((Clause::Separation, alpha.add(&beta)))
            }
        }
    }
}

fn run(mode: Mode, d: &DilatorExpr, gamma: &Ordinal) -> Result<JResult> {
    let mut ev = Evaluator::new(mode, gamma.clone());
    let value = ev.eval(d)?;
    let eta = value.succ();
    let xi = rank(d, &eta)?.succ();
    let result = JResult { value, eta, xi, steps: ev.steps };
    if let Some(msg) = rank_violation(&result)? {
        return Err(Error::GuardViolation(msg));
    }
    Ok(result)
}

/// The first step whose rank does not drop below its parent's, if any.
fn rank_violation(result: &JResult) -> Result<Option<String>> {
    let ranks = result.steps.iter().map(|s| rank(&s.expr, &result.eta)).collect::<Result<Vec<_>>>()?;
    for (i, s) in result.steps.iter().enumerate() {
        if let Some(p) = s.parent {
            if ranks[i] >= ranks[p] {
                return Ok(Some(format!(
                    "step {} ({}) has rank {} not below its parent {} ({})",
                    i, s.expr, ranks[i], result.steps[p].expr, ranks[p]
                )));
            }
        }
    }
    Ok(None)
}

pub fn j_eval(d: &DilatorExpr, gamma: &Ordinal) -> Result<JResult> {
    run(Mode::J, d, gamma)
}

pub fn jprime_eval(d: &DilatorExpr, gamma: &Ordinal) -> Result<JResult> {
    run(Mode::JPrime, d, gamma)
}

/// The dilator `omega[D + 1]` whose J' value defines J+.
pub fn jplus_dilator(d: &DilatorExpr) -> DilatorExpr {
    omega_comp(sum(d.clone(), One))
}

pub fn jplus_eval(d: &DilatorExpr, gamma: &Ordinal) -> Result<JResult> {
    run(Mode::JPrime, &jplus_dilator(d), gamma)
}

/// Evaluates `mode` at `(d, gamma)` under the fixed guards `(eta, xi)`.
pub fn eval_guarded(mode: Mode, d: &DilatorExpr, gamma: &Ordinal, eta: &Ordinal, xi: &Ordinal) -> Result<Ordinal> {
    Evaluator::new(mode, gamma.clone()).with_guard(eta.clone(), xi.clone()).eval(d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GuardAudit {
    pub eta: Ordinal,
    pub xi: Ordinal,
    pub enlarged_eta: Ordinal,
    pub enlarged_xi: Ordinal,
    /// Value under the original guards, or the error it raised.
    pub value_at_guard: String,
    pub value_enlarged: String,
    pub identical: bool,
    pub ranks_decrease: bool,
    pub steps_checked: usize,
}

/// Re-evaluates under the recorded guards and under `eta + w`, and re-checks
/// that ranks drop along the recorded steps.
pub fn j_guard_report(mode: Mode, d: &DilatorExpr, gamma: &Ordinal, result: &JResult) -> GuardAudit {
    let enlarged_eta = result.eta.add(&Ordinal::omega());
    let enlarged_xi = rank(d, &enlarged_eta).map(|r| r.succ()).unwrap_or_else(|_| result.xi.clone());
    let show = |r: Result<Ordinal>| match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    };
    let at_guard = eval_guarded(mode, d, gamma, &result.eta, &result.xi);
    let enlarged = eval_guarded(mode, d, gamma, &enlarged_eta, &enlarged_xi);
    let identical = matches!((&at_guard, &enlarged), (Ok(a), Ok(b)) if *a == result.value && *b == result.value);
    let ranks_decrease = matches!(rank_violation(result), Ok(None));
    GuardAudit {
        eta: result.eta.clone(),
        xi: result.xi.clone(),
        enlarged_eta,
        enlarged_xi,
        value_at_guard: show(at_guard),
        value_enlarged: show(enlarged),
        identical,
        ranks_decrease,
        steps_checked: result.steps.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::dil_expr;
    use crate::ordinal::ord;

    fn j(d: &str, g: &str) -> Ordinal {
        j_eval(&dil_expr(d), &ord(g)).unwrap().value
    }

    #[test]
    fn small_values() {
        assert_eq!(j("0", "w"), ord("w"));
        assert_eq!(j("1", "w"), ord("w+1"));
        assert_eq!(j("Id", "w"), ord("w*3"));
        assert_eq!(j("Id", "2"), ord("6"));
        assert_eq!(j("Id*w", "w"), ord("w^2"));
    }

    #[test]
    fn guards_hold() {
        let d = dil_expr("Id + Id");
        let r = j_eval(&d, &ord("w")).unwrap();
        let audit = j_guard_report(Mode::J, &d, &ord("w"), &r);
        assert!(audit.identical, "{audit:?}");
        assert!(audit.ranks_decrease);
    }

    #[test]
    fn const_tail_split() {
        let (x, c) = const_tail(&dil_expr("Id + Const(w)")).unwrap();
        assert_eq!(x, Id);
        assert_eq!(c, ord("w"));
        assert!(const_tail(&dil_expr("Id + Id")).is_none());
    }
}
