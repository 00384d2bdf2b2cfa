//! Bachmann-Howard collapse terms `psi D^gamma`.
//!
//! A term is an element of `D` over the order `gamma + T`, where `T` is the
//! set of terms itself: positions are ordinals below `gamma` or smaller terms.
//! A term is valid when each of its term positions is valid and lies strictly
//! below the whole term. Comparison is the structural element comparison with
//! term positions compared recursively.
//!
//! The order type is computed separately by [`psi_clause_otp`], following the
//! recursion through constants, sums, limit sums and connected atoms.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::rc::Rc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::element::{self, compare_elements, is_element, Budget, Elem, ImportanceCache, Pt};
use crate::error::{Error, Result};
use crate::expr::{mul_nat, DilatorExpr, DilatorExpr::*};
use crate::ordinal::{detect_limit_pattern, ord_sup_solve, sample_below, LimitKind, Ordinal};
use crate::symbolic::{classify, fundamental, sep_signed, TypeClass, LIMIT_SAMPLES};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PsiTerm(pub Elem<Sub>);

/// A term used as a position inside a larger term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sub(pub Rc<PsiTerm>);

impl std::ops::Deref for Sub {
    type Target = PsiTerm;
    fn deref(&self) -> &PsiTerm {
        &self.0
    }
}

impl fmt::Display for PsiTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Sub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

impl fmt::Debug for PsiTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for PsiTerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl PsiTerm {
    /// Nesting depth: 1 for terms without term positions.
    pub fn depth(&self) -> usize {
        let mut subs = Vec::new();
        collect_subterms(&self.0, &mut subs);
        1 + subs.iter().map(|t| t.depth()).max().unwrap_or(0)
    }
}

fn collect_subterms(e: &Elem<Sub>, out: &mut Vec<Sub>) {
    match e {
        Elem::Const(_) => {}
        Elem::Id(Pt::Right(t)) => out.push(t.clone()),
        Elem::Id(Pt::Left(_)) => {}
        Elem::Inl(x) | Elem::Inr(x) | Elem::Copy(_, x) | Elem::Layer(x) => collect_subterms(x, out),
        Elem::Cnf(xs) => xs.iter().for_each(|x| collect_subterms(x, out)),
    }
}

/// Compares two terms of the same order.
pub fn psi_cmp(a: &PsiTerm, b: &PsiTerm) -> Result<Ordering> {
    let failure = RefCell::new(None);
    let o = cmp_inner(a, b, &failure);
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(o),
    }
}

fn cmp_inner(a: &PsiTerm, b: &PsiTerm, failure: &RefCell<Option<Error>>) -> Ordering {
    if std::ptr::eq(a, b) {
        return Ordering::Equal;
    }
    let rec = |x: &Sub, y: &Sub| cmp_inner(x, y, failure);
    match compare_elements(&a.0, &b.0, &rec) {
        Ok(o) => o,
        Err(_) => {
            failure.borrow_mut().get_or_insert(Error::MalformedTerm(format!("cannot compare {a} with {b}")));
            Ordering::Equal
        }
    }
}

fn term_cmp(a: &Sub, b: &Sub) -> Ordering {
    psi_cmp(a, b).unwrap_or(Ordering::Equal)
}

/// The term order `psi D^gamma`.
#[derive(Clone, Debug, Serialize)]
pub struct PsiOrder {
    pub dilator: DilatorExpr,
    pub gamma: Ordinal,
}

impl PsiOrder {
    pub fn new(dilator: DilatorExpr, gamma: Ordinal) -> Self {
        PsiOrder { dilator, gamma }
    }

    pub fn cmp(&self, a: &PsiTerm, b: &PsiTerm) -> Result<Ordering> {
        psi_cmp(a, b)
    }

    pub fn is_valid(&self, t: &PsiTerm) -> Result<bool> {
        psi_term_valid(self, t, &mut ImportanceCache::default())
    }
}

/// Validity: `t` is an element of the dilator, its ordinal positions lie below
/// `gamma`, and each term position is valid and strictly below `t`.
pub fn psi_term_valid(order: &PsiOrder, t: &PsiTerm, cache: &mut ImportanceCache) -> Result<bool> {
    if !is_element(&order.dilator, &t.0, &term_cmp, cache)? {
        return Ok(false);
    }
    for p in element::support(&order.dilator, &t.0, &term_cmp)? {
        match p {
            Pt::Left(a) if a >= order.gamma => return Ok(false),
            Pt::Left(_) => {}
            Pt::Right(u) => {
                if psi_cmp(&u, t)? != Ordering::Less || !psi_term_valid(order, &u, cache)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Size limits for [`psi_enum`].
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PsiBudget {
    pub depth: usize,
    pub elements: Budget,
}

impl Default for PsiBudget {
    fn default() -> Self {
        PsiBudget { depth: 4, elements: Budget { width: 3, max_len: 2, cap: 20_000 } }
    }
}

/// All valid terms of nesting depth at most `budget.depth`, ascending.
///
/// Each round enumerates the elements of `D` over the codes below `gamma`
/// plus the terms found so far and keeps the valid ones. The result is a
/// finite window onto the order, not necessarily an initial segment.
pub fn psi_enum(order: &PsiOrder, budget: &PsiBudget) -> Result<Vec<PsiTerm>> {
    let codes: Vec<Pt<Sub>> =
        sample_below(&order.gamma, budget.elements.width, budget.elements.cap).into_iter().map(Pt::Left).collect();
    let mut cache = ImportanceCache::default();
    let mut terms: Vec<Sub> = Vec::new();
    for _ in 0..budget.depth {
        let mut ambient = codes.clone();
        ambient.extend(terms.iter().cloned().map(Pt::Right));
        let candidates = element::enum_elements(&order.dilator, &ambient, &budget.elements, &term_cmp)?;
        let mut next: Vec<Sub> = Vec::new();
        for e in candidates {
            let t = PsiTerm(e);
            if psi_term_valid(order, &t, &mut cache)? {
                next.push(Sub(Rc::new(t)));
            }
        }
        let grew = next.len() > terms.len();
        terms = next;
        if terms.len() > budget.elements.cap {
            return Err(Error::BudgetExceeded(format!("more than {} collapse terms", budget.elements.cap)));
        }
        if !grew {
            break;
        }
    }
    Ok(terms.into_iter().map(|t| (*t.0).clone()).collect())
}

/// Builds the same window by adding one new term at a time, smallest first,
/// and sorting at the end. Used to check that the result does not depend on
/// the generation order.
pub fn psi_enum_incremental(order: &PsiOrder, budget: &PsiBudget) -> Result<Vec<PsiTerm>> {
    let codes: Vec<Pt<Sub>> =
        sample_below(&order.gamma, budget.elements.width, budget.elements.cap).into_iter().map(Pt::Left).collect();
    let mut cache = ImportanceCache::default();
    let mut terms: Vec<Sub> = Vec::new();
    for _ in 0..budget.depth {
        let snapshot = terms.clone();
        let mut ambient = codes.clone();
        ambient.extend(snapshot.iter().rev().cloned().map(Pt::Right));
        ambient.sort_by(|a, b| element::cmp_pt(a, b, &term_cmp));
        let candidates = element::enum_elements(&order.dilator, &ambient, &budget.elements, &term_cmp)?;
        let mut added = false;
        for e in candidates.into_iter().rev() {
            let t = PsiTerm(e);
            if !terms.iter().any(|u| **u == t) && psi_term_valid(order, &t, &mut cache)? {
                terms.push(Sub(Rc::new(t)));
                added = true;
            }
        }
        if !added {
            break;
        }
    }
    let mut out: Vec<PsiTerm> = terms.into_iter().map(|t| (*t.0).clone()).collect();
    out.sort_by(|a, b| psi_cmp(a, b).unwrap_or(Ordering::Equal));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Order types

/// The order type of `psi D^gamma`.
pub fn psi_clause_otp(d: &DilatorExpr, gamma: &Ordinal) -> Result<Ordinal> {
    if let Some(c) = d.as_const() {
        return Ok(c);
    }
    match d {
        Sum(a, b) => {
            let p = psi_clause_otp(a, gamma)?;
            let q = psi_clause_otp(b, &gamma.add(&p)).map_err(|e| lower_bound_plus(e, &p))?;
            return Ok(p.add(&q));
        }
        MulNat(a, n) => {
            let (mut total, mut g) = (Ordinal::zero(), gamma.clone());
            for _ in 0..*n {
                let p = psi_clause_otp(a, &g).map_err(|e| lower_bound_plus(e, &total))?;
                total = total.add(&p);
                g = g.add(&p);
            }
            return Ok(total);
        }
        Shift(a, g) => return psi_clause_otp(a, &g.add(gamma)),
        _ => {}
    }
    match classify(d)? {
        TypeClass::Zero => Ok(Ordinal::zero()),
        TypeClass::One { pred } => Ok(psi_clause_otp(&pred, gamma)?.succ()),
        TypeClass::Omega { .. } => {
            let seq = (1..=LIMIT_SAMPLES)
                .map(|k| psi_clause_otp(&fundamental(d, k)?, gamma))
                .collect::<Result<Vec<_>>>()?;
            limit_of(d, &seq)
        }
        TypeClass::BigOmega { head, last } => {
            let p = psi_clause_otp(&head, gamma)?;
            let q = psi_connected(&last, &gamma.add(&p)).map_err(|e| lower_bound_plus(e, &p))?;
            Ok(p.add(&q))
        }
    }
}

fn lower_bound_plus(e: Error, p: &Ordinal) -> Error {
    match e {
        Error::OutOfNotation { reason, lower_bound } => {
            Error::OutOfNotation { reason, lower_bound: lower_bound.map(|b| p.add(&b)) }
        }
        e => e,
    }
}

fn limit_of(d: &DilatorExpr, seq: &[Ordinal]) -> Result<Ordinal> {
    let pattern = detect_limit_pattern(seq);
    match pattern.kind {
        LimitKind::Tower => Err(Error::OutOfNotation {
            reason: format!("the collapse of {d} grows as an exponential tower"),
            lower_bound: seq.last().cloned(),
        }),
        _ => ord_sup_solve(&pattern),
    }
}

/// The sequence `gamma(1), gamma(2), ...` of the connected clause for an atom:
/// `gamma(n+1)` is the collapse of the iterated minus part.
pub fn connected_sequence(atom: &DilatorExpr, gamma: &Ordinal, n: usize) -> Result<Vec<Ordinal>> {
    let mut plus = atom.clone();
    let mut g = gamma.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let (minus, next_plus) = sep_signed(&plus, &g)?;
        g = psi_clause_otp(&minus, &Ordinal::zero())?;
        out.push(g.clone());
        plus = next_plus;
    }
    Ok(out)
}

fn psi_connected(atom: &DilatorExpr, gamma: &Ordinal) -> Result<Ordinal> {
    let mut partial = Vec::new();
    let mut total = Ordinal::zero();
    let mut plus = atom.clone();
    let mut g = gamma.clone();
    for _ in 0..LIMIT_SAMPLES {
        let (minus, next_plus) = sep_signed(&plus, &g)?;
        g = psi_clause_otp(&minus, &Ordinal::zero()).map_err(|e| lower_bound_plus(e, &total))?;
        total = total.add(&g);
        partial.push(total.clone());
        plus = next_plus;
    }
    limit_of(atom, &partial)
}

/// `psi (D * n)^gamma` for `n = 1..=k`, the truncations of the limit sum `D * w`.
pub fn limit_sum_truncations(d: &DilatorExpr, gamma: &Ordinal, k: u64) -> Result<Vec<Ordinal>> {
    (1..=k).map(|n| psi_clause_otp(&mul_nat(d.clone(), n), gamma)).collect()
}

// ---------------------------------------------------------------------------
// Descending-chain search

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome")]
pub enum ChainOutcome {
    NoneFound { trials: usize, longest: usize },
    Counterexample { chain: Vec<String> },
}

/// An order that the chain search can walk down.
pub trait DescentOrder {
    type Item: Clone + fmt::Display;
    fn start(&self, rng: &mut ChaCha8Rng) -> Option<Self::Item>;
    /// A random element strictly below `x`, if the walk can continue.
    fn below(&self, x: &Self::Item, rng: &mut ChaCha8Rng) -> Option<Self::Item>;
    fn less(&self, a: &Self::Item, b: &Self::Item) -> bool;
}

/// A finite window of a term order, sorted ascending; the walk steps to a
/// uniformly chosen element below the current one.
pub struct TermPool {
    terms: Vec<PsiTerm>,
}

impl TermPool {
    pub fn new(mut terms: Vec<PsiTerm>) -> Self {
        terms.sort_by(|a, b| psi_cmp(a, b).unwrap_or(Ordering::Equal));
        TermPool { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl DescentOrder for TermPool {
    type Item = usize;

    fn start(&self, rng: &mut ChaCha8Rng) -> Option<usize> {
        (!self.terms.is_empty()).then(|| rng.gen_range(0..self.terms.len()))
    }

    fn below(&self, x: &usize, rng: &mut ChaCha8Rng) -> Option<usize> {
        (*x > 0).then(|| rng.gen_range(0..*x))
    }

    fn less(&self, a: &usize, b: &usize) -> bool {
        matches!(psi_cmp(&self.terms[*a], &self.terms[*b]), Ok(Ordering::Less))
    }
}

/// The integers under their usual order: every element has one below it.
/// The chain search must report a counterexample here.
pub struct IntegerFixture;

impl DescentOrder for IntegerFixture {
    type Item = i64;

    fn start(&self, rng: &mut ChaCha8Rng) -> Option<i64> {
        Some(rng.gen_range(-1000..1000))
    }

    fn below(&self, x: &i64, rng: &mut ChaCha8Rng) -> Option<i64> {
        Some(x - rng.gen_range(1..=10))
    }

    fn less(&self, a: &i64, b: &i64) -> bool {
        a < b
    }
}

/// Seeded random descending walks. Returns the first walk that reaches
/// `depth` elements, each step checked with the order's own comparison, and
/// otherwise the length of the longest walk.
pub fn descending_walk<O: DescentOrder>(order: &O, trials: usize, depth: usize, seed: u64) -> (Option<Vec<O::Item>>, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut longest = 0;
    for _ in 0..trials {
        let Some(mut x) = order.start(&mut rng) else { break };
        let mut chain = vec![x.clone()];
        while chain.len() < depth {
            match order.below(&x, &mut rng) {
                Some(y) if order.less(&y, &x) => {
                    chain.push(y.clone());
                    x = y;
                }
                _ => break,
            }
        }
        longest = longest.max(chain.len());
        if chain.len() >= depth {
            return (Some(chain), longest);
        }
    }
    (None, longest)
}

pub fn chain_search<O: DescentOrder>(order: &O, trials: usize, depth: usize, seed: u64) -> ChainOutcome {
    match descending_walk(order, trials, depth, seed) {
        (Some(chain), _) => ChainOutcome::Counterexample { chain: chain.iter().map(|c| c.to_string()).collect() },
        (None, longest) => ChainOutcome::NoneFound { trials, longest },
    }
}

/// Chain search over a window of `psi D^gamma`; reports terms rather than indices.
pub fn psi_chain_search(
    order: &PsiOrder,
    budget: &PsiBudget,
    trials: usize,
    depth: usize,
    seed: u64,
) -> Result<ChainOutcome> {
    let pool = TermPool::new(psi_enum(order, budget)?);
    Ok(match descending_walk(&pool, trials, depth, seed) {
        (Some(chain), _) => ChainOutcome::Counterexample { chain: chain.iter().map(|&i| pool.terms[i].to_string()).collect() },
        (None, longest) => ChainOutcome::NoneFound { trials, longest },
    })
}

// ---------------------------------------------------------------------------
// Embedding checks

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome")]
pub enum EmbedOutcome {
    Verified { checked: usize },
    Violation { left: String, right: String, reason: String },
}

/// Checks that `map` is injective and order preserving on the first `k`
/// source elements (sorted ascending by `src_cmp`).
pub fn embed_check<A: fmt::Display, B>(
    source: &[A],
    k: usize,
    map: &dyn Fn(&A) -> Result<B>,
    dst_cmp: &dyn Fn(&B, &B) -> Result<Ordering>,
) -> Result<EmbedOutcome> {
    if source.len() < k {
        return Err(Error::EnumerationShortfall { wanted: k, found: source.len() });
    }
    let images = source[..k].iter().map(map).collect::<Result<Vec<_>>>()?;
    for i in 0..k {
        for j in i + 1..k {
            if dst_cmp(&images[i], &images[j])? != Ordering::Less {
                return Ok(EmbedOutcome::Violation {
                    left: source[i].to_string(),
                    right: source[j].to_string(),
                    reason: "images are not strictly increasing".into(),
                });
            }
        }
    }
    Ok(EmbedOutcome::Verified { checked: k })
}

/// The split of `psi (D + E)^gamma` into `psi D^gamma` followed by
/// `psi E^(gamma + psi D^gamma)`, checked on the first `k` terms.
///
/// Terms of the left summand are translated into terms of `psi D^gamma`;
/// terms of the right summand into terms of `psi E^delta`, where a left term
/// used as a position becomes the ordinal `gamma + rank`. The left part must
/// be finite and complete in the window.
pub fn psi_sum_check(d: &DilatorExpr, e: &DilatorExpr, gamma: &Ordinal, k: usize, budget: &PsiBudget) -> Result<EmbedOutcome> {
    let whole = PsiOrder::new(Sum(Box::new(d.clone()), Box::new(e.clone())), gamma.clone());
    let terms = psi_enum(&whole, budget)?;
    let left: Vec<&PsiTerm> = terms.iter().filter(|t| matches!(t.0, Elem::Inl(_))).collect();
    let p = psi_clause_otp(d, gamma)?;
    if p.as_nat() != Some(left.len() as u64) {
        return Ok(EmbedOutcome::Violation {
            left: format!("{} left terms", left.len()),
            right: format!("psi {d}^{gamma} = {p}"),
            reason: "left summand window is not the whole collapse".into(),
        });
    }
    let delta = gamma.add(&p);
    let left_order = PsiOrder::new(d.clone(), gamma.clone());
    let right_order = PsiOrder::new(e.clone(), delta.clone());
    let translate = |t: &PsiTerm| -> Result<(u8, PsiTerm)> {
        let (side, image, order) = match &t.0 {
            Elem::Inl(_) => (0u8, left_term(d, t)?, &left_order),
            Elem::Inr(_) => (1u8, right_term(e, gamma, &left, t)?, &right_order),
            _ => return Err(Error::MalformedTerm(format!("{t} is not a sum term"))),
        };
        if !order.is_valid(&image)? {
            return Err(Error::MalformedTerm(format!("image {image} of {t} is not a valid term")));
        }
        Ok((side, image))
    };
    let k = k.min(terms.len());
    embed_check(&terms, k, &translate, &|a, b| {
        Ok(match a.0.cmp(&b.0) {
            Ordering::Equal => psi_cmp(&a.1, &b.1)?,
            o => o,
        })
    })
}

/// Translates a term of the right summand into a term of `psi E^delta`:
/// left-summand positions become `gamma + index`, right-summand positions are
/// translated recursively.
fn right_term(e: &DilatorExpr, gamma: &Ordinal, left: &[&PsiTerm], t: &PsiTerm) -> Result<PsiTerm> {
    let Elem::Inr(y) = &t.0 else {
        return Err(Error::MalformedTerm(format!("{t} is not a right-summand term")));
    };
    let inner = element::fmap(e, y, &|pt: &Pt<Sub>| -> Result<Pt<Sub>> {
        match pt {
            Pt::Left(a) => Ok(Pt::Left(a.clone())),
            Pt::Right(u) if matches!(u.0 .0, Elem::Inr(_)) => Ok(Pt::Right(Sub(Rc::new(right_term(e, gamma, left, u)?)))),
            Pt::Right(u) => match left.iter().position(|l| **l == **u) {
                Some(i) => Ok(Pt::Left(gamma.add(&Ordinal::nat(i as u64)))),
                None => Err(Error::MalformedTerm(format!("{u} is outside the left summand"))),
            },
        }
    })?;
    Ok(PsiTerm(inner))
}

/// Translates a term of the left summand of `psi (D + E)^gamma` into a term
/// of `psi D^gamma`.
fn left_term(d: &DilatorExpr, t: &PsiTerm) -> Result<PsiTerm> {
    let Elem::Inl(x) = &t.0 else {
        return Err(Error::MalformedTerm(format!("{t} is not a left-summand term")));
    };
    let inner = element::fmap(d, x, &|pt: &Pt<Sub>| -> Result<Pt<Sub>> {
        Ok(match pt {
            Pt::Left(a) => Pt::Left(a.clone()),
            Pt::Right(u) => Pt::Right(Sub(Rc::new(left_term(d, u)?))),
        })
    })?;
    Ok(PsiTerm(inner))
}

/// Picks `n` random triples from `terms` (or all of them when there are few)
/// and checks trichotomy and transitivity of [`psi_cmp`].
pub fn psi_order_sanity(terms: &[PsiTerm], samples: usize, seed: u64) -> Result<Option<String>> {
    let n = terms.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx: Vec<(usize, usize, usize)> = Vec::new();
    if n * n * n <= samples {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    idx.push((a, b, c));
                }
            }
        }
    } else {
        let all: Vec<usize> = (0..n).collect();
        for _ in 0..samples {
            let a = *all.choose(&mut rng).unwrap();
            let b = *all.choose(&mut rng).unwrap();
            let c = *all.choose(&mut rng).unwrap();
            idx.push((a, b, c));
        }
    }
    for (a, b, c) in idx {
        let (x, y, z) = (&terms[a], &terms[b], &terms[c]);
        let xy = psi_cmp(x, y)?;
        if xy != psi_cmp(y, x)?.reverse() || (xy == Ordering::Equal) != (x == y) {
            return Ok(Some(format!("trichotomy fails for {x} and {y}")));
        }
        if xy == Ordering::Less && psi_cmp(y, z)? == Ordering::Less && psi_cmp(x, z)? != Ordering::Less {
            return Ok(Some(format!("transitivity fails for {x} < {y} < {z}")));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::dil_expr;
    use crate::ordinal::ord;

    #[test]
    fn constant_collapse() {
        let order = PsiOrder::new(dil_expr("Const(3)"), Ordinal::zero());
        let v = psi_enum(&order, &PsiBudget::default()).unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(psi_clause_otp(&dil_expr("Const(3)"), &ord("w")).unwrap(), ord("3"));
    }

    #[test]
    fn id_collapse() {
        let order = PsiOrder::new(Id, Ordinal::zero());
        assert!(psi_enum(&order, &PsiBudget::default()).unwrap().is_empty());
        let order = PsiOrder::new(Id, Ordinal::one());
        let budget = PsiBudget { depth: 3, ..PsiBudget::default() };
        let v = psi_enum(&order, &budget).unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v[1].to_string(), "id(x(id(0)))");
        assert_eq!(psi_clause_otp(&Id, &ord("w")).unwrap(), ord("w^2"));
        assert_eq!(psi_clause_otp(&Id, &Ordinal::zero()).unwrap(), Ordinal::zero());
    }

    #[test]
    fn enumeration_order_does_not_matter() {
        let order = PsiOrder::new(dil_expr("omega[Id]"), Ordinal::zero());
        let budget = PsiBudget { depth: 3, ..PsiBudget::default() };
        assert_eq!(psi_enum(&order, &budget).unwrap(), psi_enum_incremental(&order, &budget).unwrap());
    }

    #[test]
    fn fixture_descends() {
        assert!(matches!(chain_search(&IntegerFixture, 10, 30, 1), ChainOutcome::Counterexample { .. }));
    }
}
