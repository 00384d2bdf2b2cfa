//! Ordinal notations below epsilon_0 in Cantor normal form.
//!
//! An [`Ordinal`] is a strictly descending list of `(exponent, coefficient)`
//! pairs; the empty list is zero. Every operation here is pure.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Cantor normal form `w^e0*c0 + w^e1*c1 + ...` with `e0 > e1 > ...`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::nat(1)
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal { terms: vec![(Self::zero(), n)] }
        }
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::one())
    }

    /// `w^e`.
    pub fn omega_pow(e: Ordinal) -> Self {
        Ordinal { terms: vec![(e, 1)] }
    }

    /// `w^e * c`; zero when `c == 0`.
    pub fn term(e: Ordinal, c: u64) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Ordinal { terms: vec![(e, c)] }
        }
    }

    /// Builds a notation from raw terms, checking the descending-exponent invariant.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Self> {
        for w in terms.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(Error::InvalidNotation("exponents must strictly descend".into()));
            }
        }
        if terms.iter().any(|(_, c)| *c == 0) {
            return Err(Error::InvalidNotation("coefficients must be positive".into()));
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a natural number, if finite.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    pub fn is_successor(&self) -> bool {
        matches!(self.terms.last(), Some((e, _)) if e.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    /// Exponent of the leading term; `None` for zero.
    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|(e, _)| e)
    }

    /// True iff the notation has the form `w^e` (so `1 = w^0` counts).
    pub fn is_principal(&self) -> bool {
        matches!(self.terms.as_slice(), [(_, 1)])
    }

    /// The predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<Ordinal> {
        if !self.is_successor() {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().unwrap();
        if last.1 == 1 {
            terms.pop();
        } else {
            last.1 -= 1;
        }
        Some(Ordinal { terms })
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// Ordinal sum; terms of `self` below the leading exponent of `rhs` are absorbed.
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some((e, c)) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut merged = None;
        for (a_e, a_c) in &self.terms {
            match a_e.cmp(e) {
                Ordering::Greater => terms.push((a_e.clone(), *a_c)),
                Ordering::Equal => merged = Some(*a_c),
                Ordering::Less => break,
            }
        }
        let lead = c.checked_add(merged.unwrap_or(0)).expect("coefficient overflow");
        terms.push((e.clone(), lead));
        terms.extend(rhs.terms[1..].iter().cloned());
        Ordinal { terms }
    }

    /// `self * n` for a natural number `n`.
    pub fn mul_nat(&self, n: u64) -> Ordinal {
        if n == 0 || self.is_zero() {
            return Ordinal::zero();
        }
        let mut terms = self.terms.clone();
        terms[0].1 = terms[0].1.checked_mul(n).expect("coefficient overflow");
        Ordinal { terms }
    }

    /// `self * w`.
    pub fn mul_omega(&self) -> Ordinal {
        match self.leading_exponent() {
            None => Ordinal::zero(),
            Some(e) => Ordinal::omega_pow(e.succ()),
        }
    }

    /// General product `self * rhs`.
    pub fn mul(&self, rhs: &Ordinal) -> Ordinal {
        let Some(lead) = self.leading_exponent() else {
            return Ordinal::zero();
        };
        let mut out = Ordinal::zero();
        for (e, c) in &rhs.terms {
            let part = if e.is_zero() {
                self.mul_nat(*c)
            } else {
                Ordinal::term(lead.add(e), *c)
            };
            out = out.add(&part);
        }
        out
    }

    /// The unique `c` with `self + c == rhs`, provided `self <= rhs`.
    pub fn left_sub(&self, rhs: &Ordinal) -> Option<Ordinal> {
        if self > rhs {
            return None;
        }
        let mut i = 0;
        while i < self.terms.len() && i < rhs.terms.len() && self.terms[i] == rhs.terms[i] {
            i += 1;
        }
        if i == rhs.terms.len() {
            return Some(Ordinal::zero());
        }
        let (be, bc) = &rhs.terms[i];
        let mut terms = Vec::new();
        match self.terms.get(i) {
            Some((ae, ac)) if ae == be => terms.push((be.clone(), bc - ac)),
            _ => terms.push((be.clone(), *bc)),
        }
        terms.extend(rhs.terms[i + 1..].iter().cloned());
        Some(Ordinal { terms })
    }

    /// The `k`-th entry of the standard fundamental sequence of a limit ordinal.
    pub fn fundamental(&self, k: u64) -> Option<Ordinal> {
        if !self.is_limit() {
            return None;
        }
        let mut terms = self.terms.clone();
        let (e, c) = terms.pop().unwrap();
        if c > 1 {
            terms.push((e.clone(), c - 1));
        }
        let prefix = Ordinal { terms };
        let tail = match e.pred() {
            Some(p) => Ordinal::term(p, k),
            None => Ordinal::omega_pow(e.fundamental(k)?),
        };
        Some(prefix.add(&tail))
    }

    /// Height of the exponent tower of the leading term (0 for finite values).
    pub fn height(&self) -> usize {
        match self.leading_exponent() {
            None => 0,
            Some(e) if e.is_zero() => 0,
            Some(e) => 1 + e.height(),
        }
    }

    fn fmt_exponent(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.terms.as_slice() {
            [(e, 1)] if !e.is_zero() => write!(f, "{self}"),
            _ if self.is_finite() => write!(f, "{self}"),
            _ => write!(f, "({self})"),
        }
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a.0.cmp(&b.0).then(a.1.cmp(&b.1));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            write!(f, "w")?;
            if *e != Ordinal::one() {
                write!(f, "^")?;
                e.fmt_exponent(f)?;
            }
            if *c > 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

// ---------------------------------------------------------------------------
// Parsing

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn skip_ws(&mut self) {
        while let Some(ch) = self.src[self.pos..].chars().next() {
            if !ch.is_whitespace() {
                break;
            }
            self.pos += ch.len_utf8();
        }
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    pub(crate) fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&[token]))
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub(crate) fn error(&mut self, expected: &[&str]) -> Error {
        self.skip_ws();
        Error::Parse {
            position: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub(crate) fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let digits: String = self.src[self.pos..].chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(self.error(&["natural number"]));
        }
        let value = digits.parse::<u64>().map_err(|_| self.error(&["natural number below 2^64"]))?;
        self.pos += digits.len();
        Ok(value)
    }

    fn omega_symbol(&mut self) -> bool {
        self.eat("w") || self.eat("ω")
    }

    /// `Ord ::= Term ("+" Term)*`
    pub(crate) fn ordinal(&mut self) -> Result<Ordinal> {
        let mut value = self.ord_term()?;
        while self.eat("+") {
            value = value.add(&self.ord_term()?);
        }
        Ok(value)
    }

    /// `Term ::= "w" ["^" Exp] ["*" Nat] | Nat`
    fn ord_term(&mut self) -> Result<Ordinal> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            _ if self.omega_symbol() => {
                let e = if self.eat("^") { self.exponent()? } else { Ordinal::one() };
                let c = if self.eat("*") { self.nat()? } else { 1 };
                Ok(Ordinal::term(e, c))
            }
            _ => Err(self.error(&["natural number", "w"])),
        }
    }

    /// `Exp ::= Nat | "w" ["^" Exp] | "(" Ord ")"`
    fn exponent(&mut self) -> Result<Ordinal> {
        if self.eat("(") {
            let e = self.ordinal()?;
            self.expect(")")?;
            return Ok(e);
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            _ if self.omega_symbol() => {
                let e = if self.eat("^") { self.exponent()? } else { Ordinal::one() };
                Ok(Ordinal::omega_pow(e))
            }
            _ => Err(self.error(&["natural number", "w", "("])),
        }
    }
}

impl FromStr for Ordinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let value = cur.ordinal()?;
        if !cur.at_end() {
            return Err(cur.error(&["+", "end of input"]));
        }
        Ok(value)
    }
}

/// Parses an ordinal, panicking on malformed input. Meant for literals in tests and suites.
pub fn ord(s: &str) -> Ordinal {
    s.parse().unwrap_or_else(|e| panic!("bad ordinal literal {s:?}: {e}"))
}

// ---------------------------------------------------------------------------
// Finite samples of initial segments

/// A finite, structured sample of the ordinals below `alpha`.
///
/// Finite bounds are sampled completely up to `width`; limits contribute the
/// samples of their first `width` fundamental-sequence entries, so every
/// sample is closed downwards along fundamental sequences.
pub fn sample_below(alpha: &Ordinal, width: u64, cap: usize) -> Vec<Ordinal> {
    let mut out = std::collections::BTreeSet::new();
    collect_below(alpha, width, cap, &mut out);
    out.into_iter().take(cap).collect()
}

fn collect_below(alpha: &Ordinal, width: u64, cap: usize, out: &mut std::collections::BTreeSet<Ordinal>) {
    if out.len() >= cap || alpha.is_zero() {
        return;
    }
    if let Some(n) = alpha.as_nat() {
        for k in 0..n.min(width) {
            out.insert(Ordinal::nat(k));
        }
        return;
    }
    if let Some(p) = alpha.pred() {
        out.insert(p.clone());
        collect_below(&p, width, cap, out);
        return;
    }
    for k in 1..=width {
        let f = alpha.fundamental(k).expect("limit has a fundamental sequence");
        out.insert(f.clone());
        collect_below(&f, width, cap, out);
    }
}

// ---------------------------------------------------------------------------
// Suprema of omega-sequences

/// How the sequence `start, step(start), step(step(start)), ...` grows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimitKind {
    /// `x -> x + c` with `c > 0`.
    ConstantIncrement(Ordinal),
    /// `x -> x * multiplier + addend`.
    AffineStep { multiplier: u64, addend: Ordinal },
    /// The sequence is eventually constant.
    Stationary,
    /// After a fixed `prefix`, the next Cantor term has exponents forming the
    /// inner sequence; the supremum is `prefix + w^(sup of exponents)`.
    ExponentLimit { prefix: Ordinal, exponents: Box<LimitPattern> },
    /// Each entry is at least `w` raised to the previous one.
    Tower,
    Unsupported,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitPattern {
    pub kind: LimitKind,
    pub start: Ordinal,
}

impl LimitPattern {
    pub fn new(kind: LimitKind, start: Ordinal) -> Self {
        LimitPattern { kind, start }
    }

    /// Applies one step of the pattern, where the pattern is a step map.
    pub fn step(&self, x: &Ordinal) -> Option<Ordinal> {
        match &self.kind {
            LimitKind::ConstantIncrement(c) => Some(x.add(c)),
            LimitKind::AffineStep { multiplier, addend } => Some(x.mul_nat(*multiplier).add(addend)),
            LimitKind::Stationary => Some(x.clone()),
            _ => None,
        }
    }
}

/// The exact supremum of the sequence described by `pattern`.
pub fn ord_sup_solve(pattern: &LimitPattern) -> Result<Ordinal> {
    match &pattern.kind {
        LimitKind::ConstantIncrement(c) => {
            if c.is_zero() {
                return Err(Error::InvalidNotation("constant increment must be positive".into()));
            }
            Ok(pattern.start.add(&c.mul_omega()))
        }
        LimitKind::AffineStep { multiplier, addend } => {
            if *multiplier == 0 {
                return Err(Error::InvalidNotation("affine multiplier must be at least 1".into()));
            }
            if *multiplier == 1 {
                if addend.is_zero() {
                    return Ok(pattern.start.clone());
                }
                return Ok(pattern.start.add(&addend.mul_omega()));
            }
            // From the first step on, the leading exponent E is fixed and its
            // coefficient is multiplied by `multiplier` each time.
            let first = pattern.start.mul_nat(*multiplier).add(addend);
            match first.leading_exponent() {
                None => Ok(Ordinal::zero()),
                Some(e) => Ok(Ordinal::omega_pow(e.succ())),
            }
        }
        LimitKind::Stationary => Ok(pattern.start.clone()),
        LimitKind::ExponentLimit { prefix, exponents } => {
            let e = ord_sup_solve(exponents)?;
            Ok(prefix.add(&Ordinal::omega_pow(e)))
        }
        LimitKind::Tower => Err(Error::OutOfNotation {
            reason: format!("supremum of an exponential tower starting at {} is at least epsilon_0", pattern.start),
            lower_bound: Some(pattern.start.clone()),
        }),
        LimitKind::Unsupported => Err(Error::UnsupportedLimit(format!(
            "no supported step pattern above {}",
            pattern.start
        ))),
    }
}

/// Number of trailing entries a pattern must fit before it is accepted.
pub const PATTERN_WINDOW: usize = 4;

/// Recognises the growth pattern of the tail of a non-decreasing sequence.
///
/// Only the last [`PATTERN_WINDOW`] entries are inspected; earlier entries are
/// allowed to be transient.
pub fn detect_limit_pattern(seq: &[Ordinal]) -> LimitPattern {
    detect_in_window(seq, 0)
}

fn detect_in_window(seq: &[Ordinal], depth: usize) -> LimitPattern {
    let unsupported = |start: &Ordinal| LimitPattern::new(LimitKind::Unsupported, start.clone());
    if seq.len() < PATTERN_WINDOW {
        return unsupported(seq.first().unwrap_or(&Ordinal::zero()));
    }
    let w = &seq[seq.len() - PATTERN_WINDOW..];
    let start = w[0].clone();
    if w.windows(2).any(|p| p[0] > p[1]) || depth > 8 {
        return unsupported(&start);
    }
    if w.windows(2).all(|p| p[0] == p[1]) {
        return LimitPattern::new(LimitKind::Stationary, start);
    }
    if w.windows(2).any(|p| p[0] == p[1]) {
        return unsupported(&start);
    }
    let diffs: Vec<Ordinal> = w.windows(2).map(|p| p[0].left_sub(&p[1]).unwrap()).collect();
    if diffs.windows(2).all(|d| d[0] == d[1]) {
        return LimitPattern::new(LimitKind::ConstantIncrement(diffs[0].clone()), start);
    }
    for m in 2..=8u64 {
        let addends: Option<Vec<Ordinal>> = w.windows(2).map(|p| p[0].mul_nat(m).left_sub(&p[1])).collect();
        if let Some(a) = addends {
            if a.windows(2).all(|d| d[0] == d[1]) {
                return LimitPattern::new(LimitKind::AffineStep { multiplier: m, addend: a[0].clone() }, start);
            }
        }
    }
    if w.windows(2).all(|p| !p[0].is_zero() && p[1] >= Ordinal::omega_pow(p[0].clone())) {
        return LimitPattern::new(LimitKind::Tower, start);
    }
    // Longest prefix of Cantor terms shared by the whole window.
    let shared = (0..)
        .take_while(|&i| {
            let t = w[0].terms.get(i);
            t.is_some() && w.iter().all(|x| x.terms.get(i) == t)
        })
        .count();
    let prefix = Ordinal { terms: w[0].terms[..shared].to_vec() };
    let next: Option<Vec<&(Ordinal, u64)>> = w.iter().map(|x| x.terms.get(shared)).collect();
    let Some(next) = next else {
        return unsupported(&start);
    };
    let exps: Vec<Ordinal> = next.iter().map(|(e, _)| e.clone()).collect();
    if exps.windows(2).all(|p| p[0] == p[1]) {
        // Same exponent, growing coefficient.
        let inner = LimitPattern::new(LimitKind::Stationary, exps[0].succ());
        return LimitPattern::new(LimitKind::ExponentLimit { prefix, exponents: Box::new(inner) }, start);
    }
    if exps.windows(2).all(|p| p[0] < p[1]) {
        let inner = detect_in_window(&exps, depth + 1);
        if inner.kind == LimitKind::Unsupported {
            return unsupported(&start);
        }
        if inner.kind == LimitKind::Tower {
            return LimitPattern::new(LimitKind::Tower, start);
        }
        return LimitPattern::new(LimitKind::ExponentLimit { prefix, exponents: Box::new(inner) }, start);
    }
    unsupported(&start)
}

/// Detects and solves in one go.
pub fn sup_of_sequence(seq: &[Ordinal]) -> Result<Ordinal> {
    ord_sup_solve(&detect_limit_pattern(seq))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for s in ["0", "7", "w", "w*3", "w^2+1", "w^(w+1)", "w^w^2", "w^(w*2)+w^w*5+3"] {
            assert_eq!(ord(s).to_string(), s);
        }
        assert_eq!(ord("1+w"), ord("w"));
        assert_eq!(ord("w^(w)"), ord("w^w"));
        assert!("w^".parse::<Ordinal>().is_err());
        assert!("w+".parse::<Ordinal>().is_err());
    }

    #[test]
    fn comparisons() {
        assert_eq!(ord("w").cmp(&ord("w")), Ordering::Equal);
        assert!(ord("w+1") < ord("w*2"));
        assert!(ord("w^w") > ord("w^3*5+w"));
    }

    #[test]
    fn sums() {
        assert_eq!(Ordinal::one().add(&ord("w")), ord("w"));
        assert_eq!(ord("w").add(&Ordinal::one()), ord("w+1"));
        assert_eq!(ord("w^2+w").add(&ord("w^2")), ord("w^2*2"));
    }

    #[test]
    fn powers_and_principality() {
        assert_eq!(Ordinal::omega_pow(Ordinal::zero()), Ordinal::one());
        assert_eq!(Ordinal::omega_pow(Ordinal::one()), ord("w"));
        assert_eq!(Ordinal::omega_pow(ord("w+1")).to_string(), "w^(w+1)");
        assert!(ord("w^w").is_principal());
        assert!(!ord("w*2").is_principal());
        assert!(Ordinal::one().is_principal());
    }

    #[test]
    fn products() {
        assert_eq!(ord("3").mul_omega(), ord("w"));
        assert_eq!(ord("w+1").mul_nat(3), ord("w*3+1"));
        assert_eq!(ord("w+1").mul(&ord("w")), ord("w^2"));
        assert_eq!(ord("w").mul(&ord("w+1")), ord("w^2+w"));
        assert_eq!(ord("w*2").mul(&ord("w^2")), ord("w^3"));
    }

    #[test]
    fn left_subtraction() {
        assert_eq!(ord("w").left_sub(&ord("w*3+2")), Some(ord("w*2+2")));
        assert_eq!(ord("5").left_sub(&ord("w")), Some(ord("w")));
        assert_eq!(ord("w^2").left_sub(&ord("w")), None);
    }

    #[test]
    fn fundamental_sequences() {
        assert_eq!(ord("w").fundamental(4), Some(ord("4")));
        assert_eq!(ord("w^2*2").fundamental(3), Some(ord("w^2+w*3")));
        assert_eq!(ord("w^w").fundamental(3), Some(ord("w^3")));
        assert_eq!(ord("w+1").fundamental(3), None);
    }

    #[test]
    fn samples_are_below_and_sorted() {
        let s = sample_below(&ord("w^2"), 3, 1000);
        assert!(s.windows(2).all(|p| p[0] < p[1]));
        assert!(s.iter().all(|x| *x < ord("w^2")));
        assert!(s.contains(&ord("w*2+1")));
        assert_eq!(sample_below(&ord("4"), 10, 100), (0..4).map(Ordinal::nat).collect::<Vec<_>>());
    }

    #[test]
    fn sup_solver_cases() {
        let p = LimitPattern::new(LimitKind::ConstantIncrement(Ordinal::one()), ord("w"));
        assert_eq!(ord_sup_solve(&p).unwrap(), ord("w*2"));
        let p = LimitPattern::new(LimitKind::ConstantIncrement(ord("w")), ord("w"));
        assert_eq!(ord_sup_solve(&p).unwrap(), ord("w^2"));
        let p = LimitPattern::new(LimitKind::Unsupported, ord("w"));
        assert!(matches!(ord_sup_solve(&p), Err(Error::UnsupportedLimit(_))));
    }

    #[test]
    fn detection() {
        let seq: Vec<Ordinal> = (0..6).map(|k| ord("w*2").add(&Ordinal::nat(k))).collect();
        assert_eq!(sup_of_sequence(&seq).unwrap(), ord("w*3"));
        let seq: Vec<Ordinal> = (1..7).map(|k| Ordinal::omega_pow(Ordinal::nat(k))).collect();
        assert_eq!(sup_of_sequence(&seq).unwrap(), ord("w^w"));
        let mut tower = vec![ord("w")];
        for _ in 0..4 {
            let next = Ordinal::omega_pow(tower.last().unwrap().clone());
            tower.push(next);
        }
        assert!(matches!(sup_of_sequence(&tower), Err(Error::OutOfNotation { .. })));
        let doubling: Vec<Ordinal> = (0..5).map(|k| ord("w").mul_nat(1 << k)).collect();
        assert_eq!(sup_of_sequence(&doubling).unwrap(), ord("w^2"));
    }
}
