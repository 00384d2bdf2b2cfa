//! Dilator expressions over the closed grammar.
//!
//! Values of [`DilatorExpr`] built through the constructor functions in this
//! module ([`sum`], [`mul_nat`], [`mul_omega`], [`omega_comp`]) are kept in
//! normal form: sums are right-associated, zero summands are dropped, and
//! closed constant subterms are folded. Shifts and separations are normalized
//! in [`crate::symbolic`], which needs classification.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ordinal::{Cursor, Ordinal};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DilatorExpr {
    Zero,
    One,
    Const(Ordinal),
    Id,
    Sum(Box<DilatorExpr>, Box<DilatorExpr>),
    MulNat(Box<DilatorExpr>, u64),
    MulOmega(Box<DilatorExpr>),
    OmegaComp(Box<DilatorExpr>),
    /// The last connected component of `omega[A]` for `A` of type Omega:
    /// Cantor normal forms whose leading exponent lies in the last component of `A`.
    OmegaHead(Box<DilatorExpr>),
    Shift(Box<DilatorExpr>, Ordinal),
    Sep(Box<DilatorExpr>, Ordinal),
    SepMinus(Box<DilatorExpr>, Ordinal),
    SepPlus(Box<DilatorExpr>, Ordinal),
}

use DilatorExpr::*;

impl DilatorExpr {
    pub fn constant(value: Ordinal) -> DilatorExpr {
        match value.as_nat() {
            Some(0) => Zero,
            Some(1) => One,
            _ => Const(value),
        }
    }

    pub fn nat(n: u64) -> DilatorExpr {
        Self::constant(Ordinal::nat(n))
    }

    /// The value of a constant dilator (`0`, `1` or `Const`).
    pub fn as_const(&self) -> Option<Ordinal> {
        match self {
            Zero => Some(Ordinal::zero()),
            One => Some(Ordinal::one()),
            Const(a) => Some(a.clone()),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Zero)
    }

    /// The nodes that carry their own parameter `gamma`.
    pub fn layer_param(&self) -> Option<&Ordinal> {
        match self {
            Shift(_, g) | Sep(_, g) | SepMinus(_, g) | SepPlus(_, g) => Some(g),
            _ => None,
        }
    }

    /// Number of nodes, used to keep fuzzers and suites small.
    pub fn size(&self) -> usize {
        match self {
            Zero | One | Const(_) | Id => 1,
            Sum(a, b) => 1 + a.size() + b.size(),
            MulNat(a, _) | MulOmega(a) | OmegaComp(a) | OmegaHead(a) => 1 + a.size(),
            Shift(a, _) | Sep(a, _) | SepMinus(a, _) | SepPlus(a, _) => 1 + a.size(),
        }
    }

    /// True when the expression contains no `Id`, i.e. denotes a constant dilator.
    pub fn is_closed(&self) -> bool {
        match self {
            Zero | One | Const(_) => true,
            Id => false,
            Sum(a, b) => a.is_closed() && b.is_closed(),
            MulNat(a, _) | MulOmega(a) | OmegaComp(a) | OmegaHead(a) => a.is_closed(),
            Shift(a, _) | Sep(a, _) | SepMinus(a, _) | SepPlus(a, _) => a.is_closed(),
        }
    }
}

// ---------------------------------------------------------------------------
// Normalizing constructors

/// `a + b`, right-associated with zero summands dropped and constants folded.
pub fn sum(a: DilatorExpr, b: DilatorExpr) -> DilatorExpr {
    match (a, b) {
        (Zero, b) => b,
        (a, Zero) => a,
        (a, b) if a.as_const().is_some() && b.as_const().is_some() => {
            DilatorExpr::constant(a.as_const().unwrap().add(&b.as_const().unwrap()))
        }
        (a, Sum(b1, b2)) if a.as_const().is_some() && b1.as_const().is_some() => {
            let c = a.as_const().unwrap().add(&b1.as_const().unwrap());
            Sum(Box::new(DilatorExpr::constant(c)), b2)
        }
        (Sum(a1, a2), b) => sum(*a1, sum(*a2, b)),
        (a, b) => Sum(Box::new(a), Box::new(b)),
    }
}

/// Sum of a non-empty list, folded from the right.
pub fn sum_all(parts: Vec<DilatorExpr>) -> DilatorExpr {
    parts.into_iter().rev().fold(Zero, |acc, d| sum(d, acc))
}

/// `a * n`.
pub fn mul_nat(a: DilatorExpr, n: u64) -> DilatorExpr {
    match (a, n) {
        (_, 0) | (Zero, _) => Zero,
        (a, 1) => a,
        (a, n) if a.as_const().is_some() => DilatorExpr::constant(a.as_const().unwrap().mul_nat(n)),
        (MulNat(a, m), n) => MulNat(a, m.checked_mul(n).expect("multiplier overflow")),
        (a, n) => MulNat(Box::new(a), n),
    }
}

/// `a * w`.
pub fn mul_omega(a: DilatorExpr) -> DilatorExpr {
    match a {
        Zero => Zero,
        a if a.as_const().is_some() => DilatorExpr::constant(a.as_const().unwrap().mul_omega()),
        a => MulOmega(Box::new(a)),
    }
}

/// `omega[a]`; constant arguments fold to `w^c`.
pub fn omega_comp(a: DilatorExpr) -> DilatorExpr {
    match a.as_const() {
        Some(c) => DilatorExpr::constant(Ordinal::omega_pow(c)),
        None => OmegaComp(Box::new(a)),
    }
}

// ---------------------------------------------------------------------------
// Printing

impl DilatorExpr {
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        match self {
            Zero => write!(f, "0"),
            One => write!(f, "1"),
            Const(a) => write!(f, "Const({a})"),
            Id => write!(f, "Id"),
            Sum(a, b) => {
                if prec > 0 {
                    write!(f, "(")?;
                }
                a.fmt_prec(f, 1)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 0)?;
                if prec > 0 {
                    write!(f, ")")?;
                }
                Ok(())
            }
            MulNat(a, n) => {
                a.fmt_prec(f, 2)?;
                write!(f, "*{n}")
            }
            MulOmega(a) => {
                a.fmt_prec(f, 2)?;
                write!(f, "*w")
            }
            OmegaComp(a) => write!(f, "omega[{a}]"),
            OmegaHead(a) => write!(f, "head[{a}]"),
            Shift(a, g) => write!(f, "shift({a}, {g})"),
            Sep(a, g) => write!(f, "sep({a}, {g})"),
            SepMinus(a, g) => write!(f, "sepminus({a}, {g})"),
            SepPlus(a, g) => write!(f, "sepplus({a}, {g})"),
        }
    }
}

impl fmt::Display for DilatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl fmt::Debug for DilatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for DilatorExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

// ---------------------------------------------------------------------------
// Parsing

/// Parses the textual grammar without normalizing.
///
/// ```text
/// Dil  ::= Term ("+" Term)*
/// Term ::= Atom ("*" Nat | "*w")*
/// Atom ::= Nat | "Id" | "Const(" Ord ")" | "omega[" Dil "]" | "head[" Dil "]"
///        | "shift(" Dil "," Ord ")" | "sep(" Dil "," Ord ")"
///        | "sepminus(" Dil "," Ord ")" | "sepplus(" Dil "," Ord ")" | "(" Dil ")"
/// ```
pub fn parse_raw(src: &str) -> Result<DilatorExpr> {
    let mut cur = Cursor::new(src);
    if cur.at_end() {
        return Err(cur.error(&["dilator expression"]));
    }
    let d = dil(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error(&["+", "*", "end of input"]));
    }
    Ok(d)
}

fn dil(cur: &mut Cursor<'_>) -> Result<DilatorExpr> {
    let mut parts = vec![term(cur)?];
    while cur.eat("+") {
        parts.push(term(cur)?);
    }
    let last = parts.pop().unwrap();
    Ok(parts.into_iter().rev().fold(last, |acc, d| Sum(Box::new(d), Box::new(acc))))
}

fn term(cur: &mut Cursor<'_>) -> Result<DilatorExpr> {
    let mut d = atom(cur)?;
    while cur.eat("*") {
        if cur.eat("w") || cur.eat("ω") {
            d = MulOmega(Box::new(d));
        } else {
            let n = cur.nat()?;
            d = MulNat(Box::new(d), n);
        }
    }
    Ok(d)
}

fn layer_args(cur: &mut Cursor<'_>) -> Result<(DilatorExpr, Ordinal)> {
    let d = dil(cur)?;
    cur.expect(",")?;
    let g = cur.ordinal()?;
    cur.expect(")")?;
    Ok((d, g))
}

fn atom(cur: &mut Cursor<'_>) -> Result<DilatorExpr> {
    if let Some(c) = cur.peek() {
        if c.is_ascii_digit() {
            let n = cur.nat()?;
            return Ok(match n {
                0 => Zero,
                1 => One,
                n => Const(Ordinal::nat(n)),
            });
        }
    }
    if cur.eat("Id") {
        return Ok(Id);
    }
    if cur.eat("Const(") {
        let a = cur.ordinal()?;
        cur.expect(")")?;
        return Ok(Const(a));
    }
    if cur.eat("omega[") {
        let d = dil(cur)?;
        cur.expect("]")?;
        return Ok(OmegaComp(Box::new(d)));
    }
    if cur.eat("head[") {
        let d = dil(cur)?;
        cur.expect("]")?;
        return Ok(OmegaHead(Box::new(d)));
    }
    if cur.eat("shift(") {
        let (d, g) = layer_args(cur)?;
        return Ok(Shift(Box::new(d), g));
    }
    if cur.eat("sepminus(") {
        let (d, g) = layer_args(cur)?;
        return Ok(SepMinus(Box::new(d), g));
    }
    if cur.eat("sepplus(") {
        let (d, g) = layer_args(cur)?;
        return Ok(SepPlus(Box::new(d), g));
    }
    if cur.eat("sep(") {
        let (d, g) = layer_args(cur)?;
        return Ok(Sep(Box::new(d), g));
    }
    if cur.eat("(") {
        let d = dil(cur)?;
        cur.expect(")")?;
        return Ok(d);
    }
    Err(cur.error(&["natural number", "Id", "Const(", "omega[", "shift(", "sep(", "("]))
}

impl FromStr for DilatorExpr {
    type Err = Error;

    /// Parses and normalizes.
    fn from_str(s: &str) -> Result<Self> {
        crate::symbolic::normalize(&parse_raw(s)?)
    }
}

/// Parses and normalizes, panicking on bad input. Meant for literals in tests and suites.
pub fn dil_expr(s: &str) -> DilatorExpr {
    s.parse().unwrap_or_else(|e| panic!("bad dilator literal {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::ord;

    #[test]
    fn parse_shapes() {
        assert_eq!(parse_raw("Id + 1").unwrap(), Sum(Box::new(Id), Box::new(One)));
        assert_eq!(
            parse_raw("omega[Id+1]").unwrap(),
            OmegaComp(Box::new(Sum(Box::new(Id), Box::new(One))))
        );
        assert_eq!(parse_raw("Const(w^2+1)").unwrap(), Const(ord("w^2+1")));
        assert_eq!(parse_raw("(Id+1)*2*w").unwrap().to_string(), "(Id + 1)*2*w");
        assert!(matches!(parse_raw("Id +"), Err(Error::Parse { .. })));
        assert!(matches!(parse_raw(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn sums_normalize() {
        let d = sum(sum(Id, One), sum(Const(ord("w")), Id));
        // 1 + Const(w) absorbs the unit.
        assert_eq!(d.to_string(), "Id + Const(w) + Id");
        assert_eq!(sum(One, sum(Const(ord("w")), Id)).to_string(), "Const(w) + Id");
        assert_eq!(sum(Zero, Id), Id);
        assert_eq!(sum(Const(ord("w")), One), Const(ord("w+1")));
    }

    #[test]
    fn products_fold_constants() {
        assert_eq!(mul_omega(One), Const(ord("w")));
        assert_eq!(mul_nat(Const(ord("w+1")), 3), Const(ord("w*3+1")));
        assert_eq!(omega_comp(DilatorExpr::nat(2)), Const(ord("w^2")));
        assert_eq!(omega_comp(Zero), One);
        assert_eq!(mul_nat(mul_nat(Id, 2), 3), MulNat(Box::new(Id), 6));
    }
}
