//! Rule tables for classification, shifts, separation of variables, signed
//! splits, order types and sum decomposition.
//!
//! Every function here works on normalized expressions and returns normalized
//! expressions. The semantic layer in [`crate::element`] and the checks in
//! [`crate::validate`] confirm the rules on finite instances.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{mul_nat, mul_omega, omega_comp, sum, DilatorExpr, DilatorExpr::*};
use crate::ordinal::{detect_limit_pattern, ord_sup_solve, LimitKind, Ordinal};

/// Classification of a dilator by the shape of its component index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeClass {
    Zero,
    /// `D = pred + 1`.
    One { pred: DilatorExpr },
    /// Limit-many components; partial sums come from [`fundamental`].
    Omega { expr: DilatorExpr },
    /// `D = head + last` with `last` connected and different from 1.
    BigOmega { head: DilatorExpr, last: DilatorExpr },
}

impl TypeClass {
    pub fn name(&self) -> &'static str {
        match self {
            TypeClass::Zero => "0",
            TypeClass::One { .. } => "1",
            TypeClass::Omega { .. } => "omega",
            TypeClass::BigOmega { .. } => "Omega",
        }
    }

    /// The `k`-th proper partial sum of a type-omega dilator.
    pub fn fund_seq(&self, k: u64) -> Result<DilatorExpr> {
        match self {
            TypeClass::Omega { expr } => fundamental(expr, k),
            _ => Err(Error::UnsupportedClassification("fundamental sequence of a non-limit type".into())),
        }
    }

    /// `{D}^gamma` for a type-Omega dilator.
    pub fn sep(&self, gamma: &Ordinal) -> Result<DilatorExpr> {
        match self {
            TypeClass::BigOmega { head, last } => Ok(sum(head.clone(), sep_atom(last, gamma)?)),
            _ => Err(Error::NotTypeOmega(format!("classification is type {}", self.name()))),
        }
    }
}

/// Normalizes an arbitrary (parsed) expression.
pub fn normalize(d: &DilatorExpr) -> Result<DilatorExpr> {
    Ok(match d {
        Zero | One | Id => d.clone(),
        Const(a) => DilatorExpr::constant(a.clone()),
        Sum(a, b) => sum(normalize(a)?, normalize(b)?),
        MulNat(a, n) => mul_nat(normalize(a)?, *n),
        MulOmega(a) => mul_omega(normalize(a)?),
        OmegaComp(a) => omega_comp(normalize(a)?),
        OmegaHead(a) => {
            let a = normalize(a)?;
            omega_head(a)?
        }
        Shift(a, g) => shift(&normalize(a)?, g)?,
        Sep(a, g) => sep(&normalize(a)?, g)?,
        SepMinus(a, g) => sep_minus(&normalize(a)?, g)?,
        SepPlus(a, g) => sep_plus(&normalize(a)?, g)?,
    })
}

/// `head[a]`, checking that `a` has type Omega.
pub fn omega_head(a: DilatorExpr) -> Result<DilatorExpr> {
    match classify(&a)? {
        TypeClass::BigOmega { .. } => Ok(OmegaHead(Box::new(a))),
        t => Err(Error::NotTypeOmega(format!("head[{a}] needs a type-Omega argument, found type {}", t.name()))),
    }
}

pub fn classify(d: &DilatorExpr) -> Result<TypeClass> {
    Ok(match d {
        Zero => TypeClass::Zero,
        One => TypeClass::One { pred: Zero },
        Const(a) => {
            if a.is_zero() {
                TypeClass::Zero
            } else if let Some(p) = a.pred() {
                TypeClass::One { pred: DilatorExpr::constant(p) }
            } else {
                TypeClass::Omega { expr: d.clone() }
            }
        }
        Id | OmegaHead(_) => TypeClass::BigOmega { head: Zero, last: d.clone() },
        Sum(a, b) => prefixed(a.as_ref().clone(), classify(b)?, d),
        MulNat(a, n) => prefixed(mul_nat(a.as_ref().clone(), n - 1), classify(a)?, d),
        MulOmega(_) => TypeClass::Omega { expr: d.clone() },
        OmegaComp(a) => match classify(a)? {
            TypeClass::Zero => TypeClass::One { pred: Zero },
            TypeClass::One { .. } | TypeClass::Omega { .. } => TypeClass::Omega { expr: d.clone() },
            TypeClass::BigOmega { head, .. } => TypeClass::BigOmega {
                head: omega_comp(head),
                last: OmegaHead(a.clone()),
            },
        },
        Shift(..) | Sep(..) | SepMinus(..) | SepPlus(..) => {
            return Err(Error::UnsupportedClassification(format!("no rule classifies {d}")))
        }
    })
}

fn prefixed(prefix: DilatorExpr, tail: TypeClass, whole: &DilatorExpr) -> TypeClass {
    match tail {
        TypeClass::Zero => classify(&prefix).unwrap_or(TypeClass::Zero),
        TypeClass::One { pred } => TypeClass::One { pred: sum(prefix, pred) },
        TypeClass::Omega { .. } => TypeClass::Omega { expr: whole.clone() },
        TypeClass::BigOmega { head, last } => TypeClass::BigOmega { head: sum(prefix, head), last },
    }
}

/// The `k`-th partial sum (`k >= 1`) of a type-omega dilator.
pub fn fundamental(d: &DilatorExpr, k: u64) -> Result<DilatorExpr> {
    let not_limit = || Error::UnsupportedClassification(format!("{d} has no fundamental sequence"));
    match d {
        Const(a) => Ok(DilatorExpr::constant(a.fundamental(k).ok_or_else(not_limit)?)),
        Sum(a, b) => Ok(sum(a.as_ref().clone(), fundamental(b, k)?)),
        MulNat(a, n) => Ok(sum(mul_nat(a.as_ref().clone(), n - 1), fundamental(a, k)?)),
        MulOmega(a) => Ok(mul_nat(a.as_ref().clone(), k)),
        OmegaComp(a) => match classify(a)? {
            // omega[P + 1] is isomorphic to omega[P] * w.
            TypeClass::One { pred } => Ok(mul_nat(omega_comp(pred), k)),
            TypeClass::Omega { .. } => Ok(omega_comp(fundamental(a, k)?)),
            _ => Err(not_limit()),
        },
        _ => Err(not_limit()),
    }
}

// ---------------------------------------------------------------------------
// Shifts and separation

/// `D^gamma`, the dilator `a -> D(gamma + a)`.
pub fn shift(d: &DilatorExpr, gamma: &Ordinal) -> Result<DilatorExpr> {
    if gamma.is_zero() {
        return Ok(d.clone());
    }
    Ok(match d {
        Zero | One | Const(_) => d.clone(),
        Id => sum(DilatorExpr::constant(gamma.clone()), Id),
        Sum(a, b) => sum(shift(a, gamma)?, shift(b, gamma)?),
        MulNat(a, n) => mul_nat(shift(a, gamma)?, *n),
        MulOmega(a) => mul_omega(shift(a, gamma)?),
        OmegaComp(a) => omega_comp(shift(a, gamma)?),
        OmegaHead(_) => {
            let (minus, plus) = sep_signed(d, gamma)?;
            sum(minus, plus)
        }
        Shift(a, g) => Shift(a.clone(), g.add(gamma)),
        Sep(..) | SepMinus(..) | SepPlus(..) => Shift(Box::new(d.clone()), gamma.clone()),
    })
}

/// True for connected atoms whose most important position is always their
/// largest position (checked by brute force in the test suites).
pub fn max_dominated(atom: &DilatorExpr) -> Result<bool> {
    match atom {
        Id => Ok(true),
        OmegaHead(a) => match classify(a)? {
            TypeClass::BigOmega { head, last } => Ok(head.as_const().is_some() && max_dominated(&last)?),
            _ => Ok(false),
        },
        _ => Ok(false),
    }
}

/// For a max-dominated atom the separation and the minus split coincide and
/// are constant; this returns that constant.
fn dominated_cut(atom: &DilatorExpr, gamma: &Ordinal) -> Result<Option<Ordinal>> {
    match atom {
        Id => Ok(Some(gamma.clone())),
        OmegaHead(a) => {
            if !max_dominated(atom)? {
                return Ok(None);
            }
            let TypeClass::BigOmega { head, last } = classify(a)? else { unreachable!() };
            let c = head.as_const().unwrap();
            let e = otp_symbolic(&last, gamma)?;
            let lower = Ordinal::omega_pow(c.clone());
            let upper = Ordinal::omega_pow(c.add(&e));
            Ok(Some(lower.left_sub(&upper).unwrap()))
        }
        _ => Ok(None),
    }
}

fn require_atom(atom: &DilatorExpr) -> Result<()> {
    match atom {
        Id | OmegaHead(_) => Ok(()),
        _ => Err(Error::NotConnected(format!("{atom} is not a connected atom"))),
    }
}

/// `{E}^gamma` for a connected atom `E`.
pub fn sep_atom(atom: &DilatorExpr, gamma: &Ordinal) -> Result<DilatorExpr> {
    require_atom(atom)?;
    Ok(match dominated_cut(atom, gamma)? {
        Some(c) => DilatorExpr::constant(c),
        None => Sep(Box::new(atom.clone()), gamma.clone()),
    })
}

/// `{D}^gamma`; `D` must have type Omega.
pub fn sep(d: &DilatorExpr, gamma: &Ordinal) -> Result<DilatorExpr> {
    classify(d)?.sep(gamma)
}

/// The minus part `D^gamma_-` of a connected atom.
pub fn sep_minus(atom: &DilatorExpr, gamma: &Ordinal) -> Result<DilatorExpr> {
    require_atom(atom)?;
    Ok(match dominated_cut(atom, gamma)? {
        Some(c) => DilatorExpr::constant(c),
        None => SepMinus(Box::new(atom.clone()), gamma.clone()),
    })
}

/// The plus part `D^gamma_+` of a connected atom; again a connected atom.
pub fn sep_plus(atom: &DilatorExpr, gamma: &Ordinal) -> Result<DilatorExpr> {
    require_atom(atom)?;
    Ok(match atom {
        Id => Id,
        OmegaHead(a) => OmegaHead(Box::new(shift(a, gamma)?)),
        _ => unreachable!(),
    })
}

/// `(D^gamma_-, D^gamma_+)` for a connected atom.
pub fn sep_signed(atom: &DilatorExpr, gamma: &Ordinal) -> Result<(DilatorExpr, DilatorExpr)> {
    Ok((sep_minus(atom, gamma)?, sep_plus(atom, gamma)?))
}

/// The iterated split: returns the minus parts along `gammas` and the final plus part.
pub fn sep_signed_iter(atom: &DilatorExpr, gammas: &[Ordinal]) -> Result<(Vec<DilatorExpr>, DilatorExpr)> {
    let mut plus = atom.clone();
    let mut minus = Vec::with_capacity(gammas.len());
    for g in gammas {
        let (m, p) = sep_signed(&plus, g)?;
        minus.push(m);
        plus = p;
    }
    Ok((minus, plus))
}

// ---------------------------------------------------------------------------
// Order types

/// The order type of `D(alpha)`.
pub fn otp_symbolic(d: &DilatorExpr, alpha: &Ordinal) -> Result<Ordinal> {
    Ok(match d {
        Zero => Ordinal::zero(),
        One => Ordinal::one(),
        Const(b) => b.clone(),
        Id => alpha.clone(),
        Sum(a, b) => otp_symbolic(a, alpha)?.add(&otp_symbolic(b, alpha)?),
        MulNat(a, n) => otp_symbolic(a, alpha)?.mul_nat(*n),
        MulOmega(a) => otp_symbolic(a, alpha)?.mul_omega(),
        OmegaComp(a) => Ordinal::omega_pow(otp_symbolic(a, alpha)?),
        OmegaHead(a) => {
            let TypeClass::BigOmega { head, .. } = classify(a)? else {
                return Err(Error::NotTypeOmega(format!("{a}")));
            };
            let lower = Ordinal::omega_pow(otp_symbolic(&head, alpha)?);
            let upper = Ordinal::omega_pow(otp_symbolic(a, alpha)?);
            lower.left_sub(&upper).expect("head part is an initial segment")
        }
        Shift(a, g) => otp_symbolic(a, &g.add(alpha))?,
        Sep(a, g) | SepMinus(a, g) => {
            return match dominated_cut(a, g)? {
                Some(c) => Ok(c),
                None => Err(Error::UnsupportedOtp(format!("no order-type rule for {d}"))),
            }
        }
        SepPlus(a, g) => otp_symbolic(&sep_plus(a, g)?, alpha)?,
    })
}

// ---------------------------------------------------------------------------
// Sum decomposition

/// A segment of the (possibly transfinite) list of connected components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Block {
    /// A single connected component.
    Atom { expr: DilatorExpr },
    /// `times` consecutive copies of `body`.
    Repeat { body: Vec<Block>, times: Ordinal },
    /// The components of a type-omega dilator, in the order its partial sums add them.
    Limit { expr: DilatorExpr },
}

/// Connected components of `D`, in order.
pub fn decompose(d: &DilatorExpr) -> Result<Vec<Block>> {
    let atom = |e: &DilatorExpr| vec![Block::Atom { expr: e.clone() }];
    Ok(match d {
        Zero => vec![],
        One | Id | OmegaHead(_) => atom(d),
        Const(a) => vec![Block::Repeat { body: atom(&One), times: a.clone() }],
        Sum(a, b) => {
            let mut v = decompose(a)?;
            v.extend(decompose(b)?);
            v
        }
        MulNat(a, n) => vec![Block::Repeat { body: decompose(a)?, times: Ordinal::nat(*n) }],
        MulOmega(a) => vec![Block::Repeat { body: decompose(a)?, times: Ordinal::omega() }],
        OmegaComp(a) => match classify(a)? {
            TypeClass::Zero => atom(&One),
            TypeClass::One { pred } => {
                vec![Block::Repeat { body: decompose(&omega_comp(pred))?, times: Ordinal::omega() }]
            }
            TypeClass::Omega { .. } => vec![Block::Limit { expr: d.clone() }],
            TypeClass::BigOmega { head, .. } => {
                let mut v = decompose(&omega_comp(head))?;
                v.push(Block::Atom { expr: OmegaHead(a.clone()) });
                v
            }
        },
        Shift(..) | Sep(..) | SepMinus(..) | SepPlus(..) => {
            return Err(Error::UnsupportedDecomposition(format!("{d} has no normal form")))
        }
    })
}

/// Number of iterates used when a limit has to be recognised from samples.
pub const LIMIT_SAMPLES: u64 = 6;

/// Order type of the component index order of `D`.
pub fn component_count(d: &DilatorExpr) -> Result<Ordinal> {
    Ok(match d {
        Zero => Ordinal::zero(),
        One | Id | OmegaHead(_) => Ordinal::one(),
        Const(a) => a.clone(),
        Sum(a, b) => component_count(a)?.add(&component_count(b)?),
        MulNat(a, n) => component_count(a)?.mul_nat(*n),
        MulOmega(a) => component_count(a)?.mul_omega(),
        OmegaComp(a) => match classify(a)? {
            TypeClass::Zero => Ordinal::one(),
            TypeClass::One { pred } => component_count(&omega_comp(pred))?.mul_omega(),
            TypeClass::Omega { .. } => {
                let seq = (1..=LIMIT_SAMPLES)
                    .map(|k| component_count(&fundamental(d, k)?))
                    .collect::<Result<Vec<_>>>()?;
                let pattern = detect_limit_pattern(&seq);
                if pattern.kind == LimitKind::Stationary {
                    return Err(Error::UnsupportedLimit(format!("component count of {d} did not grow")));
                }
                ord_sup_solve(&pattern)?
            }
            TypeClass::BigOmega { head, .. } => component_count(&omega_comp(head))?.succ(),
        },
        Shift(..) | Sep(..) | SepMinus(..) | SepPlus(..) => {
            return Err(Error::UnsupportedDecomposition(format!("{d} has no normal form")))
        }
    })
}

/// The component at index `iota` of `D`, as a connected expression.
pub fn component_at(d: &DilatorExpr, iota: &Ordinal) -> Result<DilatorExpr> {
    let out_of_range = || Error::UnsupportedDecomposition(format!("{d} has no component {iota}"));
    match d {
        One | Id | OmegaHead(_) if iota.is_zero() => Ok(d.clone()),
        Const(a) if iota < a => Ok(One),
        Sum(a, b) => {
            let ca = component_count(a)?;
            if iota < &ca {
                component_at(a, iota)
            } else {
                component_at(b, &ca.left_sub(iota).unwrap())
            }
        }
        MulNat(a, _) | MulOmega(a) => {
            let ca = component_count(a)?;
            if iota >= &component_count(d)? {
                return Err(out_of_range());
            }
            component_at(a, &remainder(&ca, iota))
        }
        OmegaComp(a) => match classify(a)? {
            TypeClass::Zero if iota.is_zero() => Ok(One),
            TypeClass::One { pred } => {
                let inner = omega_comp(pred);
                component_at(&inner, &remainder(&component_count(&inner)?, iota))
            }
            TypeClass::Omega { .. } => {
                for k in 1..=64 {
                    let f = fundamental(d, k)?;
                    if iota < &component_count(&f)? {
                        return component_at(&f, iota);
                    }
                }
                Err(out_of_range())
            }
            TypeClass::BigOmega { head, .. } => {
                let inner = omega_comp(head);
                let c = component_count(&inner)?;
                if iota < &c {
                    component_at(&inner, iota)
                } else if *iota == c {
                    Ok(OmegaHead(a.clone()))
                } else {
                    Err(out_of_range())
                }
            }
            _ => Err(out_of_range()),
        },
        _ => Err(out_of_range()),
    }
}

/// For `iota = c * i + r` with `r < c` (and `c > 0`), returns `r`.
pub fn remainder(c: &Ordinal, iota: &Ordinal) -> Ordinal {
    divmod(c, iota).1
}

/// Left division by a nonzero ordinal: `iota = c * q + r` with `r < c`.
/// The quotient is returned as an ordinal.
pub fn divmod(c: &Ordinal, iota: &Ordinal) -> (Ordinal, Ordinal) {
    assert!(!c.is_zero(), "division by zero");
    if iota < c {
        return (Ordinal::zero(), iota.clone());
    }
    let lead = c.leading_exponent().unwrap().clone();
    // Terms of iota with exponent above the lead of c contribute w^(e - lead) to q.
    let mut q = Ordinal::zero();
    let mut rest = iota.clone();
    loop {
        if rest < *c {
            return (q, rest);
        }
        let (e, k) = rest.terms()[0].clone();
        let step = if e > lead {
            let diff = lead.left_sub(&e).unwrap();
            Ordinal::term(diff, k)
        } else {
            // Same leading exponent: the quotient gains a finite amount.
            let ck = c.terms()[0].1;
            let n = (k / ck).max(1);
            let n = if c.mul_nat(n) > rest { n - 1 } else { n };
            Ordinal::nat(n.max(1))
        };
        let consumed = c.mul(&step);
        match consumed.left_sub(&rest) {
            Some(r) => {
                q = q.add(&step);
                rest = r;
            }
            None => return (q, rest),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::dil_expr;
    use crate::ordinal::ord;

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&Zero).unwrap(), TypeClass::Zero);
        assert_eq!(classify(&dil_expr("Id + 1")).unwrap(), TypeClass::One { pred: Id });
        let c = classify(&dil_expr("1*w")).unwrap();
        assert_eq!(c.fund_seq(3).unwrap(), DilatorExpr::nat(3));
        assert!(matches!(classify(&Id).unwrap(), TypeClass::BigOmega { .. }));
        assert_eq!(classify(&dil_expr("omega[Id]")).unwrap().name(), "Omega");
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift(&Zero, &ord("w")).unwrap(), Zero);
        assert_eq!(shift(&Const(ord("w")), &ord("5")).unwrap(), Const(ord("w")));
        assert_eq!(shift(&Id, &ord("w")).unwrap(), dil_expr("Const(w) + Id"));
    }

    #[test]
    fn sep_examples() {
        assert_eq!(sep(&Id, &ord("w")).unwrap(), Const(ord("w")));
        assert_eq!(sep(&dil_expr("Id + Id"), &ord("w")).unwrap(), dil_expr("Id + Const(w)"));
        assert_eq!(sep(&dil_expr("omega[Id]"), &Ordinal::zero()).unwrap(), One);
        // 1 + w^w folds to w^w.
        assert_eq!(sep(&dil_expr("omega[Id]"), &ord("w")).unwrap(), Const(ord("w^w")));
    }

    #[test]
    fn signed_split_examples() {
        assert_eq!(sep_signed(&Id, &Ordinal::zero()).unwrap(), (Zero, Id));
        assert_eq!(sep_signed(&Id, &ord("w")).unwrap(), (Const(ord("w")), Id));
        let head = dil_expr("head[Id]");
        let (m, p) = sep_signed(&head, &Ordinal::one()).unwrap();
        assert_eq!(m, Const(ord("w")));
        assert_eq!(p, dil_expr("head[1 + Id]"));
    }

    #[test]
    fn otp_examples() {
        assert_eq!(otp_symbolic(&dil_expr("Id + 1"), &ord("w")).unwrap(), ord("w+1"));
        assert_eq!(otp_symbolic(&dil_expr("omega[Id]"), &ord("w")).unwrap(), ord("w^w"));
        assert_eq!(otp_symbolic(&dil_expr("Id*w"), &ord("3")).unwrap(), ord("w"));
    }

    #[test]
    fn decomposition_examples() {
        assert!(decompose(&Zero).unwrap().is_empty());
        assert_eq!(
            decompose(&dil_expr("omega[Id]")).unwrap(),
            vec![Block::Atom { expr: One }, Block::Atom { expr: dil_expr("head[Id]") }]
        );
        assert_eq!(component_count(&dil_expr("omega[Id+1]")).unwrap(), ord("w"));
        assert_eq!(component_count(&dil_expr("omega[Id*w]")).unwrap(), ord("w"));
        assert_eq!(component_at(&dil_expr("Id*w"), &ord("5")).unwrap(), Id);
    }

    #[test]
    fn division() {
        assert_eq!(divmod(&ord("w"), &ord("w*3+2")), (ord("3"), ord("2")));
        assert_eq!(divmod(&ord("2"), &ord("7")), (ord("3"), ord("1")));
        assert_eq!(divmod(&ord("w+1"), &ord("w^2+5")), (ord("w"), ord("5")));
        assert_eq!(divmod(&ord("3"), &ord("w+2")), (ord("w"), ord("2")));
    }
}
