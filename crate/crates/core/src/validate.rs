//! Semantic checks of the symbolic operations.
//!
//! Elements over an ordinal `alpha` (all positions `Left(x)` with `x < alpha`)
//! are ranked by their position in `D(alpha)`. [`rank`] and [`unrank`] are
//! computed from the shape of the expression alone, so two expressions that
//! should denote isomorphic dilators can be compared element by element: the
//! rank of an element of one side is unranked on the other side and the two
//! supports must agree.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::element::{
    self, compare_elements, embeddings, enum_elements, finite_order, important_index, is_connected_atom, normal_form,
    ordinal_ambient, place, trace_terms, Budget, Elem, Element, Pt,
};
use crate::error::{Error, Result};
use crate::expr::{DilatorExpr, DilatorExpr::*};
use crate::jfunctor::rank as j_rank;
use crate::ordinal::Ordinal;
use crate::symbolic::{
    classify, decompose, divmod, fundamental, max_dominated, sep, sep_atom, sep_signed, shift, otp_symbolic, Block,
    TypeClass,
};

fn ocmp(a: &u32, b: &u32) -> Ordering {
    a.cmp(b)
}

fn bad(d: &DilatorExpr, e: &Element) -> Error {
    Error::MalformedElement(format!("{e} is not an element of {d} over an ordinal"))
}

fn omega_sum(exps: impl IntoIterator<Item = Ordinal>) -> Ordinal {
    exps.into_iter().fold(Ordinal::zero(), |acc, e| acc.add(&Ordinal::omega_pow(e)))
}

/// For a max-dominated atom, the order type of the part below `gamma`.
fn minus_otp(atom: &DilatorExpr, gamma: &Ordinal) -> Result<Ordinal> {
    if !max_dominated(atom)? {
        return Err(Error::UnsupportedSeparation(format!("{atom} is not max-dominated")));
    }
    otp_symbolic(atom, gamma)
}

/// The position of `e` in `D(alpha)`.
pub fn rank(d: &DilatorExpr, e: &Element, alpha: &Ordinal) -> Result<Ordinal> {
    use Elem as E;
    Ok(match (d, e) {
        (One | Const(_), E::Const(b)) => b.clone(),
        (Id, E::Id(Pt::Left(x))) => x.clone(),
        (Sum(a, _), E::Inl(x)) => rank(a, x, alpha)?,
        (Sum(a, b), E::Inr(y)) => otp_symbolic(a, alpha)?.add(&rank(b, y, alpha)?),
        (MulNat(a, _) | MulOmega(a), E::Copy(k, x)) => otp_symbolic(a, alpha)?.mul_nat(*k).add(&rank(a, x, alpha)?),
        (OmegaComp(a), E::Cnf(xs)) => omega_sum(xs.iter().map(|x| rank(a, x, alpha)).collect::<Result<Vec<_>>>()?),
        (OmegaHead(a), E::Cnf(xs)) => {
            let TypeClass::BigOmega { head, .. } = classify(a)? else { return Err(bad(d, e)) };
            let total = omega_sum(xs.iter().map(|x| rank(a, x, alpha)).collect::<Result<Vec<_>>>()?);
            let lower = Ordinal::omega_pow(otp_symbolic(&head, alpha)?);
            lower.left_sub(&total).ok_or_else(|| bad(d, e))?
        }
        (Shift(a, g), E::Layer(x)) => rank(a, x, &g.add(alpha))?,
        (Sep(a, g) | SepMinus(a, g), E::Layer(x)) => {
            minus_otp(a, g)?;
            if element::support(a, x, &ocmp)?.iter().any(|p| !matches!(p, Pt::Left(y) if y < g)) {
                return Err(bad(d, e));
            }
            rank(a, x, g)?
        }
        (SepPlus(a, g), E::Layer(x)) => {
            let m = minus_otp(a, g)?;
            m.left_sub(&rank(a, x, &g.add(alpha))?).ok_or_else(|| bad(d, e))?
        }
        _ => return Err(bad(d, e)),
    })
}

/// The element of `D(alpha)` at position `r`.
pub fn unrank(d: &DilatorExpr, r: &Ordinal, alpha: &Ordinal) -> Result<Element> {
    use Elem as E;
    let too_big = || Error::MalformedElement(format!("{r} is not below the order type of {d}({alpha})"));
    let bx = Box::new;
    Ok(match d {
        Zero => return Err(too_big()),
        One if r.is_zero() => E::Const(Ordinal::zero()),
        Const(b) if r < b => E::Const(r.clone()),
        Id if r < alpha => E::Id(Pt::Left(r.clone())),
        Sum(a, b) => {
            let p = otp_symbolic(a, alpha)?;
            match p.left_sub(r) {
                _ if r < &p => E::Inl(bx(unrank(a, r, alpha)?)),
                Some(s) => E::Inr(bx(unrank(b, &s, alpha)?)),
                None => return Err(too_big()),
            }
        }
        MulNat(a, _) | MulOmega(a) => {
            let p = otp_symbolic(a, alpha)?;
            if p.is_zero() || r >= &otp_symbolic(d, alpha)? {
                return Err(too_big());
            }
            let (q, s) = divmod(&p, r);
            let k = q.as_nat().ok_or_else(too_big)?;
            E::Copy(k, bx(unrank(a, &s, alpha)?))
        }
        OmegaComp(a) => E::Cnf(cnf_elements(a, r, alpha)?),
        OmegaHead(a) => {
            let TypeClass::BigOmega { head, .. } = classify(a)? else { return Err(too_big()) };
            let lower = Ordinal::omega_pow(otp_symbolic(&head, alpha)?);
            E::Cnf(cnf_elements(a, &lower.add(r), alpha)?)
        }
        Shift(a, g) => E::Layer(bx(unrank(a, r, &g.add(alpha))?)),
        Sep(a, g) | SepMinus(a, g) => {
            if r >= &minus_otp(a, g)? {
                return Err(too_big());
            }
            E::Layer(bx(unrank(a, r, g)?))
        }
        SepPlus(a, g) => {
            let m = minus_otp(a, g)?;
            E::Layer(bx(unrank(a, &m.add(r), &g.add(alpha))?))
        }
        _ => return Err(too_big()),
    })
}

fn cnf_elements(a: &DilatorExpr, r: &Ordinal, alpha: &Ordinal) -> Result<Vec<Element>> {
    let mut out = Vec::new();
    for (e, c) in r.terms() {
        let x = unrank(a, e, alpha)?;
        for _ in 0..*c {
            out.push(x.clone());
        }
    }
    Ok(out)
}

/// Outcome of a single semantic check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "camelCase")]
pub enum Check {
    Verified { checked: usize },
    Violation { reason: String },
}

impl Check {
    pub fn ok(&self) -> bool {
        matches!(self, Check::Verified { .. })
    }

    fn and(self, other: Check) -> Check {
        match (self, other) {
            (Check::Verified { checked: a }, Check::Verified { checked: b }) => Check::Verified { checked: a + b },
            (v @ Check::Violation { .. }, _) | (_, v) => v,
        }
    }
}

macro_rules! violation {
    ($($t:tt)*) => {
        return Ok(Check::Violation { reason: format!($($t)*) })
    };
}

/// Ordinal samples used by the isomorphism checks.
pub fn alpha_samples() -> Vec<Ordinal> {
    ["0", "1", "2", "3", "w", "w+1", "w*2", "w^2"].iter().map(|s| s.parse().unwrap()).collect()
}

/// Checks that `d1` and `d2` agree on the first `k` elements of `d1` over
/// `alpha`: ranks strictly increase along the element order, each rank lies
/// below the order type of `d2`, and unranking on either side gives an element
/// with the same support. When the window is complete the element count must
/// equal the order type.
pub fn iso_check(d1: &DilatorExpr, d2: &DilatorExpr, alpha: &Ordinal, k: usize, budget: &Budget) -> Result<Check> {
    let elems = enum_elements(d1, &ordinal_ambient(alpha, budget), budget, &ocmp)?;
    let otp2 = otp_symbolic(d2, alpha)?;
    let otp1 = otp_symbolic(d1, alpha)?;
    if otp1 != otp2 {
        violation!("{d1} and {d2} have order types {otp1} and {otp2} at {alpha}");
    }
    let mut prev: Option<Ordinal> = None;
    let mut checked = 0;
    for e in elems.iter().take(k) {
        let r = rank(d1, e, alpha)?;
        if r >= otp2 {
            violation!("{e} in {d1}({alpha}) has rank {r}, beyond {otp2}");
        }
        if prev.as_ref().is_some_and(|p| *p >= r) {
            violation!("ranks do not increase at {e} in {d1}({alpha})");
        }
        if unrank(d1, &r, alpha)? != *e {
            violation!("{e} in {d1}({alpha}) is not recovered from its rank {r}");
        }
        let e2 = unrank(d2, &r, alpha)?;
        if rank(d2, &e2, alpha)? != r {
            violation!("{e2} in {d2}({alpha}) does not have rank {r}");
        }
        let (s1, s2) = (element::support(d1, e, &ocmp)?, element::support(d2, &e2, &ocmp)?);
        if s1 != s2 {
            violation!("{e} and {e2} have different supports at rank {r}");
        }
        prev = Some(r);
        checked += 1;
    }
    if let Some(n) = otp1.as_nat() {
        if complete_window(d1, alpha, budget) && elems.len() as u64 != n {
            violation!("{d1}({alpha}) enumerates {} elements, order type {n}", elems.len());
        }
    }
    Ok(Check::Verified { checked })
}

/// True when enumeration over `alpha` lists every element: all the ordinals
/// that get sampled (alpha, constants, layer parameters) are within the width.
fn complete_window(d: &DilatorExpr, alpha: &Ordinal, budget: &Budget) -> bool {
    let small = |o: &Ordinal| o.as_nat().is_some_and(|n| n <= budget.width);
    small(alpha)
        && match d {
            Zero | One | Id => true,
            Const(c) => small(c),
            Sum(a, b) => complete_window(a, alpha, budget) && complete_window(b, alpha, budget),
            MulNat(a, _) => complete_window(a, alpha, budget),
            MulOmega(_) | OmegaComp(_) | OmegaHead(_) => false,
            Shift(a, g) | Sep(a, g) | SepMinus(a, g) | SepPlus(a, g) => complete_window(a, &g.add(alpha), budget),
        }
}

/// Runs [`iso_check`] over every alpha sample; expressions whose order type
/// has no rule at some sample are skipped there.
pub fn iso_all(d1: &DilatorExpr, d2: &DilatorExpr, k: usize, budget: &Budget) -> Result<Check> {
    let mut acc = Check::Verified { checked: 0 };
    for alpha in alpha_samples() {
        acc = acc.and(iso_check(d1, d2, &alpha, k, budget)?);
        if !acc.ok() {
            break;
        }
    }
    Ok(acc)
}

/// Element counts over finite orders agree with the order type.
pub fn count_check(d: &DilatorExpr, max_n: u64) -> Result<Check> {
    let budget = Budget { width: max_n.max(6), max_len: max_n as usize + 1, cap: 200_000 };
    let mut checked = 0;
    for n in 0..=max_n {
        let alpha = Ordinal::nat(n);
        let otp = otp_symbolic(d, &alpha)?;
        let Some(expected) = otp.as_nat() else { continue };
        let found = enum_elements(d, &ordinal_ambient(&alpha, &budget), &budget, &ocmp)?.len() as u64;
        if found != expected {
            violation!("{d}({n}) has {found} elements but order type {otp}");
        }
        checked += 1;
    }
    Ok(Check::Verified { checked })
}

/// The raw `Shift(D, gamma)` against the normalized shift.
pub fn shift_check(d: &DilatorExpr, gamma: &Ordinal, k: usize, budget: &Budget) -> Result<Check> {
    iso_all(&Shift(Box::new(d.clone()), gamma.clone()), &shift(d, gamma)?, k, budget)
}

/// The raw separation of a connected atom against [`sep_atom`]: the filtered
/// elements are exactly the elements built from codes below `gamma`.
pub fn sep_check(atom: &DilatorExpr, gamma: &Ordinal, k: usize, budget: &Budget) -> Result<Check> {
    if !max_dominated(atom)? {
        return Err(Error::UnsupportedSeparation(format!("{atom} is not max-dominated")));
    }
    let raw = Sep(Box::new(atom.clone()), gamma.clone());
    let codes = enum_elements(atom, &ordinal_ambient(gamma, budget), budget, &ocmp)?;
    for alpha in alpha_samples() {
        let kept = enum_elements(&raw, &ordinal_ambient(&alpha, budget), budget, &ocmp)?;
        let inner: Vec<&Element> = kept
            .iter()
            .map(|e| match e {
                Elem::Layer(x) => Ok(x.as_ref()),
                _ => Err(bad(&raw, e)),
            })
            .collect::<Result<_>>()?;
        if inner.len() != codes.len() || inner.iter().zip(&codes).any(|(x, y)| *x != y) {
            violation!("separation of {atom} at {gamma} over {alpha} keeps {} elements, expected {}", inner.len(), codes.len());
        }
    }
    Ok(Check::Verified { checked: codes.len() }.and(iso_all(&raw, &sep_atom(atom, gamma)?, k, budget)?))
}

/// `Shift(atom, gamma)` against `minus + plus`, the minus filter against the
/// rank cut, and connectedness of the plus part.
pub fn sep_signed_check(atom: &DilatorExpr, gamma: &Ordinal, k: usize, budget: &Budget) -> Result<Check> {
    let (minus, plus) = sep_signed(atom, gamma)?;
    let shifted = Shift(Box::new(atom.clone()), gamma.clone());
    let raw_minus = SepMinus(Box::new(atom.clone()), gamma.clone());
    let cut = otp_symbolic(&minus, &Ordinal::zero())?;
    let mut checked = 0;
    for alpha in alpha_samples() {
        let ambient = ordinal_ambient(&alpha, budget);
        let in_minus = enum_elements(&raw_minus, &ambient, budget, &ocmp)?;
        for e in enum_elements(&shifted, &ambient, budget, &ocmp)?.iter().take(k) {
            let below = rank(&shifted, e, &alpha)? < cut;
            if below != in_minus.contains(e) {
                violation!("{e} in {shifted}({alpha}) is on the wrong side of the minus filter");
            }
            checked += 1;
        }
    }
    if !is_connected_atom(&plus, 3, budget)? {
        violation!("plus part {plus} of {atom} at {gamma} is not connected");
    }
    let split = Sum(Box::new(minus), Box::new(plus));
    Ok(Check::Verified { checked }.and(iso_all(&shifted, &split, k, budget)?))
}

/// Rebuilds a raw expression from blocks, without normalizing.
pub fn reassemble(blocks: &[Block]) -> Result<DilatorExpr> {
    let parts = blocks
        .iter()
        .map(|b| {
            Ok(match b {
                Block::Atom { expr } | Block::Limit { expr } => expr.clone(),
                Block::Repeat { body, times } if matches!(body[..], [Block::Atom { expr: One }]) => Const(times.clone()),
                Block::Repeat { body, times } => {
                    let inner = reassemble(body)?;
                    match times.as_nat() {
                        Some(n) => MulNat(Box::new(inner), n),
                        None if *times == Ordinal::omega() => MulOmega(Box::new(inner)),
                        None => return Err(Error::UnsupportedDecomposition(format!("repeat {times} of a non-unit body"))),
                    }
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().reduce(|a, b| Sum(Box::new(a), Box::new(b))).unwrap_or(Zero))
}

fn atoms<'a>(blocks: &'a [Block], out: &mut Vec<&'a DilatorExpr>) {
    for b in blocks {
        match b {
            Block::Atom { expr } => out.push(expr),
            Block::Repeat { body, .. } => atoms(body, out),
            Block::Limit { .. } => {}
        }
    }
}

/// The decomposition reassembles to an isomorphic dilator, its atoms are
/// connected, and the fundamental sequence of each limit block embeds as an
/// initial segment.
pub fn decompose_check(d: &DilatorExpr, k: usize, budget: &Budget) -> Result<Check> {
    let blocks = decompose(d)?;
    let mut acc = iso_all(d, &reassemble(&blocks)?, k, budget)?;
    let mut found = Vec::new();
    atoms(&blocks, &mut found);
    for a in found {
        if *a != One && !is_connected_atom(a, 3, budget)? {
            violation!("component {a} of {d} is not connected");
        }
    }
    for b in &blocks {
        if let Block::Limit { expr } = b {
            for n in 1..=3 {
                acc = acc.and(initial_segment_check(&fundamental(expr, n)?, expr, k, budget)?);
            }
        }
    }
    Ok(acc)
}

/// `small` maps onto an initial segment of `big` with the same ranks.
pub fn initial_segment_check(small: &DilatorExpr, big: &DilatorExpr, k: usize, budget: &Budget) -> Result<Check> {
    let mut checked = 0;
    for alpha in alpha_samples() {
        for e in enum_elements(small, &ordinal_ambient(&alpha, budget), budget, &ocmp)?.iter().take(k) {
            let r = rank(small, e, &alpha)?;
            let e2 = unrank(big, &r, &alpha)?;
            if element::support(small, e, &ocmp)? != element::support(big, &e2, &ocmp)? {
                violation!("{e} of {small} and {e2} of {big} differ in support");
            }
            checked += 1;
        }
        if otp_symbolic(small, &alpha)? > otp_symbolic(big, &alpha)? {
            violation!("{small}({alpha}) is longer than {big}({alpha})");
        }
    }
    Ok(Check::Verified { checked })
}

// ---------------------------------------------------------------------------
// Order sanity

/// Trichotomy and transitivity of [`compare_elements`] on the elements of `d`
/// over a finite order.
pub fn element_order_check(d: &DilatorExpr, n: u32, budget: &Budget) -> Result<Check> {
    let elems = enum_elements(d, &finite_order(n), budget, &ocmp)?;
    let m = elems.len().min(40);
    for a in &elems[..m] {
        for b in &elems[..m] {
            let ab = compare_elements(a, b, &ocmp)?;
            if ab != compare_elements(b, a, &ocmp)?.reverse() || (ab == Ordering::Equal) != (a == b) {
                violation!("trichotomy fails for {a} and {b} in {d}");
            }
            for c in &elems[..m] {
                if ab == Ordering::Less
                    && compare_elements(b, c, &ocmp)? == Ordering::Less
                    && compare_elements(a, c, &ocmp)? != Ordering::Less
                {
                    violation!("transitivity fails for {a} < {b} < {c} in {d}");
                }
            }
        }
    }
    Ok(Check::Verified { checked: m * m })
}

/// For random embeddings `f: n -> m`, `D(f)` is strictly monotone,
/// `supp(D(f)(e)) = f[supp(e)]`, and every element is its trace term placed on
/// its support.
pub fn naturality_check(d: &DilatorExpr, n: u32, m: u32, samples: usize, seed: u64, budget: &Budget) -> Result<Check> {
    let elems = enum_elements(d, &finite_order(n), budget, &ocmp)?;
    let embs = embeddings(n as usize, m as usize);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for e in &elems {
        let (t, supp) = normal_form(d, e, &ocmp)?;
        if place(d, &t, &supp)? != *e {
            violation!("{e} in {d} is not its trace term on its support");
        }
    }
    for _ in 0..samples {
        let f = &embs[rng.gen_range(0..embs.len())];
        let apply = |p: &Pt<u32>| -> Result<Pt<u32>> {
            match p {
                Pt::Right(i) => Ok(Pt::Right(f[*i as usize])),
                Pt::Left(_) => Err(Error::MalformedElement("ordinal position in a finite order".into())),
            }
        };
        let i = rng.gen_range(0..elems.len().max(1));
        let j = rng.gen_range(0..elems.len().max(1));
        if elems.is_empty() {
            break;
        }
        let (x, y) = (&elems[i], &elems[j]);
        let (fx, fy) = (element::fmap(d, x, &apply)?, element::fmap(d, y, &apply)?);
        if compare_elements(x, y, &ocmp)? != compare_elements(&fx, &fy, &ocmp)? {
            violation!("D(f) does not preserve the order of {x} and {y} in {d}");
        }
        let mapped: Vec<Pt<u32>> = element::support(d, x, &ocmp)?.iter().map(apply).collect::<Result<_>>()?;
        if element::support(d, &fx, &ocmp)? != mapped {
            violation!("support of {fx} is not the image of the support of {x} in {d}");
        }
    }
    Ok(Check::Verified { checked: elems.len() + samples })
}

/// Every trace term of a connected atom up to `max_arity` has a unique important index.
pub fn important_index_check(atom: &DilatorExpr, max_arity: u32, budget: &Budget) -> Result<Check> {
    let terms = trace_terms(atom, max_arity, budget)?;
    for t in &terms {
        if let Err(e) = important_index(atom, t) {
            violation!("{e}");
        }
    }
    Ok(Check::Verified { checked: terms.len() })
}

/// Rank decreases from `D` to its predecessor or to its separation, at several `eta`.
pub fn sep_pred_rank_check(d: &DilatorExpr, gammas: &[Ordinal]) -> Result<Check> {
    let etas: Vec<Ordinal> = ["1", "w", "w^2"].iter().map(|s| s.parse().unwrap()).collect();
    let smaller: Vec<DilatorExpr> = match classify(d)? {
        TypeClass::Zero => vec![],
        TypeClass::One { pred } => vec![pred],
        TypeClass::Omega { .. } => (1..=3).map(|k| fundamental(d, k)).collect::<Result<_>>()?,
        TypeClass::BigOmega { .. } => gammas.iter().map(|g| sep(d, g)).collect::<Result<_>>()?,
    };
    let mut checked = 0;
    for eta in &etas {
        let top = j_rank(d, eta)?;
        for s in &smaller {
            let r = j_rank(s, eta)?;
            if r >= top {
                violation!("rank of {s} ({r}) is not below rank of {d} ({top}) at eta {eta}");
            }
            checked += 1;
        }
    }
    Ok(Check::Verified { checked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::dil_expr;
    use crate::ordinal::ord;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn rank_roundtrip_on_omega_of_id() {
        let d = dil_expr("omega[Id]");
        let e = unrank(&d, &ord("w^2*2+w+3"), &ord("w")).unwrap();
        assert_eq!(rank(&d, &e, &ord("w")).unwrap(), ord("w^2*2+w+3"));
    }

    #[test]
    fn shift_of_id() {
        assert!(shift_check(&Id, &ord("w"), 50, &b()).unwrap().ok());
    }

    #[test]
    fn reassembly_of_const() {
        let d = dil_expr("Const(3) + Id");
        assert_eq!(reassemble(&decompose(&d).unwrap()).unwrap().to_string(), d.to_string());
    }

    #[test]
    fn counts() {
        assert_eq!(count_check(&dil_expr("Id*2 + 1"), 4).unwrap(), Check::Verified { checked: 5 });
    }
}
