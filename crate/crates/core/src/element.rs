//! Elements of coded dilators over finite orders.
//!
//! An element of `D(X)` is a tree mirroring the constructor structure of `D`,
//! with positions drawn from `X`. Positions are either ordinals (`Left`) or
//! points of an abstract order (`Right`); every `Left` sits below every
//! `Right`. Inside `shift`/`sep` nodes the ambient order becomes `gamma + X`:
//! inner `Left(y)` with `y < gamma` are codes, an outer `Left(b)` becomes
//! `Left(gamma + b)` and `Right` points are unchanged.
//!
//! Comparison is structural: elements carry their constructor tags, so two
//! elements of the same expression can be compared without the expression.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::expr::DilatorExpr::{self, *};
use crate::ordinal::{sample_below, Ordinal};
use crate::symbolic::{classify, TypeClass};

/// A position of an ambient order `gamma + X`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pt<R> {
    Left(Ordinal),
    Right(R),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem<R> {
    /// Index below the value of a constant; the unit `1` has the single element `Const(0)`.
    Const(Ordinal),
    Id(Pt<R>),
    Inl(Box<Elem<R>>),
    Inr(Box<Elem<R>>),
    /// Copy index and element of the base of `D*n` or `D*w`.
    Copy(u64, Box<Elem<R>>),
    /// Non-increasing list of exponents `w^e0 + w^e1 + ...` for `omega[..]` and `head[..]`.
    Cnf(Vec<Elem<R>>),
    /// Element of the base of a shift or separation node, over `gamma + X`.
    Layer(Box<Elem<R>>),
}

/// Positions of a finite order `{0, ..., n-1}`, possibly preceded by ordinals.
pub type Point = Pt<u32>;
pub type Element = Elem<u32>;

/// A trace term: the shape of an element placed on `0, ..., arity-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TraceTerm {
    pub shape: Element,
    pub arity: usize,
}

impl<R: fmt::Display> fmt::Display for Pt<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pt::Left(a) => write!(f, "{a}"),
            Pt::Right(r) => write!(f, "x{r}"),
        }
    }
}

impl<R: fmt::Display> fmt::Display for Elem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Const(b) => write!(f, "#{b}"),
            Elem::Id(p) => write!(f, "id({p})"),
            Elem::Inl(e) => write!(f, "L.{e}"),
            Elem::Inr(e) => write!(f, "R.{e}"),
            Elem::Copy(k, e) => write!(f, "{k}:{e}"),
            Elem::Cnf(list) if list.is_empty() => write!(f, "w{{}}"),
            Elem::Cnf(list) => {
                write!(f, "w{{")?;
                for (i, e) in list.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, "}}")
            }
            Elem::Layer(e) => write!(f, "[{e}]"),
        }
    }
}

impl<R: fmt::Display> fmt::Debug for Elem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: fmt::Display> fmt::Debug for Pt<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: fmt::Display> Serialize for Elem<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn malformed<R: fmt::Display>(d: &DilatorExpr, e: &Elem<R>) -> Error {
    Error::MalformedElement(format!("{e} is not an element of {d}"))
}

// ---------------------------------------------------------------------------
// Comparison

pub fn cmp_pt<R>(a: &Pt<R>, b: &Pt<R>, cmp: &dyn Fn(&R, &R) -> Ordering) -> Ordering {
    match (a, b) {
        (Pt::Left(x), Pt::Left(y)) => x.cmp(y),
        (Pt::Left(_), Pt::Right(_)) => Ordering::Less,
        (Pt::Right(_), Pt::Left(_)) => Ordering::Greater,
        (Pt::Right(x), Pt::Right(y)) => cmp(x, y),
    }
}

/// Compares two elements of the same dilator; `cmp` orders the `Right` points.
pub fn compare_elements<R>(a: &Elem<R>, b: &Elem<R>, cmp: &dyn Fn(&R, &R) -> Ordering) -> Result<Ordering> {
    use Elem as E;
    Ok(match (a, b) {
        (E::Const(x), E::Const(y)) => x.cmp(y),
        (E::Id(p), E::Id(q)) => cmp_pt(p, q, cmp),
        (E::Inl(_), E::Inr(_)) => Ordering::Less,
        (E::Inr(_), E::Inl(_)) => Ordering::Greater,
        (E::Inl(x), E::Inl(y)) | (E::Inr(x), E::Inr(y)) | (E::Layer(x), E::Layer(y)) => {
            compare_elements(x, y, cmp)?
        }
        (E::Copy(i, x), E::Copy(j, y)) => match i.cmp(j) {
            Ordering::Equal => compare_elements(x, y, cmp)?,
            o => o,
        },
        (E::Cnf(xs), E::Cnf(ys)) => {
            for (x, y) in xs.iter().zip(ys) {
                match compare_elements(x, y, cmp)? {
                    Ordering::Equal => {}
                    o => return Ok(o),
                }
            }
            xs.len().cmp(&ys.len())
        }
        _ => return Err(Error::MalformedElement("elements of different shapes".into())),
    })
}

// ---------------------------------------------------------------------------
// Functorial action and supports

fn lift<S>(gamma: &Ordinal, p: Pt<S>) -> Pt<S> {
    match p {
        Pt::Left(b) => Pt::Left(gamma.add(&b)),
        r => r,
    }
}

/// `D(f)(e)`, where `f` is applied to the support of `e`.
pub fn fmap<R: Clone + fmt::Display, S>(
    d: &DilatorExpr,
    e: &Elem<R>,
    f: &dyn Fn(&Pt<R>) -> Result<Pt<S>>,
) -> Result<Elem<S>> {
    use Elem as E;
    Ok(match (d, e) {
        (Zero, _) => return Err(malformed(d, e)),
        (One | Const(_), E::Const(b)) => E::Const(b.clone()),
        (Id, E::Id(p)) => E::Id(f(p)?),
        (Sum(a, _), E::Inl(x)) => E::Inl(Box::new(fmap(a, x, f)?)),
        (Sum(_, b), E::Inr(y)) => E::Inr(Box::new(fmap(b, y, f)?)),
        (MulNat(a, _) | MulOmega(a), E::Copy(k, x)) => E::Copy(*k, Box::new(fmap(a, x, f)?)),
        (OmegaComp(a) | OmegaHead(a), E::Cnf(xs)) => {
            E::Cnf(xs.iter().map(|x| fmap(a, x, f)).collect::<Result<_>>()?)
        }
        (Shift(a, g) | Sep(a, g) | SepMinus(a, g) | SepPlus(a, g), E::Layer(x)) => {
            let inner = |p: &Pt<R>| -> Result<Pt<S>> {
                match p {
                    Pt::Left(y) if y < g => Ok(Pt::Left(y.clone())),
                    Pt::Left(y) => Ok(lift(g, f(&Pt::Left(g.left_sub(y).unwrap()))?)),
                    Pt::Right(_) => Ok(lift(g, f(p)?)),
                }
            };
            E::Layer(Box::new(fmap(a, x, &inner)?))
        }
        _ => return Err(malformed(d, e)),
    })
}

fn collect_support<R: Clone + fmt::Display>(d: &DilatorExpr, e: &Elem<R>, out: &mut Vec<Pt<R>>) -> Result<()> {
    use Elem as E;
    match (d, e) {
        (One | Const(_), E::Const(_)) => {}
        (Id, E::Id(p)) => out.push(p.clone()),
        (Sum(a, _), E::Inl(x)) => collect_support(a, x, out)?,
        (Sum(_, b), E::Inr(y)) => collect_support(b, y, out)?,
        (MulNat(a, _) | MulOmega(a), E::Copy(_, x)) => collect_support(a, x, out)?,
        (OmegaComp(a) | OmegaHead(a), E::Cnf(xs)) => {
            for x in xs {
                collect_support(a, x, out)?;
            }
        }
        (Shift(a, g) | Sep(a, g) | SepMinus(a, g) | SepPlus(a, g), E::Layer(x)) => {
            let mut inner = Vec::new();
            collect_support(a, x, &mut inner)?;
            for p in inner {
                match p {
                    Pt::Left(y) if &y < g => {}
                    Pt::Left(y) => out.push(Pt::Left(g.left_sub(&y).unwrap())),
                    r => out.push(r),
                }
            }
        }
        _ => return Err(malformed(d, e)),
    }
    Ok(())
}

/// The support of `e`: the positions of the ambient order it uses, ascending.
pub fn support<R: Clone + fmt::Display>(
    d: &DilatorExpr,
    e: &Elem<R>,
    cmp: &dyn Fn(&R, &R) -> Ordering,
) -> Result<Vec<Pt<R>>> {
    let mut out = Vec::new();
    collect_support(d, e, &mut out)?;
    out.sort_by(|a, b| cmp_pt(a, b, cmp));
    out.dedup_by(|a, b| cmp_pt(a, b, cmp) == Ordering::Equal);
    Ok(out)
}

/// Splits `e` into its trace term and its support.
pub fn normal_form<R: Clone + fmt::Display>(
    d: &DilatorExpr,
    e: &Elem<R>,
    cmp: &dyn Fn(&R, &R) -> Ordering,
) -> Result<(TraceTerm, Vec<Pt<R>>)> {
    let supp = support(d, e, cmp)?;
    let index = |p: &Pt<R>| -> Result<Point> {
        supp.iter()
            .position(|q| cmp_pt(p, q, cmp) == Ordering::Equal)
            .map(|i| Pt::Right(i as u32))
            .ok_or_else(|| Error::MalformedElement(format!("{p} is outside the support")))
    };
    let shape = fmap(d, e, &index)?;
    Ok((TraceTerm { shape, arity: supp.len() }, supp))
}

/// Places a trace term on the given positions, which must be ascending.
pub fn place<R: Clone>(d: &DilatorExpr, t: &TraceTerm, positions: &[Pt<R>]) -> Result<Elem<R>> {
    if positions.len() != t.arity {
        return Err(Error::MalformedElement(format!(
            "trace term of arity {} placed on {} positions",
            t.arity,
            positions.len()
        )));
    }
    fmap(d, &t.shape, &|p: &Point| match p {
        Pt::Right(i) => Ok(positions[*i as usize].clone()),
        Pt::Left(_) => Err(Error::MalformedElement("trace term with a free ordinal position".into())),
    })
}

// ---------------------------------------------------------------------------
// Important indices and the much-less relation

/// All strictly increasing maps `n -> m`.
pub fn embeddings(n: usize, m: usize) -> Vec<Vec<u32>> {
    fn go(n: usize, m: usize, from: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let left = n - cur.len();
        for v in from..=(m - left) {
            cur.push(v as u32);
            go(n, m, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n <= m {
        go(n, m, 0, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

fn as_points(f: &[u32]) -> Vec<Point> {
    f.iter().map(|&v| Pt::Right(v)).collect()
}

fn ucmp(a: &u32, b: &u32) -> Ordering {
    a.cmp(b)
}

/// The unique `i < arity` such that `f(i) < g(i)` forces `D(f)(t) < D(g)(t)`,
/// found by trying every pair of embeddings `arity -> 2 * arity`.
pub fn important_index(d: &DilatorExpr, t: &TraceTerm) -> Result<usize> {
    let n = t.arity;
    if n == 0 {
        return Err(Error::NotConnected(format!("trace term {} of {d} has no positions", t.shape)));
    }
    let embs = embeddings(n, 2 * n);
    let placed: Vec<Element> = embs.iter().map(|f| place(d, t, &as_points(f))).collect::<Result<_>>()?;
    let mut found = Vec::new();
    for i in 0..n {
        let mut ok = true;
        'pairs: for (f, x) in embs.iter().zip(&placed) {
            for (g, y) in embs.iter().zip(&placed) {
                if f[i] < g[i] && compare_elements(x, y, &ucmp)? != Ordering::Less {
                    ok = false;
                    break 'pairs;
                }
            }
        }
        if ok {
            found.push(i);
        }
    }
    match found[..] {
        [i] => Ok(i),
        _ => Err(Error::NoUniqueIndex(format!("{} in {d}: candidates {found:?}", t.shape))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LlRelation {
    MuchLess,
    MuchGreater,
    Equivalent,
}

/// Whether every placement of `t1` lies below (or above) every placement of
/// `t2` on `arity(t1) + arity(t2)` points.
pub fn ll_relation(d: &DilatorExpr, t1: &TraceTerm, t2: &TraceTerm) -> Result<LlRelation> {
    let m = t1.arity + t2.arity;
    let xs: Vec<Element> = embeddings(t1.arity, m).iter().map(|f| place(d, t1, &as_points(f))).collect::<Result<_>>()?;
    let ys: Vec<Element> = embeddings(t2.arity, m).iter().map(|f| place(d, t2, &as_points(f))).collect::<Result<_>>()?;
    let (mut all_less, mut all_greater) = (true, true);
    for x in &xs {
        for y in &ys {
            match compare_elements(x, y, &ucmp)? {
                Ordering::Less => all_greater = false,
                Ordering::Greater => all_less = false,
                Ordering::Equal => {
                    all_less = false;
                    all_greater = false;
                }
            }
        }
    }
    Ok(if all_less {
        LlRelation::MuchLess
    } else if all_greater {
        LlRelation::MuchGreater
    } else {
        LlRelation::Equivalent
    })
}

// ---------------------------------------------------------------------------
// Membership

/// Memo for [`important_index`], keyed on expression and trace shape.
#[derive(Default)]
pub struct ImportanceCache {
    map: HashMap<(DilatorExpr, Element), usize>,
}

impl ImportanceCache {
    pub fn index(&mut self, d: &DilatorExpr, t: &TraceTerm) -> Result<usize> {
        let key = (d.clone(), t.shape.clone());
        if let Some(&i) = self.map.get(&key) {
            return Ok(i);
        }
        let i = important_index(d, t)?;
        self.map.insert(key, i);
        Ok(i)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Filter {
    Sep,
    Minus,
    Plus,
}

/// Decides the separation filters on an element `x` of `atom` over `gamma + X`.
fn passes<R: Clone + fmt::Display>(
    filter: Filter,
    atom: &DilatorExpr,
    gamma: &Ordinal,
    x: &Elem<R>,
    cmp: &dyn Fn(&R, &R) -> Ordering,
    cache: &mut ImportanceCache,
) -> Result<bool> {
    let (t, supp) = normal_form(atom, x, cmp)?;
    let i = cache.index(atom, &t)?;
    let is_code = |p: &Pt<R>| matches!(p, Pt::Left(y) if y < gamma);
    Ok(match filter {
        Filter::Minus => is_code(&supp[i]),
        Filter::Plus => !is_code(&supp[i]),
        Filter::Sep => is_code(&supp[i]) && supp.get(i + 1).map_or(true, |p| !is_code(p)),
    })
}

/// True when `e` lies in the last connected component of the type-Omega dilator `a`.
pub fn in_last<R>(a: &DilatorExpr, e: &Elem<R>) -> Result<bool> {
    use Elem as E;
    Ok(match (a, e) {
        (Id, E::Id(_)) | (OmegaHead(_), E::Cnf(_)) => true,
        (Sum(_, _), E::Inl(_)) => false,
        (Sum(_, b), E::Inr(y)) => in_last(b, y)?,
        (MulNat(a, n), E::Copy(k, x)) => *k + 1 == *n && in_last(a, x)?,
        (OmegaComp(a), E::Cnf(xs)) => match xs.first() {
            Some(x) => in_last(a, x)?,
            None => false,
        },
        _ => return Err(Error::NotTypeOmega(format!("{a} has no last component"))),
    })
}

/// Checks that `e` is a well-formed element of `d`. Positions are not checked
/// against an ambient order.
pub fn is_element<R: Clone + fmt::Display>(
    d: &DilatorExpr,
    e: &Elem<R>,
    cmp: &dyn Fn(&R, &R) -> Ordering,
    cache: &mut ImportanceCache,
) -> Result<bool> {
    use Elem as E;
    Ok(match (d, e) {
        (One, E::Const(b)) => b.is_zero(),
        (Const(a), E::Const(b)) => b < a,
        (Id, E::Id(_)) => true,
        (Sum(a, _), E::Inl(x)) => is_element(a, x, cmp, cache)?,
        (Sum(_, b), E::Inr(y)) => is_element(b, y, cmp, cache)?,
        (MulNat(a, n), E::Copy(k, x)) => k < n && is_element(a, x, cmp, cache)?,
        (MulOmega(a), E::Copy(_, x)) => is_element(a, x, cmp, cache)?,
        (OmegaComp(a) | OmegaHead(a), E::Cnf(xs)) => {
            if matches!(d, OmegaHead(_)) && !(xs.first().is_some() && in_last(a, &xs[0])?) {
                return Ok(false);
            }
            for x in xs {
                if !is_element(a, x, cmp, cache)? {
                    return Ok(false);
                }
            }
            for w in xs.windows(2) {
                if compare_elements(&w[0], &w[1], cmp)? == Ordering::Less {
                    return Ok(false);
                }
            }
            true
        }
        (Shift(a, _), E::Layer(x)) => is_element(a, x, cmp, cache)?,
        (Sep(a, g) | SepMinus(a, g) | SepPlus(a, g), E::Layer(x)) => {
            is_element(a, x, cmp, cache)? && passes(filter_of(d), a, g, x, cmp, cache)?
        }
        _ => false,
    })
}

fn filter_of(d: &DilatorExpr) -> Filter {
    match d {
        Sep(..) => Filter::Sep,
        SepMinus(..) => Filter::Minus,
        _ => Filter::Plus,
    }
}

// ---------------------------------------------------------------------------
// Enumeration

/// Size limits for [`enum_elements`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Samples taken below infinite constants and parameters, and copies of `D*w`.
    pub width: u64,
    /// Longest Cantor normal form list.
    pub max_len: usize,
    /// Largest number of elements any node may produce.
    pub cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { width: 3, max_len: 3, cap: 20_000 }
    }
}

/// The positions `codes + X` of a layer with parameter `gamma` over `ambient`.
pub fn layer_ambient<R: Clone>(gamma: &Ordinal, ambient: &[Pt<R>], budget: &Budget) -> Vec<Pt<R>> {
    let mut v: Vec<Pt<R>> = sample_below(gamma, budget.width, budget.cap).into_iter().map(Pt::Left).collect();
    v.extend(ambient.iter().cloned().map(|p| lift(gamma, p)));
    v
}

/// All elements of `d` over the finite `ambient` order within `budget`, ascending.
pub fn enum_elements<R: Clone + fmt::Display>(
    d: &DilatorExpr,
    ambient: &[Pt<R>],
    budget: &Budget,
    cmp: &dyn Fn(&R, &R) -> Ordering,
) -> Result<Vec<Elem<R>>> {
    let mut cache = ImportanceCache::default();
    let mut v = generate(d, ambient, budget, cmp, &mut cache)?;
    sort_elements(&mut v, cmp);
    Ok(v)
}

pub fn sort_elements<R>(v: &mut [Elem<R>], cmp: &dyn Fn(&R, &R) -> Ordering) {
    v.sort_by(|a, b| compare_elements(a, b, cmp).unwrap_or(Ordering::Equal));
}

fn check_cap<T>(v: &[T], budget: &Budget, d: &DilatorExpr) -> Result<()> {
    if v.len() > budget.cap {
        return Err(Error::BudgetExceeded(format!("{d} produced more than {} elements", budget.cap)));
    }
    Ok(())
}

fn generate<R: Clone + fmt::Display>(
    d: &DilatorExpr,
    ambient: &[Pt<R>],
    budget: &Budget,
    cmp: &dyn Fn(&R, &R) -> Ordering,
    cache: &mut ImportanceCache,
) -> Result<Vec<Elem<R>>> {
    use Elem as E;
    let boxed = |v: Vec<Elem<R>>, wrap: fn(Box<Elem<R>>) -> Elem<R>| v.into_iter().map(|x| wrap(Box::new(x))).collect::<Vec<_>>();
    let out = match d {
        Zero => vec![],
        One => vec![E::Const(Ordinal::zero())],
        Const(a) => sample_below(a, budget.width, budget.cap).into_iter().map(E::Const).collect(),
        Id => ambient.iter().cloned().map(E::Id).collect(),
        Sum(a, b) => {
            let mut v = boxed(generate(a, ambient, budget, cmp, cache)?, E::Inl);
            v.extend(boxed(generate(b, ambient, budget, cmp, cache)?, E::Inr));
            v
        }
        MulNat(a, _) | MulOmega(a) => {
            let copies = match d {
                MulNat(_, n) => *n,
                _ => budget.width,
            };
            let base = generate(a, ambient, budget, cmp, cache)?;
            if (copies as usize).saturating_mul(base.len()) > budget.cap {
                return Err(Error::BudgetExceeded(format!("{d} has too many copies")));
            }
            (0..copies).flat_map(|k| base.iter().map(move |x| E::Copy(k, Box::new(x.clone())))).collect()
        }
        OmegaComp(a) | OmegaHead(a) => {
            let mut base = generate(a, ambient, budget, cmp, cache)?;
            sort_elements(&mut base, cmp);
            let mut out = Vec::new();
            let head_only = matches!(d, OmegaHead(_));
            let mut lead_ok = Vec::with_capacity(base.len());
            for x in &base {
                lead_ok.push(!head_only || in_last(a, x)?);
            }
            cnf_lists(&base, &lead_ok, budget, &mut Vec::new(), &mut out, head_only)?;
            out
        }
        Shift(a, g) | Sep(a, g) | SepMinus(a, g) | SepPlus(a, g) => {
            let inner_ambient = layer_ambient(g, ambient, budget);
            let inner = generate(a, &inner_ambient, budget, cmp, cache)?;
            let mut v = Vec::new();
            for x in inner {
                if matches!(d, Shift(..)) || passes(filter_of(d), a, g, &x, cmp, cache)? {
                    v.push(E::Layer(Box::new(x)));
                }
            }
            v
        }
    };
    check_cap(&out, budget, d)?;
    Ok(out)
}

/// Non-increasing lists over `base` (sorted ascending) of length at most `max_len`.
fn cnf_lists<R: Clone>(
    base: &[Elem<R>],
    lead_ok: &[bool],
    budget: &Budget,
    cur: &mut Vec<usize>,
    out: &mut Vec<Elem<R>>,
    nonempty: bool,
) -> Result<()> {
    if !(nonempty && cur.is_empty()) {
        out.push(Elem::Cnf(cur.iter().map(|&i| base[i].clone()).collect()));
        if out.len() > budget.cap {
            return Err(Error::BudgetExceeded(format!("more than {} Cantor normal forms", budget.cap)));
        }
    }
    if cur.len() == budget.max_len {
        return Ok(());
    }
    let top = cur.last().map_or(base.len(), |&i| i + 1);
    for i in 0..top {
        if cur.is_empty() && !lead_ok[i] {
            continue;
        }
        cur.push(i);
        cnf_lists(base, lead_ok, budget, cur, out, nonempty)?;
        cur.pop();
    }
    Ok(())
}

/// The finite order `{0, ..., n-1}` as positions.
pub fn finite_order(n: u32) -> Vec<Point> {
    (0..n).map(Pt::Right).collect()
}

/// The first `width` fundamental samples below `alpha`, as positions.
pub fn ordinal_ambient(alpha: &Ordinal, budget: &Budget) -> Vec<Point> {
    sample_below(alpha, budget.width, budget.cap).into_iter().map(Pt::Left).collect()
}

/// Every trace term of `d` with arity at most `max_arity`, read off the
/// elements over `{0, ..., max_arity-1}`.
pub fn trace_terms(d: &DilatorExpr, max_arity: u32, budget: &Budget) -> Result<Vec<TraceTerm>> {
    let elems = enum_elements(d, &finite_order(max_arity), budget, &ucmp)?;
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for e in elems {
        let (t, _) = normal_form(d, &e, &ucmp)?;
        if seen.insert(t.shape.clone()) {
            out.push(t);
        }
    }
    Ok(out)
}

/// True if `d` is connected and not 1 on all trace terms up to `max_arity`:
/// no nullary terms and every pair of terms is `Equivalent`.
pub fn is_connected_atom(d: &DilatorExpr, max_arity: u32, budget: &Budget) -> Result<bool> {
    let terms = trace_terms(d, max_arity, budget)?;
    if terms.iter().any(|t| t.arity == 0) {
        return Ok(false);
    }
    for (i, s) in terms.iter().enumerate() {
        for t in &terms[i..] {
            if ll_relation(d, s, t)? != LlRelation::Equivalent {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `head + last` split used when the semantic layer needs the last component
/// of a type-Omega sum.
pub fn last_component(d: &DilatorExpr) -> Result<(DilatorExpr, DilatorExpr)> {
    match classify(d)? {
        TypeClass::BigOmega { head, last } => Ok((head, last)),
        t => Err(Error::NotTypeOmega(format!("{d} has type {}", t.name()))),
    }
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
    fn unit_sum_order() {
        let d = dil_expr("(1) + (1)");
        // `1 + 1` folds to Const(2); build the raw sum instead.
        assert_eq!(d, Const(ord("2")));
        let raw = Sum(Box::new(One), Box::new(One));
        let v = enum_elements(&raw, &finite_order(0), &b(), &ucmp).unwrap();
        assert_eq!(v.len(), 2);
        assert!(matches!(v[0], Elem::Inl(_)));
    }

    #[test]
    fn omega_of_id_elements() {
        let budget = Budget { width: 3, max_len: 2, cap: 100 };
        let v = enum_elements(&dil_expr("omega[Id]"), &finite_order(1), &budget, &ucmp).unwrap();
        let shown: Vec<String> = v.iter().map(|e| e.to_string()).collect();
        assert_eq!(shown, ["w{}", "w{id(x0)}", "w{id(x0), id(x0)}"]);
    }

    #[test]
    fn supports_under_shift() {
        let d = Shift(Box::new(Id), ord("w"));
        let e: Element = Elem::Layer(Box::new(Elem::Id(Pt::Left(ord("3")))));
        assert!(support(&d, &e, &ucmp).unwrap().is_empty());
        let e: Element = Elem::Layer(Box::new(Elem::Id(Pt::Right(2))));
        assert_eq!(support(&d, &e, &ucmp).unwrap(), vec![Pt::Right(2)]);
        let e: Element = Elem::Layer(Box::new(Elem::Id(Pt::Left(ord("w+2")))));
        assert_eq!(support(&d, &e, &ucmp).unwrap(), vec![Pt::Left(ord("2"))]);
    }

    #[test]
    fn important_indices() {
        let d = dil_expr("omega[Id]");
        let e: Element = Elem::Cnf(vec![Elem::Id(Pt::Right(1)), Elem::Id(Pt::Right(0))]);
        let (t, _) = normal_form(&d, &e, &ucmp).unwrap();
        assert_eq!(important_index(&d, &t).unwrap(), 1);
        let (t, _) = normal_form(&Id, &Elem::Id(Pt::Right(4)), &ucmp).unwrap();
        assert_eq!(important_index(&Id, &t).unwrap(), 0);
    }

    #[test]
    fn much_less() {
        let c = Const(ord("w"));
        let t = |b: &str| TraceTerm { shape: Elem::Const(ord(b)), arity: 0 };
        assert_eq!(ll_relation(&c, &t("2"), &t("5")).unwrap(), LlRelation::MuchLess);
        let id = TraceTerm { shape: Elem::Id(Pt::Right(0)), arity: 1 };
        assert_eq!(ll_relation(&Id, &id, &id).unwrap(), LlRelation::Equivalent);
        let two = Sum(Box::new(Id), Box::new(Id));
        let l = TraceTerm { shape: Elem::Inl(Box::new(Elem::Id(Pt::Right(0)))), arity: 1 };
        let r = TraceTerm { shape: Elem::Inr(Box::new(Elem::Id(Pt::Right(0)))), arity: 1 };
        assert_eq!(ll_relation(&two, &l, &r).unwrap(), LlRelation::MuchLess);
    }

    #[test]
    fn separation_filter_of_id() {
        // {Id}^2 over X = {x0}: only codes below 2 whose position is the largest code.
        let d = Sep(Box::new(Id), ord("2"));
        let v = enum_elements(&d, &finite_order(1), &b(), &ucmp).unwrap();
        assert_eq!(v.len(), 2);
        let d = SepPlus(Box::new(Id), ord("2"));
        assert_eq!(enum_elements(&d, &finite_order(2), &b(), &ucmp).unwrap().len(), 2);
    }

    #[test]
    fn connected_atoms() {
        assert!(is_connected_atom(&Id, 3, &b()).unwrap());
        assert!(is_connected_atom(&dil_expr("head[Id]"), 3, &b()).unwrap());
        assert!(!is_connected_atom(&dil_expr("Id + Id"), 2, &b()).unwrap());
    }
}
