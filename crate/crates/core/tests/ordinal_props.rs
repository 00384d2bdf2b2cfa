//! Cantor normal form arithmetic against a polynomial model of the ordinals
//! below w^w: `coeffs[i]` is the coefficient of `w^i`.

use dilator_core::ordinal::{detect_limit_pattern, ord, ord_sup_solve, LimitKind, LimitPattern};
use dilator_core::Ordinal;
use proptest::prelude::*;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Poly(Vec<u64>);

impl Poly {
    fn trim(mut self) -> Poly {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|&c| c > 0)
    }

    fn add(&self, b: &Poly) -> Poly {
        let Some(k) = b.degree() else { return self.clone() };
        let mut out = vec![0; self.0.len().max(b.0.len())];
        for i in k + 1..self.0.len() {
            out[i] = self.0[i];
        }
        out[k] = self.0.get(k).copied().unwrap_or(0) + b.0[k];
        out[..k].copy_from_slice(&b.0[..k]);
        Poly(out).trim()
    }

    /// `self * w^j`.
    fn shift(&self, j: usize) -> Poly {
        match self.degree() {
            None => Poly(vec![]),
            Some(_) if j == 0 => self.clone(),
            Some(k) => {
                let mut out = vec![0; k + j + 1];
                out[k + j] = 1;
                Poly(out)
            }
        }
    }

    fn mul_nat(&self, n: u64) -> Poly {
        match self.degree() {
            None => Poly(vec![]),
            Some(_) if n == 0 => Poly(vec![]),
            Some(k) => {
                let mut out = self.0.clone();
                out[k] *= n;
                Poly(out).trim()
            }
        }
    }

    /// Left distributivity: `a * (w^j c + rest) = a * w^j * c + a * rest`.
    fn mul(&self, b: &Poly) -> Poly {
        let mut acc = Poly(vec![]);
        for j in (0..b.0.len()).rev() {
            if b.0[j] > 0 {
                let part = if j == 0 { self.mul_nat(b.0[j]) } else { self.shift(j).mul_nat(b.0[j]) };
                acc = acc.add(&part);
            }
        }
        acc
    }

    fn cmp(&self, b: &Poly) -> std::cmp::Ordering {
        let n = self.0.len().max(b.0.len());
        for i in (0..n).rev() {
            let (x, y) = (self.0.get(i).copied().unwrap_or(0), b.0.get(i).copied().unwrap_or(0));
            if x != y {
                return x.cmp(&y);
            }
        }
        std::cmp::Ordering::Equal
    }

    fn to_ordinal(&self) -> Ordinal {
        let terms = (0..self.0.len()).rev().filter(|&i| self.0[i] > 0).map(|i| (Ordinal::nat(i as u64), self.0[i])).collect();
        Ordinal::from_terms(terms).unwrap()
    }
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(prop_oneof![3 => Just(0u64), 2 => 1u64..5], 0..5).prop_map(|v| Poly(v).trim())
}

proptest! {
    #[test]
    fn addition_matches_model(a in poly(), b in poly()) {
        prop_assert_eq!(a.to_ordinal().add(&b.to_ordinal()), a.add(&b).to_ordinal());
    }

    #[test]
    fn multiplication_matches_model(a in poly(), b in poly()) {
        prop_assert_eq!(a.to_ordinal().mul(&b.to_ordinal()), a.mul(&b).to_ordinal());
    }

    #[test]
    fn order_matches_model(a in poly(), b in poly()) {
        prop_assert_eq!(a.to_ordinal().cmp(&b.to_ordinal()), a.cmp(&b));
    }

    #[test]
    fn addition_is_associative(a in poly(), b in poly(), c in poly()) {
        let (x, y, z) = (a.to_ordinal(), b.to_ordinal(), c.to_ordinal());
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
    }

    #[test]
    fn left_subtraction_inverts_addition(a in poly(), b in poly()) {
        let (x, y) = (a.to_ordinal(), b.to_ordinal());
        let s = x.add(&y);
        let d = x.left_sub(&s).unwrap();
        prop_assert_eq!(x.add(&d), s);
    }

    #[test]
    fn print_parse_roundtrip(a in poly(), e in poly()) {
        let x = Ordinal::omega_pow(e.to_ordinal()).add(&a.to_ordinal());
        prop_assert_eq!(x.to_string().parse::<Ordinal>().unwrap(), x);
    }

    #[test]
    fn fundamental_sequences_increase_below(a in poly(), k in 1u64..20) {
        let x = a.to_ordinal();
        if x.is_limit() {
            let f = x.fundamental(k).unwrap();
            prop_assert!(f < x);
            prop_assert!(f < x.fundamental(k + 1).unwrap());
        }
    }

    #[test]
    fn principal_limits_absorb(a in poly(), e in 1u64..4) {
        let p = Ordinal::omega_pow(Ordinal::nat(e));
        let x = a.to_ordinal();
        if x < p {
            prop_assert_eq!(x.add(&p), p);
        }
    }
}

#[test]
fn constant_increment_suprema() {
    // Iterates w + k*c stay below w + c*w, and every smaller bound is passed.
    for c in [ord("1"), ord("w"), ord("w^2*3+1")] {
        let seq: Vec<Ordinal> = (0..8u64).map(|k| ord("w").add(&c.mul_nat(k))).collect();
        let pattern = detect_limit_pattern(&seq);
        assert_eq!(pattern.kind, LimitKind::ConstantIncrement(c.clone()));
        let sup = ord_sup_solve(&pattern).unwrap();
        let iterates: Vec<Ordinal> = (0..100u64).map(|k| ord("w").add(&c.mul_nat(k))).collect();
        assert!(iterates.iter().all(|x| *x < sup));
        for below in [sup.fundamental(3).unwrap(), sup.fundamental(50).unwrap()] {
            assert!(iterates.iter().any(|x| *x > below));
        }
    }
    assert_eq!(ord_sup_solve(&LimitPattern::new(LimitKind::ConstantIncrement(ord("w")), ord("w"))).unwrap(), ord("w^2"));
}
