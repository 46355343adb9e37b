//! Sparse multivariate polynomials over a prime field.
//!
//! Terms are kept sorted in strictly descending degrevlex order with no zero
//! coefficients, so the leading term is `terms[0]` and equality is
//! structural.

use crate::monomial::{degrevlex, Monomial};
use crate::ring::{Coeff, PolyRing};
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, Coeff)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one(n: usize) -> Self {
        Poly {
            terms: vec![(Monomial::one(n), 1)],
        }
    }

    pub fn constant(ring: &PolyRing, c: i64) -> Self {
        let c = ring.reduce_i64(c);
        if c == 0 {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Monomial::one(ring.n()), c)],
            }
        }
    }

    pub fn var(n: usize, i: usize) -> Self {
        Poly {
            terms: vec![(Monomial::var(n, i), 1)],
        }
    }

    pub fn monomial(m: Monomial, c: Coeff) -> Self {
        if c == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds from arbitrary (monomial, coefficient) pairs, combining and
    /// dropping zeros.
    pub fn from_terms(ring: &PolyRing, pairs: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut terms: Vec<(Monomial, Coeff)> = Vec::new();
        for (m, c) in pairs {
            terms.push((m, c % ring.p()));
        }
        terms.sort_by(|a, b| degrevlex(&b.0, &a.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = ring.add(last.1, c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| *c != 0);
        Poly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    /// Consumes the polynomial, exposing its (sorted) term list.
    pub(crate) fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    /// Rebuilds from terms already in strictly descending order.
    pub(crate) fn from_sorted_terms(terms: Vec<(Monomial, Coeff)>) -> Poly {
        debug_assert!(terms
            .windows(2)
            .all(|w| degrevlex(&w[0].0, &w[1].0) == Ordering::Greater));
        Poly { terms }
    }

    pub fn lead(&self) -> Option<(&Monomial, Coeff)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }

    /// Total degree (of the leading term; maximal over all terms).
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// `Some(d)` when every term has degree `d`; `Some(0)` convention does
    /// not apply to the zero polynomial, which returns `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms
            .iter()
            .all(|(m, _)| m.degree() == d)
            .then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// A nonzero constant, i.e. a unit of the graded ring.
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn add(&self, ring: &PolyRing, other: &Poly) -> Poly {
        merge(ring, &self.terms, &other.terms, false)
    }

    pub fn sub(&self, ring: &PolyRing, other: &Poly) -> Poly {
        merge(ring, &self.terms, &other.terms, true)
    }

    pub fn neg(&self, ring: &PolyRing) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), ring.neg(*c)))
                .collect(),
        }
    }

    pub fn scale(&self, ring: &PolyRing, c: Coeff) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), ring.mul(*a, c)))
                .collect(),
        }
    }

    /// Multiplication by the term `c * u`; preserves term order.
    pub fn mul_term(&self, ring: &PolyRing, u: &Monomial, c: Coeff) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(u), ring.mul(*a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, ring: &PolyRing, other: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for (m, c) in &other.terms {
            acc = acc.add(ring, &self.mul_term(ring, m, *c));
        }
        acc
    }

    /// Substitutes `vals[i]` for variable `i`. Used for linear changes of
    /// coordinates; each `vals[i]` must be homogeneous of degree one (or the
    /// image simply fails to stay graded, which callers assert separately).
    pub fn substitute(&self, ring: &PolyRing, vals: &[Poly]) -> Poly {
        let n = ring.n();
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(ring, *c as i64);
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(ring, &vals[i]);
                }
            }
            let _ = n;
            acc = acc.add(ring, &term);
        }
        acc
    }
}

fn merge(ring: &PolyRing, a: &[(Monomial, Coeff)], b: &[(Monomial, Coeff)], sub: bool) -> Poly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match degrevlex(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let c = if sub { ring.neg(b[j].1) } else { b[j].1 };
                out.push((b[j].0.clone(), c));
                j += 1;
            }
            Ordering::Equal => {
                let c = if sub {
                    ring.sub(a[i].1, b[j].1)
                } else {
                    ring.add(a[i].1, b[j].1)
                };
                if c != 0 {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (m, c) in &b[j..] {
        out.push((m.clone(), if sub { ring.neg(*c) } else { *c }));
    }
    Poly { terms: out }
}

/// Renders with signed representatives in `(-p/2, p/2]` for readability.
pub fn format_poly(ring: &PolyRing, p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms.iter().enumerate() {
        let half = ring.p() / 2;
        let (neg, mag) = if *c > half { (true, ring.p() - c) } else { (false, *c) };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if mag != 1 || m.is_one() {
            factors.push(mag.to_string());
        }
        for (i, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(ring.vars()[i].clone()),
                _ => factors.push(format!("{}^{}", ring.vars()[i], e)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring() -> PolyRing {
        PolyRing::standard(2)
    }

    fn xy(ring: &PolyRing) -> (Poly, Poly) {
        (Poly::var(ring.n(), 0), Poly::var(ring.n(), 1))
    }

    #[test]
    fn arithmetic_basics() {
        let r = ring();
        let (x, y) = xy(&r);
        let f = x.mul(&r, &x).add(&r, &x.mul(&r, &y)); // x^2 + xy
        assert!(f.is_homogeneous());
        assert_eq!(f.homogeneous_degree(), Some(2));
        let g = f.sub(&r, &f);
        assert!(g.is_zero());
        let h = x.add(&r, &Poly::constant(&r, 1));
        assert!(!h.is_homogeneous());
    }

    #[test]
    fn lead_is_degrevlex_max() {
        let r = ring();
        let (x, y) = xy(&r);
        // x^2 > xy > y^2 under degrevlex with x > y
        let f = y.mul(&r, &y).add(&r, &x.mul(&r, &y)).add(&r, &x.mul(&r, &x));
        assert_eq!(f.lead().unwrap().0, &Monomial::new(vec![2, 0]));
    }

    #[test]
    fn format_round_values() {
        let r = ring();
        let (x, _) = xy(&r);
        let f = x.scale(&r, r.p() - 4);
        assert_eq!(format_poly(&r, &f), "-4*x");
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec((proptest::collection::vec(0u32..4, 2), 1u32..32002), 0..6)
            .prop_map(|pairs| {
                let r = PolyRing::standard(2);
                Poly::from_terms(&r, pairs.into_iter().map(|(e, c)| (Monomial::new(e), c)))
            })
    }

    proptest! {
        #[test]
        fn mul_commutes(f in arb_poly(), g in arb_poly()) {
            let r = PolyRing::standard(2);
            prop_assert_eq!(f.mul(&r, &g), g.mul(&r, &f));
        }

        #[test]
        fn mul_degree_additive_on_homogeneous(d1 in 0u32..3, d2 in 0u32..3, c in 1u32..100) {
            let r = PolyRing::standard(2);
            let f = Poly::from_terms(&r,
                crate::monomial::monomials_of_degree(2, d1).into_iter().map(|m| (m, c)));
            let g = Poly::from_terms(&r,
                crate::monomial::monomials_of_degree(2, d2).into_iter().map(|m| (m, 1)));
            let h = f.mul(&r, &g);
            prop_assert!(!h.is_zero());
            prop_assert_eq!(h.homogeneous_degree(), Some(d1 + d2));
        }

        #[test]
        fn add_associates(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            let r = PolyRing::standard(2);
            prop_assert_eq!(f.add(&r, &g).add(&r, &h), f.add(&r, &g.add(&r, &h)));
        }
    }
}
