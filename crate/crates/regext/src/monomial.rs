//! Monomials as exponent vectors, ordered by graded reverse lexicographic
//! order (the only order used in this crate).

use crate::Error;
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, or `None` when `self` does not divide `other`.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Graded reverse lexicographic comparison: higher total degree wins; on
/// equal degrees the monomial whose last nonzero exponent difference is
/// negative is the larger one.
pub fn degrevlex(a: &Monomial, b: &Monomial) -> Ordering {
    debug_assert_eq!(a.exps.len(), b.exps.len());
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for i in (0..a.exps.len()).rev() {
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

/// Checked comparison for callers holding monomials of unknown provenance.
pub fn monomial_compare(a: &Monomial, b: &Monomial) -> Result<Ordering, Error> {
    if a.exps.len() != b.exps.len() {
        return Err(Error::VariableCountMismatch(a.exps.len(), b.exps.len()));
    }
    Ok(degrevlex(a, b))
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        degrevlex(self, other)
    }
}

/// All monomials of the given degree in `n` variables, in descending order.
pub fn monomials_of_degree(n: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fill(&mut out, &mut exps, 0, degree);
    out.sort_by(|a, b| degrevlex(b, a));
    out
}

fn fill(out: &mut Vec<Monomial>, exps: &mut Vec<u32>, i: usize, rem: u32) {
    if i + 1 == exps.len() {
        exps[i] = rem;
        out.push(Monomial::new(exps.clone()));
        exps[i] = 0;
        return;
    }
    for e in 0..=rem {
        exps[i] = e;
        fill(out, exps, i + 1, rem - e);
    }
    exps[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn compare_examples() {
        // x^2 y vs x^2 y
        assert_eq!(degrevlex(&m(&[2, 1]), &m(&[2, 1])), Ordering::Equal);
        // degree 3 beats degree 2
        assert_eq!(degrevlex(&m(&[3, 0]), &m(&[1, 1])), Ordering::Greater);
        // in x > y > z: y^2 > xz (same degree, xz has larger last exponent)
        assert_eq!(degrevlex(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn mismatched_lengths_error() {
        assert!(monomial_compare(&m(&[1, 0]), &m(&[1, 0, 0])).is_err());
    }

    #[test]
    fn degree_enumeration() {
        let v = monomials_of_degree(2, 2);
        assert_eq!(v.len(), 3);
        assert_eq!(v[0], m(&[2, 0]));
        assert_eq!(v[2], m(&[0, 2]));
        assert_eq!(monomials_of_degree(3, 0), vec![Monomial::one(3)]);
    }

    proptest! {
        #[test]
        fn total_order_on_random_triples(
            a in proptest::collection::vec(0u32..5, 3),
            b in proptest::collection::vec(0u32..5, 3),
            c in proptest::collection::vec(0u32..5, 3),
        ) {
            let (a, b, c) = (m(&a), m(&b), m(&c));
            // antisymmetry
            prop_assert_eq!(degrevlex(&a, &b), degrevlex(&b, &a).reverse());
            // transitivity
            if degrevlex(&a, &b) != Ordering::Greater && degrevlex(&b, &c) != Ordering::Greater {
                prop_assert_ne!(degrevlex(&a, &c), Ordering::Greater);
            }
            // degree-compatibility
            if a.degree() > b.degree() {
                prop_assert_eq!(degrevlex(&a, &b), Ordering::Greater);
            }
            // multiplicative stability
            prop_assert_eq!(degrevlex(&a.mul(&c), &b.mul(&c)), degrevlex(&a, &b));
        }
    }
}
